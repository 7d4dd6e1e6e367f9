import numpy as np


def round_half_away(x):
    """Round to the nearest integer, breaking .5 ties away from zero.

    numpy's ``rint`` rounds ties to even, which would make 0.5 * 255 land
    on 128 but 1.5 on 2 and 2.5 on 2; the codecs here need one fixed rule.
    """
    x = np.asarray(x, dtype=np.float64)
    return np.copysign(np.floor(np.abs(x) + 0.5), x)
