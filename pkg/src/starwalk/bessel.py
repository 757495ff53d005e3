"""Integer-order Bessel functions of the first kind by downward recurrence."""
from __future__ import annotations

from math import factorial

import numpy as np

_RESCALE = 1e100
_SERIES_BELOW = 1e-8


def bessel_j(n_max: int, x) -> np.ndarray:
    """``J_0(x) .. J_{n_max}(x)`` as an array of shape ``(n_max + 1,) + x.shape``.

    Miller's algorithm: recur ``J_{k-1} = (2k/x) J_k - J_{k+1}`` downward from a
    start order well above both ``n_max`` and ``|x|``, then normalise with
    ``J_0 + 2 (J_2 + J_4 + ...) = 1``.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    x = np.asarray(x, dtype=float)
    shape = x.shape
    x = x.ravel()
    ax = np.abs(x)
    out = np.zeros((n_max + 1, x.size))
    tiny = ax < _SERIES_BELOW
    if tiny.any():
        # two series terms are exact to double precision here
        h = x[tiny] / 2.0
        for n in range(n_max + 1):
            out[n, tiny] = h ** n / factorial(n) * (1.0 - h * h / (n + 1))
    live = ~tiny
    if live.any():
        xl = ax[live]
        top = max(n_max, float(xl.max()))
        start = int(top + 20 + np.sqrt(160.0 * max(top, 1.0)))
        start += start % 2
        j_next = np.zeros_like(xl)
        j_cur = np.full_like(xl, 1e-300)
        norm = np.zeros_like(xl)
        vals = np.zeros((n_max + 1, xl.size))
        for k in range(start, 0, -1):
            j_prev = (2.0 * k / xl) * j_cur - j_next
            j_next, j_cur = j_cur, j_prev
            # j_cur now holds the unnormalised J_{k-1}
            if k - 1 <= n_max:
                vals[k - 1] = j_cur
            if (k - 1) % 2 == 0 and k - 1 > 0:
                norm += 2.0 * j_cur
            big = np.abs(j_cur) > _RESCALE
            if big.any():
                j_cur[big] /= _RESCALE
                j_next[big] /= _RESCALE
                norm[big] /= _RESCALE
                vals[:, big] /= _RESCALE
        norm += j_cur
        vals /= norm
        sign = np.where(x[live] < 0, -1.0, 1.0)
        orders = np.arange(n_max + 1)[:, None]
        vals *= np.where(orders % 2 == 1, sign[None, :], 1.0)
        out[:, live] = vals
    return out.reshape((n_max + 1,) + shape)


def bessel_ratio(k: int, t) -> np.ndarray:
    """``2 (k+1) J_{k+1}(t) / t`` with its ``t -> 0`` limit ``delta_{k0}``."""
    t = np.asarray(t, dtype=float)
    j = bessel_j(k + 1, t)[k + 1]
    safe = np.where(t == 0.0, 1.0, t)
    return np.where(t == 0.0, 1.0 if k == 0 else 0.0, 2.0 * (k + 1) * j / safe)
