"""Batched Nelder-Mead simplex search.

Many independent simplices advance in lockstep so that the objective can be
evaluated on a whole stack of points with one vectorized call. This is what
makes a 64-start search over a 4x4 trace norm affordable.
"""

from __future__ import annotations

import numpy as np


def nelder_mead_batch(func, x0, step=0.5, max_iter=2000, xtol=1e-9, ftol=1e-12):
    """Minimize ``func`` from every row of ``x0`` at once.

    Args:
        func: maps an ``(m, n)`` array of points to ``m`` objective values.
        x0: ``(b, n)`` starting points, one simplex per row.
        step: edge length of the initial axis-aligned simplices.
        max_iter: iteration cap shared by all simplices.
        xtol, ftol: a simplex is done when both its vertex spread and its
            value spread fall below these.

    Returns:
        ``(x, f)``: best vertex of each simplex and its value.

    The coefficients are the dimension-adapted ones of Gao and Han, which
    behave better than the classic (1, 2, 1/2, 1/2) set beyond a few
    dimensions.
    """
    x0 = np.atleast_2d(np.asarray(x0, dtype=float))
    b, n = x0.shape
    alpha = 1.0
    beta = 1.0 + 2.0 / n
    gamma = 0.75 - 1.0 / (2.0 * n)
    delta = 1.0 - 1.0 / n

    sim = np.repeat(x0[:, None, :], n + 1, axis=1)
    sim[:, 1:, :] += step * np.eye(n)[None, :, :]
    fs = func(sim.reshape(-1, n)).reshape(b, n + 1)
    rows = np.arange(b)

    for _ in range(max_iter):
        order = np.argsort(fs, axis=1)
        sim = np.take_along_axis(sim, order[:, :, None], axis=1)
        fs = np.take_along_axis(fs, order, axis=1)

        spread_x = np.max(np.abs(sim[:, 1:, :] - sim[:, :1, :]), axis=(1, 2))
        spread_f = fs[:, -1] - fs[:, 0]
        act = np.flatnonzero((spread_x > xtol) | (spread_f > ftol))
        if act.size == 0:
            break
        s_act, f_act = sim[act], fs[act]

        best, second, worst = f_act[:, 0], f_act[:, -2], f_act[:, -1]
        xw = s_act[:, -1, :]
        xo = s_act[:, :-1, :].mean(axis=1)

        xr = xo + alpha * (xo - xw)
        fr = func(xr)

        expand = fr < best
        outside = (fr >= second) & (fr < worst)
        inside = fr >= worst
        # at most one follow-up point per simplex
        xt = np.where(expand[:, None], xo + beta * (xr - xo),
                      np.where(outside[:, None], xo + gamma * (xr - xo), xo - gamma * (xo - xw)))
        need = expand | outside | inside
        ft = np.full(act.size, np.inf)
        if np.any(need):
            ft[need] = func(xt[need])

        use_t = (expand & (ft < fr)) | (outside & (ft <= fr)) | (inside & (ft < worst))
        shrink = (outside | inside) & ~use_t
        keep = ~shrink

        sim[act[keep], -1, :] = np.where(use_t[:, None], xt, xr)[keep]
        fs[act[keep], -1] = np.where(use_t, ft, fr)[keep]

        if np.any(shrink):
            idx = act[shrink]
            xb = sim[idx, :1, :]
            sim[idx, 1:, :] = xb + delta * (sim[idx, 1:, :] - xb)
            fs[idx, 1:] = func(sim[idx, 1:, :].reshape(-1, n)).reshape(idx.size, n)

    j = np.argmin(fs, axis=1)
    return sim[rows, j, :], fs[rows, j]
