"""Hot numeric kernels, each with a numba loop version and a numpy version.

Subsets of a carrier of size ``n <= 64`` are ``uint64`` bitmasks, element ``i``
at bit ``i``. The public names at the bottom dispatch to whichever backend
:mod:`galcore._accel` selected; both implementations stay importable as
``*_nb`` / ``*_np`` so tests and the benchmark can compare them.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

_U1 = np.uint64(1)
_U0 = np.uint64(0)


def full_mask(n):
    """All-ones mask on ``n`` bits as ``np.uint64``."""
    if n >= 64:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << n) - 1)


def as_masks(values):
    return np.asarray([int(v) for v in values], dtype=np.uint64)


# --------------------------------------------------------------------------
# meet table: T[S] = AND of rows[i] for i in S, T[0] = top


@njit
def meet_table_nb(rows, top):
    n = rows.shape[0]
    size = 1 << n
    out = np.empty(size, dtype=np.uint64)
    out[0] = top
    for s in range(1, size):
        low = s & -s
        i = 0
        while (1 << i) != low:
            i += 1
        out[s] = out[s ^ low] & rows[i]
    return out


def meet_table_np(rows, top):
    rows = np.asarray(rows, dtype=np.uint64)
    out = np.empty(1 << rows.shape[0], dtype=np.uint64)
    out[0] = top
    width = 1
    for r in rows:
        np.bitwise_and(out[:width], r, out=out[width : 2 * width])
        width *= 2
    return out


# --------------------------------------------------------------------------
# closed object sets of a context, ascending as integers
#
# rows[g] = attribute mask of object g, cols[m] = object mask of attribute m.


@njit
def _close_nb(a, rows, cols, g_full, m_full):
    intent = m_full
    for g in range(rows.shape[0]):
        if (a >> np.uint64(g)) & _U1:
            intent &= rows[g]
    ext = g_full
    for m in range(cols.shape[0]):
        if (intent >> np.uint64(m)) & _U1:
            ext &= cols[m]
    return ext


@njit
def closed_extents_nb(rows, cols, g_full, m_full):
    n = rows.shape[0]
    cap = 64
    out = np.empty(cap, dtype=np.uint64)
    a = _close_nb(_U0, rows, cols, g_full, m_full)
    out[0] = a
    count = 1
    while a != g_full:
        found = False
        for i in range(n):
            bit = _U1 << np.uint64(i)
            if a & bit:
                continue
            # bits strictly above i
            if i == 63:
                high = _U0
            else:
                high = ~((bit << _U1) - _U1)
            b = _close_nb((a & high) | bit, rows, cols, g_full, m_full)
            if ((b ^ a) & high) == _U0:
                a = b
                found = True
                break
        if not found:
            break
        if count == cap:
            grown = np.empty(cap * 2, dtype=np.uint64)
            grown[:cap] = out
            out = grown
            cap *= 2
        out[count] = a
        count += 1
    return out[:count].copy()


def closed_extents_np(rows, cols, g_full, m_full):
    # closed extents are exactly the intersections of attribute extents
    ext = np.array([g_full], dtype=np.uint64)
    for c in np.asarray(cols, dtype=np.uint64):
        ext = np.unique(np.concatenate([ext, ext & c]))
    return ext


# --------------------------------------------------------------------------
# intents of a batch of object sets


@njit
def intents_of_nb(extents, rows, m_full):
    out = np.empty(extents.shape[0], dtype=np.uint64)
    for k in range(extents.shape[0]):
        a = extents[k]
        acc = m_full
        for g in range(rows.shape[0]):
            if (a >> np.uint64(g)) & _U1:
                acc &= rows[g]
        out[k] = acc
    return out


def intents_of_np(extents, rows, m_full):
    extents = np.asarray(extents, dtype=np.uint64)
    rows = np.asarray(rows, dtype=np.uint64)
    n = rows.shape[0]
    if n == 0:
        return np.full(extents.shape[0], m_full, dtype=np.uint64)
    bits = ((extents[:, None] >> np.arange(n, dtype=np.uint64)[None, :]) & _U1).astype(bool)
    # objects outside the set contribute the neutral all-ones mask
    terms = np.where(bits, rows[None, :], m_full)
    return np.bitwise_and.reduce(terms, axis=1) & m_full


# --------------------------------------------------------------------------
# order-map checks over dense boolean order tables


@njit
def antitone_violations_nb(leq_dom, leq_cod, table):
    n = leq_dom.shape[0]
    count = 0
    for x in range(n):
        for y in range(n):
            if leq_dom[x, y] and not leq_cod[table[y], table[x]]:
                count += 1
    out = np.empty((count, 2), dtype=np.int64)
    k = 0
    for x in range(n):
        for y in range(n):
            if leq_dom[x, y] and not leq_cod[table[y], table[x]]:
                out[k, 0] = x
                out[k, 1] = y
                k += 1
    return out


def antitone_violations_np(leq_dom, leq_cod, table):
    table = np.asarray(table, dtype=np.int64)
    reversed_ok = leq_cod[np.ix_(table, table)].T
    return np.argwhere(leq_dom & ~reversed_ok).astype(np.int64)


@njit
def adjoint_violations_nb(leq_p, leq_q, f, g):
    np_, nq = leq_p.shape[0], leq_q.shape[0]
    count = 0
    for p in range(np_):
        for q in range(nq):
            if leq_p[p, g[q]] != leq_q[q, f[p]]:
                count += 1
    out = np.empty((count, 2), dtype=np.int64)
    k = 0
    for p in range(np_):
        for q in range(nq):
            if leq_p[p, g[q]] != leq_q[q, f[p]]:
                out[k, 0] = p
                out[k, 1] = q
                k += 1
    return out


def adjoint_violations_np(leq_p, leq_q, f, g):
    lhs = leq_p[:, np.asarray(g, dtype=np.int64)]
    rhs = leq_q[:, np.asarray(f, dtype=np.int64)].T
    return np.argwhere(lhs != rhs).astype(np.int64)


if USE_NUMBA:
    meet_table = meet_table_nb
    closed_extents = closed_extents_nb
    intents_of = intents_of_nb
    antitone_violations = antitone_violations_nb
    adjoint_violations = adjoint_violations_nb
else:
    meet_table = meet_table_np
    closed_extents = closed_extents_np
    intents_of = intents_of_np
    antitone_violations = antitone_violations_np
    adjoint_violations = adjoint_violations_np
