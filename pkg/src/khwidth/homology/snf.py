"""Smith normal form and rank over the supported coefficient rings."""
from __future__ import annotations

from ..rings import Ring, ZZ


def _pick_pivot(m, start):
    best = None
    for r in range(start, len(m)):
        row = m[r]
        for c in range(start, len(row)):
            v = row[c]
            if v:
                a = abs(v)
                if a == 1:
                    return r, c
                if best is None or a < best[0]:
                    best = (a, r, c)
    return None if best is None else best[1:]


def smith_normal_form(matrix) -> tuple:
    """Invariant factors and rank of an integer matrix.

    Returns ``(factors, rank)`` where ``factors`` are the nonzero diagonal
    entries d1 | d2 | ... of the Smith form.  Python ints never overflow.

    >>> smith_normal_form([[2, 4], [6, 8]])
    ((2, 4), 2)
    """
    m = [list(map(int, row)) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        piv = _pick_pivot(m, t)
        if piv is None:
            break
        r, c = piv
        m[t], m[r] = m[r], m[t]
        for row in m:
            row[t], row[c] = row[c], row[t]
        while True:
            p = m[t][t]
            dirty = False
            # clear column t
            for i in range(t + 1, rows):
                v = m[i][t]
                if v:
                    q = v // p
                    if q:
                        ri, rt = m[i], m[t]
                        for j in range(t, cols):
                            ri[j] -= q * rt[j]
                    if m[i][t]:
                        dirty = True
            # clear row t
            rt = m[t]
            for j in range(t + 1, cols):
                v = rt[j]
                if v:
                    q = v // p
                    if q:
                        for i in range(t, rows):
                            m[i][j] -= q * m[i][t]
                    if rt[j]:
                        dirty = True
            if not dirty:
                # pivot must divide the rest of the block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if m[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                for j in range(t, cols):
                    m[t][j] += m[bad][j]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, rows):
                if m[i][t] and abs(m[i][t]) < best[0]:
                    best = (abs(m[i][t]), i, t)
            for j in range(t + 1, cols):
                if m[t][j] and abs(m[t][j]) < best[0]:
                    best = (abs(m[t][j]), t, j)
            _, i, j = best
            if i != t:
                m[t], m[i] = m[i], m[t]
            if j != t:
                for row in m:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(m[t][t]))
        t += 1
    return tuple(diag), len(diag)


def rank_over_field(matrix, ring: Ring) -> int:
    """Rank by Gaussian elimination over a field ring (Q or F_p)."""
    m = [[ring.coerce(v) for v in row] for row in matrix]
    rank = 0
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = ring.inverse(m[rank][c])
        prow = [ring.coerce(v * inv) for v in m[rank]]
        m[rank] = prow
        for r in range(rows):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [ring.coerce(a - f * b) for a, b in zip(m[r], prow)]
        rank += 1
        if rank == rows:
            break
    return rank


def invariant_factors(matrix, ring: Ring = ZZ) -> tuple:
    """``(torsion factors > 1, rank)`` of a matrix over ``ring``."""
    if not ring.is_field:
        diag, rank = smith_normal_form(matrix)
        return tuple(d for d in diag if d > 1), rank
    return (), rank_over_field(matrix, ring)
