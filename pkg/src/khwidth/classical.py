"""Classical invariants used as oracles: Jones polynomial, determinant, signature."""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from .diagram import DiagramError, LinkDiagram, _UnionFind
from .laurent import LaurentPoly

JONES_BUDGET = 40
NAIVE_JONES_LIMIT = 16

_LOOP = LaurentPoly({1: 1, -1: 1})
_MINUS_Q = LaurentPoly({1: -1})


class JonesBudgetError(RuntimeError):
    pass


def _writhe_factor(D: LinkDiagram) -> LaurentPoly:
    npos, nneg = D.pos(), D.neg()
    return LaurentPoly({npos - 2 * nneg: (-1) ** nneg})


def jones_state_sum(D: LinkDiagram, limit: int = NAIVE_JONES_LIMIT) -> LaurentPoly:
    """Unnormalized Jones polynomial by enumerating all 2^c states."""
    c = D.num_crossings
    if c > limit:
        raise JonesBudgetError(f"{c} crossings exceed the naive state-sum limit {limit}")
    total = LaurentPoly()
    for state in product((0, 1), repeat=c):
        r = sum(state)
        circles = D.count_state_circles(state)
        total = total + _MINUS_Q**r * _LOOP**circles
    return _writhe_factor(D) * total


def _glue_arcs(matching, arcs, boundary_after):
    """Join a matching with new arcs; return (new matching, closed loop count)."""
    adj = {}
    for u, v in list(matching) + list(arcs):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen = set()
    out = []
    for s in sorted(adj):
        if s in seen or s not in boundary_after:
            continue
        seen.add(s)
        prev, u = s, adj[s][0]
        while u not in boundary_after:
            seen.add(u)
            a, b = adj[u]
            prev, u = u, (b if a == prev else a)
        seen.add(u)
        out.append(tuple(sorted((s, u))))
    loops = 0
    for s in adj:
        if s in seen:
            continue
        loops += 1
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return tuple(sorted(out)), loops


def jones_unnormalized(D: LinkDiagram, budget: int = JONES_BUDGET) -> LaurentPoly:
    """(q + q^-1) V(q^2): the Kauffman state sum with the writhe correction.

    Crossings are absorbed one at a time into a table of partial states keyed
    by the induced matching of loose edge ends, so the cost grows with the
    diagram's cut width rather than with 2^c.
    """
    c = D.num_crossings
    if c > budget:
        raise JonesBudgetError(f"{c} crossings exceed the budget {budget}")
    if c == 0:
        return _LOOP**D.free_loops
    # edge ends are (edge, end) pairs so that an edge can be cut in the middle
    ends_seen = {}
    table = {(): LaurentPoly.constant(1)}
    order = _greedy_order(D)
    open_ends = set()
    for k in order:
        x = D.crossings[k]
        slots = []
        for e in x:
            n = ends_seen.get(e, 0)
            ends_seen[e] = n + 1
            slots.append((e, n))
        arcs_by_choice = {
            0: [(slots[0], slots[1]), (slots[2], slots[3])],
            1: [(slots[0], slots[3]), (slots[1], slots[2])],
        }
        # each edge's two ends are joined as soon as both are present
        joins = []
        for e in set(x):
            if ends_seen[e] == 2:
                joins.append(((e, 0), (e, 1)))
        new_open = set(open_ends) | set(slots)
        for a, b in joins:
            new_open.discard(a)
            new_open.discard(b)
        new_table = {}
        for match, poly in table.items():
            for choice in (0, 1):
                m, loops = _glue_arcs(match, arcs_by_choice[choice] + joins, new_open)
                term = poly * _LOOP**loops
                if choice:
                    term = term * _MINUS_Q
                new_table[m] = new_table.get(m, LaurentPoly()) + term
        table = {m: p for m, p in new_table.items() if p}
        open_ends = new_open
    total = sum(table.values(), LaurentPoly())
    return _writhe_factor(D) * total * _LOOP**D.free_loops


def _greedy_order(D: LinkDiagram) -> list:
    from .homology.scanning import crossing_order
    return crossing_order(list(D.crossings), 0)


def jones_polynomial(D: LinkDiagram, budget: int = JONES_BUDGET) -> LaurentPoly:
    """V_L(q^2) in the variable q, i.e. the unnormalized polynomial divided by q + q^-1."""
    J = jones_unnormalized(D, budget)
    quotient = {}
    rem = dict(J.coeffs)
    while rem:
        top = max(rem)
        c = rem[top]
        quotient[top - 1] = c
        for e, cc in ((top, c), (top - 2, c)):
            rem[e] = rem.get(e, 0) - cc
            if not rem[e]:
                del rem[e]
        if rem and max(rem) < min(J.coeffs) - 2:
            raise AssertionError("Jones polynomial is not divisible by q + 1/q")
    return LaurentPoly(quotient)


# -- checkerboard forms

def _eta(shaded_corner: int) -> int:
    """+1 when the shaded corners are 0 and 2, i.e. swept by turning the
    under-strand counterclockwise onto the over-strand; else -1."""
    return 1 if shaded_corner % 2 == 0 else -1


def _shaded_data(D: LinkDiagram, colour: int):
    faces, col = D.checkerboard()
    face_of = {c: i for i, f in enumerate(faces) for c in f}
    verts = [i for i in range(len(faces)) if col[i] == colour]
    data = []
    for k in range(D.num_crossings):
        corner = next(p for p in range(4) if col[face_of[(k, p)]] == colour)
        fa, fb = face_of[(k, corner)], face_of[(k, corner + 2)]
        data.append((fa, fb, _eta(corner), corner % 2))
    return verts, data


def goeritz_matrix(D: LinkDiagram, colour: int = 1) -> tuple:
    """Goeritz matrix on the faces of ``colour`` with one row and column removed.

    Returns ``(matrix, correction)`` where ``correction`` is the
    Gordon-Litherland term summed over type II crossings.
    """
    verts, data = _shaded_data(D, colour)
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    G = [[0] * n for _ in range(n)]
    mu = 0
    for k, (fa, fb, eta, parity) in enumerate(data):
        if fa != fb:
            a, b = index[fa], index[fb]
            G[a][b] -= eta
            G[b][a] -= eta
            G[a][a] += eta
            G[b][b] += eta
        # type II: the oriented smoothing hugs the shaded corners
        hugged = 0 if D.signs[k] > 0 else 1
        if parity == hugged:
            mu += eta
    reduced = [row[1:] for row in G[1:]]
    return reduced, mu


def _det(M) -> int:
    n = len(M)
    if n == 0:
        return 1
    A = [[Fraction(v) for v in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return int(det)


def _inertia(M) -> int:
    """Signature of a symmetric rational matrix via symmetric elimination."""
    A = [[Fraction(v) for v in row] for row in M]
    n = len(A)
    sig = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and A[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # replace row/col i by i + j to create a nonzero diagonal entry
            for r in range(n):
                A[r][i] += A[r][j]
            for c in range(n):
                A[i][c] += A[j][c]
            piv = i
        p = A[piv][piv]
        sig += 1 if p > 0 else -1
        active.remove(piv)
        for r in active:
            if A[r][piv]:
                f = A[r][piv] / p
                for c in active:
                    A[r][c] -= f * A[piv][c]
                A[r][piv] = Fraction(0)
        for c in active:
            A[piv][c] = Fraction(0)
    return sig


def determinant(D: LinkDiagram) -> int:
    """|det| of the Goeritz matrix; 0 for split diagrams."""
    if D.num_crossings == 0:
        return 1 if D.free_loops <= 1 else 0
    if not D.is_connected():
        return 0
    G, _ = goeritz_matrix(D)
    return abs(_det(G))


def signature(D: LinkDiagram) -> int:
    """Link signature via the Gordon-Litherland formula sign(G) - mu."""
    if D.num_crossings == 0:
        if D.free_loops > 1:
            raise DiagramError("signature needs a connected diagram")
        return 0
    if not D.is_connected():
        raise DiagramError("signature needs a connected diagram")
    G, mu = goeritz_matrix(D)
    return _inertia(G) - mu


def alternating_signature(D: LinkDiagram) -> int:
    """Black-region count minus positive crossings minus one (alternating diagrams)."""
    if not D.is_alternating():
        raise DiagramError("formula applies to alternating diagrams only")
    return D.count_state_circles([0] * D.num_crossings) - D.pos() - 1


def classical_report(D: LinkDiagram) -> dict:
    return {"det": determinant(D), "signature": signature(D),
            "jones": str(jones_unnormalized(D))}
