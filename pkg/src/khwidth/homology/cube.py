"""The cube of resolutions, built generator by generator.

This is the slow, transparent route; it serves as a cross-check for the
scanning algorithm on small diagrams.
"""
from __future__ import annotations

from itertools import product

from ..diagram import LinkDiagram, _UnionFind
from ..rings import Ring, ZZ, get_ring
from .complex import ChainComplex

CUBE_LIMIT = 14


class BudgetError(RuntimeError):
    """The diagram is larger than the configured crossing budget."""

    def __init__(self, crossings: int, budget: int):
        super().__init__(f"diagram has {crossings} crossings; budget is {budget} "
                         f"(raise the budget to at least {crossings})")
        self.crossings = crossings
        self.budget = budget


def _state_circles(D: LinkDiagram, state):
    uf = _UnionFind()
    for e in D.edges():
        uf.find(e)
    for x, s in zip(D.crossings, state):
        for u, v in D.smoothing_arcs(x, s):
            uf.union(u, v)
    groups = {}
    for e in D.edges():
        groups.setdefault(uf.find(e), []).append(e)
    circles = sorted(min(g) for g in groups.values())
    member = {e: min(groups[uf.find(e)]) for e in D.edges()}
    return circles, member


def cube_complex(D: LinkDiagram, ring="Z", budget: int = CUBE_LIMIT) -> ChainComplex:
    """Khovanov's complex with generators (state, labels).

    Label 0 stands for the unit 1 (degree +1), label 1 for x (degree -1).
    Free loops of ``D`` are included as extra circles.
    """
    ring = get_ring(ring)
    c = D.num_crossings
    if c > budget:
        raise BudgetError(c, budget)
    npos, nneg = D.pos(), D.neg()
    loops = D.free_loops
    C = ChainComplex(ring)
    info = {}
    for state in product((0, 1), repeat=c):
        circles, member = _state_circles(D, state)
        info[state] = (circles, member)
        r = sum(state)
        total = len(circles) + loops
        for labels in product((0, 1), repeat=total):
            deg = sum(1 if l == 0 else -1 for l in labels)
            C.add_generator((state, labels), r - nneg, deg + r + npos - 2 * nneg)
    for state in info:
        circles, member = info[state]
        pos = {m: k for k, m in enumerate(circles)}
        for k in range(c):
            if state[k]:
                continue
            tgt_state = state[:k] + (1,) + state[k + 1:]
            sign = -1 if sum(state[:k]) % 2 else 1
            t_circles, t_member = info[tgt_state]
            t_pos = {m: idx for idx, m in enumerate(t_circles)}
            x = D.crossings[k]
            src_touch = sorted({pos[member[e]] for e in x})
            tgt_touch = sorted({t_pos[t_member[e]] for e in x})
            # untouched circles keep their minimal edge label
            carry = [(pos[m], t_pos[m]) for m in circles if pos[m] not in src_touch]
            for labels in product((0, 1), repeat=len(circles) + loops):
                base = [None] * (len(t_circles) + loops)
                for a, b in carry:
                    base[b] = labels[a]
                for f in range(loops):
                    base[len(t_circles) + f] = labels[len(circles) + f]
                for out, coeff in _local_map(labels, src_touch, tgt_touch):
                    new = list(base)
                    for idx, lab in zip(tgt_touch, out):
                        new[idx] = lab
                    C.add_to_differential((state, labels), (tgt_state, tuple(new)), sign * coeff)
    return C


def _local_map(labels, src_touch, tgt_touch):
    if len(src_touch) == 2 and len(tgt_touch) == 1:
        a, b = labels[src_touch[0]], labels[src_touch[1]]
        if a + b == 0:
            return [((0,), 1)]
        if a + b == 1:
            return [((1,), 1)]
        return []
    if len(src_touch) == 1 and len(tgt_touch) == 2:
        a = labels[src_touch[0]]
        if a == 0:
            return [((0, 1), 1), ((1, 0), 1)]
        return [((1, 1), 1)]
    raise AssertionError("a single smoothing change must merge or split")


def reduced_cube_complex(D: LinkDiagram, ring="Z", budget: int = CUBE_LIMIT) -> ChainComplex:
    """Subcomplex with the basepoint circle labelled x, shifted so the unknot sits at (0, 0)."""
    if D.basepoint is None:
        raise ValueError("reduced homology needs a basepoint")
    full = cube_complex(D, ring, budget)
    sub = ChainComplex(full.ring)
    keep = set()
    for gid, (i, j) in full.grading.items():
        state, labels = gid
        circles, member = _state_circles(D, state)
        if labels[circles.index(member[D.basepoint])] == 1:
            keep.add(gid)
            sub.add_generator(gid, i, j + 1)
    for gid in keep:
        for t, v in full.d[gid].items():
            if t in keep:
                sub.add_to_differential(gid, t, v)
    return sub
