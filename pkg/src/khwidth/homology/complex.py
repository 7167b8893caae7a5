"""Sparse bigraded chain complexes over a ring, with Gaussian elimination."""
from __future__ import annotations

from collections import defaultdict

from ..rings import Ring, ZZ
from .groups import BigradedGroups
from .snf import invariant_factors


class ChainComplex:
    """Generators carry (i, j); the differential raises i by one and keeps j.

    ``d[g]`` maps a generator id to ``{target id: coefficient}``.  Generator
    ids are arbitrary hashables; ``labels`` may hold any description of them.
    """

    def __init__(self, ring: Ring = ZZ):
        self.ring = ring
        self.grading = {}
        self.labels = {}
        self.d = {}
        self.inc = {}

    def add_generator(self, gid, i: int, j: int, label=None):
        if gid in self.grading:
            raise ValueError(f"duplicate generator {gid!r}")
        self.grading[gid] = (i, j)
        self.labels[gid] = label
        self.d[gid] = {}
        self.inc[gid] = {}

    def add_to_differential(self, src, tgt, coeff):
        c = self.ring.coerce(self.d[src].get(tgt, 0) + coeff)
        if c:
            self.d[src][tgt] = c
            self.inc[tgt][src] = c
        else:
            self.d[src].pop(tgt, None)
            self.inc[tgt].pop(src, None)

    def __len__(self):
        return len(self.grading)

    def generator_count(self) -> int:
        return len(self.grading)

    def copy(self) -> "ChainComplex":
        c = ChainComplex(self.ring)
        c.grading = dict(self.grading)
        c.labels = dict(self.labels)
        c.d = {g: dict(v) for g, v in self.d.items()}
        c.inc = {g: dict(v) for g, v in self.inc.items()}
        return c

    def check(self):
        """Raise if the differential breaks the grading or squares to nonzero."""
        for g, tg in self.d.items():
            i, j = self.grading[g]
            for t in tg:
                if self.grading[t] != (i + 1, j):
                    raise AssertionError(f"differential {g!r}->{t!r} breaks the bigrading")
        for g, tg in self.d.items():
            acc = defaultdict(int)
            for t, c in tg.items():
                for u, c2 in self.d[t].items():
                    acc[u] += c * c2
            bad = [u for u, v in acc.items() if self.ring.coerce(v)]
            if bad:
                raise AssertionError(f"d^2 != 0 starting at {g!r}")

    # -- reduction

    def eliminate(self, src, tgt):
        """Cancel the unit entry src -> tgt, updating the zig-zag terms."""
        ring = self.ring
        inv = ring.inverse(self.d[src][tgt])
        into_tgt = [(x, c) for x, c in self.inc[tgt].items() if x != src]
        from_src = [(y, c) for y, c in self.d[src].items() if y != tgt]
        for x, a in into_tgt:
            for y, b in from_src:
                self.add_to_differential(x, y, -a * inv * b)
        for g in (src, tgt):
            for t in list(self.d[g]):
                del self.inc[t][g]
            for s in list(self.inc[g]):
                del self.d[s][g]
            del self.d[g], self.inc[g], self.grading[g], self.labels[g]

    def simplify(self) -> "ChainComplex":
        """Gaussian elimination of every unit entry; returns self."""
        ring = self.ring
        changed = True
        while changed:
            changed = False
            for g in list(self.d):
                if g not in self.d:
                    continue
                best = None
                for t, c in self.d[g].items():
                    if ring.is_unit(c):
                        cost = len(self.inc[t])
                        if best is None or cost < best[0]:
                            best = (cost, t)
                if best is not None:
                    self.eliminate(g, best[1])
                    changed = True
        return self

    # -- homology

    def homology(self) -> BigradedGroups:
        ring = self.ring
        blocks = defaultdict(list)
        for g, (i, j) in self.grading.items():
            blocks[(i, j)].append(g)
        for gens in blocks.values():
            gens.sort(key=repr)
        ranks = {}
        torsion = {}
        for (i, j), gens in blocks.items():
            targets = blocks.get((i + 1, j), [])
            if not targets:
                ranks[(i, j)] = 0
                continue
            index = {t: k for k, t in enumerate(targets)}
            # rows: targets, columns: sources
            mat = [[0] * len(gens) for _ in targets]
            nonzero = False
            for col, g in enumerate(gens):
                for t, c in self.d[g].items():
                    mat[index[t]][col] = c
                    nonzero = True
            if not nonzero:
                ranks[(i, j)] = 0
                continue
            tors, rank = invariant_factors(mat, ring)
            ranks[(i, j)] = rank
            if tors:
                torsion[(i + 1, j)] = tors
        entries = {}
        for (i, j), gens in blocks.items():
            free = len(gens) - ranks.get((i, j), 0) - ranks.get((i - 1, j), 0)
            tors = torsion.get((i, j), ())
            if free or tors:
                entries[(i, j)] = (free, tors)
        return BigradedGroups(entries, ring.name)
