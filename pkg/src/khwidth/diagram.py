"""Oriented link diagrams as PD codes, braid words and their closures.

Crossings are 4-tuples ``(a, b, c, d)`` of edge labels listed
counterclockwise, starting from the incoming under-strand (the knot-atlas
convention).  The under-strand runs ``a -> c`` and the over-strand joins
``b`` and ``d``; the crossing is positive when the over-strand runs
``d -> b``.  The 0-smoothing joins ``a-b`` and ``c-d``; the 1-smoothing
joins ``a-d`` and ``b-c``.  With these conventions the oriented smoothing
of a positive crossing is its 0-smoothing.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from itertools import count
from typing import Iterable, Optional, Sequence


class DiagramError(ValueError):
    pass


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        parent = self.parent
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx
        return rx


# ---------------------------------------------------------------- braid words

@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group on ``strands`` strands.

    ``letters`` holds ``(generator, exponent)`` pairs with exponent ``+1`` or
    ``-1`` and generator in ``1 .. strands-1``.
    """

    strands: int
    letters: tuple = ()

    def __post_init__(self):
        if self.strands < 2:
            raise DiagramError("a braid needs at least two strands")
        letters = tuple((int(g), int(e)) for g, e in self.letters)
        for g, e in letters:
            if not 1 <= g < self.strands:
                raise DiagramError(f"generator s{g} out of range for B_{self.strands}")
            if e not in (1, -1):
                raise DiagramError("letter exponents must be +1 or -1")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_syllables(cls, strands: int, syllables: Iterable) -> "BraidWord":
        """Build from ``(generator, power)`` syllables; powers may be any int."""
        letters = []
        for g, k in syllables:
            sign = 1 if k > 0 else -1
            letters.extend([(g, sign)] * abs(k))
        return cls(strands, tuple(letters))

    @classmethod
    def parse(cls, text: str, strands: Optional[int] = None) -> "BraidWord":
        """Parse ``s1 s2^-1 s1^3``, with parenthesised groups ``(s1 s2)^5``.

        ``h`` denotes the full twist ``(s1 s2)^3`` of B_3; ``*`` is ignored.
        """
        tokens = re.findall(r"s\d+|h|\^\s*(?:\(\s*-?\d+\s*\)|-?\d+)|\(|\)|\S", text.replace("*", " "))
        pos = 0

        def power():
            nonlocal pos
            if pos < len(tokens) and tokens[pos].startswith("^"):
                tok = tokens[pos]
                pos += 1
                if tok == "^":
                    raise DiagramError("missing exponent after '^'")
                return int(re.sub(r"[\^\s()]", "", tok))
            return 1

        def sequence():
            nonlocal pos
            out = []
            while pos < len(tokens) and tokens[pos] != ")":
                tok = tokens[pos]
                pos += 1
                if tok == "(":
                    inner = sequence()
                    if pos >= len(tokens) or tokens[pos] != ")":
                        raise DiagramError("unbalanced parentheses in braid word")
                    pos += 1
                    out.extend(_power_letters(inner, power()))
                elif tok == "h":
                    out.extend(_power_letters([(1, 1), (2, 1)] * 3, power()))
                elif tok.startswith("s"):
                    g = int(tok[1:])
                    out.extend(_power_letters([(g, 1)], power()))
                else:
                    raise DiagramError(f"unexpected token {tok!r} in braid word")
            return out

        letters = sequence()
        if pos != len(tokens):
            raise DiagramError("unbalanced parentheses in braid word")
        if strands is None:
            strands = max([g for g, _ in letters], default=1) + 1
            if "h" in tokens:
                strands = max(strands, 3)
        return cls(strands, tuple(letters))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(max(self.strands, other.strands), self.letters + other.letters)

    def __pow__(self, n: int) -> "BraidWord":
        return BraidWord(self.strands, tuple(_power_letters(list(self.letters), n)))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((g, -e) for g, e in reversed(self.letters)))

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((g, -e) for g, e in self.letters))

    def exponent_sum(self) -> int:
        return sum(e for _, e in self.letters)

    def syllables(self) -> list:
        """Maximal runs of one generator with one sign, as ``(gen, power)``."""
        out = []
        for g, e in self.letters:
            if out and out[-1][0] == g and (out[-1][1] > 0) == (e > 0):
                out[-1] = (g, out[-1][1] + e)
            else:
                out.append((g, e))
        return out

    def __str__(self):
        parts = []
        for g, k in self.syllables():
            parts.append(f"s{g}" if k == 1 else f"s{g}^{k}")
        return " ".join(parts) if parts else "1"


def _power_letters(letters, n):
    if n >= 0:
        return list(letters) * n
    inv = [(g, -e) for g, e in reversed(letters)]
    return inv * (-n)


# ---------------------------------------------------------------- diagrams

@dataclass(frozen=True)
class LinkDiagram:
    """An oriented planar diagram.

    ``components`` lists each component's edges in orientation order.  Unknotted
    components with no crossings are counted in ``free_loops``.
    """

    crossings: tuple
    signs: tuple
    components: tuple
    free_loops: int = 0
    basepoint: Optional[int] = None
    _slots: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        slots = {}
        for k, x in enumerate(self.crossings):
            if len(x) != 4:
                raise DiagramError(f"crossing {k} does not have four edges")
            for p, e in enumerate(x):
                slots.setdefault(e, []).append((k, p))
        for e, occ in slots.items():
            if len(occ) != 2:
                raise DiagramError(f"edge {e} occurs {len(occ)} times; expected 2")
        if len(self.signs) != len(self.crossings):
            raise DiagramError("one sign per crossing required")
        if self.basepoint is not None and self.basepoint not in slots:
            raise DiagramError(f"basepoint {self.basepoint} is not an edge")
        object.__setattr__(self, "_slots", slots)

    # -- construction

    @classmethod
    def unknot(cls, loops: int = 1) -> "LinkDiagram":
        """Crossingless unlink of ``loops`` components."""
        return cls((), (), (), free_loops=loops)

    @classmethod
    def from_geometry(cls, crossings, heads=(), free_loops=0, basepoint=None) -> "LinkDiagram":
        """Orient a diagram given only its planar data.

        ``crossings`` are ccw 4-tuples with the under-strand through slots 0
        and 2, not necessarily incoming at slot 0.  ``heads`` is an iterable of
        slots ``(k, p)`` at which an edge should be entering its crossing; for
        each component the smallest such slot fixes the direction.
        """
        crossings = [tuple(x) for x in crossings]
        slots = {}
        for k, x in enumerate(crossings):
            for p, e in enumerate(x):
                slots.setdefault(e, []).append((k, p))
        for e, occ in slots.items():
            if len(occ) != 2:
                raise DiagramError(f"edge {e} occurs {len(occ)} times; expected 2")

        def other(e, slot):
            a, b = slots[e]
            return b if a == slot else a

        # undirected strand components over slots
        seen = set()
        comp_of = {}
        comps = []
        for k in range(len(crossings)):
            for p in range(4):
                if (k, p) in seen:
                    continue
                stack = [(k, p)]
                members = []
                while stack:
                    s = stack.pop()
                    if s in seen:
                        continue
                    seen.add(s)
                    members.append(s)
                    kk, pp = s
                    nxt = [(kk, (pp + 2) % 4), other(crossings[kk][pp], s)]
                    stack.extend(n for n in nxt if n not in seen)
                for s in members:
                    comp_of[s] = len(comps)
                comps.append(sorted(members))
        hinted = {}
        for s in sorted(set(heads)):
            if s in comp_of:
                hinted.setdefault(comp_of[s], s)
        head_slots = set()
        components = []
        for ci, members in enumerate(comps):
            start = hinted.get(ci, members[0])
            order = []
            slot = start
            while True:
                head_slots.add(slot)
                k, p = slot
                order.append(crossings[k][p])
                out = (k, (p + 2) % 4)
                e = crossings[k][out[1]]
                slot = other(e, out)
                if slot == start:
                    break
            i = order.index(min(order))
            components.append(tuple(order[i:] + order[:i]))
        new_crossings = []
        signs = []
        for k, x in enumerate(crossings):
            if (k, 0) in head_slots:
                y, d_pos = x, 3
            else:
                y, d_pos = (x[2], x[3], x[0], x[1]), 1
            new_crossings.append(y)
            signs.append(1 if (k, d_pos) in head_slots else -1)
        components.sort(key=lambda c: c[0])
        return cls(tuple(new_crossings), tuple(signs), tuple(components),
                   free_loops=free_loops, basepoint=basepoint)

    @classmethod
    def from_pd(cls, pd, free_loops: int = 0, basepoint=None) -> "LinkDiagram":
        """Build from a PD code (text ``X[1,4,2,5] X[...]`` or a list of 4-tuples).

        Slot 0 of each crossing is taken as incoming; for components that are
        over-strands everywhere, the consecutive-label rule orients them.
        """
        if isinstance(pd, str):
            pd = parse_pd(pd)
        crossings = [tuple(int(v) for v in x) for x in pd]
        heads = [(k, 0) for k in range(len(crossings))]
        diag = cls.from_geometry(crossings, heads, free_loops, basepoint)
        orphan = set()
        for comp in diag.components:
            if not _component_has_under(diag, comp):
                orphan.update(comp)
        if orphan:
            # consecutive labelling decides the over-strand direction
            for k, (a, b, c, d) in enumerate(crossings):
                if b in orphan:
                    heads.append((k, 3) if (b == d + 1 or d > b + 1) else (k, 1))
            diag = cls.from_geometry(crossings, heads, free_loops, basepoint)
        return diag

    # -- basic queries

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    def edges(self) -> list:
        return sorted(self._slots)

    def slots_of(self, edge) -> list:
        return list(self._slots[edge])

    def num_components(self) -> int:
        return len(self.components) + self.free_loops

    def pos(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    def neg(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def writhe(self) -> int:
        return sum(self.signs)

    def component_of_edge(self) -> dict:
        return {e: i for i, comp in enumerate(self.components) for e in comp}

    def head_slots(self) -> set:
        """Slots at which an edge enters its crossing."""
        heads = set()
        for k, (a, b, c, d) in enumerate(self.crossings):
            heads.add((k, 0))
            heads.add((k, 3) if self.signs[k] > 0 else (k, 1))
        return heads

    # -- smoothings and states

    @staticmethod
    def smoothing_arcs(x, choice):
        a, b, c, d = x
        return ((a, b), (c, d)) if choice == 0 else ((a, d), (b, c))

    def count_state_circles(self, state: Sequence[int]) -> int:
        """Number of circles after smoothing every crossing per ``state``."""
        if len(state) != len(self.crossings):
            raise DiagramError("state length must equal the crossing count")
        uf = _UnionFind()
        for x, s in zip(self.crossings, state):
            for u, v in self.smoothing_arcs(x, s):
                uf.union(u, v)
        roots = {uf.find(e) for e in self._slots}
        return len(roots) + self.free_loops

    def smooth(self, index: int, choice: int) -> "LinkDiagram":
        """Remove crossing ``index`` by its 0- or 1-smoothing."""
        if not 0 <= index < len(self.crossings):
            raise DiagramError(f"no crossing {index}")
        if choice not in (0, 1):
            raise DiagramError("choice must be 0 or 1")
        joins = self.smoothing_arcs(self.crossings[index], choice)
        return self._surgery({index}, joins)

    def _surgery(self, removed: set, joins, extra=(), extra_heads=()) -> "LinkDiagram":
        """Drop crossings, glue edge labels along ``joins``, append ``extra``.

        Joined label classes left without occurrences become free loops.
        """
        uf = _UnionFind()
        for e in self._slots:
            uf.find(e)
        for u, v in joins:
            uf.union(u, v)
        heads = self.head_slots()
        kept = [k for k in range(len(self.crossings)) if k not in removed]
        new_index = {k: i for i, k in enumerate(kept)}
        crossings = []
        new_heads = []
        for k in kept:
            crossings.append(tuple(uf.find(e) for e in self.crossings[k]))
            for p in range(4):
                if (k, p) in heads:
                    new_heads.append((new_index[k], p))
        offset = len(crossings)
        for x in extra:
            crossings.append(tuple(uf.find(e) for e in x))
        new_heads.extend((offset + k, p) for k, p in extra_heads)
        used = {e for x in crossings for e in x}
        classes = {uf.find(e) for e in self._slots}
        loops = sum(1 for r in classes if r not in used)
        bp = self.basepoint
        if bp is not None:
            bp = uf.find(bp)
            if bp not in used:
                bp = None
        return LinkDiagram.from_geometry(crossings, new_heads, self.free_loops + loops, bp)

    # -- symmetries

    def mirror(self) -> "LinkDiagram":
        crossings = []
        for (a, b, c, d), s in zip(self.crossings, self.signs):
            crossings.append((d, a, b, c) if s > 0 else (b, c, d, a))
        return LinkDiagram(tuple(crossings), tuple(-s for s in self.signs), self.components,
                           self.free_loops, self.basepoint)

    def reverse_component(self, component: int) -> "LinkDiagram":
        if not 0 <= component < len(self.components):
            if 0 <= component - len(self.components) < self.free_loops:
                return self
            raise DiagramError(f"no component {component}")
        flip = set(self.components[component])
        heads = set()
        for k, slot_p in self.head_slots():
            e = self.crossings[k][slot_p]
            if e in flip:
                heads.add((k, (slot_p + 2) % 4))
            else:
                heads.add((k, slot_p))
        return LinkDiagram.from_geometry(self.crossings, heads, self.free_loops, self.basepoint)

    def linking_number(self, component: int) -> int:
        """Linking number of one component with the rest of the link."""
        if not 0 <= component < self.num_components():
            raise DiagramError(f"no component {component}")
        comp = self.component_of_edge()
        total = 0
        for x, s in zip(self.crossings, self.signs):
            cu, co = comp[x[0]], comp[x[1]]
            if cu != co and component in (cu, co):
                total += s
        return total // 2

    def with_basepoint(self, edge) -> "LinkDiagram":
        return replace(self, basepoint=edge)

    # -- structure

    def split_pieces(self) -> list:
        """Connected pieces of the underlying 4-valent graph (plus free loops)."""
        uf = _UnionFind()
        for k, x in enumerate(self.crossings):
            uf.find(k)
            for e in x:
                for kk, _ in self._slots[e]:
                    uf.union(k, kk)
        groups = {}
        for k in range(len(self.crossings)):
            groups.setdefault(uf.find(k), []).append(k)
        pieces = []
        for ks in groups.values():
            xs = [self.crossings[k] for k in ks]
            edges = {e for x in xs for e in x}
            comps = tuple(c for c in self.components if c[0] in edges)
            bp = self.basepoint if self.basepoint in edges else None
            pieces.append(LinkDiagram(tuple(xs), tuple(self.signs[k] for k in ks), comps, 0, bp))
        pieces.extend(LinkDiagram.unknot() for _ in range(self.free_loops))
        return pieces

    def is_connected(self) -> bool:
        if not self.crossings:
            return self.free_loops <= 1
        return self.free_loops == 0 and len(self.split_pieces()) == 1

    def faces(self) -> list:
        """Faces of a connected diagram as lists of corners ``(k, p)``.

        Corner ``(k, p)`` sits between slots ``p`` and ``p+1`` of crossing ``k``.
        """
        if not self.crossings:
            return []
        seen = set()
        faces = []
        for k in range(len(self.crossings)):
            for p in range(4):
                if (k, p) in seen:
                    continue
                face = []
                cur = (k, p)
                while cur not in seen:
                    seen.add(cur)
                    face.append(cur)
                    kk, pp = cur
                    e = self.crossings[kk][(pp + 1) % 4]
                    s1, s2 = self._slots[e]
                    twin = s2 if s1 == (kk, (pp + 1) % 4) else s1
                    cur = twin
                faces.append(face)
        return faces

    def checkerboard(self):
        """Return ``(faces, colour)`` with ``colour[f]`` in {0, 1}.

        Colour 0 ("black") is the class containing corners ``(k, 0)`` and
        ``(k, 2)`` of crossing 0; for alternating diagrams these are exactly the
        regions traced by the all-0 state circles.
        """
        if not self.is_connected() or not self.crossings:
            raise DiagramError("checkerboard colouring needs a connected diagram with crossings")
        faces = self.faces()
        face_of = {}
        for i, f in enumerate(faces):
            for corner in f:
                face_of[corner] = i
        colour = {face_of[(0, 0)]: 0}
        stack = [face_of[(0, 0)]]
        adj = {}
        for k in range(len(self.crossings)):
            for p in range(4):
                f1, f2 = face_of[(k, p)], face_of[(k, (p + 1) % 4)]
                adj.setdefault(f1, []).append(f2)
                adj.setdefault(f2, []).append(f1)
        while stack:
            f = stack.pop()
            for g in adj[f]:
                if g not in colour:
                    colour[g] = 1 - colour[f]
                    stack.append(g)
                elif colour[g] == colour[f]:
                    raise DiagramError("diagram faces are not 2-colourable")
        return faces, [colour[i] for i in range(len(faces))]

    def checkerboard_graph(self, colour: int = 0):
        """Tait graph: vertices are faces of ``colour``; one edge per crossing.

        Returns ``(vertices, edges)`` where edges are ``(face_i, face_j, crossing)``.
        A disconnected diagram gives a list of such pairs, one per piece.
        """
        if not self.is_connected():
            return [piece.checkerboard_graph(colour) for piece in self.split_pieces()]
        if not self.crossings:
            return ([0], [])
        faces, col = self.checkerboard()
        face_of = {c: i for i, f in enumerate(faces) for c in f}
        verts = [i for i in range(len(faces)) if col[i] == colour]
        edges = []
        for k in range(len(self.crossings)):
            pair = [face_of[(k, p)] for p in range(4) if col[face_of[(k, p)]] == colour]
            edges.append((pair[0], pair[1], k))
        return verts, edges

    def is_alternating(self) -> bool:
        for e, ((k1, p1), (k2, p2)) in self._slots.items():
            if p1 % 2 == p2 % 2:
                return False
        return True

    def nugatory_crossings(self) -> list:
        face_of = {c: i for i, f in enumerate(self.faces()) for c in f}
        return [k for k in range(len(self.crossings))
                if face_of[(k, 0)] == face_of[(k, 2)] or face_of[(k, 1)] == face_of[(k, 3)]]

    def is_reduced_alternating(self) -> bool:
        return self.is_connected() and self.is_alternating() and not self.nugatory_crossings()

    # -- simplification

    def simplify(self) -> "LinkDiagram":
        """Greedy Reidemeister I and II reductions until none apply."""
        d = self
        while True:
            nxt = d._reduce_once()
            if nxt is None:
                return d
            d = nxt

    def _reduce_once(self):
        for k, x in enumerate(self.crossings):
            for p in range(4):
                if x[p] == x[(p + 1) % 4]:
                    q, r = (p + 2) % 4, (p + 3) % 4
                    if x[q] == x[r]:
                        return self._surgery({k}, [(x[p], x[q])])
                    return self._surgery({k}, [(x[q], x[r]), (x[p], x[q])])
        for e, ((k1, p1), (k2, p2)) in self._slots.items():
            if k1 == k2:
                continue
            for dp, dq in ((1, -1), (-1, 1)):
                f1 = self.crossings[k1][(p1 + dp) % 4]
                f2 = self.crossings[k2][(p2 + dq) % 4]
                if f1 != f2:
                    continue
                if (p1 % 2 == p2 % 2) and {k for k, _ in self._slots[f1]} == {k1, k2}:
                    x1, x2 = self.crossings[k1], self.crossings[k2]
                    joins = [(x1[p1], x1[(p1 + 2) % 4]), (x2[p2], x2[(p2 + 2) % 4]),
                             (f1, x1[(p1 + dp + 2) % 4]), (f1, x2[(p2 + dq + 2) % 4])]
                    return self._surgery({k1, k2}, joins)
        return None

    # -- serialisation

    def relabeled(self) -> "LinkDiagram":
        """Relabel edges 1..2c consecutively along oriented components."""
        mapping = {}
        nxt = count(1)
        for comp in self.components:
            for e in comp:
                mapping[e] = next(nxt)
        crossings = tuple(tuple(mapping[e] for e in x) for x in self.crossings)
        comps = tuple(tuple(mapping[e] for e in c) for c in self.components)
        bp = mapping.get(self.basepoint) if self.basepoint is not None else None
        return LinkDiagram(crossings, self.signs, comps, self.free_loops, bp)

    def canonical_key(self) -> str:
        d = self.relabeled()
        return json.dumps([d.crossings, d.signs, d.free_loops, d.basepoint])

    def pd_string(self) -> str:
        return ", ".join("X[%d,%d,%d,%d]" % x for x in self.crossings)

    def to_json(self) -> dict:
        return {
            "crossings": [list(x) for x in self.crossings],
            "signs": list(self.signs),
            "components": [list(c) for c in self.components],
            "free_loops": self.free_loops,
            "basepoint": self.basepoint,
        }

    @classmethod
    def from_json(cls, data) -> "LinkDiagram":
        if isinstance(data, str):
            data = json.loads(data)
        d = cls(tuple(tuple(x) for x in data["crossings"]), tuple(data["signs"]),
                tuple(tuple(c) for c in data["components"]), data.get("free_loops", 0),
                data.get("basepoint"))
        check = cls.from_geometry(d.crossings, d.head_slots(), d.free_loops, d.basepoint)
        if check.signs != d.signs:
            raise DiagramError("signs are inconsistent with the component orientations")
        return d

    def permuted(self, order: Sequence[int]) -> "LinkDiagram":
        """Same diagram with crossings listed in ``order``."""
        if sorted(order) != list(range(len(self.crossings))):
            raise DiagramError("order must be a permutation of crossing indices")
        return LinkDiagram(tuple(self.crossings[k] for k in order),
                           tuple(self.signs[k] for k in order),
                           self.components, self.free_loops, self.basepoint)

    def relabel_edges(self, mapping: dict) -> "LinkDiagram":
        crossings = tuple(tuple(mapping[e] for e in x) for x in self.crossings)
        bp = mapping[self.basepoint] if self.basepoint is not None else None
        return LinkDiagram.from_geometry(crossings, self.head_slots(), self.free_loops, bp)

    def disjoint_union(self, other: "LinkDiagram") -> "LinkDiagram":
        shift = max(self._slots, default=0) + 1 - min(other._slots, default=0)
        other_x = [tuple(e + shift for e in x) for x in other.crossings]
        heads = list(self.head_slots())
        n = len(self.crossings)
        heads.extend((n + k, p) for k, p in other.head_slots())
        return LinkDiagram.from_geometry(list(self.crossings) + other_x, heads,
                                         self.free_loops + other.free_loops, self.basepoint)


def _component_has_under(d: LinkDiagram, comp) -> bool:
    edges = set(comp)
    return any(x[0] in edges for x in d.crossings)


def parse_pd(text: str) -> list:
    found = re.findall(r"X\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]", text)
    if not found and text.strip() not in ("", "PD[]"):
        raise DiagramError(f"cannot parse PD code {text!r}")
    return [tuple(int(v) for v in m) for m in found]


def closure(word: BraidWord) -> LinkDiagram:
    """Closure of a braid word; strands run upward through the braid.

    A positive letter gives a positive crossing.  Strands untouched by any
    letter close up into crossingless unknots.
    """
    if not word.letters:
        raise DiagramError("closure of the empty word: use LinkDiagram.unknot(n)")
    n = word.strands
    labels = list(range(1, n + 1))
    initial = list(labels)
    nxt = count(n + 1)
    raw = []
    heads = []
    for k, (g, e) in enumerate(word.letters):
        lb, rb = labels[g - 1], labels[g]
        lt, rt = next(nxt), next(nxt)
        if e > 0:
            raw.append([rb, rt, lt, lb])
            heads += [(k, 0), (k, 3)]
        else:
            raw.append([lb, rb, rt, lt])
            heads += [(k, 0), (k, 1)]
        labels[g - 1], labels[g] = lt, rt
    rename = {final: init for final, init in zip(labels, initial) if final != init}
    crossings = [tuple(rename.get(e, e) for e in x) for x in raw]
    touched = {e for x in crossings for e in x}
    free = sum(1 for e in initial if e not in touched)
    return LinkDiagram.from_geometry(crossings, heads, free)


def parse_diagram(text: str) -> LinkDiagram:
    """Parse ``braid:<word>``, ``pd:<PD code>`` or a bare braid word / PD code."""
    s = text.strip()
    if s.startswith("braid:"):
        return closure(BraidWord.parse(s[6:]))
    if s.startswith("pd:"):
        return LinkDiagram.from_pd(s[3:])
    if s.startswith("json:"):
        return LinkDiagram.from_json(s[5:])
    if "X[" in s:
        return LinkDiagram.from_pd(s)
    if s == "unknot":
        return LinkDiagram.unknot()
    return closure(BraidWord.parse(s))
