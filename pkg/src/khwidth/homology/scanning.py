"""Local Khovanov homology: add crossings one at a time, simplify as we go.

Objects of the partial complex are crossingless matchings of the current
boundary points, each with a homological height ``h`` and a quantum shift
``q``.  Morphisms live in the dotted cobordism category with the relations
sphere = 0, dotted sphere = 1, two dots = 0 and neck cutting.  In that
category every cobordism between loop-free matchings A and B is a
combination of "each cycle of A u B bounds a disk, some disks dotted"; a
morphism is stored as ``{frozenset(dotted cycle names): coefficient}``
where a cycle is named by its smallest boundary point.

Closed loops that appear while gluing are removed at once by delooping,
loop{s} = empty{s+1} + empty{s-1}, and every isomorphism (same matching,
same shift, unit coefficient) is cancelled by Gaussian elimination.

The diagram is cut open at one edge, so the last object is always the arc
joining the two cut ends.  Closing that arc gives ordinary homology, and
killing dots gives the reduced theory.
"""
from __future__ import annotations

from itertools import product

from ..diagram import LinkDiagram, _UnionFind
from ..rings import Ring, get_ring
from .complex import ChainComplex

_SMOOTHINGS = {0: ((-1, -2), (-3, -4)), 1: ((-1, -4), (-2, -3))}
_SADDLE_SLOTS = (-1, -2, -3, -4)
_EMPTY = frozenset()


def _partner(matching) -> dict:
    out = {}
    for u, v in matching:
        out[u] = v
        out[v] = u
    return out


def _cycles(pa: dict, pb: dict) -> list:
    """Cycles of the union of two matchings on the same points."""
    seen = set()
    out = []
    for start in sorted(pa):
        if start in seen:
            continue
        cyc = []
        u = start
        while u not in seen:
            seen.add(u)
            cyc.append(u)
            w = pa[u]
            seen.add(w)
            cyc.append(w)
            u = pb[w]
        out.append(cyc)
    return out


def _component_value(k_names, genus, dots):
    """Neck-cut a connected surface into dotted disks on its k boundary cycles."""
    if not k_names:
        if genus == 0 and dots == 1:
            return {_EMPTY: 1}
        if genus == 1 and dots == 0:
            return {_EMPTY: 2}
        return {}
    total = genus + dots
    if total == 0:
        every = frozenset(k_names)
        return {every - {n}: 1 for n in k_names}
    if total == 1:
        return {frozenset(k_names): 2**genus}
    return {}


def _multiply(terms_a: dict, terms_b: dict) -> dict:
    out = {}
    for ka, ca in terms_a.items():
        for kb, cb in terms_b.items():
            k = ka | kb
            out[k] = out.get(k, 0) + ca * cb
    return out


class _Surface:
    """Connected-component bookkeeping for a glued cobordism.

    ``comps`` holds, per component: piece indices, Euler characteristic,
    source-loop positions, target-loop positions and the mixed cycle names.
    """

    __slots__ = ("comps",)

    def __init__(self, comps):
        self.comps = comps

    def evaluate(self, piece_dots, src_choice, tgt_choice) -> dict:
        result = {_EMPTY: 1}
        for pieces, chi, src_loops, tgt_loops, mixed in self.comps:
            dots = sum(piece_dots[p] for p in pieces)
            dots += sum(1 for s in src_loops if src_choice[s] < 0)
            dots += sum(1 for t in tgt_loops if tgt_choice[t] > 0)
            if dots > 1:
                return {}
            boundary = len(src_loops) + len(tgt_loops) + len(mixed)
            genus2 = 2 - boundary - chi
            genus = genus2 // 2
            val = _component_value(mixed, genus, dots)
            if not val:
                return {}
            result = _multiply(result, val)
        return result


class ScanComplex:
    """The partial complex: objects (matching, h, q) and cobordism matrices."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.objects = {}
        self.out = {}
        self.inc = {}
        self._next = 0
        self._compose_cache = {}

    def new_object(self, matching, h, q) -> int:
        oid = self._next
        self._next += 1
        self.objects[oid] = (matching, h, q)
        self.out[oid] = {}
        self.inc[oid] = {}
        return oid

    def add_morphism(self, src, tgt, mor: dict):
        ring = self.ring
        cur = self.out[src].get(tgt)
        new = dict(cur) if cur else {}
        for k, c in mor.items():
            v = ring.coerce(new.get(k, 0) + c)
            if v:
                new[k] = v
            else:
                new.pop(k, None)
        if new:
            self.out[src][tgt] = new
            self.inc[tgt][src] = new
        elif cur is not None:
            del self.out[src][tgt]
            del self.inc[tgt][src]

    def remove(self, oid):
        for t in self.out[oid]:
            del self.inc[t][oid]
        for s in self.inc[oid]:
            del self.out[s][oid]
        del self.out[oid], self.inc[oid], self.objects[oid]

    # -- composition in the cobordism category

    def _compose_structure(self, A, B, C):
        key = (A, B, C)
        hit = self._compose_cache.get(key)
        if hit is not None:
            return hit
        pa, pb, pc = _partner(A), _partner(B), _partner(C)
        ab = _cycles(pa, pb)
        bc = _cycles(pb, pc)
        ac = _cycles(pa, pc)
        uf = _UnionFind()
        ab_of = {}
        for cyc in ab:
            r = ("f", min(cyc))
            uf.find(r)
            for u in cyc:
                ab_of[u] = r
        for cyc in bc:
            r = ("g", min(cyc))
            uf.find(r)
            for u in cyc:
                uf.union(r, ab_of[u])
        comps = {}
        for cyc in ab:
            slot = comps.setdefault(uf.find(("f", min(cyc))), [[], [], [], 0])
            slot[0].append(min(cyc))
            slot[3] += 1
        for cyc in bc:
            slot = comps[uf.find(("g", min(cyc)))]
            slot[1].append(min(cyc))
            slot[3] += 1
        for cyc in ac:
            comps[uf.find(ab_of[cyc[0]])][2].append(min(cyc))
        barcs = {}
        for u, v in B:
            root = uf.find(ab_of[u])
            barcs[root] = barcs.get(root, 0) + 1
        struct = []
        for root, (fr, gr, names, disks) in comps.items():
            chi = disks - barcs.get(root, 0)
            genus = (2 - len(names) - chi) // 2
            struct.append((frozenset(fr), frozenset(gr), tuple(names), genus))
        self._compose_cache[key] = struct
        return struct

    def compose(self, A, B, C, f: dict, g: dict) -> dict:
        """g after f, for f: A -> B and g: B -> C."""
        struct = self._compose_structure(A, B, C)
        out = {}
        for kf, cf in f.items():
            for kg, cg in g.items():
                val = {_EMPTY: cf * cg}
                for fr, gr, names, genus in struct:
                    dots = len(kf & fr) + len(kg & gr)
                    piece = _component_value(names, genus, dots)
                    if not piece:
                        val = {}
                        break
                    val = _multiply(val, piece)
                for k, c in val.items():
                    out[k] = out.get(k, 0) + c
        return out

    # -- Gaussian elimination

    def _is_iso(self, src, tgt, mor) -> bool:
        a = self.objects[src]
        b = self.objects[tgt]
        if a[0] != b[0] or a[2] != b[2] or len(mor) != 1:
            return False
        (k, c), = mor.items()
        return not k and self.ring.is_unit(c)

    def eliminate(self, b1, b2):
        ring = self.ring
        phi = self.out[b1][b2]
        inv = ring.inverse(phi[_EMPTY])
        A = self.objects[b1][0]
        into = [(x, m) for x, m in self.inc[b2].items() if x != b1]
        outof = [(y, m) for y, m in self.out[b1].items() if y != b2]
        self.remove(b1)
        self.remove(b2)
        for x, fx in into:
            Mx = self.objects[x][0]
            for y, gy in outof:
                My = self.objects[y][0]
                comp = self.compose(Mx, A, My, fx, gy)
                if comp:
                    self.add_morphism(x, y, {k: -inv * c for k, c in comp.items()})

    def simplify(self):
        changed = True
        while changed:
            changed = False
            for src in list(self.objects):
                if src not in self.objects:
                    continue
                best = None
                for tgt, mor in self.out[src].items():
                    if self._is_iso(src, tgt, mor):
                        cost = (len(self.inc[tgt]) - 1) * (len(self.out[src]) - 1)
                        if best is None or cost < best[0]:
                            best = (cost, tgt)
                if best is not None:
                    self.eliminate(src, best[1])
                    changed = True


class _CrossingGlue:
    """Geometry of gluing one crossing onto the current boundary."""

    def __init__(self, X, boundary: frozenset):
        self.X = X
        self.name = {-(p + 1): X[p] for p in range(4)}
        glue = []
        internal = set()
        for p in range(4):
            e = X[p]
            if e in boundary:
                glue.append((e, -(p + 1)))
            else:
                others = [r for r in range(4) if r != p and X[r] == e]
                if others and others[0] > p:
                    glue.append((-(p + 1), -(others[0] + 1)))
                if others:
                    internal.add(e)
        self.glue = glue
        self.glued = {u for pair in glue for u in pair}
        junction = {e for e, _ in glue if e > 0}
        self.new_boundary = frozenset((boundary - junction)
                                      | {e for e in X if e not in boundary and e not in internal})
        self._ext_cache = {}
        self._struct_cache = {}

    def point_name(self, u):
        return u if u > 0 else self.name[u]

    def extended(self, M, c):
        """New matching and sorted loop keys for old matching M with smoothing c."""
        key = (M, c)
        hit = self._ext_cache.get(key)
        if hit is not None:
            return hit
        adj = {}
        for u, v in list(M) + list(_SMOOTHINGS[c]) + self.glue:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        seen = set()
        arcs = []
        loops = []
        ends = [u for u in adj if u not in self.glued]
        for s in sorted(ends):
            if s in seen:
                continue
            seen.add(s)
            prev, u = s, adj[s][0]
            while u in self.glued:
                seen.add(u)
                a, b = adj[u]
                prev, u = u, (b if a == prev else a)
            seen.add(u)
            a, b = sorted((self.point_name(s), self.point_name(u)))
            arcs.append((a, b))
        for s in sorted(adj):
            if s in seen:
                continue
            cyc = [s]
            seen.add(s)
            stack = [s]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        cyc.append(w)
                        stack.append(w)
            loops.append(min(cyc))
        out = (tuple(sorted(arcs)), tuple(sorted(loops)))
        self._ext_cache[key] = out
        return out

    def surface(self, pieces, bottom, top, src_loops, tgt_loops) -> _Surface:
        """Components of the glued cobordism built from disk ``pieces``."""
        piece_of = {}
        for idx, pts in enumerate(pieces):
            for u in pts:
                piece_of[u] = idx
        uf = _UnionFind()
        for idx in range(len(pieces)):
            uf.find(idx)
        for u, v in self.glue:
            uf.union(piece_of[u], piece_of[v])
        # boundary circles: nodes (point, side)
        buf = _UnionFind()
        for u, v in bottom:
            buf.union((u, 0), (v, 0))
        for u, v in top:
            buf.union((u, 1), (v, 1))
        for u, v in self.glue:
            buf.union((u, 0), (v, 0))
            buf.union((u, 1), (v, 1))
        for u in piece_of:
            if u not in self.glued:
                buf.union((u, 0), (u, 1))
        circles = {}
        for u in piece_of:
            for side in (0, 1):
                info = circles.setdefault(buf.find((u, side)), [set(), None, None])
                info[0].add(side)
                if u not in self.glued:
                    nm = self.point_name(u)
                    info[1] = nm if info[1] is None else min(info[1], nm)
                info[2] = u if info[2] is None else min(info[2], u)
        src_index = {k: i for i, k in enumerate(src_loops)}
        tgt_index = {k: i for i, k in enumerate(tgt_loops)}
        comps = {}
        for idx in range(len(pieces)):
            comps.setdefault(uf.find(idx), [[], 0, [], [], []])[0].append(idx)
        for r, slot in comps.items():
            slot[1] = len(slot[0])
        for u, v in self.glue:
            comps[uf.find(piece_of[u])][1] -= 1
        for root, (sides, name, low) in circles.items():
            slot = comps[uf.find(piece_of[low])]
            if sides == {0, 1}:
                slot[4].append(name)
            elif sides == {0}:
                slot[2].append(src_index[low])
            else:
                slot[3].append(tgt_index[low])
        return _Surface([(tuple(p), chi, tuple(s), tuple(t), tuple(m))
                         for p, chi, s, t, m in comps.values()])

    def old_map_surface(self, M1, M2, c):
        key = ("a", M1, M2, c)
        hit = self._struct_cache.get(key)
        if hit is not None:
            return hit
        p1, p2 = _partner(M1), _partner(M2)
        cycles = _cycles(p1, p2) if p1 else []
        pieces = [tuple(cyc) for cyc in cycles] + [tuple(a) for a in _SMOOTHINGS[c]]
        names = [min(cyc) for cyc in cycles]
        bottom = list(M1) + list(_SMOOTHINGS[c])
        top = list(M2) + list(_SMOOTHINGS[c])
        src_loops = self.extended(M1, c)[1]
        tgt_loops = self.extended(M2, c)[1]
        surf = self.surface(pieces, bottom, top, src_loops, tgt_loops)
        out = (surf, names, len(pieces))
        self._struct_cache[key] = out
        return out

    def saddle_surface(self, M):
        key = ("b", M)
        hit = self._struct_cache.get(key)
        if hit is not None:
            return hit
        pieces = [tuple(a) for a in M] + [_SADDLE_SLOTS]
        bottom = list(M) + list(_SMOOTHINGS[0])
        top = list(M) + list(_SMOOTHINGS[1])
        surf = self.surface(pieces, bottom, top, self.extended(M, 0)[1], self.extended(M, 1)[1])
        self._struct_cache[key] = surf
        return surf


def _choices(n):
    return list(product((1, -1), repeat=n))


def add_crossing(cx: ScanComplex, X, boundary: frozenset) -> tuple:
    """Tensor the complex with crossing ``X`` (4 labels); returns (complex, boundary)."""
    glue = _CrossingGlue(X, boundary)
    new = ScanComplex(cx.ring)
    ids = {}
    for oid, (M, h, q) in cx.objects.items():
        for c in (0, 1):
            arcs, loops = glue.extended(M, c)
            for ch in _choices(len(loops)):
                ids[(oid, c, ch)] = new.new_object(arcs, h + c, q + c + sum(ch))
    for o1 in cx.objects:
        M1, h1, _ = cx.objects[o1]
        for o2, f in cx.out[o1].items():
            M2 = cx.objects[o2][0]
            for c in (0, 1):
                surf, names, npieces = glue.old_map_surface(M1, M2, c)
                lsrc = len(glue.extended(M1, c)[1])
                ltgt = len(glue.extended(M2, c)[1])
                for key, coeff in f.items():
                    dots = [1 if names[i] in key else 0 for i in range(len(names))]
                    dots += [0] * (npieces - len(names))
                    for s in _choices(lsrc):
                        for t in _choices(ltgt):
                            val = surf.evaluate(dots, s, t)
                            if val:
                                new.add_morphism(ids[(o1, c, s)], ids[(o2, c, t)],
                                                 {k: coeff * v for k, v in val.items()})
        surf = glue.saddle_surface(M1)
        dots = [0] * (len(M1) + 1)
        sign = -1 if h1 % 2 else 1
        for s in _choices(len(glue.extended(M1, 0)[1])):
            for t in _choices(len(glue.extended(M1, 1)[1])):
                val = surf.evaluate(dots, s, t)
                if val:
                    new.add_morphism(ids[(o1, 0, s)], ids[(o1, 1, t)],
                                     {k: sign * v for k, v in val.items()})
    new.simplify()
    return new, glue.new_boundary


def crossing_order(crossings, start: int = 0) -> list:
    """Greedy order: next crossing shares the most edges with the boundary."""
    n = len(crossings)
    if not n:
        return []
    order = [start]
    used = {start}
    count = {}
    for e in crossings[start]:
        count[e] = count.get(e, 0) + 1
    while len(order) < n:
        boundary = {e for e, k in count.items() if k == 1}
        best = None
        for k in range(n):
            if k in used:
                continue
            shared = sum(1 for e in crossings[k] if e in boundary)
            score = (shared, -k)
            if best is None or score > best[0]:
                best = (score, k)
        k = best[1]
        order.append(k)
        used.add(k)
        for e in crossings[k]:
            count[e] = count.get(e, 0) + 1
    return order


def scan_complex(D: LinkDiagram, ring="Z", reduced: bool = False, cut=None,
                 order=None) -> ChainComplex:
    """The simplified Khovanov complex of ``D`` as an ordinary chain complex.

    ``cut`` is the edge at which the diagram is opened (defaults to the
    basepoint, else the first edge of crossing 0).  ``order`` optionally
    fixes the order in which crossings are added.
    """
    ring = get_ring(ring)
    if D.num_crossings == 0:
        raise ValueError("crossingless diagrams are handled directly")
    crossings = [list(x) for x in D.crossings]
    if cut is None:
        cut = D.basepoint if D.basepoint is not None else crossings[0][0]
    fresh = max(D.edges()) + 1
    k0, p0 = D.slots_of(cut)[0]
    crossings[k0][p0] = fresh
    crossings = [tuple(x) for x in crossings]
    if order is None:
        order = crossing_order(crossings, k0)
    cx = ScanComplex(ring)
    cx.new_object((), 0, 0)
    boundary = frozenset()
    for k in order:
        cx, boundary = add_crossing(cx, crossings[k], boundary)
    a, b = sorted((cut, fresh))
    arc = ((a, b),)
    npos, nneg = D.pos(), D.neg()
    out = ChainComplex(ring)
    for oid, (M, h, q) in cx.objects.items():
        if M != arc:
            raise AssertionError("scanning did not end on the cut arc")
        i, j = h - nneg, q + npos - 2 * nneg
        if reduced:
            out.add_generator((oid, 0), i, j)
        else:
            out.add_generator((oid, 1), i, j + 1)
            out.add_generator((oid, -1), i, j - 1)
    dotted = frozenset({a})
    for src, targets in cx.out.items():
        for tgt, mor in targets.items():
            plain = mor.get(_EMPTY, 0)
            dot = mor.get(dotted, 0)
            if reduced:
                if plain:
                    out.add_to_differential((src, 0), (tgt, 0), plain)
                continue
            if plain:
                out.add_to_differential((src, 1), (tgt, 1), plain)
                out.add_to_differential((src, -1), (tgt, -1), plain)
            if dot:
                out.add_to_differential((src, 1), (tgt, -1), dot)
    return out
