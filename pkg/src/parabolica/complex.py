"""The Coxeter complex as cosets wW_I, the graphs Gamma^q and the 2-complex X_Gamma.

Chambers are element indices of the system's Cayley data.  Two chambers u, v
share exactly ``n - |supp(u^-1 v)|`` vertices of the complex, so q-nearness
is a support-size test on the canonical word of ``u^-1 v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable

from .coxeter import CoxeterError, CoxeterSystem

DEFAULT_CELL_CAP = 10 ** 6


class CellCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"2-cell count exceeds the cap of {cap}")
        self.cap = cap


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class Face:
    """The coset rep * W_I, with rep its minimal-length element."""

    rep: int
    subset: frozenset


def subgroup_elements(system: CoxeterSystem, subset: Iterable[int]) -> list[int]:
    mask = 0
    for s in subset:
        mask |= 1 << s
    cd = system.cayley
    return [x for x in range(cd.size) if cd.support[x] & ~mask == 0]


def coset(system: CoxeterSystem, w: int, subset: Iterable[int]) -> list[int]:
    cd = system.cayley
    return sorted(cd.mul(w, x) for x in subgroup_elements(system, subset))


@dataclass
class FacePoset:
    system: CoxeterSystem
    faces: list
    members: dict = dc_field(repr=False)  # Face -> frozenset of chambers

    def permutahedron_leq(self, a: Face, b: Face) -> bool:
        """Coset inclusion aW_I within bW_J (face order of the W-permutahedron)."""
        return a.subset <= b.subset and a.rep in self.members[b]

    def complex_leq(self, a: Face, b: Face) -> bool:
        """Reverse inclusion (face order of the Coxeter complex)."""
        return self.permutahedron_leq(b, a)


def enumerate_faces(system: CoxeterSystem) -> FacePoset:
    cd = system.cayley
    n = system.rank
    faces, members = [], {}
    for r in range(n + 1):
        for I in combinations(range(n), r):
            sub = subgroup_elements(system, I)
            assigned = [False] * cd.size
            for w in range(cd.size):
                if assigned[w]:
                    continue
                cos = frozenset(cd.mul(w, x) for x in sub)
                for v in cos:
                    assigned[v] = True
                # w is the first unassigned index, hence the shortlex-least
                # and in particular the unique minimal-length member
                f = Face(w, frozenset(I))
                faces.append(f)
                members[f] = cos
    return FacePoset(system, faces, members)


def _max_support(system: CoxeterSystem, q: int) -> int:
    n = system.rank
    if not 0 <= q <= n - 1:
        raise CoxeterError(f"q = {q} out of range 0..{n - 1}")
    return n - q - 1


def q_near(system: CoxeterSystem, u: int, v: int, q: int) -> bool:
    """Chambers u, v share at least q+1 vertices of the Coxeter complex."""
    cd = system.cayley
    return cd.is_near(u, v, _max_support(system, q))


def shared_vertices(system: CoxeterSystem, u: int, v: int) -> int:
    """Count common vertices directly: vertex of type s of chamber w is the coset wW_{S-s}."""
    n = system.rank
    count = 0
    for s in range(n):
        rest = [t for t in range(n) if t != s]
        if set(coset(system, u, rest)) == set(coset(system, v, rest)):
            count += 1
    return count


@dataclass(frozen=True)
class QGraph:
    system: CoxeterSystem = dc_field(repr=False)
    q: int
    adjacency: tuple  # sorted neighbour tuples per chamber

    @property
    def num_vertices(self) -> int:
        return len(self.adjacency)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.adjacency) // 2

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.adjacency[u]
        from bisect import bisect_left

        i = bisect_left(nb, v)
        return i < len(nb) and nb[i] == v

    def edge_support(self, u: int, v: int) -> frozenset:
        cd = self.system.cayley
        x = cd.mul(cd.inverse[u], v)
        return frozenset(cd.words[x])

    def to_dot(self) -> str:
        sys_ = self.system
        cd = sys_.cayley
        lines = [f'graph "Gamma^{self.q}({sys_.label})" {{']
        for u in range(self.num_vertices):
            lines.append(f'  {u} [label="{sys_.format_word(cd.words[u])}"];')
        for u, v in self.edges:
            supp = ",".join(sys_.names[s] for s in sorted(self.edge_support(u, v)))
            lines.append(f'  {u} -- {v} [support="{supp}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_q_graph(system: CoxeterSystem, q: int) -> QGraph:
    cd = system.cayley
    k = _max_support(system, q)
    offsets = [x for x in range(1, cd.size) if _popcount(cd.support[x]) <= k]
    adj = []
    for u in range(cd.size):
        adj.append(tuple(sorted(cd.mul(u, x) for x in offsets)))
    return QGraph(system, q, tuple(adj))


@dataclass(frozen=True)
class TwoComplex:
    """Gamma^q with a 2-cell on every 3-cycle and every 4-cycle."""

    graph: QGraph
    cells: tuple  # vertex cycles, each starting at its least vertex

    @property
    def system(self) -> CoxeterSystem:
        return self.graph.system

    @property
    def triangles(self) -> list:
        return [c for c in self.cells if len(c) == 3]

    @property
    def squares(self) -> list:
        return [c for c in self.cells if len(c) == 4]


def build_two_complex(system: CoxeterSystem, q: int, cell_cap: int = DEFAULT_CELL_CAP) -> TwoComplex:
    G = build_q_graph(system, q)
    adj = G.adjacency
    nbsets = [set(nb) for nb in adj]
    cells = []
    for a in range(len(adj)):
        higher = [v for v in adj[a] if v > a]
        for b, c in combinations(higher, 2):
            if c in nbsets[b]:
                cells.append((a, b, c))
        # 4-cycles a-b-c-d with a least and b < d
        for b, d in combinations(higher, 2):
            for c in nbsets[b] & nbsets[d]:
                if c > a:
                    cells.append((a, b, c, d))
        if len(cells) > cell_cap:
            raise CellCapExceeded(cell_cap)
    cells.sort(key=lambda c: (len(c), c))
    return TwoComplex(G, tuple(cells))


def permutahedron_two_faces(system: CoxeterSystem) -> list[tuple[Face, tuple]]:
    """Rank-2 cosets with their boundary galleries w, ws, wst, ... of length 2m(s,t)."""
    cd = system.cayley
    n = system.rank
    out = []
    for s, t in combinations(range(n), 2):
        m = system.m(s, t)
        sub = subgroup_elements(system, (s, t))
        assigned = [False] * cd.size
        for w in range(cd.size):
            if assigned[w]:
                continue
            for x in sub:
                assigned[cd.mul(w, x)] = True
            cycle, cur = [w], w
            for i in range(2 * m - 1):
                cur = cd.right[cur][s if i % 2 == 0 else t]
                cycle.append(cur)
            out.append((Face(w, frozenset((s, t))), tuple(cycle)))
    return out
