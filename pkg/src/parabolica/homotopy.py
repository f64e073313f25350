"""Deciding discrete homotopy of loops and computing pi_1 / H_1 of X_Gamma.

Two (n-2)-loops are homotopic exactly when their words agree in W'.  The
rewriting that reaches the W' normal form is replayed as moves, giving a
homotopy grid as a certificate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .complex import TwoComplex
from .coxeter import INF, CoxeterError, CoxeterSystem, Word
from .loops import (GridBuilder, HomotopyGrid, LoopError, Move, MoveScript, QLoop,
                    apply_move, destutter, destutter_script, loop_of_word, replay,
                    script_from_rewrites, verify_grid, word_of_loop)
from .presentation import (DEFAULT_COSET_CAP, CosetCapExceeded, Presentation, tietze_simplify,
                           todd_coxeter)
from .relaxed import RelaxedSystem, relax, rewrite_to_normal_form
from .smith import AbelianGroup


@dataclass(frozen=True)
class Certificate:
    script: MoveScript
    grid: HomotopyGrid


@dataclass(frozen=True)
class HomotopyVerdict:
    equivalent: bool
    normal_forms: tuple  # W' normal forms of the two loop words
    certificate: Optional[Certificate] = None

    @property
    def obstruction(self) -> Optional[tuple]:
        return None if self.equivalent else self.normal_forms


def _script_to_gallery(loop: QLoop, rsys: RelaxedSystem) -> tuple[MoveScript, Word]:
    """Moves taking ``loop`` to g(normal form of f(loop))."""
    pre = destutter_script(loop)
    word = word_of_loop(loop)
    nf, rewrites = rewrite_to_normal_form(rsys, word)
    return pre + script_from_rewrites(rewrites), nf


def decide_homotopic(loop1: QLoop, loop2: QLoop, rsys: Optional[RelaxedSystem] = None,
                     certify: bool = True) -> HomotopyVerdict:
    sys_ = loop1.system
    n = sys_.rank
    if loop2.system != sys_:
        raise LoopError("loops live in different systems")
    if loop1.q != n - 2 or loop2.q != n - 2:
        raise LoopError(f"homotopy is decided at level {n - 2} only")
    if loop1.base != loop2.base:
        raise LoopError("loops have different base chambers")
    if rsys is None:
        rsys = relax(sys_)
    s1, nf1 = _script_to_gallery(loop1, rsys)
    s2, nf2 = _script_to_gallery(loop2, rsys)
    if nf1 != nf2:
        return HomotopyVerdict(False, (nf1, nf2))
    cert = None
    if certify:
        script = s1 + s2.inverse()
        end, grid = replay(loop1, script)
        if end.chambers != loop2.chambers:
            raise AssertionError("certificate replay did not end at the second loop")
        cert = Certificate(script, grid)
    return HomotopyVerdict(True, (nf1, nf2), cert)


def check_certificate(loop1: QLoop, loop2: QLoop, cert: Certificate) -> bool:
    """Replay the script, then check the grid and its boundary rows."""
    end, grid = replay(loop1, cert.script)
    if end.chambers != loop2.chambers or grid.rows != cert.grid.rows:
        return False
    rows = cert.grid.rows
    return (bool(verify_grid(cert.grid, loop1.base))
            and destutter(rows[0]) == destutter(loop1.chambers)
            and destutter(rows[-1]) == destutter(loop2.chambers))


# -- pi_1 and H_1 of X_Gamma --------------------------------------------------------------

@dataclass(frozen=True)
class SpanningData:
    parent: tuple      # BFS parent of each vertex (None at the root)
    generators: tuple  # oriented non-tree edges (u, v), u < v
    presentation: Presentation


def _bfs_tree(X: TwoComplex, root: int) -> list:
    adj = X.graph.adjacency
    parent: list = [None] * len(adj)
    seen = [False] * len(adj)
    seen[root] = True
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                queue.append(v)
    if not all(seen):
        raise CoxeterError("the graph is disconnected")
    return parent


def pi1_data(X: TwoComplex, base: int = 0) -> SpanningData:
    parent = _bfs_tree(X, base)
    tree = {(min(v, p), max(v, p)) for v, p in enumerate(parent) if p is not None}
    gens = [e for e in X.graph.edges if e not in tree]
    index = {e: i for i, e in enumerate(gens)}
    names = [f"e{u}_{v}" for u, v in gens]
    relators = []
    for cell in X.cells:
        word = []
        for a, b in zip(cell, cell[1:] + cell[:1]):
            if a < b:
                k = index.get((a, b))
                if k is not None:
                    word.append(k + 1)
            else:
                k = index.get((b, a))
                if k is not None:
                    word.append(-(k + 1))
        relators.append(tuple(word))
    return SpanningData(tuple(parent), tuple(gens), Presentation(names, relators))


def pi1_presentation(X: TwoComplex, base: int = 0) -> Presentation:
    return pi1_data(X, base).presentation


def h1_of_complex(X: TwoComplex) -> AbelianGroup:
    P = pi1_presentation(X)
    return P.abelianization()


# -- level reduction and contraction -------------------------------------------------------

def _check_k(system: CoxeterSystem, k: int) -> int:
    n = system.rank
    if not 3 < k <= n + 1:
        raise CoxeterError(f"k = {k} must satisfy 3 < k <= n + 1 = {n + 1}")
    return n - k + 1


def level_project(loop: QLoop, k: int) -> QLoop:
    q = _check_k(loop.system, k)
    return QLoop(loop.system, q, loop.chambers)


def normalize_to_gallery(loop: QLoop) -> tuple[QLoop, HomotopyGrid]:
    """Refine each step of a q-loop into a gallery inside the coset both ends share.

    Returns the (n-2)-loop (seen at level q) and a two-row q-homotopy grid
    from the input to it.
    """
    sys_ = loop.system
    cd = sys_.cayley
    top, bottom = [loop.chambers[0]], [loop.chambers[0]]
    for i, (u, v) in enumerate(zip(loop.chambers, loop.chambers[1:])):
        if u == v:
            top.append(v)
            bottom.append(v)
            continue
        x = cd.mul(cd.inverse[u], v)
        if not cd.is_near(u, v, sys_.rank - loop.q - 1):
            raise LoopError(f"chambers at positions {i} and {i + 1} share no face of the required size")
        path = [u]
        for s in cd.words[x]:
            path.append(cd.right[path[-1]][s])
        top.extend([u] * (len(path) - 2) + [v])
        bottom.extend(path[1:])
    grid = HomotopyGrid(sys_, loop.q, (tuple(top), tuple(bottom)))
    return QLoop(sys_, loop.q, tuple(bottom)), grid


def contract_relator_grid(system: CoxeterSystem, k: int, u: Sequence[int], pair: tuple[int, int]) -> HomotopyGrid:
    """Grid at level n-k+1 contracting g(u (st)^m u^-1) to the trivial loop."""
    q = _check_k(system, k)
    s, t = pair
    m = system.m(s, t)
    if m == INF:
        raise CoxeterError(f"m({system.names[s]},{system.names[t]}) is infinite")
    cd = system.cayley
    u = list(u)
    prefix = loop_of_word(system, u).chambers          # base .. u
    c0 = prefix[-1]
    cycle = [c0]
    for j in range(2 * m):
        cycle.append(cd.right[cycle[-1]][s if j % 2 == 0 else t])
    suffix = prefix[::-1][1:]                          # back to base
    rows = []
    middle = list(cycle)
    rows.append(tuple(prefix[:-1]) + tuple(middle) + tuple(suffix))
    for i in range(1, 2 * m):
        middle[i] = c0
        rows.append(tuple(prefix[:-1]) + tuple(middle) + tuple(suffix))
    builder = GridBuilder(system, q, rows[0])
    builder.append(rows)
    # the last row is g(u) g(u^-1) stretched; cancel it with T2 removals
    cur = QLoop(system, q, rows[-1])
    script = destutter_script(cur)
    L = len(destutter(cur.chambers))
    moves = list(script.moves)
    mid = (L - 1) // 2
    for j in range(mid):
        moves.append(Move("T2", mid - j, "remove", (u[-1 - j],)))
    for mv in moves:
        cur, frag = apply_move(cur, mv)
        builder.append(frag)
    return builder.grid()


# -- triviality probe ----------------------------------------------------------------------

TRIVIAL = "trivial"
NONTRIVIAL = "nontrivial"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ProbeResult:
    status: str
    h1: Optional[AbelianGroup] = None
    order: Optional[int] = None
    simplified: Optional[tuple] = None  # (generators, relators) after Tietze moves
    detail: str = ""


def pi1_triviality_probe(P: Presentation, coset_cap: int = DEFAULT_COSET_CAP) -> ProbeResult:
    Q = tietze_simplify(P)
    shape = (Q.num_generators, len(Q.relators))
    h1 = Q.abelianization()
    if not h1.is_trivial():
        return ProbeResult(NONTRIVIAL, h1, None, shape, f"H1 = {h1}")
    try:
        order = todd_coxeter(Q, coset_cap)
    except CosetCapExceeded as e:
        return ProbeResult(INCONCLUSIVE, h1, None, shape, str(e))
    if order == 1:
        how = ("Tietze moves eliminate every generator" if not Q.num_generators
               else "coset enumeration closed with one coset")
        return ProbeResult(TRIVIAL, h1, 1, shape, how)
    return ProbeResult(NONTRIVIAL, h1, order, shape, f"finite perfect group of order {order}")
