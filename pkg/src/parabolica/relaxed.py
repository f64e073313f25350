"""The relaxed group W' and the surjection phi': W' -> W.

In the default mode every label other than 2 becomes infinity, so W' is
right-angled and its word problem is solved exactly by cancelling letters
that can be commuted together.  The alternative mode keeps the labels of
pairs outside a chosen conjugation-closed set of rank-2 parabolics; its
normal forms come from a bounded search over braid-equivalent words.
"""

from __future__ import annotations

import random
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .coxeter import INF, CoxeterError, CoxeterSystem, Word
from .loops import LoopError, QChain, QLoop, loop_of_word, word_of_loop
from .smith import AbelianGroup, abelian_invariants

THEOREM = "theorem"
CONJECTURE = "conjecture"
DEFAULT_SEARCH_BOUND = 10 ** 5


class InconclusiveError(RuntimeError):
    pass


class ConjugationClosureError(ValueError):
    def __init__(self, conjugate, by: int):
        super().__init__(f"collection is not closed under conjugation: missing {conjugate!r} (conjugate by generator {by})")
        self.conjugate = conjugate
        self.by = by


@dataclass(frozen=True)
class RelaxedSystem:
    base: CoxeterSystem
    matrix: tuple
    mode: str = THEOREM
    search_bound: int = DEFAULT_SEARCH_BOUND

    @property
    def rank(self) -> int:
        return self.base.rank

    def m(self, s: int, t: int):
        return self.matrix[s][t]

    def commute(self, s: int, t: int) -> bool:
        return self.matrix[s][t] == 2

    @property
    def is_right_angled(self) -> bool:
        n = self.rank
        return all(self.matrix[s][t] in (2, INF) for s in range(n) for t in range(n) if s != t)


@dataclass(frozen=True)
class RelaxedElement:
    normal_form: Word

    @property
    def is_identity(self) -> bool:
        return not self.normal_form


@dataclass(frozen=True)
class KernelWitness:
    word: Word
    image: int  # element index in W
    in_kernel: bool


def relax(system: CoxeterSystem, mode: str = THEOREM, collection: Optional[Iterable] = None,
          search_bound: int = DEFAULT_SEARCH_BOUND) -> RelaxedSystem:
    n = system.rank
    M = [list(row) for row in system.matrix]
    if mode == THEOREM:
        for s in range(n):
            for t in range(n):
                if s != t and M[s][t] != 2:
                    M[s][t] = INF
    elif mode == CONJECTURE:
        if collection is None:
            raise ValueError("the conjecture mode needs a collection of rank-2 parabolic subgroups")
        members = set(collection)
        keys = {G.reflections for G in members}
        for G in members:
            if G.rank != 2:
                raise ValueError(f"{G!r} is not of rank 2")
            for r in range(n):
                conj = G.conjugate(r)
                if conj.reflections not in keys:
                    raise ConjugationClosureError(conj, r)
        from .arrangements import parabolic_from_subset

        for s in range(n):
            for t in range(s + 1, n):
                if parabolic_from_subset(system, (s, t)).reflections in keys:
                    M[s][t] = M[t][s] = INF
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return RelaxedSystem(system, tuple(tuple(r) for r in M), mode, search_bound)


# -- right-angled normal forms --------------------------------------------------------

def _reduce_trace(rsys: RelaxedSystem, word: Sequence[int]) -> tuple[list, list]:
    """Reduce a word in a right-angled W', recording every swap and cancellation.

    Returns (reduced word, rewrites) where rewrites index the full current word.
    """
    comm = rsys.commute
    R: list[int] = []
    rewrites = []
    for x in word:
        p = None
        for k in range(len(R) - 1, -1, -1):
            if R[k] == x:
                p = k
                break
            if not comm(R[k], x):
                break
        if p is None:
            R.append(x)
            continue
        # move the new letter left until it meets R[p], then cancel
        for k in range(len(R) - 1, p, -1):
            rewrites.append(("swap", k, R[k], x))
        rewrites.append(("cancel", p, x))
        del R[p]
    # lexicographically least linearization
    i = 0
    while i < len(R):
        best = None
        for k in range(i, len(R)):
            if best is None or R[k] < R[best]:
                # R[k] may move to position i if it commutes with everything before it
                if all(comm(R[j], R[k]) for j in range(i, k)):
                    best = k
        for k in range(best, i, -1):
            rewrites.append(("swap", k - 1, R[k - 1], R[k]))
            R[k - 1], R[k] = R[k], R[k - 1]
        i += 1
    return R, rewrites


def _braid_neighbours(rsys: RelaxedSystem, w: tuple):
    n = len(w)
    for i in range(n - 1):
        s, t = w[i], w[i + 1]
        if s == t:
            continue
        m = rsys.matrix[s][t]
        if m == INF or i + m > n:
            continue
        if all(w[i + j] == (s if j % 2 == 0 else t) for j in range(m)):
            alt = tuple(t if j % 2 == 0 else s for j in range(m))
            yield w[:i] + alt + w[i + m:]


def _tits_normal_form(rsys: RelaxedSystem, word: Sequence[int]) -> tuple:
    """Shortlex-least reduced word via Tits' solution, with a bound on class size."""
    w = tuple(word)
    while True:
        seen = {w}
        queue = deque([w])
        shorter = None
        while queue and shorter is None:
            v = queue.popleft()
            for i in range(len(v) - 1):
                if v[i] == v[i + 1]:
                    shorter = v[:i] + v[i + 2:]
                    break
            if shorter is not None:
                break
            for u in _braid_neighbours(rsys, v):
                if u not in seen:
                    seen.add(u)
                    if len(seen) > rsys.search_bound:
                        raise InconclusiveError(
                            f"braid class exceeds the search bound of {rsys.search_bound} words")
                    queue.append(u)
        if shorter is None:
            return min(seen)
        w = shorter


def normal_form(rsys: RelaxedSystem, word: Sequence[int]) -> RelaxedElement:
    if rsys.is_right_angled:
        R, _ = _reduce_trace(rsys, word)
        return RelaxedElement(tuple(R))
    return RelaxedElement(_tits_normal_form(rsys, word))


def rewrite_to_normal_form(rsys: RelaxedSystem, word: Sequence[int]) -> tuple[Word, list]:
    """Normal form plus the swaps and cancellations reaching it (right-angled only)."""
    if not rsys.is_right_angled:
        raise ValueError("rewrite traces exist only for right-angled relaxations")
    R, rewrites = _reduce_trace(rsys, word)
    return tuple(R), rewrites


def equal_in_relaxed(rsys: RelaxedSystem, u: Sequence[int], v: Sequence[int]) -> bool:
    return normal_form(rsys, u) == normal_form(rsys, v)


def kernel_membership(rsys: RelaxedSystem, word: Sequence[int]) -> KernelWitness:
    image = rsys.base.cayley.evaluate(word)
    return KernelWitness(tuple(word), image, image == 0)


# -- the maps F and G -------------------------------------------------------------------

def F(loop: QChain) -> Word:
    """Kernel word of an (n-2)-loop."""
    if not loop.is_loop:
        raise LoopError("F is defined on loops only")
    return word_of_loop(loop)


def G(rsys: RelaxedSystem, word: Sequence[int], base: int = 0) -> QLoop:
    """Gallery loop of a kernel word."""
    chain = loop_of_word(rsys.base, word, base)
    if not isinstance(chain, QLoop):
        raise LoopError("word is not in the kernel: its gallery does not close up")
    return chain


def relator_words(system: CoxeterSystem, min_m: int = 3) -> list[tuple]:
    """(st)^m(s,t) for every pair with finite m(s,t) >= min_m."""
    out = []
    n = system.rank
    for s in range(n):
        for t in range(s + 1, n):
            m = system.m(s, t)
            if m != INF and m >= min_m:
                out.append((s, t) * m)
    return out


def random_kernel_word(system: CoxeterSystem, rng: random.Random, max_len: int = 30) -> Word:
    """Product of conjugated relators u r u^-1, free-reduced, within the length bound."""
    rels = relator_words(system, 2)
    n = system.rank
    word: list[int] = []
    for _ in range(50):
        r = rng.choice(rels)
        if rng.random() < 0.5:
            r = r[::-1]
        u = [rng.randrange(n) for _ in range(rng.randrange(0, 4))]
        piece = u + list(r) + u[::-1]
        cand = word + piece
        red: list[int] = []
        for x in cand:
            if red and red[-1] == x:
                red.pop()
            else:
                red.append(x)
        if len(red) > max_len:
            break
        word = red
    return tuple(word)


# -- Reidemeister-Schreier ------------------------------------------------------------

@dataclass(frozen=True)
class SchreierData:
    parent: tuple          # (coset, generator) leading to each coset in the BFS tree, None at 0
    generators: tuple      # nontrivial Schreier generators (coset, s)
    relators: tuple        # rewritten relators as {column: exponent} rows
    group: AbelianGroup


def schreier_tree(system: CoxeterSystem) -> list:
    """BFS spanning tree of the Cayley graph with index-ordered neighbours."""
    cd = system.cayley
    parent: list = [None] * cd.size
    seen = [False] * cd.size
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v, s in sorted((cd.right[u][s], s) for s in range(system.rank)):
            if not seen[v]:
                seen[v] = True
                parent[v] = (u, s)
                queue.append(v)
    return parent


def rs_abelianization(rsys: RelaxedSystem) -> SchreierData:
    """Abelianized kernel of phi' from the Reidemeister-Schreier presentation."""
    system = rsys.base
    if not system.is_finite:
        raise CoxeterError("Reidemeister-Schreier needs a finite base group")
    cd = system.cayley
    n = system.rank
    parent = schreier_tree(system)
    tree = {p for p in parent if p is not None}
    gens = [(t, s) for t in range(cd.size) for s in range(n) if (t, s) not in tree]
    col = {g: i for i, g in enumerate(gens)}
    defining = [(s, s) for s in range(n)]
    for s in range(n):
        for t in range(s + 1, n):
            m = rsys.matrix[s][t]
            if m != INF:
                defining.append((s, t) * m)
    rows = []
    for c in range(cd.size):
        for r in defining:
            row: dict = defaultdict(int)
            cur = c
            for x in r:
                k = col.get((cur, x))
                if k is not None:
                    row[k] += 1
                cur = cd.right[cur][x]
            rows.append(dict(row))
    group = abelian_invariants(rows, len(gens))
    return SchreierData(tuple(parent), tuple(gens), tuple(rows), group)
