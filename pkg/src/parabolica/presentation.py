"""Finite group presentations: Tietze simplification, abelianization and
Todd-Coxeter enumeration over the trivial subgroup.

Words are tuples of nonzero ints; ``+(i+1)`` is generator i and ``-(i+1)``
its inverse.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .smith import AbelianGroup, abelian_invariants

DEFAULT_COSET_CAP = 10 ** 6


def free_reduce(word: Sequence[int]) -> tuple:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> tuple:
    w = free_reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def invert(word: Sequence[int]) -> tuple:
    return tuple(-x for x in reversed(word))


def _canonical_relator(word: Sequence[int]) -> tuple:
    """Least rotation of the word or its inverse, for deduplication."""
    w = cyclic_reduce(word)
    if not w:
        return w
    cands = []
    for v in (w, invert(w)):
        cands.extend(v[i:] + v[:i] for i in range(len(v)))
    return min(cands)


@dataclass
class Presentation:
    generators: list
    relators: list = field(default_factory=list)

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def abelianization(self) -> AbelianGroup:
        rows = []
        for r in self.relators:
            row: dict = defaultdict(int)
            for x in r:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return abelian_invariants(rows, self.num_generators)

    def format_word(self, word: Sequence[int]) -> str:
        if not word:
            return "1"
        return "*".join(self.generators[abs(x) - 1] + ("^-1" if x < 0 else "") for x in word)

    def to_text(self) -> str:
        lines = [f"generators {len(self.generators)}"]
        lines += [f"  {g}" for g in self.generators]
        lines.append(f"relators {len(self.relators)}")
        lines += [f"  {self.format_word(r)}" for r in self.relators]
        return "\n".join(lines) + "\n"


def tietze_simplify(P: Presentation, max_expr: int = 2) -> Presentation:
    """Eliminate generators that occur once in a short relator.

    Only relators of length at most ``max_expr + 1`` are used, so substituted
    expressions never exceed ``max_expr`` letters.
    """
    ngen = P.num_generators
    rels = {}
    for r in P.relators:
        c = _canonical_relator(r)
        if c:
            rels[c] = None
    relators = list(rels)
    alive = [True] * ngen
    changed = True
    while changed:
        changed = False
        relators.sort(key=lambda r: (len(r), r))
        for r in relators:
            if len(r) > max_expr + 1:
                break
            counts: dict = defaultdict(int)
            for x in r:
                counts[abs(x)] += 1
            once = [g for g in sorted(counts) if counts[g] == 1]
            if not once:
                continue
            g = once[0]
            i = next(k for k, x in enumerate(r) if abs(x) == g)
            # r = a x^e b = 1  =>  x^e = a^-1 b^-1 ... rotate so x is first
            rot = r[i:] + r[:i]
            rest = rot[1:]
            expr = invert(rest) if rot[0] > 0 else rest
            new = {}
            for w in relators:
                if w is r:
                    continue
                if any(abs(x) == g for x in w):
                    sub = []
                    for x in w:
                        if x == g:
                            sub.extend(expr)
                        elif x == -g:
                            sub.extend(invert(expr))
                        else:
                            sub.append(x)
                    w = _canonical_relator(sub)
                if w:
                    new[w] = None
            relators = list(new)
            alive[g - 1] = False
            changed = True
            break
    keep = [i for i in range(ngen) if alive[i]]
    renum = {old + 1: new + 1 for new, old in enumerate(keep)}
    out = [tuple(renum[x] if x > 0 else -renum[-x] for x in r) for r in relators]
    out.sort(key=lambda r: (len(r), r))
    return Presentation([P.generators[i] for i in keep], out)


class CosetCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"coset enumeration exceeded the cap of {cap} cosets")
        self.cap = cap


def todd_coxeter(P: Presentation, cap: int = DEFAULT_COSET_CAP) -> int:
    """Order of the group (index of the trivial subgroup), by HLT enumeration."""
    ngen = P.num_generators
    if ngen == 0:
        return 1
    ncol = 2 * ngen
    rels = [[2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1 for x in r] for r in P.relators]
    table: list = [[None] * ncol]
    parent = [0]

    def find(c: int) -> int:
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def define(c: int, x: int) -> int:
        if len(table) >= cap:
            raise CosetCapExceeded(cap)
        d = len(table)
        table.append([None] * ncol)
        parent.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c
        return d

    def coincidence(a: int, b: int) -> None:
        queue: list = []

        def merge(k: int, l: int) -> None:
            k, l = find(k), find(l)
            if k == l:
                return
            if l < k:
                k, l = l, k
            parent[l] = k
            queue.append(l)

        merge(a, b)
        qi = 0
        while qi < len(queue):
            g = queue[qi]
            qi += 1
            for x in range(ncol):
                d = table[g][x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                mu, nu = find(g), find(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x])
                elif table[nu][x ^ 1] is not None:
                    merge(mu, table[nu][x ^ 1])
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan_and_fill(c: int, w: list) -> None:
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] is not None:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    a = 0
    while a < len(table):
        if parent[a] == a:
            for w in rels:
                scan_and_fill(a, w)
                if parent[a] != a:
                    break
            if parent[a] == a:
                for x in range(ncol):
                    if table[a][x] is None:
                        define(a, x)
        a += 1
    return sum(1 for c in range(len(table)) if parent[c] == c)
