"""Finite Coxeter systems, canonical words and full element enumeration.

Elements are enumerated once per system by a breadth-first walk of the
right Cayley graph.  Walking generators in their declared order makes the
first word that reaches an element its shortlex-least reduced word, which
is the canonical form used everywhere else.  Equality of elements is decided
through the faithful permutation action on the root system.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from .numberfield import NumberField, Scalar

INF = math.inf

Word = tuple  # tuple[int, ...] of generator indices


class CoxeterError(ValueError):
    """Invalid Coxeter data or an operation outside the supported range."""


class InfiniteGroupError(CoxeterError):
    pass


# -- classification -----------------------------------------------------------

_ORDERS_EXCEPTIONAL = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152,
                       "H3": 120, "H4": 14400}


def _components(matrix) -> list[list[int]]:
    n = len(matrix)
    seen, comps = set(), []
    for start in range(n):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and matrix[i][j] != 2:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _classify_component(matrix, nodes: list[int]) -> Optional[str]:
    """Cartan-Killing label of a connected diagram, or None if infinite."""
    k = len(nodes)
    if k == 1:
        return "A1"
    edges = {}
    for a, b in combinations(nodes, 2):
        m = matrix[a][b]
        if m == INF:
            return None
        if m >= 3:
            edges[(a, b)] = m
    if k == 2:
        m = next(iter(edges.values()))
        return {3: "A2", 4: "B2"}.get(m, f"I2({m})")
    if len(edges) != k - 1:
        return None  # a cycle in the diagram
    deg = {v: 0 for v in nodes}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    big = {e: m for e, m in edges.items() if m > 3}
    branch = [v for v in nodes if deg[v] >= 3]
    if any(m > 5 for m in big.values()) or len(big) > 1:
        return None
    if branch:
        if big or len(branch) > 1 or deg[branch[0]] > 3:
            return None
        c = branch[0]
        arms = []
        for nb in (v for e in edges for v in e if c in e and v != c):
            length, prev, cur = 1, c, nb
            while True:
                nxt = [v for e in edges for v in e if cur in e and v != cur and v != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return f"D{k}"
        if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
            return f"E{k}"
        return None
    # a path
    ends = [v for v in nodes if deg[v] == 1]
    if not big:
        return f"A{k}"
    (a, b), m = next(iter(big.items()))
    at_end = a in ends or b in ends
    if m == 4:
        if at_end:
            return f"B{k}"
        if k == 4:
            return "F4"
        return None
    if m == 5 and at_end and k in (3, 4):
        return f"H{k}"
    return None


def classify(matrix) -> Optional[list[str]]:
    """Labels of the irreducible components, or None if the group is infinite."""
    labels = []
    for comp in _components(matrix):
        label = _classify_component(matrix, comp)
        if label is None:
            return None
        labels.append(label)
    return labels


def order_of_type(label: str) -> int:
    if label in _ORDERS_EXCEPTIONAL:
        return _ORDERS_EXCEPTIONAL[label]
    if label.startswith("I2("):
        return 2 * int(label[3:-1])
    kind, n = label[0], int(label[1:])
    if kind == "A":
        return math.factorial(n + 1)
    if kind == "B":
        return 2 ** n * math.factorial(n)
    if kind == "D":
        return 2 ** (n - 1) * math.factorial(n)
    raise CoxeterError(f"unknown type {label}")


# -- standard matrices ----------------------------------------------------------

def _path_matrix(n: int, bonds: dict) -> list[list]:
    M = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        M[i][i + 1] = M[i + 1][i] = 3
    for (i, j), m in bonds.items():
        M[i][j] = M[j][i] = m
    return M


def standard_matrix(label: str) -> tuple[list[list], tuple[str, ...]]:
    """Coxeter matrix and generator names for a Cartan-Killing label."""
    label = label.strip().upper().replace("_", "")
    m = re.fullmatch(r"I2\((\d+)\)", label)
    if m:
        k = int(m.group(1))
        if k < 2:
            raise CoxeterError(f"I2(m) needs m >= 2, got {label}")
        return [[1, k], [k, 1]], ("s1", "s2")
    if label == "G2":
        return standard_matrix("I2(6)")
    m = re.fullmatch(r"([ABCDEFH])(\d+)", label)
    if not m:
        raise CoxeterError(f"unknown type label {label!r}")
    kind, n = m.group(1), int(m.group(2))
    names = tuple(f"s{i}" for i in range(1, n + 1))
    if kind == "A" and n >= 1:
        return _path_matrix(n, {}), names
    if kind in "BC" and n >= 2:
        return _path_matrix(n, {(0, 1): 4}), tuple(f"s{i}" for i in range(n))
    if kind == "D" and n >= 4:
        M = _path_matrix(n - 1, {})
        M = [row + [2] for row in M] + [[2] * n]
        M[n - 1][n - 1] = 1
        M[n - 3][n - 1] = M[n - 1][n - 3] = 3
        return M, names
    if kind == "E" and n in (6, 7, 8):
        # Bourbaki: 1-3-4-5-6(-7-8) with 2 attached to 4
        M = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for a, b in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]:
            if a <= n and b <= n:
                M[a - 1][b - 1] = M[b - 1][a - 1] = 3
        return M, names
    if kind == "F" and n == 4:
        return _path_matrix(4, {(1, 2): 4}), names
    if kind == "H" and n in (3, 4):
        return _path_matrix(n, {(0, 1): 5}), names
    raise CoxeterError(f"unknown type label {label!r}")


def _canonical_label(label: str) -> str:
    label = label.strip().upper().replace("_", "")
    if label == "G2":
        return "I2(6)"
    if label.startswith("C"):
        return "B" + label[1:]
    return label


# -- the system -----------------------------------------------------------------

@dataclass(frozen=True)
class CoxeterSystem:
    """A Coxeter system given by its matrix; ``INF`` marks m(s,t) = infinity."""

    matrix: tuple
    names: tuple
    type_label: Optional[str] = None

    def __post_init__(self):
        n = len(self.matrix)
        if n == 0:
            raise CoxeterError("rank must be positive")
        for i, row in enumerate(self.matrix):
            if len(row) != n:
                raise CoxeterError(f"row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            if self.matrix[i][i] != 1:
                raise CoxeterError(f"diagonal entry m[{i}][{i}] = {self.matrix[i][i]} must be 1")
            for j in range(n):
                if i == j:
                    continue
                a, b = self.matrix[i][j], self.matrix[j][i]
                if a != b:
                    raise CoxeterError(f"matrix not symmetric at ({i},{j}): {a} != {b}")
                if not (a == INF or (isinstance(a, int) and a >= 2)):
                    raise CoxeterError(f"entry m[{i}][{j}] = {a} must be an integer >= 2 or inf")
        if len(self.names) != n or len(set(self.names)) != n:
            raise CoxeterError("generator names must be distinct, one per row")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def generators(self) -> tuple:
        return self.names

    def m(self, s: int, t: int):
        return self.matrix[s][t]

    @cached_property
    def component_types(self) -> Optional[list[str]]:
        return classify(self.matrix)

    @property
    def is_finite(self) -> bool:
        return self.component_types is not None

    @property
    def is_irreducible(self) -> bool:
        return len(_components(self.matrix)) == 1

    @property
    def order(self) -> int:
        types = self.component_types
        if types is None:
            raise InfiniteGroupError(f"{self.label} is infinite")
        return math.prod(order_of_type(t) for t in types)

    @property
    def label(self) -> str:
        if self.type_label:
            return self.type_label
        types = self.component_types
        return "x".join(types) if types else "infinite"

    def commute(self, s: int, t: int) -> bool:
        return self.matrix[s][t] == 2

    # words ----------------------------------------------------------------
    def parse_word(self, text: Union[str, Sequence]) -> Word:
        """Parse ``"s1 s2 s1"``, ``"s1s2s1"`` or a sequence of names/indices."""
        if not isinstance(text, str):
            return tuple(self._letter(x) for x in text)
        text = text.strip()
        if text in ("", "e", "1"):
            return ()
        out = []
        pos = 0
        name_re = "|".join(re.escape(nm) for nm in sorted(self.names, key=len, reverse=True))
        pat = re.compile(rf"\s*({name_re})(?![0-9])\s*")
        while pos < len(text):
            mt = pat.match(text, pos)
            if not mt:
                raise CoxeterError(f"cannot parse generator at position {pos} of {text!r}")
            out.append(self.names.index(mt.group(1)))
            pos = mt.end()
        return tuple(out)

    def _letter(self, x) -> int:
        if isinstance(x, str):
            if x not in self.names:
                raise CoxeterError(f"unknown generator {x!r}")
            return self.names.index(x)
        if not 0 <= x < self.rank:
            raise CoxeterError(f"generator index {x} out of range")
        return int(x)

    def format_word(self, word: Word) -> str:
        return "".join(self.names[s] for s in word) if word else "e"

    # enumeration hooks -------------------------------------------------------
    @property
    def cayley(self) -> "CayleyData":
        if not self.is_finite:
            raise InfiniteGroupError(f"{self.label} is infinite; cannot enumerate")
        return _cayley(self.matrix)

    def element(self, word: Union[str, Sequence] = ()) -> "GroupElement":
        w = self.parse_word(word)
        return GroupElement(self, self.cayley.words[self.cayley.evaluate(w)])

    def element_at(self, index: int) -> "GroupElement":
        return GroupElement(self, self.cayley.words[index])

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, ())

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.label})"


def build_system(source: Union[str, Sequence[Sequence]], names: Optional[Sequence[str]] = None) -> CoxeterSystem:
    """Build a system from a type label (``"A3"``, ``"I2(5)"``) or a Coxeter matrix."""
    if isinstance(source, str):
        matrix, default_names = standard_matrix(source)
        label = _canonical_label(source)
    else:
        matrix = [[_entry(x) for x in row] for row in source]
        default_names = tuple(f"s{i}" for i in range(1, len(matrix) + 1))
        label = None
    return CoxeterSystem(tuple(tuple(r) for r in matrix), tuple(names or default_names), label)


def _entry(x):
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "oo", "infinity", "∞"):
            return INF
        x = int(x)
    if isinstance(x, float):
        if x == INF:
            return INF
        if x != int(x):
            raise CoxeterError(f"non-integer Coxeter matrix entry {x}")
        x = int(x)
    return x


def read_matrix_file(path) -> list[list]:
    """Plain text: first line n, then n rows of m(s,t) with ``inf`` for infinity."""
    with open(path) as fh:
        lines = [ln.split("#")[0].strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise CoxeterError(f"{path}: empty matrix file")
    try:
        n = int(lines[0])
    except ValueError:
        raise CoxeterError(f"{path}: line 1 must be the rank") from None
    if len(lines) != n + 1:
        raise CoxeterError(f"{path}: expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for k, ln in enumerate(lines[1:], start=2):
        entries = ln.replace(",", " ").split()
        if len(entries) != n:
            raise CoxeterError(f"{path}: line {k} has {len(entries)} entries, expected {n}")
        try:
            rows.append([_entry(e) for e in entries])
        except ValueError as exc:
            raise CoxeterError(f"{path}: line {k}: {exc}") from None
    return rows


# -- Tits representation and Cayley data ---------------------------------------

def tits_field(matrix) -> NumberField:
    return NumberField.for_bonds(m for row in matrix for m in row if m != INF)


def tits_form(matrix, F: NumberField) -> list[list[Scalar]]:
    """Bilinear form on simple roots scaled so that (a_i, a_i) = 2."""
    n = len(matrix)
    return [[F(2) if i == j else -F.two_cos(matrix[i][j]) for j in range(n)] for i in range(n)]


class CayleyData:
    """Enumerated elements of a finite system with multiplication tables.

    Elements are integers in shortlex order of their canonical words; 0 is
    the identity.  Roots ``0..N-1`` are positive, ``r + N`` is ``-root r``.
    """

    def __init__(self, matrix):
        self.matrix = matrix
        n = self.rank = len(matrix)
        F = self.field = tits_field(matrix)
        B = self.form = tits_form(matrix, F)

        # positive roots: closure of the simple roots under simple reflections
        roots: list[tuple] = []
        root_index: dict[tuple, int] = {}
        simple = [tuple(F.one if i == j else F.zero for i in range(n)) for j in range(n)]
        for v in simple:
            root_index[v] = len(roots)
            roots.append(v)
        queue = list(range(n))
        head = 0
        refl_img = [dict() for _ in range(n)]  # s -> {positive root r: positive image}
        while head < len(queue):
            r = queue[head]
            head += 1
            v = roots[r]
            for s in range(n):
                if r == s:
                    continue
                coef = sum((B[s][j] * v[j] for j in range(n)), F.zero)
                w = tuple(v[j] - coef if j == s else v[j] for j in range(n))
                idx = root_index.get(w)
                if idx is None:
                    idx = len(roots)
                    root_index[w] = idx
                    roots.append(w)
                    queue.append(idx)
                refl_img[s][r] = idx
        N = self.npos = len(roots)
        self.roots = roots + [tuple(-c for c in v) for v in roots]
        self.root_index = {v: i for i, v in enumerate(self.roots)}

        simple_perm = []
        for s in range(n):
            p = [0] * (2 * N)
            for r in range(N):
                img = s + N if r == s else refl_img[s][r]
                p[r] = img
                p[r + N] = (img + N) % (2 * N) if img < N else img - N
            simple_perm.append(tuple(p))
        self.simple_perm = simple_perm

        # BFS over elements in shortlex order
        ident = tuple(range(2 * N))
        words: list[tuple] = [()]
        perms: list[tuple] = [ident]
        key_of = {ident[:n]: 0}
        right: list[list[int]] = []
        head = 0
        while head < len(words):
            p = perms[head]
            row = []
            for s in range(n):
                sp = simple_perm[s]
                q = tuple(p[i] for i in sp)
                key = q[:n]
                idx = key_of.get(key)
                if idx is None:
                    idx = len(words)
                    key_of[key] = idx
                    words.append(words[head] + (s,))
                    perms.append(q)
                row.append(idx)
            right.append(row)
            head += 1
        self.words = words
        self.perms = perms
        self.right = right
        self.key_of = key_of
        self.size = len(words)
        self.length = [len(w) for w in words]
        self.index_of_word = {w: i for i, w in enumerate(words)}
        self.support = [_mask(w) for w in words]
        self.inverse = [self.evaluate(tuple(reversed(w))) for w in words]

        # reflection element of each positive root: s_{s(b)} = s s_b s
        refl = [None] * N
        for s in range(n):
            refl[s] = right[0][s]
        head = 0
        order = list(range(n))
        seen = set(order)
        while head < len(order):
            r = order[head]
            head += 1
            for s in range(n):
                if r == s:
                    continue
                img = refl_img[s][r]
                if img not in seen:
                    seen.add(img)
                    order.append(img)
                    refl[img] = self.mul(self.mul(right[0][s], refl[r]), right[0][s])
        self.reflection_of_root = refl
        self.root_of_reflection = {e: r for r, e in enumerate(refl)}

    # arithmetic --------------------------------------------------------------
    def evaluate(self, word: Iterable[int], start: int = 0) -> int:
        idx = start
        right = self.right
        for s in word:
            idx = right[idx][s]
        return idx

    def mul(self, a: int, b: int) -> int:
        return self.evaluate(self.words[b], a)

    def left_mul(self, s: int, a: int) -> int:
        return self.evaluate(self.words[a], self.right[0][s])

    def conjugate(self, w: int, x: int) -> int:
        """w x w^-1."""
        return self.mul(self.mul(w, x), self.inverse[w])

    def element_of_perm(self, perm: tuple) -> int:
        return self.key_of[perm[: self.rank]]

    def act_on_root(self, w: int, r: int) -> int:
        return self.perms[w][r]

    def positive(self, r: int) -> int:
        """Index of the positive root in {r, -r}."""
        return r if r < self.npos else r - self.npos

    def is_near(self, u: int, v: int, max_support: int) -> bool:
        x = self.mul(self.inverse[u], v)
        return bin(self.support[x]).count("1") <= max_support


def _mask(word) -> int:
    m = 0
    for s in word:
        m |= 1 << s
    return m


@lru_cache(maxsize=16)
def _cayley(matrix) -> CayleyData:
    return CayleyData(matrix)


# -- elements -------------------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    """An element of a finite system, identified by its canonical word."""

    system: CoxeterSystem = dc_field(repr=False)
    word: tuple

    @property
    def index(self) -> int:
        return self.system.cayley.index_of_word[self.word]

    @property
    def length(self) -> int:
        return len(self.word)

    def is_identity(self) -> bool:
        return not self.word

    def support(self) -> frozenset:
        return frozenset(self.word)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def inverse(self) -> "GroupElement":
        return inverse(self)

    def __str__(self) -> str:
        return self.system.format_word(self.word)

    def __repr__(self) -> str:
        return f"GroupElement({self})"


def reduce_word(system: CoxeterSystem, word: Union[str, Sequence]) -> GroupElement:
    """Canonical (shortlex-least reduced) form of a word."""
    w = system.parse_word(word)
    cd = system.cayley
    return GroupElement(system, cd.words[cd.evaluate(w)])


def _check_same(a: GroupElement, b: GroupElement):
    if a.system != b.system:
        raise CoxeterError(f"elements from different systems: {a.system.label} vs {b.system.label}")


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    _check_same(a, b)
    cd = a.system.cayley
    return GroupElement(a.system, cd.words[cd.evaluate(b.word, cd.evaluate(a.word))])


def inverse(a: GroupElement) -> GroupElement:
    return reduce_word(a.system, tuple(reversed(a.word)))


def is_identity(a: GroupElement) -> bool:
    return not a.word


def enumerate_elements(system: CoxeterSystem) -> tuple[list[GroupElement], list[list[int]]]:
    """All elements in shortlex order and the right Cayley adjacency ``w -> ws``."""
    cd = system.cayley
    return [GroupElement(system, w) for w in cd.words], [list(r) for r in cd.right]
