"""Parabolic subgroups, k-parabolic arrangements and intersection lattices."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Optional, Sequence

from .coxeter import CoxeterError, CoxeterSystem, GroupElement, classify
from .geometry import (
    Subspace,
    act,
    coordinate_realization,
    fix_of_roots,
    galois_group,
    generated_subgroup,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ParabolicSubgroup:
    """A conjugate of a standard parabolic, keyed by its set of reflections."""

    system: CoxeterSystem = dc_field(repr=False, compare=False)
    reflections: frozenset  # positive root indices
    simple_roots: tuple = dc_field(compare=False)
    diagram: tuple = dc_field(compare=False)
    type_label: str = dc_field(compare=False)
    witness: tuple = dc_field(compare=False, default=())  # (w index, I)

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def irreducible(self) -> bool:
        return len(self.type_label.split("x")) == 1 and self.rank > 0

    def reflection_elements(self) -> list[GroupElement]:
        cd = self.system.cayley
        return [self.system.element_at(cd.reflection_of_root[r]) for r in sorted(self.reflections)]

    def elements(self) -> frozenset:
        cd = self.system.cayley
        return generated_subgroup(cd, [cd.reflection_of_root[r] for r in self.simple_roots])

    def fix(self) -> Subspace:
        if not self.simple_roots:
            return fix_of_roots(self.system, [])
        return fix_of_roots(self.system, self.simple_roots)

    def key(self) -> tuple:
        return tuple(sorted(self.reflections))

    def conjugate(self, s: int) -> "ParabolicSubgroup":
        """The subgroup s P s for a simple generator s."""
        cd = self.system.cayley
        perm = cd.perms[cd.right[0][s]]
        refl = frozenset(cd.positive(perm[r]) for r in self.reflections)
        w, I = self.witness if self.witness else (0, ())
        return _describe(self.system, refl, (cd.left_mul(s, w), I))


def _root_support(vec) -> frozenset:
    return frozenset(i for i, x in enumerate(vec) if x)


def _reflection_order(cd, a: int, b: int) -> int:
    x = cd.mul(a, b)
    k, y = 1, x
    while y != 0:
        y = cd.mul(y, x)
        k += 1
    return k


def _describe(system: CoxeterSystem, reflections: frozenset, witness: tuple) -> ParabolicSubgroup:
    cd = system.cayley
    refl = cd.reflection_of_root
    simple = []
    for b in sorted(reflections):
        perm = cd.perms[refl[b]]
        # b is simple for the positive system iff s_b keeps every other member positive
        if all(perm[r] < cd.npos for r in reflections if r != b):
            simple.append(b)
    diagram = tuple(tuple(1 if i == j else _reflection_order(cd, refl[a], refl[c])
                          for j, c in enumerate(simple)) for i, a in enumerate(simple))
    types = classify(diagram) if simple else []
    label = "x".join(types) if types else "trivial"
    return ParabolicSubgroup(system, reflections, tuple(simple), diagram, label, witness)


def parabolic_from_subset(system: CoxeterSystem, I: Sequence[int], w: int = 0) -> ParabolicSubgroup:
    cd = system.cayley
    I = tuple(sorted(I))
    Iset = frozenset(I)
    local = [r for r in range(cd.npos) if _root_support(cd.roots[r]) <= Iset]
    refl = frozenset(cd.positive(cd.perms[w][r]) for r in local)
    return _describe(system, refl, (w, I))


def enumerate_parabolics(system: CoxeterSystem, rank: int, irreducible_only: bool = False) -> list[ParabolicSubgroup]:
    """All parabolic subgroups <w I w^-1> with |I| = rank, deduplicated by reflections."""
    n = system.rank
    if not 0 <= rank <= n:
        raise CoxeterError(f"rank {rank} out of range 0..{n}")
    cd = system.cayley
    found: dict[frozenset, tuple] = {}
    for I in combinations(range(n), rank):
        Iset = frozenset(I)
        if irreducible_only and rank > 0:
            sub = [[system.matrix[a][b] for b in I] for a in I]
            types = classify(sub)
            if types is None or len(types) != 1:
                continue
        local = [r for r in range(cd.npos) if _root_support(cd.roots[r]) <= Iset]
        for w in range(cd.size):
            perm = cd.perms[w]
            key = frozenset(cd.positive(perm[r]) for r in local)
            if key not in found:
                found[key] = (w, I)
    out = [_describe(system, key, wit) for key, wit in found.items()]
    out.sort(key=ParabolicSubgroup.key)
    if irreducible_only:
        out = [p for p in out if p.irreducible]
    return out


# -- arrangements ----------------------------------------------------------------------

@dataclass(frozen=True)
class Arrangement:
    """A set of pairwise non-nested subspaces, with an optional origin label per member."""

    system: CoxeterSystem = dc_field(repr=False, compare=False)
    subspaces: tuple
    label: str = dc_field(compare=False, default="custom")
    origins: tuple = dc_field(compare=False, default=())

    def __post_init__(self):
        F = self.system.cayley.field
        if len(set(self.subspaces)) != len(self.subspaces):
            raise ValueError("arrangement members must be distinct")
        for a, b in combinations(self.subspaces, 2):
            if a.contains(b, F) or b.contains(a, F):
                raise ValueError(f"proper containment between {a} and {b}")

    @property
    def ambient(self) -> int:
        return self.system.rank

    def __len__(self) -> int:
        return len(self.subspaces)

    def __iter__(self):
        return iter(self.subspaces)

    def __contains__(self, X) -> bool:
        return X in set(self.subspaces)

    def to_json(self) -> dict:
        F = self.system.cayley.field
        members = []
        for i, X in enumerate(self.subspaces):
            members.append({
                "basis": X.serialize(),
                "codimension": X.codim,
                "type": self.origins[i] if self.origins else None,
            })
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "arrangement",
            "system": self.system.label,
            "label": self.label,
            "ambient_dimension": self.ambient,
            "coordinates": "simple-root basis",
            "field": F.describe(),
            "subspaces": members,
        }


def _make(system: CoxeterSystem, subs: dict, label: str) -> Arrangement:
    ordered = sorted(subs, key=Subspace.sort_key)
    return Arrangement(system, tuple(ordered), label, tuple(subs[X] for X in ordered))


def build_k_parabolic(system: CoxeterSystem, k: int) -> Arrangement:
    """{Fix(G)} over irreducible parabolic subgroups G of rank k-1."""
    n = system.rank
    if not 2 <= k <= n + 1:
        raise CoxeterError(f"k = {k} out of range 2..{n + 1}")
    if k == n + 1 and not system.is_irreducible:
        raise CoxeterError(f"k = n+1 requires an irreducible system, got {system.label}")
    subs: dict = {}
    for G in enumerate_parabolics(system, k - 1, irreducible_only=True):
        subs.setdefault(G.fix(), G.type_label)
    return _make(system, subs, f"W_{{{n},{k}}}({system.label})")


def _equal_chain(i: Sequence[int], N: int, F, signs=None) -> list[tuple]:
    eqs = []
    for a in range(len(i) - 1):
        row = [F.zero] * N
        row[i[a]] = F.one if signs is None else F(signs[a])
        row[i[a + 1]] = -F.one if signs is None else -F(signs[a + 1])
        eqs.append(tuple(row))
    return eqs


def build_reference_arrangement(system: CoxeterSystem, family: str, k: int, h: Optional[int] = None) -> Arrangement:
    """Coordinate arrangements: ``k-equal`` (type A), ``D`` (D_{n,k}) and ``B`` (B_{n,k,h}).

    Equations are written in standard coordinates of the system's classical
    realization and pulled back to the simple-root basis.
    """
    real = coordinate_realization(system)
    if real is None:
        raise CoxeterError(f"{system.label} has no classical coordinate realization")
    F, N = real.field, real.N
    fam = family.lower()
    subs: dict = {}
    if fam in ("k-equal", "kequal", "a"):
        if system.type_label[0] != "A":
            raise CoxeterError("the k-equal arrangement lives in a type A realization")
        if not 2 <= k <= N:
            raise CoxeterError(f"k = {k} out of range 2..{N}")
        for idx in combinations(range(N), k):
            subs.setdefault(real.subspace(_equal_chain(idx, N, F)), "k-equal")
        return _make(system, subs, f"A_{{{N - 1},{k}}}")
    if fam in ("d", "b"):
        if system.type_label[0] not in "BD":
            raise CoxeterError(f"family {family} needs a type B or D realization")
        if not 2 <= k <= N:
            raise CoxeterError(f"k = {k} out of range 2..{N}")
        for idx in combinations(range(N), k):
            for tail in product((1, -1), repeat=k - 1):
                signs = (1,) + tail
                subs.setdefault(real.subspace(_equal_chain(idx, N, F, signs)), "D")
        if fam == "d":
            return _make(system, subs, f"D_{{{N},{k}}}")
        if h is None or not 1 <= h < k:
            raise CoxeterError(f"family B needs 1 <= h < k, got h={h}, k={k}")
        for idx in combinations(range(N), h):
            eqs = [tuple(F.one if c == i else F.zero for c in range(N)) for i in idx]
            subs.setdefault(real.subspace(eqs), "zero")
        return _make(system, subs, f"B_{{{N},{k},{h}}}")
    raise CoxeterError(f"unknown family {family!r}")


@dataclass(frozen=True)
class Comparison:
    equal: bool
    witness: Optional[Subspace] = None
    side: Optional[str] = None  # which arrangement contains the witness


def compare_arrangements(A: Arrangement, B: Arrangement) -> Comparison:
    if A.ambient != B.ambient:
        raise ValueError(f"ambient dimensions differ: {A.ambient} vs {B.ambient}")
    left = set(A.subspaces) - set(B.subspaces)
    right = set(B.subspaces) - set(A.subspaces)
    if not left and not right:
        return Comparison(True)
    if left:
        return Comparison(False, min(left, key=Subspace.sort_key), "left")
    return Comparison(False, min(right, key=Subspace.sort_key), "right")


def orbit_invariance_check(system: CoxeterSystem, A: Arrangement, sample: int = 200, seed: int = 0):
    """Returns (True, None) or (False, (w, X)) for a member X with w.X outside A."""
    cd = system.cayley
    members = set(A.subspaces)
    ws = range(cd.size)
    if cd.size > sample:
        rng = random.Random(seed)
        ws = sorted(rng.sample(range(cd.size), sample))
    for w in ws:
        for X in A.subspaces:
            if act(system, w, X) not in members:
                return False, (system.element_at(w), X)
    return True, None


# -- intersection lattice ------------------------------------------------------------

@dataclass(frozen=True)
class IntersectionLattice:
    """Intersections of an arrangement, ordered by reverse inclusion; index 0 is the ambient space."""

    system: CoxeterSystem = dc_field(repr=False, compare=False)
    elements: tuple
    covers: tuple  # (i, j): elements[j] is covered-above elements[i], i.e. j strictly inside i

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        """Order relation: X_i <= X_j iff X_j is contained in X_i."""
        return self.elements[i].contains(self.elements[j], self.system.cayley.field)

    @property
    def atoms(self) -> list[int]:
        return [j for (i, j) in self.covers if i == 0]

    @property
    def top(self) -> int:
        return max(range(len(self.elements)), key=lambda i: self.elements[i].codim)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "intersection-lattice",
            "system": self.system.label,
            "field": self.system.cayley.field.describe(),
            "elements": [{"basis": X.serialize(), "codimension": X.codim} for X in self.elements],
            "covers": [list(c) for c in self.covers],
        }


def intersection_lattice(A: Arrangement) -> IntersectionLattice:
    if not A.subspaces:
        raise ValueError("empty arrangement")
    F = A.system.cayley.field
    elems = set(A.subspaces)
    frontier = list(elems)
    while frontier:
        new = []
        for X in frontier:
            for Y in list(elems):
                Z = X.intersect(Y, F)
                if Z not in elems:
                    elems.add(Z)
                    new.append(Z)
        frontier = new
    ordered = [Subspace.whole(A.ambient, F)] + sorted(elems - {Subspace.whole(A.ambient, F)},
                                                      key=Subspace.sort_key)
    m = len(ordered)
    below = [{j for j in range(m) if j != i and ordered[i].contains(ordered[j], F)} for i in range(m)]
    covers = []
    for i in range(m):
        for j in sorted(below[i]):
            if not any(j in below[k] for k in below[i] if k != j):
                covers.append((i, j))
    return IntersectionLattice(A.system, tuple(ordered), tuple(covers))


def coxeter_arrangement(system: CoxeterSystem) -> Arrangement:
    """The reflection arrangement H(W): one hyperplane per positive root."""
    cd = system.cayley
    subs = {}
    for r in range(cd.npos):
        subs.setdefault(fix_of_roots(system, [r]), "A1")
    return _make(system, subs, f"H({system.label})")


def galois_round_trips(system: CoxeterSystem):
    """Failures of Fix(Gal(X)) = X on L(H(W)) and Gal(Fix(G)) = G on all parabolics."""
    from .geometry import fix_of_roots as _fix

    fails = []
    lattice = intersection_lattice(coxeter_arrangement(system))
    for X in lattice.elements:
        gal = galois_group(system, X)
        back = _fix(system, sorted(gal.reflections))
        if back != X:
            fails.append(("fix-gal", X))
    count = 0
    for r in range(system.rank + 1):
        for G in enumerate_parabolics(system, r):
            count += 1
            gal = galois_group(system, G.fix())
            if gal.reflections != G.reflections or gal.elements != G.elements():
                fails.append(("gal-fix", G))
    return fails, len(lattice.elements), count
