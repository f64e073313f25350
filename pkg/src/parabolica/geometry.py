"""Exact geometric realization of a finite Coxeter system.

Vectors are written in the basis of simple roots.  The invariant form is
scaled so every root has squared length 2, hence a root ``a`` acts by
``x -> x - (x, a) a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .coxeter import CayleyData, CoxeterSystem, GroupElement, InfiniteGroupError
from .numberfield import NumberField, Scalar


# -- linear algebra over a field -------------------------------------------------

def rref(rows: Sequence[Sequence], ncols: int, zero) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int, F: NumberField) -> list[tuple]:
    """Basis of {x : row . x = 0 for every row}."""
    red, pivots = rref(rows, ncols, F.zero)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def matmul(A, B, F: NumberField):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), F.zero) for j in range(len(B[0]))]
            for i in range(len(A))]


def matvec(A, v, F: NumberField) -> tuple:
    return tuple(sum((a * x for a, x in zip(row, v)), F.zero) for row in A)


def transpose(A):
    return [list(col) for col in zip(*A)]


# -- subspaces ---------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A linear subspace stored by its reduced-echelon basis."""

    basis: tuple
    ambient: int

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int, F: NumberField) -> "Subspace":
        red, _ = rref([tuple(v) for v in vectors], ambient, F.zero)
        return cls(tuple(tuple(r) for r in red), ambient)

    @classmethod
    def solutions(cls, equations: Iterable[Sequence], ambient: int, F: NumberField) -> "Subspace":
        eqs = list(equations)
        if not eqs:
            return cls.whole(ambient, F)
        return cls.span(nullspace(eqs, ambient, F), ambient, F)

    @classmethod
    def whole(cls, ambient: int, F: NumberField) -> "Subspace":
        return cls(tuple(tuple(F.one if i == j else F.zero for j in range(ambient)) for i in range(ambient)),
                   ambient)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls((), ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient - len(self.basis)

    def _field(self, F: Optional[NumberField] = None) -> NumberField:
        if F is not None:
            return F
        return self.basis[0][0].field

    def equations(self, F: NumberField) -> list[tuple]:
        """Linear functionals (as coefficient vectors) cutting out the subspace."""
        if not self.basis:
            return [tuple(F.one if i == j else F.zero for j in range(self.ambient)) for i in range(self.ambient)]
        return nullspace(self.basis, self.ambient, F)

    def contains_vector(self, v: Sequence, F: NumberField) -> bool:
        return all(not sum((a * x for a, x in zip(eq, v)), F.zero) for eq in self.equations(F))

    def contains(self, other: "Subspace", F: NumberField) -> bool:
        """True iff ``other`` is a subspace of ``self``."""
        if other.dim > self.dim:
            return False
        eqs = self.equations(F)
        return all(not sum((a * x for a, x in zip(eq, v)), F.zero) for v in other.basis for eq in eqs)

    def intersect(self, other: "Subspace", F: NumberField) -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ")
        return Subspace.solutions(self.equations(F) + other.equations(F), self.ambient, F)

    def transform(self, matrix, F: NumberField) -> "Subspace":
        return Subspace.span([matvec(matrix, v, F) for v in self.basis], self.ambient, F)

    def sort_key(self) -> tuple:
        return (self.codim, tuple(tuple(x.c for x in row) for row in self.basis))

    def serialize(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.basis]

    def __repr__(self) -> str:
        rows = ", ".join("(" + ", ".join(str(x) for x in r) + ")" for r in self.basis)
        return f"Subspace(span[{rows}] in dim {self.ambient})"


# -- root systems ------------------------------------------------------------------

@dataclass(frozen=True)
class RootSystem:
    system: CoxeterSystem
    field: NumberField
    simple_roots: tuple
    positive_roots: tuple
    roots: tuple
    gram: tuple

    @property
    def rank(self) -> int:
        return self.system.rank

    def pairing(self, x: Sequence, y: Sequence) -> Scalar:
        F, G = self.field, self.gram
        n = len(x)
        return sum((x[i] * G[i][j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j]), F.zero)

    def functional(self, root: Sequence) -> tuple:
        """Row vector f with f . x = (x, root)."""
        n = len(root)
        return tuple(sum((self.gram[i][j] * root[j] for j in range(n)), self.field.zero) for i in range(n))

    def reflect(self, x: Sequence, root: Sequence) -> tuple:
        c = self.pairing(x, root)
        return tuple(a - c * b for a, b in zip(x, root))


def generate_roots(system: CoxeterSystem) -> RootSystem:
    """Root system of a finite system: closure of the simple roots under reflections."""
    if not system.is_finite:
        raise InfiniteGroupError(f"{system.label} is infinite; no finite root system")
    cd = system.cayley
    return RootSystem(system, cd.field, tuple(cd.roots[: system.rank]), tuple(cd.roots[: cd.npos]),
                      tuple(cd.roots), tuple(tuple(r) for r in cd.form))


@lru_cache(maxsize=16)
def _simple_matrices(system: CoxeterSystem) -> list:
    cd = system.cayley
    F, B, n = cd.field, cd.form, system.rank
    mats = []
    for s in range(n):
        M = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
        M[s] = [(F.one if j == s else F.zero) - B[s][j] for j in range(n)]
        mats.append(M)
    return mats


def element_matrix(system: CoxeterSystem, w) -> list[list[Scalar]]:
    """Matrix of w in the simple-root basis: the product of simple reflections."""
    cd = system.cayley
    F, n = cd.field, system.rank
    word = w.word if isinstance(w, GroupElement) else cd.words[w]
    M = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    mats = _simple_matrices(system)
    for s in word:
        M = matmul(M, mats[s], F)
    return M


def element_matrix_from_roots(system: CoxeterSystem, w: int) -> list[list[Scalar]]:
    """Same matrix read off the root permutation: column j is w(a_j)."""
    cd = system.cayley
    cols = [cd.roots[cd.perms[w][j]] for j in range(system.rank)]
    return transpose(cols)


def fix_subspace(system: CoxeterSystem, generators: Iterable) -> Subspace:
    """Fix(G): common fixed space of the given elements (nullspace of stacked M_w - I)."""
    cd = system.cayley
    F, n = cd.field, system.rank
    rows = []
    gens = list(generators)
    if not gens:
        raise ValueError("fix_subspace needs at least one generator")
    for g in gens:
        M = element_matrix(system, g)
        for i in range(n):
            rows.append([M[i][j] - (F.one if i == j else F.zero) for j in range(n)])
    return Subspace.solutions(rows, n, F)


def fix_of_roots(system: CoxeterSystem, root_indices: Iterable[int]) -> Subspace:
    """Fixed space of the reflections in the given roots: their common orthogonal."""
    rs = generate_roots(system)
    eqs = [rs.functional(system.cayley.roots[r]) for r in root_indices]
    return Subspace.solutions(eqs, system.rank, rs.field)


@dataclass(frozen=True)
class GaloisGroup:
    reflections: frozenset  # positive root indices
    elements: frozenset     # element indices of the generated subgroup


def galois_group(system: CoxeterSystem, X: Subspace) -> GaloisGroup:
    """Reflections fixing X pointwise and the subgroup they generate."""
    cd = system.cayley
    rs = generate_roots(system)
    refl = frozenset(r for r in range(cd.npos)
                     if all(not rs.pairing(x, cd.roots[r]) for x in X.basis))
    return GaloisGroup(refl, generated_subgroup(cd, [cd.reflection_of_root[r] for r in refl]))


def generated_subgroup(cd: CayleyData, generators: Sequence[int]) -> frozenset:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = cd.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def pointwise_stabilizer(system: CoxeterSystem, X: Subspace) -> frozenset:
    """Brute-force Gal(X): every element whose matrix fixes each basis vector."""
    cd = system.cayley
    F = cd.field
    out = set()
    for w in range(cd.size):
        M = element_matrix_from_roots(system, w)
        if all(matvec(M, v, F) == tuple(v) for v in X.basis):
            out.add(w)
    return frozenset(out)


def act(system: CoxeterSystem, w: int, X: Subspace) -> Subspace:
    return X.transform(element_matrix_from_roots(system, w), system.cayley.field)


# -- coordinate realizations for the classical types ---------------------------------

@dataclass(frozen=True)
class CoordinateRealization:
    """Simple roots written in standard coordinates of R^N.

    Columns of ``roots`` are the simple roots; a vector with simple-root
    coordinates c has standard coordinates ``roots @ c``.
    """

    N: int
    columns: tuple  # one tuple of length N per simple root
    field: NumberField

    def pull_back(self, functional: Sequence) -> tuple:
        """A functional on R^N as a functional on simple-root coordinates."""
        return tuple(sum((a * x for a, x in zip(functional, col)), self.field.zero) for col in self.columns)

    def to_standard(self, v: Sequence) -> tuple:
        F = self.field
        return tuple(sum((self.columns[j][i] * v[j] for j in range(len(v))), F.zero) for i in range(self.N))

    def subspace(self, equations: Iterable[Sequence]) -> Subspace:
        """Subspace of the realization cut out by equations in standard coordinates."""
        return Subspace.solutions([self.pull_back(e) for e in equations], len(self.columns), self.field)


def coordinate_realization(system: CoxeterSystem) -> Optional[CoordinateRealization]:
    """Realization for type labels A_n (in sum-zero R^{n+1}), B_n and D_n (in R^n)."""
    label = system.type_label or ""
    if not label or label[0] not in "ABD" or not label[1:].isdigit():
        return None
    n = int(label[1:])
    F = system.cayley.field
    kind = label[0]

    def e(i, N, coef=1):
        return tuple(F(coef) if k == i else F.zero for k in range(N))

    def sub(a, b):
        return tuple(x - y for x, y in zip(a, b))

    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    if kind == "A":
        cols = [sub(e(i, n + 1), e(i + 1, n + 1)) for i in range(n)]
        return CoordinateRealization(n + 1, tuple(cols), F)
    if kind == "B":
        sqrt2 = F.two_cos(4)
        cols = [tuple(sqrt2 if k == 0 else F.zero for k in range(n))]
        cols += [sub(e(i + 1, n), e(i, n)) for i in range(n - 1)]
        return CoordinateRealization(n, tuple(cols), F)
    cols = [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)]
    cols.append(add(e(n - 2, n), e(n - 1, n)))
    return CoordinateRealization(n, tuple(cols), F)


def describe_standard(system: CoxeterSystem, X: Subspace) -> str:
    """Human-readable spanning set of X in standard coordinates when available."""
    real = coordinate_realization(system)
    F = system.cayley.field
    if real is None:
        vecs = X.basis
    else:
        vecs, _ = rref([real.to_standard(v) for v in X.basis], real.N, F.zero)
    if not vecs:
        return "{0}"
    return "span{" + ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in vecs) + "}"
