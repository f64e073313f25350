from itertools import combinations

import pytest

from parabolica.arrangements import (Arrangement, build_k_parabolic, build_reference_arrangement,
                                     compare_arrangements, coxeter_arrangement, enumerate_parabolics,
                                     galois_round_trips, intersection_lattice, orbit_invariance_check,
                                     parabolic_from_subset)
from parabolica.coxeter import build_system
from parabolica.geometry import Subspace, describe_standard, generated_subgroup


def conjugation_oracle(S, rank):
    """Distinct irreducible parabolics as element sets: conjugate every standard one by all of W."""
    cd = S.cayley
    found = set()
    for I in combinations(range(S.rank), rank):
        # irreducible iff the induced diagram is connected
        comp, stack = {I[0]}, [I[0]]
        while stack:
            a = stack.pop()
            for b in I:
                if b not in comp and S.matrix[a][b] != 2:
                    comp.add(b)
                    stack.append(b)
        if len(comp) != rank:
            continue
        std = generated_subgroup(cd, [cd.right[0][s] for s in I])
        for w in range(cd.size):
            found.add(frozenset(cd.conjugate(w, x) for x in std))
    return found


@pytest.mark.parametrize("label,rank,count", [("A3", 2, 4), ("B3", 2, 7), ("D4", 3, 12), ("H3", 2, 16)])
def test_irreducible_parabolic_counts(label, rank, count):
    S = build_system(label)
    ps = enumerate_parabolics(S, rank, irreducible_only=True)
    assert len(ps) == count
    assert {p.elements() for p in ps} == conjugation_oracle(S, rank)


def test_rank_one_parabolics_are_reflections():
    for label in ("A3", "B3", "H3"):
        S = build_system(label)
        assert len(enumerate_parabolics(S, 1)) == S.cayley.npos


def test_parabolic_types():
    S = build_system("B3")
    types = sorted(p.type_label for p in enumerate_parabolics(S, 2, irreducible_only=True))
    assert types == ["A2"] * 4 + ["B2"] * 3
    p = parabolic_from_subset(S, (0, 2))
    assert not p.irreducible and p.rank == 2


def test_conjugate_parabolic():
    S = build_system("A3")
    P = parabolic_from_subset(S, (0, 1))
    Q = P.conjugate(2)
    cd = S.cayley
    s3 = cd.right[0][2]
    assert Q.elements() == frozenset(cd.conjugate(s3, x) for x in P.elements())


@pytest.mark.parametrize("k,size,codim", [(2, 6, 1), (3, 4, 2), (4, 1, 3)])
def test_k_parabolic_A3(k, size, codim):
    A = build_k_parabolic(build_system("A3"), k)
    assert len(A) == size
    assert all(X.codim == codim for X in A)


def test_reference_arrangements():
    A3, B3 = build_system("A3"), build_system("B3")
    assert len(build_reference_arrangement(A3, "k-equal", 3)) == 4
    assert len(build_reference_arrangement(B3, "D", 3)) == 4
    assert len(build_reference_arrangement(B3, "B", 3, 2)) == 7


def test_comparisons():
    A3, B3, D4 = build_system("A3"), build_system("B3"), build_system("D4")
    assert compare_arrangements(build_k_parabolic(A3, 3), build_reference_arrangement(A3, "k-equal", 3)).equal
    assert compare_arrangements(build_k_parabolic(B3, 3), build_reference_arrangement(B3, "B", 3, 2)).equal
    assert compare_arrangements(build_k_parabolic(D4, 3), build_reference_arrangement(D4, "D", 3)).equal
    c = compare_arrangements(build_k_parabolic(D4, 4), build_reference_arrangement(D4, "D", 4))
    assert not c.equal and c.side == "left"
    # x_a = x_b = x_c = 0: a coordinate axis in R^4
    text = describe_standard(D4, c.witness)
    assert text.count("0") == 3 and text.startswith("span{")
    assert compare_arrangements(build_k_parabolic(D4, 4), build_reference_arrangement(D4, "B", 4, 3)).equal


def test_lattices():
    S = build_system("A3")
    F = S.cayley.field
    single = Arrangement(S, (Subspace.span([(F.one, F.zero, F.zero)], 3, F).intersect(
        Subspace.span([(F.one, F.zero, F.zero), (F.zero, F.one, F.zero)], 3, F), F),), "line")
    assert len(intersection_lattice(single)) == 2
    assert len(intersection_lattice(coxeter_arrangement(S))) == 15  # partitions of a 4-set
    L = intersection_lattice(build_k_parabolic(S, 3))
    assert len(L) == 6 and len(L.atoms) == 4 and L.elements[L.top].dim == 0


def test_orbit_invariance():
    A3, B3 = build_system("A3"), build_system("B3")
    assert orbit_invariance_check(A3, build_k_parabolic(A3, 3))[0]
    assert orbit_invariance_check(B3, build_k_parabolic(B3, 3))[0]
    F = A3.cayley.field
    generic = Subspace.solutions([(F(1), F(2), F(5))], 3, F)
    ok, witness = orbit_invariance_check(A3, Arrangement(A3, (generic,)))
    assert not ok and witness is not None


@pytest.mark.parametrize("label", ["A3", "B3"])
def test_galois_round_trips(label):
    fails, lattice, parabolics = galois_round_trips(build_system(label))
    assert fails == []
    assert lattice == parabolics


def test_arrangement_json_is_exact():
    S = build_system("H3")
    data = build_k_parabolic(S, 3).to_json()
    assert data["schema_version"] == 1 and len(data["subspaces"]) == 16
    assert all(isinstance(x, str) for m in data["subspaces"] for row in m["basis"] for x in row)
