import random

import pytest

from parabolica.coxeter import build_system
from parabolica.geometry import (Subspace, act, element_matrix, element_matrix_from_roots,
                                 fix_of_roots, fix_subspace, galois_group, generate_roots, matmul,
                                 pointwise_stabilizer)


@pytest.mark.parametrize("label,count", [("A2", 6), ("A3", 12), ("B3", 18), ("H3", 30)])
def test_root_counts(label, count):
    rs = generate_roots(build_system(label))
    assert len(rs.roots) == count
    assert len(set(rs.roots)) == count


def test_root_system_closed_and_simple_reflections():
    S = build_system("B3")
    rs = generate_roots(S)
    roots = set(rs.roots)
    for a in rs.simple_roots:
        assert rs.reflect(a, a) == tuple(-x for x in a)
        for r in rs.roots:
            assert rs.reflect(r, a) in roots


def test_element_matrix_examples():
    S = build_system("A2")
    F = S.cayley.field
    I = element_matrix(S, 0)
    assert I == [[F.one, F.zero], [F.zero, F.one]]
    s1 = element_matrix(S, S.element("s1"))
    assert matmul(s1, s1, F) == I
    M = element_matrix(S, S.element("s1s2"))
    assert matmul(M, M, F) != I and matmul(matmul(M, M, F), M, F) == I


@pytest.mark.parametrize("label", ["A3", "B3", "H3"])
def test_matrix_routes_agree_and_preserve_form(label):
    S = build_system(label)
    cd = S.cayley
    rng = random.Random(0)
    B = cd.form
    for w in rng.sample(range(cd.size), min(30, cd.size)):
        M = element_matrix(S, w)
        assert M == element_matrix_from_roots(S, w)
        # M^T B M = B
        MT = [list(r) for r in zip(*M)]
        assert matmul(matmul(MT, B, cd.field), M, cd.field) == [list(r) for r in B]


def test_fix_examples():
    S = build_system("A3")
    assert fix_subspace(S, [S.element("s1")]).codim == 1
    assert fix_subspace(S, [S.element(g) for g in S.names]).dim == 0
    assert fix_subspace(S, [S.element("s1"), S.element("s2")]).codim == 2


def test_galois_examples():
    S = build_system("A3")
    F = S.cayley.field
    assert galois_group(S, Subspace.whole(3, F)).elements == frozenset({0})
    H = fix_of_roots(S, [0])
    assert galois_group(S, H).reflections == frozenset({0})
    X = fix_subspace(S, [S.element("s1"), S.element("s2")])
    gal = galois_group(S, X)
    assert len(gal.elements) == 6
    assert gal.elements == pointwise_stabilizer(S, X)


def test_galois_equivariance():
    S = build_system("B3")
    cd = S.cayley
    rng = random.Random(1)
    X = fix_subspace(S, [S.element("s0"), S.element("s1")])
    base = galois_group(S, X).elements
    for w in rng.sample(range(cd.size), 20):
        conj = frozenset(cd.conjugate(w, g) for g in base)
        assert galois_group(S, act(S, w, X)).elements == conj
