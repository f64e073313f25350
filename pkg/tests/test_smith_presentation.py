import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group
from sympy.matrices.normalforms import smith_normal_form

from parabolica.presentation import (CosetCapExceeded, Presentation, cyclic_reduce, free_reduce,
                                     invert, tietze_simplify, todd_coxeter)
from parabolica.smith import AbelianGroup, abelian_invariants, dense_rows, smith_diagonal


def sympy_invariants(M):
    D = smith_normal_form(Matrix(M), domain=ZZ)
    return sorted(abs(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_smith_matches_sympy(nrows, ncols, data):
    M = [[data.draw(st.integers(-6, 6)) for _ in range(ncols)] for _ in range(nrows)]
    assert smith_diagonal(dense_rows(M)) == sympy_invariants(M)


def test_smith_examples():
    assert smith_diagonal(dense_rows([[2, 0], [0, 3]])) == [1, 6]
    assert abelian_invariants(dense_rows([[2, 4], [6, 8]]), 2) == AbelianGroup(0, (2, 4))
    assert abelian_invariants([], 3) == AbelianGroup(3, ())
    assert str(AbelianGroup(1, (2,))) == "Z^1 + Z/2" and str(AbelianGroup(0, ())) == "0"


def test_word_helpers():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert cyclic_reduce((-1, 2, 3, 1)) == (2, 3)
    assert invert((1, -2)) == (2, -1)


def sympy_order(ngen, relators):
    F, *gens = free_group(" ".join(f"x{i}" for i in range(ngen)))
    rels = []
    for r in relators:
        w = F.identity
        for x in r:
            w = w * (gens[abs(x) - 1] if x > 0 else gens[abs(x) - 1] ** -1)
        rels.append(w)
    return FpGroup(F, rels).order()


GROUPS = [
    ("Z/5", 1, [(1,) * 5]),
    ("S3", 2, [(1, 1), (2, 2, 2), (1, 2) * 2]),
    ("Q8", 2, [(1,) * 4, (1, 1, -2, -2), (-1, 2, 1, 2)]),
    ("A5", 2, [(1, 1), (2, 2, 2), (1, 2) * 5]),
    ("trivial", 2, [(1, 1, 2), (1, 2)]),
    ("Z/2 x Z/4", 2, [(1, 1), (2,) * 4, (1, 2, -1, -2)]),
]


@pytest.mark.parametrize("name,ngen,rels", GROUPS, ids=[g[0] for g in GROUPS])
def test_todd_coxeter_against_sympy(name, ngen, rels):
    P = Presentation([f"x{i}" for i in range(ngen)], rels)
    assert todd_coxeter(P) == sympy_order(ngen, rels)


def test_todd_coxeter_cap():
    with pytest.raises(CosetCapExceeded, match="cap of 10"):
        todd_coxeter(Presentation(["a"], [(1,) * 50]), cap=10)


def test_tietze_keeps_the_group():
    rng = random.Random(8)
    for _ in range(30):
        n = 3
        rels = [(1, 2, -3)] + [tuple(rng.choice([1, 2, 3, -1, -2, -3]) for _ in range(rng.randrange(2, 6)))
                               for _ in range(3)]
        P = Presentation(["a", "b", "c"], rels)
        Q = tietze_simplify(P)
        assert Q.num_generators < n
        assert Q.abelianization() == P.abelianization()
        assert todd_coxeter(Q, 10 ** 5) == todd_coxeter(P, 10 ** 5)


def test_presentation_text():
    P = Presentation(["a", "b"], [(1, -2)])
    assert P.to_text() == "generators 2\n  a\n  b\nrelators 1\n  a*b^-1\n"
    assert P.abelianization() == AbelianGroup(1, ())
