import random
from collections import deque
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from parabolica.arrangements import enumerate_parabolics
from parabolica.coxeter import INF, build_system
from parabolica.homotopy import decide_homotopic, h1_of_complex
from parabolica.complex import build_two_complex
from parabolica.loops import LoopError, trivial_loop
from parabolica.relaxed import (CONJECTURE, ConjugationClosureError, F, G, InconclusiveError,
                                equal_in_relaxed, kernel_membership, normal_form, random_kernel_word,
                                relator_words, relax, rs_abelianization)

A2, A3, B3 = build_system("A2"), build_system("A3"), build_system("B3")


def reachability_normal_form(rsys, word):
    """Oracle: explore every word reachable by deleting ss or swapping a commuting pair.

    In a right-angled group the shortest reachable words form the commutation
    class of the reduced word, so the least of them is the normal form.
    """
    start = tuple(word)
    seen, queue = {start}, deque([start])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if a == b:
                nxt = w[:i] + w[i + 2:]
            elif rsys.commute(a, b):
                nxt = w[:i] + (b, a) + w[i + 2:]
            else:
                continue
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    shortest = min(len(w) for w in seen)
    return min(w for w in seen if len(w) == shortest)


def test_relax_theorem_mode():
    assert relax(A2).m(0, 1) == INF
    R = relax(A3)
    assert (R.m(0, 1), R.m(0, 2), R.m(1, 2)) == (INF, 2, INF)
    assert R.is_right_angled


def test_relax_conjecture_mode():
    type_a2 = [p for p in enumerate_parabolics(B3, 2, irreducible_only=True) if p.type_label == "A2"]
    R = relax(B3, CONJECTURE, type_a2)
    assert R.m(0, 1) == 4 and R.m(1, 2) == INF and R.m(0, 2) == 2
    assert not R.is_right_angled
    with pytest.raises(ConjugationClosureError) as err:
        relax(B3, CONJECTURE, type_a2[:1])
    assert err.value.conjugate.type_label == "A2"


def test_conjecture_mode_normal_forms():
    type_a2 = [p for p in enumerate_parabolics(B3, 2, irreducible_only=True) if p.type_label == "A2"]
    R = relax(B3, CONJECTURE, type_a2)
    assert normal_form(R, (0, 1) * 4).is_identity   # (s0 s1)^4 kept
    assert not normal_form(R, (1, 2) * 3).is_identity
    assert equal_in_relaxed(R, (1, 0, 1, 0), (0, 1, 0, 1))
    tight = relax(B3, CONJECTURE, type_a2, search_bound=1)
    with pytest.raises(InconclusiveError, match="search bound of 1"):
        normal_form(tight, (0, 1, 0, 1))


def test_normal_form_examples():
    assert normal_form(relax(A2), (0, 1) * 3).normal_form == (0, 1) * 3
    assert normal_form(relax(A3), (0, 2, 0, 2)).is_identity
    assert normal_form(relax(A3), (2, 0)).normal_form == (0, 2)


@pytest.mark.parametrize("label,max_len", [("A2", 10), ("A3", 8), ("B3", 8)])
def test_normal_form_matches_reachability(label, max_len):
    R = relax(build_system(label))
    for k in range(max_len + 1):
        for w in product(range(3 if label != "A2" else 2), repeat=k):
            assert normal_form(R, w).normal_form == reachability_normal_form(R, w)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(["A3", "B3", "H3", "A4", "D4"]), st.lists(st.integers(0, 3), max_size=20))
def test_normal_form_idempotent_and_compatible_with_phi(label, raw):
    S = build_system(label)
    R = relax(S)
    w = tuple(x % S.rank for x in raw)
    nf = normal_form(R, w).normal_form
    assert normal_form(R, nf).normal_form == nf
    assert all(a != b for a, b in zip(nf, nf[1:]))
    assert S.cayley.evaluate(nf) == S.cayley.evaluate(w)


def test_phi_is_a_homomorphism():
    rng = random.Random(2)
    cd = B3.cayley
    R = relax(B3)
    for _ in range(2000):
        u = [rng.randrange(3) for _ in range(rng.randrange(12))]
        v = [rng.randrange(3) for _ in range(rng.randrange(12))]
        assert kernel_membership(R, u + v).image == cd.mul(cd.evaluate(u), cd.evaluate(v))


def test_kernel_membership():
    R = relax(A3)
    assert kernel_membership(R, ()).in_kernel
    assert kernel_membership(R, (0, 1) * 3).in_kernel
    assert not normal_form(R, (0, 1) * 3).is_identity
    assert not kernel_membership(R, (0,)).in_kernel
    for S in (A3, B3, build_system("H3")):
        RS = relax(S)
        for r in relator_words(S):
            assert kernel_membership(RS, r).in_kernel
            assert not normal_form(RS, r).is_identity


def test_maps_F_and_G():
    R = relax(A3)
    assert F(trivial_loop(A3)) == ()
    hexagon = G(R, (0, 1) * 3)
    assert len(set(hexagon.chambers)) == 6 and F(hexagon) == (0, 1) * 3
    with pytest.raises(LoopError, match="not in the kernel"):
        G(R, (0, 1))


@pytest.mark.parametrize("S", [A3, B3], ids=["A3", "B3"])
def test_round_trips_on_random_kernel_words(S):
    R = relax(S)
    rng = random.Random(4)
    for _ in range(30):
        w = random_kernel_word(S, rng, 30)
        assert len(w) <= 30 and kernel_membership(R, w).in_kernel
        loop = G(R, w)
        assert equal_in_relaxed(R, F(loop), w)
        assert decide_homotopic(G(R, F(loop)), loop, R, certify=False).equivalent


@pytest.mark.parametrize("label,rank", [("A2", 1), ("A3", 7), ("B3", 13), ("H3", 31)])
def test_rs_abelianization_matches_h1(label, rank):
    S = build_system(label)
    data = rs_abelianization(relax(S))
    assert data.group.free_rank == rank and data.group.torsion == ()
    assert h1_of_complex(build_two_complex(S, max(S.rank - 2, 0))) == data.group
