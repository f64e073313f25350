import random

import pytest

from parabolica.complex import build_two_complex
from parabolica.coxeter import INF, CoxeterError, build_system
from parabolica.homotopy import (INCONCLUSIVE, NONTRIVIAL, TRIVIAL, check_certificate,
                                 contract_relator_grid, decide_homotopic, h1_of_complex, level_project,
                                 normalize_to_gallery, pi1_data, pi1_presentation, pi1_triviality_probe)
from parabolica.loops import (LoopError, QLoop, apply_move, Move, destutter, loop_of_word, trivial_loop,
                              verify_grid, word_of_loop)
from parabolica.presentation import Presentation

A2, A3, B3 = build_system("A2"), build_system("A3"), build_system("B3")


def test_decide_nil_move():
    v = decide_homotopic(loop_of_word(A3, (0, 0)), trivial_loop(A3))
    assert v.equivalent and v.certificate.script.counts() == {"T2": 1}
    assert verify_grid(v.certificate.grid, 0)


def test_decide_hexagon_is_not_trivial():
    v = decide_homotopic(loop_of_word(A2, (0, 1) * 3), trivial_loop(A2))
    assert not v.equivalent and v.certificate is None
    assert v.obstruction == ((0, 1) * 3, ())


def test_decide_commuting_square():
    loop = loop_of_word(A3, (0, 2, 0, 2))
    v = decide_homotopic(loop, trivial_loop(A3))
    assert v.equivalent
    assert v.certificate.script.counts() == {"T3": 1, "T2": 2}
    assert check_certificate(loop, trivial_loop(A3), v.certificate)
    assert destutter(v.certificate.grid.rows[-1]) == (0,)


def test_decide_stretchings():
    loop = loop_of_word(A3, (0, 1) * 3)
    stretched, _ = apply_move(loop, Move("T1", 2, "insert"))
    v = decide_homotopic(loop, stretched)
    assert v.equivalent and set(v.certificate.script.counts()) == {"T1"}


def test_decide_errors():
    with pytest.raises(LoopError, match="level"):
        decide_homotopic(QLoop(A3, 0, (0,)), trivial_loop(A3))
    s1 = A3.cayley.right[0][0]
    with pytest.raises(LoopError, match="base"):
        decide_homotopic(QLoop(A3, 1, (s1,)), trivial_loop(A3))


def test_certificates_on_random_pairs():
    rng = random.Random(9)
    from parabolica.relaxed import relax, random_kernel_word
    R = relax(B3)
    for _ in range(40):
        w = random_kernel_word(B3, rng, 20)
        loop = loop_of_word(B3, w)
        v = decide_homotopic(loop, trivial_loop(B3), R)
        if v.equivalent:
            assert check_certificate(loop, trivial_loop(B3), v.certificate)
        # against itself after conjugating by a generator: always equivalent
        s = rng.randrange(3)
        other = loop_of_word(B3, (s, s) + w)
        v2 = decide_homotopic(loop, other, R)
        assert v2.equivalent and check_certificate(loop, other, v2.certificate)


def test_pi1_presentations():
    hexagon = build_two_complex(A2, 0)
    P = pi1_presentation(hexagon)
    assert (P.num_generators, len(P.relators)) == (1, 0)
    for S, gens, rels in ((A3, 13, 6), (B3, 25, 12)):
        X = build_two_complex(S, 1)
        P = pi1_presentation(X)
        assert (P.num_generators, len(P.relators)) == (gens, rels)
        assert gens == X.graph.num_edges - X.graph.num_vertices + 1


def test_pi1_tree_is_spanning():
    X = build_two_complex(B3, 1)
    data = pi1_data(X)
    assert sum(p is None for p in data.parent) == 1
    assert all(X.graph.has_edge(v, p) for v, p in enumerate(data.parent) if p is not None)


def test_disconnected_graph():
    X = build_two_complex(A3, 2)
    with pytest.raises(CoxeterError, match="disconnected"):
        pi1_presentation(X)


@pytest.mark.parametrize("label,b1", [("A3", 7), ("B3", 13), ("H3", 31)])
def test_h1_examples(label, b1):
    S = build_system(label)
    X = build_two_complex(S, 1)
    h = h1_of_complex(X)
    assert h.free_rank == b1 and h.torsion == ()
    assert h.free_rank >= 0 and len(X.cells) >= 0


def test_h1_hexagon():
    assert h1_of_complex(build_two_complex(A2, 0)).free_rank == 1


def test_level_project():
    assert level_project(trivial_loop(A3), 4) == QLoop(A3, 0, (0,))
    hexagon = loop_of_word(A3, (0, 1) * 3)
    assert level_project(hexagon, 4).q == 0
    with pytest.raises(CoxeterError):
        level_project(hexagon, 3)


def test_normalize_to_gallery():
    loop = loop_of_word(A3, (0, 2, 0, 2))
    out, grid = normalize_to_gallery(level_project(loop, 4))
    assert out.chambers == loop.chambers and verify_grid(grid, 0)
    x = A3.element("s1s2s1").index
    out, grid = normalize_to_gallery(QLoop(A3, 0, (0, x, 0)))
    assert verify_grid(grid, 0)
    assert word_of_loop(QLoop(A3, 1, out.chambers)) == (0, 1, 0, 0, 1, 0)
    y = B3.element("s0s1s0").index
    out, grid = normalize_to_gallery(QLoop(B3, 0, (0, y, 0)))
    assert verify_grid(grid, 0) and len(out) == 7


def test_normalize_random_loops():
    rng = random.Random(12)
    for S in (A3, B3):
        X = build_two_complex(S, 0)
        adj = X.graph.adjacency
        for _ in range(30):
            ch = [0]
            for _ in range(rng.randrange(1, 8)):
                ch.append(rng.choice(adj[ch[-1]]))
            ch += list(reversed(ch[:-1]))
            out, grid = normalize_to_gallery(QLoop(S, 0, tuple(ch)))
            assert verify_grid(grid, 0)
            QLoop(S, S.rank - 2, out.chambers)  # valid at level n-2


@pytest.mark.parametrize("S,pair", [(A3, (0, 1)), (B3, (0, 1)), (B3, (1, 2)), (A3, (0, 2))],
                         ids=["A3-s1s2", "B3-s0s1", "B3-s1s2", "A3-s1s3"])
def test_contract_relator_grid(S, pair):
    for u in ((), (2,), (1, 0)):
        grid = contract_relator_grid(S, 4, u, pair)
        assert verify_grid(grid, 0)
        assert destutter(grid.rows[-1]) == (0,)
        relator = tuple(u) + pair * S.m(*pair) + tuple(reversed(u))
        assert destutter(grid.rows[0]) == destutter(loop_of_word(S, relator).chambers)


def test_contract_infinite_label():
    S = build_system([[1, INF, 2], [INF, 1, 3], [2, 3, 1]])
    with pytest.raises(CoxeterError):
        contract_relator_grid(S, 4, (), (0, 1))


def test_probe():
    assert pi1_triviality_probe(Presentation(["a"], [(1,)])).status == TRIVIAL
    r = pi1_triviality_probe(pi1_presentation(build_two_complex(A2, 0)))
    assert r.status == NONTRIVIAL and r.h1.free_rank == 1
    r = pi1_triviality_probe(pi1_presentation(build_two_complex(A3, 0)))
    assert r.status == TRIVIAL
    # the binary icosahedral group is perfect of order 120
    perfect = Presentation(["s", "t"], [(1, 2, 1, 2, -1, -1, -1), (1, 1, 1) + (-2,) * 5])
    r = pi1_triviality_probe(perfect)
    assert r.status == NONTRIVIAL and r.order == 120 and r.h1.is_trivial()
    r = pi1_triviality_probe(perfect, coset_cap=20)
    assert r.status == INCONCLUSIVE
