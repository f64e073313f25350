import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from parabolica.coxeter import build_system
from parabolica.loops import (GridBuilder, HomotopyGrid, LoopError, Move, MoveScript, QChain, QLoop,
                              apply_move, destutter, loop_of_word, parse_chamber_sequence, replay,
                              trivial_loop, verify_grid, word_of_loop)

A2 = build_system("A2")
A3 = build_system("A3")


def test_f_examples():
    assert word_of_loop(trivial_loop(A3)) == ()
    s1 = A3.cayley.right[0][0]
    assert word_of_loop(QLoop(A3, 1, (0, s1, 0))) == (0, 0)
    hexagon = loop_of_word(A2, (0, 1) * 3)
    assert isinstance(hexagon, QLoop) and len(set(hexagon.chambers)) == 6
    assert word_of_loop(hexagon) == (0, 1) * 3
    assert word_of_loop(QLoop(A3, 1, (0, 0, s1, s1, 0))) == (0, 0)


def test_f_rejects_non_adjacent():
    x = A3.element("s1s2").index
    chain = QChain(A3, 0, (0, x))
    with pytest.raises(LoopError, match="positions 0 and 1"):
        word_of_loop(chain)


def test_g_examples():
    assert loop_of_word(A3, ()).chambers == (0,)
    assert isinstance(loop_of_word(A3, (0, 0)), QLoop)
    c = loop_of_word(A2, (0, 1))
    assert not isinstance(c, QLoop) and not c.is_loop


def test_f_g_round_trip_exhaustive():
    for S in (A2, A3, build_system("B3")):
        for k in range(8):
            for w in product(range(S.rank), repeat=k):
                if any(a == b for a, b in zip(w, w[1:])):
                    continue
                assert word_of_loop(loop_of_word(S, w)) == w


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=10), st.lists(st.integers(0, 2), max_size=10))
def test_f_of_concatenation(u, v):
    # make both words trivial in W by appending the reversed word
    a = loop_of_word(A3, u + u[::-1])
    b = loop_of_word(A3, v + v[::-1])
    assert word_of_loop(a.concat(b)) == word_of_loop(a) + word_of_loop(b)


def test_chain_validation():
    x = A3.element("s1s2").index
    with pytest.raises(LoopError, match="not 1-near"):
        QChain(A3, 1, (0, x))
    with pytest.raises(LoopError, match="base chamber"):
        QLoop(A3, 1, (0, 1))
    with pytest.raises(LoopError):
        QChain(A3, 3, (0,))


def test_parse_chamber_sequence():
    loop = parse_chamber_sequence(A3, "e, s1, e")
    assert isinstance(loop, QLoop) and word_of_loop(loop) == (0, 0)
    with pytest.raises(LoopError, match="token 2"):
        parse_chamber_sequence(A3, "e s9 e")


def test_t1():
    loop = loop_of_word(A3, (0, 2, 0, 2))
    new, frag = apply_move(loop, Move("T1", 2, "insert"))
    assert len(new) == len(loop) + 1 and word_of_loop(new) == word_of_loop(loop)
    assert verify_grid(HomotopyGrid(A3, 1, tuple(frag)))
    back, _ = apply_move(new, Move("T1", 2, "remove"))
    assert back == loop


def test_t2_insert_and_remove():
    loop = loop_of_word(A3, (0, 0))
    new, frag = apply_move(loop, Move("T2", 1, "insert", (1,)))
    assert word_of_loop(new) == (0, 1, 1, 0)
    assert verify_grid(HomotopyGrid(A3, 1, tuple(frag)))
    back, frag2 = apply_move(new, Move("T2", 2, "remove", (1,)))
    assert back == loop
    assert verify_grid(HomotopyGrid(A3, 1, tuple(frag2)))
    with pytest.raises(LoopError, match="a, a\\*s, a"):
        apply_move(new, Move("T2", 1, "remove", (1,)))


def test_t3():
    loop = loop_of_word(A3, (0, 2, 0, 2))
    new, frag = apply_move(loop, Move("T3", 0, "", (0, 2)))
    assert word_of_loop(new) == (2, 0, 0, 2)
    assert verify_grid(HomotopyGrid(A3, 1, tuple(frag)))
    loop2 = loop_of_word(A3, (0, 1, 0, 1, 0, 1))
    with pytest.raises(LoopError, match="do not commute"):
        apply_move(loop2, Move("T3", 0, "", (0, 1)))


def test_move_inverses_undo():
    rng = random.Random(5)
    for _ in range(200):
        w = [rng.randrange(3) for _ in range(rng.randrange(1, 6))]
        loop = loop_of_word(A3, w + w[::-1])
        i = rng.randrange(len(loop))
        s = rng.randrange(3)
        for mv in (Move("T1", i, "insert"), Move("T2", i, "insert", (s,))):
            new, _ = apply_move(loop, mv)
            assert apply_move(new, mv.inverse())[0] == loop
        for j in range(len(loop) - 2):
            a = word_of_loop(loop)
            if a[j] != a[j + 1] and A3.m(a[j], a[j + 1]) == 2:
                mv = Move("T3", j, "", (a[j], a[j + 1]))
                new, _ = apply_move(loop, mv)
                assert apply_move(new, mv.inverse())[0] == loop


def test_replay_stitches_valid_grids():
    rng = random.Random(11)
    for _ in range(100):
        loop = trivial_loop(A3)
        moves = []
        cur = loop
        for _ in range(rng.randrange(1, 8)):
            mv = Move("T2", rng.randrange(len(cur)), "insert", (rng.randrange(3),))
            cur, _ = apply_move(cur, mv)
            moves.append(mv)
        end, grid = replay(loop, MoveScript(tuple(moves)))
        assert end == cur
        assert verify_grid(grid, 0)
        assert destutter(grid.rows[0]) == (0,) and destutter(grid.rows[-1]) == destutter(cur.chambers)
        back, grid2 = replay(end, MoveScript(tuple(moves)).inverse())
        assert back == loop and verify_grid(grid2, 0)


def test_verify_grid():
    loop = loop_of_word(A3, (0, 1, 1, 0))
    assert verify_grid(HomotopyGrid(A3, 1, (loop.chambers, loop.chambers)))
    far = A3.element("s1s2s3").index
    rows = [list(loop.chambers), list(loop.chambers)]
    rows[1][2] = far
    check = verify_grid(HomotopyGrid(A3, 1, tuple(map(tuple, rows))))
    assert not check and check.cell == (1, 2)
    ragged = verify_grid(HomotopyGrid(A3, 1, ((0, 0), (0,))))
    assert not ragged and ragged.cell[0] == 1


def test_grid_builder_rejects_mismatch():
    b = GridBuilder(A3, 1, loop_of_word(A3, (0, 0)).chambers)
    with pytest.raises(LoopError):
        b.append([loop_of_word(A3, (1, 1)).chambers])


def test_grid_csv():
    loop = loop_of_word(A2, (0, 0))
    g = HomotopyGrid(A2, 0, (loop.chambers,))
    assert g.to_csv() == "e,s1,e\n"
