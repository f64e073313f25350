"""Discrete q-loops, homotopy grids and the moves T1-T3.

A move maps a loop to a new loop and emits a two-row grid whose top row is a
stretching of the old loop and whose bottom row is a stretching of the new
one.  :class:`GridBuilder` stitches such fragments by duplicating columns,
which never breaks the grid conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Optional, Sequence

from .coxeter import CoxeterError, CoxeterSystem, Word


class LoopError(ValueError):
    pass


def destutter(chambers: Sequence[int]) -> tuple:
    return tuple(k for k, _ in groupby(chambers))


def _near(system: CoxeterSystem, q: int, u: int, v: int) -> bool:
    return u == v or system.cayley.is_near(u, v, system.rank - q - 1)


@dataclass(frozen=True)
class QChain:
    system: CoxeterSystem
    q: int
    chambers: tuple

    def __post_init__(self):
        n = self.system.rank
        if not 0 <= self.q <= n - 1:
            raise LoopError(f"level q = {self.q} out of range 0..{n - 1}")
        if not self.chambers:
            raise LoopError("empty chain")
        for i, (u, v) in enumerate(zip(self.chambers, self.chambers[1:])):
            if not _near(self.system, self.q, u, v):
                raise LoopError(f"chambers at positions {i} and {i + 1} are not {self.q}-near")

    @property
    def base(self) -> int:
        return self.chambers[0]

    @property
    def is_loop(self) -> bool:
        return self.chambers[0] == self.chambers[-1]

    def __len__(self) -> int:
        return len(self.chambers)

    def destuttered(self) -> "QChain":
        return type(self)(self.system, self.q, destutter(self.chambers))

    def words(self) -> list[str]:
        cd = self.system.cayley
        return [self.system.format_word(cd.words[c]) for c in self.chambers]


class QLoop(QChain):
    """A q-chain returning to its base chamber."""

    def __post_init__(self):
        super().__post_init__()
        if self.chambers[0] != self.chambers[-1]:
            raise LoopError("chain does not return to its base chamber")

    def concat(self, other: "QLoop") -> "QLoop":
        if other.base != self.base or other.q != self.q:
            raise LoopError("loops have different bases or levels")
        return QLoop(self.system, self.q, self.chambers + other.chambers[1:])


def trivial_loop(system: CoxeterSystem, q: Optional[int] = None, base: int = 0) -> QLoop:
    return QLoop(system, system.rank - 2 if q is None else q, (base,))


def word_of_loop(loop: QChain) -> Word:
    """f: read off the generator labelling each step of an (n-2)-chain."""
    sys_ = loop.system
    cd = sys_.cayley
    out = []
    for i, (u, v) in enumerate(zip(loop.chambers, loop.chambers[1:])):
        if u == v:
            continue
        x = cd.mul(cd.inverse[u], v)
        if cd.length[x] != 1:
            raise LoopError(f"chambers at positions {i} and {i + 1} are not adjacent")
        out.append(cd.words[x][0])
    return tuple(out)


def loop_of_word(system: CoxeterSystem, word: Sequence[int], base: int = 0) -> QChain:
    """g: the gallery of partial products; a :class:`QLoop` when the word is 1 in W."""
    cd = system.cayley
    ch = [base]
    for s in word:
        ch.append(cd.right[ch[-1]][s])
    cls = QLoop if ch[-1] == base else QChain
    return cls(system, system.rank - 2, tuple(ch))


def parse_chamber_sequence(system: CoxeterSystem, text: str, q: Optional[int] = None) -> QChain:
    """Whitespace- or comma-separated canonical words, one per chamber."""
    tokens = [t for t in text.replace(",", " ").split()]
    if not tokens:
        raise LoopError("empty chamber sequence")
    cd = system.cayley
    ch = []
    for pos, tok in enumerate(tokens):
        try:
            ch.append(cd.evaluate(system.parse_word(tok)))
        except CoxeterError as e:
            raise LoopError(f"token {pos + 1} ({tok!r}): {e}") from None
    q = system.rank - 2 if q is None else q
    cls = QLoop if ch[0] == ch[-1] else QChain
    return cls(system, q, tuple(ch))


# -- grids -------------------------------------------------------------------------

@dataclass(frozen=True)
class HomotopyGrid:
    system: CoxeterSystem
    q: int
    rows: tuple  # tuple of equal-length chamber tuples

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def reversed(self) -> "HomotopyGrid":
        return HomotopyGrid(self.system, self.q, self.rows[::-1])

    def to_words(self) -> list[list[str]]:
        cd = self.system.cayley
        return [[self.system.format_word(cd.words[c]) for c in row] for row in self.rows]

    def to_csv(self) -> str:
        return "".join(",".join(r) + "\n" for r in self.to_words())


@dataclass(frozen=True)
class GridCheck:
    ok: bool
    cell: Optional[tuple] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_grid(grid: HomotopyGrid, base: Optional[int] = None) -> GridCheck:
    """Check that every row is a q-loop at the base and every column a q-chain."""
    rows = grid.rows
    if not rows or not rows[0]:
        return GridCheck(False, None, "empty grid")
    width = len(rows[0])
    for r, row in enumerate(rows):
        if len(row) != width:
            return GridCheck(False, (r, min(len(row), width)), "row length differs")
    if base is None:
        base = rows[0][0]
    sys_, q = grid.system, grid.q
    size = sys_.cayley.size
    for r, row in enumerate(rows):
        for c, x in enumerate(row):
            if not 0 <= x < size:
                return GridCheck(False, (r, c), "not a chamber")
            if c == 0 and x != base:
                return GridCheck(False, (r, c), "row does not start at the base chamber")
            if c > 0 and not _near(sys_, q, row[c - 1], x):
                return GridCheck(False, (r, c), f"not {q}-near its left neighbour")
            if r > 0 and not _near(sys_, q, rows[r - 1][c], x):
                return GridCheck(False, (r, c), f"not {q}-near the entry above")
        if row[-1] != base:
            return GridCheck(False, (r, width - 1), "row does not end at the base chamber")
    return GridCheck(True)


def _runs(row: Sequence[int]) -> list[int]:
    return [len(list(g)) for _, g in groupby(row)]


def _stretch_rows(rows: list, ref: int, target: list[int]) -> list:
    """Duplicate columns so the run lengths of ``rows[ref]`` become ``target``."""
    runs = _runs(rows[ref])
    cols = list(zip(*rows))
    out, c = [], 0
    for have, want in zip(runs, target):
        out.extend(cols[c:c + have])
        out.extend([cols[c + have - 1]] * (want - have))
        c += have
    return [tuple(col[i] for col in out) for i in range(len(rows))]


class GridBuilder:
    """Stack grids whose boundary rows are stretchings of the same loop."""

    def __init__(self, system: CoxeterSystem, q: int, first_row: Sequence[int]):
        self.system = system
        self.q = q
        self.rows = [tuple(first_row)]

    def append(self, block: Sequence[Sequence[int]]) -> None:
        block = [tuple(r) for r in block]
        if destutter(block[0]) != destutter(self.rows[-1]):
            raise LoopError("block does not start at a stretching of the current loop")
        target = [max(x, y) for x, y in zip(_runs(self.rows[-1]), _runs(block[0]))]
        self.rows = _stretch_rows(self.rows, -1, target)
        self.rows.extend(_stretch_rows(block, 0, target)[1:])

    def grid(self) -> HomotopyGrid:
        return HomotopyGrid(self.system, self.q, tuple(self.rows))


# -- moves ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Move:
    """One elementary homotopy.

    kind ``T1``: op ``insert`` repeats the chamber at ``pos``; ``remove``
    drops ``pos`` when it equals ``pos + 1``.
    kind ``T2``: op ``insert`` puts ``(c*s, c)`` after chamber ``c`` at
    ``pos``; ``remove`` deletes positions ``pos, pos + 1`` where the loop
    reads ``a, a*s, a``.
    kind ``T3``: replaces ``a, a*s, a*s*t`` at ``pos`` by ``a, a*t, a*t*s``.
    """

    kind: str
    pos: int
    op: str = ""
    gens: tuple = ()

    def inverse(self) -> "Move":
        if self.kind == "T3":
            return Move("T3", self.pos, "", self.gens[::-1])
        if self.kind == "T1":
            return Move("T1", self.pos, "remove" if self.op == "insert" else "insert")
        if self.op == "insert":
            return Move("T2", self.pos + 1, "remove", self.gens)
        return Move("T2", self.pos - 1, "insert", self.gens)

    def __str__(self) -> str:
        extra = ",".join(str(g) for g in self.gens)
        return f"{self.kind}:{self.op or 'swap'}@{self.pos}" + (f"[{extra}]" if extra else "")


def apply_move(loop: QLoop, move: Move) -> tuple[QLoop, list[tuple]]:
    sys_ = loop.system
    cd = sys_.cayley
    ch = list(loop.chambers)
    i = move.pos
    L = len(ch)

    def bad(msg: str) -> LoopError:
        return LoopError(f"{move}: {msg}")

    if move.kind == "T1":
        if not 0 <= i < L:
            raise bad("position out of range")
        if move.op == "insert":
            new = ch[:i + 1] + ch[i:]
            return QLoop(sys_, loop.q, tuple(new)), [tuple(new), tuple(new)]
        if move.op == "remove":
            if i + 1 >= L or ch[i] != ch[i + 1]:
                raise bad("no repeated chamber at this position")
            new = ch[:i] + ch[i + 1:]
            return QLoop(sys_, loop.q, tuple(new)), [tuple(ch), tuple(ch)]
        raise bad("unknown op")
    if move.kind == "T2":
        (s,) = move.gens
        if move.op == "insert":
            if not 0 <= i < L:
                raise bad("position out of range")
            a = ch[i]
            new = ch[:i + 1] + [cd.right[a][s], a] + ch[i + 1:]
            top = ch[:i + 1] + [a, a] + ch[i + 1:]
            return QLoop(sys_, loop.q, tuple(new)), [tuple(top), tuple(new)]
        if move.op == "remove":
            if not 1 <= i < L - 1:
                raise bad("position out of range")
            a = ch[i - 1]
            if ch[i + 1] != a or ch[i] != cd.right[a][s]:
                raise bad("loop does not read a, a*s, a here")
            new = ch[:i] + ch[i + 2:]
            bottom = ch[:i] + [a] + ch[i + 1:]
            return QLoop(sys_, loop.q, tuple(new)), [tuple(ch), tuple(bottom)]
        raise bad("unknown op")
    if move.kind == "T3":
        s, t = move.gens
        if s == t or sys_.m(s, t) != 2:
            raise bad("generators do not commute")
        if not 0 <= i < L - 2:
            raise bad("position out of range")
        a = ch[i]
        if ch[i + 1] != cd.right[a][s] or ch[i + 2] != cd.right[ch[i + 1]][t]:
            raise bad("loop does not read a, a*s, a*s*t here")
        at = cd.right[a][t]
        new = ch[:i + 1] + [at] + ch[i + 2:]
        top = ch[:i + 1] + [a] + ch[i + 1:]
        bottom = ch[:i + 1] + [at, ch[i + 2]] + ch[i + 2:]
        return QLoop(sys_, loop.q, tuple(new)), [tuple(top), tuple(bottom)]
    raise bad("unknown move kind")


@dataclass(frozen=True)
class MoveScript:
    moves: tuple

    def __len__(self) -> int:
        return len(self.moves)

    def inverse(self) -> "MoveScript":
        return MoveScript(tuple(m.inverse() for m in reversed(self.moves)))

    def __add__(self, other: "MoveScript") -> "MoveScript":
        return MoveScript(self.moves + other.moves)

    def counts(self) -> dict:
        out: dict = {}
        for m in self.moves:
            out[m.kind] = out.get(m.kind, 0) + 1
        return out


def replay(loop: QLoop, script: MoveScript) -> tuple[QLoop, HomotopyGrid]:
    """Apply every move in turn, stitching the fragments into one grid."""
    builder = GridBuilder(loop.system, loop.q, loop.chambers)
    cur = loop
    for mv in script.moves:
        cur, frag = apply_move(cur, mv)
        builder.append(frag)
    return cur, builder.grid()


def destutter_script(loop: QChain) -> MoveScript:
    moves, ch = [], list(loop.chambers)
    i = 0
    while i + 1 < len(ch):
        if ch[i] == ch[i + 1]:
            moves.append(Move("T1", i, "remove"))
            del ch[i]
        else:
            i += 1
    return MoveScript(tuple(moves))


def script_from_rewrites(rewrites: Iterable[tuple]) -> MoveScript:
    """Translate word rewrites on f(loop) into moves on the destuttered loop.

    ``("swap", j, s, t)`` exchanges letters j, j+1 and ``("cancel", j, s)``
    deletes them; letter j is the step from chamber j to chamber j+1.
    """
    moves = []
    for rw in rewrites:
        if rw[0] == "swap":
            _, j, s, t = rw
            moves.append(Move("T3", j, "", (s, t)))
        elif rw[0] == "cancel":
            _, j, s = rw
            moves.append(Move("T2", j + 1, "remove", (s,)))
        else:
            raise ValueError(f"unknown rewrite {rw[0]!r}")
    return MoveScript(tuple(moves))
