"""Integer Smith normal form for sparse relation matrices.

Only the diagonal is needed (rank and invariant factors), so no transform
matrices are tracked.  Pivots are chosen with least absolute value to keep
entries small.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus torsion Z/d for each d in ``torsion``."""

    free_rank: int
    torsion: tuple

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def _normalize_diagonal(diag: list[int]) -> list[int]:
    """Turn any nonzero diagonal into invariant factors d1 | d2 | ..."""
    d = sorted(abs(x) for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                a, b = d[i], d[j]
                g = gcd(a, b)
                if g != a:
                    d[i], d[j] = g, a * b // g
                    changed = True
        d.sort()
    return d


def smith_diagonal(rows: Iterable[Mapping[int, int]]) -> list[int]:
    """Nonzero invariant factors of the matrix with the given sparse rows."""
    m = {}
    for i, r in enumerate(rows):
        r = {c: v for c, v in r.items() if v}
        if r:
            m[i] = r
    diag = []
    while m:
        # least |entry| overall
        best = None
        for i, r in m.items():
            for c, v in r.items():
                if best is None or abs(v) < best[0]:
                    best = (abs(v), i, c)
                    if best[0] == 1:
                        break
            if best[0] == 1:
                break
        _, pi, pc = best
        while True:
            a = m[pi][pc]
            dirty = False
            # clear column pc in other rows
            for i in list(m):
                if i == pi or pc not in m[i]:
                    continue
                r = m[i]
                f = r[pc] // a
                for c, v in m[pi].items():
                    nv = r.get(c, 0) - f * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
                if pc in r:
                    dirty = True
                if not r:
                    del m[i]
            # clear row pi by column operations; column pc is zero elsewhere
            # when not dirty, so only row pi changes
            prow = m[pi]
            if not dirty:
                for c in list(prow):
                    if c == pc:
                        continue
                    nv = prow[c] - (prow[c] // a) * a
                    if nv:
                        prow[c] = nv
                        dirty = True
                    else:
                        del prow[c]
            if not dirty:
                diag.append(abs(a))
                del m[pi]
                break
            # choose a smaller pivot in the offending row or column
            cand = [(abs(v), pi, c) for c, v in m[pi].items() if c != pc]
            cand += [(abs(r[pc]), i, pc) for i, r in m.items() if i != pi and pc in r]
            _, pi, pc = min(cand)
    return _normalize_diagonal(diag)


def abelian_invariants(rows: Sequence[Mapping[int, int]], ncols: int) -> AbelianGroup:
    diag = smith_diagonal(rows)
    return AbelianGroup(ncols - len(diag), tuple(d for d in diag if d != 1))


def dense_rows(matrix: Sequence[Sequence[int]]) -> list[dict]:
    return [{j: v for j, v in enumerate(row) if v} for row in matrix]
