"""Named verification suites producing report records."""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from .arrangements import (build_k_parabolic, build_reference_arrangement, compare_arrangements,
                           galois_round_trips)
from .complex import DEFAULT_CELL_CAP, CellCapExceeded, build_two_complex
from .coxeter import CoxeterSystem
from .geometry import describe_standard
from .homotopy import (INCONCLUSIVE, TRIVIAL, check_certificate, contract_relator_grid,
                       decide_homotopic, h1_of_complex, normalize_to_gallery, pi1_presentation,
                       pi1_triviality_probe)
from .loops import QLoop, destutter, loop_of_word, verify_grid, word_of_loop
from .presentation import DEFAULT_COSET_CAP
from .relaxed import F, G, normal_form, random_kernel_word, relax, rs_abelianization

PASS, FAIL, SKIP = "pass", "fail", "skipped"
SUITES = ("galois", "arrangement-equalities", "theorem-3-3", "theorem-4-1", "k4-triviality")


@dataclass
class Record:
    name: str
    inputs: dict
    expected: object
    computed: object
    status: str
    runtime: float = field(default=0.0, compare=False)

    def to_json(self) -> dict:
        d = asdict(self)
        del d["runtime"]
        return d


@dataclass
class SuiteOptions:
    k: Optional[int] = None
    cell_cap: int = DEFAULT_CELL_CAP
    coset_cap: int = DEFAULT_COSET_CAP
    samples: int = 100
    seed: int = 0


class ResourceCap(RuntimeError):
    pass


def _timed(fn: Callable[[], Record]) -> Record:
    t = time.perf_counter()
    rec = fn()
    rec.runtime = time.perf_counter() - t
    return rec


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _skip(name: str, system: CoxeterSystem, reason: str) -> Record:
    return Record(name, {"system": system.label}, None, reason, SKIP)


# -- suites ----------------------------------------------------------------------------

def suite_galois(system: CoxeterSystem, opt: SuiteOptions) -> list[Record]:
    def run():
        fails, lat, par = galois_round_trips(system)
        computed = {"lattice_elements": lat, "parabolics": par, "failures": len(fails)}
        return Record("galois/round-trips", {"system": system.label}, {"failures": 0}, computed,
                      _status(not fails))
    return [_timed(run)]


def _arrangement_cases(system: CoxeterSystem) -> list[tuple]:
    """(k, family, h, expect_equal) pairs to compare for the classical types."""
    label = system.label
    n = system.rank
    if label.startswith("A"):
        return [(k, "k-equal", None, True) for k in range(3, n + 2)]
    if label.startswith("B"):
        return [(k, "B", k - 1, True) for k in range(3, n + 1)]
    if label.startswith("D"):
        out = [(3, "D", None, True)]
        for k in range(4, n + 1):
            out += [(k, "D", None, False), (k, "B", k - 1, True)]
        return out
    return []


def suite_arrangement_equalities(system: CoxeterSystem, opt: SuiteOptions) -> list[Record]:
    cases = _arrangement_cases(system)
    if opt.k is not None:
        cases = [c for c in cases if c[0] == opt.k]
    if not cases:
        return [_skip("arrangement-equalities", system, "no classical coordinate family for this type and k")]
    out = []
    for k, fam, h, expect in cases:
        def run(k=k, fam=fam, h=h, expect=expect):
            W = build_k_parabolic(system, k)
            R = build_reference_arrangement(system, fam, k, h)
            cmp = compare_arrangements(W, R)
            computed = {"equal": cmp.equal, "sizes": [len(W), len(R)]}
            if cmp.witness is not None:
                computed["witness"] = describe_standard(system, cmp.witness)
                computed["witness_side"] = cmp.side
            return Record(f"arrangement-equalities/{W.label}={R.label}",
                          {"system": system.label, "k": k, "family": fam, "h": h},
                          {"equal": expect}, computed, _status(cmp.equal == expect))
        out.append(_timed(run))
    return out


def suite_theorem_3_3(system: CoxeterSystem, opt: SuiteOptions) -> list[Record]:
    if system.rank != 3:
        return [_skip("theorem-3-3", system, "the lines-through-origin oracle needs rank 3")]

    def run():
        L = len(build_k_parabolic(system, 3))
        X = build_two_complex(system, system.rank - 2, opt.cell_cap)
        h1 = h1_of_complex(X)
        expected = {"b1": 2 * L - 1, "torsion": []}
        computed = {"b1": h1.free_rank, "torsion": list(h1.torsion), "lines": L}
        ok = h1.free_rank == 2 * L - 1 and not h1.torsion
        return Record("theorem-3-3/betti", {"system": system.label, "k": 3}, expected, computed, _status(ok))
    return [_timed(run)]


def _random_gallery_loop(system: CoxeterSystem, rng: random.Random, max_len: int) -> QLoop:
    """Random walk in the Cayley graph closed up by a reduced word back to the base,
    with a few chambers repeated."""
    cd = system.cayley
    n = system.rank
    while True:
        walk = [rng.randrange(n) for _ in range(rng.randrange(0, max_len // 2 + 1))]
        back = cd.words[cd.inverse[cd.evaluate(walk)]]
        word = tuple(walk) + tuple(back)
        if len(word) <= max_len:
            break
    ch = list(loop_of_word(system, word).chambers)
    for _ in range(rng.randrange(0, 4)):
        i = rng.randrange(len(ch))
        ch.insert(i, ch[i])
    return QLoop(system, system.rank - 2, tuple(ch))


def suite_theorem_4_1(system: CoxeterSystem, opt: SuiteOptions) -> list[Record]:
    out = []
    rsys = relax(system)

    def abel():
        X = build_two_complex(system, system.rank - 2, opt.cell_cap)
        h1 = h1_of_complex(X)
        rs = rs_abelianization(rsys).group
        return Record("theorem-4-1/abelianization", {"system": system.label},
                      {"free_rank": h1.free_rank, "torsion": list(h1.torsion)},
                      {"free_rank": rs.free_rank, "torsion": list(rs.torsion)},
                      _status(h1 == rs))
    out.append(_timed(abel))

    def fg():
        rng = random.Random(opt.seed)
        bad = 0
        for _ in range(opt.samples):
            w = random_kernel_word(system, rng, 30)
            if normal_form(rsys, F(G(rsys, w))) != normal_form(rsys, w):
                bad += 1
        return Record("theorem-4-1/F-after-G", {"system": system.label, "samples": opt.samples, "seed": opt.seed},
                      {"failures": 0}, {"failures": bad}, _status(bad == 0))
    out.append(_timed(fg))

    def gf():
        rng = random.Random(opt.seed + 1)
        bad = 0
        for _ in range(opt.samples):
            loop = _random_gallery_loop(system, rng, 20)
            back = G(rsys, F(loop))
            v = decide_homotopic(back, loop, rsys)
            if not v.equivalent or not check_certificate(back, loop, v.certificate):
                bad += 1
        return Record("theorem-4-1/G-after-F", {"system": system.label, "samples": opt.samples, "seed": opt.seed},
                      {"failures": 0}, {"failures": bad}, _status(bad == 0))
    out.append(_timed(gf))
    return out


def _random_q_loop(system: CoxeterSystem, q: int, rng: random.Random, steps: int) -> QLoop:
    """Random walk in Gamma^q, closed by a gallery back to the base."""
    cd = system.cayley
    n = system.rank
    offsets = [x for x in range(1, cd.size) if bin(cd.support[x]).count("1") <= n - q - 1]
    ch = [0]
    for _ in range(steps):
        ch.append(cd.mul(ch[-1], rng.choice(offsets)))
    for s in cd.words[cd.inverse[ch[-1]]]:
        ch.append(cd.right[ch[-1]][s])
    return QLoop(system, q, tuple(ch))


def suite_k4_triviality(system: CoxeterSystem, opt: SuiteOptions) -> list[Record]:
    n = system.rank
    k = opt.k if opt.k is not None else 4
    if not 3 < k <= n + 1:
        return [_skip("k4-triviality", system, f"needs 3 < k <= n+1, got k = {k}")]
    q = n - k + 1
    inputs = {"system": system.label, "k": k, "q": q}
    out = []

    def grids():
        bad, total = [], 0
        conj = [()] + [(s,) for s in range(n)]
        for s in range(n):
            for t in range(s + 1, n):
                for u in conj:
                    total += 1
                    g = contract_relator_grid(system, k, u, (s, t))
                    chk = verify_grid(g, 0)
                    if not chk or any(x != 0 for x in g.rows[-1]):
                        bad.append([system.format_word(u), system.names[s], system.names[t]])
        return Record("k4-triviality/relator-grids", inputs, {"failures": 0},
                      {"grids": total, "failures": len(bad), "failed": bad}, _status(not bad))
    out.append(_timed(grids))

    def galleries():
        rng = random.Random(opt.seed)
        bad = 0
        for _ in range(opt.samples):
            loop = _random_q_loop(system, q, rng, rng.randrange(1, 8))
            gal, grid = normalize_to_gallery(loop)
            ok = (verify_grid(grid, 0) and destutter(grid.rows[0]) == destutter(loop.chambers)
                  and grid.rows[-1] == gal.chambers)
            try:
                word_of_loop(gal)
            except ValueError:
                ok = False
            bad += not ok
        return Record("k4-triviality/normalize-to-gallery", {**inputs, "samples": opt.samples, "seed": opt.seed},
                      {"failures": 0}, {"failures": bad}, _status(bad == 0))
    out.append(_timed(galleries))

    def probe():
        X = build_two_complex(system, q, opt.cell_cap)
        P = pi1_presentation(X)
        res = pi1_triviality_probe(P, opt.coset_cap)
        status = PASS if res.status == TRIVIAL else INCONCLUSIVE if res.status == INCONCLUSIVE else FAIL
        computed = {"status": res.status, "generators": P.num_generators, "relators": len(P.relators),
                    "simplified": list(res.simplified), "detail": res.detail}
        return Record("k4-triviality/pi1-probe", {**inputs, "coset_cap": opt.coset_cap},
                      {"status": TRIVIAL}, computed, status)
    out.append(_timed(probe))
    return out


SUITE_FUNCS = {
    "galois": suite_galois,
    "arrangement-equalities": suite_arrangement_equalities,
    "theorem-3-3": suite_theorem_3_3,
    "theorem-4-1": suite_theorem_4_1,
    "k4-triviality": suite_k4_triviality,
}


def run_suite(name: str, system: CoxeterSystem, opt: SuiteOptions) -> list[Record]:
    if name not in SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    try:
        return SUITE_FUNCS[name](system, opt)
    except CellCapExceeded as e:
        raise ResourceCap(str(e)) from e


def overall_status(records: list[Record]) -> str:
    states = {r.status for r in records}
    if FAIL in states:
        return FAIL
    if INCONCLUSIVE in states:
        return INCONCLUSIVE
    return PASS
