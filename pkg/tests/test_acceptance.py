"""Acceptance criteria, one test per criterion.

Each test records a one-line PASS/FAIL verdict; ``conftest.py`` prints the
lines at the end of the run.  ``python3 tests/test_acceptance.py`` runs the
same checks without pytest.
"""
import contextlib
import io
import itertools
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from udmkit.cli import main as cli_main
from udmkit.codec import channel_erase, decode_gaussian, decode_newton, encode_matrix, op_count_profile, sample_pattern
from udmkit.formats import read_family
from udmkit.gf import field_new
from udmkit.linalg import MatrixGF, identity_NK, rank, reversal_NK
from udmkit.transforms import reduce, tensor_power
from udmkit.udm import UdmFamily, check_mds_zeroth_rows, construct_pascal, construct_q_plus_2, verify

from conftest import EX22, SMALL_FIELDS
from hasse_props import PROPERTIES

RESULTS: dict[int, str] = {}

# the three check matrices displayed for the L=4, N=K=3 example
DISPLAYED = {
    (0, 0, 3, 0): [[1, 1, 1], [0, 1, 2], [0, 0, 1]],
    (0, 0, 1, 2): [[1, 1, 1], [1, 2, 1], [0, 1, 1]],
    (1, 1, 0, 1): [[1, 0, 0], [0, 0, 1], [1, 2, 1]],
}


def grid():
    for q in SMALL_FIELDS:
        for L in range(2, q + 2):
            for N in range(1, 5):
                for K in range(N, min(L * N, 8) + 1):
                    yield L, N, K, q


def record(num, title, ok, detail, elapsed, limit):
    within = elapsed < limit
    verdict = "PASS" if ok and within else "FAIL"
    RESULTS[num] = f"[{verdict}] criterion {num:2d}: {title}: {detail} ({elapsed:.2f}s, limit {limit:g}s)"
    print(RESULTS[num])
    return ok and within


def timed(fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


# -- criteria -------------------------------------------------------------

def crit_1():
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(["construct", "--L", "4", "--N", "3", "--K", "3", "--q", "3", "--alpha", "2"])
    fam = read_family(buf.getvalue())
    got = [M.tolist() for M in fam.matrices]
    return code == 0 and got == EX22, f"exit {code}, matrices {'match' if got == EX22 else 'differ'}"


def crit_2():
    F = field_new(3)
    fam = UdmFamily(F, tuple(MatrixGF(F, m) for m in EX22))
    rep = verify(fam)
    ranks = {v: rank(fam.stacked(v)) for v in DISPLAYED}
    shown = all(fam.stacked(v).tolist() == m for v, m in DISPLAYED.items())
    ok = rep.passed and rep.patterns_checked == 20 and shown and set(ranks.values()) == {3}
    return ok, f"{rep.summary()}, displayed ranks {sorted(ranks.values())}, stacks match: {shown}"


def crit_3():
    n = fails = 0
    first = None
    for L, N, K, q in grid():
        rep = verify(construct_pascal(L, N, K, q))
        n += 1
        if not rep.passed:
            fails += 1
            first = first or ((L, N, K, q), rep.first_failure)
    return fails == 0, f"{n} parameter sets, {fails} failures" + (f", first {first}" if first else "")


def crit_4():
    F = field_new(2)
    I2, J2 = identity_NK(F, 2, 2), reversal_NK(F, 2, 2)
    mats = [MatrixGF(F, [bits[:2], bits[2:]]) for bits in itertools.product(range(2), repeat=4)]
    found = sum(verify(UdmFamily(F, (I2, J2, A2, A3))).passed for A2 in mats for A3 in mats)
    return found == 0, f"{len(mats) ** 2} candidate pairs, {found} UDM families"


def crit_5():
    fam = construct_q_plus_2(4)
    rep = verify(fam)
    mds = check_mds_zeroth_rows(fam)
    return fam.params == (6, 1, 3, 4) and rep.passed and mds, f"params {fam.params}, {rep.summary()}, MDS {mds}"


def crit_6():
    F = field_new(3)
    fam = UdmFamily(F, tuple(MatrixGF(F, m) for m in EX22))
    sq = tensor_power(fam, 2)
    rep = verify(sq)
    same = sq.matrices == construct_pascal(4, 9, 9, 3).matrices
    ok = sq.params == (4, 9, 9, 3) and rep.passed and rep.patterns_checked == 220 and same
    return ok, f"params {sq.params}, {rep.summary()}, equals direct construction: {same}"


def crit_7():
    n = bad = 0
    for q in SMALL_FIELDS:
        for L in range(2, q + 2):
            for N in range(2, 5):
                n += 1
                bad += reduce(construct_pascal(L, N, N, q)).matrices != construct_pascal(L, N - 1, N - 1, q).matrices
    return bad == 0, f"{n} families, {bad} mismatches"


def crit_8():
    fam = construct_pascal(4, 3, 3, 3, alpha=2)
    betas = fam.betas()
    bad = cases = 0
    for u in itertools.product(range(3), repeat=3):
        for v in itertools.product(range(4), repeat=4):
            if sum(v) != 3:
                continue
            out = channel_erase(encode_matrix(fam, u), v, fam.field)
            cases += 1
            bad += not (decode_newton(out, betas, 3) == decode_gaussian(fam, out) == list(u))
    rng = random.Random(20240)
    cache = {}
    params = list(grid())
    draws = 0
    for _ in range(10_000):
        L, N, K, q = rng.choice(params)
        if (L, N, K, q) not in cache:
            f = construct_pascal(L, N, K, q)
            cache[L, N, K, q] = (f, f.betas())
        f, b = cache[L, N, K, q]
        v = sample_pattern(L, N, K, rng, rng.choice(["exact", "atleast"]))
        u = [rng.randrange(q) for _ in range(K)]
        out = channel_erase(encode_matrix(f, u), v, f.field)
        draws += 1
        bad += not (decode_newton(out, b, K) == decode_gaussian(f, out) == u)
    return bad == 0 and cases == 540, f"{cases} exhaustive + {draws} random cases, {bad} disagreements"


def crit_9():
    rows = op_count_profile([16, 32, 64], trials=10, seed=1, q=127)
    n_r = [b.newton_mean / a.newton_mean for a, b in zip(rows, rows[1:])]
    g_r = [b.gaussian_mean / a.gaussian_mean for a, b in zip(rows, rows[1:])]
    ok = all(3 <= r <= 5.5 for r in n_r) and all(6 <= r <= 10 for r in g_r)
    fmt = lambda rs: "/".join(f"{r:.2f}" for r in rs)  # noqa: E731
    return ok, f"Newton ratios {fmt(n_r)} in [3,5.5], Gaussian ratios {fmt(g_r)} in [6,10]"


def crit_10():
    cases = 1000
    failures = {}
    for name, check in PROPERTIES.items():
        rng = random.Random(f"hasse:{name}")
        failures[name] = sum(not check(rng) for _ in range(cases))
    total = sum(failures.values())
    return total == 0, f"{len(PROPERTIES)} properties x {cases} cases, {total} failures"


CRITERIA = [
    (1, "construct CLI reproduces the L=4 GF(3) example", crit_1, 1),
    (2, "verifier passes the example with 20 patterns", crit_2, 1),
    (3, "Pascal construction grid verifies", crit_3, 300),
    (4, "no (4,2,2,2) UDMs over GF(2)", crit_4, 1),
    (5, "(q+2,1,3,q) family for q=4", crit_5, 1),
    (6, "tensor square is the (4,9,9,3) Pascal family", crit_6, 30),
    (7, "reduction matches smaller construction", crit_7, 10),
    (8, "Newton and Gaussian decoders agree with u", crit_8, 60),
    (9, "operation-count growth", crit_9, 60),
    (10, "Hasse derivative and Taylor properties", crit_10, 30),
]


@pytest.mark.parametrize("num,title,fn,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, limit):
    ok, detail, elapsed = timed(fn)
    assert record(num, title, ok, detail, elapsed, limit), RESULTS[num]


if __name__ == "__main__":
    results = [record(num, title, *timed(fn), limit) for num, title, fn, limit in CRITERIA]
    sys.exit(0 if all(results) else 1)
