"""Acceptance suite: twelve criteria, one test and one PASS/FAIL line each.

Each test prints "[Cxx] PASS ..." or "[Cxx] FAIL ..." with the measured
evidence before asserting, so the per-criterion verdict survives in the
captured output either way.  Criteria 7 and 9 are asserted exactly as
stated; at these scales they fail for reasons documented in the assertion
messages, and the failures are expected and deliberate.
"""

import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

import oracle
from gehman.chaoscan import (
    VERDICT_DISTAL,
    VERDICT_LY,
    certified_b_distality,
    classify_pair,
    nested_limit_codes,
    omega_scrambled_check,
    sclosed_limit_check,
    scrambled_scan,
    sturmian_no_LY_check,
)
from gehman.coding import (
    PeriodicStream,
    dist,
    factor_count_profile,
    lcp,
    shift,
    sturmian_A,
)
from gehman.dendrite import (
    ROOT,
    End,
    Interior,
    apply_f,
    family_model,
    full_binary_model,
    path_dist,
    steps_to_root,
)
from gehman.diamond import (
    diamond,
    omega_lower_check,
    omega_upper_check,
    position_decode,
)
from gehman.exactnum import QuadSurd
from gehman.family import (
    DEFAULT_CODES,
    a_stream,
    alpha_of,
    b_stream,
    x_stream,
)

HORIZON = 1_000_000
RESOLUTION = 30
ORACLE_HORIZON = 10_000


def report(tag: str, ok: bool, detail: str) -> None:
    line = f"[{tag}] {'PASS' if ok else 'FAIL'} {detail}"
    print(line)
    assert ok, line


def test_c01_exactness_against_interval_oracle():
    mismatches = []
    for code in DEFAULT_CODES:
        if sturmian_A(alpha_of(code), ORACLE_HORIZON) != oracle.oracle_A_word(
            code, ORACLE_HORIZON
        ):
            mismatches.append(("A", code))
        if a_stream(code).word(ORACLE_HORIZON) != oracle.oracle_a_word(
            code, ORACLE_HORIZON
        ):
            mismatches.append(("a", code))
        if b_stream(code).word(ORACLE_HORIZON) != oracle.oracle_b_word(
            code, ORACLE_HORIZON
        ):
            mismatches.append(("b", code))
    report(
        "C01",
        not mismatches,
        f"24 words x {ORACLE_HORIZON} symbols vs 256-bit interval oracle, "
        f"mismatches={mismatches or 0}",
    )


def test_c02_diamond_layout_and_decode():
    prefix = diamond(PeriodicStream("0"), PeriodicStream("1")).word(12)
    tags = []
    k = 0
    while len(tags) < 100_000:
        k += 1
        tags.extend(("A", k, j) for j in range(1, k + 1))
        tags.extend(("B", k, j) for j in range(1, k + 1))
    bad = sum(
        1 for i in range(1, 100_001) if tuple(position_decode(i)) != tags[i - 1]
    )
    ok = prefix == "010011000111" and bad == 0
    report("C02", ok, f"prefix={prefix}, decode mismatches over 1e5: {bad}")


def test_c03_lower_inclusion_all_codes():
    failing = {}
    for code in DEFAULT_CODES:
        rep = omega_lower_check(
            a_stream(code),
            b_stream(code),
            20,
            HORIZON,
            tail_start=10_000,
            min_count=5,
            source_horizon=10_000,
        )
        if not rep.passed:
            failing[code] = (rep.status, len(rep.violations))
    report(
        "C03",
        not failing,
        f"source 20-factors recur >=5x beyond 1e4 in x_s over 1e6; "
        f"failures={failing or 0}",
    )


def test_c04_upper_inclusion_all_codes():
    failing = {}
    for code in DEFAULT_CODES:
        rep = omega_upper_check(
            a_stream(code),
            b_stream(code),
            20,
            HORIZON,
            tail_start=10_000,
            min_count=5,
            source_horizon=10_000,
            subject=x_stream(code),
        )
        if not rep.passed:
            failing[code] = rep.violations[:3]
    report(
        "C04",
        not failing,
        f"recurrent 20-factors of x_s all classified, zero 'none'; "
        f"failures={failing or 0}",
    )


def test_c05_family_pair_is_li_yorke():
    bad = {}
    proximal_at = {}
    for code in DEFAULT_CODES:
        pv = classify_pair(x_stream(code), a_stream(code), HORIZON, RESOLUTION)
        exact_seed = lcp(shift(x_stream(code), 870), a_stream(code), 31)
        if (
            pv.verdict != VERDICT_LY
            or pv.proximal_evidence is None
            or pv.nonasymptotic_evidence is None
            or exact_seed < 30
        ):
            bad[code] = (pv.verdict, exact_seed)
        else:
            proximal_at[code] = pv.proximal_evidence[0]
    report(
        "C05",
        not bad,
        f"(x_s,a_s) LY-candidate at (1e6,30), exact lcp>=30 at shift 870; "
        f"first proximal n={proximal_at}, failures={bad or 0}",
    )


def test_c06_no_scrambled_triple():
    triple_bad = {}
    for code in DEFAULT_CODES:
        rep = scrambled_scan(
            [x_stream(code), a_stream(code), b_stream(code)], HORIZON, RESOLUTION
        )
        if rep.max_clique_size != 2:
            triple_bad[code] = rep.max_clique_size
    points = [x_stream(c) for c in DEFAULT_CODES]
    certs = {}
    for i, s in enumerate(DEFAULT_CODES):
        for t in DEFAULT_CODES[i + 1 :]:
            certs[(f"x:{s}", f"x:{t}")] = certified_b_distality(s, t)
    xrep = scrambled_scan(points, HORIZON, RESOLUTION, certificates=certs)
    uncertified = [
        (r.x_label, r.y_label)
        for r in xrep.records
        if r.certificate is None or not r.bound_check["ok"]
    ]
    ok = not triple_bad and not xrep.ly_edges and not uncertified
    report(
        "C06",
        ok,
        f"triples clique=2 (bad={triple_bad or 0}); x-scan edges={xrep.ly_edges}, "
        f"clique={xrep.max_clique_size}, bound violations={uncertified or 0}",
    )


def test_c07_omega_scrambled_every_pair():
    failures = []
    for i, s in enumerate(DEFAULT_CODES):
        for t in DEFAULT_CODES[i + 1 :]:
            rep = omega_scrambled_check(s, t, range(5, 21), horizon=HORIZON)
            bad_rows = [
                (r.n, r.diff_st, r.diff_ts)
                for r in rep.rows
                if not r.passed
            ]
            if bad_rows:
                failures.append(((s, t), bad_rows[:3]))
    report(
        "C07",
        not failures,
        f"{len(failures)}/28 pairs violate 'both omega-differences >= 1' at "
        f"small n. The recurrent 5- and 6-factor sets of distinct x-points "
        f"coincide (nearby angles shape identical short languages; e.g. pair "
        f"{failures[0][0] if failures else '-'} rows (n,diff_st,diff_ts)="
        f"{failures[0][1] if failures else '-'}), and for neighbour codes the "
        f"one-sided difference stays 0 through n=17. A finite-horizon "
        f"consequence of the construction, not an implementation defect: "
        f"first failing rows frozen in tests/test_chaoscan.py and the CLI "
        f"omega tests.",
    )


def test_c08_sturmian_shift_pairs_all_distal():
    rep = sturmian_no_LY_check(QuadSurd(0, Fraction(1, 4), 2), 50, 100_000, 20)
    ly = [r for r in rep.pairs if r.verdict == VERDICT_LY]
    missing_cert = [r for r in rep.pairs if r.K < 1]
    not_ok = [r for r in rep.pairs if r.verdict != VERDICT_DISTAL or not r.ok]
    ok = rep.passed and not ly and not missing_cert and not not_ok
    report(
        "C08",
        ok,
        f"{len(rep.pairs)} shift pairs, LY={len(ly)}, "
        f"uncertified={len(missing_cert)}, violations={len(not_ok)}, "
        f"max K={max(r.K for r in rep.pairs)}",
    )


def test_c09_sclosed_nested_family():
    rep = sclosed_limit_check(nested_limit_codes(10), horizon=100_000)
    report(
        "C09",
        rep.status == "pass",
        f"nested-family lcps {rep.lcps} are not strictly increasing: the "
        f"k-th angle differs from the limit by 4^-(k+1), but the coding "
        f"lcp is controlled by how close the orbit comes to a cut point "
        f"before the angle gap accumulates, which plateaus (11, 11) and "
        f"(407, 407) across consecutive k. Faithful to the stated check; "
        f"monotone angle convergence does not force strictly monotone "
        f"coding agreement at a fixed horizon.",
    )


def test_c10_dendrite_exactness():
    rng = random.Random(20240817)
    model = family_model(horizon=10_000)
    full = full_binary_model()

    def random_accepted_address() -> str:
        while True:
            w = ""
            target = rng.randint(1, 20)
            while len(w) < target:
                options = [c for c in "01" if model.accepts(w + c)]
                if not options:
                    break
                w += rng.choice(options)
            if w:
                return w

    steps_bad = 0
    for _ in range(1000):
        w = random_accepted_address()
        t = Fraction(rng.randint(1, 7), 8)
        pt = Interior(w, t)
        if steps_to_root(pt) != len(w):
            steps_bad += 1
            continue
        for _ in range(len(w)):
            pt = apply_f(model, pt)
        if pt is not ROOT:
            steps_bad += 1

    end_ok = True
    for code in ("000", "111"):
        image = apply_f(model, End(x_stream(code)))
        if image.stream.word(1000) != shift(x_stream(code), 1).word(1000):
            end_ok = False

    lipschitz_bad = 0
    for _ in range(1000):
        w = random_accepted_address()
        if len(w) < 2:
            w += "0" if model.accepts(w + "0") else "1"
        t1 = Fraction(rng.randint(1, 15), 16)
        t2 = Fraction(rng.randint(1, 15), 16)
        u, v = Interior(w, t1), Interior(w, t2)
        d0 = path_dist(u, v).value
        d1 = path_dist(apply_f(full, u), apply_f(full, v)).value
        if d1 != 2 * d0:
            lipschitz_bad += 1

    ratio_bad = 0
    pairs = 0
    while pairs < 100:
        wu = "".join(rng.choice("01") for _ in range(rng.randint(1, 6)))
        wv = "".join(rng.choice("01") for _ in range(rng.randint(1, 6)))
        x, y = PeriodicStream(wu), PeriodicStream(wv)
        sd = dist(x, y, 64)
        if not sd.exact:
            continue
        pairs += 1
        if path_dist(End(x), End(y), cap=64).value != 4 * sd.value:
            ratio_bad += 1

    ok = steps_bad == 0 and end_ok and lipschitz_bad == 0 and ratio_bad == 0
    report(
        "C10",
        ok,
        f"steps_to_root exact on 1000 addresses (bad={steps_bad}); "
        f"f|E = shift to 1e3 ({end_ok}); Lipschitz x2 on 1000 same-arc "
        f"pairs (bad={lipschitz_bad}); End metric ratio 4 on 100 pairs "
        f"(bad={ratio_bad})",
    )


def test_c11_complexity_bound():
    over = {}
    exact = True
    for code in DEFAULT_CODES:
        profile = factor_count_profile(a_stream(code), 50, HORIZON)
        for n, p in enumerate(profile, start=1):
            if p > 2 * n:
                over[(code, n)] = p
            if p != 2 * n:
                exact = False
    report(
        "C11",
        not over,
        f"p(n) <= 2n for n=1..50 on all 8 a-streams at 1e6 "
        f"(equality everywhere: {exact}); violations={over or 0}",
    )


CLI_SUITE = [
    ["gen", "x:000", "12"],
    ["gen", "A:0/1+1/4*sqrt(2)", "5"],
    ["diamond", "000", "--factor-len", "8", "--horizon", "60000"],
    ["pair", "x:000", "a:000", "--horizon", "20000", "--resolution", "30"],
    ["pair", "b:000", "b:111", "--horizon", "5000", "--resolution", "10"],
    ["scan", "--codes-inline", "000,011,101", "--horizon", "5000",
     "--resolution", "10"],
    ["scan", "--codes-inline", "000,111", "--include-limits",
     "--horizon", "20000", "--resolution", "20"],
    ["omega", "000", "111", "--factor-len", "8..10", "--horizon", "100000"],
    ["sturmian-check", "--max-shift", "6", "--horizon", "10000",
     "--resolution", "20"],
    ["sturmian-check", "--max-shift", "6", "--format", "csv",
     "--horizon", "10000", "--resolution", "20"],
    ["sclosed-check", "--codes-inline", "1,01,001,0001", "--horizon", "10000"],
    ["dendrite", "iterate", "int:101:1/3", "--language", "full"],
    ["dendrite", "graph", "--language", "full", "--depth", "3"],
    ["dendrite", "check"],
]


def run_cli_suite() -> bytes:
    chunks = []
    for args in CLI_SUITE:
        p = subprocess.run(
            [sys.executable, "-m", "gehman.cli", *args],
            capture_output=True,
            timeout=600,
        )
        chunks.append(" ".join(args).encode())
        chunks.append(f" rc={p.returncode}\n".encode())
        chunks.append(p.stdout)
    return b"".join(chunks)


def test_c12_cli_determinism():
    first = run_cli_suite()
    second = run_cli_suite()
    report(
        "C12",
        first == second,
        f"two runs of the {len(CLI_SUITE)}-command CLI suite: "
        f"{len(first)} bytes, byte-identical={first == second}",
    )
