"""Acceptance gate: one test per criterion, one PASS/FAIL line each.

Lines are collected into the terminal summary (see conftest.py) and also
printed directly when this file is run as a script.
"""

import io
import os
import sys
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

from sobriety import cli, formats, suite

sys.path.insert(0, str(Path(__file__).parent))
from test_cli import CASES, DATA, GOLDEN  # noqa: E402

_LINES = []


def _record(log, number, title, res, extra=""):
    verdict = "PASS" if res.passed else "FAIL"
    line = f"criterion {number:>2} [{verdict}] {title}: {res.checked} checked in {res.seconds:.1f}s; {res.detail}{extra}"
    print(line)
    log.append(line)
    _LINES.append(line)
    return res


def test_c01_oracle_equivalence(acceptance_log):
    res = suite.check_oracle_equivalence(suite.CRITERION_WINDOW)
    _record(acceptance_log, 1, "b_leq equals the window oracle", res)
    assert res.passed, res.detail
    assert res.checked == 9430**2
    assert res.seconds < 60


def test_c02_order_laws(acceptance_log):
    res = suite.check_order_laws(samples=10_000, seed=2024)
    _record(acceptance_log, 2, "partial-order laws on B, P1, P2, P1xP2", res)
    assert res.passed, res.detail
    assert res.checked == 40_000


def test_c03_codec_laws(acceptance_log):
    res = suite.check_codec_laws(max_component=6, max_len=3, max_letter=3)
    _record(acceptance_log, 3, "codec laws, exhaustive", res)
    assert res.passed, res.detail
    assert res.checked == 21 * 84


def test_c04_family_sup(acceptance_log):
    res = suite.check_family_sups(count=100, candidates=20, seed=2024)
    _record(acceptance_log, 4, "sup of directed families in B", res)
    assert res.passed, res.detail
    assert res.checked == 2000


def test_c05_a_closed(acceptance_log):
    res = suite.check_a_closed(count=200, seed=2024)
    _record(acceptance_log, 5, "A closed under coordinatewise sups", res)
    assert res.passed, res.detail


def test_c06_irreducible_subbase(acceptance_log):
    res = suite.check_irreducible_subbase(pairs=100, chains=50, seed=2024, budget=10_000)
    _record(acceptance_log, 6, "escapes from two subbasic closed sets; chains", res)
    assert res.passed, res.detail


def test_c07_not_principal(acceptance_log):
    res = suite.check_not_principal(count=100, seed=2024, budget=10_000)
    _record(acceptance_log, 7, "A is not a point closure", res)
    assert res.passed, res.detail


def test_c08_finite_sobriety(acceptance_log):
    res = suite.check_finite_sobriety(count=500, max_size=8, oracle_size=6, seed=2024)
    _record(acceptance_log, 8, "finite posets are sober", res)
    assert res.passed, res.detail


def test_c09_comparator(acceptance_log):
    res = suite.check_comparator(count=100, max_size=3, seed=2024, per_case=10.0)
    _record(acceptance_log, 9, "product topology equals up-set topology", res)
    assert res.passed, res.detail


def _cli_contract():
    res = suite.CheckResult("cli-contract", True, 0)
    seen_codes = set()
    for name, argv, code in CASES:
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            got = cli.run(argv)
        seen_codes.add(got)
        res.checked += 1
        text = out.getvalue().replace(str(DATA) + os.sep, "")
        if got != code:
            res.note(f"{name}: exit {got}, want {code}")
        if text != (GOLDEN / f"{name}.out").read_text(encoding="utf-8"):
            res.note(f"{name}: output differs from golden file")
    for name in ("diamond.poset", "chain2.poset", "antichain2.poset"):
        text = formats.dump_poset(formats.load_poset(DATA / name))
        res.checked += 1
        if formats.dump_poset(formats.parse_poset(text)) != text:
            res.note(f"{name}: poset round trip not exact")
    missing = {0, 1, 2, 64, 65} - seen_codes
    if missing:
        res.note(f"exit codes never exercised: {sorted(missing)}")
    return res


def test_c10_cli_contract(acceptance_log):
    import time

    t0 = time.perf_counter()
    res = _cli_contract()
    res.seconds = time.perf_counter() - t0
    _record(acceptance_log, 10, "CLI golden files, round trips, exit codes", res)
    assert res.passed, res.detail


if __name__ == "__main__":
    log = []
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                fn(log)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
