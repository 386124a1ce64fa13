"""The twelve acceptance criteria, each with its time limit.

Each test prints a PASS/FAIL line; the lines are repeated in the pytest
terminal summary.  Run ``python3 tests/test_acceptance.py`` to see them alone.
"""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from tangentcodes import suites


def _run(number, title, limit, fn, check):
    t0 = time.perf_counter()
    report = fn()
    elapsed = time.perf_counter() - t0
    problems = check(report)
    if elapsed >= limit:
        problems.append(f"took {elapsed:.2f} s, limit {limit} s")
    status = "FAIL" if problems else "PASS"
    line = f"{status} criterion {number:2d}: {title} ({elapsed:.2f} s / {limit} s)"
    if problems:
        line += " - " + "; ".join(problems)
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert not problems, line
    return report


def _expect(cond, msg, out):
    if not cond:
        out.append(msg)


def test_01_hamming_char_two():
    def check(r):
        out = []
        _expect(r["binary"]["points"] == 16, f"|X(GF(2))| = {r['binary']['points']}", out)
        _expect(r["binary"]["hamming_code"] == 16, "tangent code differs from [7,4,3] somewhere", out)
        return out
    _run(1, "Hamming variety q=2 r=3", 5, suites.hamming, check)


def test_02_hamming_odd_char():
    def check(r):
        t = r["ternary"]
        out = []
        _expect(t["points"] == 9, f"|X(GF(3))| = {t['points']}", out)
        _expect(t["hamming_points"] == 3 * 2 ** 1, f"{t['hamming_points']} Hamming points", out)
        _expect(t["word_everywhere"] == t["points"], "universal word missing from a tangent code", out)
        return out
    _run(2, "Hamming variety q=3 r=2", 5, suites.hamming, check)


def test_03_from_code():
    def check(r):
        out = []
        _expect(r["origin_is_code"], "T_0 differs from C", out)
        _expect(r["sampled"] == 200 and r["sigma_word"] == 200, f"sigma word at {r['sigma_word']}/200", out)
        _expect(r["hamming_params"] > 0, "no sampled [7,4,3] tangent code", out)
        return out
    _run(3, "variety from the [7,4,3] code", 30, lambda: suites.from_code(0, 200), check)


def test_04_interpolation():
    def check(r):
        out = []
        _expect(r["jacobian_ok"] == 4, f"Jacobian matches at {r['jacobian_ok']}/4", out)
        _expect(r["vanishing_points"] == 32, f"vanishes at {r['vanishing_points']}/32", out)
        return out
    _run(4, "interpolated code family", 5, lambda: suites.interpolate(0, 4), check)


def test_05_decoder_round_trip():
    def check(r):
        out = []
        for name, st in r["varieties"].items():
            _expect(st["trials"] == 700 and st["success"] == 700,
                    f"{name}: {st['success']}/{st['trials']}", out)
        _expect(len(r["varieties"]) == 2, "expected two varieties", out)
        return out
    _run(5, "decoder round trip t=1", 60, lambda: suites.decode_roundtrip(0, 20, 5), check)


def test_06_duality():
    def check(r):
        out = []
        _expect(r["varieties"] == 50 and r["dimension_ok"] == 50, f"dimension ok {r['dimension_ok']}", out)
        _expect(r["combinations"] == 1000 and r["row_space_ok"] == 1000, f"row space {r['row_space_ok']}", out)
        return out
    _run(6, "tangent and gradient duality", 30, lambda: suites.duality(0, 50, 20), check)


def test_07_weight_identity():
    def check(r):
        out = []
        _expect(r["codes"] == 100, "expected 100 codes", out)
        _expect(r["equal"] == r["gammas"] > 0, f"{r['equal']}/{r['gammas']} equal", out)
        return out
    _run(7, "punctured minimum-weight words", 60, lambda: suites.weights(0, 100), check)


def test_08_operations():
    def check(r):
        out = []
        for name in ("circle", "twisted cubic", "hamming"):
            st = r["varieties"][name]
            good = st["points"] == st["extension"] == st["direct_sum"] == st["fibered"] == 20
            _expect(good, f"{name}: {st}", out)
        return out
    _run(8, "extension, direct sum, fibered product", 60, lambda: suites.ops(0, 20), check)


def test_09_isometries():
    def check(r):
        out = []
        _expect(r["interpolated"] == 5, f"differentials match at {r['interpolated']}/5", out)
        _expect(r["points"] == 20 and r["weight_ok"] == r["vectors"] == 2000, f"weights {r['weight_ok']}", out)
        return out
    _run(9, "isometry interpolation and weights", 10, lambda: suites.isometry(0, 20, 100), check)


def test_10_loci():
    def check(r):
        out = []
        _expect(r["agree"] == r["checks"] > 0, f"{r['agree']}/{r['checks']} agree", out)
        _expect(r["members"] > 0 and r["non_members"] > 0, "loci are trivial", out)
        return out
    _run(10, "minimum-distance loci over GF(4)", 30, lambda: suites.loci(0, (1, 2)), check)


def test_11_deformation():
    def check(r):
        out = []
        _expect(r["on_variety"] == 100, f"a on X_gamma {r['on_variety']}/100", out)
        _expect(r["all_ok"] >= 90, f"{r['all_ok']}/100 good samples", out)
        return out
    _run(11, "conic deformation sampling", 60, lambda: suites.deform(0, 100, 90), check)


def test_12_near_mds():
    def check(r):
        out = []
        _expect(r["codes"] == 100 and r["agree"] == 100, f"{r['agree']}/100 agree", out)
        _expect(0 < r["near_mds"] < 100, "only one truth value occurred", out)
        return out
    _run(12, "near-MDS rank criterion", 30, lambda: suites.nmds(0, 100), check)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
