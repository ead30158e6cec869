"""Acceptance gate: one test per pinned criterion, one printed line each.

Each test prints `CRITERION n: PASS/FAIL - summary` on the real stdout so
the gate is readable even under output capture.
"""

import importlib.util
import json
import time
from contextlib import contextmanager
from pathlib import Path

from sullivan.cli import main
from sullivan.cohomology import betti_table
from sullivan.pipeline import INTEGRAL_FLAG, analyze, find_entry, reproduce


@contextmanager
def criterion(capsys, num, summary):
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"CRITERION {num}: FAIL - {summary}", flush=True)
        raise
    with capsys.disabled():
        print(f"CRITERION {num}: PASS - {summary}", flush=True)


# pinned elliptic rank vectors by formal dimension, canonical order
PINNED_VECTORS = {
    2: ["{2:1, 3:1}"],
    3: ["{3:1}"],
    4: ["{4:1, 7:1}", "{2:1, 5:1}", "{2:2, 3:2}"],
    5: ["{5:1}", "{2:1, 3:2}"],
    6: ["{6:1, 11:1}", "{3:2}", "{2:1, 7:1}", "{2:1, 3:1, 4:1, 7:1}",
        "{2:2, 3:1, 5:1}", "{2:3, 3:3}"],
    7: ["{7:1}", "{3:1, 4:1, 7:1}", "{2:1, 3:1, 5:1}", "{2:2, 3:3}"],
}


def fiber_map(report, base_name):
    entry = next(e for e in report.entries if e.name == base_name)
    return {str(v.fiber): v for v in entry.verdicts}


def scan_row(cert, degree):
    return next(r for r in cert.detail["scan"]["rows"] if r["degree"] == degree)


def test_criterion_1_pinned_enumeration(capsys):
    with criterion(capsys, 1, "pruned enumeration reproduces all 17 pinned "
                              "rank vectors for dims 2..7 inside the budget"):
        started = time.monotonic()
        produced = {}
        for n in range(2, 8):
            code = main(["elliptic", "enumerate", "--dim", str(n)])
            out = capsys.readouterr().out
            assert code == 0
            produced[n] = out
        elapsed = time.monotonic() - started
        for n, vectors in PINNED_VECTORS.items():
            expected = "".join(v + "\n" for v in vectors)
            assert produced[n] == expected, f"dim {n} mismatch"
        assert sum(len(v) for v in PINNED_VECTORS.values()) == 17
        assert elapsed < 300, f"enumeration took {elapsed:.1f}s"


def test_criterion_2_fiber_cases_over_s3(capsys):
    with criterion(capsys, 2, "both fiber cases over the 3-sphere base are "
                              "killed as pinned and the dim<=6 sweep leaves "
                              "exactly four bases"):
        report = analyze("eschenburg", 6)
        fibers = fiber_map(report, "S3")
        assert sorted(fibers) == ["{2:1, 5:1}", "{2:2, 3:1, 5:1}"]

        first = fibers["{2:1, 5:1}"]
        assert first.status == "killed"
        assert first.certificate.kind == "relative-model-cohomology"
        row = scan_row(first.certificate, 4)
        assert (row["computed"], row["required"]) == (1, 0)
        assert row["witnesses"] == ["z2^2"]

        second = fibers["{2:2, 3:1, 5:1}"]
        assert second.status == "killed"
        assert second.certificate.kind == "dimension-formula"
        assert second.certificate.detail["computed"] == 6
        assert second.certificate.detail["required"] == 4

        assert [e.name for e in report.survivors] == ["S2", "CP2", "S5", "S2xCP2"]


def test_criterion_3_fiber_cases_over_s2(capsys):
    with criterion(capsys, 3, "the three pinned verdicts over the 2-sphere "
                              "hold exactly (one extra sequence-consistent "
                              "case is dimension-killed)"):
        report = analyze("eschenburg", 3)
        fibers = fiber_map(report, "S2")

        big = fibers["{2:1, 3:1, 5:1}"]
        assert big.status == "killed"
        assert big.certificate.kind == "dimension-formula"
        assert big.certificate.detail["computed"] == 7
        assert big.certificate.detail["required"] == 5

        circle = fibers["{1:1, 2:1, 5:1}"]
        assert circle.status == "killed"
        assert circle.certificate.kind == "wang-betti-bound"
        assert circle.certificate.detail["degree"] == 2
        assert circle.certificate.detail["required"] == 2
        assert circle.certificate.detail["bound"] == 1

        sphere = fibers["{5:1}"]
        assert sphere.survives
        assert INTEGRAL_FLAG in sphere.flags

        extras = set(fibers) - {"{2:1, 3:1, 5:1}", "{1:1, 2:1, 5:1}", "{5:1}"}
        for key in extras:
            assert fibers[key].certificate.kind == "dimension-formula"
        survivors = [(e.name, str(v.fiber)) for e in report.entries
                     for v in e.verdicts if v.survives]
        assert survivors == [("S2", "{5:1}")]


def test_criterion_4_thirteen_dim_sweep(capsys):
    with criterion(capsys, 4, "the dim<=7 sweep leaves only the projective "
                              "plane, with the pinned degree-5 and forced "
                              "degree-6 kills and the integral flag"):
        report = analyze("bazaikin", 7)
        assert [e.name for e in report.survivors] == ["CP2"]

        over_s5 = fiber_map(report, "S5")["{2:1, 9:1}"]
        assert over_s5.status == "killed"
        assert over_s5.certificate.kind == "relative-model-cohomology"
        assert over_s5.certificate.detail["degree"] == 5
        assert scan_row(over_s5.certificate, 5)["witnesses"] == ["x5"]

        over_cp2 = fiber_map(report, "CP2")["{1:1, 2:1, 9:1}"]
        assert over_cp2.status == "killed"
        cert = over_cp2.certificate
        assert cert.kind == "relative-model-cohomology"
        # the degree-2 target has one candidate and every nonzero choice in
        # degree 3 violates d*d = 0, so the assignment below is forced
        assert cert.detail["candidates"]["z1"] == ["x2"]
        assert cert.detail["rejected_invalid"] == 3
        assert cert.detail["scan"]["assignment"] == {
            "z1": [["x2", "1"]], "z2": [], "z9": [],
        }
        row = scan_row(cert, 6)
        assert row["witnesses"] == ["z2^3"]
        assert row["image_rank"] == 3

        flagged = fiber_map(report, "CP2")["{9:1}"]
        assert flagged.survives
        assert INTEGRAL_FLAG in flagged.flags


def test_criterion_5_betti_oracles(capsys):
    def kunneth(*tables, top=13):
        out = [1] + [0] * top
        for factor in tables:
            nxt = [0] * (top + 1)
            for i, a in enumerate(out):
                if a:
                    for j, b in enumerate(factor):
                        if i + j <= top and b:
                            nxt[i + j] += a * b
            out = nxt
        return tuple(out)

    sphere = lambda n: [1] + [0] * (n - 1) + [1]
    cp2 = [1, 0, 1, 0, 1]
    oracles = {
        "S2": kunneth(sphere(2)),
        "S3": kunneth(sphere(3)),
        "S5": kunneth(sphere(5)),
        "CP2": kunneth(cp2),
        "S2xS5": kunneth(sphere(2), sphere(5)),
        "bazaikin": kunneth(cp2, sphere(9)),
    }
    with criterion(capsys, 5, "catalog Betti tables match product oracles "
                              "through degree 13 and the degree-6 image is "
                              "the pinned rank-3 span"):
        for name, expected in oracles.items():
            model = find_entry(name).model
            assert betti_table(model, 13).values == expected, name
        span = reproduce("prop42")["degree6_span"]
        assert span["rank"] == 3
        assert span["monomials"] == ["x2*z2^2", "x2^2*z2", "x2^3"]
        assert span["witnesses"] == ["z2^3"]
        assert span["forced"] == {"z1": "x2", "z2": "0", "z9": "0"}


def test_criterion_6_property_suites(capsys):
    path = Path(__file__).parent / "test_properties.py"
    spec = importlib.util.spec_from_file_location("property_suites", path)
    suites = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(suites)
    with criterion(capsys, 6, "all six randomized suites pass with at least "
                              "1000 cases each"):
        assert suites.CASES >= 1000
        suites.TestGradedCommutativity().test_sign_rule()
        suites.TestLeibniz().test_product_rule()
        suites.TestDifferentialSquaresToZero().test_on_arbitrary_elements()
        suites.TestBasisGeneratingFunction().test_dimension_series()
        suites.TestAlternatingSum().test_every_solution_sums_to_zero()
        suites.TestSolverCompleteness().test_matches_brute_force()


def test_criterion_7_product_soundness(capsys):
    with criterion(capsys, 7, "both product fibrations survive every "
                              "rational check"):
        surviving = fiber_map(analyze("S2xS5", 2), "S2")["{5:1}"]
        assert surviving.survives
        assert surviving.witness == {"differentials": {"z5": "0"}}

        surviving = fiber_map(analyze("bazaikin", 4), "CP2")["{9:1}"]
        assert surviving.survives
        assert surviving.witness == {"differentials": {"z9": "0"}}


def test_acceptance_report_is_serializable(capsys):
    # the whole gate's evidence must round-trip as data
    blob = json.dumps({t: reproduce(t) for t in
                       ("table1", "prop31", "prop32", "prop41", "prop42")})
    assert json.loads(blob)
