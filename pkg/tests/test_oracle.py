import json
import random

import pytest

from arfinv.arf import GF2Form, arf_gf2
from arfinv.matrix import Mat, det
from arfinv.oracle import (
    BudgetError,
    arf_democratic,
    denominator_element,
    exhaustive_q3_truncated,
    random_resolution,
    random_unimodular,
    random_unimodular_form,
    sample_denominator,
    suite_lift_independence,
    suite_refinement,
    verify_reduction,
)
from arfinv.qgroups import X_Z, X_ZX, check_numerator_q0


def test_arf_democratic_examples():
    assert arf_democratic(GF2Form.from_rows([[0, 1], [0, 0]])) == 0
    assert arf_democratic(GF2Form.from_rows([[1, 1], [0, 1]])) == 1
    assert arf_democratic(GF2Form(0, ())) == 0
    with pytest.raises(BudgetError):
        arf_democratic(GF2Form.from_rows([[0] * 17 for _ in range(17)]))


def test_denominator_examples():
    z = Mat.zeros(2)
    assert denominator_element("q3zx", z, z).is_zero()
    assert denominator_element("q3zx", z, Mat.diag([1, 0])).is_zero()
    # N^T X N = (0 0; 0 X_11) for N = (0 1; 0 0), so the corner is -4 and not -4x
    n = Mat([[0, 1], [0, 0]])
    assert denominator_element("q0zx", z, n) == Mat([[0, 2], [2, -4]])
    assert denominator_element("q0zx", z, n.T) == Mat([[[0, -4], 2], [2, 0]])


def test_sampled_denominators_are_numerators():
    rng = random.Random(5)
    for _ in range(50):
        assert check_numerator_q0(sample_denominator("q0zx", rng), X_ZX)
        assert check_numerator_q0(sample_denominator("q0z", rng), X_Z)


def test_sampling_is_seeded():
    assert sample_denominator("q0zx", 9) == sample_denominator("q0zx", 9)


@pytest.mark.parametrize("group", ["q0zx", "q3zx", "q0z", "q3z"])
def test_verify_reduction_small(group):
    rep = verify_reduction(group, trials=100, seed=7)
    assert rep.passed, rep.text()
    data = rep.to_json()
    assert data["passed"] and data["seed"] == 7 and data["trials"] == 100
    json.dumps(data)


def test_exhaustive_q3_examples():
    rep = exhaustive_q3_truncated(1, 0, 1)
    assert rep.passed and rep.trials == 2**6 + 4
    rep = exhaustive_q3_truncated(0, -3, 3)
    assert rep.passed
    assert exhaustive_q3_truncated(2, 1, 0).trials == 0
    with pytest.raises(BudgetError):
        exhaustive_q3_truncated(2, -4, 4)


def test_exhaustive_q3_degree_two_window():
    rep = exhaustive_q3_truncated(2, -1, 1)
    assert rep.passed, rep.text()
    assert rep.trials == 3**9 + 8


def test_report_records_counterexample():
    from arfinv.oracle import Report

    rep = Report("demo", seed=1)
    rep.trials = 2
    rep.fail({"x": 1})
    rep.fail({"x": 2})
    assert not rep.passed and rep.counterexample == {"x": 1}
    assert "FAIL" in rep.text() and '"x": 1' in rep.text()


def test_random_generators_are_valid():
    rng = random.Random(2)
    for _ in range(20):
        u, uinv = random_unimodular(rng, 3)
        assert u * uinv == Mat.identity(3)
        random_resolution(rng).check()
        f = random_unimodular_form(rng, 10)
        assert len(f) <= 10
        assert abs(det(Mat(f)).constant_term()) == 1


def test_small_suites():
    assert suite_lift_independence(40, seed=3).passed
    assert suite_refinement(40, seed=3).passed


def test_democratic_matches_on_random_dim_8():
    rng = random.Random(4)
    seen = 0
    while seen < 20:
        f = GF2Form.from_rows([[rng.randint(0, 1) for _ in range(8)] for _ in range(8)])
        try:
            a = arf_gf2(f)
        except ValueError:
            continue
        seen += 1
        assert a == arf_democratic(f)
