import math

import pytest

from dpcolor.errors import ParameterError
from dpcolor.experiments import lbcom_ells, run_lbcom, run_ren
from dpcolor.graph import random_graph
from dpcolor.rng import derive


@pytest.fixture(scope="module")
def ren40():
    return run_ren(40, 0.5, seed=7)


def test_ren_completes_with_ceiling_solve(ren40):
    summary, rows = ren40
    assert summary["ceiling_solve"]["status"] == "colored"
    assert summary["solve"]["status"] in ("colored", "unsat", "budget-exceeded")


def test_ren_subsets_exceed_growth_bound(ren40):
    summary, rows = ren40
    assert len(rows) == 20
    assert all(r["size"] >= min(summary["s_delta"], 40) for r in rows)
    assert all(r["total"] > float(r["g_p"]) for r in rows)
    assert summary["subsets_all_exceed"]


def test_ren_parameters_match_formulas(ren40):
    summary, _ = ren40
    g = random_graph(40, 0.5, derive(7, 0))
    delta = g.max_degree
    assert summary["delta"] == delta and summary["edges"] == g.num_edges
    ln = math.log
    assert summary["s_delta"] == math.ceil(math.exp(math.sqrt(ln(2) * ln(delta))))
    assert summary["b"] == max(math.floor(math.sqrt(ln(delta) / ln(2)) / 6) - 1, 0)
    assert summary["ell"] == max(1, 2 * math.ceil(5 * delta / (2 * max(summary["b"], 1))))


def test_ren_is_deterministic(ren40):
    assert run_ren(40, 0.5, seed=7) == ren40


def test_ren_rejects_large_n():
    with pytest.raises(ParameterError):
        run_ren(65, 0.5, seed=0)


def test_lbcom_small_sweep():
    summary, rows = run_lbcom(8, 10, seed=3, ells=(1, 8))
    by_ell = {r["ell"]: r for r in summary["results"]}
    assert by_ell[1]["success_fraction"] == 0.0
    assert by_ell[8]["success_fraction"] == 1.0
    assert len(rows) == 20 and all(r["plausible_size"] == 8 for r in rows)
    assert all(1 <= r["plausible_alpha"] <= 8 for r in rows)


def test_lbcom_marks_budget_trials_inconclusive():
    summary, rows = run_lbcom(12, 3, seed=1, ells=(5,), budget=1)
    res = summary["results"][0]
    assert res["inconclusive"] + res["conclusive"] == 3
    assert res["inconclusive"] >= 1
    if res["conclusive"] == 0:
        assert res["success_fraction"] is None


def test_lbcom_thread_count_does_not_change_results():
    a = run_lbcom(7, 6, seed=5, ells=(2, 4), threads=1)
    b = run_lbcom(7, 6, seed=5, ells=(2, 4), threads=2)
    assert a == b


def test_lbcom_ells():
    assert lbcom_ells(16, [1.0]) == [math.ceil(16 / math.log(16))]
    assert lbcom_ells(16, [0.0]) == [1]


def test_lbcom_rejects_large_n():
    with pytest.raises(ParameterError):
        run_lbcom(25, 1, seed=0)
