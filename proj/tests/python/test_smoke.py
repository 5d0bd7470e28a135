import math
import os
from pathlib import Path

import pytest

import circq

FIXTURES = Path(os.environ.get("CIRCQ_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


def fixture(name):
    return circq.load_spec(str(FIXTURES / f"{name}.json"))


def test_parse_and_jet():
    jet = circq.parse("x1^2").eval_jet([3, 0, 0, 0])
    assert jet.value == 9
    assert list(jet.grad) == [6, 0, 0, 0]
    assert jet.hess[0][0] == 2


def test_parse_error_carries_offset():
    with pytest.raises(circq.ParseError, match="offset 4"):
        circq.parse("x1 +")


def test_inverse_and_minors():
    inv = circq.inverse_metric(4, 1, 2)
    assert (inv["D"], inv["Abar"], inv["Bbar"], inv["Cbar"]) == (64, 22, -2, -10)
    ordered, minors = circq.admissibility(4, 1, 2)
    assert ordered and list(minors) == [4, 15, 44, 128]
    with pytest.raises(circq.SingularityError):
        circq.inverse_metric(4, 1, 4)


def test_q_basis():
    assert list(circq.q_apply([1, 2, 3, 4])) == [2, 3, 4, 1]
    assert circq.induces_q_basis([1, 2, 3, 4]) == (True, -160)
    x = circq.find_orthogonal_q_basis(4, 1, 2, seed=3)
    g = circq.metric_at(fixture("const"), [0, 0, 0, 0])
    qx = circq.q_apply(x)
    assert abs(sum(g[i][j] * x[i] * qx[j] for i in range(4) for j in range(4))) < 1e-10


def test_geometry_and_errors():
    curved = fixture("curved-par")
    assert math.isclose(circq.riemann_at(curved, [0, 0, 0, 0])[0][1][0][1], -0.2, abs_tol=1e-15)
    assert max(abs(v) for a in circq.nabla_q(curved, [0.3, -0.2, 0.1, 0.4]) for b in a for v in b) < 1e-9
    with pytest.raises(circq.AdmissibilityError):
        circq.metric_at(fixture("bad-order"), [0, 0, 0, 0])
    with pytest.raises(circq.DomainError):
        circq.metric_at(curved, [2, 0, 0, 0])


def test_verify_report():
    report = circq.verify(fixture("curved-par"), [[0, 0, 0, 0]], samples=5, seed=1)
    assert report["spec"] == "CURVED-PAR"
    assert all(c["status"] == "pass" for c in report["checks"])
    nonpar = circq.verify(fixture("nonpar"), [[1, 0, 0, 0]], checks=["parallel"])
    assert nonpar["checks"][0]["status"] == "fail"
