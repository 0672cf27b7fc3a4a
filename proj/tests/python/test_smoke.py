import math

import pytest

import delaybvp as db


def test_green_closed_form():
    p = db.BvpParams(alpha=1.0, beta=0.0, eta=0.5)
    assert db.denom(p) == pytest.approx(0.5)
    assert db.green(p, 0.5, 0.5) == pytest.approx(0.5)
    c = db.cone_constants(p, 0.25)
    assert (c.k1, c.k2, c.gamma) == pytest.approx((3.0, 0.375, 0.125))


def test_degenerate_params_name_the_bound():
    p = db.BvpParams(alpha=1.0, beta=2.0, eta=0.5)
    assert p.violation() == "beta ≥ (1−αη)/(1−η)"
    with pytest.raises(db.DegenerateParams):
        db.denom(p)
    with pytest.raises(db.Error):
        db.solve(p, f="1")


def test_green_apply_sine_load():
    n = 256
    ts = [i / n for i in range(n + 1)]
    u = db.green_apply(db.BvpParams(), [math.sin(math.pi * t) for t in ts])
    err = max(abs(v - math.sin(math.pi * t) / math.pi**2) for t, v in zip(ts, u))
    assert err <= 1e-8


def test_solve_matches_newton():
    p = db.BvpParams(alpha=0.5, beta=0.5, eta=0.5, tau=0.25, lambda_=1.0)
    picard = db.solve(p, f="u/(1+u)+1", n=256)
    assert picard["converged"]
    newton = db.newton(p, f="u/(1+u)+1", n=256)
    assert max(abs(a - b) for a, b in zip(picard["u"], newton["u"])) <= 1e-5
    assert picard["history_value"] == pytest.approx(0.5 * picard["u"][128], abs=1e-10)


def test_solve_reports_divergence():
    r = db.solve(db.BvpParams(lambda_=1e4), f="u^2", n=64, initial=1.0)
    assert not r["converged"]
    assert r["message"]


def test_check_worked_example():
    r = db.check(db.BvpParams(alpha=1.0, beta=0.0, eta=0.5, tau=0.25), f="u")
    assert r["M1"] == pytest.approx(9 / 64, abs=1e-10)
    assert r["theorem1_applicable"]
    assert r["lambda_max_thm1"] == pytest.approx(64 / 27, abs=1e-9)
    assert any("sufficient" in note for note in r["notes"])


def test_verify_suite():
    r = db.verify(seed=42, cases=20)
    assert r["passed"]
    assert r["cases"] == 20
    assert len(r["worst_slack"]) == 7


def test_expressions():
    assert db.evaluate("2+3*4", 0.0) == 14.0
    assert db.evaluate("-t^2", 2.0) == -4.0
    with pytest.raises(db.EvalError):
        db.evaluate("log(t)", 0.0)
    with pytest.raises(db.ExpressionSyntaxError):
        db.evaluate("1 +", 0.0)
    with pytest.raises(db.ForbiddenVariable):
        db.solve(db.BvpParams(), a="u", f="1")
