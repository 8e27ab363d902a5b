import numpy as np
import pytest

from critlab import catalog
from critlab.algebra import abelian, derivation_defect, new_metric_lie_algebra, scale_structure
from critlab.curvature import curvature_package
from critlab.soliton import algebraic_soliton_check, soliton_expected_criticality, soliton_fit, soliton_verdict

H3R = new_metric_lie_algebra(4, [(1, 2, 3, 1.0)])


def test_heisenberg_times_line_is_a_soliton():
    cert = algebraic_soliton_check(H3R)
    assert cert is not None
    assert cert.lam == pytest.approx(-1.5)
    assert derivation_defect(H3R, cert.derivation) < 1e-12
    ric = curvature_package(H3R).ric
    assert np.allclose(ric, cert.lam * np.eye(4) + cert.derivation)
    verdict = soliton_expected_criticality(cert, curvature_package(H3R))
    assert verdict.ok and verdict.t == pytest.approx(-3.0)


def test_lambda_scales_with_structure():
    cert = algebraic_soliton_check(scale_structure(H3R, 2.0))
    assert cert.lam == pytest.approx(-6.0)


@pytest.mark.parametrize("f, p", [(-1.0, 0.0), (0.5, 0.5), (-0.3, 0.8), (0.2, 0.9)])
def test_r3_lambda(f, p):
    cert = algebraic_soliton_check(catalog.build_instance("R.3", {"f": f, "p": p}).metric)
    assert cert.lam == pytest.approx(-(f * f + p * p + 1), abs=1e-12)


def test_e1_lambda():
    cert = algebraic_soliton_check(catalog.build_instance("E.1").metric)
    assert cert.lam == pytest.approx(-2.0, abs=1e-12)


def test_non_solitons_rejected():
    for fid, p in (("H.4", {"a": 1.3}), ("R.6", {"h": 0.8}), ("E.3", {"D": 1.5})):
        g = catalog.build_instance(fid, p).metric
        assert algebraic_soliton_check(g) is None
        assert soliton_fit(g)[2] > 1e-3


def test_abelian_and_einstein():
    cert, crit = soliton_verdict(abelian(4))
    assert cert.lam == 0.0 and crit.ok
    hyp = new_metric_lie_algebra(4, [(1, 4, 1, 1.0), (2, 4, 2, 1.0), (3, 4, 3, 1.0)])
    cert, crit = soliton_verdict(hyp)
    assert cert.lam == pytest.approx(-3.0) and np.allclose(cert.derivation, 0, atol=1e-12)
    assert crit.ok and crit.detail.startswith("Einstein")


def test_missing_certificate():
    with pytest.raises(ValueError):
        soliton_expected_criticality(None, curvature_package(H3R))
