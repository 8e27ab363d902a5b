import numpy as np
import pytest

from critlab import catalog
from critlab.algebra import abelian, new_metric_lie_algebra
from critlab.criticality import (
    Kind,
    critical_tensor,
    energy,
    is_bach_flat,
    is_S_critical,
    is_zero_energy_critical,
    solve_critical_t,
    split_affine,
    zero_energy_t,
)
from critlab.curvature import curvature_package, space_form_package
from critlab.errors import WrongDimension, ZeroScalarCurvature


def pkg_of(brackets, dim=4):
    return curvature_package(new_metric_lie_algebra(dim, brackets))


H3R = [(1, 2, 3, 1.0)]


def test_golden_affine_parts_on_heisenberg_times_line():
    a, b = split_affine(pkg_of(H3R))
    assert np.allclose(a, np.diag([-9 / 8, -9 / 8, 15 / 8, 3 / 8]), atol=1e-15)
    # B = (2/n) tau^2 g - 2 tau rho with tau = -1/2
    assert np.allclose(b, np.diag([-3 / 8, -3 / 8, 5 / 8, 1 / 8]), atol=1e-15)
    assert np.max(np.abs(critical_tensor(pkg_of(H3R), -3.0))) < 1e-15


def test_solve_unique_on_heisenberg_times_line():
    res = solve_critical_t(pkg_of(H3R))
    assert res.kind is Kind.UNIQUE and res.critical
    assert res.t == pytest.approx(-3.0, abs=1e-14)
    assert zero_energy_t(pkg_of(H3R)) == pytest.approx(-3.0)
    assert energy(pkg_of(H3R), -3.0).energy == pytest.approx(0.0, abs=1e-15)
    assert is_zero_energy_critical(pkg_of(H3R))
    assert not is_S_critical(pkg_of(H3R))


def test_all_t_on_einstein_and_flat():
    hyp = pkg_of([(1, 4, 1, 1.0), (2, 4, 2, 1.0), (3, 4, 3, 1.0)])
    assert solve_critical_t(hyp).kind is Kind.ALL_T
    assert is_S_critical(hyp)
    assert solve_critical_t(space_form_package(2.0)).kind is Kind.ALL_T
    flat = curvature_package(abelian(4))
    assert solve_critical_t(flat).kind is Kind.ALL_T
    with pytest.raises(ZeroScalarCurvature):
        zero_energy_t(flat)
    with pytest.raises(ZeroScalarCurvature):
        is_zero_energy_critical(flat)


def test_not_critical_on_squashed_su2_times_line():
    pkg = curvature_package(catalog.build_instance("NS.1", {"lam": 1.0}).metric)
    assert solve_critical_t(pkg).t == pytest.approx(-1 / 3)
    squashed = pkg_of(catalog.ns_brackets(1.0, 1.0, 2.0))
    res = solve_critical_t(squashed)
    assert res.kind is Kind.NOT_CRITICAL and not res.critical
    assert res.residual > 1e-3


def test_documented_t_values():
    assert catalog.family_t("H.2", {"a": 0.0}) == pytest.approx(-3 / 10)
    assert catalog.family_t("E.3", {"D": 2.0}) == pytest.approx(-1.0)
    assert catalog.family_t("E.5", {"b": 0.0, "A": 0.0}, strict=False) == pytest.approx(-1.0)
    # and the solver agrees on the first two
    for fid, p, t in (("H.2", {"a": 0.0}, -0.3), ("E.3", {"D": 2.0}, -1.0)):
        pkg = curvature_package(catalog.build_instance(fid, p).metric)
        assert solve_critical_t(pkg).t == pytest.approx(t, abs=1e-12)


def test_energy_is_homogeneous_of_degree_four():
    g = new_metric_lie_algebra(4, [(1, 2, 3, 2.0)])
    assert energy(curvature_package(g), 1.0).energy == pytest.approx(16 * (0.75 + 0.25))


def test_bach_flat_dimension_check():
    g3 = curvature_package(new_metric_lie_algebra(3, [(1, 2, 3, 1.0)]))
    with pytest.raises(WrongDimension):
        is_bach_flat(g3)
    assert not is_bach_flat(pkg_of(H3R))
    assert is_bach_flat(space_form_package(1.0))
