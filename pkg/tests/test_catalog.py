import json
import math

import numpy as np
import pytest

from critlab import catalog
from critlab.criticality import Kind, is_bach_flat, solve_critical_t
from critlab.curvature import curvature_package
from critlab.errors import OutOfDomain, UnknownFamily

ALL_IDS = [f.id for f in catalog.list_families()]

# closed/open t-intervals that the sampled critical t must fall in
T_RANGES = {
    "SYM.2": (-1 / 3, -1 / 3), "SYM.3": (-0.5, -0.5), "SYM.5": (-0.5, -0.5), "NS.1": (-1 / 3, -1 / 3),
    "E.1": (-1, -1), "E.3": (-3, -1 / 3), "E.4": (-1.5, -1 / 3), "E.5": (-1, -1 / 3),
    "H.1": (-3, -3), "H.2": (-0.75, -0.25), "H.3": (-1.5, -1.5), "H.4": (-3, -3 / 11),
    "H.5": (-3, -21 / 52), "H.6": (-3, -7 / 16),
    "R.1": (-3, -3), "R.2": (-1.5, -1.5), "R.3": (-1, -0.25), "R.4": (-math.inf, -3),
    "R.5": (-math.inf, -1.5), "R.6": (-3, -5 / 11), "R.7": (-1.5, -0.7),
}


def test_listing_and_lookup():
    assert len(ALL_IDS) == 28
    assert len(catalog.list_families(include_aliases=False)) == 24
    assert catalog.get_family("SOLV.3").alias_of == "R.3"
    with pytest.raises(UnknownFamily):
        catalog.get_family("R.9")
    data = json.loads(catalog.families_json())
    assert data["schema"] == 1 and len(data["families"]) == 28


@pytest.mark.parametrize("fid", ALL_IDS)
def test_family_verifies(fid):
    rep = catalog.verify_family(fid, samples=16, seed=1)
    assert rep.passed, [r.failures for r in rep.records if not r.passed]
    assert rep.worst_residual <= 1e-9
    assert rep.worst_t_error <= 1e-10


@pytest.mark.parametrize("fid", sorted(T_RANGES))
def test_sampled_t_within_stated_range(fid):
    lo, hi = T_RANGES[fid]
    for inst in catalog.sample_instances(fid, 16, seed=2):
        assert lo - 1e-12 <= inst.expected_t <= hi + 1e-12


def test_e2_branches():
    tmin = 5 - 2 * math.sqrt(7)
    for inst in catalog.sample_instances("E.2", 16, seed=3):
        t = inst.expected_t
        if inst.params["lam"] < 0:
            assert -3 < t < -0.3 and abs(t + 0.5) > 1e-9
        else:
            assert -1 / 3 < t <= tmin + 1e-12
    with pytest.raises(OutOfDomain):
        catalog.resolve_params("E.2", {"lam": 0.5, "branch": 1})


@pytest.mark.parametrize("fid, params", [
    ("H.2", {"a": 0.6}), ("H.4", {"a": 0.5}), ("R.3", {"f": 0.0, "p": 0.0}), ("R.3", {"f": 0.5, "p": 0.2}),
    ("E.3", {"D": -1.0}), ("SYM.2", {"kappa": 0.0}),
])
def test_domain_errors(fid, params):
    with pytest.raises(OutOfDomain):
        catalog.build_instance(fid, params)


def test_sampling_is_deterministic():
    a = [i.params for i in catalog.sample_instances("H.5", 5, seed=7)]
    b = [i.params for i in catalog.sample_instances("H.5", 5, seed=7)]
    assert a == b


def test_named_constants():
    assert 8 * catalog.ZETA ** 3 + 15 * catalog.ZETA ** 2 + 3 * catalog.ZETA + 1 == pytest.approx(0, abs=1e-13)
    th = catalog.THETA
    assert 192 * th ** 3 + 1152 * th ** 2 + 1865 * th + 923 == pytest.approx(0, abs=1e-10)


def test_alias_identifications():
    ids = catalog.alias_identifications()
    assert {a.source for a in ids} >= {"H.1", "H.3", "E.1", "SOLV.1", "SOLV.2", "SOLV.3", "SOLV.4"}
    for a in ids:
        assert a.defect() <= 1e-12, a.source


def test_bach_flat_specials_are_bach_flat_and_not_einstein():
    specials = catalog.bach_flat_specials()
    assert {s.family for s in specials} == {"SYM.2", "NS.1", "H.2", "H.4", "R.3", "E.2"}
    for inst in specials:
        pkg = catalog.normalized_package(inst)
        assert is_bach_flat(pkg)
        assert solve_critical_t(pkg).kind is Kind.UNIQUE
        assert solve_critical_t(pkg).t == pytest.approx(-1 / 3, abs=1e-10)


def test_e2_special_instance_b_value():
    inst = [s for s in catalog.bach_flat_specials() if s.family == "E.2"][0]
    assert inst.params["b"] == pytest.approx(math.sqrt(6 - 3 * math.sqrt(3)), abs=1e-13)


def test_h3_brackets_as_written():
    g = catalog.build_instance("H.3").metric
    assert g.brackets() == [(1, 2, 3, 1.0), (2, 4, 1, -1.0)]
    assert solve_critical_t(curvature_package(g)).t == pytest.approx(-1.5)


def test_energy_formula_r6_and_h4():
    inst = catalog.build_instance("R.6", {"h": 0.7})
    e = inst.expected_energy
    assert e == pytest.approx(-16 * 0.49 / 3)
    inst = catalog.build_instance("H.4", {"a": 1.3})
    assert inst.expected_energy == pytest.approx(-36 * 1.69)
    assert np.isfinite(inst.expected_t)
