import pytest

from critlab import catalog
from critlab.errors import UnknownFamily
from critlab.fingerprint import fingerprint
from critlab.search import GROUP_TEMPLATES, TEMPLATES, classify_fingerprint, get_template, search_critical


def _summary(res):
    return [(h.kind, h.t, tuple(sorted(h.params.items()))) for h in res.hits]


def test_templates():
    assert set(GROUP_TEMPLATES) == {"NS", "E", "H", "R"}
    assert set(GROUP_TEMPLATES) <= set(TEMPLATES)
    with pytest.raises(UnknownFamily):
        get_template("Q")


def test_small_search_finds_r3_metrics():
    res = search_critical("R_diag", starts=6, seed=3)
    assert res.converged >= 4 and res.hits
    for h in res.hits:
        assert h.match.matched and h.match.family == "R.3"
        # the match is expressed in the family's own normalization
        assert h.t == pytest.approx(catalog.family_t("R.3", h.match.params), abs=1e-8)


def test_search_is_deterministic_and_thread_independent(monkeypatch):
    a = search_critical("H_aa", starts=6, seed=5, classify=False)
    b = search_critical("H_aa", starts=6, seed=5, classify=False)
    monkeypatch.setenv("CRITLAB_THREADS", "3")
    c = search_critical("H_aa", starts=6, seed=5, classify=False)
    assert _summary(a) == _summary(b) == _summary(c)


def test_fixed_t_search():
    res = search_critical("H_aa", t_free=False, t=-1 / 3, starts=8, seed=1)
    assert res.hits
    kinds = {}
    for h in res.hits:
        assert h.t == -1 / 3
        kinds[h.match.family] = h
    # a = 1 (or the isometric a = -1) is the H.4 Bach-flat metric; a = 1/2 is complex hyperbolic space
    assert abs(kinds["H.4"].params["a"]) == pytest.approx(1.0, abs=1e-6)
    assert kinds["SYM.1"].kind == "AllT" and abs(kinds["SYM.1"].params["a"]) == pytest.approx(0.5, abs=1e-6)
    with pytest.raises(ValueError):
        search_critical("H_aa", t_free=False)


@pytest.mark.parametrize("fid, params", [("H.5", {"c": 0.3}), ("R.6", {"h": 1.1}), ("E.4", {"lam": 0.4})])
def test_classify_known_instances(fid, params):
    inst = catalog.build_instance(fid, params)
    m = classify_fingerprint(fingerprint(catalog.normalized_package(inst)))
    assert m.matched and m.family == fid
