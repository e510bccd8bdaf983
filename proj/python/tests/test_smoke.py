import math

import pytest

import semsec


def test_binary_entropy():
    assert semsec.binary_entropy(0.25) == pytest.approx(0.811278124459133, abs=1e-12)
    assert semsec.binary_entropy(0.0) == 0.0


def test_gaussian_defaults():
    src = semsec.GaussianSource()
    ch = semsec.GaussianChannel()
    assert src.case1_floor == pytest.approx(0.34)
    assert semsec.main_capacity(ch) == pytest.approx(1.72971580931865, abs=1e-12)
    assert semsec.gaussian_rdf_joint(src, 0.5, 0.6, 2) == pytest.approx(0.384893953593007, abs=1e-9)
    assert math.isinf(semsec.gaussian_rdf_sem(src, 0.2, 1))


def test_invalid_parameters_raise():
    with pytest.raises(ValueError):
        semsec.GaussianSource(P_s=1.0, P_u=1.0, P_su=2.0)
    with pytest.raises(ValueError):
        semsec.semantic_rdf([[0.5, 0.5]], 0.1, 0.1, 3)


def test_semantic_rdf():
    a = 0.25
    joint = [[(1 - a) / 2, a / 2], [a / 2, (1 - a) / 2]]
    p = semsec.semantic_rdf(joint, 0.3, 0.25, 1)
    assert p.feasible and p.converged
    assert p.rate == pytest.approx(0.531004406410719, abs=1e-6)
    assert semsec.binary_rdf_joint(a, 0.3, 0.25, 1) == pytest.approx(p.rate, abs=1e-6)
    assert not semsec.semantic_rdf(joint, 0.2, 0.25, 1).feasible


def test_presets_and_run():
    names = semsec.preset_names()
    assert "gaussian-converse-fig3" in names
    cfg = semsec.preset("gaussian-converse-fig3")
    cfg["grid"] = {"D_s": [0.4, 0.6], "D_u": [0.5, 0.8]}
    out = semsec.run(cfg)
    assert len(out["surfaces"]) == 2
    with pytest.raises(ValueError):
        semsec.run({"bogus": 1})
