import numpy as np
import pytest

from qsiegel import (
    RealSubspace,
    base_metric,
    bergman_metric_scale,
    certify_all,
    check_coisotropic,
    check_imq_vanishes,
    check_orbit_multiplicity,
    check_orthocomplement_identity,
)
from qsiegel.catalog import catalog_get, catalog_list, oracle_expected_mf
from qsiegel.certify import BaseMetric
from qsiegel.errors import HypothesisViolated, NotPSD


def w_real(rank1):
    return RealSubspace(np.array([[1.0], [0.0]]))


# -- Im Q vanishing -----------------------------------------------------------


def test_imq_rank1_cases(rank1):
    _, _, q_map = rank1
    cert = check_imq_vanishes(q_map, RealSubspace(np.array([[1.0], [0.0]])))
    assert cert.verdict and cert.witness is None
    cert0 = check_imq_vanishes(q_map, RealSubspace.zero(2))
    assert not cert0.verdict
    assert cert0.witness is not None and "s1" in cert0.witness
    assert cert0.residual > 0.5
    certv = check_imq_vanishes(q_map, RealSubspace.full(2))
    assert certv.verdict  # vacuous: S = 0


def test_imq_witness_is_violating_pair(herm2):
    _, _, q_map = herm2
    w = catalog_get("herm2").variant("realform").subspace(2)
    cert = check_imq_vanishes(q_map, w)
    assert not cert.verdict
    s1 = np.array([complex(a, b) for a, b in cert.witness["s1"]])
    s2 = np.array([complex(a, b) for a, b in cert.witness["s2"]])
    assert np.linalg.norm(np.imag(q_map.q_eval(s1, s2))) == pytest.approx(cert.residual, rel=1e-9)


# -- base metric ----------------------------------------------------------------


def test_base_metric_rank1(rank1):
    alg, _, q_map = rank1
    bm = base_metric(alg, q_map)
    assert bm.u_block == pytest.approx(np.array([[0.75]]))
    assert bm.e_prime == pytest.approx(np.array([3.0]))
    assert np.allclose(bm.v_block, 3.0 * np.eye(2), atol=1e-12)


def test_base_metric_diag2_blocks(diag2):
    alg, _, q_map = diag2
    bm = base_metric(alg, q_map)
    assert np.allclose(bm.u_block, 0.75 * np.eye(2), atol=1e-12)
    assert np.allclose(bm.e_prime, [3.0, 3.0], atol=1e-12)


def test_base_metric_block_structure(models):
    for alg, _, q_map in models.values():
        bm = base_metric(alg, q_map)
        n2, nu = 2 * q_map.n, alg.dim
        assert np.allclose(bm.matrix[: 2 * nu, 2 * nu :], 0.0)
        assert np.linalg.eigvalsh(bm.matrix)[0] > 0
        assert np.allclose(bm.matrix[:nu, nu : 2 * nu], 0.0)


@pytest.mark.parametrize("kind", ["rank1", "sym_real"])
def test_metric_scale_close_to_one(models, kind):
    alg, _, q_map = models[kind]
    scale, ratios = bergman_metric_scale(alg, q_map, seed=0, samples=150_000)
    assert scale == pytest.approx(1.0, abs=0.02)
    for r in ratios:
        assert r == pytest.approx(1.0, abs=0.05)


# -- coisotropy -------------------------------------------------------------------


def test_coisotropic_rank1_cases(rank1):
    alg, _, q_map = rank1
    assert check_coisotropic(alg, q_map, RealSubspace(np.array([[1.0], [0.0]])), 10, seed=0).verdict
    zero = check_coisotropic(alg, q_map, RealSubspace.zero(2), 10, seed=0)
    assert not zero.verdict
    assert zero.witness is not None and "point" in zero.witness
    assert check_coisotropic(alg, q_map, RealSubspace.full(2), 10, seed=0).verdict


def test_coisotropic_scale_invariance(sym2):
    alg, _, q_map = sym2
    entry = catalog_get("sym2")
    bm = base_metric(alg, q_map)
    for var in ("frame", "skew"):
        w = entry.variant(var).subspace(2)
        verdicts = []
        for t in (0.5, 1.0, 2.0):
            scaled = BaseMetric(t * bm.matrix, bm.e_prime, bm.u_block, bm.v_block)
            verdicts.append(
                check_coisotropic(alg, q_map, w, n_samples=6, seed=1, metric=scaled).verdict
            )
        assert len(set(verdicts)) == 1


# -- orthocomplement identity -------------------------------------------------------


def test_orthocomplement_mf_entries():
    for name, var in [
        ("heisenberg-rank1", "real"),
        ("heisenberg-rank1", "full"),
        ("diag2", "phase"),
        ("sym2", "frame"),
        ("sym2", "realform"),
        ("herm2", "frame"),
    ]:
        entry = catalog_get(name)
        alg, _, q_map = entry.model()
        w = entry.variant(var).subspace(q_map.n)
        report = check_orthocomplement_identity(alg, q_map, w, n_samples=10, seed=2)
        assert report.max_distance <= 1e-7, f"{name}/{var}: {report.max_distance}"


def test_orthocomplement_base_example_rank1(rank1):
    alg, _, q_map = rank1
    report = check_orthocomplement_identity(alg, q_map, RealSubspace(np.array([[1.0], [0.0]])), n_samples=5, seed=3)
    assert report.max_distance <= 1e-7


def test_orthocomplement_trivial_full_w(rank1):
    alg, _, q_map = rank1
    report = check_orthocomplement_identity(alg, q_map, RealSubspace.full(2), n_samples=4, seed=4)
    assert report.max_distance <= 1e-7


def test_orthocomplement_requires_hypothesis(herm2):
    alg, _, q_map = herm2
    w = catalog_get("herm2").variant("realform").subspace(2)
    with pytest.raises(HypothesisViolated):
        check_orthocomplement_identity(alg, q_map, w, n_samples=2, seed=0)


# -- orbit multiplicity ----------------------------------------------------------------


def test_orbit_multiplicity_rank1(rank1):
    _, _, q_map = rank1
    x = np.array([1.0])
    assert check_orbit_multiplicity(q_map, RealSubspace(np.array([[1.0], [0.0]])), x).verdict
    bad = check_orbit_multiplicity(q_map, RealSubspace.zero(2), x)
    assert not bad.verdict and bad.witness is not None
    assert check_orbit_multiplicity(q_map, RealSubspace.full(2), x).verdict


def test_orbit_multiplicity_degenerate_x(diag2):
    # x on the cone boundary: the kernel of g_x absorbs the missing direction
    _, _, q_map = diag2
    w = RealSubspace.full(4)
    assert check_orbit_multiplicity(q_map, w, np.array([1.0, 0.0])).verdict


def test_orbit_multiplicity_rejects_indefinite(diag2):
    _, _, q_map = diag2
    with pytest.raises(NotPSD):
        check_orbit_multiplicity(q_map, RealSubspace.full(4), np.array([1.0, -1.0]))


# -- combined harness ---------------------------------------------------------------------


def test_certify_all_catalog_agreement():
    for name in catalog_list():
        entry = catalog_get(name)
        alg, _, q_map = entry.model()
        for var in entry.variants:
            w = var.subspace(q_map.n)
            report = certify_all(alg, q_map, w, n_coiso=6, n_orbit=12, seed=5)
            assert report.consistent, f"{name}/{var.name}"
            assert report.mf == var.expected_mf, f"{name}/{var.name}"
            assert oracle_expected_mf(q_map, w) == var.expected_mf
            assert all(v == report.orbit_sample_verdicts[0] for v in report.orbit_sample_verdicts)


def test_certificate_serialization(rank1):
    alg, _, q_map = rank1
    report = certify_all(alg, q_map, RealSubspace.zero(2), n_coiso=4, n_orbit=6, seed=6)
    d = report.to_dict()
    assert d["consistent"] is True and d["mf"] is False
    conditions = {c["condition"] for c in d["certificates"]}
    assert conditions == {"imq_vanishes", "coisotropic", "orbit_multiplicity_one"}
    for c in d["certificates"]:
        assert set(c) >= {"condition", "verdict", "residual", "tol", "witness"}
        assert (c["witness"] is not None) == (not c["verdict"])


def test_certifiers_agree_on_random_subspaces(models):
    # the equivalence is universal, not a property of curated examples:
    # any real subspace must receive identical verdicts from all three tests
    for kind, (alg, _, q_map) in models.items():
        rng = np.random.default_rng(42)
        for trial in range(12):
            d = int(rng.integers(0, 2 * q_map.n + 1))
            w = RealSubspace.from_spanning(rng.standard_normal((2 * q_map.n, d)))
            report = certify_all(alg, q_map, w, n_coiso=6, n_orbit=12, seed=trial)
            assert report.consistent, f"{kind} trial {trial} dim {d}"
