import numpy as np
import pytest
import scipy.linalg

from qsiegel import diagonal_algebra, herm_complex_algebra, make_algebra, sym_real_algebra
from qsiegel.errors import DimensionMismatch, DomainError, NotIdempotent, Singular

from conftest import random_elements

ALGEBRAS = [
    diagonal_algebra(1),
    diagonal_algebra(2),
    diagonal_algebra(3),
    sym_real_algebra(2),
    sym_real_algebra(3),
    herm_complex_algebra(2),
]


def sym2():
    return sym_real_algebra(2)


# -- left multiplication -----------------------------------------------------


def test_left_mult_scalar_algebra():
    alg = diagonal_algebra(1)
    t3 = alg.left_mult(np.array([3.0]))
    assert t3.shape == (1, 1) and t3[0, 0] == 3.0
    assert np.allclose(t3 @ np.array([2.0]), [6.0])


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: f"{a.kind}{a.rank}")
def test_left_mult_unit_is_identity(alg):
    assert np.allclose(alg.left_mult(alg.unit), np.eye(alg.dim), atol=1e-12)


def test_left_mult_matches_matrix_jordan_product():
    alg = sym2()
    x = alg.from_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    e11 = alg.from_matrix(np.array([[1.0, 0.0], [0.0, 0.0]]))
    got = alg.to_matrix(alg.left_mult(x) @ e11)
    assert np.allclose(got, np.array([[0.0, 0.5], [0.5, 0.0]]), atol=1e-12)


def test_left_mult_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        diagonal_algebra(2).left_mult(np.array([1.0, 2.0, 3.0]))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: f"{a.kind}{a.rank}")
def test_left_mult_symmetric_and_unital(alg):
    for x in random_elements(alg, 10, seed=1):
        t = alg.left_mult(x)
        assert np.allclose(t, t.T, atol=1e-11)
        assert np.allclose(t @ alg.unit, x, atol=1e-11)


# -- quadratic representation --------------------------------------------------


def test_quad_rep_scalar():
    alg = diagonal_algebra(1)
    assert np.allclose(alg.quad_rep(np.array([3.0])), [[9.0]])


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: f"{a.kind}{a.rank}")
def test_quad_rep_unit(alg):
    assert np.allclose(alg.quad_rep(alg.unit), np.eye(alg.dim), atol=1e-12)


def test_quad_rep_is_sandwich_product():
    # oracle: in a special Jordan algebra, P(x) y = x y x
    alg = sym2()
    rng = np.random.default_rng(2)
    for _ in range(20):
        x, y = rng.standard_normal(alg.dim), rng.standard_normal(alg.dim)
        xm, ym = alg.to_matrix(x), alg.to_matrix(y)
        assert np.allclose(alg.to_matrix(alg.quad_rep(x) @ y), xm @ ym @ xm, atol=1e-10)


# -- inversion -------------------------------------------------------------------


def test_invert_componentwise():
    alg = diagonal_algebra(2)
    assert np.allclose(alg.invert(np.array([2.0, 4.0])), [0.5, 0.25])
    assert np.allclose(alg.invert(alg.unit), alg.unit)


def test_invert_singular_reports_smallest_singular_value():
    alg = diagonal_algebra(2)
    with pytest.raises(Singular) as exc:
        alg.invert(np.array([1.0, 0.0]))
    assert exc.value.smallest_singular_value is not None
    assert exc.value.smallest_singular_value < 1e-12


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: f"{a.kind}{a.rank}")
def test_invert_involution_and_unit(alg):
    rng = np.random.default_rng(3)
    for _ in range(25):
        x = rng.standard_normal(alg.dim)
        p = alg.quad_rep(x)
        s = np.linalg.svd(p, compute_uv=False)
        if s[-1] <= 1e-6 * s[0]:
            continue
        cond = s[0] / s[-1]
        xinv = alg.invert(x)
        assert np.linalg.norm(alg.mult(x, xinv) - alg.unit) <= 1e-10 * cond
        assert np.allclose(alg.invert(xinv), x, atol=1e-8 * cond * max(1, np.linalg.norm(x)))
        # forced by the definition through the quadratic representation
        assert np.allclose(p @ xinv, x, atol=1e-8 * cond)


# -- spectral decomposition --------------------------------------------------------


def test_spectral_diagonal():
    alg = diagonal_algebra(2)
    dec = alg.spectral_decompose(np.array([3.0, -1.0]))
    assert np.allclose(dec.eigenvalues, [3.0, -1.0])
    assert np.allclose(dec.idempotents[0], [1.0, 0.0], atol=1e-12)
    assert np.allclose(dec.idempotents[1], [0.0, 1.0], atol=1e-12)


def test_spectral_unit_is_single_group():
    alg = sym2()
    dec = alg.spectral_decompose(alg.unit)
    assert len(dec.idempotents) == 1
    assert np.allclose(dec.eigenvalues, [1.0])
    assert np.allclose(dec.idempotents[0], alg.unit, atol=1e-12)
    assert dec.multiplicities[0] == alg.rank


def test_spectral_sym2_rank_one_projectors():
    # oracle: symmetric eigendecomposition of [[2,1],[1,2]]
    alg = sym2()
    x = alg.from_matrix(np.array([[2.0, 1.0], [1.0, 2.0]]))
    dec = alg.spectral_decompose(x)
    assert np.allclose(dec.eigenvalues, [3.0, 1.0], atol=1e-10)
    v1 = np.array([1.0, 1.0]) / np.sqrt(2)
    v2 = np.array([1.0, -1.0]) / np.sqrt(2)
    assert np.allclose(alg.to_matrix(dec.idempotents[0]), np.outer(v1, v1), atol=1e-10)
    assert np.allclose(alg.to_matrix(dec.idempotents[1]), np.outer(v2, v2), atol=1e-10)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: f"{a.kind}{a.rank}")
def test_spectral_invariants_random(alg):
    for idx, x in enumerate(random_elements(alg, 100, seed=4)):
        dec = alg.spectral_decompose(x)
        cs = dec.idempotents
        assert np.linalg.norm(sum(cs) - alg.unit) <= 1e-10
        assert np.linalg.norm(dec.reconstruct() - x) <= 1e-10 * (1 + np.linalg.norm(x))
        for i, ci in enumerate(cs):
            assert np.linalg.norm(alg.mult(ci, ci) - ci) <= 1e-10
            for cj in cs[i + 1 :]:
                assert np.linalg.norm(alg.mult(ci, cj)) <= 1e-10
        assert list(dec.eigenvalues) == sorted(dec.eigenvalues, reverse=True)
        assert int(np.sum(dec.multiplicities)) == alg.rank


@pytest.mark.parametrize(
    "alg", [a for a in ALGEBRAS if a.kind != "diagonal"], ids=lambda a: f"{a.kind}{a.rank}"
)
def test_determinant_matches_matrix_oracle(alg):
    rng = np.random.default_rng(5)
    for _ in range(25):
        x = rng.standard_normal(alg.dim)
        expected = np.real(np.linalg.det(np.asarray(alg.to_matrix(x))))
        assert alg.det(x) == pytest.approx(expected, abs=1e-8 * max(1, abs(expected)))


def test_determinant_diagonal():
    alg = diagonal_algebra(3)
    assert alg.det(np.array([2.0, -1.0, 3.0])) == pytest.approx(-6.0)


# -- spectral maps --------------------------------------------------------------


def test_spectral_map_examples():
    alg = diagonal_algebra(2)
    assert np.allclose(alg.spectral_map(np.zeros(2), "exp"), [1.0, 1.0])
    one = diagonal_algebra(1)
    assert np.allclose(one.spectral_map(np.array([4.0]), "log"), [np.log(4.0)])
    x = np.array([2.0, 0.0])
    assert np.allclose(alg.spectral_map(x, "pseudo_inverse", proof_convention=True), [0.5, 1.0])
    assert np.allclose(alg.spectral_map(x, "pseudo_inverse"), [0.5, 0.0])
    assert np.allclose(alg.spectral_map(np.array([2.0, -3.0]), "abs"), [2.0, 3.0])
    assert np.allclose(alg.spectral_map(np.array([2.0, 0.0]), "step"), [1.0, 0.0])


def test_pseudo_inverse_proof_convention_solves_quadratic_equation():
    # the convention exists so that P(x) y = x has the solution y for singular x
    alg = sym_real_algebra(3)
    rng = np.random.default_rng(6)
    for _ in range(10):
        a = rng.standard_normal(alg.dim)
        dec = alg.spectral_decompose(a)
        x = sum(l * c for l, c in zip([1.7, 0.0, -0.4], dec.idempotents))
        y = alg.spectral_map(x, "pseudo_inverse", proof_convention=True)
        assert np.linalg.norm(alg.quad_rep(x) @ y - x) <= 1e-8


def test_log_requires_cone():
    alg = diagonal_algebra(2)
    with pytest.raises(DomainError):
        alg.spectral_map(np.array([1.0, -1.0]), "log")


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: f"{a.kind}{a.rank}")
def test_exp_log_inverse_pair(alg):
    for u in random_elements(alg, 20, seed=7):
        assert np.linalg.norm(alg.log(alg.exp(u)) - u) <= 1e-8 * (1 + np.linalg.norm(u))


# -- cone membership ---------------------------------------------------------------


def test_cone_examples():
    alg = diagonal_algebra(2)
    assert not alg.cone_contains(np.array([1.0, -1.0]), "open")
    assert alg.cone_contains(alg.unit, "open")
    s2 = sym2()
    assert s2.cone_contains(s2.from_matrix(np.array([[2.0, 1.0], [1.0, 2.0]])), "open")
    assert alg.cone_contains(np.array([1.0, 0.0]), "closed")
    assert not alg.cone_contains(np.array([1.0, 0.0]), "open")


# -- box operators -------------------------------------------------------------------


def test_box_operator_unit_and_scalar():
    alg = sym2()
    assert np.allclose(alg.box_operator(alg.unit, alg.unit), np.eye(alg.dim), atol=1e-12)
    one = diagonal_algebra(1)
    assert np.allclose(one.box_operator(np.array([2.0]), np.array([3.0])), [[6.0]])


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: f"{a.kind}{a.rank}")
def test_box_operator_transpose(alg):
    rng = np.random.default_rng(8)
    for _ in range(10):
        u, up = rng.standard_normal(alg.dim), rng.standard_normal(alg.dim)
        assert np.allclose(alg.box_operator(u, up).T, alg.box_operator(up, u), atol=1e-10)


def test_box_exponential_acts_triangularly_on_peirce_components():
    # exp of the transposed box operator of (2y, e1) maps x1 + x0 to
    # (x1 + 2 T_e1 T_y^2 x0) + 2 T_y x0 + x0 for y in the half space
    alg = sym2()
    e1 = alg.from_matrix(np.array([[1.0, 0.0], [0.0, 0.0]]))
    peirce = alg.peirce_system(e1)
    rng = np.random.default_rng(9)
    for _ in range(20):
        y = peirce.p_half @ rng.standard_normal(alg.dim)
        x1 = peirce.p1 @ rng.standard_normal(alg.dim)
        x0 = peirce.p0 @ rng.standard_normal(alg.dim)
        op = scipy.linalg.expm(alg.box_operator(2.0 * y, e1).T)
        ty = alg.left_mult(y)
        expected = (
            x1
            + 2.0 * alg.mult(e1, ty @ (ty @ x0))
            + 2.0 * alg.mult(y, x0)
            + x0
        )
        assert np.allclose(op @ (x1 + x0), expected, atol=1e-9)


# -- Peirce systems ---------------------------------------------------------------------


def test_peirce_diagonal():
    alg = diagonal_algebra(2)
    ps = alg.peirce_system(np.array([1.0, 0.0]))
    assert np.allclose(ps.p1, np.diag([1.0, 0.0]), atol=1e-12)
    assert np.allclose(ps.p_half, np.zeros((2, 2)), atol=1e-12)
    assert np.allclose(ps.p0, np.diag([0.0, 1.0]), atol=1e-12)


def test_peirce_unit():
    alg = sym2()
    ps = alg.peirce_system(alg.unit)
    assert np.allclose(ps.p1, np.eye(alg.dim), atol=1e-12)


def test_peirce_sym2_half_space():
    alg = sym2()
    e11 = alg.from_matrix(np.array([[1.0, 0.0], [0.0, 0.0]]))
    ps = alg.peirce_system(e11)
    off = alg.from_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    e22 = alg.from_matrix(np.array([[0.0, 0.0], [0.0, 1.0]]))
    assert np.allclose(ps.p1 @ e11, e11, atol=1e-12)
    assert np.allclose(ps.p_half @ off, off, atol=1e-12)
    assert np.allclose(ps.p0 @ e22, e22, atol=1e-12)
    assert np.allclose(ps.p1 + ps.p_half + ps.p0, np.eye(alg.dim), atol=1e-12)
    assert np.allclose(ps.p1 @ ps.p_half, np.zeros((alg.dim,) * 2), atol=1e-12)


def test_peirce_rejects_non_idempotent():
    alg = sym2()
    with pytest.raises(NotIdempotent):
        alg.peirce_system(2.0 * alg.unit)


# -- operator identities --------------------------------------------------------------------


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: f"{a.kind}{a.rank}")
def test_multiplication_commutator_identity(alg):
    rng = np.random.default_rng(10)
    for _ in range(100):
        a, b, c = (rng.standard_normal(alg.dim) for _ in range(3))
        ta, tb, tc = alg.left_mult(a), alg.left_mult(b), alg.left_mult(c)
        tbc = alg.left_mult(alg.mult(b, c))
        tca = alg.left_mult(alg.mult(c, a))
        tab = alg.left_mult(alg.mult(a, b))
        total = (
            (ta @ tbc - tbc @ ta)
            + (tb @ tca - tca @ tb)
            + (tc @ tab - tab @ tc)
        )
        scale = (1 + np.linalg.norm(a)) * (1 + np.linalg.norm(b)) * (1 + np.linalg.norm(c))
        assert np.linalg.norm(total) <= 1e-9 * scale


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: f"{a.kind}{a.rank}")
def test_jordan_identity_and_inner_compatibility(alg):
    rng = np.random.default_rng(11)
    for _ in range(50):
        x, y, z = (rng.standard_normal(alg.dim) for _ in range(3))
        x2 = alg.mult(x, x)
        jordan = alg.mult(x, alg.mult(x2, y)) - alg.mult(x2, alg.mult(x, y))
        assert np.linalg.norm(jordan) <= 1e-10 * (1 + np.linalg.norm(x) ** 3 * np.linalg.norm(y))
        assoc = np.dot(alg.mult(x, y), z) - np.dot(y, alg.mult(x, z))
        assert abs(assoc) <= 1e-9 * (1 + np.linalg.norm(x) * np.linalg.norm(y) * np.linalg.norm(z))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: f"{a.kind}{a.rank}")
def test_mult_exp_matches_operator_exponential(alg):
    # independent oracle: matrix exponential of T_u
    rng = np.random.default_rng(12)
    for _ in range(10):
        u = rng.standard_normal(alg.dim)
        got = alg.mult_exp(u, t=1.0)
        assert np.allclose(got, scipy.linalg.expm(alg.left_mult(u)), atol=1e-9 * np.exp(np.linalg.norm(u)))
        assert np.allclose(got @ alg.unit, alg.exp(u), atol=1e-10 * np.exp(np.linalg.norm(u)))


def test_standard_frames_are_primitive_partitions():
    for alg in ALGEBRAS:
        frame = alg.standard_frame()
        assert len(frame) == alg.rank
        assert np.allclose(sum(frame), alg.unit, atol=1e-12)
        for i, c in enumerate(frame):
            assert np.linalg.norm(alg.mult(c, c) - c) <= 1e-12
            assert alg.trace(c) == pytest.approx(1.0, abs=1e-9)
            for d in frame[i + 1 :]:
                assert np.linalg.norm(alg.mult(c, d)) <= 1e-12


def test_make_algebra_kinds():
    assert make_algebra("rank1").dim == 1
    assert make_algebra("diagonal", 3).dim == 3
    assert make_algebra("sym_real", 3).dim == 6
    assert make_algebra("herm_complex", 2).dim == 4
    with pytest.raises(ValueError):
        make_algebra("spin", 3)
