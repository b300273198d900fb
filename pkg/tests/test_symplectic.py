import numpy as np
import pytest

from siegelflow import (
    DimensionMismatch,
    SiegelPoint,
    SymplecticMatrix,
    ValidationError,
    block_join,
    block_split,
    is_symplectic,
    mobius_act,
    random_integer_symplectic,
    random_siegel_point,
    symplectic_form,
)
from siegelflow.symplectic import cocycle_det


def test_is_symplectic_identity():
    assert is_symplectic(np.eye(2))
    assert is_symplectic(np.eye(6))


def test_is_symplectic_inversion_matrix():
    assert is_symplectic(np.array([[0.0, -1.0], [1.0, 0.0]]))


def test_is_symplectic_rejects_diag():
    assert not is_symplectic(np.diag([2.0, 1.0]))


def test_is_symplectic_odd_dimension_raises():
    with pytest.raises(DimensionMismatch):
        is_symplectic(np.eye(3))


def test_constructor_rejects_non_symplectic():
    with pytest.raises(ValidationError):
        SymplecticMatrix(1, np.diag([2.0, 1.0]))


def test_integral_flag_checked():
    m = np.array([[1.0, 0.5], [0.0, 1.0]])
    SymplecticMatrix(1, m)  # fine without the flag
    with pytest.raises(ValidationError):
        SymplecticMatrix(1, m, integral=True)


def test_mobius_inversion_fixes_i():
    gamma = SymplecticMatrix(1, np.array([[0.0, -1.0], [1.0, 0.0]]), integral=True)
    out = mobius_act(gamma, SiegelPoint.scalar(1j))
    assert abs(out.tau[0, 0] - 1j) < 1e-15


def test_mobius_translation():
    gamma = SymplecticMatrix.translation(np.array([[1.0]]))
    out = mobius_act(gamma, SiegelPoint.scalar(1j))
    assert abs(out.tau[0, 0] - (1 + 1j)) < 1e-15


def test_mobius_detim_covariance_example():
    gamma = SymplecticMatrix(1, np.array([[0.0, -1.0], [1.0, 0.0]]), integral=True)
    tau = SiegelPoint.scalar(2j)
    out = mobius_act(gamma, tau)
    assert abs(out.tau[0, 0] - 0.5j) < 1e-15
    jac = abs(cocycle_det(gamma, tau)) ** 2
    assert abs(out.det_im - tau.det_im / jac) < 1e-15


def test_genus_mismatch_raises():
    gamma = SymplecticMatrix.identity(2)
    with pytest.raises(DimensionMismatch):
        mobius_act(gamma, SiegelPoint.scalar(1j))


def test_block_split_join_roundtrip_exact():
    tau = SiegelPoint.diagonal_i(2)
    sp = block_split(tau, 1)
    assert sp.tau11[0, 0] == 1j
    assert sp.tau22[0, 0] == 1j
    assert np.all(sp.tau2 == 0)
    back = block_join(sp)
    assert np.array_equal(back.tau, tau.tau)


def test_block_split_join_random_bitexact():
    rng = np.random.default_rng(5)
    for g, r in [(2, 1), (3, 1), (3, 2)]:
        tau = random_siegel_point(g, rng)
        back = block_join(block_split(tau, r))
        assert np.array_equal(back.tau, tau.tau)


def test_block_split_bad_corank():
    with pytest.raises(IndexError):
        block_split(SiegelPoint.diagonal_i(2), 2)


@pytest.mark.parametrize("genus", [1, 2])
def test_random_words_act_and_covary(genus):
    rng = np.random.default_rng(42)
    j = symplectic_form(genus)
    worst = 0.0
    for _ in range(250):
        gamma = random_integer_symplectic(genus, rng)
        assert np.max(np.abs(gamma.entries.T @ j @ gamma.entries - j)) < 1e-9
        tau = random_siegel_point(genus, rng)
        out = mobius_act(gamma, tau)
        jac = abs(cocycle_det(gamma, tau)) ** 2
        rel = abs(out.det_im * jac - tau.det_im) / tau.det_im
        worst = max(worst, rel)
    assert worst < 1e-10


@pytest.mark.parametrize("genus", [1, 2])
def test_group_action_compatibility(genus):
    rng = np.random.default_rng(7)
    for _ in range(100):
        g1 = random_integer_symplectic(genus, rng, word_length=5)
        g2 = random_integer_symplectic(genus, rng, word_length=5)
        tau = random_siegel_point(genus, rng)
        lhs = mobius_act(g1 @ g2, tau).tau
        rhs = mobius_act(g1, mobius_act(g2, tau)).tau
        scale = max(np.max(np.abs(lhs)), 1.0)
        assert np.max(np.abs(lhs - rhs)) / scale < 1e-10


def test_minus_identity_acts_trivially():
    rng = np.random.default_rng(3)
    for genus in (1, 2, 3):
        tau = random_siegel_point(genus, rng)
        neg = SymplecticMatrix(genus, -np.eye(2 * genus), integral=True)
        out = mobius_act(neg, tau)
        assert np.max(np.abs(out.tau - tau.tau)) < 1e-14


def test_inverse_is_group_inverse():
    rng = np.random.default_rng(11)
    m = random_integer_symplectic(2, rng)
    prod = (m @ m.inverse()).entries
    assert np.max(np.abs(prod - np.eye(4))) < 1e-9


def test_point_serialization_roundtrip_exact():
    rng = np.random.default_rng(9)
    tau = random_siegel_point(2, rng)
    back = SiegelPoint.from_json_dict(tau.to_json_dict())
    assert np.array_equal(back.tau, tau.tau)


def test_matrix_serialization_roundtrip_exact():
    rng = np.random.default_rng(10)
    m = random_integer_symplectic(2, rng)
    back = SymplecticMatrix.from_json_dict(m.to_json_dict())
    assert np.array_equal(back.entries, m.entries)
    assert back.integral


def test_siegel_point_requires_positive_imaginary():
    with pytest.raises(Exception):
        SiegelPoint(1, np.array([[1.0 - 1j]]))


def test_empty_point():
    p = SiegelPoint.empty()
    assert p.genus == 0
    assert p.det_im == 1.0
