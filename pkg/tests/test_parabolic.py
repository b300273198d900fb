import numpy as np
import pytest

from siegelflow import (
    NotInParabolic,
    ParabolicElement,
    SiegelPoint,
    SymplecticMatrix,
    assemble,
    embed_gamma,
    factor,
    mobius_act,
    random_siegel_point,
)
from siegelflow.parabolic import act, act_g1, act_g2, act_g3, g3_factor, random_parabolic


def trivial_element(g):
    return ParabolicElement(
        genus=g,
        gamma_sub=SymplecticMatrix.identity(g - 1),
        m=np.zeros(g - 1, dtype=np.int64),
        n=np.zeros(g - 1, dtype=np.int64),
        q=0,
    )


def test_assemble_trivial_is_identity():
    m = assemble(trivial_element(2))
    assert np.array_equal(m.int_entries, np.eye(4, dtype=np.int64))


def test_assemble_pure_shear_matches_g3():
    p = ParabolicElement(
        genus=2,
        gamma_sub=SymplecticMatrix.identity(1),
        m=[0],
        n=[0],
        q=1,
    )
    assert np.array_equal(assemble(p).int_entries, g3_factor(1, 2).int_entries)
    expected = np.eye(4, dtype=np.int64)
    expected[0, 2] = 1
    assert np.array_equal(assemble(p).int_entries, expected)


def test_assemble_pure_g1_block_form():
    inv = SymplecticMatrix(1, np.array([[0.0, -1.0], [1.0, 0.0]]), integral=True)
    p = ParabolicElement(genus=2, gamma_sub=inv, m=[0], n=[0], q=0)
    expected = np.eye(4, dtype=np.int64)
    expected[1, 1] = 0
    expected[1, 3] = -1
    expected[3, 1] = 1
    expected[3, 3] = 0
    assert np.array_equal(assemble(p).int_entries, expected)


def test_factor_identity():
    p = factor(SymplecticMatrix.identity(2))
    assert p.q == 0
    assert np.all(p.m == 0) and np.all(p.n == 0)
    assert np.array_equal(p.gamma_sub.int_entries, np.eye(2, dtype=np.int64))


def test_factor_rejects_inversion():
    with pytest.raises(NotInParabolic):
        factor(SymplecticMatrix.inversion(2))


@pytest.mark.parametrize("genus", [2, 3])
def test_factor_roundtrip_random(genus):
    rng = np.random.default_rng(1000 + genus)
    for _ in range(300):
        p = random_parabolic(genus, rng, bound=3)
        m = assemble(p)
        back = factor(m)
        assert back.q == p.q
        assert np.array_equal(back.m, p.m)
        assert np.array_equal(back.n, p.n)
        assert np.array_equal(back.gamma_sub.int_entries, p.gamma_sub.int_entries)
        assert np.array_equal(assemble(back).int_entries, m.int_entries)


def test_act_g3_shifts_top_left_only():
    rng = np.random.default_rng(2)
    tau = random_siegel_point(2, rng)
    out = act_g3(1, tau)
    assert abs(out.tau[0, 0] - tau.tau[0, 0] - 1) < 1e-15
    assert np.array_equal(out.tau[1:, 1:], tau.tau[1:, 1:])
    assert np.array_equal(out.tau[0, 1:], tau.tau[0, 1:])


def test_act_g2_spec_example():
    tau = SiegelPoint.diagonal_i(2)
    out = act_g2([1], [0], tau)
    assert abs(out.tau[0, 0] - 2j) < 1e-15
    assert abs(out.tau[0, 1] - 1j) < 1e-15
    assert abs(out.tau[1, 1] - 1j) < 1e-15


def test_act_g1_diagonal_example():
    inv = SymplecticMatrix.inversion(1)
    tau = SiegelPoint(2, np.diag([1j, 2j]))
    out = act_g1(inv, tau)
    assert abs(out.tau[1, 1] - 0.5j) < 1e-15
    assert abs(out.tau[0, 0] - 1j) < 1e-15


@pytest.mark.parametrize("genus", [2, 3])
def test_closed_form_actions_match_mobius(genus):
    rng = np.random.default_rng(2000 + genus)
    for _ in range(300):
        p = random_parabolic(genus, rng, bound=3)
        tau = random_siegel_point(genus, rng)
        via_closed = act(p, tau).tau
        via_mobius = mobius_act(assemble(p), tau).tau
        scale = max(np.max(np.abs(via_mobius)), 1.0)
        assert np.max(np.abs(via_closed - via_mobius)) / scale < 1e-10


@pytest.mark.parametrize("genus", [2, 3])
def test_g2_g3_fix_trailing_block(genus):
    rng = np.random.default_rng(3000 + genus)
    for _ in range(50):
        tau = random_siegel_point(genus, rng)
        m = rng.integers(-2, 3, size=genus - 1)
        n = rng.integers(-2, 3, size=genus - 1)
        out = act_g2(m, n, tau)
        assert np.array_equal(out.tau[1:, 1:], tau.tau[1:, 1:])
        out = act_g3(int(rng.integers(-2, 3)), tau)
        assert np.array_equal(out.tau[1:, 1:], tau.tau[1:, 1:])


def test_act_g1_transforms_trailing_block():
    rng = np.random.default_rng(5)
    for _ in range(50):
        gamma = __import__("siegelflow").random_integer_symplectic(2, rng, word_length=5)
        tau = random_siegel_point(3, rng)
        out = act_g1(gamma, tau)
        base = SiegelPoint(2, tau.tau[1:, 1:])
        expect = mobius_act(gamma, base).tau
        assert np.max(np.abs(out.tau[1:, 1:] - expect)) < 1e-10 * max(np.max(np.abs(expect)), 1)


@pytest.mark.parametrize("genus", [2, 3])
def test_embed_gamma_matches_act_g1(genus):
    rng = np.random.default_rng(4000 + genus)
    for _ in range(100):
        gamma = __import__("siegelflow").random_integer_symplectic(genus - 1, rng, word_length=4)
        emb = embed_gamma(gamma)
        tau = random_siegel_point(genus, rng)
        lhs = mobius_act(emb, tau).tau
        rhs = act_g1(gamma, tau).tau
        scale = max(np.max(np.abs(lhs)), 1.0)
        assert np.max(np.abs(lhs - rhs)) / scale < 1e-10


def test_embed_gamma_identity_and_inversion():
    assert np.array_equal(
        embed_gamma(SymplecticMatrix.identity(1)).int_entries, np.eye(4, dtype=np.int64)
    )
    inv = SymplecticMatrix(1, np.array([[0.0, -1.0], [1.0, 0.0]]), integral=True)
    emb = embed_gamma(inv).int_entries
    expected = np.eye(4, dtype=np.int64)
    expected[1, 1] = 0
    expected[1, 3] = -1
    expected[3, 1] = 1
    expected[3, 3] = 0
    assert np.array_equal(emb, expected)


def test_parabolic_serialization_roundtrip():
    rng = np.random.default_rng(77)
    p = random_parabolic(2, rng)
    back = ParabolicElement.from_json_dict(p.to_json_dict())
    assert back.q == p.q
    assert np.array_equal(back.m, p.m)
    assert np.array_equal(back.n, p.n)
    assert np.array_equal(back.gamma_sub.int_entries, p.gamma_sub.int_entries)
