import itertools
import math

import numpy as np
import pytest

from conftest import random_density
from tetratomo.errors import IndexingMismatch, NotNormalized
from tetratomo.numerics import tensor
from tetratomo.pauli import I2, SX, SY, SZ, bell_state, bloch_vector, density_from_bloch
from tetratomo.sic import frame, povm_probabilities
from tetratomo.wigner import (
    W_TA_PSI_MINUS, W_TT_PHI_PLUS, W_TT_PSI_MINUS, QuartitWigner, density_from_quartit_wigner,
    enumerate_qubit_wigner_sets, fidelity, grid_coordinates, grid_distribution, pauli_orbit,
    phase_point_operators, povm_probs_from_qubit_wigner, quartit_wigner, quartit_wigner_from_joint,
    qubit_set_axioms, qubit_wigner, qubit_wigner_from_povm_probs, relabeled_tt_grid, to_grid,
    weyl_coefficients, wigner_from_weyl,
)

S3 = math.sqrt(3)
KET0 = np.array([1, 0], dtype=complex)
KETP = np.array([1, 1], dtype=complex) / math.sqrt(2)


def proj(k):
    return np.outer(k, k.conj())


def born_table_from_correlations(rho, parity_a, parity_b):
    """Independent route to the joint table: (1 + a.t + b.s + t^T T s)/16."""
    ta = frame(parity_a).directions
    tb = frame(parity_b).directions
    a = np.array([np.trace(rho @ tensor(s, I2)).real for s in (SX, SY, SZ)])
    b = np.array([np.trace(rho @ tensor(I2, s)).real for s in (SX, SY, SZ)])
    T = np.array([[np.trace(rho @ tensor(u, v)).real for v in (SX, SY, SZ)] for u in (SX, SY, SZ)])
    return (1 + (ta @ a)[:, None] + (tb @ b)[None, :] + ta @ T @ tb.T) / 16


# --- qubit ---------------------------------------------------------------------

def test_weyl_examples():
    assert np.allclose(weyl_coefficients(I2 / 2), [[0.5, 0], [0, 0]])
    assert np.allclose(weyl_coefficients(proj(KET0)), [[0.5, 0.5], [0, 0]])


def test_weyl_is_half_bloch(rng):
    for _ in range(20):
        p = rng.normal(size=3)
        p *= rng.uniform() / np.linalg.norm(p)
        w = weyl_coefficients(density_from_bloch(p))
        assert w[0, 0] == pytest.approx(0.5)
        assert np.allclose([w[0, 1], w[1, 0], w[1, 1]], np.array([p[2], p[0], p[1]]) / 2)


def test_qubit_wigner_examples():
    assert np.allclose(qubit_wigner(proj(KET0)), [[0.5, 0.5], [0, 0]])     # (1/2) delta_{k,0}
    assert np.allclose(qubit_wigner(proj(KETP)), [[0.5, 0], [0.5, 0]])     # (1/2) delta_{l,0}
    assert np.allclose(qubit_wigner(I2 / 2), 0.25)


def test_qubit_wigner_range(rng):
    # range for pure states along the tops is [(1 - sqrt3)/4, (1 + sqrt3)/4]
    top = qubit_wigner(density_from_bloch(np.ones(3) / S3))
    assert top[0, 0] == pytest.approx((1 + S3) / 4)
    assert top[0, 1] == pytest.approx((1 - S3 / 3) / 4)
    anti = qubit_wigner(density_from_bloch(-np.ones(3) / S3))
    assert anti[0, 0] == pytest.approx((1 - S3) / 4)
    for _ in range(500):
        W = qubit_wigner(random_density(rng, 2))
        assert W.sum() == pytest.approx(1, abs=1e-12)
        assert (1 - S3) / 4 - 1e-12 <= W.min() and W.max() <= (1 + S3) / 4 + 1e-12


def test_fourier_transform_is_involution(rng):
    for _ in range(1000):
        w = weyl_coefficients(random_density(rng, 2))
        assert np.allclose(wigner_from_weyl(wigner_from_weyl(w)), w, atol=1e-14)


def test_povm_from_wigner_examples():
    up = (1 + 1 / S3) / 4
    p0 = povm_probs_from_qubit_wigner(qubit_wigner(proj(KET0)))
    assert p0[0] == pytest.approx(up) and p0[1] == pytest.approx(up)
    assert np.allclose(povm_probs_from_qubit_wigner(np.full((2, 2), 0.25)), 0.25)
    pp = povm_probs_from_qubit_wigner(qubit_wigner(proj(KETP)))
    assert pp[0] == pytest.approx(up) and pp[2] == pytest.approx(up)


def test_povm_from_wigner_matches_frame(rng):
    for _ in range(200):
        rho = random_density(rng, 2)
        W = qubit_wigner(rho)
        P = povm_probabilities(bloch_vector(rho), frame("even"))
        assert np.allclose(povm_probs_from_qubit_wigner(W), P, atol=1e-14)
        assert np.allclose(qubit_wigner_from_povm_probs(P), W, atol=1e-14)


def test_canonical_phase_point_operators():
    even = phase_point_operators("even")
    odd = phase_point_operators("odd")
    assert np.allclose(even[(0, 0)], 0.5 * (I2 + SX + SY + SZ))
    assert np.allclose(odd[(0, 0)], 0.5 * (I2 - SX - SY - SZ))
    for L, d in enumerate(frame("even").directions):
        assert np.allclose(even[L], 0.5 * (I2 + S3 * (d[0] * SX + d[1] * SY + d[2] * SZ)))


def test_qubit_wigner_is_phase_point_expectation(rng):
    even = phase_point_operators("even")
    for _ in range(50):
        rho = random_density(rng, 2)
        direct = np.array([[0.5 * np.trace(rho @ even[(k, l)]).real for l in range(2)] for k in range(2)])
        assert np.allclose(direct, qubit_wigner(rho), atol=1e-14)


def test_eight_qubit_sets():
    groups = enumerate_qubit_wigner_sets()
    assert len(groups["even"]) == 4 and len(groups["odd"]) == 4
    for s in groups["even"] + groups["odd"]:
        assert all(qubit_set_axioms(s).values()), s.signs
        assert np.allclose(sum(s.operators), 2 * I2, atol=1e-12)


def test_qubit_orbits():
    groups = enumerate_qubit_wigner_sets()
    even_orbit = {(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)}
    assert set(pauli_orbit(phase_point_operators("even"))) == even_orbit
    for s in groups["even"]:
        assert set(pauli_orbit(s)) == even_orbit
    odd_orbit = {s.signs for s in groups["odd"]}
    for s in groups["odd"]:
        assert set(pauli_orbit(s)) == odd_orbit
    assert not even_orbit & odd_orbit


# --- two qubits ----------------------------------------------------------------

SINGLET_TT_TABLE = (1 - np.eye(4)) / 12
SINGLET_TA_TABLE = np.where(np.eye(4, dtype=bool), 1 / 8, 1 / 24)


def test_joint_to_wigner_examples():
    assert np.allclose(quartit_wigner_from_joint(SINGLET_TT_TABLE).values, W_TT_PSI_MINUS, atol=1e-12)
    assert np.allclose(quartit_wigner_from_joint(np.full((4, 4), 1 / 16)).values, 1 / 16, atol=1e-12)
    assert np.allclose(quartit_wigner_from_joint(SINGLET_TA_TABLE).values, np.eye(4) / 4, atol=1e-12)


def test_golden_matrices():
    assert np.allclose(W_TT_PSI_MINUS * 8, [[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]])
    assert np.allclose(W_TT_PHI_PLUS * 8, [[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1]])


def test_uniform_marginals_simplification(rng):
    for _ in range(20):
        # random doubly-stochastic table / 4 via Birkhoff mixture of permutations
        perms = list(itertools.permutations(range(4)))
        weights = rng.dirichlet(np.ones(6))
        P = sum(w * np.eye(4)[list(perms[i])] for w, i in zip(weights, rng.choice(24, 6))) / 4
        assert np.allclose(quartit_wigner_from_joint(P).values, 3 * P - 1 / 8, atol=1e-14)


def test_joint_table_errors():
    with pytest.raises(NotNormalized):
        quartit_wigner_from_joint(np.full((4, 4), 0.1))
    bad = np.full((4, 4), 1 / 16)
    bad[0, 0] = -0.01
    bad[0, 1] += 0.01
    with pytest.raises(NotNormalized):
        quartit_wigner_from_joint(bad)


def test_reconstruction_examples():
    assert np.allclose(density_from_quartit_wigner(W_TT_PSI_MINUS, "even", "even"), bell_state("psi-minus"), atol=1e-12)
    assert np.allclose(density_from_quartit_wigner(np.full((4, 4), 1 / 16)), np.eye(4) / 4, atol=1e-12)
    assert np.allclose(density_from_quartit_wigner(W_TT_PHI_PLUS, "even", "even"), bell_state("phi-plus"), atol=1e-12)
    assert np.allclose(density_from_quartit_wigner(W_TA_PSI_MINUS, "even", "odd"), bell_state("psi-minus"), atol=1e-12)


def test_bell_coefficients_match_golden():
    assert np.allclose(quartit_wigner(bell_state("psi-minus"), "even", "even").values, W_TT_PSI_MINUS, atol=1e-12)
    assert np.allclose(quartit_wigner(bell_state("psi-minus"), "even", "odd").values, W_TA_PSI_MINUS, atol=1e-12)
    assert np.allclose(quartit_wigner(bell_state("phi-plus"), "even", "even").values, W_TT_PHI_PLUS, atol=1e-12)


@pytest.mark.parametrize("parities", [("even", "even"), ("even", "odd"), ("odd", "even"), ("odd", "odd")])
def test_round_trip_random_states(rng, parities):
    for _ in range(250):
        rho = random_density(rng, 4)
        W = quartit_wigner(rho, *parities)
        assert W.total() == pytest.approx(1, abs=1e-12)
        assert np.allclose(density_from_quartit_wigner(W, *parities), rho, atol=1e-10)


@pytest.mark.parametrize("parities", [("even", "even"), ("even", "odd")])
def test_joint_statistics_give_wigner_coefficients(rng, parities):
    for _ in range(1000):
        rho = random_density(rng, 4)
        P = born_table_from_correlations(rho, *parities)
        from_joint = quartit_wigner_from_joint(P, parities).values
        assert np.allclose(from_joint, quartit_wigner(rho, *parities).values, atol=1e-10)


def test_fidelity_examples():
    assert fidelity(W_TT_PSI_MINUS, W_TT_PSI_MINUS) == pytest.approx(1, abs=1e-12)
    assert fidelity(W_TT_PSI_MINUS, W_TT_PHI_PLUS) == pytest.approx(0, abs=1e-12)
    v = 0.947
    rho = v * bell_state("psi-minus") + (1 - v) * np.eye(4) / 4
    f = fidelity(quartit_wigner(rho), W_TT_PSI_MINUS)
    assert f == pytest.approx(v + (1 - v) / 4, abs=1e-12)
    assert round(f, 3) == 0.960


def test_fidelity_is_hilbert_schmidt_overlap(rng):
    for parities in (("even", "even"), ("even", "odd")):
        for _ in range(100):
            a, b = random_density(rng, 4), random_density(rng, 4)
            f = fidelity(quartit_wigner(a, *parities), quartit_wigner(b, *parities))
            assert f == pytest.approx(np.trace(a @ b).real, abs=1e-12)
            purity = fidelity(quartit_wigner(a, *parities), quartit_wigner(a, *parities))
            assert 0.25 - 1e-12 <= purity <= 1 + 1e-12


def test_fidelity_rejects_mixed_indexing():
    with pytest.raises(IndexingMismatch):
        fidelity(QuartitWigner(W_TT_PSI_MINUS, "detector"), QuartitWigner(W_TT_PSI_MINUS, "grid"))
    with pytest.raises(IndexingMismatch):
        density_from_quartit_wigner(QuartitWigner(W_TT_PSI_MINUS, "grid"))


# --- grid ----------------------------------------------------------------------

def test_grid_coordinates():
    assert grid_coordinates(0, 0, 0, 0) == (0, 0)
    assert grid_coordinates(0, 1, 0, 1) == (0, 3)
    assert grid_coordinates(1, 0, 1, 0) == (3, 0)
    points = {grid_coordinates(*bits) for bits in itertools.product((0, 1), repeat=4)}
    assert points == set(itertools.product(range(4), repeat=2))
    with pytest.raises(ValueError):
        grid_coordinates(2, 0, 0, 0)


def test_grid_distribution_singlet():
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[0, 3] = expected[3, 0] = expected[3, 3] = 0.25
    g = grid_distribution(bell_state("psi-minus"))
    assert g.indexing == "grid"
    assert np.allclose(g.values, expected, atol=1e-12)
    assert np.allclose(grid_distribution(np.eye(4) / 4).values, 1 / 16, atol=1e-12)


def test_relabeled_tt_grid_gives_w_prime():
    w_prime = np.full((4, 4), 1 / 8)
    w_prime[0, 0] = w_prime[0, 3] = w_prime[3, 0] = w_prime[3, 3] = -1 / 8
    assert np.allclose(relabeled_tt_grid(bell_state("psi-minus")).values, w_prime, atol=1e-12)


def test_relabeled_tt_grid_is_tt_layout(rng):
    for _ in range(100):
        rho = random_density(rng, 4)
        assert np.allclose(relabeled_tt_grid(rho).values, grid_distribution(rho, "even").values, atol=1e-12)
        assert np.allclose(to_grid(quartit_wigner(rho, "even", "odd")).values, grid_distribution(rho).values)


def test_grid_row_marginals_are_product_basis_probabilities(rng):
    a = phase_point_operators("even")
    b = phase_point_operators("odd")
    for _ in range(100):
        rho = random_density(rng, 4)
        g = grid_distribution(rho).values
        for i, k in itertools.product(range(2), repeat=2):
            m = i + 2 * k
            line_a = 0.5 * (a[(i, 0)] + a[(i, 1)])
            line_b = 0.5 * (b[(k, 0)] + b[(k, 1)])
            assert g[m].sum() == pytest.approx(np.trace(rho @ tensor(line_a, line_b)).real, abs=1e-12)
