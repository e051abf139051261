import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tetratomo.errors import NotNormalized, UnphysicalBloch
from tetratomo.pauli import density_from_bloch, sigma
from tetratomo.sic import (
    FRAME_ROTATION, LABEL_SWAP, displaced_fiducials, fiducial_ket, frame, bloch_from_probabilities,
    povm_probabilities, relabel, verify_frame_equivalence,
)

S3 = math.sqrt(3)


@pytest.mark.parametrize("parity", ["even", "odd"])
def test_frame_invariants(parity):
    f = frame(parity)
    d = f.directions
    assert np.allclose(np.linalg.norm(d, axis=1), 1, atol=1e-12)
    assert np.allclose(d.sum(axis=0), 0, atol=1e-12)
    gram = d @ d.T
    assert np.allclose(gram[~np.eye(4, dtype=bool)], -1 / 3, atol=1e-12)
    effects = f.effects()
    assert np.allclose(sum(effects), np.eye(2), atol=1e-12)
    for e in effects:
        assert np.min(np.linalg.eigvalsh(e)) >= -1e-12


def test_even_and_odd_directions():
    assert np.allclose(frame("even").directions[0], np.ones(3) / S3)
    assert np.allclose(frame("odd").directions[1], np.array([1, 1, -1]) / S3)
    odd = frame("odd").directions * S3
    assert np.allclose(odd, [[-1, -1, -1], [1, 1, -1], [-1, 1, 1], [1, -1, 1]])


def test_probabilities_examples():
    even = frame("even")
    assert np.allclose(povm_probabilities((0, 0, 0), even), 0.25)
    up = (1 + 1 / S3) / 4
    down = (1 - 1 / S3) / 4
    assert np.allclose(povm_probabilities((0, 0, 1), even), [up, up, down, down], atol=1e-15)
    assert np.allclose(povm_probabilities(np.ones(3) / S3, even), [1 / 2, 1 / 6, 1 / 6, 1 / 6], atol=1e-15)


def test_probabilities_match_closed_form(rng):
    even = frame("even")
    for _ in range(100):
        px, py, pz = rng.normal(size=3) / 3
        closed = 0.25 * np.array([
            1 + (px + py + pz) / S3,
            1 + (-px - py + pz) / S3,
            1 + (px - py - pz) / S3,
            1 + (-px + py - pz) / S3,
        ])
        assert np.allclose(povm_probabilities((px, py, pz), even), closed, atol=1e-15)


def test_probabilities_match_born_rule(rng):
    for parity in ("even", "odd"):
        f = frame(parity)
        for _ in range(50):
            p = rng.normal(size=3)
            p *= rng.uniform() / np.linalg.norm(p)
            rho = density_from_bloch(p)
            born = [np.trace(rho @ e).real for e in f.effects()]
            assert np.allclose(povm_probabilities(p, f), born, atol=1e-14)


def test_inverse_examples():
    even = frame("even")
    up = (1 + 1 / S3) / 4
    down = (1 - 1 / S3) / 4
    assert np.allclose(bloch_from_probabilities([0.25] * 4, even), 0, atol=1e-15)
    assert np.allclose(bloch_from_probabilities([up, up, down, down], even), (0, 0, 1), atol=1e-12)
    assert np.allclose(bloch_from_probabilities([1 / 2, 1 / 6, 1 / 6, 1 / 6], even), np.ones(3) / S3, atol=1e-12)


def test_inverse_matches_closed_form(rng):
    P = rng.dirichlet(np.ones(4))
    p00, p01, p10, p11 = P
    expected = S3 * np.array([p00 - p01 + p10 - p11, p00 - p01 - p10 + p11, p00 + p01 - p10 - p11])
    assert np.allclose(bloch_from_probabilities(P, frame("even")), expected, atol=1e-12)


def test_inverse_tolerance():
    f = frame("even")
    p = bloch_from_probabilities(np.array([0.25, 0.25, 0.25, 0.25]) * (1 + 5e-7), f)
    assert np.allclose(p, 0, atol=1e-12)
    with pytest.raises(NotNormalized):
        bloch_from_probabilities([0.3, 0.3, 0.3, 0.3], f)


def test_unphysical_bloch():
    with pytest.raises(UnphysicalBloch):
        povm_probabilities((1, 1, 0), frame("even"))


unit_ball = st.tuples(*[st.floats(-1, 1)] * 3).filter(lambda v: sum(x * x for x in v) <= 1)


@settings(max_examples=300, deadline=None)
@given(unit_ball, st.sampled_from(["even", "odd"]))
def test_round_trip(p, parity):
    f = frame(parity)
    assert np.allclose(bloch_from_probabilities(povm_probabilities(p, f), f), p, atol=1e-12)


def test_nonnegative_on_ball(rng):
    f = frame("even")
    v = rng.normal(size=(10_000, 3))
    v *= (rng.uniform(size=(10_000, 1)) ** (1 / 3)) / np.linalg.norm(v, axis=1, keepdims=True)
    probs = 0.25 * (1 + v @ f.directions.T)
    assert probs.min() >= 0


def test_fiducial_state():
    phi = fiducial_ket()
    assert np.vdot(phi, phi).real == pytest.approx(1, abs=1e-15)
    proj = np.outer(phi, phi.conj())
    assert np.allclose(proj, density_from_bloch(np.ones(3) / S3), atol=1e-12)
    # effect 00 is half the fiducial projector
    assert np.allclose(frame("even").effects()[0], proj / 2, atol=1e-12)


def test_fiducial_born_consistency(rng):
    proj_phi = np.outer(fiducial_ket(), fiducial_ket().conj())
    for _ in range(20):
        p = rng.normal(size=3)
        p *= rng.uniform() / np.linalg.norm(p)
        rho = density_from_bloch(p)
        assert 2 * povm_probabilities(p, frame("even"))[0] == pytest.approx(np.trace(rho @ proj_phi).real, abs=1e-12)


def test_displaced_fiducials_are_sic():
    states = displaced_fiducials()
    for a, b in itertools.combinations(states, 2):
        assert abs(np.vdot(a, b)) ** 2 == pytest.approx(1 / 3, abs=1e-12)
    for psi, d in zip(states, frame("even").directions):
        assert np.allclose(np.outer(psi, psi.conj()), density_from_bloch(d), atol=1e-12)


def test_frame_equivalence():
    report = verify_frame_equivalence()
    assert report.ok and len(report.passed) == 4
    assert np.allclose(FRAME_ROTATION @ (1, 1, 1), (-1, -1, -1))
    assert np.allclose(FRAME_ROTATION @ (1, -1, -1), (1, 1, -1))
    assert np.allclose(FRAME_ROTATION @ (-1, 1, -1), (1, -1, 1))
    assert np.allclose(FRAME_ROTATION @ (-1, -1, 1), (-1, 1, 1))
    # even (1,0) lands on odd (0,1)
    assert np.allclose(report.images[2], frame("odd").directions[1])
    assert LABEL_SWAP == (0, 2, 1, 3)


def test_determinant_invariant_under_relabelling():
    for parity in ("even", "odd"):
        f = frame(parity)
        base = abs(np.linalg.det(f.probability_map()))
        assert base > 0
        for perm in itertools.permutations(range(4)):
            assert abs(np.linalg.det(relabel(f, perm).probability_map())) == pytest.approx(base, rel=1e-12)
