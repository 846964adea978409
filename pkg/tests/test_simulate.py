import math

import numpy as np
import pytest

from pushsum_rates.bounds import bound_general
from pushsum_rates.errors import WeightUnderflow
from pushsum_rates.graphgen import (
    gen_barabasi_albert,
    gen_complete,
    gen_cycle,
    gen_directed_ring,
    gen_random_regular,
    uniform_transition,
)
from pushsum_rates.operator import expected_contraction_trace
from pushsum_rates.rng import make_rng
from pushsum_rates.simulate import (
    PushSumState,
    RecipientSampler,
    UpdateMatrix,
    consensus_error,
    empirical_rate_full,
    empirical_rate_reduced,
    random_centered_rows,
    right_multiply,
    run,
    sample_update,
    step,
)
from pushsum_rates.spectral import centering_projector

from conftest import random_uniform_P, star_graph, swap_P


def ring_oracle_rate(q=0.5):
    """log of the second-largest eigenvalue modulus of the lazy 4-ring."""
    P = uniform_transition(gen_directed_ring(4)).matrix
    Pq = (1 - q) * np.eye(4) + q * P
    mods = np.sort(np.abs(np.linalg.eigvals(Pq)))[::-1]
    return math.log(mods[1])


# -- sampling ---------------------------------------------------------------


def test_deterministic_rows_always_hit(rng):
    P = uniform_transition(gen_directed_ring(5)).matrix
    for _ in range(20):
        K = sample_update(P, 0.3, rng)
        np.testing.assert_array_equal(K.targets, (np.arange(5) + 1) % 5)


def test_recipient_frequencies(rng):
    A = rng.random((4, 4))
    A[0, 2] = 0.0
    P = A / A.sum(axis=1, keepdims=True)
    sampler = RecipientSampler(P)
    draws = 100_000
    counts = np.zeros((4, 4))
    for _ in range(draws):
        counts[np.arange(4), sampler.draw(rng)] += 1
    freq = counts / draws
    se = np.sqrt(P * (1 - P) / draws)
    assert np.all(np.abs(freq - P) <= 5 * se + 1e-12)
    assert counts[0, 2] == 0


def test_full_gossip_on_J_has_one_per_row(rng):
    K = sample_update(np.full((6, 6), 1 / 6), 1.0, rng).dense()
    np.testing.assert_array_equal((K == 1).sum(axis=1), 1)
    np.testing.assert_array_equal(K.sum(axis=1), 1)


def test_right_multiply_matches_dense(rng):
    P = random_uniform_P(7, rng)
    K = sample_update(P, 0.4, rng)
    A = rng.standard_normal((3, 7))
    np.testing.assert_allclose(right_multiply(A, K), A @ K.dense(), atol=1e-14)
    v = rng.standard_normal(7)
    np.testing.assert_allclose(right_multiply(v, K), v @ K.dense(), atol=1e-14)


# -- single steps -----------------------------------------------------------


def test_q0_step_is_identity(rng):
    P = random_uniform_P(5, rng)
    s0 = PushSumState.initial(rng.standard_normal(5), centering_projector(5))
    s1 = step(s0, sample_update(P, 0.0, rng))
    np.testing.assert_array_equal(s1.x, s0.x)
    np.testing.assert_array_equal(s1.w, s0.w)
    np.testing.assert_allclose(s1.Y, s0.Y, atol=1e-16)
    assert s1.t == 1 and s0.t == 0


def test_ones_track_weights(rng):
    P = random_uniform_P(6, rng)
    s = run(PushSumState.initial(np.ones(6)), P, 0.5, 50, rng)
    np.testing.assert_array_equal(s.x, s.w)
    np.testing.assert_array_equal(s.ratios(), 1.0)


def test_swap_keeps_unit_weights(rng):
    s = run(PushSumState.initial([0.0, 1.0]), swap_P(), 0.5, 5, rng)
    np.testing.assert_allclose(s.w, [1.0, 1.0])
    np.testing.assert_allclose(s.x, [0.5, 0.5])


@pytest.mark.parametrize(
    "graph",
    [gen_barabasi_albert(24, 2, seed=1), gen_random_regular(24, 4, seed=1), gen_cycle(10), star_graph()],
    ids=["ba", "regular", "cycle", "star"],
)
def test_invariants_every_step(graph):
    rng = make_rng(4, 0)
    P = uniform_transition(graph).matrix
    n = graph.n
    x0 = rng.standard_normal(n)
    s = PushSumState.initial(x0, random_centered_rows(n, 3, rng))
    sampler = RecipientSampler(P)
    for _ in range(500):
        s = step(s, UpdateMatrix(0.6, sampler.draw(rng)))
        assert abs(s.x.sum() - x0.sum()) <= 1e-10
        assert abs(s.w.sum() - n) <= 1e-10
        assert s.w.min() > 0
        assert np.abs(s.Y.sum(axis=1)).max() <= 1e-9 * max(1.0, np.abs(s.Y).max())


def test_underflow_at_q1_zero_diagonal(rng):
    # leaves push everything to the hub; the hub picks one leaf
    P = uniform_transition(star_graph()).matrix
    s = run(PushSumState.initial(np.arange(4.0)), P, 1.0, 3, rng)
    assert s.w.min() == 0.0
    with pytest.raises(WeightUnderflow):
        consensus_error(s, 1.5)
    with pytest.raises(WeightUnderflow):
        empirical_rate_full(P, 1.0, 3, rng)


# -- rate estimators --------------------------------------------------------


def test_ring_rate_full():
    P = uniform_transition(gen_directed_ring(4)).matrix
    oracle = ring_oracle_rate()
    assert oracle == pytest.approx(math.log(math.sqrt(2) / 2))
    assert empirical_rate_full(P, 0.5, 500, make_rng(0)) == pytest.approx(oracle, abs=0.01)


def test_ring_rate_reduced():
    P = uniform_transition(gen_directed_ring(4)).matrix
    rate = empirical_rate_reduced(P, 0.5, 500, M=2, rng=make_rng(0))
    assert rate == pytest.approx(ring_oracle_rate(), abs=0.01)


def test_small_q_rate_near_zero():
    P = uniform_transition(gen_cycle(8)).matrix
    for est in (empirical_rate_full, empirical_rate_reduced):
        r = est(P, 1e-4, 300, rng=make_rng(1))
        assert -0.01 < r < 0


def test_ba_rate_below_general_bound():
    P = uniform_transition(gen_barabasi_albert(24, 2, seed=3)).matrix
    assert empirical_rate_full(P, 0.5, 500, make_rng(2)) <= bound_general(P, 0.5).value + 0.02


def test_reduced_with_full_basis_matches_full():
    P = uniform_transition(gen_random_regular(12, 3, seed=2)).matrix
    full = empirical_rate_full(P, 0.5, 1000, make_rng(5, 1))
    red = empirical_rate_reduced(P, 0.5, 1000, rng=make_rng(5, 1), initial=centering_projector(12))
    assert red == pytest.approx(full, abs=0.005)


def test_reduced_default_rows_and_bounds():
    P = uniform_transition(gen_cycle(10)).matrix
    with pytest.raises(ValueError):
        empirical_rate_reduced(P, 0.5, 10, M=11)
    rows = random_centered_rows(10, 3, make_rng(0))
    np.testing.assert_allclose(rows.sum(axis=1), 0, atol=1e-14)
    np.testing.assert_allclose(np.linalg.norm(rows, axis=1), 1)


def test_rates_reproducible():
    P = uniform_transition(gen_barabasi_albert(30, 2, seed=1)).matrix
    a = empirical_rate_full(P, 0.4, 200, make_rng(9, 3))
    b = empirical_rate_full(P, 0.4, 200, make_rng(9, 3))
    c = empirical_rate_full(P, 0.4, 200, make_rng(9, 4))
    assert a == b and a != c
    assert empirical_rate_reduced(P, 0.4, 200, rng=make_rng(9)) == empirical_rate_reduced(P, 0.4, 200, rng=make_rng(9))


def test_renormalisation_survives_long_runs():
    # rate about -0.37 per step: the unscaled product would underflow by t = 2000
    P = uniform_transition(gen_complete(24)).matrix
    r = empirical_rate_full(P, 0.5, 2000, make_rng(3))
    assert -0.45 < r < -0.3


# -- consensus error --------------------------------------------------------


def test_consensus_examples(rng):
    P = random_uniform_P(5, rng)
    s = PushSumState.initial(np.full(5, 2.5))
    for _ in range(10):
        s = step(s, sample_update(P, 0.5, rng))
        assert consensus_error(s, 2.5) == pytest.approx(0.0, abs=1e-14)
        assert consensus_error(s) == 0.0
    s0 = PushSumState.initial([0.0, 1.0])
    assert consensus_error(s0, 0.5) == 0.5
    assert consensus_error(s0) == 0.5


def test_consensus_decays_at_empirical_rate():
    P = uniform_transition(gen_complete(24)).matrix
    rng = make_rng(21, 0)
    x0 = rng.standard_normal(24) + 3.0
    s = PushSumState.initial(x0, centering_projector(24))
    sampler = RecipientSampler(P)
    logs = []
    for t in range(1, 501):
        s = step(s, UpdateMatrix(0.5, sampler.draw(rng)))
        if t % 50 == 0:
            s.renormalize()
        if t >= 100:
            logs.append(math.log(consensus_error(s)))
    slope = np.polyfit(np.arange(100, 501), logs, 1)[0]
    full = (math.log(np.linalg.norm(s.Y / s.w)) + s.log_scale - 0.5 * math.log(24)) / 500
    assert slope == pytest.approx(full, abs=0.05)


# -- bridge to the exact second moment --------------------------------------


def test_mean_square_matches_phi_star_trace():
    P = random_uniform_P(5, make_rng(77, 0))
    q = 0.5
    times = (1, 3, 5, 10)
    expected = expected_contraction_trace(P, q, max(times))
    rng = make_rng(77, 1)
    sampler = RecipientSampler(P)
    runs = 2000
    sq = np.zeros((runs, len(times)))
    for k in range(runs):
        Y = centering_projector(5)
        for t in range(1, max(times) + 1):
            Y = right_multiply(Y, UpdateMatrix(q, sampler.draw(rng)))
            if t in times:
                sq[k, times.index(t)] = np.sum(Y * Y)
    mean = sq.mean(axis=0)
    se = sq.std(axis=0, ddof=1) / math.sqrt(runs)
    assert np.all(np.abs(mean - expected[list(times)]) <= 5 * se)
