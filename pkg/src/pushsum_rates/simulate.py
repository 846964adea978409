"""
Synchronous-gossip push-sum simulator and empirical rate estimators.

At every step each vertex ``i`` keeps a ``1 - q`` share of its value and
weight and pushes the remaining ``q`` share to one recipient ``beta_i``
drawn from row ``i`` of ``P``. In matrix form ``x^T <- x^T K`` and
``w^T <- w^T K`` with ``K = (1-q) I + q sum_i e_i e_{beta_i}^T``.

The estimators track the centred product ``Y(t) = Y(0) K(1)...K(t)``
(``Y(0) = I - J`` or ``M`` random unit rows orthogonal to ``1``) and report

    (1/t) log || (1/sqrt(rows)) Y(t) diag(w(t))^{-1} ||_F .
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidInput, InvalidParameters, WeightUnderflow
from .graphgen import as_matrix
from .rng import as_generator
from .spectral import centering_projector

__all__ = [
    "UpdateMatrix",
    "RecipientSampler",
    "PushSumState",
    "sample_update",
    "right_multiply",
    "step",
    "run",
    "empirical_rate_full",
    "empirical_rate_reduced",
    "random_centered_rows",
    "consensus_error",
    "default_steps",
    "default_rows",
]

WEIGHT_FLOOR = 1e-300
RENORM_EVERY = 50


@dataclass(frozen=True)
class UpdateMatrix:
    """One realisation of the random update, stored as its recipient vector."""

    q: float
    targets: np.ndarray

    @property
    def n(self) -> int:
        return len(self.targets)

    def dense(self) -> np.ndarray:
        n = self.n
        K = (1.0 - self.q) * np.eye(n)
        K[np.arange(n), self.targets] += self.q
        return K


class RecipientSampler:
    """Draws recipient vectors from a fixed P by per-row inverse CDF."""

    def __init__(self, P):
        P = as_matrix(P)
        cdf = np.cumsum(P, axis=1)
        cdf[:, -1] = 1.0
        self.cdf = cdf
        self.n = len(P)
        # draws that land on a zero-probability column (possible only at
        # exact cdf ties) are pushed to the last column carrying mass
        self._last = np.array([np.flatnonzero(row > 0)[-1] for row in P])

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        u = 1.0 - rng.random(self.n)  # (0, 1]
        beta = (self.cdf < u[:, None]).sum(axis=1)
        return np.minimum(beta, self._last)


def sample_update(P, q: float, rng=None) -> UpdateMatrix:
    if not 0.0 <= q <= 1.0:
        raise InvalidParameters(f"q must lie in [0, 1], got {q}")
    sampler = P if isinstance(P, RecipientSampler) else RecipientSampler(P)
    return UpdateMatrix(q, sampler.draw(as_generator(rng)))


def right_multiply(A: np.ndarray, K: UpdateMatrix) -> np.ndarray:
    """A @ K in O(rows * N): column j gains q times the columns i with beta_i = j."""
    out = (1.0 - K.q) * A
    pushed = np.zeros_like(A)
    np.add.at(pushed, (Ellipsis, K.targets), A)
    out += K.q * pushed
    return out


@dataclass
class PushSumState:
    """
    Values ``x``, weights ``w`` and the tracked centred product ``Y``.

    ``Y`` is held as ``Y_stored * exp(log_scale)`` so long contractive runs
    do not underflow. ``dev`` is the deviation ``x - xbar * w`` carried
    along directly: forming it from ``x`` and ``w`` loses everything below
    machine precision relative to ``xbar``.
    """

    x: np.ndarray
    w: np.ndarray
    Y: np.ndarray | None = None
    t: int = 0
    log_scale: float = 0.0
    dev: np.ndarray | None = None

    @classmethod
    def initial(cls, x0, Y0=None) -> "PushSumState":
        x0 = np.asarray(x0, dtype=float).copy()
        Y = None if Y0 is None else np.array(Y0, dtype=float)
        if Y is not None and Y.shape[-1] != len(x0):
            raise InvalidInput("tracked matrix must have N columns")
        return cls(x=x0, w=np.ones(len(x0)), Y=Y, dev=x0 - x0.mean())

    @property
    def n(self) -> int:
        return len(self.x)

    def ratios(self) -> np.ndarray:
        if np.any(self.w <= WEIGHT_FLOOR):
            raise WeightUnderflow(f"weight underflow at t={self.t}")
        return self.x / self.w

    def tracked(self) -> np.ndarray:
        """Y(t) at its true scale."""
        if self.Y is None:
            raise InvalidInput("state does not track a matrix")
        return self.Y * math.exp(self.log_scale)

    def renormalize(self) -> None:
        """Rescale Y by a power of two, folding the factor into log_scale."""
        if self.Y is None:
            return
        peak = np.abs(self.Y).max()
        if peak == 0 or not np.isfinite(peak):
            return
        _, e = math.frexp(peak)
        self.Y = np.ldexp(self.Y, -e)
        self.log_scale += e * math.log(2.0)


def _center_rows(A):
    return A - A.mean(axis=-1, keepdims=True)


def step(state: PushSumState, K: UpdateMatrix) -> PushSumState:
    """
    Return the state after one update (the input is left untouched).

    ``Y`` and ``dev`` have zero row sums, which right-multiplication by a
    row-stochastic ``K`` preserves; they are re-projected every step so
    round-off along ``1`` (a direction ``K`` does not contract) cannot
    accumulate.
    """
    if K.n != state.n:
        raise InvalidInput(f"update has dimension {K.n}, state has {state.n}")
    Y = None if state.Y is None else _center_rows(right_multiply(state.Y, K))
    dev = None if state.dev is None else _center_rows(right_multiply(state.dev, K))
    return replace(
        state,
        x=right_multiply(state.x, K),
        w=right_multiply(state.w, K),
        Y=Y,
        t=state.t + 1,
        dev=dev,
    )


def run(state: PushSumState, P, q: float, steps: int, rng=None, renormalize: bool = True) -> PushSumState:
    """Advance ``state`` by ``steps`` i.i.d. updates drawn from ``P``."""
    rng = as_generator(rng)
    sampler = RecipientSampler(P)
    for _ in range(steps):
        state = step(state, UpdateMatrix(q, sampler.draw(rng)))
        if renormalize and state.t % RENORM_EVERY == 0:
            state.renormalize()
    return state


def _rate(state: PushSumState, rows: int) -> float:
    if np.any(state.w <= WEIGHT_FLOOR):
        raise WeightUnderflow(f"weight underflow at t={state.t} (min w = {state.w.min():.3e})")
    norm = np.linalg.norm(state.Y / state.w)
    if norm == 0:
        return -math.inf
    return (math.log(norm) + state.log_scale - 0.5 * math.log(rows)) / state.t


def _check_run(q, t):
    if not 0.0 <= q <= 1.0:
        raise InvalidParameters(f"q must lie in [0, 1], got {q}")
    if t < 1:
        raise InvalidParameters(f"t must be at least 1, got {t}")


def empirical_rate_full(P, q: float, t: int, rng=None) -> float:
    """Rate estimate tracking the full ``(I - J) H(t)``."""
    _check_run(q, t)
    P = as_matrix(P)
    n = len(P)
    state = PushSumState.initial(np.zeros(n), centering_projector(n))
    state = run(state, P, q, t, rng)
    return _rate(state, n)


def random_centered_rows(n: int, m: int, rng=None) -> np.ndarray:
    """``m`` independent rows uniform on the unit sphere of the complement of 1."""
    rng = as_generator(rng)
    X = rng.standard_normal((m, n))
    X -= X.mean(axis=1, keepdims=True)
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def empirical_rate_reduced(P, q: float, t: int, M: int | None = None, rng=None, initial=None) -> float:
    """
    Rate estimate tracking only ``M`` random starting rows.

    ``M`` defaults to ``floor(sqrt(N))``. Passing ``initial`` (an ``M x N``
    matrix with rows orthogonal to 1) skips the random draw of the rows.
    """
    _check_run(q, t)
    P = as_matrix(P)
    n = len(P)
    rng = as_generator(rng)
    if initial is None:
        M = default_rows(n) if M is None else M
        if not 1 <= M <= n:
            raise InvalidParameters(f"need 1 <= M <= N, got M={M}, N={n}")
        initial = random_centered_rows(n, M, rng)
    else:
        initial = np.atleast_2d(np.asarray(initial, dtype=float))
        if initial.shape[1] != n:
            raise InvalidInput("initial rows must have N columns")
        M = len(initial)
    state = PushSumState.initial(np.zeros(n), initial)
    state = run(state, P, q, t, rng)
    return _rate(state, M)


def consensus_error(state: PushSumState, xbar: float | None = None) -> float:
    """
    max_i |x_i / w_i - xbar|.

    With ``xbar=None`` the target is the true initial average and the error
    is read from the tracked deviation, which stays accurate far below
    ``1e-16 * |xbar|``.
    """
    if xbar is None:
        if state.dev is None:
            raise InvalidInput("state carries no deviation vector")
        if np.any(state.w <= WEIGHT_FLOOR):
            raise WeightUnderflow(f"weight underflow at t={state.t}")
        return float(np.abs(state.dev / state.w).max())
    return float(np.abs(state.ratios() - xbar).max())


def default_steps(n: int) -> int:
    return 500 if n <= 120 else 1000


def default_rows(n: int) -> int:
    return math.isqrt(n)
