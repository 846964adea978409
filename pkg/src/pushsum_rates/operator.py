"""
Second-moment operator of the random update and its adjoint.

For the random update ``K = (1-q) I + q L`` (``L`` has a single 1 per row,
in column ``beta_i`` drawn from row ``i`` of ``P``)::

    phi(X)      = E[K X K^T]
    phi_star(Y) = adjoint of phi under <A, B> = Tr(A B^T)

Both are evaluated from their closed forms. Iterating ``phi_star`` on
``I - J`` gives the exact expected squared disagreement
``E ||(I - J) H(t)||_F^2`` of the product ``H(t) = K(1)...K(t)``. For
symmetric vertex-transitive ``P`` the iterates share eigenvectors with ``P``
and only their eigenvalues need to be tracked (:func:`mu_recursion`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, InvalidParameters, TooLarge
from .graphgen import as_matrix
from .spectral import KRON_CAP, Spectrum, center, centering_projector

__all__ = [
    "diag_vector",
    "diag_matrix",
    "phi_apply",
    "phi_star_apply",
    "expected_contraction_trace",
    "MuTrajectory",
    "mu_recursion",
    "recursion_matrix",
    "expected_kron_update",
]


def diag_vector(X) -> np.ndarray:
    """Diagonal of a matrix as a vector."""
    return np.diagonal(np.asarray(X)).copy()


def diag_matrix(v) -> np.ndarray:
    """Diagonal matrix with ``v`` on the diagonal (left inverse of :func:`diag_vector`)."""
    return np.diag(np.asarray(v, dtype=float))


def _operands(P, q, X):
    P = as_matrix(P)
    if not 0.0 <= q <= 1.0:
        raise InvalidParameters(f"q must lie in [0, 1], got {q}")
    X = np.asarray(X, dtype=float)
    if X.shape != P.shape:
        raise InvalidInput(f"dimension mismatch: P is {P.shape}, argument is {X.shape}")
    Pq = (1.0 - q) * np.eye(len(P)) + q * P
    return P, Pq, X


def phi_apply(P, q: float, X) -> np.ndarray:
    """E[K X K^T] = P_q X P_q^T + q^2 (diag(P diag(X)) - diag(diag(P X P^T)))."""
    P, Pq, X = _operands(P, q, X)
    # diag(P X P^T)_i = sum_jk p_ij x_jk p_ik
    pxp_diag = np.einsum("ij,jk,ik->i", P, X, P)
    out = Pq @ X @ Pq.T
    out[np.diag_indices_from(out)] += q * q * (P @ np.diagonal(X) - pxp_diag)
    return out


def phi_star_apply(P, q: float, Y) -> np.ndarray:
    """Adjoint: P_q^T Y P_q + q^2 (diag(P^T diag(Y)) - P^T diag(diag(Y)) P)."""
    P, Pq, Y = _operands(P, q, Y)
    y = np.diagonal(Y)
    out = Pq.T @ Y @ Pq - q * q * (P.T * y) @ P
    out[np.diag_indices_from(out)] += q * q * (P.T @ y)
    return out


def expected_contraction_trace(P, q: float, t: int) -> np.ndarray:
    """``Tr (phi_star)^s (I - J)`` for ``s = 0..t``."""
    if t < 0:
        raise InvalidParameters(f"t must be non-negative, got {t}")
    P = as_matrix(P)
    X = centering_projector(len(P))
    out = np.empty(t + 1)
    out[0] = np.trace(X)
    for s in range(1, t + 1):
        # the iterates stay symmetric with rows orthogonal to 1; re-centring
        # stops round-off along J (a fixed direction) from swamping the decay
        X = center(phi_star_apply(P, q, X))
        X = 0.5 * (X + X.T)
        out[s] = np.trace(X)
    return out


@dataclass(frozen=True)
class MuTrajectory:
    """Eigenvalues ``mu`` of the t-th adjoint iterate, aligned with the spectrum of P."""

    t: int
    mu: np.ndarray

    @property
    def r(self) -> float:
        """Common diagonal element, mean of the eigenvalues."""
        return float(self.mu.mean())


def recursion_matrix(spec: Spectrum, q: float) -> np.ndarray:
    """
    Linear map advancing the eigenvalue vector one step:
    ``diag(lambda_q^2) + (q^2 / N) b 1^T`` with ``b_i = 1 - lambda_i^2``.
    """
    lam = spec.lambdas
    n = len(lam)
    b = 1.0 - lam**2
    return np.diag(spec.lazy(q) ** 2) + (q * q / n) * np.outer(b, np.ones(n))


def mu_recursion(spec: Spectrum, q: float, t: int) -> list[MuTrajectory]:
    """
    Iterate ``mu_{s+1} = lambda_q^2 mu_s + q^2 r_s (1 - lambda^2)`` from
    ``mu_0 = (0, 1, ..., 1)``. Returns the ``t + 1`` states ``s = 0..t``.
    """
    if not 0.0 <= q <= 1.0:
        raise InvalidParameters(f"q must lie in [0, 1], got {q}")
    lam = spec.lambdas
    n = len(lam)
    lq2 = spec.lazy(q) ** 2
    b = 1.0 - lam**2
    mu = np.ones(n)
    mu[0] = 0.0
    traj = [MuTrajectory(0, mu)]
    for s in range(1, t + 1):
        mu = lq2 * mu + (q * q) * mu.mean() * b
        traj.append(MuTrajectory(s, mu))
    return traj


def expected_kron_update(P, q: float, cap: int = KRON_CAP) -> np.ndarray:
    """
    E[K (x) K] as an ``N^2 x N^2`` matrix (row-major vectorisation, so it
    acts on ``vec(X)`` exactly as ``phi`` acts on ``X``).
    """
    P = as_matrix(P)
    n = len(P)
    if n * n > cap:
        raise TooLarge(f"Kronecker dimension {n * n} exceeds cap {cap}")
    if not 0.0 <= q <= 1.0:
        raise InvalidParameters(f"q must lie in [0, 1], got {q}")
    eye = np.eye(n)
    ELL = np.kron(P, P)
    # a single vertex never sends to two recipients: rows (i, i) are p_ij on (j, j)
    same = np.arange(n) * (n + 1)
    ELL[same, :] = 0.0
    ELL[np.ix_(same, same)] = P
    return (
        (1.0 - q) ** 2 * np.eye(n * n)
        + q * (1.0 - q) * (np.kron(eye, P) + np.kron(P, eye))
        + q * q * ELL
    )
