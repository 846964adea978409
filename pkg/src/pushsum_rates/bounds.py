"""
Upper bounds on the almost-sure exponential convergence rate of push-sum
under synchronous gossip.

Every bound is a log-rate per step in natural-log units, so a negative
value means contraction. A bound whose log argument is at least 1 carries
no information; it is still returned, with ``applicable=False`` and
``reason="non-contractive"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameters, InvalidSpectrum
from .graphgen import as_matrix, gamma_diag
from .operator import expected_kron_update
from .spectral import KRON_CAP, Spectrum, center, centering_projector, kron, spectral_radius

__all__ = [
    "RateBound",
    "lazy_second_moment",
    "bound_general",
    "bound_symmetric",
    "bound_transitive",
    "transitive_root",
    "bound_complete",
    "bound_eta",
]

KINDS = ("general", "symmetric", "transitive", "complete_closed_form", "eta")
SPECTRUM_TOP_TOL = 1e-10
# log arguments at or below this are exact zeros polluted by round-off
ZERO_TOL = 1e-14
UNIT_TOL = 1e-12


@dataclass(frozen=True)
class RateBound:
    kind: str
    value: float
    applicable: bool = True
    reason: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown bound kind {self.kind!r}")


def _check_q(q):
    if not 0.0 <= q <= 1.0:
        raise InvalidParameters(f"q must lie in [0, 1], got {q}")


def _half_log(kind: str, arg: float) -> RateBound:
    # eigensolver round-off: a unit top eigenvalue comes back as 1 +- few ulp,
    # and a zero one can come back slightly negative
    if abs(arg - 1.0) <= UNIT_TOL:
        arg = 1.0
    value = 0.5 * math.log(arg) if arg > ZERO_TOL else -math.inf
    if arg >= 1.0:
        return RateBound(kind, value, applicable=False, reason="non-contractive")
    return RateBound(kind, value)


def lazy_second_moment(P, q: float) -> np.ndarray:
    """B_q = P_q^T P_q + q^2 (Gamma - P^T P), symmetric positive semi-definite."""
    P = as_matrix(P)
    Pq = (1.0 - q) * np.eye(len(P)) + q * P
    B = Pq.T @ Pq + q * q * (np.diag(gamma_diag(P)) - P.T @ P)
    return 0.5 * (B + B.T)


def bound_general(P, q: float) -> RateBound:
    """Half log of the top eigenvalue of the centred ``B_q``; valid for any row-stochastic P."""
    _check_q(q)
    C = center(lazy_second_moment(P, q))
    top = float(np.linalg.eigvalsh(0.5 * (C + C.T))[-1])
    return _half_log("general", top)


def bound_symmetric(lambda2: float, q: float) -> RateBound:
    """Closed form for symmetric P: ½ log((1-q)² + 2q(1-q)λ₂ + q²)."""
    _check_q(q)
    if not -1.0 - 1e-12 <= lambda2 <= 1.0 + 1e-12:
        raise InvalidParameters(f"lambda2 must lie in [-1, 1], got {lambda2}")
    return _half_log("symmetric", (1 - q) ** 2 + 2 * q * (1 - q) * lambda2 + q * q)


def transitive_root(spec: Spectrum, q: float) -> float:
    """
    Largest root of the reduced characteristic polynomial

        f(x) = prod_{i>1}(x - a_i) - c sum_{i>1} b_i prod_{j != i, j>1}(x - a_j),

    with ``a_i = lambda_{q,i}^2``, ``b_i = 1 - lambda_i^2`` and ``c = q^2/N``.

    ``f`` is the characteristic polynomial of ``diag(a) + c b 1^T``
    restricted to indices ``i > 1``. With ``b >= 0`` the similarity
    ``diag(sqrt b)`` turns the block with ``b_i > 0`` into the symmetric
    rank-one update ``diag(a) + c sqrt(b) sqrt(b)^T``; indices with
    ``b_i = 0`` contribute ``a_i`` directly.
    """
    lam = spec.lambdas
    n = len(lam)
    if n < 2:
        raise InvalidSpectrum("need at least two eigenvalues")
    if abs(lam[0] - 1.0) > SPECTRUM_TOP_TOL:
        raise InvalidSpectrum(f"largest eigenvalue must be 1, got {lam[0]!r}")
    rest = lam[1:]
    a = ((1.0 - q) + q * rest) ** 2
    b = np.clip(1.0 - rest**2, 0.0, None)
    c = q * q / n
    live = b > 0
    root = float(a[~live].max(initial=-math.inf))
    if live.any():
        s = np.sqrt(b[live])
        M = np.diag(a[live]) + c * np.outer(s, s)
        root = max(root, float(np.linalg.eigvalsh(M)[-1]))
    return root


def bound_transitive(spec: Spectrum, q: float) -> RateBound:
    """½ log of the largest root of the reduced polynomial; for symmetric transitive P."""
    _check_q(q)
    return _half_log("transitive", transitive_root(spec, q))


def bound_complete(n: int, q: float) -> RateBound:
    """Closed form for P = J: ½ log((1-q)² + q²(1 - 1/n))."""
    if n < 2:
        raise InvalidParameters(f"need n >= 2, got {n}")
    _check_q(q)
    return _half_log("complete_closed_form", (1 - q) ** 2 + q * q * (1 - 1 / n))


def bound_eta(P, q: float, cap: int = KRON_CAP) -> RateBound:
    """
    Reference bound ½ log ρ((I-J)^{⊗2} E[K^{⊗2}]) on the Kronecker square.

    Costs a dense ``N^2 x N^2`` non-symmetric eigenproblem.
    """
    _check_q(q)
    P = as_matrix(P)
    C = centering_projector(len(P))
    M = kron(C, C, cap=cap) @ expected_kron_update(P, q, cap=cap)
    return _half_log("eta", spectral_radius(M))
