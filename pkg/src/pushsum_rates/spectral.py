"""Dense linear-algebra kernel: eigenvalues, spectral radius, centering, Kronecker products."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NumericalFailure, TooLarge

SYMMETRY_TOL = 1e-10
RESIDUAL_TOL = 1e-8
KRON_CAP = 250**2


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues of a symmetric matrix, sorted descending."""

    lambdas: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float).ravel()
        if np.any(np.diff(lam) > 0):
            raise InvalidInput("eigenvalues must be sorted in descending order")
        lam.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)

    @property
    def n(self) -> int:
        return len(self.lambdas)

    def lazy(self, q: float) -> np.ndarray:
        """Eigenvalues (1 - q) + q*lambda of the lazy matrix."""
        return (1.0 - q) + q * self.lambdas

    def __len__(self):
        return len(self.lambdas)


def _check_square(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidInput("matrix has non-finite entries")
    return M


def is_symmetric(M, tol: float = SYMMETRY_TOL) -> bool:
    M = np.asarray(M)
    return M.shape[0] == M.shape[1] and bool(np.abs(M - M.T).max(initial=0.0) <= tol)


def sym_eigenvalues(M) -> Spectrum:
    M = _check_square(M)
    if not is_symmetric(M):
        raise InvalidInput("matrix is not symmetric within 1e-10")
    S = 0.5 * (M + M.T)
    try:
        vals = np.linalg.eigvalsh(S)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(str(exc)) from exc
    order = np.argsort(-vals, kind="stable")
    return Spectrum(vals[order])


def spectral_radius(M) -> float:
    """
    Largest eigenvalue modulus.

    Symmetric input goes through the symmetric eigensolver; anything else
    through LAPACK's Hessenberg QR iteration.
    """
    M = _check_square(M)
    if M.size == 0:
        return 0.0
    try:
        if is_symmetric(M):
            vals = np.linalg.eigvalsh(0.5 * (M + M.T))
        else:
            vals = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigenvalue iteration did not converge: {exc}") from exc
    return float(np.abs(vals).max())


def averaging_projector(n: int) -> np.ndarray:
    """J = 11^T / n."""
    return np.full((n, n), 1.0 / n)


def centering_projector(n: int) -> np.ndarray:
    """I - J, the orthogonal projector onto the complement of the all-ones vector."""
    return np.eye(n) - averaging_projector(n)


def center(M) -> np.ndarray:
    """(I - J) M (I - J), computed by subtracting row and column means."""
    M = _check_square(M)
    C = M - M.mean(axis=0, keepdims=True)
    return C - C.mean(axis=1, keepdims=True)


def kron(A, B, cap: int = KRON_CAP) -> np.ndarray:
    """Kronecker product with block (i, j) equal to a_ij * B."""
    A = _check_square(A)
    B = _check_square(B)
    dim = A.shape[0] * B.shape[0]
    if dim > cap:
        raise TooLarge(f"Kronecker dimension {dim} exceeds cap {cap}")
    return np.kron(A, B)
