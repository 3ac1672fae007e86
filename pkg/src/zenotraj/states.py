"""Two-level states and operators in the ordered basis {|e>, |g>}.

Index 0 is the excited level and index 1 the ground level, so that
``sigma_z = |e><e| - |g><g| = diag(1, -1)`` and the lowering operator
``sigma_minus = |g><e|`` has its single nonzero entry at ``[1, 0]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
SIGMA_PLUS = SIGMA_MINUS.T.copy()

NORM_TOL = 1e-10
TRACE_TOL = 1e-9
POSITIVITY_TOL = 1e-9


@dataclass(frozen=True)
class PureState:
    """Normalized state ``alpha|e> + beta|g>``."""

    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        norm2 = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if not abs(norm2 - 1.0) <= NORM_TOL:
            raise DomainError(f"state is not normalized: |alpha|^2+|beta|^2 = {norm2!r}")
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))

    @classmethod
    def normalized(cls, alpha: complex, beta: complex) -> PureState:
        norm = np.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        if norm == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return cls(alpha / norm, beta / norm)

    @classmethod
    def excited(cls) -> PureState:
        return cls(1.0, 0.0)

    @classmethod
    def ground(cls) -> PureState:
        return cls(0.0, 1.0)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)

    @property
    def excited_population(self) -> float:
        return abs(self.alpha) ** 2

    def projector(self) -> DensityMatrix:
        return DensityMatrix(
            abs(self.alpha) ** 2,
            abs(self.beta) ** 2,
            self.alpha * self.beta.conjugate(),
        )

    def overlap(self, other: PureState) -> complex:
        """Inner product ``<self|other>``."""
        return self.alpha.conjugate() * other.alpha + self.beta.conjugate() * other.beta


def fidelity(a: PureState, b: PureState) -> float:
    """Pure-state fidelity ``|<a|b>|^2``."""
    return abs(a.overlap(b)) ** 2


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace 2x2 density matrix stored by its independent entries.

    ``rho_ge`` is not stored; it is the conjugate of ``rho_eg``, so
    Hermiticity holds by construction.
    """

    rho_ee: float
    rho_gg: float
    rho_eg: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "rho_ee", float(np.real(self.rho_ee)))
        object.__setattr__(self, "rho_gg", float(np.real(self.rho_gg)))
        object.__setattr__(self, "rho_eg", complex(self.rho_eg))
        trace = self.rho_ee + self.rho_gg
        if not abs(trace - 1.0) <= TRACE_TOL:
            raise DomainError(f"density matrix trace {trace!r} differs from 1")
        if self.min_eigenvalue() < -POSITIVITY_TOL:
            raise DomainError(f"density matrix is not positive (min eigenvalue {self.min_eigenvalue()!r})")

    @classmethod
    def from_matrix(cls, m: np.ndarray, hermitian_tol: float = 1e-12) -> DensityMatrix:
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError(f"expected a 2x2 matrix, got shape {m.shape}")
        if abs(m[0, 1] - np.conj(m[1, 0])) > hermitian_tol or abs(m[0, 0].imag) > hermitian_tol or abs(m[1, 1].imag) > hermitian_tol:
            raise DomainError("matrix is not Hermitian")
        return cls(m[0, 0].real, m[1, 1].real, m[0, 1])

    @classmethod
    def excited(cls) -> DensityMatrix:
        return cls(1.0, 0.0, 0.0)

    @classmethod
    def ground(cls) -> DensityMatrix:
        return cls(0.0, 1.0, 0.0)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.rho_ee, self.rho_eg], [self.rho_eg.conjugate(), self.rho_gg]],
            dtype=complex,
        )

    @property
    def trace(self) -> float:
        return self.rho_ee + self.rho_gg

    def bloch(self) -> np.ndarray:
        """Bloch vector ``(<sigma_x>, <sigma_y>, <sigma_z>)``."""
        return np.array([2.0 * self.rho_eg.real, -2.0 * self.rho_eg.imag, self.rho_ee - self.rho_gg])

    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues from the closed form for 2x2 Hermitian matrices."""
        half_trace = 0.5 * (self.rho_ee + self.rho_gg)
        radius = np.hypot(0.5 * (self.rho_ee - self.rho_gg), abs(self.rho_eg))
        return np.array([half_trace - radius, half_trace + radius])

    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues()[0])

    def expect(self, op: np.ndarray) -> complex:
        return complex(np.trace(np.asarray(op) @ self.matrix))


def as_matrix(rho: DensityMatrix | np.ndarray) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)
