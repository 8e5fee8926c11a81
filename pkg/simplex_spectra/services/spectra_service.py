import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

# Fix imports to work from any directory
try:
    from ..config import settings
    from ..exceptions import ConvergenceError, MalformedInputError, WeightError
    from ..models.complex import Complex, Face
    from .laplacian_service import (
        CUSTOM, NORMALIZED, UNIFORM, UP, WeightFunction, laplacian_service,
    )
    from .orientation_service import CANONICAL, Cochain, Orientation
except ImportError:
    from config import settings
    from exceptions import ConvergenceError, MalformedInputError, WeightError
    from models.complex import Complex, Face
    from services.laplacian_service import (
        CUSTOM, NORMALIZED, UNIFORM, UP, WeightFunction, laplacian_service,
    )
    from services.orientation_service import CANONICAL, Cochain, Orientation

logger = logging.getLogger(__name__)

Weighting = Union[str, WeightFunction, None]

# Below this ratio |a_pq| / |a_qq - a_pp| the rotation angle is taken to first order
_NEGLIGIBLE = 1e-100


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues of a self-adjoint operator, optionally with eigenvectors"""
    eigenvalues: np.ndarray
    vectors: Optional[np.ndarray] = None
    dim: Optional[int] = None
    kind: Optional[str] = None
    regime: Optional[str] = None
    faces: Optional[List[Face]] = None
    sweeps: int = 0

    def __len__(self) -> int:
        return len(self.eigenvalues)

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[-1]) if len(self.eigenvalues) else 0.0

    def count_near(self, value: float, tol: float) -> int:
        return int(np.sum(np.abs(self.eigenvalues - value) <= tol))

    def multiplicities(self, tol: float = 1e-6) -> List[Tuple[float, int]]:
        """Cluster eigenvalues that lie within tol of their neighbour"""
        clusters: List[List[float]] = []
        for value in self.eigenvalues.tolist():
            if clusters and value - clusters[-1][-1] <= tol:
                clusters[-1].append(value)
            else:
                clusters.append([value])
        return [(sum(c) / len(c), len(c)) for c in clusters]


class SpectraService:
    """Service for the dense symmetric eigensolver and the top-eigenvalue predicates"""

    def symmetric_eigen(self, A, tol: float = None, max_sweeps: int = None,
                        method: str = None, keep_vectors: bool = True) -> Spectrum:
        """
        Eigen-decomposition of a real symmetric matrix

        Args:
            A: square symmetric matrix
            tol: off-diagonal Frobenius target for the Jacobi sweeps
            max_sweeps: sweep cap before ConvergenceError
            method: "jacobi", "lapack" or "auto" (Jacobi up to the configured order)
            keep_vectors: keep the orthonormal eigenvector matrix

        Returns:
            Spectrum with ascending eigenvalues
        """
        tol = settings.EIGEN_TOL if tol is None else tol
        max_sweeps = settings.MAX_SWEEPS if max_sweeps is None else max_sweeps
        method = method or settings.EIGEN_METHOD

        A = np.array(A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise MalformedInputError(f"Expected a square matrix, got shape {A.shape}")
        n = A.shape[0]
        if n and np.max(np.abs(A - A.T)) > 1e-12 * max(1.0, float(np.max(np.abs(A)))):
            raise MalformedInputError("symmetric_eigen needs a symmetric matrix")

        if method == "lapack" or (method == "auto" and n > settings.JACOBI_MAX_ORDER):
            values, vectors = np.linalg.eigh(A)
            sweeps = 0
        else:
            values, vectors, sweeps = self._jacobi(A, tol, max_sweeps)

        order = np.argsort(values, kind="stable")
        return Spectrum(
            eigenvalues=values[order],
            vectors=vectors[:, order] if keep_vectors else None,
            sweeps=sweeps,
        )

    def _jacobi(self, A: np.ndarray, tol: float, max_sweeps: int) -> Tuple[np.ndarray, np.ndarray, int]:
        """Cyclic Jacobi rotations on a private copy until the off-diagonal part vanishes"""
        A = A.copy()
        n = A.shape[0]
        V = np.eye(n)
        target = tol * max(1.0, float(np.linalg.norm(A)))

        def off_norm() -> float:
            # Frobenius norm of the off-diagonal part, summed directly
            return math.sqrt(2.0) * float(np.linalg.norm(np.triu(A, 1)))

        for sweep in range(max_sweeps + 1):
            if off_norm() <= target:
                return np.diag(A).copy(), V, sweep
            if sweep == max_sweeps:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p, q]
                    if apq == 0.0:
                        continue
                    diff = A[q, q] - A[p, p]
                    if abs(apq) <= _NEGLIGIBLE * abs(diff):
                        # theta² would overflow; t = apq / diff to first order
                        t = apq / diff
                    else:
                        theta = diff / (2.0 * apq)
                        t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    c = 1.0 / math.sqrt(t * t + 1.0)
                    s = t * c

                    col_p, col_q = A[:, p].copy(), A[:, q].copy()
                    A[:, p] = c * col_p - s * col_q
                    A[:, q] = s * col_p + c * col_q
                    row_p, row_q = A[p, :].copy(), A[q, :].copy()
                    A[p, :] = c * row_p - s * row_q
                    A[q, :] = s * row_p + c * row_q
                    A[p, q] = A[q, p] = 0.0

                    vec_p, vec_q = V[:, p].copy(), V[:, q].copy()
                    V[:, p] = c * vec_p - s * vec_q
                    V[:, q] = s * vec_p + c * vec_q

        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off_norm():.3e})"
        )

    # Laplacian spectra

    def resolve_weights(self, K: Complex, weighting: Weighting) -> WeightFunction:
        if isinstance(weighting, WeightFunction):
            return weighting
        if weighting in (None, NORMALIZED):
            return laplacian_service.normalized_weights(K)
        if weighting == UNIFORM:
            return laplacian_service.uniform_weights(K)
        raise WeightError(f"Unknown weighting {weighting!r}")

    def is_normalized(self, K: Complex, w: WeightFunction) -> bool:
        if w.regime == NORMALIZED:
            return True
        return w.regime == CUSTOM and laplacian_service.validate_weights(K, w)

    def spectrum(self, K: Complex, i: int, kind: str = UP, weighting: Weighting = None,
                 orientation: Orientation = CANONICAL, include_empty: bool = True,
                 keep_vectors: bool = False) -> Spectrum:
        """Spectrum of the up, down or full Laplacian at dimension i"""
        w = self.resolve_weights(K, weighting)
        L = laplacian_service.laplacian(K, i, kind, orientation, w, include_empty=include_empty)
        result = self.symmetric_eigen(laplacian_service.symmetric_form(L, w), keep_vectors=keep_vectors)
        logger.debug(f"{kind} spectrum at dim {i}: order {L.order}, {result.sweeps} sweeps")
        return Spectrum(
            eigenvalues=result.eigenvalues,
            vectors=result.vectors,
            dim=i,
            kind=kind,
            regime=w.regime,
            faces=L.faces,
            sweeps=result.sweeps,
        )

    def lambda_max(self, K: Complex, i: int, weighting: Weighting = None,
                   orientation: Orientation = CANONICAL) -> float:
        """Largest eigenvalue of the i-th up Laplacian"""
        return self.spectrum(K, i, UP, weighting, orientation).largest

    def _require_normalized(self, K: Complex, weighting: Weighting) -> WeightFunction:
        w = self.resolve_weights(K, weighting)
        if not self.is_normalized(K, w):
            raise WeightError(f"The top-eigenvalue predicates need normalized weights, got {w.regime}")
        return w

    def has_top_eigenvalue(self, K: Complex, i: int, weighting: Weighting = None, tol: float = None) -> bool:
        """True iff λ_max(Δ_i^up) = i + 2 within tol"""
        tol = settings.TOP_TOL if tol is None else tol
        w = self._require_normalized(K, weighting)
        return abs(self.lambda_max(K, i, w) - (i + 2)) <= tol

    def multiplicity_of_top(self, K: Complex, i: int, tol: float = None, weighting: Weighting = None) -> int:
        """Number of eigenvalues of Δ_i^up within tol of i + 2"""
        tol = settings.MULTIPLICITY_TOL if tol is None else tol
        w = self._require_normalized(K, weighting)
        return self.spectrum(K, i, UP, w).count_near(i + 2, tol)

    def top_eigenfunction(self, K: Complex, i: int, orientation: Orientation = CANONICAL) -> Cochain:
        """
        Eigenfunction of Δ_i^up at its largest eigenvalue, in the face basis

        The symmetric-form eigenvector v is mapped back through f = W^{-1/2} v
        and scaled so that max |f| = 1 with the first nonzero entry positive.
        """
        w = laplacian_service.normalized_weights(K)
        result = self.spectrum(K, i, UP, w, orientation, keep_vectors=True)
        root = np.sqrt(w.vector(result.faces))
        f = result.vectors[:, -1] / root
        peak = float(np.max(np.abs(f)))
        if peak > 0:
            lead = next(x for x in f if abs(x) > 1e-12 * peak)
            f = f / peak * (1.0 if lead > 0 else -1.0)
        return Cochain(dim=i, values=dict(zip(result.faces, f.tolist())))

    def kernel_dimension(self, spectrum: Spectrum, tol: float = None) -> int:
        tol = settings.KERNEL_TOL if tol is None else tol
        return spectrum.count_near(0.0, tol)

# Global spectra service instance
spectra_service = SpectraService()
