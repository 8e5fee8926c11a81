import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Union

import numpy as np

# Fix imports to work from any directory
try:
    from ..config import settings
    from ..exceptions import ConsistencyError, DimensionError, WeightError
    from ..models.complex import Complex, Face
    from .orientation_service import CANONICAL, Orientation, orientation_service, to_fraction_array
except ImportError:
    from config import settings
    from exceptions import ConsistencyError, DimensionError, WeightError
    from models.complex import Complex, Face
    from services.orientation_service import CANONICAL, Orientation, orientation_service, to_fraction_array

logger = logging.getLogger(__name__)

Number = Union[Fraction, float]

UNIFORM = "uniform"
NORMALIZED = "normalized"
CUSTOM = "custom"

UP, DOWN, FULL = "up", "down", "full"


@dataclass(frozen=True)
class WeightFunction:
    """Positive weight per face, tagged with its regime"""
    values: Dict[Face, Number]
    regime: str

    def __getitem__(self, face) -> Number:
        return self.values[Face(face)]

    def vector(self, faces: List[Face], exact: bool = False) -> np.ndarray:
        if exact:
            return to_fraction_array([self.values[f] for f in faces])
        return np.array([float(self.values[f]) for f in faces], dtype=float)


@dataclass(frozen=True)
class LaplacianMatrix:
    """A Laplacian on the i-cochains, rows and columns indexed by faces(K, i)"""
    dim: int
    kind: str
    faces: List[Face]
    matrix: np.ndarray
    regime: str
    orientation: Orientation
    exact: bool = False

    @property
    def order(self) -> int:
        return len(self.faces)


class LaplacianService:
    """Service for weight functions and Laplacian assembly"""

    # Weights

    def normalized_weights(self, K: Complex) -> WeightFunction:
        """
        Weights satisfying the normalizing condition, in exact arithmetic

        Facets get weight 1; every other face gets the sum of the weights of
        its cofaces one dimension up, filled in from the top dimension down
        to the empty face.
        """
        values: Dict[Face, Fraction] = {}
        for d in range(K.dim, -2, -1):
            for face in K.faces(d):
                cofaces = K.cofaces(face)
                values[face] = sum((values[c] for c in cofaces), Fraction(0)) if cofaces else Fraction(1)
        return WeightFunction(values=values, regime=NORMALIZED)

    def uniform_weights(self, K: Complex) -> WeightFunction:
        """w ≡ 1, the combinatorial Laplacian regime"""
        return WeightFunction(values={face: Fraction(1) for face in K}, regime=UNIFORM)

    def custom_weights(self, K: Complex, weights: Mapping[Face, Number]) -> WeightFunction:
        """User weights: every face needs one and all must be positive"""
        values = {}
        for face in K:
            if face not in weights:
                raise WeightError(f"No weight given for face {face!r}")
            value = weights[face]
            if not value > 0:
                raise WeightError(f"Weight of {face!r} must be positive, got {value}")
            values[face] = value
        extra = set(weights) - set(values)
        if extra:
            raise WeightError(f"Weights given for faces outside the complex: {sorted(extra)[:3]!r}")
        return WeightFunction(values=values, regime=CUSTOM)

    def validate_weights(self, K: Complex, w: WeightFunction) -> bool:
        """True iff the normalizing condition holds at every non-facet"""
        for face in K:
            if not w[face] > 0:
                raise WeightError(f"Weight of {face!r} must be positive, got {w[face]}")
        for face in K:
            cofaces = K.cofaces(face)
            if not cofaces:
                continue
            total = sum(w[c] for c in cofaces)
            scale = max(abs(float(w[face])), abs(float(total)))
            if abs(float(w[face] - total)) > settings.WEIGHT_RTOL * scale:
                logger.debug(f"Normalizing condition fails at {face!r}: {w[face]} != {total}")
                return False
        return True

    def weighted_degree(self, K: Complex, face, w: WeightFunction) -> Number:
        """deg F: the sum of coface weights on the right of the normalizing condition"""
        return sum((w[c] for c in K.cofaces(face)), Fraction(0))

    # Assembly

    def _up_matrix(self, K: Complex, i: int, orientation: Orientation, w: WeightFunction, exact: bool) -> np.ndarray:
        D = orientation_service.boundary_matrix(K, i + 1, orientation)
        low, high = w.vector(D.rows, exact), w.vector(D.columns, exact)
        entries = D.as_fractions() if exact else D.entries.astype(float)
        # W_i^{-1} D W_{i+1} D^T
        return np.dot(entries * high[np.newaxis, :], entries.T) / low[:, np.newaxis]

    def _down_matrix(self, K: Complex, i: int, orientation: Orientation, w: WeightFunction,
                     exact: bool, include_empty: bool) -> np.ndarray:
        D = orientation_service.boundary_matrix(K, i, orientation)
        low, here = w.vector(D.rows, exact), w.vector(D.columns, exact)
        entries = D.as_fractions() if exact else D.entries.astype(float)
        if i == 0 and not include_empty:
            entries = entries * 0
        # D^T W_{i-1}^{-1} D W_i
        return np.dot(entries.T / low[np.newaxis, :], entries) * here[np.newaxis, :]

    def up_laplacian(self, K: Complex, i: int, orientation: Orientation = CANONICAL,
                     w: WeightFunction = None, exact: bool = False) -> LaplacianMatrix:
        """
        L_i^up with [F, F] = Σ w(F̄)/w(F) and
        [F, F'] = (w(F̄)/w(F)) sgn([F], ∂[F̄]) sgn([F'], ∂[F̄]) for F ∪ F' = F̄
        """
        if i < 0 or i > K.dim - 1:
            raise DimensionError(f"Up Laplacian needs 0 <= i <= dim K - 1 = {K.dim - 1}, got {i}")
        w = w or self.normalized_weights(K)
        matrix = self._up_matrix(K, i, orientation, w, exact)
        return LaplacianMatrix(dim=i, kind=UP, faces=K.faces(i), matrix=matrix,
                               regime=w.regime, orientation=orientation, exact=exact)

    def down_laplacian(self, K: Complex, i: int, orientation: Orientation = CANONICAL,
                       w: WeightFunction = None, exact: bool = False,
                       include_empty: bool = True) -> LaplacianMatrix:
        """L_i^down with [F, F] = Σ_{E ∈ ∂F} w(F)/w(E) and [F, F'] = (w(F')/w(E)) sgn sgn"""
        if i < 0 or i > K.dim:
            raise DimensionError(f"Down Laplacian needs 0 <= i <= dim K = {K.dim}, got {i}")
        w = w or self.normalized_weights(K)
        matrix = self._down_matrix(K, i, orientation, w, exact, include_empty)
        return LaplacianMatrix(dim=i, kind=DOWN, faces=K.faces(i), matrix=matrix,
                               regime=w.regime, orientation=orientation, exact=exact)

    def full_laplacian(self, K: Complex, i: int, orientation: Orientation = CANONICAL,
                       w: WeightFunction = None, exact: bool = False,
                       include_empty: bool = True) -> LaplacianMatrix:
        """L_i = L_i^up + L_i^down; the up part vanishes at i = dim K"""
        if i < 0 or i > K.dim:
            raise DimensionError(f"Laplacian needs 0 <= i <= dim K = {K.dim}, got {i}")
        w = w or self.normalized_weights(K)
        matrix = (self._up_matrix(K, i, orientation, w, exact)
                  + self._down_matrix(K, i, orientation, w, exact, include_empty))
        return LaplacianMatrix(dim=i, kind=FULL, faces=K.faces(i), matrix=matrix,
                               regime=w.regime, orientation=orientation, exact=exact)

    def laplacian(self, K: Complex, i: int, kind: str, orientation: Orientation = CANONICAL,
                  w: WeightFunction = None, exact: bool = False,
                  include_empty: bool = True) -> LaplacianMatrix:
        if kind == UP:
            return self.up_laplacian(K, i, orientation, w, exact)
        if kind == DOWN:
            return self.down_laplacian(K, i, orientation, w, exact, include_empty)
        if kind == FULL:
            return self.full_laplacian(K, i, orientation, w, exact, include_empty)
        raise DimensionError(f"Unknown Laplacian kind {kind!r}")

    def symmetric_form(self, L: LaplacianMatrix, w: WeightFunction) -> np.ndarray:
        """W^{1/2} L W^{-1/2}: a symmetric matrix with the spectrum of L"""
        root = np.sqrt(w.vector(L.faces))
        A = np.asarray(L.matrix, dtype=float) * root[:, np.newaxis] / root[np.newaxis, :]
        defect = float(np.max(np.abs(A - A.T))) if A.size else 0.0
        scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
        if defect > settings.SYMMETRY_TOL * scale:
            raise ConsistencyError(
                f"Symmetrised {L.kind} Laplacian at dim {L.dim} has asymmetry {defect:.3e}"
            )
        return (A + A.T) / 2.0

# Global laplacian service instance
laplacian_service = LaplacianService()
