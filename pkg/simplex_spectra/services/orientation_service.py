import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping

import numpy as np

# Fix imports to work from any directory
try:
    from ..exceptions import DimensionError, MalformedInputError
    from ..models.complex import Complex, EMPTY_FACE, Face
except ImportError:
    from exceptions import DimensionError, MalformedInputError
    from models.complex import Complex, EMPTY_FACE, Face

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Orientation:
    """Per-face sign relative to the sorted vertex ordering; absent faces are +1"""
    flips: Mapping[Face, int] = field(default_factory=dict)

    def sign(self, face) -> int:
        return self.flips.get(Face(face), 1)

    def reversed_at(self, face) -> "Orientation":
        face = Face(face)
        if face == EMPTY_FACE:
            raise MalformedInputError("The orientation of the empty face is fixed")
        flips = dict(self.flips)
        if flips.pop(face, 1) == 1:
            flips[face] = -1
        return Orientation(flips)

    def flipped_faces(self) -> List[Face]:
        return sorted(self.flips, key=lambda f: (f.dim, f))

    def __eq__(self, other) -> bool:
        return isinstance(other, Orientation) and dict(self.flips) == dict(other.flips)

    def __hash__(self) -> int:
        return hash(frozenset(self.flips.items()))


CANONICAL = Orientation()


@dataclass(frozen=True)
class BoundaryMatrix:
    """Matrix of the boundary map on i-chains: rows S_{i-1}(K), columns S_i(K)"""
    dim: int
    rows: List[Face]
    columns: List[Face]
    entries: np.ndarray

    def as_fractions(self) -> np.ndarray:
        return to_fraction_array(self.entries)


@dataclass(frozen=True)
class Cochain:
    """A real function on the i-faces of a complex"""
    dim: int
    values: Dict[Face, float]

    def as_vector(self, faces: Iterable[Face]) -> np.ndarray:
        return np.array([self.values[f] for f in faces], dtype=float)


def to_fraction_array(matrix) -> np.ndarray:
    """Copy a numeric array into an object array of Fractions"""
    matrix = np.asarray(matrix)
    out = np.empty(matrix.shape, dtype=object)
    for idx, value in np.ndenumerate(matrix):
        out[idx] = value if isinstance(value, Fraction) else Fraction(value)
    return out


class OrientationService:
    """Service for orientations, boundary signs and boundary matrices"""

    def canonical(self) -> Orientation:
        return CANONICAL

    def boundary_sign(self, face, coface, orientation: Orientation = CANONICAL) -> int:
        """
        Sign of [F] in the boundary of [F̄] under an orientation

        Args:
            face: the i-face F
            coface: the (i+1)-face F̄
            orientation: sign flips against the sorted vertex ordering

        Returns:
            0 when F is not a subface of F̄, else (-1)^j σ(F) σ(F̄) where j is
            the position of the omitted vertex in the sorted F̄
        """
        face, coface = Face(face), Face(coface)
        if coface.dim != face.dim + 1:
            raise DimensionError(
                f"boundary_sign needs dim F̄ = dim F + 1, got {face.dim} and {coface.dim}"
            )
        if not face.is_subface_of(coface):
            return 0
        omitted = next(v for v in coface if v not in face)
        j = coface.index(omitted)
        return (-1) ** j * orientation.sign(face) * orientation.sign(coface)

    def boundary_matrix(self, K: Complex, i: int, orientation: Orientation = CANONICAL) -> BoundaryMatrix:
        """Matrix of ∂_i; i = dim K + 1 gives the (empty-column) zero map"""
        if i < 0 or i > K.dim + 1:
            raise DimensionError(f"Boundary map ∂_{i} undefined for a complex of dimension {K.dim}")
        rows, columns = K.faces(i - 1), K.faces(i)
        row_index = {face: n for n, face in enumerate(rows)}
        entries = np.zeros((len(rows), len(columns)), dtype=np.int64)
        for c, coface in enumerate(columns):
            outer = orientation.sign(coface)
            for j in range(len(coface)):
                sub = coface.omit(j)
                entries[row_index[sub], c] = (-1) ** j * orientation.sign(sub) * outer
        logger.debug(f"Built ∂_{i}: {len(rows)}x{len(columns)}")
        return BoundaryMatrix(dim=i, rows=rows, columns=columns, entries=entries)

    def reorient(self, orientation: Orientation, face, K: Complex = None) -> Orientation:
        """Reverse the orientation of one face (checked against K when given)"""
        if K is not None:
            face = K.require(face)
        return orientation.reversed_at(face)

    def coboundary(self, K: Complex, i: int, orientation: Orientation, cochain: Cochain) -> Cochain:
        """(δ_i f)([F̄]) = Σ_F sgn([F], ∂[F̄]) f([F])"""
        if cochain.dim != i:
            raise DimensionError(f"Expected an {i}-cochain, got dimension {cochain.dim}")
        D = self.boundary_matrix(K, i + 1, orientation)
        f = cochain.as_vector(D.rows)
        values = D.entries.T.astype(float) @ f
        return Cochain(dim=i + 1, values=dict(zip(D.columns, values.tolist())))

    def signature_matrix(self, K: Complex, i: int, face) -> np.ndarray:
        """Diagonal ±1 matrix on the i-cochains with -1 only at [F]*"""
        face = K.require(face)
        if face.dim != i:
            raise DimensionError(f"{face!r} is not an {i}-face")
        S = np.eye(K.count(i), dtype=np.int64)
        S[K.index_of(face), K.index_of(face)] = -1
        return S

    def orientation_from_switching(self, orientation: Orientation, switching: Mapping[Face, int]) -> Orientation:
        """Reverse every face the switching flips"""
        result = orientation
        for face, sign in switching.items():
            if sign == -1:
                result = result.reversed_at(face)
        return result

# Global orientation service instance
orientation_service = OrientationService()
