import hashlib
import logging
import sys
from typing import Dict, List

from pydantic import TypeAdapter, ValidationError

# Fix imports to work from any directory
try:
    from ..exceptions import MalformedInputError, WeightError
    from ..models.complex import Complex, Face, parse_face
    from ..models.schemas import ComplexPayload, WeightEntry
    from .laplacian_service import NORMALIZED, UNIFORM, WeightFunction, laplacian_service
except ImportError:
    from exceptions import MalformedInputError, WeightError
    from models.complex import Complex, Face, parse_face
    from models.schemas import ComplexPayload, WeightEntry
    from services.laplacian_service import NORMALIZED, UNIFORM, WeightFunction, laplacian_service

logger = logging.getLogger(__name__)

_weight_entries = TypeAdapter(List[WeightEntry])


class IOService:
    """Service for complex and weight files in the JSON interchange format"""

    def read_text(self, path: str) -> str:
        """Read a path, or standard input for '-'"""
        if path == "-":
            return sys.stdin.read()
        try:
            with open(path, "r", encoding="utf-8") as handle:
                return handle.read()
        except OSError as e:
            raise MalformedInputError(f"Cannot read {path}: {e}")

    def parse_complex(self, text: str) -> Complex:
        """
        Parse '{"facets": [[...], ...]}' and take the downward closure

        Raises:
            MalformedInputError: on bad JSON or a facet that fails validation
        """
        try:
            payload = ComplexPayload.model_validate_json(text)
        except ValidationError as e:
            raise MalformedInputError(f"Invalid complex JSON: {e.errors()[0]['msg']}")
        return Complex.from_facets(payload.facets)

    def read_complex(self, path: str) -> Complex:
        K = self.parse_complex(self.read_text(path))
        logger.info(f"Loaded complex from {path}: dim {K.dim}, f-vector {K.f_vector()}")
        return K

    def to_payload(self, K: Complex) -> ComplexPayload:
        """Canonical payload: facets sorted by dimension then label"""
        facets = sorted(
            (face for face in K.facets() if face.dim >= 0),
            key=lambda face: (face.dim, face.label),
        )
        return ComplexPayload(facets=[face.label.split(",") for face in facets])

    def dumps(self, K: Complex) -> str:
        return self.to_payload(K).model_dump_json()

    def digest(self, K: Complex) -> str:
        """sha256 of the canonical JSON, shortened to 16 hex digits"""
        return hashlib.sha256(self.dumps(K).encode("utf-8")).hexdigest()[:16]

    # Weights

    def read_weights(self, K: Complex, path: str) -> WeightFunction:
        """Load '[{"face": "a,b", "w": 1.0}, ...]'; the empty face is ''"""
        try:
            entries = _weight_entries.validate_json(self.read_text(path))
        except ValidationError as e:
            raise WeightError(f"Invalid weights file {path}: {e.errors()[0]['msg']}")
        weights: Dict[Face, float] = {}
        for entry in entries:
            face = parse_face(entry.face)
            if face in weights:
                raise WeightError(f"Face {face!r} weighted twice in {path}")
            weights[face] = entry.w
        return laplacian_service.custom_weights(K, weights)

    def weights_for(self, K: Complex, weighting: str) -> WeightFunction:
        """Resolve 'normalized', 'uniform' or 'file:<path>'"""
        if weighting == NORMALIZED:
            return laplacian_service.normalized_weights(K)
        if weighting == UNIFORM:
            return laplacian_service.uniform_weights(K)
        if weighting.startswith("file:"):
            return self.read_weights(K, weighting[len("file:"):])
        raise MalformedInputError(f"Unknown weighting {weighting!r}")

    # Flags

    def parse_bijection(self, text: str) -> Dict[str, str]:
        """Parse 'a:x,b:y' into {'a': 'x', 'b': 'y'}"""
        pairs = {}
        for item in filter(None, (part.strip() for part in text.split(","))):
            source, sep, target = item.partition(":")
            if not sep or not source or not target:
                raise MalformedInputError(f"Bad bijection entry {item!r}, expected 'a:x'")
            if source in pairs:
                raise MalformedInputError(f"Vertex {source!r} mapped twice")
            pairs[source] = target
        return pairs

# Global IO service instance
io_service = IOService()
