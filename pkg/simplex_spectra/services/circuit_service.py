import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

# Fix imports to work from any directory
try:
    from ..config import settings
    from ..exceptions import ConsistencyError, DimensionError, MalformedInputError
    from ..models.complex import Complex, Face
    from .orientation_service import CANONICAL, Orientation, orientation_service
except ImportError:
    from config import settings
    from exceptions import ConsistencyError, DimensionError, MalformedInputError
    from models.complex import Complex, Face
    from services.orientation_service import CANONICAL, Orientation, orientation_service

logger = logging.getLogger(__name__)

ORIENTABLE = "orientable"
NON_ORIENTABLE = "non-orientable"

# brute-force orientation search enumerates 2^t sign vectors
SEARCH_MAX_LEN = 20


@dataclass(frozen=True)
class Circuit:
    """A cyclic sequence of (i+1)-faces where exactly the cyclic neighbours share an i-face"""
    dim: int
    top_faces: Tuple[Face, ...]
    shared_faces: Tuple[Face, ...]
    classification: Optional[str] = None

    @property
    def length(self) -> int:
        return len(self.top_faces)

    def steps(self):
        """(F_j, F̄_j, F̄_{j+1}) for every position of the circuit"""
        t = self.length
        for j in range(t):
            yield self.shared_faces[j], self.top_faces[j], self.top_faces[(j + 1) % t]


@dataclass(frozen=True)
class CircuitEnumeration:
    circuits: List[Circuit]
    complete: bool
    max_len: int


@dataclass(frozen=True)
class ForbiddenCircuitResult:
    """Outcome of the forbidden-circuit search; truthy when one was found"""
    forbidden: bool
    complete: bool
    circuits_checked: int
    witness: Optional[Circuit] = None

    def __bool__(self) -> bool:
        return self.forbidden


def _shared(a: Face, b: Face, i: int) -> Optional[Face]:
    common = Face(set(a) & set(b))
    return common if common.dim == i else None


class CircuitService:
    """Service for enumerating and classifying circuits of top faces"""

    def make_circuit(self, K: Complex, i: int, top_faces, orientation: Orientation = CANONICAL) -> Circuit:
        """Validate a cyclic sequence of (i+1)-faces and return it as a classified Circuit"""
        tops = tuple(K.require(face) for face in top_faces)
        t = len(tops)
        shared = tuple(_shared(tops[j], tops[(j + 1) % t], i) if t > 1 else None for j in range(t))
        circuit = Circuit(dim=i, top_faces=tops, shared_faces=shared)
        self.validate(circuit)
        return Circuit(dim=i, top_faces=tops, shared_faces=shared,
                       classification=self.classify_circuit(circuit, orientation))

    def validate(self, circuit: Circuit) -> None:
        """Raise MalformedInputError unless the strict circuit conditions hold"""
        i, tops, t = circuit.dim, circuit.top_faces, circuit.length
        if t < 3:
            raise MalformedInputError(f"A circuit needs at least three top faces, got {t}")
        if any(face.dim != i + 1 for face in tops) or len(set(tops)) != t:
            raise MalformedInputError("Circuit top faces must be distinct (i+1)-faces")
        for a, b in itertools.combinations(range(t), 2):
            consecutive = (b - a) in (1, t - 1)
            if (_shared(tops[a], tops[b], i) is not None) != consecutive:
                raise MalformedInputError(
                    f"{tops[a]!r} and {tops[b]!r} break the circuit intersection rule"
                )
        for j, (shared, low, high) in enumerate(circuit.steps()):
            if shared is None or shared != _shared(low, high, i):
                raise MalformedInputError(f"Shared face {j} does not match its top faces")
        if len(set(circuit.shared_faces)) != t:
            raise MalformedInputError("Circuit shared faces must be pairwise distinct")

    def enumerate_circuits(self, K: Complex, i: int, max_len: int = None) -> CircuitEnumeration:
        """
        All strict circuits of (i+1)-faces up to rotation and reflection

        Depth-first search from every top face, keeping the smallest-index
        face first and only the orientation with path[1] < path[-1]. A
        candidate may only touch the start face when it closes the circuit
        and may never touch an interior member of the path.

        Args:
            K: the complex
            i: shared-face dimension, 0 <= i <= dim K - 1
            max_len: largest circuit length searched

        Returns:
            CircuitEnumeration; complete is False when some path could still
            have been extended at max_len
        """
        max_len = settings.CIRCUIT_MAX_LEN if max_len is None else max_len
        if i < 0 or i > K.dim - 1:
            raise DimensionError(f"Circuits need 0 <= i <= dim K - 1 = {K.dim - 1}, got {i}")

        tops = K.faces(i + 1)
        adjacency: Dict[int, Dict[int, Face]] = {n: {} for n in range(len(tops))}
        for low in K.faces(i):
            owners = [K.index_of(coface) for coface in K.cofaces(low)]
            for a, b in itertools.combinations(owners, 2):
                adjacency[a][b] = low
                adjacency[b][a] = low

        found: List[Circuit] = []
        complete = True

        def extend(path: List[int], shared: List[Face], used: Set[Face]) -> None:
            nonlocal complete
            start, last = path[0], path[-1]
            for nxt in sorted(adjacency[last]):
                if nxt <= start or nxt in path:
                    continue
                low = adjacency[last][nxt]
                if low in used:
                    continue
                if any(nxt in adjacency[member] for member in path[1:-1]):
                    continue
                if len(path) >= 2 and start in adjacency[nxt]:
                    closing = adjacency[nxt][start]
                    if closing not in used and closing != low and path[1] < nxt:
                        cycle = path + [nxt]
                        found.append(self._emit(i, [tops[n] for n in cycle], shared + [low, closing]))
                    continue
                if len(path) + 1 >= max_len:
                    complete = False
                    continue
                extend(path + [nxt], shared + [low], used | {low})

        for start in range(len(tops)):
            extend([start], [], set())

        logger.info(f"Enumerated {len(found)} circuits of {i + 1}-faces (complete={complete})")
        if not complete:
            logger.warning(f"Circuit search truncated at length {max_len}")
        return CircuitEnumeration(circuits=found, complete=complete, max_len=max_len)

    def _emit(self, i: int, tops: List[Face], shared: List[Face]) -> Circuit:
        circuit = Circuit(dim=i, top_faces=tuple(tops), shared_faces=tuple(shared))
        try:
            self.validate(circuit)
        except MalformedInputError as e:
            raise ConsistencyError(f"Enumerated an invalid circuit: {e}")
        return Circuit(dim=i, top_faces=circuit.top_faces, shared_faces=circuit.shared_faces,
                       classification=self.classify_circuit(circuit))

    def circuit_sign(self, circuit: Circuit, orientation: Orientation = CANONICAL) -> int:
        """Sign of the matching cycle F̄_1 F_1 F̄_2 ... F_t of B_i(K)"""
        sign = 1
        for shared, low, high in circuit.steps():
            sign *= orientation_service.boundary_sign(shared, low, orientation)
            sign *= orientation_service.boundary_sign(shared, high, orientation)
        return sign

    def classify_circuit(self, circuit: Circuit, orientation: Orientation = CANONICAL) -> str:
        """Orientable iff the sign product equals (-1)^t; the product ignores reorientation"""
        self.validate(circuit)
        sign = self.circuit_sign(circuit, orientation)
        return ORIENTABLE if sign == (-1) ** circuit.length else NON_ORIENTABLE

    def is_orientable_by_search(self, circuit: Circuit) -> bool:
        """Try every orientation of the top faces for opposite induced orientations on each shared face"""
        self.validate(circuit)
        if circuit.length > SEARCH_MAX_LEN:
            raise MalformedInputError(f"Orientation search is limited to {SEARCH_MAX_LEN} top faces")
        pairs = [
            (orientation_service.boundary_sign(shared, low), orientation_service.boundary_sign(shared, high))
            for shared, low, high in circuit.steps()
        ]
        t = circuit.length
        for signs in itertools.product((1, -1), repeat=t):
            if all(signs[j] * a * signs[(j + 1) % t] * b == -1 for j, (a, b) in enumerate(pairs)):
                return True
        return False

    def is_forbidden(self, circuit: Circuit) -> bool:
        """Orientable of odd length or non-orientable of even length"""
        classification = circuit.classification or self.classify_circuit(circuit)
        odd = circuit.length % 2 == 1
        return (classification == ORIENTABLE) == odd

    def has_forbidden_circuit(self, K: Complex, i: int, max_len: int = None) -> ForbiddenCircuitResult:
        enumeration = self.enumerate_circuits(K, i, max_len)
        witness = next((c for c in enumeration.circuits if self.is_forbidden(c)), None)
        return ForbiddenCircuitResult(
            forbidden=witness is not None,
            complete=enumeration.complete,
            circuits_checked=len(enumeration.circuits),
            witness=witness,
        )

# Global circuit service instance
circuit_service = CircuitService()
