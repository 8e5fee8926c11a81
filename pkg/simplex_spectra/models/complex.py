"""Abstract simplicial complexes: faces, complexes and their basic queries.

A complex is stored as the full downward-closed family of its faces,
grouped by dimension and sorted, always including the empty face of
dimension -1. Complexes are immutable once built.
"""
import itertools
import logging
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence

try:
    from ..exceptions import MalformedInputError, UnknownFaceError
except ImportError:
    from exceptions import MalformedInputError, UnknownFaceError

logger = logging.getLogger(__name__)

Vertex = Hashable


def vertex_label(vertex: Vertex) -> str:
    """Render a vertex as a JSON-friendly string (product vertices become 'u/v')"""
    if isinstance(vertex, tuple):
        return "/".join(vertex_label(part) for part in vertex)
    return str(vertex)


class Face(tuple):
    """A face: the strictly sorted tuple of its vertices"""

    def __new__(cls, vertices: Iterable[Vertex] = ()):
        if isinstance(vertices, Face):
            return vertices
        items = list(vertices)
        if len(set(items)) != len(items):
            raise MalformedInputError(f"Duplicate vertex in face {items!r}")
        try:
            items.sort()
        except TypeError as e:
            raise MalformedInputError(f"Vertices of {items!r} are not mutually comparable: {e}")
        return super().__new__(cls, items)

    @property
    def dim(self) -> int:
        return len(self) - 1

    @property
    def label(self) -> str:
        """Comma separated vertex labels; the empty face renders as ''"""
        return ",".join(vertex_label(v) for v in self)

    def is_subface_of(self, other: "Face") -> bool:
        return set(self).issubset(other)

    def omit(self, position: int) -> "Face":
        """The codimension-one face obtained by dropping the vertex at `position`"""
        return Face(self[:position] + self[position + 1:])

    def boundary(self) -> List["Face"]:
        """All codimension-one subfaces, in the order of the omitted vertex"""
        return [self.omit(j) for j in range(len(self))]

    def __repr__(self) -> str:
        return "{" + self.label + "}"


EMPTY_FACE = Face(())


class Complex:
    """An abstract simplicial complex over an ordered vertex set"""

    def __init__(self, faces: Iterable[Iterable[Vertex]]):
        face_set = {Face(face) for face in faces}
        face_set.add(EMPTY_FACE)
        for face in face_set:
            for sub in face.boundary():
                if sub not in face_set:
                    raise MalformedInputError(f"Face {face!r} is present but its subface {sub!r} is not")

        by_dim: Dict[int, List[Face]] = {}
        for face in face_set:
            by_dim.setdefault(face.dim, []).append(face)
        self._faces_by_dim = {d: sorted(fs) for d, fs in sorted(by_dim.items())}
        self._face_set = frozenset(face_set)
        self._index = {d: {f: n for n, f in enumerate(fs)} for d, fs in self._faces_by_dim.items()}

        # cofaces one dimension up, in sorted order
        self._cofaces: Dict[Face, List[Face]] = {face: [] for face in face_set}
        for d in sorted(self._faces_by_dim):
            for face in self._faces_by_dim[d]:
                for sub in face.boundary():
                    self._cofaces[sub].append(face)

    @classmethod
    def from_facets(cls, facets: Iterable[Sequence[Vertex]]) -> "Complex":
        """Smallest complex containing every listed facet (downward closure)"""
        closure = set()
        for facet in facets:
            facet = list(facet)
            if not facet:
                raise MalformedInputError("Facets must be nonempty")
            face = Face(facet)
            for size in range(len(face) + 1):
                closure.update(Face(sub) for sub in itertools.combinations(face, size))
        return cls(closure)

    # Queries

    @property
    def dim(self) -> int:
        return max(self._faces_by_dim)

    @property
    def faces_by_dim(self) -> Dict[int, List[Face]]:
        return {d: list(fs) for d, fs in self._faces_by_dim.items()}

    def faces(self, i: int) -> List[Face]:
        """S_i(K): the sorted i-faces, empty outside -1..dim"""
        return list(self._faces_by_dim.get(i, []))

    def count(self, i: int) -> int:
        return len(self._faces_by_dim.get(i, []))

    def vertices(self) -> List[Vertex]:
        return [face[0] for face in self.faces(0)]

    def all_faces(self) -> List[Face]:
        return [face for d in self._faces_by_dim for face in self._faces_by_dim[d]]

    def __contains__(self, face) -> bool:
        try:
            return Face(face) in self._face_set
        except MalformedInputError:
            return False

    def __iter__(self) -> Iterator[Face]:
        return iter(self.all_faces())

    def __len__(self) -> int:
        return len(self._face_set)

    def __eq__(self, other) -> bool:
        return isinstance(other, Complex) and self._face_set == other._face_set

    def __hash__(self) -> int:
        return hash(self._face_set)

    def __repr__(self) -> str:
        return f"Complex(dim={self.dim}, f_vector={self.f_vector()})"

    def require(self, face) -> Face:
        """Return `face` as a Face of this complex or raise UnknownFaceError"""
        face = Face(face)
        if face not in self._face_set:
            raise UnknownFaceError(f"Face {face!r} is not in the complex")
        return face

    def index_of(self, face) -> int:
        face = self.require(face)
        return self._index[face.dim][face]

    def cofaces(self, face) -> List[Face]:
        """The (dim F + 1)-faces containing F"""
        return list(self._cofaces[self.require(face)])

    def degree(self, face) -> int:
        """Number of (dim F + 1)-faces containing F"""
        return len(self._cofaces[self.require(face)])

    def facets(self) -> List[Face]:
        return [face for face in self.all_faces() if not self._cofaces[face]]

    def is_pure(self) -> bool:
        return len({face.dim for face in self.facets()}) <= 1

    def f_vector(self) -> List[int]:
        """Face counts from dimension -1 up to dim K"""
        return [self.count(d) for d in range(-1, self.dim + 1)]

    def skeleton(self, p: int) -> "Complex":
        """K^(p): every face of dimension at most p"""
        return Complex(face for face in self._face_set if face.dim <= p)

    def induced_subcomplex(self, vertices: Iterable[Vertex]) -> "Complex":
        """All faces of K whose vertices lie in the given set"""
        keep = set(vertices)
        return Complex(face for face in self._face_set if keep.issuperset(face))

    def relabel(self, mapping: Mapping[Vertex, Vertex]) -> "Complex":
        """Rename vertices; unmapped vertices keep their label"""
        image = [mapping.get(v, v) for v in self.vertices()]
        if len(set(image)) != len(image):
            raise MalformedInputError("Relabelling must be injective on the vertex set")
        return Complex(Face(mapping.get(v, v) for v in face) for face in self._face_set)

    def is_subcomplex_of(self, other: "Complex") -> bool:
        return self._face_set.issubset(other._face_set)


def from_facets(facets: Iterable[Sequence[Vertex]]) -> Complex:
    """Module-level alias of Complex.from_facets"""
    return Complex.from_facets(facets)


def parse_face(text: Optional[str]) -> Face:
    """Parse a comma separated face label such as 'a,b,c' ('' is the empty face)"""
    if text is None or not text.strip():
        return EMPTY_FACE
    return Face(part.strip() for part in text.split(","))
