import logging
from typing import FrozenSet, Iterable, List, Mapping, Optional, Set

import networkx as nx

# Fix imports to work from any directory
try:
    from ..exceptions import DimensionError, MalformedInputError, NotASubcomplexError
    from ..models.complex import Complex, EMPTY_FACE, Face, Vertex
except ImportError:
    from exceptions import DimensionError, MalformedInputError, NotASubcomplexError
    from models.complex import Complex, EMPTY_FACE, Face, Vertex

logger = logging.getLogger(__name__)


class ComplexService:
    """Service for connectivity and the closure/star/link/motif calculus"""

    def path_components(self, K: Complex, j: int) -> List[List[Face]]:
        """
        Partition the j-faces into j-path components

        Two j-faces share a component when a chain of j-faces joins them with
        consecutive members sharing a (j-1)-face. Faces with no such neighbour
        form singleton components.

        Args:
            K: the complex
            j: face dimension, 0 <= j <= dim K

        Returns:
            Sorted components, each a sorted list of j-faces
        """
        if j < 0 or j > K.dim:
            raise DimensionError(f"path_components needs 0 <= j <= {K.dim}, got {j}")
        graph = nx.Graph()
        for face in K.faces(j):
            graph.add_node(("top", face))
            for sub in face.boundary():
                graph.add_edge(("top", face), ("sub", sub))
        components = []
        for nodes in nx.connected_components(graph):
            tops = sorted(face for kind, face in nodes if kind == "top")
            if tops:
                components.append(tops)
        components.sort()
        logger.debug(f"{len(components)} {j}-path components")
        return components

    def is_path_connected(self, K: Complex, j: int) -> bool:
        """True iff K has j-faces and they form a single j-path component"""
        if j < 0 or j > K.dim:
            return False
        return len(self.path_components(K, j)) == 1

    def component_complex(self, K: Complex, faces: Iterable[Face]) -> Complex:
        """Closure inside K of a set of faces, e.g. one (i+1)-path component"""
        return Complex.from_facets(list(K.require(face)) for face in faces)

    # Closure, star and link

    def _require_all(self, K: Complex, S: Iterable) -> List[Face]:
        return [K.require(face) for face in S]

    def closure(self, K: Complex, S: Iterable) -> Complex:
        """Cl S: smallest subcomplex of K containing every face of S"""
        faces = self._require_all(K, S)
        return Complex.from_facets(list(face) for face in faces if face != EMPTY_FACE)

    def star(self, K: Complex, S: Iterable) -> FrozenSet[Face]:
        """St S: all faces of K having a face in S"""
        faces = self._require_all(K, S)
        return frozenset(
            candidate for candidate in K
            if any(face.is_subface_of(candidate) for face in faces)
        )

    def link(self, K: Complex, S: Iterable) -> FrozenSet[Face]:
        """
        Lk S = Cl St S - St Cl S

        The empty face counts as a face of S only when S lists it, so the
        empty face that every closure contains is dropped before taking
        St Cl S.
        """
        faces = self._require_all(K, S)
        closed_star = set()
        for face in self.star(K, faces):
            closed_star.update(self.closure(K, [face]))
        closed = set(self.closure(K, faces))
        if EMPTY_FACE not in faces:
            closed.discard(EMPTY_FACE)
        return frozenset(closed_star - self.star(K, closed))

    def is_downward_closed(self, faces: Iterable[Face]) -> bool:
        face_set = set(faces)
        return all(sub in face_set for face in face_set for sub in face.boundary())

    def link_dimension(self, faces: Iterable[Face]) -> Optional[int]:
        """Largest dimension in a face set; None for the empty set"""
        dims = [face.dim for face in faces]
        return max(dims) if dims else None

    def link_of_subcomplex(self, K: Complex, sigma: Complex) -> FrozenSet[Face]:
        """Lk Σ taken over the nonempty faces of a subcomplex Σ"""
        self._require_subcomplex(K, sigma)
        link = self.link(K, [face for face in sigma if face != EMPTY_FACE])
        if not self.is_downward_closed(link):
            logger.warning("Link is not closed under taking subfaces")
        return link

    # Motifs

    def _require_subcomplex(self, K: Complex, sigma: Complex) -> None:
        if not sigma.is_subcomplex_of(K):
            missing = sorted(set(sigma) - set(K))[:3]
            raise NotASubcomplexError(f"Not a subcomplex: {missing!r} missing from K")

    def is_motif(self, K: Complex, sigma: Complex) -> bool:
        """Σ contains every face of K spanned by its own vertices"""
        self._require_subcomplex(K, sigma)
        return sigma == K.induced_subcomplex(sigma.vertices())

    def satisfies_two_face_condition(self, K: Complex, sigma: Complex) -> bool:
        """Any face of K containing two distinct nonempty faces of Σ lies in Σ"""
        self._require_subcomplex(K, sigma)
        members = set(sigma)
        support = set(sigma.vertices())
        for face in K:
            if face in members:
                continue
            # Σ is closed, so F holds two distinct nonempty Σ-faces exactly
            # when it holds two vertices of Σ
            if len(support.intersection(face)) >= 2:
                return False
        return True

    def is_i_motif(self, K: Complex, sigma: Complex, i: int) -> bool:
        """Two-face condition and dim Lk Σ = i"""
        if not self.satisfies_two_face_condition(K, sigma):
            return False
        return self.link_dimension(self.link_of_subcomplex(K, sigma)) == i

    def is_isomorphic_via(self, K: Complex, L: Complex, mapping: Mapping[Vertex, Vertex]) -> bool:
        """True iff `mapping` is a bijection V(K) -> V(L) carrying faces onto faces"""
        if set(mapping) != set(K.vertices()):
            return False
        image = [mapping[v] for v in K.vertices()]
        if len(set(image)) != len(image) or set(image) != set(L.vertices()):
            return False
        try:
            return set(K.relabel(mapping)) == set(L)
        except MalformedInputError:
            return False

# Global complex service instance
complex_service = ComplexService()
