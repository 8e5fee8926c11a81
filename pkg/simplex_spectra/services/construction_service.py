import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

# Fix imports to work from any directory
try:
    from ..exceptions import DimensionError, MalformedInputError
    from ..models.complex import Complex, EMPTY_FACE, Face, Vertex, vertex_label
    from .complex_service import complex_service
except ImportError:
    from exceptions import DimensionError, MalformedInputError
    from models.complex import Complex, EMPTY_FACE, Face, Vertex, vertex_label
    from services.complex_service import complex_service

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FaceBijection:
    """Vertex bijection φ: F1 -> F2 between two faces of equal dimension"""
    pairs: Mapping[Vertex, Vertex]

    @classmethod
    def identity_order(cls, F1, F2) -> "FaceBijection":
        """Pair the sorted vertices of F1 with the sorted vertices of F2"""
        F1, F2 = Face(F1), Face(F2)
        if len(F1) != len(F2):
            raise DimensionError(f"Cannot pair {F1!r} with {F2!r}")
        return cls(dict(zip(F1, F2)))

    def validate(self, F1: Face, F2: Face) -> None:
        if set(self.pairs) != set(F1):
            raise MalformedInputError(f"Bijection domain {sorted(self.pairs)!r} is not {F1!r}")
        image = list(self.pairs.values())
        if len(set(image)) != len(image) or set(image) != set(F2):
            raise MalformedInputError(f"Bijection is not onto {F2!r}")

    def inverse(self) -> Dict[Vertex, Vertex]:
        return {target: source for source, target in self.pairs.items()}


class ConstructionService:
    """Service for wedge sums, products, motif duplication and test-complex generators"""

    def _require_disjoint(self, K1: Complex, K2: Complex) -> None:
        overlap = set(K1.vertices()) & set(K2.vertices())
        if overlap:
            raise MalformedInputError(f"Vertex sets overlap in {sorted(overlap, key=str)[:3]!r}")

    def disjoint_union(self, K1: Complex, K2: Complex) -> Complex:
        self._require_disjoint(K1, K2)
        return Complex(list(K1) + list(K2))

    def disjoint_renaming(self, K: Complex, avoid: Iterable[Vertex], suffix: str = "_2") -> Dict[Vertex, str]:
        """Map every vertex v to 'v<suffix>', repeating the suffix until no name clashes with `avoid`"""
        avoid = list(avoid)
        taken = {vertex_label(v) for v in avoid} | set(avoid) | {vertex_label(v) for v in K.vertices()}
        mapping = {}
        for v in K.vertices():
            name = vertex_label(v) + suffix
            while name in taken:
                name += suffix
            mapping[v] = name
            taken.add(name)
        return mapping

    def disjoint_copy(self, K: Complex, avoid: Iterable[Vertex], suffix: str = "_2") -> Complex:
        return K.relabel(self.disjoint_renaming(K, avoid, suffix))

    def wedge_sum(self, K1: Complex, K2: Complex, F1, F2, phi: FaceBijection = None) -> Complex:
        """
        K1 ∨_k K2: glue K2 onto K1 by identifying the k-face F2 with F1

        Args:
            K1, K2: complexes on disjoint vertex sets
            F1, F2: k-faces of K1 and K2 (k >= 0)
            phi: bijection F1 -> F2; sorted order when omitted

        Returns:
            The union complex, F2's vertices renamed through φ⁻¹
        """
        self._require_disjoint(K1, K2)
        F1, F2 = K1.require(F1), K2.require(F2)
        if F1.dim != F2.dim:
            raise DimensionError(f"Wedge faces differ in dimension: {F1.dim} and {F2.dim}")
        if F1 == EMPTY_FACE:
            raise DimensionError("Wedge faces must be nonempty")
        phi = phi or FaceBijection.identity_order(F1, F2)
        phi.validate(F1, F2)
        glued = K2.relabel(phi.inverse())
        result = Complex(list(K1) + list(glued))
        logger.debug(f"{F1.dim}-wedge along {F1!r}: f-vector {result.f_vector()}")
        return result

    def cartesian_product(self, K1: Complex, K2: Complex) -> Complex:
        """K1 □ K2 on V(K1) × V(K2), faces F × v and u × F'"""
        faces = []
        for v in K2.vertices():
            faces.extend(Face((u, v) for u in face) for face in K1 if face != EMPTY_FACE)
        for u in K1.vertices():
            faces.extend(Face((u, v) for v in face) for face in K2 if face != EMPTY_FACE)
        return Complex(faces)

    # Motif duplication

    def link_vertices(self, K: Complex, sigma: Complex) -> List[Vertex]:
        link = complex_service.link_of_subcomplex(K, sigma)
        return sorted({v for face in link for v in face})

    def _primed_names(self, K: Complex, vertices: Iterable[Vertex]) -> Dict[Vertex, str]:
        taken = set(K.vertices())
        names = {}
        for v in vertices:
            if not isinstance(v, str):
                raise MalformedInputError(f"Motif duplication needs string vertex names, got {v!r}")
            name = v + "'"
            while name in taken:
                name += "'"
            names[v] = name
            taken.add(name)
        return names

    def duplicate_motif(self, K: Complex, sigma: Complex, i: Optional[int] = None) -> Tuple[Complex, Dict[Vertex, str]]:
        """
        K^Σ: add a primed copy of Σ joined to its link exactly as Σ is

        For each face of K whose vertices lie in V(Σ) ∪ V(Lk Σ) and meet V(Σ),
        the face with its Σ-vertices primed is added. When i is omitted the
        working dimension is taken to be dim Lk Σ.

        Returns:
            (K^Σ, f) where f maps each vertex of Σ to its primed copy
        """
        link_dim = complex_service.link_dimension(complex_service.link_of_subcomplex(K, sigma))
        i = link_dim if i is None else i
        if i is None or i < 0 or not complex_service.is_i_motif(K, sigma, i):
            raise MalformedInputError(f"Σ is not a {i}-motif of K")

        motif = set(sigma.vertices())
        allowed = motif | set(self.link_vertices(K, sigma))
        f = self._primed_names(K, sigma.vertices())
        added = [
            Face(f.get(v, v) for v in face)
            for face in K
            if face != EMPTY_FACE and allowed.issuperset(face) and motif.intersection(face)
        ]
        result = Complex(list(K) + added)
        logger.info(f"Duplicated a {i}-motif on {len(motif)} vertices: {len(added)} faces added")
        return result, f

    def embedded_copy(self, K: Complex, K_sigma: Complex, sigma: Complex,
                      f: Mapping[Vertex, str]) -> Tuple[Complex, Dict[Vertex, Vertex]]:
        """
        K_Σ': the copy of K inside K^Σ with Σ swapped for Σ'

        Returns:
            (K_Σ', f̄) with f̄ = f on V(Σ) and the identity elsewhere
        """
        motif = set(sigma.vertices())
        keep = [v for v in K_sigma.vertices() if v not in motif]
        copy = K_sigma.induced_subcomplex(keep)
        f_bar = {v: f.get(v, v) for v in K.vertices()}
        return copy, f_bar

    # Generators

    def full_simplex(self, vertices: Iterable[Vertex]) -> Complex:
        return Complex.from_facets([list(vertices)])

    def wedge_family(self, i: int, p: int) -> Complex:
        """
        K_p = K_{p-1} ∨_i K_0 with K_0 the full (i+1)-simplex

        Each step glues a fresh simplex along the lexicographically first
        i-face of the last simplex that contains its fresh vertex (the first
        i-face of K_0 at the first step). Vertices are named v000, v001, ...
        """
        if i < 0 or p < 0:
            raise DimensionError(f"wedge_family needs i >= 0 and p >= 0, got i={i}, p={p}")
        size = i + 2
        names = [f"v{n:03d}" for n in range(size)]
        K = self.full_simplex(names)
        glue = Face(names[: i + 1])
        for step in range(p):
            fresh = f"v{size + step:03d}"
            placeholders = [f"_{n}" for n in range(i + 1)]
            copy = self.full_simplex(placeholders + [fresh])
            K = self.wedge_sum(K, copy, glue, Face(placeholders))
            last = Face(list(glue) + [fresh])
            # drop the largest non-fresh vertex
            glue = last.omit(i)
        logger.debug(f"wedge_family(i={i}, p={p}): f-vector {K.f_vector()}")
        return K

    def random_pure_complex(self, dim: int, n_facets: int, rng: np.random.Generator,
                            prefix: str = "x", closing_rate: float = 0.5) -> Complex:
        """
        Grow a pure, dim-path connected complex one simplex at a time

        Every new facet is a random ridge of an existing facet joined either
        to a fresh vertex or, with probability `closing_rate`, to an existing
        vertex, which creates circuits.
        """
        if dim < 0 or n_facets < 1:
            raise DimensionError(f"random_pure_complex needs dim >= 0 and n_facets >= 1, got {dim}, {n_facets}")
        counter = dim + 1
        vertices = [f"{prefix}{n:02d}" for n in range(counter)]
        facets = {Face(vertices)}
        attempts = 0
        while len(facets) < n_facets and attempts < 50 * n_facets:
            attempts += 1
            facet = sorted(facets)[rng.integers(len(facets))]
            ridge = facet.omit(int(rng.integers(len(facet))))
            others = [v for v in vertices if v not in ridge]
            if rng.random() < closing_rate and others:
                apex = others[rng.integers(len(others))]
            else:
                apex = f"{prefix}{counter:02d}"
                counter += 1
                vertices.append(apex)
            candidate = Face(list(ridge) + [apex])
            if any(candidate.is_subface_of(f) or f.is_subface_of(candidate) for f in facets):
                continue
            facets.add(candidate)
        return Complex.from_facets(list(face) for face in facets)

# Global construction service instance
construction_service = ConstructionService()
