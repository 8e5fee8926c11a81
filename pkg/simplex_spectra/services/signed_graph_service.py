import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

# Fix imports to work from any directory
try:
    from ..exceptions import DimensionError, MalformedInputError, UnknownFaceError
    from ..models.complex import Complex, Face
    from .orientation_service import CANONICAL, Orientation, orientation_service
except ImportError:
    from exceptions import DimensionError, MalformedInputError, UnknownFaceError
    from models.complex import Complex, Face
    from services.orientation_service import CANONICAL, Orientation, orientation_service

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SignedIncidenceGraph:
    """B_i(K): bipartite signed graph between the i-faces and the (i+1)-faces"""
    dim: int
    low_faces: List[Face]
    high_faces: List[Face]
    graph: nx.Graph

    def sign(self, u: Face, v: Face) -> int:
        return self.graph.edges[u, v]["sign"]

    def nodes(self) -> List[Face]:
        return self.low_faces + self.high_faces

    def subgraph(self, nodes) -> "SignedIncidenceGraph":
        keep = set(nodes)
        return SignedIncidenceGraph(
            dim=self.dim,
            low_faces=[f for f in self.low_faces if f in keep],
            high_faces=[f for f in self.high_faces if f in keep],
            graph=self.graph.subgraph(keep).copy(),
        )


@dataclass(frozen=True)
class BalanceWitness:
    """Either a switching that makes every edge positive or a negative cycle"""
    switching: Optional[Dict[Face, int]] = None
    negative_cycle: Optional[List[Face]] = None

    def __post_init__(self):
        if (self.switching is None) == (self.negative_cycle is None):
            raise MalformedInputError("A balance witness holds exactly one of switching / negative_cycle")

    def verify(self, G: SignedIncidenceGraph) -> bool:
        """Recompute the witness against the graph"""
        if self.switching is not None:
            switched = signed_graph_service.apply_switching(G, self.switching)
            return all(sign == 1 for _, _, sign in switched.graph.edges(data="sign"))
        try:
            return signed_graph_service.cycle_sign(G, self.negative_cycle) == -1
        except UnknownFaceError:
            return False


@dataclass(frozen=True)
class BalancedComponent:
    """One connected component of B_i(K) holding at least one (i+1)-face"""
    low_faces: List[Face]
    high_faces: List[Face]
    balanced: bool
    witness: BalanceWitness


class SignedGraphService:
    """Service for signed incidence graphs, switching and balance"""

    def signed_incidence_graph(self, K: Complex, i: int, orientation: Orientation = CANONICAL) -> SignedIncidenceGraph:
        """Build (B_i(K), σ) with edge signs sgn([F], ∂[F̄])"""
        if i < 0 or i > K.dim - 1:
            raise DimensionError(f"B_{i} needs 0 <= i <= dim K - 1 = {K.dim - 1}")
        low, high = K.faces(i), K.faces(i + 1)
        graph = nx.Graph()
        graph.add_nodes_from(low, side="low")
        graph.add_nodes_from(high, side="high")
        for coface in high:
            for face in coface.boundary():
                graph.add_edge(face, coface, sign=orientation_service.boundary_sign(face, coface, orientation))
        logger.debug(f"B_{i}: {len(low)}+{len(high)} vertices, {graph.number_of_edges()} edges")
        return SignedIncidenceGraph(dim=i, low_faces=low, high_faces=high, graph=graph)

    def switch(self, G: SignedIncidenceGraph, vertex) -> SignedIncidenceGraph:
        """Reverse the signs of every edge at one vertex"""
        vertex = Face(vertex)
        if vertex not in G.graph:
            raise UnknownFaceError(f"{vertex!r} is not a vertex of B_{G.dim}")
        return self.apply_switching(G, {vertex: -1})

    def apply_switching(self, G: SignedIncidenceGraph, switching: Mapping[Face, int]) -> SignedIncidenceGraph:
        """Switch at every vertex v with s(v) = -1"""
        graph = G.graph.copy()
        for u, v, data in graph.edges(data=True):
            data["sign"] = data["sign"] * switching.get(u, 1) * switching.get(v, 1)
        return SignedIncidenceGraph(dim=G.dim, low_faces=list(G.low_faces), high_faces=list(G.high_faces), graph=graph)

    def cycle_sign(self, G: SignedIncidenceGraph, cycle: Sequence[Face]) -> int:
        """Product of edge signs along a closed vertex sequence"""
        cycle = list(cycle)
        if len(cycle) > 1 and cycle[0] == cycle[-1]:
            cycle = cycle[:-1]
        if len(cycle) < 3:
            raise MalformedInputError("A cycle needs at least three vertices")
        sign = 1
        for u, v in zip(cycle, cycle[1:] + cycle[:1]):
            if not G.graph.has_edge(u, v):
                raise UnknownFaceError(f"{u!r}-{v!r} is not an edge of B_{G.dim}")
            sign *= G.sign(u, v)
        return sign

    def is_balanced(self, G: SignedIncidenceGraph) -> Tuple[bool, BalanceWitness]:
        """
        Decide balance by propagating a vertex signing along BFS trees

        Each component gets s(root) = +1 and s(v) = ς(u, v) s(u) across tree
        edges. A non-tree edge with ς(u, v) != s(u) s(v) closes a negative
        cycle through the tree paths to the lowest common ancestor.

        Returns:
            (True, switching witness) or (False, negative-cycle witness)
        """
        potential: Dict[Face, int] = {}
        parent: Dict[Face, Optional[Face]] = {}
        for root in G.nodes():
            if root in potential:
                continue
            potential[root] = 1
            parent[root] = None
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for v in sorted(G.graph.neighbors(u)):
                    expected = G.sign(u, v) * potential[u]
                    if v not in potential:
                        potential[v] = expected
                        parent[v] = u
                        queue.append(v)
                    elif potential[v] != expected:
                        cycle = self._tree_cycle(parent, u, v)
                        logger.debug(f"B_{G.dim} unbalanced: negative cycle of length {len(cycle)}")
                        return False, BalanceWitness(negative_cycle=cycle)
        return True, BalanceWitness(switching=potential)

    def _tree_cycle(self, parent: Mapping[Face, Optional[Face]], u: Face, v: Face) -> List[Face]:
        def ancestors(node):
            chain = []
            while node is not None:
                chain.append(node)
                node = parent[node]
            return chain

        up_u, up_v = ancestors(u), ancestors(v)
        on_v = set(up_v)
        lca = next(node for node in up_u if node in on_v)
        path_u = up_u[: up_u.index(lca) + 1]
        path_v = up_v[: up_v.index(lca)]
        return path_u + list(reversed(path_v))

    def balanced_components(self, K: Complex, i: int, orientation: Orientation = CANONICAL) -> List[BalancedComponent]:
        """Balance of every component of B_i(K) that contains an (i+1)-face"""
        G = self.signed_incidence_graph(K, i, orientation)
        results = []
        for nodes in nx.connected_components(G.graph):
            sub = G.subgraph(nodes)
            if not sub.high_faces:
                continue
            balanced, witness = self.is_balanced(sub)
            results.append(BalancedComponent(
                low_faces=sub.low_faces,
                high_faces=sub.high_faces,
                balanced=balanced,
                witness=witness,
            ))
        results.sort(key=lambda component: component.high_faces)
        logger.info(
            f"B_{i}: {len(results)} components, {sum(c.balanced for c in results)} balanced"
        )
        return results

# Global signed graph service instance
signed_graph_service = SignedGraphService()
