#!/usr/bin/env python3
"""
Test script for signed incidence graphs, switching and balance
"""
import sys

import networkx as nx
import numpy as np

from simplex_spectra.exceptions import DimensionError, UnknownFaceError
from simplex_spectra.models.complex import Face, from_facets
from simplex_spectra.services.generator_service import generator_service
from simplex_spectra.services.orientation_service import CANONICAL, orientation_service
from simplex_spectra.services.signed_graph_service import signed_graph_service

HOLLOW_TRIANGLE = [["a", "b"], ["b", "c"], ["a", "c"]]
SQUARE = [["a", "b"], ["b", "c"], ["c", "d"], ["a", "d"]]
TETRA_BOUNDARY = [["a", "b", "c"], ["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]]


def edge_signs(G):
    return {frozenset((u, v)): s for u, v, s in G.graph.edges(data="sign")}


def test_incidence_graph_signs():
    G = signed_graph_service.signed_incidence_graph(from_facets([["a", "b"]]), 0)
    assert G.low_faces == [Face("a"), Face("b")]
    assert G.high_faces == [Face("ab")]
    assert G.sign(Face("a"), Face("ab")) == -1
    assert G.sign(Face("b"), Face("ab")) == 1
    assert G.graph.number_of_edges() == 2
    try:
        signed_graph_service.signed_incidence_graph(from_facets([["a", "b"]]), 1)
    except DimensionError:
        pass
    else:
        raise AssertionError("B_1 built for a graph")
    print("✓ incidence graph signs")


def test_hollow_triangle_is_unbalanced():
    G = signed_graph_service.signed_incidence_graph(from_facets(HOLLOW_TRIANGLE), 0)
    balanced, witness = signed_graph_service.is_balanced(G)
    assert not balanced
    assert witness.negative_cycle is not None
    assert len(witness.negative_cycle) == 6
    assert signed_graph_service.cycle_sign(G, witness.negative_cycle) == -1
    assert witness.verify(G)
    print("✓ hollow triangle carries a negative cycle")


def test_even_cycle_and_edge_are_balanced():
    for facets in ([["a", "b"]], SQUARE):
        G = signed_graph_service.signed_incidence_graph(from_facets(facets), 0)
        balanced, witness = signed_graph_service.is_balanced(G)
        assert balanced
        assert witness.switching is not None and witness.verify(G)
    print("✓ lone edge and 4-cycle are balanced")


def test_tetrahedron_boundary():
    K = from_facets(TETRA_BOUNDARY)
    components = signed_graph_service.balanced_components(K, 1)
    assert len(components) == 1
    assert not components[0].balanced
    assert len(components[0].high_faces) == 4 and len(components[0].low_faces) == 6
    print("✓ tetrahedron boundary B_1 is one unbalanced component")


def test_components_skip_faces_without_cofaces():
    K = from_facets([["a", "b", "c"], ["d"]])
    components = signed_graph_service.balanced_components(K, 0)
    assert len(components) == 1
    assert Face("d") not in components[0].low_faces
    print("✓ isolated low faces form no component")


def test_balance_matches_cycle_basis():
    rng = np.random.default_rng(3)
    checked = 0
    for _ in range(60):
        K = generator_service.random_complex(rng, max_vertices=7, max_dim=3)
        for i in range(K.dim):
            G = signed_graph_service.signed_incidence_graph(K, i)
            balanced, witness = signed_graph_service.is_balanced(G)
            positive = all(
                signed_graph_service.cycle_sign(G, cycle) == 1 for cycle in nx.cycle_basis(G.graph)
            )
            assert balanced == positive
            assert witness.verify(G)
            checked += 1
    assert checked > 0
    print(f"✓ balance agrees with the cycle basis on {checked} graphs")


def test_reorientation_is_switching():
    K = from_facets(TETRA_BOUNDARY)
    for face in (("a", "b"), ("a", "c", "d")):
        flipped = orientation_service.reorient(CANONICAL, face, K)
        G = signed_graph_service.signed_incidence_graph(K, 1)
        switched = signed_graph_service.switch(G, face)
        assert edge_signs(signed_graph_service.signed_incidence_graph(K, 1, flipped)) == edge_signs(switched)
    print("✓ reorienting a face switches its vertex")


def test_switch_unknown_vertex():
    G = signed_graph_service.signed_incidence_graph(from_facets(HOLLOW_TRIANGLE), 0)
    try:
        signed_graph_service.switch(G, ("z",))
    except UnknownFaceError:
        pass
    else:
        raise AssertionError("switched a vertex outside B_0")
    print("✓ switching an unknown vertex fails")


def test_switching_keeps_balance():
    rng = np.random.default_rng(8)
    for _ in range(20):
        K = generator_service.random_complex(rng, max_vertices=6, max_dim=2)
        if K.dim < 1:
            continue
        G = signed_graph_service.signed_incidence_graph(K, 0)
        nodes = G.nodes()
        switching = {node: int(rng.choice([-1, 1])) for node in nodes}
        switched = signed_graph_service.apply_switching(G, switching)
        assert signed_graph_service.is_balanced(G)[0] == signed_graph_service.is_balanced(switched)[0]
    print("✓ switching preserves balance")


def main():
    """Run all signed graph tests"""
    print("Signed Graph Tests")
    print("=" * 30)
    tests = [
        test_incidence_graph_signs,
        test_hollow_triangle_is_unbalanced,
        test_even_cycle_and_edge_are_balanced,
        test_tetrahedron_boundary,
        test_components_skip_faces_without_cofaces,
        test_balance_matches_cycle_basis,
        test_reorientation_is_switching,
        test_switch_unknown_vertex,
        test_switching_keeps_balance,
    ]
    for test in tests:
        test()
    print(f"\n✓ All {len(tests)} signed graph tests passed")


if __name__ == "__main__":
    sys.exit(main())
