#!/usr/bin/env python3
"""
Test script for wedge sums, products, motif duplication and generators
"""
import sys

import numpy as np

from simplex_spectra.exceptions import DimensionError, MalformedInputError
from simplex_spectra.models.complex import Face, from_facets
from simplex_spectra.services.complex_service import complex_service
from simplex_spectra.services.construction_service import FaceBijection, construction_service
from simplex_spectra.services.homology_service import homology_service
from simplex_spectra.services.signed_graph_service import signed_graph_service
from simplex_spectra.services.spectra_service import spectra_service

LONE_EDGE = [["a", "b"]]
PATH = [["a", "b"], ["b", "c"]]


def expect_error(error, call, message):
    try:
        call()
    except error:
        return
    raise AssertionError(message)


def test_vertex_wedge():
    K = construction_service.wedge_sum(from_facets(LONE_EDGE), from_facets([["c", "d"]]), ("b",), ("c",))
    assert K == from_facets([["a", "b"], ["b", "d"]])
    print("✓ 0-wedge of two edges is a path")


def test_edge_wedge_with_bijection():
    K1 = from_facets([["a", "b", "c"]])
    K2 = from_facets([["d", "e", "f"]])
    K = construction_service.wedge_sum(K1, K2, ("b", "c"), ("d", "e"))
    assert K == from_facets([["a", "b", "c"], ["b", "c", "f"]])
    twisted = construction_service.wedge_sum(
        K1, K2, ("b", "c"), ("d", "e"), FaceBijection({"b": "e", "c": "d"})
    )
    assert twisted == K
    K3 = from_facets([["d", "e", "f"], ["e", "f", "g"]])
    crossed = construction_service.wedge_sum(K1, K3, ("b", "c"), ("d", "e"), FaceBijection({"b": "e", "c": "d"}))
    assert from_facets([["b", "c", "f"], ["b", "f", "g"]]).is_subcomplex_of(crossed)
    assert crossed.count(2) == 3
    print("✓ 1-wedge along a chosen bijection")


def test_wedge_errors():
    K = from_facets([["a", "b", "c"]])
    other = from_facets([["x", "y"]])
    expect_error(MalformedInputError, lambda: construction_service.wedge_sum(K, K, ("a",), ("b",)),
                 "overlapping vertex sets accepted")
    expect_error(DimensionError, lambda: construction_service.wedge_sum(K, other, ("a",), ("x", "y")),
                 "faces of different dimension glued")
    expect_error(DimensionError, lambda: construction_service.wedge_sum(K, other, (), ()),
                 "empty faces glued")
    expect_error(MalformedInputError, lambda: construction_service.wedge_sum(
        K, other, ("a", "b"), ("x", "y"), FaceBijection({"a": "x", "b": "x"})), "non-bijective map accepted")
    print("✓ wedge argument checks")


def test_wedge_keeps_balance():
    triangle = from_facets([["a", "b"], ["b", "c"], ["a", "c"]])
    square = from_facets([["p", "q"], ["q", "r"], ["r", "s"], ["p", "s"]])
    K = construction_service.wedge_sum(triangle, square, ("a",), ("p",))
    components = signed_graph_service.balanced_components(K, 0)
    assert len(components) == 1 and not components[0].balanced
    assert not spectra_service.has_top_eigenvalue(K, 0)
    squares = construction_service.wedge_sum(square, construction_service.disjoint_copy(square, square.vertices()),
                                             ("p",), ("p_2",))
    assert spectra_service.has_top_eigenvalue(squares, 0)
    print("✓ wedges of balanced pieces stay balanced")


def test_product_of_edges_is_a_square():
    K = construction_service.cartesian_product(from_facets(LONE_EDGE), from_facets([["x", "y"]]))
    assert K.f_vector() == [1, 4, 4]
    assert Face((("a", "x"), ("a", "y"))) in K
    assert Face((("a", "x"), ("b", "y"))) not in K
    assert np.allclose(spectra_service.spectrum(K, 0).eigenvalues, [0.0, 1.0, 1.0, 2.0])
    print("✓ edge □ edge is a 4-cycle")


def test_product_with_a_point():
    K = from_facets([["a", "b", "c"], ["c", "d"]])
    P = construction_service.cartesian_product(K, from_facets([["o"]]))
    assert complex_service.is_isomorphic_via(K, P, {v: (v, "o") for v in K.vertices()})
    print("✓ K □ point ≅ K")


def test_duplicate_motif_on_a_path():
    K = from_facets(PATH)
    sigma = from_facets([["a"]])
    K_sigma, f = construction_service.duplicate_motif(K, sigma)
    assert f == {"a": "a'"}
    assert K_sigma == from_facets([["a", "b"], ["b", "c"], ["a'", "b"]])
    copy, f_bar = construction_service.embedded_copy(K, K_sigma, sigma, f)
    assert f_bar == {"a": "a'", "b": "b", "c": "c"}
    assert complex_service.is_isomorphic_via(K, copy, f_bar)
    expect_error(MalformedInputError, lambda: construction_service.duplicate_motif(K, sigma, 1),
                 "duplicated at the wrong link dimension")
    print("✓ duplicating a vertex motif on a path")


def test_duplicate_motif_keeps_top_eigenvalue():
    K = from_facets([["a", "b", "c"], ["b", "c", "d"]])
    sigma = from_facets([["a"]])
    assert spectra_service.has_top_eigenvalue(K, 1)
    K_sigma, f = construction_service.duplicate_motif(K, sigma)
    assert Face(("a'", "b", "c")) in K_sigma
    assert complex_service.is_path_connected(K_sigma, 2)
    assert spectra_service.has_top_eigenvalue(K_sigma, 1)
    print("✓ motif duplication keeps λ_max = i + 2")


def test_primed_names_avoid_clashes():
    K = from_facets([["a", "a'"], ["a", "b"]])
    sigma = from_facets([["b"]])
    K_sigma, f = construction_service.duplicate_motif(K, sigma)
    assert f == {"b": "b'"}
    clash = from_facets([["a", "b"], ["b", "a'"]])
    _, f = construction_service.duplicate_motif(clash, from_facets([["a"]]))
    assert f == {"a": "a''"}
    print("✓ primed names avoid existing vertices")


def test_wedge_family():
    for i in range(3):
        for p in range(4):
            K = construction_service.wedge_family(i, p)
            assert K.dim == i + 1 and K.count(i + 1) == p + 1
            assert K.count(0) == i + 2 + p
            assert complex_service.is_path_connected(K, i + 1)
            assert spectra_service.has_top_eigenvalue(K, i)
            assert homology_service.is_acyclic(K)
    assert construction_service.wedge_family(1, 3).facets() == [
        Face(("v000", "v001", "v002")), Face(("v000", "v001", "v003")),
        Face(("v000", "v003", "v004")), Face(("v000", "v004", "v005")),
    ]
    expect_error(DimensionError, lambda: construction_service.wedge_family(-1, 2), "negative i accepted")
    print("✓ iterated wedge family")


def test_disjoint_copy_and_union():
    K = from_facets([["a", "b"], ["a_2", "c"]])
    copy = construction_service.disjoint_copy(K, K.vertices())
    assert not set(copy.vertices()) & set(K.vertices())
    union = construction_service.disjoint_union(K, copy)
    assert union.count(1) == 4
    expect_error(MalformedInputError, lambda: construction_service.disjoint_union(K, K), "overlap accepted")
    print("✓ disjoint copy and union")


def test_random_pure_complex():
    rng = np.random.default_rng(41)
    for dim in range(3):
        K = construction_service.random_pure_complex(dim, 6, rng)
        assert K.is_pure() and K.dim == dim
        assert complex_service.is_path_connected(K, dim)
    print("✓ random pure complexes are path connected")


def main():
    """Run all construction tests"""
    print("Construction Tests")
    print("=" * 30)
    tests = [
        test_vertex_wedge,
        test_edge_wedge_with_bijection,
        test_wedge_errors,
        test_wedge_keeps_balance,
        test_product_of_edges_is_a_square,
        test_product_with_a_point,
        test_duplicate_motif_on_a_path,
        test_duplicate_motif_keeps_top_eigenvalue,
        test_primed_names_avoid_clashes,
        test_wedge_family,
        test_disjoint_copy_and_union,
        test_random_pure_complex,
    ]
    for test in tests:
        test()
    print(f"\n✓ All {len(tests)} construction tests passed")


if __name__ == "__main__":
    sys.exit(main())
