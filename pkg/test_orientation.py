#!/usr/bin/env python3
"""
Test script for orientations, boundary signs and boundary matrices
"""
import sys

import numpy as np

from simplex_spectra.exceptions import DimensionError, MalformedInputError
from simplex_spectra.models.complex import EMPTY_FACE, Face, from_facets
from simplex_spectra.services.orientation_service import CANONICAL, Cochain, orientation_service


def test_boundary_sign_follows_omitted_position():
    assert orientation_service.boundary_sign(("b",), ("a", "b")) == 1
    assert orientation_service.boundary_sign(("a",), ("a", "b")) == -1
    assert orientation_service.boundary_sign(("a", "c"), ("a", "b", "c")) == -1
    assert orientation_service.boundary_sign(("b", "c"), ("a", "b", "c")) == 1
    assert orientation_service.boundary_sign(("a", "d"), ("a", "b", "c")) == 0
    try:
        orientation_service.boundary_sign(("a",), ("a", "b", "c"))
    except DimensionError:
        pass
    else:
        raise AssertionError("dimension mismatch accepted")
    print("✓ boundary signs")


def test_reorientation_flips_signs():
    flipped = orientation_service.reorient(CANONICAL, ("a", "b"))
    assert orientation_service.boundary_sign(("a",), ("a", "b"), flipped) == 1
    assert orientation_service.boundary_sign(("b",), ("a", "b"), flipped) == -1
    assert orientation_service.reorient(flipped, ("a", "b")) == CANONICAL
    try:
        CANONICAL.reversed_at(EMPTY_FACE)
    except MalformedInputError:
        pass
    else:
        raise AssertionError("empty face reoriented")
    print("✓ reorientation")


def test_boundary_of_boundary_vanishes():
    K = from_facets([["a", "b", "c", "d"]])
    flipped = orientation_service.reorient(CANONICAL, ("a", "c"), K)
    for orientation in (CANONICAL, flipped):
        for i in range(0, K.dim + 1):
            upper = orientation_service.boundary_matrix(K, i + 1, orientation).entries
            lower = orientation_service.boundary_matrix(K, i, orientation).entries
            assert not np.any(lower @ upper)
    print("✓ ∂∂ = 0")


def test_boundary_matrix_shapes():
    K = from_facets([["a", "b"], ["b", "c"], ["a", "c"]])
    D0 = orientation_service.boundary_matrix(K, 0)
    assert D0.rows == [EMPTY_FACE] and D0.entries.tolist() == [[1, 1, 1]]
    D1 = orientation_service.boundary_matrix(K, 1)
    assert D1.entries.shape == (3, 3)
    assert D1.entries[:, 0].tolist() == [-1, 1, 0]
    D2 = orientation_service.boundary_matrix(K, 2)
    assert D2.entries.shape == (3, 0)
    try:
        orientation_service.boundary_matrix(K, 3)
    except DimensionError:
        pass
    else:
        raise AssertionError("∂_3 built for a 1-complex")
    print("✓ boundary matrix layout")


def test_coboundary():
    K = from_facets([["a", "b"]])
    constant = Cochain(dim=0, values={Face("a"): 1.0, Face("b"): 1.0})
    assert orientation_service.coboundary(K, 0, CANONICAL, constant).values == {Face("ab"): 0.0}
    spike = Cochain(dim=0, values={Face("a"): 1.0, Face("b"): 0.0})
    assert orientation_service.coboundary(K, 0, CANONICAL, spike).values == {Face("ab"): -1.0}
    print("✓ coboundary")


def test_signature_matrix():
    K = from_facets([["a", "b", "c"]])
    S = orientation_service.signature_matrix(K, 1, ("a", "c"))
    assert np.diag(S).tolist() == [1, -1, 1]
    print("✓ signature matrix")


def test_orientation_from_switching():
    switching = {Face("ab"): -1, Face("a"): 1, Face("b"): -1}
    orientation = orientation_service.orientation_from_switching(CANONICAL, switching)
    assert orientation.flipped_faces() == [Face("b"), Face("ab")]
    print("✓ orientation from switching")


def main():
    """Run all orientation tests"""
    print("Orientation Tests")
    print("=" * 30)
    tests = [
        test_boundary_sign_follows_omitted_position,
        test_reorientation_flips_signs,
        test_boundary_of_boundary_vanishes,
        test_boundary_matrix_shapes,
        test_coboundary,
        test_signature_matrix,
        test_orientation_from_switching,
    ]
    for test in tests:
        test()
    print(f"\n✓ All {len(tests)} orientation tests passed")


if __name__ == "__main__":
    sys.exit(main())
