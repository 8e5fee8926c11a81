#!/usr/bin/env python3
"""
Test script for the simplex-spectra command line
"""
import contextlib
import io
import json
import os
import sys
import tempfile

import numpy as np

from simplex_spectra.main import EXIT_CONSISTENCY, EXIT_MALFORMED, EXIT_OK, main as cli_main
from simplex_spectra.services.construction_service import construction_service
from simplex_spectra.services.generator_service import generator_service
from simplex_spectra.services.io_service import io_service

HOLLOW_TRIANGLE = {"facets": [["a", "b"], ["b", "c"], ["a", "c"]]}
LONE_EDGE = {"facets": [["a", "b"]]}
TETRA_BOUNDARY = {"facets": [["a", "b", "c"], ["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]]}


def write_temp(directory, name, payload):
    path = os.path.join(directory, name)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(payload if isinstance(payload, str) else json.dumps(payload))
    return path


def run_cli(argv):
    """Run the command line in-process and return (exit code, stdout)"""
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        code = cli_main(argv)
    return code, buffer.getvalue()


def test_spectrum_command():
    with tempfile.TemporaryDirectory() as tmp:
        path = write_temp(tmp, "triangle.json", HOLLOW_TRIANGLE)
        code, out = run_cli(["spectrum", "--input", path, "--dim", "0"])
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["weighting"] == "normalized" and report["order"] == 3
        assert abs(report["lambda_max"] - 1.5) < 1e-10
        assert report["has_top"] is False and report["top_multiplicity"] == 0

        edge = write_temp(tmp, "edge.json", LONE_EDGE)
        code, out = run_cli(["spectrum", "--input", edge, "--dim", "0"])
        report = json.loads(out)
        assert report["has_top"] is True and report["top_multiplicity"] == 1
        assert [round(x, 9) for x in report["eigenvalues"]] == [0.0, 2.0]

        code, out = run_cli(["spectrum", "--input", path, "--dim", "1", "--op", "full"])
        report = json.loads(out)
        assert report["kernel_dimension"] == 1 and report["has_top"] is None
    print("✓ spectrum")


def test_balance_and_circuits_commands():
    with tempfile.TemporaryDirectory() as tmp:
        path = write_temp(tmp, "triangle.json", HOLLOW_TRIANGLE)
        code, out = run_cli(["balance", "--input", path, "--dim", "0"])
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["balanced_count"] == 0
        witness = report["components"][0]["witness"]
        assert witness["kind"] == "negative_cycle" and len(witness["negative_cycle"]) == 6

        code, out = run_cli(["circuits", "--input", path, "--dim", "0"])
        report = json.loads(out)
        assert report["complete"] and report["has_forbidden"]
        assert report["circuits"][0]["classification"] == "orientable"

        code, out = run_cli(["components", "--input", path, "--dim", "1"])
        assert json.loads(out)["path_connected"] is True
    print("✓ balance, circuits and components")


def test_betti_command():
    with tempfile.TemporaryDirectory() as tmp:
        path = write_temp(tmp, "sphere.json", TETRA_BOUNDARY)
        code, out = run_cli(["betti", "--input", path])
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["reduced_betti"] == [0, 0, 0, 1]
        assert report["acyclic"] is False and report["euler_characteristic"] == 1
    print("✓ betti")


def test_malformed_input_exits_one():
    with tempfile.TemporaryDirectory() as tmp:
        cases = [
            ["spectrum", "--input", write_temp(tmp, "bad.json", "{not json"), "--dim", "0"],
            ["spectrum", "--input", write_temp(tmp, "dup.json", {"facets": [["a", "a"]]}), "--dim", "0"],
            ["spectrum", "--input", write_temp(tmp, "empty.json", {"facets": [[]]}), "--dim", "0"],
            ["spectrum", "--input", os.path.join(tmp, "missing.json"), "--dim", "0"],
            ["spectrum", "--input", write_temp(tmp, "edge.json", LONE_EDGE), "--dim", "5"],
            ["balance", "--input", os.path.join(tmp, "edge.json"), "--dim", "0", "--reorient", "a,z"],
            ["spectrum", "--input", os.path.join(tmp, "edge.json"), "--dim", "0", "--weighting", "harmonic"],
            ["no-such-command"],
        ]
        for argv in cases:
            code, out = run_cli(argv)
            assert code == EXIT_MALFORMED, f"{argv} exited {code}"
            assert out == ""
    print("✓ malformed input exits 1")


def test_generate_wedge_family():
    code, out = run_cli(["generate", "wedge-family", "--dim", "1", "--steps", "3"])
    assert code == EXIT_OK
    facets = json.loads(out)["facets"]
    assert len(facets) == 4 and all(len(facet) == 3 for facet in facets)
    print("✓ generate wedge-family")


def test_generate_is_deterministic():
    argv = ["generate", "random", "--seed", "123", "--max-vertices", "8"]
    assert run_cli(argv) == run_cli(argv)
    print("✓ generate random is seed-deterministic")


def test_complex_round_trip():
    rng = np.random.default_rng(17)
    complexes = [generator_service.random_complex(rng, max_vertices=8) for _ in range(50)]
    complexes += [construction_service.wedge_family(i, p) for i in range(3) for p in range(1, 4)]
    for K in complexes:
        assert io_service.parse_complex(io_service.dumps(K)) == K
    print("✓ written complexes read back unchanged")


def test_construct_wedge_renames_overlap():
    with tempfile.TemporaryDirectory() as tmp:
        edge = write_temp(tmp, "edge.json", LONE_EDGE)
        code, out = run_cli(["construct", "wedge", "--input", edge, "--other", edge,
                             "--face1", "b", "--face2", "a"])
        assert code == EXIT_OK
        assert json.loads(out)["facets"] == [["a", "b"], ["b", "b_2"]]
        code, _ = run_cli(["construct", "wedge", "--input", edge, "--face1", "b", "--face2", "a"])
        assert code == EXIT_MALFORMED
    print("✓ construct wedge")


def test_construct_duplicate():
    with tempfile.TemporaryDirectory() as tmp:
        path = write_temp(tmp, "path.json", {"facets": [["a", "b"], ["b", "c"]]})
        code, out = run_cli(["construct", "duplicate", "--input", path, "--motif-vertices", "a"])
        assert code == EXIT_OK
        assert json.loads(out)["facets"] == [["a'", "b"], ["a", "b"], ["b", "c"]]
    print("✓ construct duplicate")


def test_export_and_reorient():
    with tempfile.TemporaryDirectory() as tmp:
        edge = write_temp(tmp, "edge.json", LONE_EDGE)
        code, out = run_cli(["export", "--input", edge, "--dim", "1"])
        export = json.loads(out)
        assert export["rows"] == ["a", "b"] and export["columns"] == ["a,b"]
        assert export["entries"] == [[-1.0], [1.0]]
        code, out = run_cli(["export", "--input", edge, "--dim", "1", "--reorient", "a,b"])
        assert json.loads(out)["entries"] == [[1.0], [-1.0]]
        code, out = run_cli(["export", "--input", edge, "--dim", "0", "--matrix", "down", "--no-empty-face"])
        assert json.loads(out)["entries"] == [[0.0, 0.0], [0.0, 0.0]]

        base = json.loads(run_cli(["spectrum", "--input", edge, "--dim", "0"])[1])
        moved = json.loads(run_cli(["spectrum", "--input", edge, "--dim", "0", "--reorient", "a"])[1])
        assert [round(x, 9) for x in base["eigenvalues"]] == [round(x, 9) for x in moved["eigenvalues"]]
        assert moved["reoriented"] == ["a"]
    print("✓ export and --reorient")


def test_weights_file():
    with tempfile.TemporaryDirectory() as tmp:
        edge = write_temp(tmp, "edge.json", LONE_EDGE)
        normalized = write_temp(tmp, "normalized.json", [
            {"face": "", "w": 2.0}, {"face": "a", "w": 1.0}, {"face": "b", "w": 1.0}, {"face": "a,b", "w": 1.0},
        ])
        code, out = run_cli(["spectrum", "--input", edge, "--dim", "0", "--weighting", f"file:{normalized}"])
        report = json.loads(out)
        assert code == EXIT_OK and report["weighting"] == "normalized" and report["has_top"] is True

        flat = write_temp(tmp, "flat.json", [
            {"face": "", "w": 1.0}, {"face": "a", "w": 1.0}, {"face": "b", "w": 1.0}, {"face": "a,b", "w": 1.0},
        ])
        code, out = run_cli(["spectrum", "--input", edge, "--dim", "0", "--weighting", f"file:{flat}"])
        report = json.loads(out)
        assert report["weighting"] == "custom" and report["has_top"] is None

        partial = write_temp(tmp, "partial.json", [{"face": "a", "w": 1.0}])
        code, _ = run_cli(["spectrum", "--input", edge, "--dim", "0", "--weighting", f"file:{partial}"])
        assert code == EXIT_MALFORMED
    print("✓ weights files")


def test_verify_family_pipeline():
    with tempfile.TemporaryDirectory() as tmp:
        dump = os.path.join(tmp, "failures.jsonl")
        code, out = run_cli(["verify", "c43", "--trials", "18", "--dump-failures", dump])
        assert code == EXIT_OK
        lines = [json.loads(line) for line in out.splitlines()]
        summary = lines[-1]
        assert summary["pipeline"] == "c43" and summary["records"] == 18
        assert summary["disagreements"] == 0
        assert all(line["agree"] for line in lines[:-1])
        assert not os.path.exists(dump)
    assert EXIT_CONSISTENCY == 2
    print("✓ verify c43")


def main():
    """Run all command line tests"""
    print("Command Line Tests")
    print("=" * 30)
    tests = [
        test_spectrum_command,
        test_balance_and_circuits_commands,
        test_betti_command,
        test_malformed_input_exits_one,
        test_generate_wedge_family,
        test_generate_is_deterministic,
        test_complex_round_trip,
        test_construct_wedge_renames_overlap,
        test_construct_duplicate,
        test_export_and_reorient,
        test_weights_file,
        test_verify_family_pipeline,
    ]
    for test in tests:
        test()
    print(f"\n✓ All {len(tests)} command line tests passed")


if __name__ == "__main__":
    sys.exit(main())
