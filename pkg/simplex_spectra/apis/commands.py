"""Command handlers for the simplex-spectra command line.

Every handler takes the parsed argparse namespace and returns a pydantic
model (or a list of them for streamed output); main() prints and maps
errors to exit codes.
"""
import argparse
import logging
from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel

# Fix imports to work from any directory
try:
    from ..config import settings
    from ..exceptions import MalformedInputError
    from ..models.complex import Complex, Face, parse_face
    from ..models.schemas import (
        BalanceReport, BalanceWitnessPayload, BettiReport, CircuitPayload, CircuitReport,
        ComplexPayload, ComponentBalance, ComponentsReport, MatrixExport, SpectrumReport,
    )
    from ..services.circuit_service import circuit_service
    from ..services.complex_service import complex_service
    from ..services.construction_service import FaceBijection, construction_service
    from ..services.generator_service import generator_service
    from ..services.homology_service import homology_service
    from ..services.io_service import io_service
    from ..services.laplacian_service import CUSTOM, FULL, NORMALIZED, UP, laplacian_service
    from ..services.orientation_service import CANONICAL, Orientation, orientation_service
    from ..services.signed_graph_service import BalanceWitness, signed_graph_service
    from ..services.spectra_service import spectra_service
    from ..services.verification_service import VerifyParams, verification_service
except ImportError:
    from config import settings
    from exceptions import MalformedInputError
    from models.complex import Complex, Face, parse_face
    from models.schemas import (
        BalanceReport, BalanceWitnessPayload, BettiReport, CircuitPayload, CircuitReport,
        ComplexPayload, ComponentBalance, ComponentsReport, MatrixExport, SpectrumReport,
    )
    from services.circuit_service import circuit_service
    from services.complex_service import complex_service
    from services.construction_service import FaceBijection, construction_service
    from services.generator_service import generator_service
    from services.homology_service import homology_service
    from services.io_service import io_service
    from services.laplacian_service import CUSTOM, FULL, NORMALIZED, UP, laplacian_service
    from services.orientation_service import CANONICAL, Orientation, orientation_service
    from services.signed_graph_service import BalanceWitness, signed_graph_service
    from services.spectra_service import spectra_service
    from services.verification_service import VerifyParams, verification_service

logger = logging.getLogger(__name__)

Output = Union[BaseModel, List[BaseModel]]


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors become MalformedInputError (exit 1)"""

    def error(self, message: str):
        raise MalformedInputError(f"{self.prog}: {message}")


def _labels(faces) -> List[str]:
    return [Face(face).label for face in faces]


def _load(args: argparse.Namespace) -> Complex:
    return io_service.read_complex(args.input)


def _orientation(args: argparse.Namespace, K: Complex) -> Orientation:
    """Canonical orientation with every --reorient face reversed"""
    orientation = CANONICAL
    for text in args.reorient or []:
        orientation = orientation_service.reorient(orientation, parse_face(text), K)
    return orientation


def _witness_payload(witness: BalanceWitness) -> BalanceWitnessPayload:
    if witness.switching is not None:
        return BalanceWitnessPayload(
            kind="switching",
            switching={face.label: sign for face, sign in witness.switching.items()},
        )
    return BalanceWitnessPayload(kind="negative_cycle", negative_cycle=_labels(witness.negative_cycle))


def cmd_spectrum(args: argparse.Namespace) -> SpectrumReport:
    """Eigenvalues of the up, down or full Laplacian at one dimension"""
    K = _load(args)
    orientation = _orientation(args, K)
    w = io_service.weights_for(K, args.weighting)
    normalized = spectra_service.is_normalized(K, w)
    label = NORMALIZED if normalized else (CUSTOM if w.regime == CUSTOM else w.regime)

    spectrum = spectra_service.spectrum(K, args.dim, args.op, w, orientation,
                                        include_empty=not args.no_empty_face)
    lam = spectrum.largest
    top = args.dim + 2
    report = SpectrumReport(
        dim=args.dim,
        op=args.op,
        weighting=label,
        order=len(spectrum),
        eigenvalues=[float(x) for x in spectrum.eigenvalues],
        lambda_max=lam,
        kernel_dimension=spectra_service.kernel_dimension(spectrum),
        reoriented=list(args.reorient or []),
    )
    if normalized and args.op == UP:
        report.top_multiplicity = spectrum.count_near(top, settings.MULTIPLICITY_TOL)
        report.has_top = abs(lam - top) <= args.tol
    logger.info(f"Spectrum ({args.op}, dim {args.dim}, {label}): λ_max = {lam:.12g}")
    return report


def cmd_balance(args: argparse.Namespace) -> BalanceReport:
    """Balance of every component of B_i with a witness each"""
    K = _load(args)
    components = signed_graph_service.balanced_components(K, args.dim, _orientation(args, K))
    return BalanceReport(
        dim=args.dim,
        components=[
            ComponentBalance(
                high_faces=_labels(c.high_faces),
                low_faces=_labels(c.low_faces),
                balanced=c.balanced,
                witness=_witness_payload(c.witness),
            )
            for c in components
        ],
        balanced_count=sum(c.balanced for c in components),
        reoriented=list(args.reorient or []),
    )


def cmd_components(args: argparse.Namespace) -> ComponentsReport:
    K = _load(args)
    components = complex_service.path_components(K, args.dim)
    return ComponentsReport(
        dim=args.dim,
        components=[_labels(component) for component in components],
        path_connected=len(components) == 1,
    )


def cmd_circuits(args: argparse.Namespace) -> CircuitReport:
    K = _load(args)
    enumeration = circuit_service.enumerate_circuits(K, args.dim, args.max_len)
    circuits = [
        CircuitPayload(
            top_faces=_labels(c.top_faces),
            shared_faces=_labels(c.shared_faces),
            length=c.length,
            classification=c.classification,
            forbidden=circuit_service.is_forbidden(c),
        )
        for c in enumeration.circuits
    ]
    return CircuitReport(
        dim=args.dim,
        max_len=enumeration.max_len,
        complete=enumeration.complete,
        circuits=circuits,
        has_forbidden=any(c.forbidden for c in circuits),
    )


def cmd_betti(args: argparse.Namespace) -> BettiReport:
    K = _load(args)
    betti = homology_service.betti(K)
    return BettiReport(
        reduced_betti=list(betti.values),
        acyclic=betti.is_zero(),
        euler_characteristic=homology_service.euler_characteristic(K),
    )


def _construct_wedge(args: argparse.Namespace) -> Complex:
    K1 = _load(args)
    if not args.other:
        raise MalformedInputError("construct wedge needs --other PATH for the second complex")
    K2 = io_service.read_complex(args.other)
    if not args.face1 or not args.face2:
        raise MalformedInputError("construct wedge needs --face1 and --face2")
    F1, F2 = parse_face(args.face1), parse_face(args.face2)
    pairs = io_service.parse_bijection(args.map) if args.map else dict(zip(F1, F2))

    overlap = set(K1.vertices()) & set(K2.vertices())
    if overlap:
        renaming = construction_service.disjoint_renaming(K2, K1.vertices())
        logger.warning(f"Vertex sets overlap on {len(overlap)} vertices; renaming the second complex")
        K2 = K2.relabel(renaming)
        F2 = Face(renaming.get(v, v) for v in F2)
        pairs = {source: renaming.get(target, target) for source, target in pairs.items()}
    return construction_service.wedge_sum(K1, K2, F1, F2, FaceBijection(pairs))


def _construct_duplicate(args: argparse.Namespace) -> Complex:
    K = _load(args)
    if not args.motif_vertices:
        raise MalformedInputError("construct duplicate needs --motif-vertices a,b,...")
    chosen = [v.strip() for v in args.motif_vertices.split(",") if v.strip()]
    missing = set(chosen) - set(K.vertices())
    if missing:
        raise MalformedInputError(f"Motif vertices not in the complex: {sorted(missing)}")
    sigma = K.induced_subcomplex(chosen)
    K_sigma, _ = construction_service.duplicate_motif(K, sigma, args.motif_dim)
    return K_sigma


def cmd_construct(args: argparse.Namespace) -> ComplexPayload:
    """Build a wedge, product, motif duplication or iterated-wedge family"""
    if args.kind == "wedge":
        K = _construct_wedge(args)
    elif args.kind == "product":
        if not args.other:
            raise MalformedInputError("construct product needs --other PATH for the second complex")
        K = construction_service.cartesian_product(_load(args), io_service.read_complex(args.other))
    elif args.kind == "duplicate":
        K = _construct_duplicate(args)
    else:
        K = construction_service.wedge_family(args.dim, args.steps)
    logger.info(f"Constructed {args.kind}: dim {K.dim}, f-vector {K.f_vector()}")
    return io_service.to_payload(K)


def cmd_generate(args: argparse.Namespace) -> ComplexPayload:
    if args.kind == "wedge-family":
        K = construction_service.wedge_family(args.dim, args.steps)
    else:
        rng = generator_service.rng(args.seed)
        K = generator_service.random_complex(rng, args.max_vertices, args.max_dim, args.density)
    logger.info(f"Generated {args.kind} complex {io_service.digest(K)}")
    return io_service.to_payload(K)


def cmd_verify(args: argparse.Namespace) -> List[BaseModel]:
    """Run a verification pipeline; the stream ends with its summary"""
    params = VerifyParams(
        pipeline=args.pipeline,
        trials=args.trials,
        seed=args.seed,
        max_vertices=args.max_vertices,
        max_dim=args.max_dim,
        density=args.density,
        max_len=args.max_len,
        tol=args.tol,
        workers=args.workers,
    )
    run = verification_service.run(params)
    if args.dump_failures and run.failures:
        with open(args.dump_failures, "w", encoding="utf-8") as handle:
            for K in run.failures:
                handle.write(io_service.dumps(K) + "\n")
        logger.info(f"Wrote {len(run.failures)} offending complexes to {args.dump_failures}")
    return list(run.reports) + [run.summary]


def cmd_export(args: argparse.Namespace) -> MatrixExport:
    """Boundary or Laplacian matrix with face-label headers"""
    K = _load(args)
    orientation = _orientation(args, K)
    if args.matrix == "boundary":
        D = orientation_service.boundary_matrix(K, args.dim, orientation)
        return MatrixExport(
            name=f"boundary_{args.dim}",
            dim=args.dim,
            rows=_labels(D.rows),
            columns=_labels(D.columns),
            entries=D.entries.astype(float).tolist(),
        )
    w = io_service.weights_for(K, args.weighting)
    L = laplacian_service.laplacian(K, args.dim, args.matrix, orientation, w,
                                    include_empty=not args.no_empty_face)
    labels = _labels(L.faces)
    return MatrixExport(
        name=f"{args.matrix}_laplacian_{args.dim}",
        dim=args.dim,
        rows=labels,
        columns=labels,
        entries=np.asarray(L.matrix, dtype=float).tolist(),
    )


def build_parser() -> argparse.ArgumentParser:
    common = CommandParser(add_help=False)
    common.add_argument("--input", default="-", help="Complex JSON path, or - for standard input (default: -)")
    common.add_argument("--seed", type=int, default=settings.SEED, help=f"Random seed (default: {settings.SEED})")
    common.add_argument("--tol", type=float, default=settings.TOP_TOL,
                        help=f"Top-eigenvalue tolerance (default: {settings.TOP_TOL})")
    common.add_argument("--format", choices=["json"], default="json", help="Output format (default: json)")
    common.add_argument("--no-empty-face", action="store_true",
                        help="Drop the empty face from the down Laplacian at dimension 0")
    common.add_argument("--reorient", action="append", metavar="FACE",
                        help="Reverse the orientation of a face such as a,b (repeatable)")
    common.add_argument("--log-level", default=None, help="Logging level (default: SPECTRA_LOG_LEVEL)")

    parser = CommandParser(
        prog="simplex-spectra",
        description="Spectra of normalized Laplacians on simplicial complexes, balance and circuits",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CommandParser)

    p = subparsers.add_parser("spectrum", parents=[common], help="Laplacian eigenvalues at one dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--op", choices=[UP, "down", FULL], default=UP)
    p.add_argument("--weighting", default=NORMALIZED, help="normalized | uniform | file:<path>")
    p.set_defaults(handler=cmd_spectrum)

    p = subparsers.add_parser("balance", parents=[common], help="Balance of the signed incidence graph")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(handler=cmd_balance)

    p = subparsers.add_parser("components", parents=[common], help="j-path components")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(handler=cmd_components)

    p = subparsers.add_parser("circuits", parents=[common], help="Circuits of (i+1)-faces")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-len", type=int, default=settings.CIRCUIT_MAX_LEN)
    p.set_defaults(handler=cmd_circuits)

    p = subparsers.add_parser("betti", parents=[common], help="Reduced rational Betti numbers")
    p.set_defaults(handler=cmd_betti)

    p = subparsers.add_parser("construct", parents=[common], help="Wedge, product, motif duplication, family")
    p.add_argument("kind", choices=["wedge", "product", "duplicate", "family"])
    p.add_argument("--other", help="Second complex for wedge and product")
    p.add_argument("--face1", help="Gluing face of the first complex, e.g. a,b")
    p.add_argument("--face2", help="Gluing face of the second complex")
    p.add_argument("--map", help="Bijection face1 -> face2 as 'a:x,b:y' (default: sorted order)")
    p.add_argument("--motif-vertices", help="Vertices spanning the motif, e.g. a,b")
    p.add_argument("--motif-dim", type=int, default=None, help="Working dimension i of the motif")
    p.add_argument("--dim", type=int, default=0, help="Family dimension i (default: 0)")
    p.add_argument("--steps", type=int, default=0, help="Family steps p (default: 0)")
    p.set_defaults(handler=cmd_construct)

    p = subparsers.add_parser("verify", parents=[common], help="Randomized cross-check pipelines")
    p.add_argument("pipeline", choices=verification_service.pipelines)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-vertices", type=int, default=settings.MAX_VERTICES)
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--density", type=float, default=settings.RANDOM_DENSITY)
    p.add_argument("--max-len", type=int, default=settings.CIRCUIT_MAX_LEN)
    p.add_argument("--workers", type=int, default=settings.WORKERS)
    p.add_argument("--dump-failures", metavar="PATH", help="Write offending complexes as JSON lines")
    p.set_defaults(handler=cmd_verify)

    p = subparsers.add_parser("generate", parents=[common], help="Wedge families and random complexes")
    p.add_argument("kind", choices=["wedge-family", "random"])
    p.add_argument("--dim", type=int, default=0)
    p.add_argument("--steps", type=int, default=0)
    p.add_argument("--max-vertices", type=int, default=settings.MAX_VERTICES)
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--density", type=float, default=settings.RANDOM_DENSITY)
    p.set_defaults(handler=cmd_generate)

    p = subparsers.add_parser("export", parents=[common], help="Boundary or Laplacian matrix")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--matrix", choices=["boundary", UP, "down", FULL], default="boundary")
    p.add_argument("--weighting", default=NORMALIZED, help="normalized | uniform | file:<path>")
    p.set_defaults(handler=cmd_export)

    return parser


def render(output: Output) -> str:
    """One JSON document, or one JSON line per streamed record"""
    if isinstance(output, list):
        return "\n".join(item.model_dump_json() for item in output)
    return output.model_dump_json()


def has_disagreements(output: Output) -> bool:
    if not isinstance(output, list) or not output:
        return False
    return getattr(output[-1], "disagreements", 0) > 0


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)
