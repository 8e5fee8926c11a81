import hashlib
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np
import sympy

# Fix imports to work from any directory
try:
    from ..config import settings
    from ..exceptions import MalformedInputError
    from ..models.complex import Complex
    from ..models.schemas import VerificationReport, VerificationSummary
    from .circuit_service import NON_ORIENTABLE, ORIENTABLE, circuit_service
    from .complex_service import complex_service
    from .construction_service import construction_service
    from .generator_service import generator_service
    from .homology_service import homology_service
    from .io_service import io_service
    from .laplacian_service import FULL, laplacian_service
    from .orientation_service import CANONICAL, orientation_service
    from .signed_graph_service import signed_graph_service
    from .spectra_service import spectra_service
except ImportError:
    from config import settings
    from exceptions import MalformedInputError
    from models.complex import Complex
    from models.schemas import VerificationReport, VerificationSummary
    from services.circuit_service import NON_ORIENTABLE, ORIENTABLE, circuit_service
    from services.complex_service import complex_service
    from services.construction_service import construction_service
    from services.generator_service import generator_service
    from services.homology_service import homology_service
    from services.io_service import io_service
    from services.laplacian_service import FULL, laplacian_service
    from services.orientation_service import CANONICAL, orientation_service
    from services.signed_graph_service import signed_graph_service
    from services.spectra_service import spectra_service

logger = logging.getLogger(__name__)

INTERVAL_SLACK = 1e-9
EIGEN_RESIDUAL_TOL = 1e-10
ROOT_TOL = 1e-9
CIRCUIT_COMPONENT_CAP = 6
FAMILY_CASES = [(i, p) for i in range(3) for p in range(6)]


@dataclass(frozen=True)
class VerifyParams:
    """One verification run; identical params give an identical report stream"""
    pipeline: str
    trials: int = 200
    seed: int = settings.SEED
    max_vertices: int = settings.MAX_VERTICES
    max_dim: int = 3
    density: float = settings.RANDOM_DENSITY
    max_len: int = settings.CIRCUIT_MAX_LEN
    tol: float = settings.TOP_TOL
    workers: int = settings.WORKERS


@dataclass
class TrialOutcome:
    reports: List[VerificationReport] = field(default_factory=list)
    failures: List[Complex] = field(default_factory=list)

    def add(self, report: VerificationReport, K: Optional[Complex] = None) -> None:
        self.reports.append(report)
        if not report.agree and K is not None:
            self.failures.append(K)


@dataclass(frozen=True)
class VerificationRun:
    reports: List[VerificationReport]
    summary: VerificationSummary
    failures: List[Complex]


def _report(pipeline: str, trial: int, digest: str, checks: Dict[str, bool], **fields) -> VerificationReport:
    checks = {name: bool(ok) for name, ok in checks.items()}
    return VerificationReport(
        pipeline=pipeline,
        trial=trial,
        digest=digest,
        checks=checks,
        agree=all(checks.values()),
        **fields,
    )


class VerificationService:
    """Service for the randomized cross-checks between spectra, balance, circuits and homology"""

    def __init__(self):
        self._pipelines: Dict[str, Callable[[VerifyParams, int, np.random.Generator], TrialOutcome]] = {
            "t31": self._top_eigenvalue,
            "c32": self._top_multiplicity,
            "circuits": self._circuits,
            "t42": self._wedge,
            "t44": self._product,
            "t49": self._motif,
            "hodge": self._hodge,
            "lemma23": self._reorientation,
            "c43": self._family,
            "eigensolver": self._eigensolver,
        }

    @property
    def pipelines(self) -> List[str]:
        return list(self._pipelines)

    def run(self, params: VerifyParams) -> VerificationRun:
        """
        Run every trial of one pipeline

        Trial t draws from its own child of SeedSequence(seed), so the stream
        is the same for any worker count and always comes back in trial order.
        """
        if params.pipeline not in self._pipelines:
            raise MalformedInputError(f"Unknown pipeline {params.pipeline!r}; choose from {self.pipelines}")
        if params.trials < 0 or params.workers < 1:
            raise MalformedInputError("trials must be >= 0 and workers >= 1")

        pipeline = self._pipelines[params.pipeline]
        seeds = np.random.SeedSequence(params.seed).spawn(params.trials)

        def work(trial: int) -> TrialOutcome:
            return pipeline(params, trial, np.random.default_rng(seeds[trial]))

        started = time.time()
        logger.info(f"Verifying {params.pipeline}: {params.trials} trials, seed {params.seed}, {params.workers} workers")
        if params.workers > 1:
            with ThreadPoolExecutor(max_workers=params.workers) as pool:
                outcomes = list(pool.map(work, range(params.trials)))
        else:
            outcomes = [work(trial) for trial in range(params.trials)]

        reports = [report for outcome in outcomes for report in outcome.reports]
        failures = [K for outcome in outcomes for K in outcome.failures]
        disagreements = sum(not report.agree for report in reports)
        for report in reports:
            if not report.agree:
                failed = [name for name, ok in report.checks.items() if not ok]
                logger.warning(f"{params.pipeline} trial {report.trial} ({report.digest}) disagrees on {failed}")
        logger.info(
            f"{params.pipeline}: {len(reports)} records, {disagreements} disagreements "
            f"in {time.time() - started:.2f}s"
        )
        summary = VerificationSummary(
            pipeline=params.pipeline,
            seed=params.seed,
            trials=params.trials,
            records=len(reports),
            disagreements=disagreements,
        )
        return VerificationRun(reports=reports, summary=summary, failures=failures)

    # Helpers

    def _corpus_complex(self, params: VerifyParams, rng: np.random.Generator, min_dim: int = 0) -> Complex:
        K = generator_service.random_complex(rng, params.max_vertices, params.max_dim, params.density)
        for _ in range(20):
            if K.dim >= min_dim:
                break
            K = generator_service.random_complex(rng, params.max_vertices, params.max_dim, params.density)
        return K

    def _is_balanced(self, K: Complex, i: int) -> bool:
        return all(component.balanced for component in signed_graph_service.balanced_components(K, i))

    def _has_top(self, K: Complex, i: int, tol: float) -> Tuple[bool, float]:
        lam = spectra_service.lambda_max(K, i)
        return abs(lam - (i + 2)) <= tol, lam

    def _signed_isomorphic(self, G: nx.Graph, H: nx.Graph) -> bool:
        """Match connected components of two signed bipartite graphs one by one"""
        def same_side(a, b):
            return a["side"] == b["side"]

        def same_sign(a, b):
            return a["sign"] == b["sign"]

        left = [G.subgraph(nodes) for nodes in nx.connected_components(G)]
        remaining = [H.subgraph(nodes) for nodes in nx.connected_components(H)]
        if len(left) != len(remaining):
            return False
        for component in left:
            match = next(
                (n for n, other in enumerate(remaining)
                 if nx.is_isomorphic(component, other, node_match=same_side, edge_match=same_sign)),
                None,
            )
            if match is None:
                return False
            remaining.pop(match)
        return True

    def _pick(self, rng: np.random.Generator, items: List):
        return items[int(rng.integers(len(items)))]

    # Pipelines

    def _top_eigenvalue(self, params, trial, rng) -> TrialOutcome:
        """λ_max = i + 2 iff some (i+1)-path component is balanced; spectrum inside [0, i + 2]"""
        K = self._corpus_complex(params, rng)
        digest = io_service.digest(K)
        outcome = TrialOutcome()
        for i in range(K.dim):
            spectrum = spectra_service.spectrum(K, i)
            lam = spectrum.largest
            components = signed_graph_service.balanced_components(K, i)
            balanced = sum(component.balanced for component in components)
            has_top = abs(lam - (i + 2)) <= params.tol
            values = spectrum.eigenvalues
            checks = {
                "top_eigenvalue": has_top == (balanced > 0),
                "interval": bool(np.all(values >= -INTERVAL_SLACK) and np.all(values <= i + 2 + INTERVAL_SLACK)),
            }
            outcome.add(_report("t31", trial, digest, checks, dim=i, lambda_max=lam,
                                balanced_components=balanced), K)
        return outcome

    def _top_multiplicity(self, params, trial, rng) -> TrialOutcome:
        """Multiplicity of i + 2 counts balanced components, and doubles on K ⊔ K"""
        K = self._corpus_complex(params, rng)
        doubled = construction_service.disjoint_union(K, construction_service.disjoint_copy(K, K.vertices()))
        digest = io_service.digest(K)
        outcome = TrialOutcome()
        for i in range(K.dim):
            spectrum = spectra_service.spectrum(K, i)
            multiplicity = spectrum.count_near(i + 2, settings.MULTIPLICITY_TOL)
            balanced = sum(c.balanced for c in signed_graph_service.balanced_components(K, i))
            doubled_multiplicity = spectra_service.multiplicity_of_top(doubled, i)
            checks = {
                "multiplicity": multiplicity == balanced,
                "disjoint_union": doubled_multiplicity == 2 * balanced,
            }
            outcome.add(_report("c32", trial, digest, checks, dim=i, lambda_max=spectrum.largest,
                                top_multiplicity=multiplicity, balanced_components=balanced), K)
        return outcome

    def _circuits(self, params, trial, rng) -> TrialOutcome:
        """On small (i+1)-path components: B_i balanced iff no forbidden circuit"""
        K = self._corpus_complex(params, rng)
        outcome = TrialOutcome()
        for i in range(K.dim):
            for component in complex_service.path_components(K, i + 1):
                if len(component) > CIRCUIT_COMPONENT_CAP:
                    continue
                C = complex_service.component_complex(K, component)
                balanced, _ = signed_graph_service.is_balanced(signed_graph_service.signed_incidence_graph(C, i))
                enumeration = circuit_service.enumerate_circuits(C, i, params.max_len)
                forbidden = any(circuit_service.is_forbidden(c) for c in enumeration.circuits)
                flipped = orientation_service.reorient(CANONICAL, self._pick(rng, component))
                checks = {
                    "complete": enumeration.complete,
                    "balance": balanced != forbidden,
                    "classification": all(
                        c.classification == (ORIENTABLE if circuit_service.is_orientable_by_search(c) else NON_ORIENTABLE)
                        for c in enumeration.circuits
                    ),
                    "orientation_invariant": all(
                        circuit_service.classify_circuit(c, flipped) == c.classification
                        for c in enumeration.circuits
                    ),
                }
                outcome.add(_report("circuits", trial, io_service.digest(C), checks, dim=i,
                                    forbidden_circuit=forbidden, circuits_complete=enumeration.complete,
                                    balanced_components=int(balanced),
                                    detail=f"{len(enumeration.circuits)} circuits"), C)
        return outcome

    def _wedge(self, params, trial, rng) -> TrialOutcome:
        """k-wedges: connectivity and the top eigenvalue follow the factors' balance"""
        k = int(rng.integers(0, 3))
        i = int(rng.integers(max(k - 1, 0), k + 3))
        low = max(k, i + 1)
        K1 = construction_service.random_pure_complex(int(rng.integers(low, low + 2)), int(rng.integers(1, 4)), rng, prefix="a")
        K2 = construction_service.random_pure_complex(int(rng.integers(low, low + 2)), int(rng.integers(1, 4)), rng, prefix="b")
        F1, F2 = self._pick(rng, K1.faces(k)), self._pick(rng, K2.faces(k))
        W = construction_service.wedge_sum(K1, K2, F1, F2)

        b1, b2 = self._is_balanced(K1, i), self._is_balanced(K2, i)
        has_top, lam = self._has_top(W, i, params.tol)
        connected = complex_service.is_path_connected(W, i + 1)
        if i <= k:
            checks = {"path_connected": connected, "top_eigenvalue": has_top == (b1 and b2)}
        else:
            checks = {"path_connected": not connected, "top_eigenvalue": has_top == (b1 or b2)}
        outcome = TrialOutcome()
        outcome.add(_report("t42", trial, io_service.digest(W), checks, dim=i, lambda_max=lam,
                            balanced_components=int(b1) + int(b2), detail=f"k={k}"), W)
        return outcome

    def _product(self, params, trial, rng) -> TrialOutcome:
        """Graph products carry bipartiteness; for i = 1, B_1 splits into copies of the factors' graphs"""
        outcome = TrialOutcome()
        if trial % 2 == 0:
            K1 = construction_service.random_pure_complex(1, int(rng.integers(1, 5)), rng, prefix="a")
            K2 = construction_service.random_pure_complex(1, int(rng.integers(1, 5)), rng, prefix="b")
            P = construction_service.cartesian_product(K1, K2)
            b1, b2 = self._is_balanced(K1, 0), self._is_balanced(K2, 0)
            has_top, lam = self._has_top(P, 0, params.tol)
            checks = {
                "path_connected": complex_service.is_path_connected(P, 1),
                "top_eigenvalue": has_top == (b1 and b2),
            }
            outcome.add(_report("t44", trial, io_service.digest(P), checks, dim=0, lambda_max=lam,
                                balanced_components=int(b1) + int(b2)), P)
            return outcome

        K1 = construction_service.random_pure_complex(2, int(rng.integers(1, 4)), rng, prefix="a")
        K2 = construction_service.random_pure_complex(2, int(rng.integers(1, 4)), rng, prefix="b")
        P = construction_service.cartesian_product(K1, K2)
        G1 = signed_graph_service.signed_incidence_graph(K1, 1).graph
        G2 = signed_graph_service.signed_incidence_graph(K2, 1).graph
        copies = [G1] * len(K2.vertices()) + [G2] * len(K1.vertices())
        expected = nx.disjoint_union_all(copies)
        actual = signed_graph_service.signed_incidence_graph(P, 1).graph
        checks = {
            "not_path_connected": not complex_service.is_path_connected(P, 2),
            "decomposition": self._signed_isomorphic(actual, expected),
        }
        outcome.add(_report("t44", trial, io_service.digest(P), checks, dim=1,
                            detail=f"{len(copies)} copies"), P)
        return outcome

    def _motif(self, params, trial, rng) -> TrialOutcome:
        """Duplicating an i-motif keeps K, stays (i+1)-path connected and preserves balance"""
        i = int(rng.integers(0, 2))
        K = construction_service.random_pure_complex(i + 1, int(rng.integers(2, 6)), rng, prefix="x")
        vertices = K.vertices()
        checks: Dict[str, bool] = {}

        sigma = None
        if trial % 2 == 1:
            size = int(rng.integers(1, len(vertices)))
            chosen = sorted(str(v) for v in rng.choice(vertices, size=size, replace=False))
            candidate = K.induced_subcomplex(chosen)
            if complex_service.satisfies_two_face_condition(K, candidate):
                link = complex_service.link_of_subcomplex(K, candidate)
                checks["link_dimension"] = complex_service.link_dimension(link) == i
                sigma = candidate
        if sigma is None:
            sigma = K.induced_subcomplex([self._pick(rng, vertices)])

        K_sigma, f = construction_service.duplicate_motif(K, sigma, i)
        copy, f_bar = construction_service.embedded_copy(K, K_sigma, sigma, f)
        balanced = self._is_balanced(K, i)
        has_top, lam = self._has_top(K_sigma, i, params.tol)
        checks.update({
            "contains": K.is_subcomplex_of(K_sigma),
            "path_connected": complex_service.is_path_connected(K_sigma, i + 1),
            "balance_preserved": self._is_balanced(K_sigma, i) == balanced,
            "top_eigenvalue": has_top == balanced,
            "embedded_copy": complex_service.is_isomorphic_via(K, copy, f_bar),
        })
        outcome = TrialOutcome()
        outcome.add(_report("t49", trial, io_service.digest(K), checks, dim=i, lambda_max=lam,
                            balanced_components=int(balanced),
                            detail=f"motif on {len(sigma.vertices())} vertices"), K)
        return outcome

    def _hodge(self, params, trial, rng) -> TrialOutcome:
        """Kernel of the full normalized Laplacian matches the reduced Betti numbers"""
        K = self._corpus_complex(params, rng)
        betti = homology_service.betti(K)
        digest = io_service.digest(K)
        outcome = TrialOutcome()
        euler = betti.euler_characteristic() == homology_service.euler_characteristic(K)
        for i in range(K.dim + 1):
            kernel = spectra_service.kernel_dimension(spectra_service.spectrum(K, i, FULL))
            checks = {"kernel": kernel == betti[i], "euler": euler}
            outcome.add(_report("hodge", trial, digest, checks, dim=i, detail=f"betti={betti[i]} kernel={kernel}"), K)
        return outcome

    def _reorientation(self, params, trial, rng) -> TrialOutcome:
        """Reorienting an i-face conjugates the up Laplacian by S_F; an (i+1)-face leaves it alone"""
        K = self._corpus_complex(params, rng, min_dim=1)
        outcome = TrialOutcome()
        if K.dim < 1:
            return outcome
        i = int(rng.integers(0, K.dim))
        F, G = self._pick(rng, K.faces(i)), self._pick(rng, K.faces(i + 1))
        w = laplacian_service.normalized_weights(K)

        L = laplacian_service.up_laplacian(K, i, CANONICAL, w, exact=True).matrix
        flipped_low = orientation_service.reorient(CANONICAL, F, K)
        flipped_high = orientation_service.reorient(CANONICAL, G, K)
        L_low = laplacian_service.up_laplacian(K, i, flipped_low, w, exact=True).matrix
        L_high = laplacian_service.up_laplacian(K, i, flipped_high, w, exact=True).matrix
        signs = np.diag(orientation_service.signature_matrix(K, i, F))

        B = signed_graph_service.signed_incidence_graph(K, i)
        B_low = signed_graph_service.signed_incidence_graph(K, i, flipped_low)
        switched = signed_graph_service.apply_switching(B, {F: -1})
        checks = {
            "conjugated": np.array_equal(L_low, L * np.outer(signs, signs)),
            "unchanged": np.array_equal(L_high, L),
            "switching": all(B_low.sign(u, v) == switched.sign(u, v) for u, v in B.graph.edges()),
        }
        outcome.add(_report("lemma23", trial, io_service.digest(K), checks, dim=i,
                            detail=f"F={F!r} G={G!r}"), K)
        return outcome

    def _family(self, params, trial, rng) -> TrialOutcome:
        """Iterated i-wedges of simplices are connected, balanced, acyclic and reach i + 2"""
        outcome = TrialOutcome()
        if trial >= len(FAMILY_CASES):
            return outcome
        i, p = FAMILY_CASES[trial]
        K = construction_service.wedge_family(i, p)
        components = signed_graph_service.balanced_components(K, i)
        has_top, lam = self._has_top(K, i, params.tol)
        checks = {
            "path_connected": complex_service.is_path_connected(K, i + 1),
            "balanced": len(components) == 1 and components[0].balanced,
            "top_eigenvalue": has_top,
            "acyclic": homology_service.is_acyclic(K),
        }
        outcome.add(_report("c43", trial, io_service.digest(K), checks, dim=i, lambda_max=lam,
                            balanced_components=sum(c.balanced for c in components), detail=f"p={p}"), K)
        return outcome

    def _eigensolver(self, params, trial, rng) -> TrialOutcome:
        """Jacobi on random symmetric matrices: residual, orthogonality and exact roots for n <= 5"""
        n = int(rng.integers(1, 31))
        A = generator_service.random_symmetric(rng, n)
        result = spectra_service.symmetric_eigen(A, method="jacobi")
        values, V = result.eigenvalues, result.vectors
        checks = {
            "residual": float(np.max(np.abs(A @ V - V * values[np.newaxis, :]))) <= EIGEN_RESIDUAL_TOL,
            "orthogonality": float(np.max(np.abs(V.T @ V - np.eye(n)))) <= EIGEN_RESIDUAL_TOL,
        }
        if n <= 5:
            exact = self.characteristic_roots(A)
            checks["roots"] = float(np.max(np.abs(exact - values))) <= ROOT_TOL
        outcome = TrialOutcome()
        outcome.add(_report("eigensolver", trial, hashlib.sha256(A.tobytes()).hexdigest()[:16], checks,
                            lambda_max=float(values[-1]), detail=f"n={n} sweeps={result.sweeps}"))
        return outcome

    def characteristic_roots(self, A: np.ndarray) -> np.ndarray:
        """Sorted real roots of det(xI - A), computed from the exact rational matrix"""
        n = A.shape[0]
        M = sympy.Matrix(n, n, lambda r, c: sympy.Rational(float(A[r, c])))
        roots = M.charpoly().nroots(n=30)
        return np.sort(np.array([float(sympy.re(root)) for root in roots]))

# Global verification service instance
verification_service = VerificationService()
