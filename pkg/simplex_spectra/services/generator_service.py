import itertools
import logging
from typing import Optional

import numpy as np

# Fix imports to work from any directory
try:
    from ..config import settings
    from ..exceptions import MalformedInputError
    from ..models.complex import Complex
except ImportError:
    from config import settings
    from exceptions import MalformedInputError
    from models.complex import Complex

logger = logging.getLogger(__name__)


class GeneratorService:
    """Service for seeded random complexes and matrices"""

    def rng(self, seed: Optional[int] = None) -> np.random.Generator:
        return np.random.default_rng(settings.SEED if seed is None else seed)

    def random_complex(self, rng: np.random.Generator, max_vertices: int = None,
                       max_dim: int = 3, density: float = None) -> Complex:
        """
        Sample facets independently and close downward

        Args:
            rng: numpy generator owning the random stream
            max_vertices: vertex cap; n is drawn uniformly from 2..max_vertices
            max_dim: largest facet dimension sampled
            density: inclusion probability of each candidate facet

        Returns:
            A complex that may be disconnected or non-pure
        """
        max_vertices = settings.MAX_VERTICES if max_vertices is None else max_vertices
        density = settings.RANDOM_DENSITY if density is None else density
        if max_vertices < 2 or max_dim < 0:
            raise MalformedInputError(f"Need max_vertices >= 2 and max_dim >= 0, got {max_vertices}, {max_dim}")
        if not 0.0 < density <= 1.0:
            raise MalformedInputError(f"density must lie in (0, 1], got {density}")

        n = int(rng.integers(2, max_vertices + 1))
        names = [f"v{k:02d}" for k in range(n)]
        facets = [
            list(candidate)
            for size in range(1, min(max_dim, n - 1) + 2)
            for candidate in itertools.combinations(names, size)
            if rng.random() < density
        ]
        if not facets:
            facets = [[names[int(rng.integers(n))]]]
        K = Complex.from_facets(facets)
        logger.debug(f"Random complex on {n} vertices: f-vector {K.f_vector()}")
        return K

    def random_symmetric(self, rng: np.random.Generator, n: int) -> np.ndarray:
        M = rng.standard_normal((n, n))
        return (M + M.T) / 2.0

# Global generator service instance
generator_service = GeneratorService()
