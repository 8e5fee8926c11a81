import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List

import numpy as np

# Fix imports to work from any directory
try:
    from ..models.complex import Complex
    from .orientation_service import orientation_service
except ImportError:
    from models.complex import Complex
    from services.orientation_service import orientation_service

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BettiVector:
    """Reduced rational Betti numbers from dimension -1 up to dim K"""
    values: List[int]

    def __getitem__(self, i: int) -> int:
        """β̃_i for -1 <= i <= dim K, zero elsewhere"""
        position = i + 1
        return self.values[position] if 0 <= position < len(self.values) else 0

    def is_zero(self) -> bool:
        return not any(self.values)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n - 1) * b for n, b in enumerate(self.values))


def rational_rank(matrix) -> int:
    """Rank over the rationals by forward elimination on a Fraction copy"""
    m = [[Fraction(x) for x in row] for row in np.asarray(matrix, dtype=object).tolist()]
    n_rows = len(m)
    if n_rows == 0:
        return 0
    n_cols = len(m[0])
    piv_r = 0
    for piv_c in range(n_cols):
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = m[r][piv_c]
            if fr == 0:
                continue
            frp = fr / fp
            for c in range(piv_c, n_cols):
                m[r][c] -= m[piv_r][c] * frp
        piv_r += 1
        if piv_r == n_rows:
            break
    return piv_r


class HomologyService:
    """Service for reduced rational homology"""

    def boundary_ranks(self, K: Complex) -> List[int]:
        """rank ∂_i for i = 0 .. dim K + 1 (∂_0 maps vertices onto the empty face)"""
        return [
            rational_rank(orientation_service.boundary_matrix(K, i).entries)
            for i in range(0, K.dim + 2)
        ]

    def betti(self, K: Complex) -> BettiVector:
        """β̃_i = |S_i| - rank ∂_i - rank ∂_{i+1} for i = -1 .. dim K"""
        ranks = self.boundary_ranks(K)

        def rank(i: int) -> int:
            return ranks[i] if 0 <= i < len(ranks) else 0

        values = [K.count(i) - rank(i) - rank(i + 1) for i in range(-1, K.dim + 1)]
        logger.debug(f"Reduced Betti numbers {values}")
        return BettiVector(values=values)

    def is_acyclic(self, K: Complex) -> bool:
        return self.betti(K).is_zero()

    def euler_characteristic(self, K: Complex) -> int:
        """Reduced Euler characteristic Σ (-1)^i |S_i| from i = -1"""
        return sum((-1) ** i * K.count(i) for i in range(-1, K.dim + 1))

# Global homology service instance
homology_service = HomologyService()
