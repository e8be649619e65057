import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from smithpoly.matpoly import MatPoly
from smithpoly.poly import Poly
from smithpoly.prng import SplitMix64


def random_poly(rng: SplitMix64, deg: int, lo: int = -5, hi: int = 5) -> Poly:
    return Poly([rng.randint(lo, hi) for _ in range(deg + 1)])


def random_matrix(rng: SplitMix64, n: int, deg: int, lo: int = -5, hi: int = 5):
    return MatPoly(
        [[random_poly(rng, deg, lo, hi) for _ in range(n)] for _ in range(n)]
    )
