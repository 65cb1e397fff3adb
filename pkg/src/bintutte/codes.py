"""Binary linear codes: weight enumerators and Greene's identity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import gf2
from .errors import InputError, ParameterError
from .gf2 import Gf2Matrix
from .matroid import BinaryMatroid
from .partition import tutte_tilde


@dataclass(frozen=True)
class GeneratingMatrix:
    """Generating matrix of a binary code; rows must be linearly independent."""

    matrix: Gf2Matrix

    def __post_init__(self):
        if gf2.rank(self.matrix) != self.matrix.rows:
            raise InputError("generating matrix rows are linearly dependent")

    @property
    def r(self) -> int:
        return self.matrix.rows

    @property
    def c(self) -> int:
        return self.matrix.cols

    def codewords(self):
        """All 2^r codewords in Gray-code order of their row combinations."""
        w = 0
        yield w
        for i in range(1, 1 << self.r):
            # row flipped between Gray codes i-1 and i
            w ^= self.matrix.data[(i & -i).bit_length() - 1]
            yield w


def weight_distribution(g: GeneratingMatrix) -> list[int]:
    dist = [0] * (g.c + 1)
    for w in g.codewords():
        dist[w.bit_count()] += 1
    return dist


def weight_enumerator(g: GeneratingMatrix, lam) -> Fraction:
    """W(lam) = sum over codewords w of lam^|w|."""
    lam = Fraction(lam)
    return sum((Fraction(a) * lam**k for k, a in enumerate(weight_distribution(g))), Fraction(0))


def greene_check(g: GeneratingMatrix, lam):
    """Both sides of W(lam) = lam^c 2^r Z~(M; 2, 1/lam - 1), computed independently."""
    lam = Fraction(lam)
    if lam == 0:
        raise ParameterError("lambda must be nonzero")
    lhs = weight_enumerator(g, lam)
    m = BinaryMatroid(g.matrix)
    rhs = lam**g.c * 2**g.r * tutte_tilde(m, 2, 1 / lam - 1)
    return lhs, rhs, lhs == rhs
