"""Exact brute-force evaluators for the Tutte polynomial and its relatives.

Every evaluator enumerates its defining sum directly.  Weights are scaled to
a common denominator so the inner loops multiply integers; partial sums are
grouped by (rank, size) or by satisfied count and divided out at the end.
Subset sums walk a depth-first include/exclude tree with an incremental XOR
basis; spin sums walk all assignments.  Both can be split into index ranges
and farmed out to worker processes, and since the partial sums are exact the
result does not depend on the split.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

import numpy as np

from .errors import InputError, ParameterError, SizeError
from .intervals import GUARD_BITS, Interval, two_power
from .matroid import BinaryMatroid, Graph, count_components, full_rank

WeightMap = Mapping
Weights = Union[WeightMap, int, Fraction]

# 2**MAX_ENUM_BITS is the largest subset / assignment count we enumerate.
MAX_ENUM_BITS = 26


def constant_weights(m: BinaryMatroid, gamma) -> dict:
    return {e: Fraction(gamma) for e in m.ground}


def _weight_list(m: BinaryMatroid, w: Weights) -> list[Fraction]:
    """Weights in column order; a bare number means a constant weight."""
    if isinstance(w, (int, Fraction)):
        return [Fraction(w)] * len(m)
    try:
        return [Fraction(w[e]) for e in m.ground]
    except KeyError as exc:
        raise InputError(f"weight map is missing element {exc.args[0]!r}") from None


def _check_size(bits: int, what: str):
    if bits > MAX_ENUM_BITS:
        raise SizeError(f"{what}: 2^{bits} terms exceeds the enumeration budget 2^{MAX_ENUM_BITS}")


def _ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(a, min(a + step, total)) for a in range(0, total, step)]


def _partitioned(fn: Callable, total: int, args: tuple, workers: int | None, min_total: int = 1024):
    """Run ``fn(start, stop, *args)`` over ``[0, total)`` and return the pieces in order."""
    if not workers or workers <= 1 or total < min_total:
        return [fn(0, total, *args)]
    chunks = _ranges(total, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, a, b, *args) for a, b in chunks]
        return [f.result() for f in futures]


# -- multivariate Tutte polynomial -------------------------------------------


def _common_denominator(values: Sequence[Fraction]) -> tuple[list[int], int]:
    """Integers a_e and D with values[e] = a_e / D."""
    d = 1
    for v in values:
        d = d * v.denominator // math.gcd(d, v.denominator)
    return [int(v * d) for v in values], d


def _insert(basis: tuple, v: int) -> tuple:
    # basis is kept sorted by decreasing leading bit so min(v, v ^ b) fully reduces
    return tuple(sorted(basis + (v,), reverse=True))


def _rank_size_chunk(start, stop, columns, nums, split):
    """Sums of prod_{e in S} nums[e], keyed by (rank S, |S|).

    The last ``split`` elements are fixed by each prefix in ``start..stop-1``;
    the rest are enumerated depth first with an incremental XOR basis.
    """
    k = len(columns)
    low = k - split
    sums: dict[tuple[int, int], int] = {}

    def walk(j, basis, size, prod):
        if j == low:
            key = (len(basis), size)
            sums[key] = sums.get(key, 0) + prod
            return
        walk(j + 1, basis, size, prod)
        a = nums[j]
        if a:
            v = columns[j]
            for b in basis:
                v = min(v, v ^ b)
            walk(j + 1, _insert(basis, v) if v else basis, size + 1, prod * a)

    for prefix in range(start, stop):
        basis, size, prod = (), 0, 1
        for t in range(split):
            if prefix >> t & 1:
                j = low + t
                prod *= nums[j]
                v = columns[j]
                for b in basis:
                    v = min(v, v ^ b)
                if v:
                    basis = _insert(basis, v)
                size += 1
        if prod:
            walk(0, basis, size, prod)
    return sums


def _rank_size_sums(columns, nums, workers):
    k = len(columns)
    split = 0
    if workers and workers > 1 and k > 10:
        split = min(k, max(1, (4 * workers - 1).bit_length()))
    pieces = _partitioned(_rank_size_chunk, 1 << split, (columns, nums, split), workers, min_total=2)
    out: dict[tuple[int, int], int] = {}
    for sums in pieces:
        for key, v in sums.items():
            out[key] = out.get(key, 0) + v
    return out


def tutte_tilde(m: BinaryMatroid, q, w: Weights, workers: int | None = None) -> Fraction:
    """Sum over column subsets S of q^(-r(S)) times the product of weights in S."""
    q = Fraction(q)
    if q == 0:
        raise ParameterError("q = 0 is a limit case and is not supported")
    _check_size(len(m), "tutte_tilde")
    nums, d = _common_denominator(_weight_list(m, w))
    sums = _rank_size_sums(m.rep.columns(), nums, workers)
    # sum of v b^r / (d^size a^r) for q = a/b, over the denominator d^K a^R
    a, b = q.numerator, q.denominator
    K = max(size for _, size in sums)
    R = max(r for r, _ in sums)
    num = sum(v * b**r * d ** (K - size) * a ** (R - r) for (r, size), v in sums.items())
    return Fraction(num, d**K * a**R)


def tutte_T(m: BinaryMatroid, x, y) -> Fraction:
    """Classical T(x, y) = sum_A (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A))."""
    x, y = Fraction(x), Fraction(y)
    _check_size(len(m), "tutte_T")
    rE = full_rank(m)
    counts = _rank_size_sums(m.rep.columns(), [1] * len(m), None)
    total = Fraction(0)
    for (r, size), n in counts.items():
        total += n * (x - 1) ** (rE - r) * (y - 1) ** (size - r)
    return total


def random_cluster_graph(g: Graph, q, w: Weights) -> Fraction:
    """Sum over edge subsets S of q^(#components of (V, S)) times the weight product."""
    q = Fraction(q)
    edges = g.edges
    _check_size(len(edges), "random_cluster_graph")
    if isinstance(w, (int, Fraction)):
        weights = [Fraction(w)] * len(edges)
    else:
        weights = [Fraction(w[i]) for i in range(len(edges))]
    total = Fraction(0)
    for mask in range(1 << len(edges)):
        chosen = [edges[j] for j in range(len(edges)) if mask >> j & 1]
        prod = Fraction(1)
        for j in range(len(edges)):
            if mask >> j & 1:
                prod *= weights[j]
        total += q ** count_components(g.n, chosen) * prod
    return total


# -- spin models on a represented matroid --------------------------------------


def _satisfied(col: int, sigma: int) -> bool:
    """Whether sigma satisfies sum_i M[i,e] sigma(i) = 0 over GF(2)."""
    return (col & sigma).bit_count() % 2 == 0


def _potts_chunk(start, stop, columns, nums):
    """Sums of prod over satisfied columns of nums[e], keyed by the satisfied count."""
    sums: dict[int, int] = {}
    for sigma in range(start, stop):
        prod, sat = 1, 0
        for col, a in zip(columns, nums):
            if _satisfied(col, sigma):
                prod *= a
                sat += 1
        sums[sat] = sums.get(sat, 0) + prod
    return sums


def potts_matroid(m: BinaryMatroid, q: int, w: Weights, workers: int | None = None) -> Fraction:
    """Potts partition function: sum over sigma: V -> [q] of prod_e (1 + gamma_e [sigma satisfies e]).

    Only q = 1 and q = 2 are meaningful for a GF(2) representation.
    """
    if q not in (1, 2):
        raise ParameterError(f"q = {q} needs a GF({q}) representation; only q in {{1, 2}} is supported")
    weights = _weight_list(m, w)
    if q == 1:
        # the single all-zero assignment satisfies every equation
        prod = Fraction(1)
        for g in weights:
            prod *= 1 + g
        return prod
    _check_size(m.rep.rows, "potts_matroid")
    nums, d = _common_denominator([1 + g for g in weights])
    pieces = _partitioned(_potts_chunk, 1 << m.rep.rows, (m.rep.columns(), nums), workers)
    merged: dict[int, int] = {}
    for sums in pieces:
        for sat, v in sums.items():
            merged[sat] = merged.get(sat, 0) + v
    top = max(merged)
    return Fraction(sum(v * d ** (top - sat) for sat, v in merged.items()), d**top)


def ising(m: BinaryMatroid, w: Weights, workers: int | None = None) -> Fraction:
    return potts_matroid(m, 2, w, workers)


@dataclass(frozen=True)
class SatSpectrum:
    """``coeffs[k]`` = number of assignments satisfying exactly k column equations."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z) -> Fraction:
        """Exact value at a rational point (Horner)."""
        z = Fraction(z)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __str__(self):
        return " ".join(str(c) for c in self.coeffs)


def sat_spectrum(m: BinaryMatroid, chunk_bits: int = 16) -> SatSpectrum:
    rows, cols = m.rep.rows, m.rep.cols
    _check_size(rows, "sat_spectrum")
    counts = np.zeros(cols + 1, dtype=np.int64)
    columns = np.array(m.rep.columns(), dtype=np.uint64)
    total = 1 << rows
    step = 1 << chunk_bits
    for start in range(0, total, step):
        sigma = np.arange(start, min(start + step, total), dtype=np.uint64)
        sat = np.zeros(sigma.shape, dtype=np.int64)
        for col in columns:
            sat += (np.bitwise_count(sigma & col) & 1) == 0
        counts += np.bincount(sat, minlength=cols + 1)
    return SatSpectrum(tuple(int(c) for c in counts))


@dataclass(frozen=True)
class TwoPower:
    """The real number ``2 ** exponent`` (irrational unless exponent is an integer)."""

    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent))


def eval_spectrum_at(s: SatSpectrum, z, precision_bits: int = 128) -> Interval:
    """Rigorous enclosure of sum_k coeffs[k] z^k.

    ``z`` is a rational or a :class:`TwoPower`.  Coefficients are nonnegative
    and ``z > 0`` here, so the polynomial is monotone in ``z`` and Horner on
    the two endpoints (rounded outward) gives a valid enclosure.
    """
    if precision_bits < 16:
        raise ParameterError("precision_bits must be at least 16")
    if isinstance(z, TwoPower):
        zi = two_power(z.exponent, precision_bits + GUARD_BITS)
    else:
        zi = Interval.point(z)
    if zi.is_point:
        return Interval.point(s(zi.lo))
    if zi.lo <= 0:
        raise ParameterError("interval evaluation needs z > 0")
    bits = precision_bits + GUARD_BITS
    acc = Interval.point(0)
    for c in reversed(s.coeffs):
        acc = (acc * zi + c).rounded(bits)
    return acc


# -- hypergraph Potts ----------------------------------------------------------


def hypergraph_potts(h, q: int, w: Union[Sequence, int, Fraction]) -> Fraction:
    """Sum over sigma: V -> [q] of prod_f (1 + gamma_f [f monochromatic])."""
    if q < 1:
        raise ParameterError("q must be a positive integer")
    edges = h.edges
    if any(len(f) == 0 for f in edges):
        raise InputError("empty hyperedge")
    if isinstance(w, (int, Fraction)):
        weights = [Fraction(w)] * len(edges)
    else:
        weights = [Fraction(x) for x in w]
        if len(weights) != len(edges):
            raise InputError("one weight per hyperedge is required")
    total = Fraction(0)
    for sigma in itertools.product(range(q), repeat=h.n):
        prod = Fraction(1)
        for f, g in zip(edges, weights):
            if len({sigma[v] for v in f}) == 1:
                prod *= 1 + g
        total += prod
    return total
