"""Uniform hypergraph -> binary matroid reduction and weight-shift pipeline.

Each hyperedge ``f`` becomes ``N`` columns, each the indicator of a uniformly
random even-sized subset of ``f``.  An assignment constant on ``f`` satisfies
all of them; any other assignment satisfies each with probability exactly 1/2.
With ``gamma = 2**(2/N) - 1`` the Ising partition function of the resulting
matroid then tracks ``2**m * Z_Potts(H; 2, 1)`` to within ``e**(+-eps)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import gf2, partition
from .errors import InputError, ParameterError, SizeError
from .gadgets import GadgetPlan, apply_plan, synthesize_window
from .gf2 import Gf2Matrix
from .hypergraph import VACUOUS, Hypergraph, is_uniform
from .intervals import Interval, exp, ln, two_power
from .matroid import BinaryMatroid, dual, full_rank
from .partition import TwoPower, eval_spectrum_at, sat_spectrum

# verify_reduction refuses instances with more spin-column work than this
WORK_BUDGET = 1 << 28


def choose_N(n: int, m: int, eps, bits: int = 128) -> int:
    """Smallest integer N >= 6 m^2 (n + ln(16 m)) / eps^2, rounded rigorously."""
    eps = Fraction(eps)
    if n < 1 or m < 1:
        raise ParameterError("choose_N needs n, m >= 1")
    if not 0 < eps <= 1:
        raise ParameterError("eps must lie in (0, 1]")
    scale = Fraction(6 * m * m) / (eps * eps)
    while True:
        bound = (ln(16 * m, bits) + n) * scale
        lo, hi = math.ceil(bound.lo), math.ceil(bound.hi)
        if lo == hi:
            return lo
        # the bound sits within the enclosure width of an integer
        bits *= 2


def _delta(m: int, eps, bits: int = 128) -> Interval:
    return Interval.point(Fraction(eps) / m) / ln(2, bits)


@dataclass(frozen=True)
class ReductionParams:
    eps: Fraction
    N: int
    seed: int = 0
    heuristic: bool = False
    delta: Optional[Interval] = None

    @classmethod
    def for_hypergraph(cls, h: Hypergraph, eps, seed: int = 0, N: int | None = None) -> "ReductionParams":
        """Parameters for ``h``: the bound's N unless ``N`` is given (flagged heuristic)."""
        eps = Fraction(eps)
        m = max(h.m, 1)
        heuristic = N is not None
        if N is None:
            N = choose_N(max(h.n, 1), m, eps)
        if N < 1:
            raise ParameterError("N must be positive")
        return cls(eps, N, seed & (2**64 - 1), heuristic, _delta(m, eps))


def column_rng(seed: int, edge_index: int, column_index: int) -> np.random.Generator:
    """Independent PCG64 stream for one sampled column."""
    ss = np.random.SeedSequence([seed & (2**64 - 1), edge_index, column_index])
    return np.random.Generator(np.random.PCG64(ss))


def sample_even_subset_column(f, n: int, rng: np.random.Generator) -> int:
    """Indicator (bitmask over ``n`` rows) of a uniform even-sized subset of ``f``."""
    f = sorted(f)
    if len(f) < 2:
        raise InputError("hyperedges must have at least 2 vertices")
    if f[-1] >= n:
        raise InputError("hyperedge vertex outside the row range")
    bits = rng.integers(0, 2, size=len(f) - 1)
    col = 0
    for v, b in zip(f, bits):
        if b:
            col |= 1 << v
    if int(bits.sum()) % 2:
        col |= 1 << f[-1]
    return col


def hyper_to_matroid(h: Hypergraph, params: ReductionParams):
    """Build the n x (N m) matrix; returns ``(matroid, tags)`` with ``tags[col] = (edge, j)``."""
    t = is_uniform(h)
    if t is None:
        raise InputError("hypergraph is not uniform")
    if t is not VACUOUS and t < 2:
        raise InputError("reduction needs hyperedges of size at least 2")
    columns, tags = [], []
    for fi, f in enumerate(h.edges):
        for j in range(params.N):
            columns.append(sample_even_subset_column(f, h.n, column_rng(params.seed, fi, j)))
            tags.append((fi, j))
    return BinaryMatroid(Gf2Matrix.from_columns(h.n, columns)), tags


def var_binary_tutte(m: BinaryMatroid, N: int, precision_bits: int = 128) -> Interval:
    """Enclosure of Z~(m; 2, gamma) at constant gamma = 2**(2/N) - 1."""
    if N < 1:
        raise ParameterError("N must be positive")
    z = TwoPower(Fraction(2, N))
    return eval_spectrum_at(sat_spectrum(m), z, precision_bits) / (2**m.rep.rows)


# -- verification ------------------------------------------------------------


@dataclass
class TrialRecord:
    seed: int
    N: int
    ratio: Interval
    passed: bool

    def as_dict(self, digits: int = 20) -> dict:
        s = self.ratio.to_str(digits)[1:-1].split(",")
        return {"seed": self.seed, "N": self.N, "ratio_lo": s[0], "ratio_hi": s[1], "pass": self.passed}


@dataclass
class VerificationReport:
    target: Fraction
    eps: Fraction
    N: int
    heuristic_N: bool
    band: Interval
    trials: list[TrialRecord] = field(default_factory=list)
    # failure budget: 1/8 from sampling; the oracle's 1/8 is 0 under exact evaluation
    budget_reduction: Fraction = Fraction(1, 8)
    budget_oracle: Fraction = Fraction(0)
    budget_oracle_nominal: Fraction = Fraction(1, 8)

    @property
    def passes(self) -> int:
        return sum(t.passed for t in self.trials)

    @property
    def pass_rate(self) -> Fraction:
        return Fraction(self.passes, len(self.trials)) if self.trials else Fraction(1)


def _trial_seed(seed: int, trial: int) -> int:
    ss = np.random.SeedSequence([seed & (2**64 - 1), trial])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def verify_reduction(h: Hypergraph, eps, trials: int = 100, seed: int = 0,
                     precision_bits: int = 128, N: int | None = None) -> VerificationReport:
    """Run the reduction ``trials`` times and compare against the exact Potts value.

    A trial passes iff the rigorous ratio enclosure lies inside the rigorous
    inner approximation of [e^-eps, e^eps].
    """
    eps = Fraction(eps)
    params = ReductionParams.for_hypergraph(h, eps, seed, N)
    work = (1 << h.n) * max(params.N * h.m, 1)
    if h.n > partition.MAX_ENUM_BITS or work > WORK_BUDGET:
        raise SizeError(f"instance too large for exact verification (n={h.n}, columns={params.N * h.m})")
    target = 2**h.m * partition.hypergraph_potts(h, 2, 1)
    up, down = exp(eps, precision_bits), exp(-eps, precision_bits)
    band = Interval(down.hi, up.lo)
    report = VerificationReport(target, eps, params.N, params.heuristic, band)
    z = TwoPower(Fraction(2, params.N))
    for k in range(trials):
        s = _trial_seed(seed, k)
        m, _ = hyper_to_matroid(h, ReductionParams(eps, params.N, s, params.heuristic, params.delta))
        z_ising = eval_spectrum_at(sat_spectrum(m), z, precision_bits)
        ratio = z_ising / target
        report.trials.append(TrialRecord(s, params.N, ratio, ratio.within(band)))
    return report


# -- weight shift --------------------------------------------------------------


@dataclass
class PipelineResult:
    matroid: BinaryMatroid
    prefactor: Fraction
    chi: Fraction
    pi: Interval
    target: Interval
    window: tuple[Fraction, Fraction]
    plan: GadgetPlan
    c_gamma: Fraction
    certificate: Optional[bool] = None
    certificate_sides: Optional[tuple[Fraction, Fraction]] = None

    @property
    def gamma_star(self) -> Fraction:
        return self.plan.weight


def tutte_tilde_q2(m: BinaryMatroid, gamma) -> Fraction:
    """Exact Z~(m; 2, gamma) for constant gamma, by spin enumeration.

    Uses the sat-spectrum of a row-reduced representation, or of the dual when
    that has fewer rows (with Z~(M) = 2^-r(E) gamma^|E| Z~(M*; 2, 2/gamma)).
    """
    gamma = Fraction(gamma)
    r = full_rank(m)
    if r <= len(m) - r or gamma == 0:
        reduced, _ = gf2.row_reduce(m.rep)
        core = BinaryMatroid(Gf2Matrix(r, m.rep.cols, reduced.data[:r]), m.ground)
        return sat_spectrum(core)(1 + gamma) / 2**r
    d = dual(m)
    rd = d.rep.rows
    return gamma ** len(m) / Fraction(2) ** r * sat_spectrum(d)(1 + 2 / gamma) / 2**rd


def weight_shift_pipeline(m: BinaryMatroid, N: int, avail, eps, c_gamma=1,
                          max_size: int = 64, precision_bits: int = 128,
                          certify_budget: int = 1 << 24) -> PipelineResult:
    """Replace every element's weight 2^(2/N)-1 by trees of ``avail``-weight elements.

    chi = eps^2 / (4 C m^2 N) and pi = (chi/2)(2^(2/N) - 1), with ``c_gamma``
    standing in for C.  The synthesized gamma* lies in [gamma' - pi, gamma']
    rigorously: the window used is the inner approximation
    [hi(gamma')(1 - chi/2), lo(gamma')].
    """
    eps, avail, c_gamma = Fraction(eps), Fraction(avail), Fraction(c_gamma)
    if not 0 < eps < 1:
        raise ParameterError("eps must lie in (0, 1)")
    if avail <= 0:
        raise ParameterError("available weight must be positive")
    if N < 1:
        raise ParameterError("N must be positive")
    cols = max(len(m), 1)
    chi = eps**2 / (4 * c_gamma * cols**2 * N)
    target = two_power(Fraction(2, N), precision_bits) - 1
    pi = target * (chi / 2)
    window = (target.hi * (1 - chi / 2), target.lo)
    if window[0] > window[1]:
        raise ParameterError("precision too low to separate the target window")
    plan = synthesize_window(window[0], window[1], avail, 2, max_size)
    w = {e: avail for e in m.ground}
    out, prefactor = m, Fraction(1)
    for e in m.ground:
        out, w, f = apply_plan(out, w, e, plan, 2)
        prefactor *= f
    result = PipelineResult(out, prefactor, chi, pi, target, window, plan, c_gamma)
    if _certify_cost(out) <= certify_budget:
        lhs = prefactor * tutte_tilde_q2(m, plan.weight)
        rhs = tutte_tilde_q2(out, avail)
        result.certificate = lhs == rhs
        result.certificate_sides = (lhs, rhs)
    return result


def _certify_cost(m: BinaryMatroid) -> int:
    r = full_rank(m)
    return (1 << min(r, len(m) - r)) * max(len(m), 1)
