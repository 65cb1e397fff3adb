"""Series and parallel extensions of binary matroids, and weight synthesis.

A parallel extension copies column ``c``; a series extension adds a row with
ones at ``c`` and a new column.  Under the combination rules

    parallel:  1 + g   = (1 + g1)(1 + g2)
    series:    1 + q/g = (1 + q/g1)(1 + q/g2)

the multivariate Tutte polynomial is preserved (parallel) or multiplied by
``1 + g1/q + g2/q`` (series).  Nesting them gives series-parallel trees whose
leaves all carry one available weight; :func:`synthesize_weight` searches for
a small tree whose effective weight lands in a target window.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import InputError, ParameterError, SynthesisError
from .exact import format_rational, parse_rational
from .gf2 import Gf2Matrix
from .matroid import BinaryMatroid


def _positive(name, x):
    x = Fraction(x)
    if x <= 0:
        raise InputError(f"{name} must be positive, got {format_rational(x)}")
    return x


def parallel_weight(g1, g2) -> Fraction:
    return (1 + Fraction(g1)) * (1 + Fraction(g2)) - 1


def series_weight(g1, g2, q=2) -> Fraction:
    q = Fraction(q)
    return q / ((1 + q / Fraction(g1)) * (1 + q / Fraction(g2)) - 1)


def parallel_split(gamma_c, g1) -> Fraction:
    """The g2 with (1 + g1)(1 + g2) = 1 + gamma_c."""
    return (1 + Fraction(gamma_c)) / (1 + Fraction(g1)) - 1


def series_split(gamma_c, g1, q=2) -> Fraction:
    """The g2 with (1 + q/g1)(1 + q/g2) = 1 + q/gamma_c."""
    q = Fraction(q)
    ratio = (1 + q / Fraction(gamma_c)) / (1 + q / Fraction(g1))
    if ratio == 1:
        raise InputError("no finite g2 solves the series equation")
    return q / (ratio - 1)


def parallel_extend(m: BinaryMatroid, w, c, g1, g2):
    """Replace element ``c`` by a parallel pair carrying ``g1`` (on ``c``) and ``g2``.

    Returns ``(m2, w2)`` with Z~(m; q, w) = Z~(m2; q, w2) for every q != 0.
    The new element gets :meth:`BinaryMatroid.fresh_element`.
    """
    i = m.index(c)
    g1, g2 = _positive("gamma1", g1), _positive("gamma2", g2)
    gc = Fraction(w[c])
    if (1 + g1) * (1 + g2) != 1 + gc:
        raise InputError(
            f"parallel split violates (1+g1)(1+g2) = 1+gamma_c for gamma_c = {format_rational(gc)}"
        )
    new = m.fresh_element()
    data = tuple(r | (((r >> i) & 1) << m.rep.cols) for r in m.rep.data)
    m2 = BinaryMatroid(Gf2Matrix(m.rep.rows, m.rep.cols + 1, data), m.ground + (new,))
    w2 = dict(w)
    w2[c] = g1
    w2[new] = g2
    return m2, w2


def series_extend(m: BinaryMatroid, w, c, q, g1, g2):
    """Replace element ``c`` by a series pair carrying ``g1`` (on ``c``) and ``g2``.

    Returns ``(m2, w2, prefactor)`` with prefactor * Z~(m; q, w) = Z~(m2; q, w2).
    """
    i = m.index(c)
    q = Fraction(q)
    if q == 0:
        raise InputError("series extension needs q != 0")
    gc = Fraction(w[c])
    if gc == 0:
        raise InputError("series extension needs gamma_c != 0")
    g1, g2 = _positive("gamma1", g1), _positive("gamma2", g2)
    if (1 + q / g1) * (1 + q / g2) != 1 + q / gc:
        raise InputError(
            f"series split violates (1+q/g1)(1+q/g2) = 1+q/gamma_c for gamma_c = {format_rational(gc)}"
        )
    new = m.fresh_element()
    cols = m.rep.cols
    new_row = (1 << i) | (1 << cols)
    data = m.rep.data + (new_row,)
    m2 = BinaryMatroid(Gf2Matrix(m.rep.rows + 1, cols + 1, data), m.ground + (new,))
    w2 = dict(w)
    w2[c] = g1
    w2[new] = g2
    return m2, w2, 1 + g1 / q + g2 / q


# -- plans -------------------------------------------------------------------


@dataclass(frozen=True)
class PlanNode:
    """A series-parallel tree.  ``kind`` is ``"L"`` (leaf), ``"P"`` or ``"S"``."""

    kind: str
    weight: Fraction
    prefactor: Fraction
    leaves: int
    series: int
    children: tuple = ()

    def __str__(self):
        if self.kind == "L":
            return format_rational(self.weight)
        a, b = self.children
        return f"{self.kind}({a},{b})"


def leaf(weight) -> PlanNode:
    return PlanNode("L", _positive("leaf weight", weight), Fraction(1), 1, 0)


def parallel(a: PlanNode, b: PlanNode) -> PlanNode:
    return PlanNode(
        "P", parallel_weight(a.weight, b.weight), a.prefactor * b.prefactor,
        a.leaves + b.leaves, a.series + b.series, (a, b),
    )


def series(a: PlanNode, b: PlanNode, q=2) -> PlanNode:
    q = Fraction(q)
    step = 1 + a.weight / q + b.weight / q
    return PlanNode(
        "S", series_weight(a.weight, b.weight, q), step * a.prefactor * b.prefactor,
        a.leaves + b.leaves, a.series + b.series + 1, (a, b),
    )


@dataclass(frozen=True)
class GadgetPlan:
    root: PlanNode
    q: Fraction = Fraction(2)

    @property
    def weight(self) -> Fraction:
        return self.root.weight

    @property
    def prefactor(self) -> Fraction:
        return self.root.prefactor

    @property
    def size(self) -> int:
        return self.root.leaves

    def leaf_weights(self) -> list[Fraction]:
        out = []
        stack = [self.root]
        while stack:
            n = stack.pop()
            if n.kind == "L":
                out.append(n.weight)
            else:
                stack.extend(n.children)
        return out

    def __str__(self):
        return str(self.root)


_TOKEN = re.compile(r"\s*(?:(P|S)\(|(\))|(,)|(-?\d+(?:/\d+)?))")


def _tokens(text: str) -> Iterator[tuple[str, str]]:
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise InputError(f"bad plan syntax at {text[pos:]!r}")
        op, close, comma, num = mt.groups()
        if op:
            yield "op", op
        elif close:
            yield ")", close
        elif comma:
            yield ",", comma
        else:
            yield "num", num
        pos = mt.end()


def parse_plan(text: str, q=2) -> GadgetPlan:
    """Parse ``P(a,b)`` / ``S(a,b)`` nested terms with rational leaves."""
    toks = list(_tokens(text))
    pos = 0

    def expect(kind):
        nonlocal pos
        if pos >= len(toks) or toks[pos][0] != kind:
            raise InputError(f"bad plan syntax: expected {kind!r} in {text!r}")
        pos += 1
        return toks[pos - 1][1]

    def node() -> PlanNode:
        nonlocal pos
        if pos < len(toks) and toks[pos][0] == "num":
            pos += 1
            return leaf(parse_rational(toks[pos - 1][1]))
        op = expect("op")
        a = node()
        expect(",")
        b = node()
        expect(")")
        return parallel(a, b) if op == "P" else series(a, b, q)

    root = node()
    if pos != len(toks):
        raise InputError(f"trailing input in plan {text!r}")
    return GadgetPlan(root, Fraction(q))


def apply_plan(m: BinaryMatroid, w, c, plan: GadgetPlan, q=None):
    """Expand element ``c`` into the plan's series-parallel tree.

    ``c`` is first given the plan's effective weight.  Returns ``(m2, w2,
    prefactor)`` with prefactor * Z~(m; q, w[c := plan.weight]) = Z~(m2; q, w2).
    """
    q = plan.q if q is None else Fraction(q)
    if q != plan.q:
        raise InputError("plan was built for a different q")
    m.index(c)
    w = dict(w)
    w[c] = plan.weight
    prefactor = Fraction(1)
    stack = [(plan.root, c)]
    while stack:
        node, e = stack.pop()
        if node.kind == "L":
            continue
        a, b = node.children
        if node.kind == "P":
            m, w = parallel_extend(m, w, e, a.weight, b.weight)
        else:
            m, w, f = series_extend(m, w, e, q, a.weight, b.weight)
            prefactor *= f
        new = m.ground[-1]
        stack.append((a, e))
        stack.append((b, new))
    return m, w, prefactor


# -- synthesis ----------------------------------------------------------------


def _rank_key(node: PlanNode, hi: Fraction):
    # fewest leaves, then fewest added rows, then closest to the top of the window
    return (node.leaves, node.series, hi - node.weight, str(node))


def _levels(avail: Fraction, depth: int, q: Fraction) -> list[dict]:
    """levels[k] maps each distinct effective weight with k leaves to one tree."""
    levels: list[dict] = [{}, {avail: leaf(avail)}]
    for k in range(2, depth + 1):
        level: dict = {}
        for i in range(1, k // 2 + 1):
            for a in levels[i].values():
                for b in levels[k - i].values():
                    for node in (parallel(a, b), series(a, b, q)):
                        old = level.get(node.weight)
                        if old is None or node.series < old.series:
                            level[node.weight] = node
        levels.append(level)
    return levels


def _join_hits(levels, lo, hi, q, max_size):
    """Best tree ``P(a,b)``/``S(a,b)`` in [lo, hi] with a, b drawn from the levels."""
    depth = len(levels) - 1
    keys = [sorted(lv) for lv in levels]
    for total in range(2, min(max_size, 2 * depth) + 1):
        hits = []
        for i in range(1, total // 2 + 1):
            j = total - i
            if j > depth:
                continue
            cand = keys[j]
            for a in levels[i].values():
                # parallel: (1 + lo)/(1 + a) - 1 <= b <= (1 + hi)/(1 + a) - 1
                blo = (1 + lo) / (1 + a.weight) - 1
                bhi = (1 + hi) / (1 + a.weight) - 1
                for b in _bisect_range(cand, blo, bhi):
                    hits.append(parallel(a, levels[j][b]))
                # series: 1 + q/b = (1 + q/g)/(1 + q/a) for g in [lo, hi]
                ua = 1 + q / a.weight
                uhi = (1 + q / lo) / ua
                ulo = (1 + q / hi) / ua
                if uhi > 1:
                    b_lo = q / (uhi - 1)
                    b_hi = q / (ulo - 1) if ulo > 1 else None
                    for b in _bisect_range(cand, b_lo, b_hi):
                        hits.append(series(a, levels[j][b], q))
        hits = [h for h in hits if lo <= h.weight <= hi]
        if hits:
            return min(hits, key=lambda n: _rank_key(n, hi))
    return None


def _bisect_range(sorted_keys, lo, hi):
    k = bisect.bisect_left(sorted_keys, lo)
    while k < len(sorted_keys) and (hi is None or sorted_keys[k] <= hi):
        yield sorted_keys[k]
        k += 1


def _greedy(avail: Fraction, lo, hi, q, max_size):
    """Geometric refinement: add ever smaller pieces in parallel until inside [lo, hi].

    Each piece is the largest chain (parallel chain if it fits, else series
    chain) that keeps the value <= hi; the remaining gap shrinks by a constant
    factor per piece, so this always terminates.  Returns (node, best_so_far).
    """
    a = leaf(avail)

    def largest_piece(limit):
        # largest chain value <= limit; None if the budget runs out first
        if a.weight <= limit:
            node = a
            while node.leaves < max_size:
                nxt = parallel(a, node)
                if nxt.weight > limit:
                    break
                node = nxt
            return node
        node = series(a, a, q)
        while node.weight > limit:
            if node.leaves >= max_size:
                return None
            node = series(a, node, q)
        return node

    current = largest_piece(hi)
    if current is None:
        return None, None
    while current.weight < lo:
        limit = (1 + hi) / (1 + current.weight) - 1
        piece = largest_piece(limit)
        if piece is None or current.leaves + piece.leaves > max_size:
            return None, current
        current = parallel(current, piece)
    return current, current


def synthesize_window(lo, hi, avail, q=2, max_size: int = 64, depth: int = 8) -> GadgetPlan:
    """Smallest plan found whose effective weight lies in the closed window [lo, hi].

    Search order: exhaustive trees up to ``depth`` leaves, then two such trees
    joined at the root, then :func:`_greedy`.  Deterministic.
    """
    lo, hi, q = Fraction(lo), Fraction(hi), Fraction(q)
    avail = _positive("available weight", avail)
    if not 0 < lo <= hi:
        raise ParameterError("target window must satisfy 0 < lo <= hi")
    if max_size < 1:
        raise ParameterError("max_size must be at least 1")
    depth = max(1, min(depth, max_size))
    levels = _levels(avail, depth, q)
    best = None
    for k in range(1, depth + 1):
        hits = [n for w, n in levels[k].items() if lo <= w <= hi]
        if hits:
            best = min(hits, key=lambda n: _rank_key(n, hi))
            break
    joined = _join_hits(levels, lo, hi, q, max_size)
    if joined is not None and (best is None or _rank_key(joined, hi) < _rank_key(best, hi)):
        best = joined
    if best is None:
        best, closest = _greedy(avail, lo, hi, q, max_size)
        if best is None:
            candidates = [n for lv in levels for n in lv.values()]
            if closest is not None:
                candidates.append(closest)
            nearest = min(candidates, key=lambda n: abs(n.weight - hi))
            raise SynthesisError(
                f"no plan with at most {max_size} leaves lands in the window; "
                f"nearest weight {float(nearest.weight):.6g} ({nearest})",
                best=GadgetPlan(nearest, q),
            )
    return GadgetPlan(best, q)


def synthesize_weight(target, avail, tolerance, q=2, max_size: int = 64) -> GadgetPlan:
    """Plan with leaves ``avail`` and effective weight in [target - tolerance, target]."""
    target = _positive("target", target)
    tolerance = _positive("tolerance", tolerance)
    if Fraction(q) != 2:
        raise ParameterError("weight synthesis is only supported at q = 2")
    if tolerance >= target:
        raise ParameterError("tolerance must be smaller than the target")
    return synthesize_window(target - tolerance, target, avail, q, max_size)
