"""Slow reference implementations used to cross-check the library.

Everything here works on plain lists of 0/1 columns and shares no code with
the package: rank is the log2 of the size of a span, partition functions
are literal sums over subsets or spin assignments.
"""

import itertools
from fractions import Fraction


def span_rank(columns):
    """Rank over GF(2) as log2 of the number of distinct subset sums."""
    span = {tuple([0] * len(columns[0]))} if columns else {()}
    for col in columns:
        span |= {tuple(a ^ b for a, b in zip(v, col)) for v in span}
    return len(span).bit_length() - 1


def columns_of(rows, ncols):
    return [[r[e] for r in rows] for e in range(ncols)]


def subset_rank(cols, subset, nrows):
    picked = [cols[e] for e in subset]
    if not picked:
        return 0
    return span_rank(picked)


def all_subsets(k):
    for size in range(k + 1):
        yield from itertools.combinations(range(k), size)


def tutte_tilde(rows, ncols, q, weights):
    q = Fraction(q)
    cols = columns_of(rows, ncols)
    total = Fraction(0)
    for s in all_subsets(ncols):
        term = q ** -subset_rank(cols, s, len(rows))
        for e in s:
            term *= weights[e]
        total += term
    return total


def tutte_T(rows, ncols, x, y):
    cols = columns_of(rows, ncols)
    rE = subset_rank(cols, range(ncols), len(rows))
    total = Fraction(0)
    for s in all_subsets(ncols):
        r = subset_rank(cols, s, len(rows))
        total += Fraction(x - 1) ** (rE - r) * Fraction(y - 1) ** (len(s) - r)
    return total


def ising(rows, ncols, weights):
    """Sum over sigma in GF(2)^rows of prod over satisfied columns of (1 + w)."""
    total = Fraction(0)
    for sigma in itertools.product((0, 1), repeat=len(rows)):
        term = Fraction(1)
        for e in range(ncols):
            if sum(sigma[i] * rows[i][e] for i in range(len(rows))) % 2 == 0:
                term *= 1 + weights[e]
        total += term
    return total


def sat_counts(rows, ncols):
    counts = [0] * (ncols + 1)
    for sigma in itertools.product((0, 1), repeat=len(rows)):
        sat = sum(
            1 for e in range(ncols) if sum(sigma[i] * rows[i][e] for i in range(len(rows))) % 2 == 0
        )
        counts[sat] += 1
    return counts


def components(n, edges):
    """Connected components by repeated depth-first search."""
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, count = set(), 0
    for v in range(n):
        if v in seen:
            continue
        count += 1
        stack = [v]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(adj[x] - seen)
    return count


def random_cluster(n, edges, q, weights):
    q = Fraction(q)
    total = Fraction(0)
    for s in all_subsets(len(edges)):
        term = q ** components(n, [edges[i] for i in s])
        for i in s:
            term *= weights[i]
        total += term
    return total


def dual_rank(rows, ncols, subset):
    cols = columns_of(rows, ncols)
    rest = [e for e in range(ncols) if e not in set(subset)]
    return len(subset) + subset_rank(cols, rest, len(rows)) - subset_rank(cols, range(ncols), len(rows))


def hypergraph_potts(n, edges, q, weights):
    total = Fraction(0)
    for sigma in itertools.product(range(q), repeat=n):
        term = Fraction(1)
        for f, w in zip(edges, weights):
            if len({sigma[v] for v in f}) == 1:
                term *= 1 + w
        total += term
    return total


def weight_enumerator(rows, ncols, lam):
    lam = Fraction(lam)
    total = Fraction(0)
    for coeffs in itertools.product((0, 1), repeat=len(rows)):
        word = [sum(c * r[e] for c, r in zip(coeffs, rows)) % 2 for e in range(ncols)]
        total += lam ** sum(word)
    return total


def compose(p, q):
    return tuple(p[i] for i in q)


def group_closure(degree, gens):
    ident = tuple(range(degree))
    seen = {ident}
    todo = [ident]
    while todo:
        g = todo.pop()
        for s in gens:
            h = compose(s, g)
            if h not in seen:
                seen.add(h)
                todo.append(h)
    return seen


def cycles(p):
    seen, count = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        count += 1
        while i not in seen:
            seen.add(i)
            i = p[i]
    return count


def orbits_by_canonical_form(degree, gens, x):
    """Orbit count as the number of distinct minimal images of all strings."""
    group = group_closure(degree, gens)
    reps = set()
    for s in itertools.product(range(x), repeat=degree):
        images = []
        for g in group:
            t = [0] * degree
            for i in range(degree):
                t[g[i]] = s[i]
            images.append(tuple(t))
        reps.add(min(images))
    return len(reps)
