"""Shared helpers and independent oracles for the test suite.

Everything here re-derives answers from first principles — plain Fraction
arithmetic and exhaustive enumeration — so library results are checked against
code that shares none of the implementation under test.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from zfun import (
    FiniteMetricSpace,
    ProbMeasure,
    metric_map,
    prob_measure,
    validate_space,
)


# ---------------------------------------------------------------------------
# frozen example spaces


def space_ab() -> FiniteMetricSpace:
    """Two points at distance 3/2."""
    return validate_space(["a", "b"], [["0", "3/2"], ["3/2", "0"]])


def space_abc() -> FiniteMetricSpace:
    """Three points: d(a,b)=3/2, d(a,c)=1, d(b,c)=1/2."""
    return validate_space(
        ["a", "b", "c"],
        [["0", "3/2", "1"], ["3/2", "0", "1/2"], ["1", "1/2", "0"]],
    )


def space_small_diam() -> FiniteMetricSpace:
    """Two points at distance 1/4 (diameter below one)."""
    return validate_space(["p", "q"], [["0", "1/4"], ["1/4", "0"]])


def space_square() -> FiniteMetricSpace:
    """Four points on a cycle: neighbors at 1, opposite corners at 2."""
    return validate_space(
        ["nw", "ne", "se", "sw"],
        [
            ["0", "1", "2", "1"],
            ["1", "0", "1", "2"],
            ["2", "1", "0", "1"],
            ["1", "2", "1", "0"],
        ],
    )


# ---------------------------------------------------------------------------
# independent metric-axiom scan


def brute_metric_violations(points, dist):
    """Four-axiom scan written independently of the library's validator.

    Returns the set of (axiom, witness-tuple) pairs that fail, comparing
    Fractions exactly.
    """
    d = [[Fraction(str(v)) for v in row] for row in dist]
    n = len(points)
    bad = set()
    for i in range(n):
        if d[i][i] != 0:
            bad.add(("identity", (points[i],)))
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] != d[j][i]:
                bad.add(("symmetry", (points[i], points[j])))
            if not d[i][j] > 0:
                bad.add(("positivity", (points[i], points[j])))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({i, j, k}) < 3:
                    continue
                if d[i][k] > d[i][j] + d[j][k]:
                    bad.add(("triangle", (points[i], points[j], points[k])))
    return bad


# ---------------------------------------------------------------------------
# brute-force optimal transport

def _tree_flows(edges, supply, demand, m):
    """Flows on a spanning tree of the bipartite supply/demand graph.

    Vertices 0..m-1 are sources, m.. are sinks; ``edges`` are (i, j) source-
    sink pairs.  Returns None when the edges do not connect every vertex;
    otherwise peels leaves to obtain the unique balancing flow (which may be
    negative — the caller filters infeasible trees).
    """
    total = m + len(demand)
    incident = {v: set() for v in range(total)}
    for e in edges:
        i, j = e
        incident[i].add(e)
        incident[m + j].add(e)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for (i, j) in incident[v]:
            for w in (i, m + j):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    if len(seen) != total:
        return None

    need = {i: supply[i] for i in range(m)}
    need.update({m + j: demand[j] for j in range(len(demand))})
    flows = {}
    leaves = [v for v in range(total) if len(incident[v]) == 1]
    while leaves:
        v = leaves.pop()
        if not incident[v]:
            continue
        (edge,) = incident[v]
        i, j = edge
        other = m + j if v == i else i
        flows[edge] = need[v]
        need[other] -= need[v]
        need[v] = 0
        incident[v].discard(edge)
        incident[other].discard(edge)
        if len(incident[other]) == 1:
            leaves.append(other)
    return flows


def brute_min_transport_cost(mu: ProbMeasure, nu: ProbMeasure) -> Fraction:
    """Least transport cost by enumerating basic solutions.

    Every vertex of the transportation polytope is carried by a spanning tree
    of the complete bipartite graph over the two supports, so enumerating all
    edge sets of tree size, solving each by leaf peeling, and keeping the
    cheapest nonnegative solution yields the exact optimum.  Only sensible for
    supports of a handful of points.
    """
    space = mu.space
    rows = list(mu.weights)
    cols = list(nu.weights)
    m, n = len(rows), len(cols)
    cost_of = [
        [space.distance(p, q) for q, _ in cols] for p, _ in rows
    ]
    supply = [w for _, w in rows]
    demand = [w for _, w in cols]
    all_edges = [(i, j) for i in range(m) for j in range(n)]
    best = None
    for chosen in itertools.combinations(all_edges, m + n - 1):
        flows = _tree_flows(chosen, supply, demand, m)
        if flows is None or any(v < 0 for v in flows.values()):
            continue
        cost = sum(v * cost_of[i][j] for (i, j), v in flows.items())
        if best is None or cost < best:
            best = cost
    assert best is not None, "transportation polytope cannot be empty"
    return best


def assert_potential_feasible(space, values, slack=Fraction(0)):
    """Manual 1-Lipschitz check: |f(p) - f(q)| <= d(p, q) for all pairs."""
    for p in space.points:
        for q in space.points:
            gap = abs(values[p] - values[q])
            assert gap <= space.distance(p, q) + slack, (p, q, gap)


def assert_plan_feasible(space, mu, nu, matrix):
    """Manual marginal check for a full-size coupling matrix."""
    n = len(space.points)
    for i, p in enumerate(space.points):
        assert sum(matrix[i]) == mu.weight(p), f"row marginal at {p}"
    for j, q in enumerate(space.points):
        assert sum(matrix[i][j] for i in range(n)) == nu.weight(q), (
            f"column marginal at {q}"
        )
    for row in matrix:
        for v in row:
            assert v >= 0


def plan_cost(space, matrix) -> Fraction:
    pts = space.points
    return sum(
        matrix[i][j] * space.distance(pts[i], pts[j])
        for i in range(len(pts))
        for j in range(len(pts))
    )


# ---------------------------------------------------------------------------
# exhaustive enumeration helpers


def compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def grid_measures(space: FiniteMetricSpace, denominator: int):
    """Every measure with weights in multiples of 1/denominator."""
    pts = space.points
    for combo in compositions(denominator, len(pts)):
        weights = {
            p: Fraction(c, denominator) for p, c in zip(pts, combo) if c
        }
        yield prob_measure(space, weights)


def all_maps(domain: FiniteMetricSpace, codomain: FiniteMetricSpace):
    """Every total map from domain points to codomain points."""
    pts = domain.points
    for targets in itertools.product(codomain.points, repeat=len(pts)):
        yield metric_map(domain, codomain, dict(zip(pts, targets)))
