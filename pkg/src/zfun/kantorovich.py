"""Kantorovich distance between probability measures, with dual certificates.

Two genuinely independent routes compute the same number:

* :func:`kantorovich_dual` — the defining supremum of integral differences
  over 1-Lipschitz potentials, solved as a linear program over the Lipschitz
  polytope (base point pinned to zero) by the exact simplex in
  :mod:`zfun.simplexlp`;
* :func:`kantorovich_primal` — the least transport cost, solved by a
  transportation simplex on the support of the two measures (northwest-corner
  start, tree potentials, deterministic Bland-style pivoting).

In exact mode both are exact optima of dual linear programs, so
:func:`duality_gap` is exactly zero.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import (
    InfeasibleMass,
    InvalidWeights,
    SolverFailure,
    SpaceMismatch,
)
from .measures import ProbMeasure, dirac, pushforward
from .numbers import EXACT, Mode, Num
from .simplexlp import solve_inequality_lp
from .spaces import FiniteMetricSpace, MetricMap, diameter, sup_distance


@dataclass(frozen=True)
class LipschitzPotential:
    """A 1-Lipschitz function on a space, the dual optimality certificate."""

    space: FiniteMetricSpace
    values: tuple[tuple[str, Num], ...]

    def value(self, label: str) -> Num:
        return dict(self.values)[label]

    def as_dict(self) -> dict[str, Num]:
        return dict(self.values)


def lipschitz_potential(
    space: FiniteMetricSpace, values: Mapping[str, Num], mode: Mode = EXACT
) -> LipschitzPotential:
    """Validate the 1-Lipschitz property over all pairs and canonicalize."""
    missing = [p for p in space.points if p not in values]
    if missing:
        raise InvalidWeights(f"potential not defined at {missing!r}")
    pts = space.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            gap = values[pts[i]] - values[pts[j]]
            if gap < 0:
                gap = -gap
            if not mode.leq(gap, space.dist[i][j]):
                raise InvalidWeights(
                    f"potential is not 1-Lipschitz at ({pts[i]!r}, {pts[j]!r})"
                )
    return LipschitzPotential(space, tuple((p, values[p]) for p in pts))


def potential_gap(f: LipschitzPotential, mu: ProbMeasure, nu: ProbMeasure) -> Num:
    """``|∫f dμ − ∫f dν|`` — what any feasible potential certifies as a lower bound."""
    table = f.as_dict()
    total = sum((w * table[p] for p, w in mu.weights), 0) - sum(
        (w * table[p] for p, w in nu.weights), 0
    )
    return -total if total < 0 else total


@dataclass(frozen=True)
class TransportPlan:
    """A coupling of two measures on one space: the primal certificate."""

    source: ProbMeasure
    target: ProbMeasure
    matrix: tuple[tuple[Num, ...], ...]

    def cost(self) -> Num:
        space = self.source.space
        total = 0
        for i in range(len(space.points)):
            for j in range(len(space.points)):
                if self.matrix[i][j] != 0:
                    total += self.matrix[i][j] * space.dist[i][j]
        return total


def transport_plan(
    source: ProbMeasure,
    target: ProbMeasure,
    matrix: Sequence[Sequence[Num]],
    mode: Mode = EXACT,
) -> TransportPlan:
    """Validate marginals (and nonnegativity) of a coupling matrix."""
    if source.space != target.space:
        raise SpaceMismatch("a plan couples measures on one space")
    n = len(source.space.points)
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise InvalidWeights(f"plan matrix must be {n}x{n}")
    rows = tuple(tuple(mode.convert(v) for v in row) for row in matrix)
    for row in rows:
        for v in row:
            if not mode.leq(0, v):
                raise InvalidWeights("plan entries must be nonnegative")
    for i, p in enumerate(source.space.points):
        if not mode.eq(sum(rows[i], mode.zero), source.weight(p)):
            raise InvalidWeights(f"row marginal at {p!r} does not match the source")
    for j, q in enumerate(target.space.points):
        col = sum((rows[i][j] for i in range(n)), mode.zero)
        if not mode.eq(col, target.weight(q)):
            raise InvalidWeights(f"column marginal at {q!r} does not match the target")
    return TransportPlan(source, target, rows)


def _require_shared_space(mu: ProbMeasure, nu: ProbMeasure) -> FiniteMetricSpace:
    if mu.space != nu.space:
        raise SpaceMismatch("both measures must live on the same space")
    return mu.space


# ---------------------------------------------------------------------------
# dual route: LP over the Lipschitz polytope


def kantorovich_dual(
    mu: ProbMeasure, nu: ProbMeasure, mode: Mode = EXACT
) -> tuple[Num, LipschitzPotential]:
    """Largest integral difference over 1-Lipschitz potentials, with certificate.

    The potential is normalized to vanish at the first point.  Substituting
    ``g_i = f_i + d(x0, xi)`` makes every variable nonnegative and every
    right-hand side nonnegative (triangle inequality), so the slack basis
    starts feasible.
    """
    space = _require_shared_space(mu, nu)
    pts = space.points
    n = len(pts)
    zero = mode.zero
    if n == 1:
        cert = LipschitzPotential(space, ((pts[0], zero),))
        return zero, cert

    d = space.dist
    weight_gap = [mu.weight(p) - nu.weight(p) for p in pts]
    c = [weight_gap[i] for i in range(1, n)]
    rows: list[list[Num]] = []
    rhs: list[Num] = []
    # bound rows: g_i <= 2 d(0, i)
    for i in range(1, n):
        row = [zero] * (n - 1)
        row[i - 1] = mode.one
        rows.append(row)
        rhs.append(2 * d[0][i])
    # Lipschitz rows: g_i - g_j <= d(i, j) + d(0, i) - d(0, j)
    for i in range(1, n):
        for j in range(1, n):
            if i == j:
                continue
            row = [zero] * (n - 1)
            row[i - 1] = mode.one
            row[j - 1] = -mode.one
            rows.append(row)
            rhs.append(d[i][j] + d[0][i] - d[0][j])
    lp_value, g = solve_inequality_lp(c, rows, rhs, mode)
    shift = sum((c[i - 1] * d[0][i] for i in range(1, n)), zero)
    value = lp_value - shift
    values = {pts[0]: zero}
    for i in range(1, n):
        values[pts[i]] = g[i - 1] - d[0][i]
    certificate = lipschitz_potential(space, values, mode)
    return value, certificate


# ---------------------------------------------------------------------------
# primal route: transportation simplex on the supports


def _northwest_corner(supply, demand, eps):
    m, n = len(supply), len(demand)
    a = list(supply)
    b = list(demand)
    flow: dict[tuple[int, int], Num] = {}
    basis: list[tuple[int, int]] = []
    r = c = 0
    while True:
        t = a[r] if a[r] <= b[c] else b[c]
        flow[(r, c)] = t
        basis.append((r, c))
        a[r] -= t
        b[c] -= t
        if r == m - 1 and c == n - 1:
            return flow, basis
        if a[r] <= eps and r < m - 1:
            r += 1
        else:
            c += 1


def _tree_potentials(basis, costs, m, n, zero):
    rows_adj: list[list[int]] = [[] for _ in range(m)]
    cols_adj: list[list[int]] = [[] for _ in range(n)]
    for r, c in basis:
        rows_adj[r].append(c)
        cols_adj[c].append(r)
    u: list[Num | None] = [None] * m
    v: list[Num | None] = [None] * n
    u[0] = zero
    stack = [(True, 0)]
    while stack:
        is_row, i = stack.pop()
        if is_row:
            for c in rows_adj[i]:
                if v[c] is None:
                    v[c] = costs[i][c] - u[i]
                    stack.append((False, c))
        else:
            for r in cols_adj[i]:
                if u[r] is None:
                    u[r] = costs[r][i] - v[i]
                    stack.append((True, r))
    if any(x is None for x in u) or any(x is None for x in v):
        raise SolverFailure("transport basis is not a spanning tree")
    return u, v


def _cycle_edges(basis, entering, m, n):
    """The unique cycle created by ``entering``: edge list starting with it."""
    rows_adj: list[list[int]] = [[] for _ in range(m)]
    cols_adj: list[list[int]] = [[] for _ in range(n)]
    for r, c in basis:
        rows_adj[r].append(c)
        cols_adj[c].append(r)
    r0, c0 = entering
    start = (True, r0)
    goal = (False, c0)
    parent: dict[tuple[bool, int], tuple[bool, int] | None] = {start: None}
    dq = deque([start])
    while dq:
        node = dq.popleft()
        if node == goal:
            break
        is_row, i = node
        neighbors = rows_adj[i] if is_row else cols_adj[i]
        for k in neighbors:
            nxt = (not is_row, k)
            if nxt not in parent:
                parent[nxt] = node
                dq.append(nxt)
    if goal not in parent:
        raise SolverFailure("transport basis lost connectivity")
    nodes = [goal]
    while parent[nodes[-1]] is not None:
        nodes.append(parent[nodes[-1]])
    nodes.reverse()  # start .. goal
    path = []
    for a, b in zip(nodes, nodes[1:]):
        (ra, ia), (rb, ib) = a, b
        path.append((ia, ib) if ra else (ib, ia))
    # entering closes the cycle; walking back along the path alternates signs
    return [entering] + list(reversed(path))


def _transport_simplex(costs, supply, demand, mode, max_pivots: int = 100_000):
    """Optimal flows for the balanced transportation problem (Bland pivoting)."""
    m, n = len(supply), len(demand)
    eps = mode.pivot_eps
    zero = mode.zero
    flow, basis = _northwest_corner(supply, demand, eps)
    basis_set = set(basis)
    for _ in range(max_pivots):
        u, v = _tree_potentials(basis, costs, m, n, zero)
        entering = None
        for r in range(m):
            for c in range(n):
                if (r, c) in basis_set:
                    continue
                if costs[r][c] - u[r] - v[c] < -eps:
                    entering = (r, c)
                    break
            if entering is not None:
                break
        if entering is None:
            return flow, basis, (u, v)
        cycle = _cycle_edges(basis, entering, m, n)
        minus = cycle[1::2]
        theta = min(flow[cell] for cell in minus)
        candidates = [cell for cell in minus if flow[cell] == theta]
        leaving = min(candidates, key=lambda rc: rc[0] * n + rc[1])
        flow[entering] = zero
        for i, cell in enumerate(cycle):
            if i % 2 == 0:
                flow[cell] = flow[cell] + theta
            else:
                flow[cell] = flow[cell] - theta
        del flow[leaving]
        basis.remove(leaving)
        basis.append(entering)
        basis_set.discard(leaving)
        basis_set.add(entering)
    raise SolverFailure("pivot budget exhausted")


def kantorovich_primal(
    mu: ProbMeasure, nu: ProbMeasure, mode: Mode = EXACT
) -> tuple[Num, TransportPlan]:
    """Least transport cost between two measures, with an optimal plan.

    Solved on the supports only; the returned plan matrix is indexed by the
    full point set (zero rows/columns off-support).
    """
    space = _require_shared_space(mu, nu)
    total_mu = sum((w for _, w in mu.weights), mode.zero)
    total_nu = sum((w for _, w in nu.weights), mode.zero)
    if not mode.eq(total_mu, total_nu):
        raise InfeasibleMass(f"totals differ: {total_mu} vs {total_nu}")
    src = [space.index(p) for p, _ in mu.weights]
    snk = [space.index(q) for q, _ in nu.weights]
    supply = [w for _, w in mu.weights]
    demand = [w for _, w in nu.weights]
    costs = [[space.dist[i][j] for j in snk] for i in src]
    flow, _, _ = _transport_simplex(costs, supply, demand, mode)
    n = len(space.points)
    matrix = [[mode.zero] * n for _ in range(n)]
    value = mode.zero
    for (r, c), amount in flow.items():
        if amount < 0 and not mode.is_exact:
            amount = 0.0  # round simplex dust back into the feasible region
        matrix[src[r]][snk[c]] = matrix[src[r]][snk[c]] + amount
        value += amount * costs[r][c]
    plan = transport_plan(mu, nu, matrix, mode)
    return value, plan


# ---------------------------------------------------------------------------
# the metric itself and its derived checks


def kantorovich(mu: ProbMeasure, nu: ProbMeasure, mode: Mode = EXACT) -> Num:
    """The Kantorovich distance (computed by the defining dual route)."""
    value, _ = kantorovich_dual(mu, nu, mode)
    return value


def duality_gap(mu: ProbMeasure, nu: ProbMeasure, mode: Mode = EXACT) -> Num:
    """Primal minus dual optimum: exactly zero in exact mode."""
    primal, _ = kantorovich_primal(mu, nu, mode)
    dual, _ = kantorovich_dual(mu, nu, mode)
    return primal - dual


def measure_diameter_check(
    space: FiniteMetricSpace, mode: Mode = EXACT
) -> tuple[Num, Num]:
    """(largest Kantorovich distance over Dirac pairs, space diameter).

    The two numbers agree: measures can never be farther apart than the
    farthest pair of points.
    """
    pts = space.points
    best = mode.zero
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            value = kantorovich(dirac(space, pts[i], mode), dirac(space, pts[j], mode), mode)
            if value > best:
                best = value
    return best, mode.convert(diameter(space))


def map_isometry_check(
    phi: MetricMap,
    psi: MetricMap,
    sampled: Sequence[ProbMeasure] = (),
    mode: Mode = EXACT,
) -> tuple[Num, Num]:
    """(largest Kantorovich distance of pushed Dirac pairs, sup distance).

    The two agree, and every sampled measure must satisfy the same bound —
    a violation would be a library bug and raises :class:`SolverFailure`.
    """
    if phi.domain != psi.domain or phi.codomain != psi.codomain:
        raise SpaceMismatch("maps must share domain and codomain")
    best = mode.zero
    for p in phi.domain.points:
        delta = dirac(phi.domain, p, mode)
        value = kantorovich(pushforward(phi, delta, mode), pushforward(psi, delta, mode), mode)
        if value > best:
            best = value
    bound = mode.convert(sup_distance(phi, psi))
    for mu in sampled:
        value = kantorovich(pushforward(phi, mu, mode), pushforward(psi, mu, mode), mode)
        if not mode.leq(value, bound):
            raise SolverFailure(
                f"sampled measure beats the sup-distance bound: {value} > {bound}"
            )
    return best, bound
