"""Finite metric spaces, maps between them, and the anchor-gluing construction.

A space is a nonempty tuple of distinct string labels plus a square distance
matrix; all values are immutable once validated.  Gluing adjoins a fixed
"anchor" space of diameter exactly one, with every cross distance set to
``max(diameter, 1)`` — the (nonexpansive) maps between glued spaces act as the
original map on the original points and as the identity on the anchor copy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    AnchorDiameterNotOne,
    AxiomViolation,
    BadParameters,
    DomainMismatch,
    UnknownPoint,
)
from .numbers import EXACT, Mode, Num

ANCHOR_PREFIX = "ω:"  # "ω:" — reserved for anchor/pad labels


@dataclass(frozen=True)
class FiniteMetricSpace:
    """A finite labeled point set with a validated distance matrix.

    Build instances through :func:`validate_space`; the raw constructor trusts
    its arguments.
    """

    points: tuple[str, ...]
    dist: tuple[tuple[Num, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownPoint(f"{label!r} is not a point of this space") from None

    def distance(self, a: str, b: str) -> Num:
        return self.dist[self.index(a)][self.index(b)]


def _structural_check(points: Sequence[str], dist: Sequence[Sequence]) -> None:
    if len(points) == 0:
        raise BadParameters("a space needs at least one point")
    if len(set(points)) != len(points):
        raise BadParameters("point labels must be distinct")
    for p in points:
        if not isinstance(p, str):
            raise BadParameters(f"labels must be strings, got {type(p).__name__}")
    if len(dist) != len(points) or any(len(row) != len(points) for row in dist):
        raise BadParameters(
            f"distance matrix must be {len(points)}x{len(points)}"
        )


def metric_violations(
    points: Sequence[str], dist: Sequence[Sequence[Num]], mode: Mode = EXACT
) -> list[tuple[str, tuple[str, ...]]]:
    """Every metric-axiom violation in ``dist``, as ``(axiom, witness-labels)``.

    Checks identity, symmetry, positivity and (when those hold pointwise where
    needed) the triangle inequality over all triples.
    """
    n = len(points)
    bad: list[tuple[str, tuple[str, ...]]] = []
    for i in range(n):
        if not mode.is_zero(dist[i][i]):
            bad.append(("identity", (points[i],)))
    for i in range(n):
        for j in range(i + 1, n):
            if not mode.eq(dist[i][j], dist[j][i]):
                bad.append(("symmetry", (points[i], points[j])))
            if not mode.positive(dist[i][j]):
                bad.append(("positivity", (points[i], points[j])))
    for i, j, k in itertools.product(range(n), repeat=3):
        if i == j or j == k or i == k:
            continue
        if not mode.leq(dist[i][k], dist[i][j] + dist[j][k]):
            bad.append(("triangle", (points[i], points[j], points[k])))
    return bad


def validate_space(
    points: Iterable[str], dist: Iterable[Iterable], mode: Mode = EXACT
) -> FiniteMetricSpace:
    """Validate labels and matrix and return the immutable space.

    Numbers are converted according to ``mode`` (strings like "3/2" accepted).
    Raises :class:`AxiomViolation` carrying *all* violated axioms, with
    witnesses, if the matrix is not a metric.
    """
    pts = tuple(points)
    rows = [list(row) for row in dist]
    _structural_check(pts, rows)
    matrix = tuple(tuple(mode.convert(v) for v in row) for row in rows)
    violations = metric_violations(pts, matrix, mode)
    if violations:
        raise AxiomViolation(violations)
    return FiniteMetricSpace(pts, matrix)


def diameter(space: FiniteMetricSpace) -> Num:
    """Largest pairwise distance (zero for a singleton)."""
    n = len(space.points)
    best: Num = Fraction(0) if n == 0 or isinstance(space.dist[0][0], Fraction) else 0.0
    for i in range(n):
        for j in range(i + 1, n):
            if space.dist[i][j] > best:
                best = space.dist[i][j]
    return best


def subspace(space: FiniteMetricSpace, labels: Iterable[str]) -> FiniteMetricSpace:
    """Restriction of the space to ``labels``, in ambient point order."""
    wanted = set(labels)
    missing = wanted - set(space.points)
    if missing:
        raise UnknownPoint(f"not points of the space: {sorted(missing)!r}")
    pts = tuple(p for p in space.points if p in wanted)
    idx = [space.index(p) for p in pts]
    matrix = tuple(tuple(space.dist[i][j] for j in idx) for i in idx)
    return FiniteMetricSpace(pts, matrix)


@dataclass(frozen=True)
class MetricMap:
    """A total map between two finite metric spaces.

    The assignment is stored canonically as pairs in domain point order, so
    equality and hashing behave as expected.  Build through
    :func:`metric_map`.
    """

    domain: FiniteMetricSpace
    codomain: FiniteMetricSpace
    assignment: tuple[tuple[str, str], ...]
    _table: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_table", dict(self.assignment))

    def __call__(self, label: str) -> str:
        try:
            return self._table[label]
        except KeyError:
            raise UnknownPoint(f"{label!r} is not in the domain") from None

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignment)


def metric_map(
    domain: FiniteMetricSpace,
    codomain: FiniteMetricSpace,
    assignment: Mapping[str, str],
) -> MetricMap:
    """Validate totality and codomain membership, return the canonical map."""
    extra = set(assignment) - set(domain.points)
    if extra:
        raise DomainMismatch(f"assignment mentions non-domain points: {sorted(extra)!r}")
    pairs = []
    for p in domain.points:
        if p not in assignment:
            raise DomainMismatch(f"assignment is not total: missing {p!r}")
        q = assignment[p]
        if q not in codomain:
            raise UnknownPoint(f"{q!r} is not a point of the codomain")
        pairs.append((p, q))
    return MetricMap(domain, codomain, tuple(pairs))


def identity_map(space: FiniteMetricSpace) -> MetricMap:
    return metric_map(space, space, {p: p for p in space.points})


def compose(g: MetricMap, f: MetricMap) -> MetricMap:
    """g after f; requires ``f.codomain == g.domain`` exactly."""
    if f.codomain != g.domain:
        raise DomainMismatch("cannot compose: inner codomain differs from outer domain")
    return metric_map(f.domain, g.codomain, {p: g(f(p)) for p in f.domain.points})


def image(f: MetricMap) -> tuple[str, ...]:
    """Image point labels, in codomain order."""
    hit = {f(p) for p in f.domain.points}
    return tuple(q for q in f.codomain.points if q in hit)


def is_injective(f: MetricMap) -> bool:
    values = [f(p) for p in f.domain.points]
    return len(set(values)) == len(values)


def is_surjective(f: MetricMap) -> bool:
    return len(image(f)) == len(f.codomain.points)


def is_bijective(f: MetricMap) -> bool:
    return is_injective(f) and is_surjective(f)


def invert(f: MetricMap) -> MetricMap:
    if not is_bijective(f):
        raise BadParameters("only bijective maps can be inverted")
    return metric_map(f.codomain, f.domain, {f(p): p for p in f.domain.points})


def sup_distance(f: MetricMap, g: MetricMap) -> Num:
    """Largest codomain distance between images of the same domain point.

    Both maps must share the domain and the codomain.
    """
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DomainMismatch("sup distance needs a shared domain and codomain")
    return max(f.codomain.distance(f(p), g(p)) for p in f.domain.points)


# ---------------------------------------------------------------------------
# anchor gluing


def default_anchor(mode: Mode = EXACT) -> FiniteMetricSpace:
    """The minimal anchor: two points at distance exactly one."""
    one = mode.one
    zero = mode.zero
    return FiniteMetricSpace(
        (ANCHOR_PREFIX + "0", ANCHOR_PREFIX + "1"),
        ((zero, one), (one, zero)),
    )


def relabel_disjoint(labels: Sequence[str], taken: Iterable[str]) -> tuple[str, ...]:
    """Deterministically rename ``labels`` until they avoid ``taken``.

    Collisions gain one "ω:" prefix per round; existing labels never change
    unless they collide.
    """
    used = set(taken)
    out = []
    for lbl in labels:
        cand = lbl
        while cand in used:
            cand = ANCHOR_PREFIX + cand
        out.append(cand)
        used.add(cand)
    return tuple(out)


def _check_anchor(anchor: FiniteMetricSpace, mode: Mode) -> None:
    if not mode.eq(diameter(anchor), mode.one):
        raise AnchorDiameterNotOne(
            f"anchor diameter is {diameter(anchor)}, expected exactly 1"
        )


def glue_metric(
    space: FiniteMetricSpace, anchor: FiniteMetricSpace | None = None, mode: Mode = EXACT
) -> tuple[tuple[Num, ...], ...]:
    """Distance matrix of the glued space: block-diagonal plus constant cross.

    Point order is ``space.points`` followed by the (relabeled) anchor points;
    every cross distance equals ``max(diameter(space), 1)``.
    """
    if anchor is None:
        anchor = default_anchor(mode)
    _check_anchor(anchor, mode)
    cross = max(diameter(space), mode.one)
    n, m = len(space.points), len(anchor.points)
    rows = []
    for i in range(n):
        rows.append(tuple(space.dist[i]) + (cross,) * m)
    for j in range(m):
        rows.append((cross,) * n + tuple(anchor.dist[j]))
    return tuple(rows)


def glue_space(
    space: FiniteMetricSpace, anchor: FiniteMetricSpace | None = None, mode: Mode = EXACT
) -> FiniteMetricSpace:
    """Adjoin a disjoint copy of the anchor; re-verified by the validator."""
    if anchor is None:
        anchor = default_anchor(mode)
    matrix = glue_metric(space, anchor, mode)
    extra = relabel_disjoint(anchor.points, space.points)
    return validate_space(space.points + extra, matrix, mode)


def glue_map(
    f: MetricMap, anchor: FiniteMetricSpace | None = None, mode: Mode = EXACT
) -> MetricMap:
    """Extend ``f`` over the glued spaces, fixing the anchor copy pointwise.

    The anchor copies in the glued domain and codomain correspond
    positionally (relabeling may give them different labels on each side).
    """
    if anchor is None:
        anchor = default_anchor(mode)
    gdom = glue_space(f.domain, anchor, mode)
    gcod = glue_space(f.codomain, anchor, mode)
    dom_extra = gdom.points[len(f.domain.points):]
    cod_extra = gcod.points[len(f.codomain.points):]
    table = f.as_dict()
    for a, b in zip(dom_extra, cod_extra):
        table[a] = b
    return metric_map(gdom, gcod, table)
