"""Seeded property-check suites with JSON-serializable reports.

Each suite runs an ordered catalog of named checks.  A check draws its own
deterministic random stream (derived from the global seed and the record
name), runs a batch of instances, and collects failure witnesses.  Every
record carries one label from the closed tag set below, so reports can be
filtered by the law a record exercises:

=========  ==============================================================
tag        law
=========  ==============================================================
(a)        extension assignment is a functor (identities, compositions)
(b)        extensions restrict to the original map
(c)        injectivity transfers both ways
(d)        image characterization / preimage witnesses round-trip
(e)        surjectivity transfers both ways
(g)        head witnesses avoid subset spaces that miss the head point
(h)        pushforward distances are dominated by sup distances
(i)        metric extension: restriction, diameter, sup-metric isometry
(Λ1)       functor laws of the underlying constructions
(Λ2)       fixture shape (sizes, charts, families)
(Λ3)       naturality with the canonical embeddings
(Λ4)       embeddings and restrictions are isometric
(Λ5)       induced actions on map spaces are isometric
plumbing   infrastructure (validators, solvers, serialization)
=========  ==============================================================

Reports serialize canonically (numbers as strings, fixed key order) and are
byte-reproducible for a fixed seed; wall-clock duration is kept off the
serialized form on purpose.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import generate
from .errors import AxiomViolation, ZfunError
from .kantorovich import (
    kantorovich,
    kantorovich_dual,
    kantorovich_primal,
    lipschitz_potential,
    map_isometry_check,
    measure_diameter_check,
    potential_gap,
    transport_plan,
)
from .measures import (
    convex_combination,
    change_of_variables_check,
    dirac,
    in_image,
    injectivity_transfer_check,
    measures_equal,
    preimage_measure,
    pushforward,
)
from .numbers import EXACT, Mode, format_number
from .scheme import (
    build_finite_fixture,
    decompose_automorphism,
    extend_map,
    extend_metric,
    extension_isometry_check,
    member_space,
    padded_map,
    padded_space,
    pointwise_fixing_bijections,
    subset_preserving_bijections,
)
from .spaces import (
    FiniteMetricSpace,
    compose,
    default_anchor,
    diameter,
    glue_map,
    glue_space,
    identity_map,
    image,
    is_injective,
    is_surjective,
    metric_map,
    metric_violations,
    sup_distance,
    subspace,
    validate_space,
)
from .stepspace import (
    compose_pushforward,
    dirac_const,
    integral_metric,
    phi_n_witness,
    select_preimage,
    step_function,
)

TAGS = (
    "(a)", "(b)", "(c)", "(d)", "(e)", "(f)", "(g)", "(h)", "(i)",
    "(Λ1)", "(Λ2)", "(Λ3)", "(Λ4)", "(Λ5)",
    "plumbing",
)

SUITE_NAMES = ("metric", "measure", "kantorovich", "scheme", "step")

MAX_WITNESSES = 3


@dataclass
class RunConfig:
    """Everything a check run depends on; echoed into the report."""

    mode: Mode = EXACT
    seed: int = 0
    trials: int = 100
    n: int = 4
    k: int = 2
    inject_glue_defect: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")

    def as_dict(self) -> dict:
        out = {
            "mode": self.mode.kind,
            "seed": str(self.seed),
            "trials": str(self.trials),
            "n": str(self.n),
            "k": str(self.k),
        }
        if not self.mode.is_exact:
            out["tolerance"] = repr(self.mode.tolerance)
        if self.inject_glue_defect:
            out["inject_glue_defect"] = "true"
        return out


@dataclass
class CheckRecord:
    name: str
    tag: str
    instances: int = 0
    failures: list = field(default_factory=list)

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown tag {self.tag!r}")

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, instance: int, **witness) -> None:
        if len(self.failures) < MAX_WITNESSES:
            entry = {"instance": str(instance)}
            entry.update({k: v for k, v in witness.items()})
            self.failures.append(entry)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "tag": self.tag,
            "instances": str(self.instances),
            "failures": self.failures,
        }


@dataclass
class Report:
    command: str
    config: RunConfig
    records: list[CheckRecord]
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def as_dict(self) -> dict:
        """Canonical serializable form (duration intentionally excluded)."""
        return {
            "command": self.command,
            "config": self.config.as_dict(),
            "records": [r.as_dict() for r in self.records],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"


def _fmt(value) -> str:
    return format_number(value)


# ---------------------------------------------------------------------------
# shrinking helpers


def shrink_space(
    space: FiniteMetricSpace,
    still_fails: Callable[[FiniteMetricSpace], bool],
) -> FiniteMetricSpace:
    """Greedily drop points while the failure persists."""
    current = space
    changed = True
    while changed and len(current.points) > 1:
        changed = False
        for p in current.points:
            keep = tuple(q for q in current.points if q != p)
            candidate = subspace(current, keep)
            try:
                if still_fails(candidate):
                    current = candidate
                    changed = True
                    break
            except ZfunError:
                continue
    return current


def shrink_matrix_violation(points, matrix, mode: Mode) -> tuple[tuple[str, ...], str]:
    """Smallest point subset still violating some axiom, plus the axiom name."""
    pts = list(points)
    rows = [list(r) for r in matrix]

    def violations_of(sub: list[int]):
        sub_pts = [pts[i] for i in sub]
        sub_rows = [[rows[i][j] for j in sub] for i in sub]
        return metric_violations(sub_pts, sub_rows, mode)

    current = list(range(len(pts)))
    changed = True
    while changed and len(current) > 1:
        changed = False
        for i in current:
            cand = [j for j in current if j != i]
            if violations_of(cand):
                current = cand
                changed = True
                break
    found = violations_of(current)
    return tuple(pts[i] for i in current), found[0][0] if found else "none"


# ---------------------------------------------------------------------------
# metric suite


def _check_axiom_detection(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("axiom-detection", "plumbing")
    rng = generate.rng_for(cfg.seed, "metric:axiom-detection")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        space = generate.random_space(rng, rng.randint(2, 6), mode=mode)
        n = len(space.points)
        i, j = rng.sample(range(n), 2)
        top = diameter(space)
        breakers = {
            "identity": lambda m: m[i].__setitem__(i, mode.one),
            "symmetry": lambda m: m[i].__setitem__(j, m[i][j] + mode.one),
            "positivity": lambda m: (m[i].__setitem__(j, mode.zero),
                                     m[j].__setitem__(i, mode.zero)),
            "triangle": lambda m: (m[i].__setitem__(j, 2 * top + mode.one),
                                   m[j].__setitem__(i, 2 * top + mode.one)),
        }
        for axiom, breaker in breakers.items():
            if axiom == "triangle" and n < 3:
                continue
            matrix = [list(row) for row in space.dist]
            breaker(matrix)
            try:
                validate_space(space.points, matrix, mode)
            except AxiomViolation as exc:
                tags = {a for a, _ in exc.violations}
                if axiom not in tags:
                    rec.fail(trial, mutated=axiom, detected=sorted(tags))
            else:
                shrunk, found = shrink_matrix_violation(space.points, matrix, mode)
                rec.fail(trial, mutated=axiom, detected="nothing",
                         shrunk_points=list(shrunk), shrunk_axiom=found)
    return rec


def _random_anchor(rng, mode: Mode, trial: int) -> FiniteMetricSpace | None:
    """None means the default two-point anchor."""
    if trial % 3 != 2:
        return None
    raw = generate.random_space(rng, rng.randint(2, 3), prefix="ω:a", mode=mode)
    return generate.normalize_diameter(raw, mode)


def _check_glue_blocks(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("glue-restriction-and-cross", "(Λ4)")
    rng = generate.rng_for(cfg.seed, "metric:glue-blocks")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        space = generate.random_space(rng, rng.randint(1, 5), mode=mode)
        anchor = _random_anchor(rng, mode, trial)
        glued = glue_space(space, anchor, mode)
        anc = anchor if anchor is not None else default_anchor(mode)
        n, m = len(space.points), len(anc.points)
        cross = max(diameter(space), mode.one)
        matrix = [list(row) for row in glued.dist]
        if cfg.inject_glue_defect:
            matrix[n][0] = matrix[0][n] = cross + mode.one
        ok = True
        witness = {}
        for a in range(n):
            for b in range(n):
                if not mode.eq(matrix[a][b], space.dist[a][b]):
                    ok, witness = False, {
                        "block": "restriction",
                        "pair": [glued.points[a], glued.points[b]],
                        "expected": _fmt(space.dist[a][b]),
                        "actual": _fmt(matrix[a][b]),
                    }
        for a in range(m):
            for b in range(m):
                if ok and not mode.eq(matrix[n + a][n + b], anc.dist[a][b]):
                    ok, witness = False, {
                        "block": "anchor",
                        "pair": [glued.points[n + a], glued.points[n + b]],
                        "expected": _fmt(anc.dist[a][b]),
                        "actual": _fmt(matrix[n + a][n + b]),
                    }
        for a in range(n):
            for b in range(m):
                if ok and not (
                    mode.eq(matrix[a][n + b], cross) and mode.eq(matrix[n + b][a], cross)
                ):
                    ok, witness = False, {
                        "block": "cross",
                        "pair": [glued.points[a], glued.points[n + b]],
                        "expected": _fmt(cross),
                        "actual": _fmt(matrix[a][n + b]),
                    }
        if not ok:
            rec.fail(trial, **witness)
    return rec


def _check_glue_diameter(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("glue-diameter", "(i)")
    rng = generate.rng_for(cfg.seed, "metric:glue-diameter")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        space = generate.random_space(rng, rng.randint(1, 6), mode=mode)
        glued = glue_space(space, _random_anchor(rng, mode, trial), mode)
        expected = max(diameter(space), mode.one)
        actual = diameter(glued)
        if not mode.eq(actual, expected):
            rec.fail(trial, expected=_fmt(expected), actual=_fmt(actual))
    return rec


def _check_glue_functor_laws(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("glue-functor-laws", "(Λ1)")
    rng = generate.rng_for(cfg.seed, "metric:glue-functor-laws")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 4), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(1, 4), prefix="b", mode=mode)
        c = generate.random_space(rng, rng.randint(1, 4), prefix="c", mode=mode)
        f = generate.random_map(rng, a, b)
        g = generate.random_map(rng, b, c)
        if glue_map(identity_map(a), None, mode) != identity_map(glue_space(a, None, mode)):
            rec.fail(trial, law="identity", space=list(a.points))
            continue
        lhs = glue_map(compose(g, f), None, mode)
        rhs = compose(glue_map(g, None, mode), glue_map(f, None, mode))
        if lhs != rhs:
            rec.fail(trial, law="composition", domain=list(a.points))
    return rec


def _check_glue_naturality(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("glue-embedding-naturality", "(Λ3)")
    rng = generate.rng_for(cfg.seed, "metric:glue-naturality")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 5), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(1, 5), prefix="b", mode=mode)
        f = generate.random_map(rng, a, b)
        gf = glue_map(f, None, mode)
        for p in a.points:
            if gf(p) != f(p):
                rec.fail(trial, point=p, expected=f(p), actual=gf(p))
                break
        dom_extra = gf.domain.points[len(a.points):]
        cod_extra = gf.codomain.points[len(b.points):]
        for x, y in zip(dom_extra, cod_extra):
            if gf(x) != y:
                rec.fail(trial, anchor_point=x, expected=y, actual=gf(x))
                break
    return rec


def _check_sup_metric_axioms(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("sup-metric-axioms", "plumbing")
    rng = generate.rng_for(cfg.seed, "metric:sup-axioms")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        dom = generate.random_space(rng, rng.randint(1, 4), prefix="a", mode=mode)
        cod = generate.random_space(rng, rng.randint(2, 4), prefix="b", mode=mode)
        f = generate.random_map(rng, dom, cod)
        g = generate.random_map(rng, dom, cod)
        h = generate.random_map(rng, dom, cod)
        if not mode.is_zero(sup_distance(f, f)):
            rec.fail(trial, law="identity")
            continue
        if f != g and not mode.positive(sup_distance(f, g)):
            rec.fail(trial, law="positivity")
            continue
        if not mode.eq(sup_distance(f, g), sup_distance(g, f)):
            rec.fail(trial, law="symmetry")
            continue
        if not mode.leq(sup_distance(f, h), sup_distance(f, g) + sup_distance(g, h)):
            rec.fail(trial, law="triangle")
    return rec


def _check_glue_sup_isometry(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("glue-sup-isometry", "(Λ5)")
    rng = generate.rng_for(cfg.seed, "metric:glue-sup-isometry")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 5), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(2, 5), prefix="b", mode=mode)
        f = generate.random_map(rng, a, b)
        g = generate.random_map(rng, a, b)
        plain = sup_distance(f, g)
        glued = sup_distance(glue_map(f, None, mode), glue_map(g, None, mode))
        if not mode.eq(plain, glued):
            rec.fail(trial, plain=_fmt(plain), glued=_fmt(glued))
    return rec


def metric_suite(cfg: RunConfig) -> list[CheckRecord]:
    return [
        _check_axiom_detection(cfg),
        _check_glue_blocks(cfg),
        _check_glue_diameter(cfg),
        _check_glue_functor_laws(cfg),
        _check_glue_naturality(cfg),
        _check_sup_metric_axioms(cfg),
        _check_glue_sup_isometry(cfg),
    ]


# ---------------------------------------------------------------------------
# measure suite


def _check_mass_conservation(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("mass-conservation", "plumbing")
    rng = generate.rng_for(cfg.seed, "measure:mass")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 5), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(1, 5), prefix="b", mode=mode)
        f = generate.random_map(rng, a, b)
        mu = generate.random_measure(rng, a, mode)
        nu = pushforward(f, mu, mode)
        total = sum((w for _, w in nu.weights), mode.zero)
        if not mode.eq(total, mode.one):
            rec.fail(trial, total=_fmt(total))
        if not set(nu.support()) <= set(image(f)):
            rec.fail(trial, stray=sorted(set(nu.support()) - set(image(f))))
    return rec


def _check_push_functor_laws(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("pushforward-functor-laws", "(Λ1)")
    rng = generate.rng_for(cfg.seed, "measure:functor-laws")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 4), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(1, 4), prefix="b", mode=mode)
        c = generate.random_space(rng, rng.randint(1, 4), prefix="c", mode=mode)
        f = generate.random_map(rng, a, b)
        g = generate.random_map(rng, b, c)
        mu = generate.random_measure(rng, a, mode)
        if not measures_equal(pushforward(identity_map(a), mu, mode), mu, mode):
            rec.fail(trial, law="identity")
            continue
        lhs = pushforward(compose(g, f), mu, mode)
        rhs = pushforward(g, pushforward(f, mu, mode), mode)
        if not measures_equal(lhs, rhs, mode):
            rec.fail(trial, law="composition")
    return rec


def _check_dirac_naturality(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("dirac-naturality", "(Λ3)")
    rng = generate.rng_for(cfg.seed, "measure:dirac-naturality")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 5), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(1, 5), prefix="b", mode=mode)
        f = generate.random_map(rng, a, b)
        for p in a.points:
            if not measures_equal(
                pushforward(f, dirac(a, p, mode), mode), dirac(b, f(p), mode), mode
            ):
                rec.fail(trial, point=p)
                break
    return rec


def _check_affinity(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("pushforward-affinity", "plumbing")
    rng = generate.rng_for(cfg.seed, "measure:affinity")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 5), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(1, 5), prefix="b", mode=mode)
        f = generate.random_map(rng, a, b)
        mu = generate.random_measure(rng, a, mode)
        nu = generate.random_measure(rng, a, mode)
        t = Fraction(rng.randint(0, 10), 10)
        lhs = pushforward(f, convex_combination(t, mu, nu, mode), mode)
        rhs = convex_combination(
            t, pushforward(f, mu, mode), pushforward(f, nu, mode), mode
        )
        if not measures_equal(lhs, rhs, mode):
            rec.fail(trial, coefficient=_fmt(mode.convert(t)))
    return rec


def _check_change_of_variables(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("change-of-variables", "plumbing")
    rng = generate.rng_for(cfg.seed, "measure:change-of-variables")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 5), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(1, 5), prefix="b", mode=mode)
        f = generate.random_map(rng, a, b)
        mu = generate.random_measure(rng, a, mode)
        g = {
            q: mode.convert(Fraction(rng.randint(-20, 20), rng.randint(1, 5)))
            for q in b.points
        }
        lhs, rhs = change_of_variables_check(f, mu, g, mode)
        if not mode.eq(lhs, rhs):
            rec.fail(trial, lhs=_fmt(lhs), rhs=_fmt(rhs))
    return rec


def _check_image_characterization(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("image-characterization", "(d)")
    rng = generate.rng_for(cfg.seed, "measure:image")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 4), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(1, 4), prefix="b", mode=mode)
        f = generate.random_map(rng, a, b)
        if trial % 2 == 0:
            nu = pushforward(f, generate.random_measure(rng, a, mode), mode)
        else:
            nu = generate.random_measure(rng, b, mode)
        witness = preimage_measure(f, nu, mode)
        claimed = in_image(f, nu, mode)
        if claimed != (witness is not None):
            rec.fail(trial, in_image=claimed, witness_found=witness is not None)
            continue
        if witness is not None and not measures_equal(
            pushforward(f, witness, mode), nu, mode
        ):
            rec.fail(trial, round_trip="pushforward of witness differs")
    return rec


def _check_injectivity_transfer(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("injectivity-transfer", "(c)")
    rng = generate.rng_for(cfg.seed, "measure:injectivity")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 4), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(1, 4), prefix="b", mode=mode)
        f = generate.random_map(rng, a, b)
        if not injectivity_transfer_check(f, mode):
            rec.fail(trial, map=f.as_dict())
    return rec


def _check_surjectivity_transfer(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("surjectivity-transfer", "(e)")
    rng = generate.rng_for(cfg.seed, "measure:surjectivity")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 4), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(1, 4), prefix="b", mode=mode)
        f = generate.random_map(rng, a, b)
        surjective = is_surjective(f)
        dirac_hits = all(in_image(f, dirac(b, q, mode), mode) for q in b.points)
        if surjective != dirac_hits:
            rec.fail(trial, surjective=surjective, every_dirac_hit=dirac_hits)
    return rec


def measure_suite(cfg: RunConfig) -> list[CheckRecord]:
    return [
        _check_mass_conservation(cfg),
        _check_push_functor_laws(cfg),
        _check_dirac_naturality(cfg),
        _check_affinity(cfg),
        _check_change_of_variables(cfg),
        _check_image_characterization(cfg),
        _check_injectivity_transfer(cfg),
        _check_surjectivity_transfer(cfg),
    ]


# ---------------------------------------------------------------------------
# kantorovich suite


def _check_duality_gap(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("duality-gap", "plumbing")
    rng = generate.rng_for(cfg.seed, "kantorovich:duality")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        size = 2 + trial % 7
        space = generate.random_space(rng, size, mode=mode)
        mu = generate.random_measure(rng, space, mode)
        nu = generate.random_measure(rng, space, mode)
        dual, potential = kantorovich_dual(mu, nu, mode)
        primal, plan = kantorovich_primal(mu, nu, mode)
        if not mode.eq(primal - dual, mode.zero):
            rec.fail(trial, gap=_fmt(primal - dual), size=str(size))
            continue
        if not mode.eq(potential_gap(potential, mu, nu), dual):
            rec.fail(trial, certificate="potential does not attain the optimum")
            continue
        if not mode.eq(plan.cost(), primal):
            rec.fail(trial, certificate="plan cost differs from the optimum")
    return rec


def _check_dirac_isometry(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("dirac-isometry", "(Λ4)")
    rng = generate.rng_for(cfg.seed, "kantorovich:dirac-isometry")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        space = generate.random_space(rng, rng.randint(2, 6), mode=mode)
        p, q = rng.sample(space.points, 2)
        value = kantorovich(dirac(space, p, mode), dirac(space, q, mode), mode)
        if not mode.eq(value, space.distance(p, q)):
            rec.fail(trial, pair=[p, q], kantorovich=_fmt(value),
                     distance=_fmt(space.distance(p, q)))
    return rec


def _check_diameter_preservation(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("diameter-preservation", "(i)")
    rng = generate.rng_for(cfg.seed, "kantorovich:diameter")
    mode = cfg.mode
    for trial in range(max(1, cfg.trials // 2)):
        rec.instances += 1
        space = generate.random_space(rng, rng.randint(2, 5), mode=mode)
        dirac_max, diam = measure_diameter_check(space, mode)
        if not mode.eq(dirac_max, diam):
            rec.fail(trial, dirac_max=_fmt(dirac_max), diameter=_fmt(diam))
            continue
        mu = generate.random_measure(rng, space, mode)
        nu = generate.random_measure(rng, space, mode)
        value = kantorovich(mu, nu, mode)
        if not mode.leq(value, diam):
            rec.fail(trial, sampled=_fmt(value), diameter=_fmt(diam))
    return rec


def _check_map_isometry(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("map-pushforward-isometry", "(Λ5)")
    rng = generate.rng_for(cfg.seed, "kantorovich:map-isometry")
    mode = cfg.mode
    for trial in range(max(1, cfg.trials // 2)):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 4), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(2, 4), prefix="b", mode=mode)
        phi = generate.random_map(rng, a, b)
        psi = generate.random_map(rng, a, b)
        sampled = [generate.random_measure(rng, a, mode) for _ in range(2)]
        dirac_max, bound = map_isometry_check(phi, psi, sampled, mode)
        if not mode.eq(dirac_max, bound):
            rec.fail(trial, dirac_max=_fmt(dirac_max), sup_distance=_fmt(bound))
    return rec


def _check_kantorovich_axioms(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("kantorovich-metric-axioms", "plumbing")
    rng = generate.rng_for(cfg.seed, "kantorovich:axioms")
    mode = cfg.mode
    for trial in range(max(1, cfg.trials // 2)):
        rec.instances += 1
        space = generate.random_space(rng, rng.randint(2, 5), mode=mode)
        mu = generate.random_measure(rng, space, mode)
        nu = generate.random_measure(rng, space, mode)
        lam = generate.random_measure(rng, space, mode)
        if not mode.is_zero(kantorovich(mu, mu, mode)):
            rec.fail(trial, law="identity")
            continue
        if mode.is_exact and mu != nu and not kantorovich(mu, nu, mode) > 0:
            rec.fail(trial, law="positivity")
            continue
        if not mode.eq(kantorovich(mu, nu, mode), kantorovich(nu, mu, mode)):
            rec.fail(trial, law="symmetry")
            continue
        if not mode.leq(
            kantorovich(mu, lam, mode),
            kantorovich(mu, nu, mode) + kantorovich(nu, lam, mode),
        ):
            rec.fail(trial, law="triangle")
    return rec


def _check_certificates(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("certificate-feasibility", "plumbing")
    rng = generate.rng_for(cfg.seed, "kantorovich:certificates")
    mode = cfg.mode
    for trial in range(max(1, cfg.trials // 2)):
        rec.instances += 1
        space = generate.random_space(rng, rng.randint(2, 6), mode=mode)
        mu = generate.random_measure(rng, space, mode)
        nu = generate.random_measure(rng, space, mode)
        _, potential = kantorovich_dual(mu, nu, mode)
        _, plan = kantorovich_primal(mu, nu, mode)
        try:
            lipschitz_potential(space, potential.as_dict(), mode)
            transport_plan(mu, nu, plan.matrix, mode)
        except ZfunError as exc:
            rec.fail(trial, rejected=str(exc))
            continue
        base = space.points[0]
        if not mode.is_zero(potential.as_dict()[base]):
            rec.fail(trial, normalization="potential does not vanish at the base point")
    return rec


def _check_convergence_bound(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("pointwise-convergence-bound", "(h)")
    rng = generate.rng_for(cfg.seed, "kantorovich:convergence")
    mode = cfg.mode
    for trial in range(max(1, cfg.trials // 2)):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 4), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(2, 4), prefix="b", mode=mode)
        phi = generate.random_map(rng, a, b)
        psi = generate.random_map(rng, a, b)
        bound = mode.convert(sup_distance(phi, psi))
        mu = generate.random_measure(rng, a, mode)
        value = kantorovich(
            pushforward(phi, mu, mode), pushforward(psi, mu, mode), mode
        )
        if not mode.leq(value, bound):
            rec.fail(trial, pushed=_fmt(value), bound=_fmt(bound))
    return rec


def kantorovich_suite(cfg: RunConfig) -> list[CheckRecord]:
    return [
        _check_duality_gap(cfg),
        _check_dirac_isometry(cfg),
        _check_diameter_preservation(cfg),
        _check_map_isometry(cfg),
        _check_kantorovich_axioms(cfg),
        _check_certificates(cfg),
        _check_convergence_bound(cfg),
    ]


# ---------------------------------------------------------------------------
# scheme suite


def _fixture(cfg: RunConfig, h_seed: int | None = None):
    return build_finite_fixture(cfg.n, cfg.k, cfg.seed, cfg.mode, h_seed=h_seed)


def _family_maps(ctx, rng, count):
    """Random maps between random family members."""
    out = []
    for _ in range(count):
        dom = member_space(ctx, rng.choice(ctx.family))
        cod = member_space(ctx, rng.choice(ctx.family))
        out.append(generate.random_map(rng, dom, cod))
    return out


def _check_fixture_shape(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("fixture-shape", "(Λ2)")
    ctx = _fixture(cfg)
    rec.instances += 1
    if len(ctx.family) != math.comb(cfg.n, cfg.k):
        rec.fail(0, family_size=str(len(ctx.family)))
    if set(ctx.pad.points) & set(ctx.ambient.points):
        rec.fail(0, overlap=sorted(set(ctx.pad.points) & set(ctx.ambient.points)))
    for member in ctx.family:
        padded = member + ctx.pad.points
        if len(padded) != len(ctx.ambient.points):
            rec.fail(0, member=list(member), padded_size=str(len(padded)))
            break
        chart = ctx.chart(member)
        if sorted(chart.values()) != sorted(ctx.ambient.points):
            rec.fail(0, member=list(member), chart="not a bijection onto ambient")
            break
        if {chart[x] for x in member} != set(member):
            rec.fail(0, member=list(member), chart="member not carried onto itself")
            break
    return rec


def _check_extension_restricts(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("extension-restricts", "(b)")
    ctx = _fixture(cfg)
    rng = generate.rng_for(cfg.seed, "scheme:restricts")
    mode = cfg.mode
    for trial, phi in enumerate(_family_maps(ctx, rng, cfg.trials)):
        rec.instances += 1
        result = extend_map(ctx, phi)
        for x in phi.domain.points:
            if result.extension(x) != phi(x):
                rec.fail(trial, point=x, original=phi(x), extended=result.extension(x))
                break
    return rec


def _check_extension_functor_laws(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("extension-functor-laws", "(a)")
    ctx = _fixture(cfg)
    rng = generate.rng_for(cfg.seed, "scheme:functor-laws")
    for trial in range(cfg.trials):
        rec.instances += 1
        k_sp = member_space(ctx, rng.choice(ctx.family))
        l_sp = member_space(ctx, rng.choice(ctx.family))
        m_sp = member_space(ctx, rng.choice(ctx.family))
        phi = generate.random_map(rng, k_sp, l_sp)
        psi = generate.random_map(rng, l_sp, m_sp)
        if extend_map(ctx, identity_map(k_sp)).extension != identity_map(ctx.ambient):
            rec.fail(trial, law="identity", member=list(k_sp.points))
            continue
        lhs = extend_map(ctx, compose(psi, phi)).extension
        rhs = compose(extend_map(ctx, psi).extension, extend_map(ctx, phi).extension)
        if lhs != rhs:
            rec.fail(trial, law="composition", domain=list(k_sp.points))
    return rec


def _check_scheme_transfers(cfg: RunConfig) -> list[CheckRecord]:
    inj = CheckRecord("extension-injectivity-transfer", "(c)")
    img = CheckRecord("extension-image", "(d)")
    surj = CheckRecord("extension-surjectivity-transfer", "(e)")
    ctx = _fixture(cfg)
    rng = generate.rng_for(cfg.seed, "scheme:transfers")
    for trial, phi in enumerate(_family_maps(ctx, rng, cfg.trials)):
        inj.instances += 1
        img.instances += 1
        surj.instances += 1
        hat = extend_map(ctx, phi).extension
        if is_injective(hat) != is_injective(phi):
            inj.fail(trial, original=is_injective(phi), extension=is_injective(hat))
        cod = set(phi.codomain.points)
        hat_image = set(image(hat))
        expected = set(image(phi)) | (set(ctx.ambient.points) - cod)
        if hat_image != expected:
            img.fail(trial, image=sorted(hat_image), expected=sorted(expected))
        if (hat_image & cod) != set(image(phi)):
            img.fail(trial, trace=sorted(hat_image & cod), expected=sorted(image(phi)))
        if is_surjective(hat) != is_surjective(phi):
            surj.fail(trial, original=is_surjective(phi), extension=is_surjective(hat))
    return [inj, img, surj]


def _check_metric_extension(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("metric-extension", "(i)")
    ctx = _fixture(cfg)
    rng = generate.rng_for(cfg.seed, "scheme:metric-extension")
    mode = cfg.mode
    for trial in range(max(1, cfg.trials // 2)):
        rec.instances += 1
        member = rng.choice(ctx.family)
        d = generate.random_space(rng, len(member), labels=member, mode=mode)
        extended = extend_metric(ctx, member, d)
        ok = True
        for x in member:
            for y in member:
                if not mode.eq(extended.distance(x, y), d.distance(x, y)):
                    rec.fail(trial, pair=[x, y],
                             expected=_fmt(d.distance(x, y)),
                             actual=_fmt(extended.distance(x, y)))
                    ok = False
                    break
            if not ok:
                break
        if ok:
            expected_diam = max(diameter(d), mode.one)
            if not mode.eq(diameter(extended), expected_diam):
                rec.fail(trial, diameter=_fmt(diameter(extended)),
                         expected=_fmt(expected_diam))
    return rec


def _check_extension_isometry(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("extension-isometry", "(i)")
    ctx = _fixture(cfg)
    rng = generate.rng_for(cfg.seed, "scheme:extension-isometry")
    mode = cfg.mode
    for trial in range(max(1, cfg.trials // 2)):
        rec.instances += 1
        dom_member = rng.choice(ctx.family)
        cod_member = rng.choice(ctx.family)
        dom = member_space(ctx, dom_member)
        cod = member_space(ctx, cod_member)
        d = generate.random_space(rng, len(cod_member), labels=cod_member, mode=mode)
        pairs = [
            (generate.random_map(rng, dom, cod), generate.random_map(rng, dom, cod))
            for _ in range(2)
        ]
        for lhs, rhs in extension_isometry_check(ctx, dom_member, cod_member, d, pairs):
            if not mode.eq(lhs, rhs):
                rec.fail(trial, original=_fmt(lhs), extended=_fmt(rhs))
                break
    return rec


def _check_padded_functor(cfg: RunConfig) -> list[CheckRecord]:
    laws = CheckRecord("padded-functor-laws", "(Λ1)")
    natural = CheckRecord("padded-naturality", "(Λ3)")
    isom = CheckRecord("padded-embedding-isometry", "(Λ4)")
    supiso = CheckRecord("padded-sup-isometry", "(Λ5)")
    ctx = _fixture(cfg)
    rng = generate.rng_for(cfg.seed, "scheme:padded")
    mode = cfg.mode
    if len(ctx.pad.points) < 2:
        return [laws, natural, isom, supiso]
    for trial in range(max(1, cfg.trials // 2)):
        for rec in (laws, natural, isom, supiso):
            rec.instances += 1
        k_m = rng.choice(ctx.family)
        l_m = rng.choice(ctx.family)
        m_m = rng.choice(ctx.family)
        k_sp, l_sp, m_sp = (member_space(ctx, m) for m in (k_m, l_m, m_m))
        phi = generate.random_map(rng, k_sp, l_sp)
        psi = generate.random_map(rng, l_sp, m_sp)
        if padded_map(ctx, identity_map(k_sp)) != identity_map(padded_space(ctx, k_m)):
            laws.fail(trial, law="identity")
        elif padded_map(ctx, compose(psi, phi)) != compose(
            padded_map(ctx, psi), padded_map(ctx, phi)
        ):
            laws.fail(trial, law="composition")
        padded_phi = padded_map(ctx, phi)
        if any(padded_phi(x) != phi(x) for x in k_sp.points) or any(
            padded_phi(p) != p for p in ctx.pad.points
        ):
            natural.fail(trial, member=list(k_m))
        padded_k = padded_space(ctx, k_m)
        base = member_space(ctx, k_m)
        bad = [
            (x, y)
            for x in base.points
            for y in base.points
            if not mode.eq(padded_k.distance(x, y), base.distance(x, y))
        ]
        if bad:
            isom.fail(trial, pair=list(bad[0]))
        phi2 = generate.random_map(rng, k_sp, l_sp)
        if not mode.eq(
            sup_distance(phi, phi2),
            sup_distance(padded_map(ctx, phi), padded_map(ctx, phi2)),
        ):
            supiso.fail(trial, member=list(k_m))
    return [laws, natural, isom, supiso]


def _check_chart_independence(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("chart-independence", "plumbing")
    mode = cfg.mode
    rng = generate.rng_for(cfg.seed, "scheme:chart-independence")
    for h_seed in range(3):
        rec.instances += 1
        ctx = _fixture(cfg, h_seed=h_seed)
        phi = _family_maps(ctx, rng, 1)[0]
        result = extend_map(ctx, phi)
        if any(result.extension(x) != phi(x) for x in phi.domain.points):
            rec.fail(h_seed, law="(b) under randomized charts")
            continue
        member = ctx.member(phi.codomain.points)
        if len(ctx.pad.points) >= 2:
            d = generate.random_space(rng, len(member), labels=member, mode=mode)
            extended = extend_metric(ctx, member, d)
            if any(
                not mode.eq(extended.distance(x, y), d.distance(x, y))
                for x in member
                for y in member
            ):
                rec.fail(h_seed, law="(i) under randomized charts")
    return rec


def _check_decomposition(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("decomposition-factorization", "(a)")
    ctx = _fixture(cfg)
    member = ctx.family[0]
    member_sp = member_space(ctx, member)
    bijections = subset_preserving_bijections(ctx, member)
    fixing = pointwise_fixing_bijections(ctx, member)
    seen = set()
    for idx, h in enumerate(bijections):
        rec.instances += 1
        u, v = decompose_automorphism(ctx, member, h)
        if compose(u, v) != h:
            rec.fail(idx, law="u∘v differs from h")
            continue
        if any(u(x) != x for x in member):
            rec.fail(idx, law="u moves a member point")
            continue
        restriction = metric_map(member_sp, member_sp, {x: h(x) for x in member})
        if v != extend_map(ctx, restriction).extension:
            rec.fail(idx, law="v is not the extension of the restriction")
            continue
        if u not in set(fixing):
            rec.fail(idx, law="u is not a pointwise-fixing bijection")
            continue
        seen.add((u.assignment, v.assignment))
    # uniqueness: the factor pairs are distinct and exhaust the product count
    expected = len(fixing) * math.factorial(len(member))
    if len(seen) != len(bijections) or len(bijections) != expected:
        rec.fail(len(bijections), law="factorization is not a bijection",
                 pairs=str(len(seen)), maps=str(len(bijections)),
                 expected=str(expected))
    # homomorphism of the restriction-extension assignment
    for sigma, tau in itertools.islice(
        itertools.product(itertools.permutations(member), repeat=2), 0, 36
    ):
        rec.instances += 1
        f = metric_map(member_sp, member_sp, dict(zip(member, sigma)))
        g = metric_map(member_sp, member_sp, dict(zip(member, tau)))
        lhs = extend_map(ctx, compose(f, g)).extension
        rhs = compose(extend_map(ctx, f).extension, extend_map(ctx, g).extension)
        if lhs != rhs:
            rec.fail(-1, law="extension is not a homomorphism on bijections")
            break
    return rec


def scheme_suite(cfg: RunConfig) -> list[CheckRecord]:
    records = [
        _check_fixture_shape(cfg),
        _check_extension_restricts(cfg),
        _check_extension_functor_laws(cfg),
    ]
    records.extend(_check_scheme_transfers(cfg))
    if cfg.n - cfg.k >= 2:
        records.append(_check_metric_extension(cfg))
        records.append(_check_extension_isometry(cfg))
    records.extend(_check_padded_functor(cfg))
    records.append(_check_chart_independence(cfg))
    records.append(_check_decomposition(cfg))
    return records


# ---------------------------------------------------------------------------
# step suite


def _check_integral_axioms(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("integral-metric-axioms", "plumbing")
    rng = generate.rng_for(cfg.seed, "step:axioms")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        target = generate.random_space(rng, rng.randint(2, 5), mode=mode)
        f = generate.random_step_function(rng, target, mode=mode)
        g = generate.random_step_function(rng, target, mode=mode)
        h = generate.random_step_function(rng, target, mode=mode)
        if not mode.is_zero(integral_metric(f, f, mode)):
            rec.fail(trial, law="identity")
            continue
        if mode.is_exact and f != g and not integral_metric(f, g, mode) > 0:
            rec.fail(trial, law="positivity")
            continue
        if not mode.eq(integral_metric(f, g, mode), integral_metric(g, f, mode)):
            rec.fail(trial, law="symmetry")
            continue
        if not mode.leq(
            integral_metric(f, h, mode),
            integral_metric(f, g, mode) + integral_metric(g, h, mode),
        ):
            rec.fail(trial, law="triangle")
    return rec


def _check_constant_isometry(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("constant-embedding-isometry", "(Λ4)")
    rng = generate.rng_for(cfg.seed, "step:constants")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        target = generate.random_space(rng, rng.randint(2, 6), mode=mode)
        p, q = rng.sample(target.points, 2)
        value = integral_metric(
            dirac_const(target, p, mode), dirac_const(target, q, mode), mode
        )
        if not mode.eq(value, target.distance(p, q)):
            rec.fail(trial, pair=[p, q], integral=_fmt(value),
                     distance=_fmt(target.distance(p, q)))
    return rec


def _check_step_functor_laws(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("pushforward-functor-laws", "(Λ1)")
    rng = generate.rng_for(cfg.seed, "step:functor-laws")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 4), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(1, 4), prefix="b", mode=mode)
        c = generate.random_space(rng, rng.randint(1, 4), prefix="c", mode=mode)
        f = generate.random_map(rng, a, b)
        g = generate.random_map(rng, b, c)
        u = generate.random_step_function(rng, a, mode=mode)
        if compose_pushforward(identity_map(a), u, mode) != u:
            rec.fail(trial, law="identity")
            continue
        lhs = compose_pushforward(compose(g, f), u, mode)
        rhs = compose_pushforward(g, compose_pushforward(f, u, mode), mode)
        if lhs != rhs:
            rec.fail(trial, law="composition")
    return rec


def _check_step_naturality(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("pushforward-naturality", "(Λ3)")
    rng = generate.rng_for(cfg.seed, "step:naturality")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 5), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(1, 5), prefix="b", mode=mode)
        f = generate.random_map(rng, a, b)
        x = rng.choice(a.points)
        lhs = compose_pushforward(f, dirac_const(a, x, mode), mode)
        if lhs != dirac_const(b, f(x), mode):
            rec.fail(trial, point=x)
    return rec


def _check_step_sup_bound(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("pushforward-sup-bound", "(Λ5)")
    rng = generate.rng_for(cfg.seed, "step:sup-bound")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 4), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(2, 4), prefix="b", mode=mode)
        phi = generate.random_map(rng, a, b)
        psi = generate.random_map(rng, a, b)
        bound = mode.convert(sup_distance(phi, psi))
        u = generate.random_step_function(rng, a, mode=mode)
        value = integral_metric(
            compose_pushforward(phi, u, mode), compose_pushforward(psi, u, mode), mode
        )
        if not mode.leq(value, bound):
            rec.fail(trial, pushed=_fmt(value), bound=_fmt(bound))
            continue
        attained = max(
            integral_metric(
                compose_pushforward(phi, dirac_const(a, x, mode), mode),
                compose_pushforward(psi, dirac_const(a, x, mode), mode),
                mode,
            )
            for x in a.points
        )
        if not mode.eq(attained, bound):
            rec.fail(trial, constants_attain=_fmt(attained), bound=_fmt(bound))
    return rec


def _check_head_witness(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("head-witness", "(g)")
    rng = generate.rng_for(cfg.seed, "step:head-witness")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        target = generate.random_space(rng, rng.randint(2, 5), mode=mode)
        f = generate.random_step_function(rng, target, mode=mode)
        a = rng.choice(target.points)
        n = rng.randint(1, 64)
        witness = phi_n_witness(a, n, f, mode)
        bound = diameter(target) * (Fraction(1, n) if mode.is_exact else 1.0 / n)
        if not mode.leq(integral_metric(witness, f, mode), bound):
            rec.fail(trial, distance=_fmt(integral_metric(witness, f, mode)),
                     bound=_fmt(bound))
            continue
        if witness.values[0] != a:
            rec.fail(trial, head=witness.values[0], expected=a)
            continue
        others = tuple(p for p in target.points if p != a)
        g = generate.random_step_function(rng, target, mode=mode)
        avoiding = step_function(
            target, g.breakpoints, tuple(rng.choice(others) for _ in g.values), mode
        )
        min_off = min(target.distance(a, b) for b in others)
        head = Fraction(1, n) if mode.is_exact else 1.0 / n
        if not mode.leq(head * min_off, integral_metric(witness, avoiding, mode)):
            rec.fail(trial, separation=_fmt(integral_metric(witness, avoiding, mode)),
                     lower_bound=_fmt(head * min_off))
    return rec


def _check_selection_round_trip(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("preimage-selection-round-trip", "(d)")
    rng = generate.rng_for(cfg.seed, "step:selection")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        a = generate.random_space(rng, rng.randint(1, 4), prefix="a", mode=mode)
        b = generate.random_space(rng, rng.randint(1, 4), prefix="b", mode=mode)
        f = generate.random_map(rng, a, b)
        u = generate.random_step_function(rng, a, mode=mode)
        v = compose_pushforward(f, u, mode)
        w = select_preimage(f, v, mode)
        if compose_pushforward(f, w, mode) != v:
            rec.fail(trial, law="round trip")
            continue
        first = {}
        for p in a.points:
            first.setdefault(f(p), p)
        if any(first[v_val] != w_val for v_val, w_val in zip(v.values, w.values)):
            rec.fail(trial, law="least-index selection")
    return rec


def _check_step_diameter(cfg: RunConfig) -> CheckRecord:
    rec = CheckRecord("step-diameter", "(i)")
    rng = generate.rng_for(cfg.seed, "step:diameter")
    mode = cfg.mode
    for trial in range(cfg.trials):
        rec.instances += 1
        target = generate.random_space(rng, rng.randint(2, 5), mode=mode)
        diam = mode.convert(diameter(target))
        f = generate.random_step_function(rng, target, mode=mode)
        g = generate.random_step_function(rng, target, mode=mode)
        if not mode.leq(integral_metric(f, g, mode), diam):
            rec.fail(trial, distance=_fmt(integral_metric(f, g, mode)),
                     diameter=_fmt(diam))
            continue
        attained = max(
            integral_metric(
                dirac_const(target, p, mode), dirac_const(target, q, mode), mode
            )
            for p in target.points
            for q in target.points
        )
        if not mode.eq(attained, diam):
            rec.fail(trial, attained=_fmt(attained), diameter=_fmt(diam))
    return rec


def step_suite(cfg: RunConfig) -> list[CheckRecord]:
    return [
        _check_integral_axioms(cfg),
        _check_constant_isometry(cfg),
        _check_step_functor_laws(cfg),
        _check_step_naturality(cfg),
        _check_step_sup_bound(cfg),
        _check_head_witness(cfg),
        _check_selection_round_trip(cfg),
        _check_step_diameter(cfg),
    ]


# ---------------------------------------------------------------------------
# runners


_SUITES = {
    "metric": metric_suite,
    "measure": measure_suite,
    "kantorovich": kantorovich_suite,
    "scheme": scheme_suite,
    "step": step_suite,
}


def run_suite(name: str, cfg: RunConfig) -> Report:
    """Run one named suite (or "all") and wrap the records in a report."""
    start = time.monotonic()
    if name == "all":
        records = []
        for suite_name in SUITE_NAMES:
            for record in _SUITES[suite_name](cfg):
                record.name = f"{suite_name}/{record.name}"
                records.append(record)
    elif name in _SUITES:
        records = _SUITES[name](cfg)
    else:
        raise ValueError(f"unknown suite {name!r}; pick from {SUITE_NAMES + ('all',)}")
    return Report(f"check {name}", cfg, records, time.monotonic() - start)
