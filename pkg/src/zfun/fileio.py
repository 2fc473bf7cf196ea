"""JSON file formats for spaces, maps, measures and step functions.

Numbers are always serialized as strings ("3/2", "0.25") so exact values
survive round trips.  Fields holding a sub-object (a map's domain, a measure's
space) accept either an inline object or a path string, resolved relative to
the referencing file.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import FormatError
from .kantorovich import LipschitzPotential, TransportPlan
from .measures import ProbMeasure, prob_measure
from .numbers import EXACT, Mode, format_number
from .spaces import FiniteMetricSpace, MetricMap, metric_map, validate_space
from .stepspace import StepFunction, step_function


def load_json(path: str | Path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def _resolve(obj, base: Path | None):
    """Inline object, or a path string to load (relative to ``base``)."""
    if isinstance(obj, str):
        path = Path(obj)
        if base is not None and not path.is_absolute():
            path = base / path
        return load_json(path), path.parent
    return obj, base


def _require_keys(obj, keys, what: str) -> None:
    if not isinstance(obj, dict):
        raise FormatError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"{what} is missing keys: {missing}")


def space_from_obj(obj, mode: Mode = EXACT, base: Path | None = None) -> FiniteMetricSpace:
    obj, _ = _resolve(obj, base)
    _require_keys(obj, ("points", "dist"), "a space")
    points = obj["points"]
    dist = obj["dist"]
    if not isinstance(points, list) or not isinstance(dist, list):
        raise FormatError("'points' must be a list and 'dist' a list of lists")
    return validate_space(points, dist, mode)


def space_to_obj(space: FiniteMetricSpace) -> dict:
    return {
        "points": list(space.points),
        "dist": [[format_number(v) for v in row] for row in space.dist],
    }


def load_space(path: str | Path, mode: Mode = EXACT) -> FiniteMetricSpace:
    return space_from_obj(load_json(path), mode, Path(path).parent)


def map_from_obj(obj, mode: Mode = EXACT, base: Path | None = None) -> MetricMap:
    obj, _ = _resolve(obj, base)
    _require_keys(obj, ("domain", "codomain", "assignment"), "a map")
    domain = space_from_obj(obj["domain"], mode, base)
    codomain = space_from_obj(obj["codomain"], mode, base)
    assignment = obj["assignment"]
    if not isinstance(assignment, dict):
        raise FormatError("'assignment' must be an object of label pairs")
    return metric_map(domain, codomain, assignment)


def map_to_obj(f: MetricMap) -> dict:
    return {
        "domain": space_to_obj(f.domain),
        "codomain": space_to_obj(f.codomain),
        "assignment": f.as_dict(),
    }


def load_map(path: str | Path, mode: Mode = EXACT) -> MetricMap:
    return map_from_obj(load_json(path), mode, Path(path).parent)


def measure_from_obj(obj, mode: Mode = EXACT, base: Path | None = None) -> ProbMeasure:
    obj, _ = _resolve(obj, base)
    _require_keys(obj, ("space", "weights"), "a measure")
    space = space_from_obj(obj["space"], mode, base)
    weights = obj["weights"]
    if not isinstance(weights, dict):
        raise FormatError("'weights' must be an object mapping labels to numbers")
    return prob_measure(space, weights, mode)


def measure_to_obj(mu: ProbMeasure) -> dict:
    return {
        "space": space_to_obj(mu.space),
        "weights": {p: format_number(w) for p, w in mu.weights},
    }


def load_measure(path: str | Path, mode: Mode = EXACT) -> ProbMeasure:
    return measure_from_obj(load_json(path), mode, Path(path).parent)


def step_from_obj(obj, mode: Mode = EXACT, base: Path | None = None) -> StepFunction:
    obj, _ = _resolve(obj, base)
    _require_keys(obj, ("target", "breakpoints", "values"), "a step function")
    target = space_from_obj(obj["target"], mode, base)
    if not isinstance(obj["breakpoints"], list) or not isinstance(obj["values"], list):
        raise FormatError("'breakpoints' and 'values' must be lists")
    return step_function(target, obj["breakpoints"], obj["values"], mode)


def step_to_obj(u: StepFunction) -> dict:
    return {
        "target": space_to_obj(u.target),
        "breakpoints": [format_number(t) for t in u.breakpoints],
        "values": list(u.values),
    }


def load_step(path: str | Path, mode: Mode = EXACT) -> StepFunction:
    return step_from_obj(load_json(path), mode, Path(path).parent)


def potential_to_obj(f: LipschitzPotential) -> dict:
    return {p: format_number(v) for p, v in f.values}


def plan_to_obj(plan: TransportPlan) -> dict:
    return {
        "points": list(plan.source.space.points),
        "matrix": [[format_number(v) for v in row] for row in plan.matrix],
    }


def dump_json(obj, path: str | Path | None) -> str:
    """Serialize canonically; write to ``path`` when given.  Returns the text."""
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    return text
