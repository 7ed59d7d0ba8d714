"""JSON serialization of theories and measurements.

Coordinates are written as decimal strings with 17 significant digits, which
round-trips float64 exactly.  A theory file stores the vertex list, the unit
functional, and optionally the dual rays; when the rays are absent they are
recovered by facet enumeration.  Parsing and semantic validation are separate
stages so callers can distinguish malformed files from invalid objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .core import (
    Measurement,
    Polytope,
    Theory,
    dual_rays_from_vertices,
    is_valid_measurement,
    validate_theory,
)
from .errors import InputError, ParseError, ValidationError
from .linalg import EPS


def _num_to_str(x: float) -> str:
    return format(float(x), ".17g")


def _matrix_to_str(rows: np.ndarray) -> list[list[str]]:
    return [[_num_to_str(x) for x in row] for row in rows]


def _parse_number(value, where: str) -> float:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a number, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            raise ParseError(f"{where}: {value!r} is not a number") from None
    raise ParseError(f"{where}: expected a number or numeric string")


def _parse_matrix(value, where: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise ParseError(f"{where}: expected a non-empty list of rows")
    width = None
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or not row:
            raise ParseError(f"{where}[{i}]: expected a non-empty coordinate list")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"{where}[{i}]: expected {width} coordinates, got {len(row)}")
        rows.append([_parse_number(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return np.array(rows, dtype=float)


def _parse_vector(value, where: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise ParseError(f"{where}: expected a non-empty list of numbers")
    return np.array([_parse_number(x, f"{where}[{j}]") for j, x in enumerate(value)])


@dataclass(frozen=True)
class TheoryFile:
    name: str
    ambient_dim: int
    vertices: np.ndarray
    unit: np.ndarray
    dual_rays: np.ndarray | None


@dataclass(frozen=True)
class MeasurementFile:
    outcomes: tuple
    effects: np.ndarray


def _load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError:
        raise
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be a JSON object")
    return data


def parse_theory_file(path) -> TheoryFile:
    data = _load_json(path)
    for key in ("name", "ambient_dim", "vertices", "unit"):
        if key not in data:
            raise ParseError(f"{path}: missing required field {key!r}")
    name = data["name"]
    if not isinstance(name, str) or not name:
        raise ParseError(f"{path}: 'name' must be a non-empty string")
    dim = data["ambient_dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"{path}: 'ambient_dim' must be a positive integer")
    vertices = _parse_matrix(data["vertices"], f"{path}: vertices")
    unit = _parse_vector(data["unit"], f"{path}: unit")
    if vertices.shape[1] != dim:
        raise ParseError(f"{path}: vertices have {vertices.shape[1]} coordinates, expected {dim}")
    if unit.shape != (dim,):
        raise ParseError(f"{path}: unit has {unit.shape[0]} coordinates, expected {dim}")
    rays = None
    if data.get("dual_rays") is not None:
        rays = _parse_matrix(data["dual_rays"], f"{path}: dual_rays")
        if rays.shape[1] != dim:
            raise ParseError(f"{path}: dual_rays have {rays.shape[1]} coordinates, expected {dim}")
    return TheoryFile(name, dim, vertices, unit, rays)


def theory_from_file(path, tol: float = EPS) -> Theory:
    """Load, complete (rays via facet enumeration if needed), and validate."""
    tf = parse_theory_file(path)
    try:
        if tf.dual_rays is None:
            rays = dual_rays_from_vertices(tf.vertices, tf.unit, tol)
        else:
            vals = tf.vertices @ tf.dual_rays.T
            tops = vals.max(axis=0)
            if vals.min() < -tol:
                raise InputError("a dual ray is negative on a vertex")
            if tops.min() <= tol:
                raise InputError("a dual ray vanishes on the whole state space")
            # rescale only rays that are visibly unnormalized, so writing and
            # re-reading a normalized theory preserves the exact bits
            scale = np.where(np.abs(tops - 1.0) <= 1e-12, 1.0, tops)
            rays = tf.dual_rays / scale[:, None]
        theory = Theory(tf.name, tf.ambient_dim, tf.unit, Polytope(tf.vertices, rays))
        validate_theory(theory, tol)
    except InputError as exc:
        raise ValidationError(str(exc)) from None
    return theory


def write_theory(theory: Theory, path) -> None:
    if not isinstance(theory.backend, Polytope):
        raise InputError("only polytope theories are serializable")
    payload = {
        "name": theory.name,
        "ambient_dim": theory.ambient_dim,
        "vertices": _matrix_to_str(theory.backend.extreme_states),
        "unit": [_num_to_str(x) for x in theory.unit],
        "dual_rays": _matrix_to_str(theory.backend.dual_rays),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def parse_measurement_file(path) -> MeasurementFile:
    data = _load_json(path)
    for key in ("outcomes", "effects"):
        if key not in data:
            raise ParseError(f"{path}: missing required field {key!r}")
    outcomes = data["outcomes"]
    if not isinstance(outcomes, list) or not outcomes:
        raise ParseError(f"{path}: 'outcomes' must be a non-empty list")
    for i, label in enumerate(outcomes):
        if not isinstance(label, (str, int)) or isinstance(label, bool):
            raise ParseError(f"{path}: outcomes[{i}] must be a string or integer")
    effects = _parse_matrix(data["effects"], f"{path}: effects")
    if effects.shape[0] != len(outcomes):
        raise ParseError(
            f"{path}: {len(outcomes)} outcomes but {effects.shape[0]} effect rows"
        )
    return MeasurementFile(tuple(outcomes), effects)


def measurement_from_file(path, theory: Theory, tol: float = EPS) -> Measurement:
    """Load a measurement and validate it against the theory."""
    mf = parse_measurement_file(path)
    if mf.effects.shape[1] != theory.ambient_dim:
        raise ValidationError(
            f"{path}: effects have {mf.effects.shape[1]} coordinates, "
            f"theory needs {theory.ambient_dim}"
        )
    m = Measurement(mf.outcomes, mf.effects)
    if not is_valid_measurement(m, theory, tol):
        raise ValidationError(f"{path}: effects are not a valid measurement on {theory.name}")
    return m


def write_measurement(m: Measurement, path) -> None:
    payload = {
        "outcomes": list(m.outcomes),
        "effects": _matrix_to_str(m.effects),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
