"""Scenario files: named field configurations with a sampling region.

A scenario is a TOML document:

    name = "constant_E1"
    A0 = "-x"
    A1 = "0"
    A2 = "0"
    A3 = "0"
    psi1 = "exp(-i*t)"        # optional seed component
    min_coefficient = 0.5     # optional, default 1e-3

    [region]
    t = [-2.0, 2.0]
    x = [-2.0, 2.0]
    y = [-2.0, 2.0]
    z = [-2.0, 2.0]

A0..A3 are the contravariant potential components as expression text.
min_coefficient asserts a lower bound for |i*F1 + F2| over the region; the
loader does not verify it (that is the generator's and the test suite's job),
it records what the scenario author promises.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter version
    import tomli as tomllib

from . import expressions
from .errors import ExpressionError, ScenarioError

AXES = ("t", "x", "y", "z")

_TOP_KEYS = {"name", "A0", "A1", "A2", "A3", "psi1", "min_coefficient", "region"}

SCENARIO_DIR_ENV = "DIRACELIM_SCENARIO_DIR"


@dataclass(frozen=True)
class Region:
    """An axis-aligned box of spacetime points, bounds inclusive."""

    bounds: tuple  # four (lo, hi) pairs in t, x, y, z order

    def contains(self, point):
        return all(lo <= p <= hi for (lo, hi), p in zip(self.bounds, point))

    def sample(self, rng, count):
        """Draw `count` uniform points; rows are (t, x, y, z)."""
        cols = [rng.uniform(lo, hi, count) for lo, hi in self.bounds]
        return [tuple(float(c[k]) for c in cols) for k in range(count)]


@dataclass(frozen=True)
class Scenario:
    name: str
    potentials: tuple  # four parsed expressions, contravariant A^0..A^3
    region: Region
    psi1: object  # parsed expression or None
    min_coefficient: float
    potential_text: tuple  # the four source strings, kept for round-trips
    psi1_text: str | None


def _require(mapping, key, kind, context):
    if key not in mapping:
        raise ScenarioError(f"{context}: missing required key {key!r}")
    value = mapping[key]
    if not isinstance(value, kind):
        raise ScenarioError(
            f"{context}: key {key!r} must be a {kind.__name__}, got {type(value).__name__}"
        )
    return value


def _parse_field(text, key):
    try:
        return expressions.parse(text)
    except ExpressionError as e:
        raise ScenarioError(f"bad expression for {key!r}: {e}") from e


def scenario_from_mapping(data, context="scenario"):
    if not isinstance(data, dict):
        raise ScenarioError(f"{context}: top level must be a table")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ScenarioError(f"{context}: unknown keys {sorted(unknown)}")
    name = _require(data, "name", str, context)
    potential_text = tuple(_require(data, f"A{mu}", str, context) for mu in range(4))
    potentials = tuple(
        _parse_field(text, f"A{mu}") for mu, text in enumerate(potential_text)
    )

    psi1_text = data.get("psi1")
    if psi1_text is not None and not isinstance(psi1_text, str):
        raise ScenarioError(f"{context}: key 'psi1' must be a str")
    psi1 = _parse_field(psi1_text, "psi1") if psi1_text is not None else None

    min_coefficient = data.get("min_coefficient", 1e-3)
    if isinstance(min_coefficient, bool) or not isinstance(min_coefficient, (int, float)):
        raise ScenarioError(f"{context}: 'min_coefficient' must be a number")
    min_coefficient = float(min_coefficient)
    if min_coefficient < 0:
        raise ScenarioError(f"{context}: 'min_coefficient' must be >= 0")

    region_data = _require(data, "region", dict, context)
    unknown = set(region_data) - set(AXES)
    if unknown:
        raise ScenarioError(f"{context}: unknown region keys {sorted(unknown)}")
    bounds = []
    for axis in AXES:
        pair = _require(region_data, axis, list, f"{context} region")
        if len(pair) != 2 or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair
        ):
            raise ScenarioError(
                f"{context}: region {axis!r} must be a [min, max] pair of numbers"
            )
        lo, hi = float(pair[0]), float(pair[1])
        if not lo <= hi:
            raise ScenarioError(
                f"{context}: region {axis!r} has min {lo} above max {hi}"
            )
        bounds.append((lo, hi))

    return Scenario(
        name=name,
        potentials=potentials,
        region=Region(tuple(bounds)),
        psi1=psi1,
        min_coefficient=min_coefficient,
        potential_text=potential_text,
        psi1_text=psi1_text,
    )


def load_scenario(text):
    """Parse a scenario from TOML text."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ScenarioError(f"not valid TOML: {e}") from e
    return scenario_from_mapping(data)


def load_scenario_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return load_scenario(text)
    except ScenarioError as e:
        raise ScenarioError(f"{path}: {e}") from e


def scenario_to_text(s):
    """Serialize back to TOML; load_scenario(scenario_to_text(s)) == s."""
    lines = [f'name = "{s.name}"']
    for mu, text in enumerate(s.potential_text):
        lines.append(f'A{mu} = "{text}"')
    if s.psi1_text is not None:
        lines.append(f'psi1 = "{s.psi1_text}"')
    lines.append(f"min_coefficient = {s.min_coefficient!r}")
    lines.append("")
    lines.append("[region]")
    for axis, (lo, hi) in zip(AXES, s.region.bounds):
        lines.append(f"{axis} = [{lo!r}, {hi!r}]")
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=1)
def builtin_scenarios():
    """The scenarios shipped with the package, keyed by name."""
    root = resources.files("diracelim") / "scenarios"
    out = {}
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".toml"):
            s = load_scenario(entry.read_text(encoding="utf-8"))
            out[s.name] = s
    return out


def find_scenario(ref):
    """Resolve a scenario reference: builtin name, then a .toml file in
    $DIRACELIM_SCENARIO_DIR by name, then a filesystem path."""
    builtins = builtin_scenarios()
    if ref in builtins:
        return builtins[ref]
    search_dir = os.environ.get(SCENARIO_DIR_ENV)
    if search_dir:
        candidate = os.path.join(search_dir, f"{ref}.toml")
        if os.path.exists(candidate):
            return load_scenario_file(candidate)
    if os.path.exists(ref):
        return load_scenario_file(ref)
    known = ", ".join(sorted(builtins))
    raise ScenarioError(
        f"unknown scenario {ref!r}; built-ins are: {known}. "
        f"A path to a .toml file or a name under ${SCENARIO_DIR_ENV} also works."
    )
