"""Versioned scenario files: JSON in, validated missions out.

Schema (version 1):

    {
      "version": 1,
      "units": "metric" | "geodetic",
      "separation_h": <meters>,
      "missions": [
        {"id": str, "origin": [x, y], "destination": [x, y], "speed": num},
        ...
      ]
    }

Metric scenarios carry coordinates in meters and speeds in m/s. Geodetic
scenarios carry [lat, lon] degrees and speeds in mph; they are projected
onto a local plane about the centroid of all endpoints. Unknown fields are
rejected so typos fail loudly.
"""

import json
import math
from dataclasses import dataclass

from .errors import OutOfProjectionRange, ScenarioFormatError
from .geo import GeoPoint, mph_to_mps, project
from .kinematics import Mission, Vec2

SCENARIO_VERSION = 1
_UNITS = ("metric", "geodetic")
_TOP_KEYS = {"version", "units", "separation_h", "missions"}
_MISSION_KEYS = {"id", "origin", "destination", "speed"}


@dataclass(frozen=True)
class MissionSpec:
    id: str
    origin: tuple[float, float]
    destination: tuple[float, float]
    speed: float


@dataclass(frozen=True)
class ScenarioFile:
    version: int
    units: str
    separation_h: float
    missions: tuple[MissionSpec, ...]


def _number(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioFormatError(f"expected a number, got {value!r}", field)
    v = float(value)
    if not math.isfinite(v):
        raise ScenarioFormatError(f"must be finite, got {v}", field)
    return v


def _point(value, field: str) -> tuple[float, float]:
    if not isinstance(value, list) or len(value) != 2:
        raise ScenarioFormatError(f"expected a [a, b] pair, got {value!r}", field)
    return _number(value[0], field), _number(value[1], field)


def parse_scenario(data: dict) -> ScenarioFile:
    if not isinstance(data, dict):
        raise ScenarioFormatError("scenario must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ScenarioFormatError(f"unknown fields: {sorted(unknown)}")
    missing = _TOP_KEYS - set(data)
    if missing:
        raise ScenarioFormatError(f"missing fields: {sorted(missing)}")
    if data["version"] != SCENARIO_VERSION:
        raise ScenarioFormatError(
            f"unsupported version {data['version']!r} (expected {SCENARIO_VERSION})",
            "version")
    units = data["units"]
    if units not in _UNITS:
        raise ScenarioFormatError(f"units must be one of {_UNITS}, got {units!r}",
                                  "units")
    h = _number(data["separation_h"], "separation_h")
    if h <= 0.0:
        raise ScenarioFormatError(f"must be positive, got {h}", "separation_h")
    raw = data["missions"]
    if not isinstance(raw, list) or not raw:
        raise ScenarioFormatError("missions must be a non-empty list", "missions")
    specs = []
    seen = set()
    for idx, m in enumerate(raw):
        field = f"missions[{idx}]"
        if not isinstance(m, dict):
            raise ScenarioFormatError("mission must be an object", field)
        unknown = set(m) - _MISSION_KEYS
        if unknown:
            raise ScenarioFormatError(f"unknown fields: {sorted(unknown)}", field)
        missing = _MISSION_KEYS - set(m)
        if missing:
            raise ScenarioFormatError(f"missing fields: {sorted(missing)}", field)
        mid = m["id"]
        if not isinstance(mid, str) or not mid:
            raise ScenarioFormatError(f"id must be a non-empty string, got {mid!r}",
                                      field)
        if mid in seen:
            raise ScenarioFormatError(f"duplicate mission id {mid!r}", field)
        seen.add(mid)
        speed = _number(m["speed"], f"{field}.speed")
        if speed <= 0.0:
            raise ScenarioFormatError(f"speed must be positive, got {speed}",
                                      f"{field}.speed")
        specs.append(MissionSpec(id=mid,
                                 origin=_point(m["origin"], f"{field}.origin"),
                                 destination=_point(m["destination"],
                                                    f"{field}.destination"),
                                 speed=speed))
    return ScenarioFile(version=SCENARIO_VERSION, units=units,
                        separation_h=h, missions=tuple(specs))


def read_scenario(path) -> ScenarioFile:
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as exc:
        raise ScenarioFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(f"invalid JSON: {exc}") from exc
    return parse_scenario(data)


def scenario_to_dict(sf: ScenarioFile) -> dict:
    return {
        "version": sf.version,
        "units": sf.units,
        "separation_h": sf.separation_h,
        "missions": [
            {"id": m.id, "origin": list(m.origin),
             "destination": list(m.destination), "speed": m.speed}
            for m in sf.missions
        ],
    }


def write_scenario(sf: ScenarioFile, path) -> None:
    with open(path, "w") as f:
        json.dump(scenario_to_dict(sf), f, indent=2)
        f.write("\n")


def to_missions(sf: ScenarioFile) -> list[Mission]:
    """Materialize missions in meters/seconds, projecting geodetic input."""
    if sf.units == "metric":
        try:
            return [Mission(id=m.id, origin=Vec2(*m.origin),
                            destination=Vec2(*m.destination), speed=m.speed)
                    for m in sf.missions]
        except ValueError as exc:
            raise ScenarioFormatError(str(exc)) from exc
    points = []
    for m in sf.missions:
        points.append(m.origin)
        points.append(m.destination)
    try:
        geos = [GeoPoint(lat, lon) for lat, lon in points]
    except ValueError as exc:
        raise ScenarioFormatError(str(exc)) from exc
    ref = GeoPoint(sum(g.lat for g in geos) / len(geos),
                   sum(g.lon for g in geos) / len(geos))
    try:
        return [Mission(id=m.id,
                        origin=project(GeoPoint(*m.origin), ref),
                        destination=project(GeoPoint(*m.destination), ref),
                        speed=mph_to_mps(m.speed))
                for m in sf.missions]
    except (ValueError, OutOfProjectionRange) as exc:
        raise ScenarioFormatError(str(exc)) from exc
