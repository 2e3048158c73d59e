"""JSON network description files (schema version 1).

Example::

    {
      "schema_version": 1,
      "nodes": ["A", "C1", "B"],
      "endpoints": {"a": "A", "b": "B"},
      "edges": [
        {"from": "A", "to": "C1", "length_km": 50, "loss_db_per_km": 0.2, "uses": 4},
        {"from": "C1", "to": "B", "transmittance": 0.3}
      ]
    }

Unknown keys are rejected so that a misspelt physics parameter cannot slip
through silently.  ``endpoints`` defaults to ``{"a": "A", "b": "B"}``; edge
``uses`` defaults to 1 and ``mode_factor`` to 2.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Dict, Tuple, Union

from .netgraph import DEFAULT_USES, Network, UseProfile, validate
from .photonics import ChannelSpec

SCHEMA_VERSION = 1

_TOP_KEYS = {"schema_version", "nodes", "endpoints", "edges"}
_EDGE_KEYS = {
    "from",
    "to",
    "length_km",
    "loss_db_per_km",
    "attenuation_length_km",
    "transmittance",
    "mode_factor",
    "uses",
}


class NetworkFileError(ValueError):
    """A network file could not be parsed; the message names the offending field."""


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise NetworkFileError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise NetworkFileError(f"{where}: expected a finite number, got {value!r}")
    return float(value)


def _node_id(value: Any, where: str) -> str:
    if not isinstance(value, str) or not value:
        raise NetworkFileError(f"{where}: expected a non-empty string node id, got {value!r}")
    return value


def parse_network(doc: Any) -> Tuple[Network, UseProfile]:
    """Build a validated network and use profile from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise NetworkFileError("top level: expected a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise NetworkFileError(f"top level: unknown field(s) {sorted(unknown)}")
    for key in ("schema_version", "nodes", "edges"):
        if key not in doc:
            raise NetworkFileError(f"top level: missing field '{key}'")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise NetworkFileError(
            f"schema_version: unsupported value {doc['schema_version']!r} (expected {SCHEMA_VERSION})"
        )

    if not isinstance(doc["nodes"], list):
        raise NetworkFileError("nodes: expected a list")
    nodes = [_node_id(v, f"nodes[{i}]") for i, v in enumerate(doc["nodes"])]

    ends = doc.get("endpoints", {"a": "A", "b": "B"})
    if not isinstance(ends, dict):
        raise NetworkFileError("endpoints: expected an object")
    unknown = set(ends) - {"a", "b"}
    if unknown:
        raise NetworkFileError(f"endpoints: unknown field(s) {sorted(unknown)}")
    a = _node_id(ends.get("a", "A"), "endpoints.a")
    b = _node_id(ends.get("b", "B"), "endpoints.b")

    if not isinstance(doc["edges"], list):
        raise NetworkFileError("edges: expected a list")
    edges = []
    uses: Dict[int, float] = {}
    for i, raw in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        if not isinstance(raw, dict):
            raise NetworkFileError(f"{where}: expected an object")
        unknown = set(raw) - _EDGE_KEYS
        if unknown:
            raise NetworkFileError(f"{where}: unknown field(s) {sorted(unknown)}")
        for key in ("from", "to"):
            if key not in raw:
                raise NetworkFileError(f"{where}: missing field '{key}'")
        kwargs: Dict[str, Any] = {}
        for key, target in (
            ("length_km", "length_km"),
            ("loss_db_per_km", "loss_db_per_km"),
            ("attenuation_length_km", "attenuation_length_km"),
            ("transmittance", "transmittance_override"),
        ):
            if key in raw:
                kwargs[target] = _number(raw[key], f"{where}.{key}")
        if "mode_factor" in raw:
            mf = raw["mode_factor"]
            if isinstance(mf, bool) or not isinstance(mf, int):
                raise NetworkFileError(f"{where}.mode_factor: expected an integer, got {mf!r}")
            kwargs["mode_factor"] = mf
        if "uses" in raw:
            uses[i] = _number(raw["uses"], f"{where}.uses")
            if uses[i] < 0:
                raise NetworkFileError(f"{where}.uses: must be nonnegative, got {uses[i]!r}")
        try:
            edges.append(
                ChannelSpec(
                    _node_id(raw["from"], f"{where}.from"),
                    _node_id(raw["to"], f"{where}.to"),
                    **kwargs,
                )
            )
        except ValueError as exc:
            raise NetworkFileError(f"{where}: {exc}") from None

    network = Network(tuple(nodes), tuple(edges), a=a, b=b)
    try:
        validate(network)
    except ValueError as exc:
        raise NetworkFileError(str(exc)) from None
    total = math.fsum(uses.get(i, DEFAULT_USES) for i in range(len(edges)))
    return network, UseProfile(uses, total_uses=total)


def loads(text: str) -> Tuple[Network, UseProfile]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_network(doc)


def load(path: Union[str, Path]) -> Tuple[Network, UseProfile]:
    """Read and validate a network file."""
    return loads(Path(path).read_text(encoding="utf-8"))


def to_document(network: Network, profile: UseProfile = None) -> Dict[str, Any]:
    """Inverse of :func:`parse_network` for networks with string node ids."""
    profile = profile if profile is not None else UseProfile()
    edges = []
    for i, e in enumerate(network.edges):
        d: Dict[str, Any] = {"from": e.from_node, "to": e.to_node}
        if e.transmittance_override is not None:
            d["transmittance"] = e.transmittance_override
        if e.length_km:
            d["length_km"] = e.length_km
        if e.loss_db_per_km is not None:
            d["loss_db_per_km"] = e.loss_db_per_km
        if e.attenuation_length_km is not None:
            d["attenuation_length_km"] = e.attenuation_length_km
        if e.mode_factor != 2:
            d["mode_factor"] = e.mode_factor
        d["uses"] = profile.use(i)
        edges.append(d)
    return {
        "schema_version": SCHEMA_VERSION,
        "nodes": list(network.nodes),
        "endpoints": {"a": network.a, "b": network.b},
        "edges": edges,
    }
