"""Home environment graph: objects, spatial relations, properties, affordances.

The environment is loaded from the JSON layout produced by household
simulators: nodes carry class names, states, properties and axis-aligned
bounding boxes (y vertical); edges carry qualitative spatial relations.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, replace

from .errors import (DanglingEdge, DuplicateId, NoAgent, Orphan,
                     ScoreOutOfRange, UnknownProperty)

RELATIONS = frozenset({"INSIDE", "ON", "CLOSE", "FACING", "HOLDS_RH", "HOLDS_LH"})

STATE_SEED = frozenset({
    "ON", "OFF", "OPEN", "CLOSED", "CLEAN", "DIRTY",
    "PLUGGED_IN", "PLUGGED_OUT", "SITTING", "STANDING", "LYING",
})

# Property token -> (kind, afforded verbs).  Kind "Affordance" tokens grant
# actions; "Attribute" tokens are descriptive only.  Editable via
# load_property_table().
DEFAULT_PROPERTY_TABLE: dict[str, tuple[str, tuple[str, ...]]] = {
    "GRABBABLE": ("Affordance", ("grab",)),
    "HAS_SWITCH": ("Affordance", ("switchOn", "switchOff")),
    "CAN_OPEN": ("Affordance", ("open", "close")),
    "SITTABLE": ("Affordance", ("sit",)),
    "LIEABLE": ("Affordance", ("lie",)),
    "READABLE": ("Affordance", ("read",)),
    "DRINKABLE": ("Affordance", ("drink",)),
    "POURABLE": ("Affordance", ("pour",)),
    "EATABLE": ("Attribute", ()),
    "CUTTABLE": ("Attribute", ()),
    "MOVABLE": ("Attribute", ()),
    "CLOTHES": ("Attribute", ()),
    "SURFACES": ("Attribute", ()),
    "CONTAINERS": ("Attribute", ()),
    "HAS_PLUG": ("Attribute", ()),
    "LOOKABLE": ("Attribute", ()),
}


@dataclass(frozen=True)
class BoundingBox:
    center: tuple[float, float, float]
    size: tuple[float, float, float]

    def __post_init__(self):
        if any(s < 0 for s in self.size):
            raise ValueError(f"negative bbox size: {self.size}")

    @property
    def top(self) -> float:
        return self.center[1] + self.size[1] / 2.0

    def distance_to(self, other: "BoundingBox") -> float:
        return math.dist(self.center, other.center)


@dataclass(frozen=True)
class ObjectNode:
    id: int
    class_name: str
    category: str = ""
    is_room: bool = False
    is_agent: bool = False
    states: frozenset[str] = frozenset()
    properties: frozenset[str] = frozenset()
    bbox: BoundingBox = BoundingBox((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))

    @property
    def height_meters(self) -> float:
        # Height is structurally tied to the bbox, never stored separately.
        return self.bbox.size[1]


@dataclass(frozen=True)
class RelationEdge:
    from_id: int
    relation: str
    to_id: int

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")


@dataclass(frozen=True)
class EnvironmentGraph:
    scene_id: str
    nodes: tuple[ObjectNode, ...]
    edges: tuple[RelationEdge, ...]

    def node(self, node_id: int) -> ObjectNode:
        return self._by_id[node_id]

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {n.id: n for n in self.nodes})

    @property
    def agent(self) -> ObjectNode:
        return next(n for n in self.nodes if n.is_agent)

    @property
    def rooms(self) -> list[ObjectNode]:
        return [n for n in self.nodes if n.is_room]

    def with_nodes(self, replacements: dict[int, ObjectNode]) -> "EnvironmentGraph":
        nodes = tuple(replacements.get(n.id, n) for n in self.nodes)
        return replace(self, nodes=nodes)

    def with_edges(self, edges) -> "EnvironmentGraph":
        return replace(self, edges=tuple(edges))


def load_environment(document: dict) -> EnvironmentGraph:
    """Build a validated EnvironmentGraph from its JSON document."""
    nodes = []
    seen = set()
    for nd in document["nodes"]:
        if nd["id"] in seen:
            raise DuplicateId(f"node id {nd['id']} appears twice")
        seen.add(nd["id"])
        bb = nd.get("bounding_box") or {"center": [0, 0, 0], "size": [0, 0, 0]}
        nodes.append(ObjectNode(
            id=nd["id"],
            class_name=nd["class_name"],
            category=nd.get("category", ""),
            is_room=bool(nd.get("is_room", False)),
            is_agent=bool(nd.get("is_agent", False)),
            states=frozenset(nd.get("states", [])),
            properties=frozenset(nd.get("properties", [])),
            bbox=BoundingBox(tuple(bb["center"]), tuple(bb["size"])),
        ))
    ids = {n.id for n in nodes}
    edges = []
    for ed in document["edges"]:
        if ed["from_id"] not in ids or ed["to_id"] not in ids:
            raise DanglingEdge(f"edge {ed} references a missing node")
        edges.append(RelationEdge(ed["from_id"], ed["relation_type"], ed["to_id"]))

    agents = [n for n in nodes if n.is_agent]
    if len(agents) != 1:
        raise NoAgent(f"expected exactly one agent node, found {len(agents)}")
    if agents[0].height_meters <= 0:
        raise NoAgent("agent must have a positive height")

    room_ids = {n.id for n in nodes if n.is_room}
    inside = {}
    for e in edges:
        if e.relation == "INSIDE" and e.to_id in room_ids:
            inside.setdefault(e.from_id, set()).add(e.to_id)
    for n in nodes:
        if n.is_room:
            continue
        if len(inside.get(n.id, ())) != 1:
            raise Orphan(f"node {n.class_name}#{n.id} must be INSIDE exactly one room")

    return EnvironmentGraph(document["scene_id"], tuple(nodes), tuple(edges))


def load_environment_file(path) -> EnvironmentGraph:
    with open(path, encoding="utf-8") as fh:
        return load_environment(json.load(fh))


def dump_environment(env: EnvironmentGraph) -> dict:
    """Inverse of load_environment (used for trace export and round-trips)."""
    return {
        "scene_id": env.scene_id,
        "nodes": [
            {
                "id": n.id,
                "class_name": n.class_name,
                "category": n.category,
                "is_room": n.is_room,
                "is_agent": n.is_agent,
                "states": sorted(n.states),
                "properties": sorted(n.properties),
                "bounding_box": {"center": list(n.bbox.center), "size": list(n.bbox.size)},
            }
            for n in env.nodes
        ],
        "edges": [
            {"from_id": e.from_id, "relation_type": e.relation, "to_id": e.to_id}
            for e in env.edges
        ],
    }


@dataclass(frozen=True)
class AffordanceRecord:
    object_class: str
    verb: str
    rater_scores: tuple[float, ...]

    @property
    def mean(self) -> float:
        return sum(self.rater_scores) / len(self.rater_scores)


def read_affordance_csv(path) -> list[AffordanceRecord]:
    """Read `object_class,verb,s1,...` rows; fewer than 5 scores is tolerated."""
    records = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#") or row[0] == "object_class":
                continue
            scores = tuple(float(v) for v in row[2:] if v != "")
            records.append(AffordanceRecord(row[0], row[1], scores))
    return records


def filter_affordances(records, threshold: float = 4.0) -> dict[str, frozenset[str]]:
    """Keep (class, verb) pairs whose mean rater score reaches the threshold."""
    if not 1.0 <= threshold <= 5.0:
        raise ScoreOutOfRange(f"threshold {threshold} outside [1.0, 5.0]")
    table: dict[str, set[str]] = {}
    for rec in records:
        if any(not 1.0 <= s <= 5.0 for s in rec.rater_scores):
            raise ScoreOutOfRange(f"scores out of [1.0, 5.0] for {rec.object_class}/{rec.verb}")
        if rec.mean >= threshold:
            table.setdefault(rec.object_class, set()).add(rec.verb)
    return {k: frozenset(v) for k, v in table.items()}


def classify_property(token: str, table=None) -> tuple[str, frozenset[str]]:
    """Return (kind, afforded verbs) for a property token."""
    table = table if table is not None else DEFAULT_PROPERTY_TABLE
    try:
        kind, verbs = table[token]
    except KeyError:
        raise UnknownProperty(token) from None
    return kind, frozenset(verbs)


def load_property_table(path) -> dict[str, tuple[str, tuple[str, ...]]]:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return {tok: (spec["kind"], tuple(spec.get("verbs", ()))) for tok, spec in raw.items()}


def afforded_verbs(node: ObjectNode, affordance_table=None, property_table=None) -> frozenset[str]:
    """Verbs the object affords: property-derived plus crowdsourced table entries."""
    verbs: set[str] = set()
    for tok in node.properties:
        try:
            kind, vs = classify_property(tok, property_table)
        except UnknownProperty:
            continue
        if kind == "Affordance":
            verbs |= vs
    if affordance_table:
        verbs |= affordance_table.get(node.class_name, frozenset())
    return frozenset(verbs)
