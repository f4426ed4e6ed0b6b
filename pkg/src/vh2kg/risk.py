"""Geometric fall-risk rules over traces and knowledge graphs.

R1 flags any non-walking action on an object whose bounding-box top rises
above the agent's top; R2 flags grabbing an object whose top lies below the
agent's body center.  Both look only at the situation before the event and
use strict inequalities.  The equivalent SPARQL texts ship as fixture files
for external triplestores.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import schema as S
from .errors import MissingGeometry, VH2KGError
from .rdf import KgDocument, KgIndex, Literal
from .simulate import Trace
from .synth import ActivityMeta, IriFactory, _state_fingerprint

R1_EXCLUDED_VERBS = frozenset({"walk", "watch", "turnTo", "lookAt"})


@dataclass(frozen=True)
class RiskRule:
    id: str
    risk_class: str
    description: str


R1 = RiskRule("R1", S.RISK_HIGH,
              "act on an object whose top is above the agent's top")
R2 = RiskRule("R2", S.RISK_LOW,
              "grab an object whose top is below the agent's body center")
RULES = {"R1": R1, "R2": R2}


@dataclass(frozen=True)
class TaxonomyEntry:
    category: str
    description: str
    implemented: bool = False
    rule_id: str | None = None


#: The expert risk taxonomy; only two entries are executable rules.
RISK_TAXONOMY = (
    TaxonomyEntry("dangerous action", "go up or down the steps"),
    TaxonomyEntry("dangerous action", "straddle an object"),
    TaxonomyEntry("dangerous action", "walk backwards"),
    TaxonomyEntry("dangerous action", "stand on one leg"),
    TaxonomyEntry("dangerous action", "do some work using one's foot"),
    TaxonomyEntry("dangerous action", "stand up without support"),
    TaxonomyEntry("dangerous interaction", "reach an object that is in a high place",
                  implemented=True, rule_id="R1"),
    TaxonomyEntry("dangerous interaction", "take an object out of low shelves",
                  implemented=True, rule_id="R2"),
    TaxonomyEntry("dangerous interaction", "carry a heavy object"),
    TaxonomyEntry("dangerous interaction", "lean on an unstable object"),
    TaxonomyEntry("dangerous interaction",
                  "pick up an object on the floor while sitting on a chair"),
    TaxonomyEntry("dangerous spatial relationship", "an object is placed on an aisle"),
    TaxonomyEntry("dangerous spatial relationship",
                  "there is a gap between the bed and the wall"),
    TaxonomyEntry("dangerous spatial relationship", "a cushion is laid on a chair"),
    TaxonomyEntry("dangerous spatial relationship", "a bed has no side rails"),
    TaxonomyEntry("dangerous spatial relationship", "a chair has no armrest"),
)


@dataclass(frozen=True)
class RiskFinding:
    activity_iri: str
    event_iri: str
    rule_id: str
    agent_iri: str
    object_iri: str
    evidence: tuple  # sorted (key, value) pairs
    explanation_path: tuple  # ordered (s, p, o-repr) triples

    @property
    def evidence_map(self) -> dict:
        return dict(self.evidence)

    def key(self):
        return (self.event_iri, self.rule_id)


def _make_evidence(agent_cy, agent_h, obj_cy, obj_h):
    return tuple(sorted({
        "agentCenterY": agent_cy, "agentHeight": agent_h,
        "objectCenterY": obj_cy, "objectHeight": obj_h,
    }.items()))


def _matches(rule: RiskRule, verb: str, agent_cy, agent_h, obj_cy, obj_h) -> bool:
    if rule.id == "R1":
        if verb in R1_EXCLUDED_VERBS:
            return False
        return obj_cy + 0.5 * obj_h > agent_cy + 0.5 * agent_h
    if verb != "grab":
        return False
    return obj_cy + 0.5 * obj_h < agent_cy


# --- evaluation over traces ---

def _state_indices(trace: Trace, node_id: int, affordance_table, property_table):
    """Situation index at which the current state instance of the object was
    minted, per situation (mirrors the builder's dedup rule)."""
    indices = []
    prev_fp = None
    current = 0
    for n, situation in enumerate(trace.situations):
        fp = _state_fingerprint(situation.graph.node(node_id),
                                affordance_table, property_table)
        if prev_fp is None or fp != prev_fp:
            current = n
        indices.append(current)
        prev_fp = fp
    return indices


def eval_rules_trace(trace: Trace, meta: ActivityMeta, rules=("R1", "R2"),
                     affordance_table=None, property_table=None) -> list[RiskFinding]:
    f = IriFactory.for_meta(meta)
    agent_node = trace.situations[0].graph.agent
    agent_iri = f.agent()
    findings = []
    state_idx_cache: dict[int, list[int]] = {}

    def state_index(node_id, situation_no):
        if node_id not in state_idx_cache:
            state_idx_cache[node_id] = _state_indices(
                trace, node_id, affordance_table, property_table)
        return state_idx_cache[node_id][situation_no]

    for n, tr in enumerate(trace.transitions):
        pre = trace.situations[n].graph
        agent = pre.node(agent_node.id)
        refs = [(S.MAIN_OBJECT, tr.step.main_object),
                (S.TARGET_OBJECT, tr.step.target_object)]
        for obj_prop, ref in refs:
            if ref is None:
                continue
            node = pre.node(ref.id)
            if node.is_room:
                continue
            if node.bbox.size == (0.0, 0.0, 0.0):
                raise MissingGeometry(f"{node.class_name}#{node.id} has no geometry")
            for rule_id in rules:
                rule = RULES[rule_id]
                if not _matches(rule, tr.step.verb, agent.bbox.center[1],
                                agent.height_meters, node.bbox.center[1],
                                node.height_meters):
                    continue
                ev = f.event(n)
                sit = f.situation(n)
                obj_iri = f.object(node)
                a_state = f.state(state_index(agent.id, n), agent)
                o_state = f.state(state_index(node.id, n), node)
                path = (
                    (f.activity(), S.HAS_EVENT, ev),
                    (ev, S.ACTION, S.action_iri(tr.step.verb)),
                    (ev, obj_prop, obj_iri),
                    (ev, S.SITUATION_BEFORE, sit),
                    (a_state, S.IS_STATE_OF, agent_iri),
                    (a_state, S.PART_OF, sit),
                    (a_state, S.BBOX, f.shape(state_index(agent.id, n), agent)),
                    (o_state, S.IS_STATE_OF, obj_iri),
                    (o_state, S.PART_OF, sit),
                    (o_state, S.BBOX, f.shape(state_index(node.id, n), node)),
                )
                findings.append(RiskFinding(
                    activity_iri=f.activity(), event_iri=ev, rule_id=rule.id,
                    agent_iri=agent_iri, object_iri=obj_iri,
                    evidence=_make_evidence(agent.bbox.center[1], agent.height_meters,
                                            node.bbox.center[1], node.height_meters),
                    explanation_path=path))
    return _dedupe(findings)


def eval_r1(trace, meta, **kw):
    return eval_rules_trace(trace, meta, rules=("R1",), **kw)


def eval_r2(trace, meta, **kw):
    return eval_rules_trace(trace, meta, rules=("R2",), **kw)


# --- evaluation over knowledge graphs ---

def _collection_values(idx: KgIndex, head: str) -> list[float]:
    values = []
    while head != S.RDF_NIL:
        first = idx.object(head, S.RDF_FIRST)
        if not isinstance(first, Literal):
            raise MissingGeometry(f"collection cell {head} lacks a value")
        values.append(float(first.lexical))
        head = idx.object(head, S.RDF_REST)
        if head is None:
            raise MissingGeometry("truncated coordinate collection")
    return values


def _geometry(idx: KgIndex, entity: str, situation: str) -> tuple[float, float]:
    """(center_y, height) of an entity in the given situation."""
    state = None
    for s in idx.subjects(S.IS_STATE_OF, entity):
        if situation in idx.objects(s, S.PART_OF):
            state = s
            break
    if state is None:
        raise MissingGeometry(f"no state of {entity} in {situation}")
    shape = idx.object(state, S.BBOX)
    if shape is None:
        raise MissingGeometry(f"state {state} lacks a bbox shape")
    center = _collection_values(idx, idx.object(shape, S.BBOX_CENTER))
    height_node = idx.object(entity, S.HEIGHT)
    height = idx.object(height_node, S.RDF_VALUE) if height_node else None
    if height is None:
        raise MissingGeometry(f"{entity} lacks a height value")
    # Height may pre-date in-activity bbox changes; prefer the live shape size.
    size = _collection_values(idx, idx.object(shape, S.BBOX_SIZE))
    return center[1], size[1]


def eval_rules_kg(doc: KgDocument, rules=("R1", "R2")) -> list[RiskFinding]:
    idx = KgIndex(doc)
    findings = []
    for activity in sorted(set(idx.subjects(S.HAS_EVENT))):
        agent = idx.object(activity, S.AGENT)
        for ev in sorted(idx.objects(activity, S.HAS_EVENT)):
            action = idx.object(ev, S.ACTION)
            verb = action[len(S.ACTION_NS):] if action else ""
            situation = idx.object(ev, S.SITUATION_BEFORE)
            for obj_prop in (S.MAIN_OBJECT, S.TARGET_OBJECT):
                for obj in idx.objects(ev, obj_prop):
                    if S.ROOM in idx.objects(obj, S.RDF_TYPE):
                        continue
                    a_cy, a_h = _geometry(idx, agent, situation)
                    o_cy, o_h = _geometry(idx, obj, situation)
                    for rule_id in rules:
                        rule = RULES[rule_id]
                        if not _matches(rule, verb, a_cy, a_h, o_cy, o_h):
                            continue
                        path = ((activity, S.HAS_EVENT, ev),
                                (ev, S.ACTION, action),
                                (ev, obj_prop, obj),
                                (ev, S.SITUATION_BEFORE, situation))
                        findings.append(RiskFinding(
                            activity_iri=activity, event_iri=ev, rule_id=rule.id,
                            agent_iri=agent, object_iri=obj,
                            evidence=_make_evidence(a_cy, a_h, o_cy, o_h),
                            explanation_path=path))
    return _dedupe(findings)


def _dedupe(findings: list[RiskFinding]) -> list[RiskFinding]:
    seen = {}
    for finding in findings:
        seen.setdefault(finding.key(), finding)
    return sorted(seen.values(), key=lambda x: (x.event_iri, x.rule_id))


def detect_risks(doc: KgDocument, rules=("R1", "R2")):
    """Evaluate rules over a KG and materialize riskFactor triples."""
    findings = eval_rules_kg(doc, rules)
    augmented = KgDocument(dict(doc.prefixes), set(doc.triples))
    for finding in findings:
        augmented.add(finding.activity_iri, S.RISK_FACTOR, finding.event_iri)
        augmented.add(finding.event_iri, S.RDF_TYPE, RULES[finding.rule_id].risk_class)
        augmented.add(finding.event_iri, S.RDF_TYPE, S.RISK_EVENT)
    return findings, augmented


# --- explanation export ---

_TEMPLATES = {
    "R1": ("the agent (top at {agent_top:.2f} m) performed '{verb}' on {obj} "
           "whose top ({obj_top:.2f} m) is above the agent's top"),
    "R2": ("the agent grabbed {obj} whose top ({obj_top:.2f} m) is below "
           "the agent's body center ({agent_center:.2f} m)"),
}


def _local(iri: str) -> str:
    return iri.rsplit("/", 1)[-1].rsplit("#", 1)[-1]


def explain(finding: RiskFinding, doc: KgDocument) -> dict:
    """Explanation bundle: DOT subgraph with the risk path in red, plus text."""
    if not finding.explanation_path:
        raise VH2KGError("finding carries an empty explanation path")
    idx = KgIndex(doc)
    for s, p, o in finding.explanation_path:
        if not idx.has(s, p, o):
            raise VH2KGError(f"explanation triple missing from KG: {s} {p} {o}")

    red = {(s, p, o) for s, p, o in finding.explanation_path}
    nodes = {finding.event_iri, finding.activity_iri, finding.object_iri,
             finding.agent_iri}
    for s, p, o in finding.explanation_path:
        nodes.add(s)
        if isinstance(o, str):
            nodes.add(o)
    edges = []
    for s in sorted(nodes):
        for t in idx.by_subject.get(s, ()):
            if isinstance(t.object, str) and (t.object in nodes
                                              or (s, t.predicate, t.object) in red):
                edges.append((s, t.predicate, t.object))
    lines = ["digraph risk {"]
    for node in sorted(nodes):
        shape = "box" if node == finding.event_iri else "ellipse"
        lines.append(f'  "{_local(node)}" [shape={shape}];')
    for s, p, o in sorted(set(edges)):
        attrs = f'label="{_local(p)}"'
        if (s, p, o) in red:
            attrs += ", color=red, fontcolor=red"
        lines.append(f'  "{_local(s)}" -> "{_local(o)}" [{attrs}];')
    lines.append("}")

    ev = finding.evidence_map
    verb = _local(next(o for s, p, o in finding.explanation_path
                       if p == S.ACTION))
    text = f"{finding.rule_id}: " + _TEMPLATES[finding.rule_id].format(
        agent_top=ev["agentCenterY"] + 0.5 * ev["agentHeight"],
        agent_center=ev["agentCenterY"],
        obj_top=ev["objectCenterY"] + 0.5 * ev["objectHeight"],
        obj=_local(finding.object_iri), verb=verb)
    return {"dot": "\n".join(lines) + "\n", "text": text}


# --- findings JSON ---

def findings_to_json(findings) -> str:
    payload = [
        {
            "activity": x.activity_iri,
            "event": x.event_iri,
            "rule": x.rule_id,
            "agent": x.agent_iri,
            "object": x.object_iri,
            "evidence": x.evidence_map,
            "path": [[s, p, o] for s, p, o in x.explanation_path],
        }
        for x in findings
    ]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def findings_from_json(text: str) -> list[RiskFinding]:
    return [
        RiskFinding(
            activity_iri=row["activity"], event_iri=row["event"],
            rule_id=row["rule"], agent_iri=row["agent"],
            object_iri=row["object"],
            evidence=tuple(sorted(row["evidence"].items())),
            explanation_path=tuple((s, p, o) for s, p, o in row["path"]),
        )
        for row in json.loads(text)
    ]
