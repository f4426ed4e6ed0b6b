"""Symbolic executor for activity scripts over an environment graph.

Each verb has a precondition/effect entry; execution threads an immutable
state (graph snapshot, posture, held objects, clock) through the steps and
records per-step transitions with durations and changed-object sets.  No
rendering, no physics: coordinates move in straight horizontal lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import Unexecutable
from .home import (BoundingBox, EnvironmentGraph, ObjectNode, RelationEdge,
                   afforded_verbs)
from .scripts import ActivityScript, ObjectRef, Step, insert_step

POSTURES = ("STANDING", "SITTING", "LYING")

REASONS = ("NotClose", "NoAffordance", "WrongState", "ObjectAbsent",
           "HandsFull", "NotHolding", "UnknownVerb")


@dataclass(frozen=True)
class SimConfig:
    close_threshold: float = 1.5   # CLOSE iff center distance <= this (inclusive)
    interaction_offset: float = 0.5
    walk_speed: float = 1.0        # m/s
    hold_offset: float = 0.3
    min_walk_seconds: float = 0.1  # durations must stay strictly positive


@dataclass(frozen=True)
class DurationModel:
    per_verb_seconds: dict = field(default_factory=dict)
    default_seconds: float = 2.0

    def seconds_for(self, verb: str) -> float:
        value = self.per_verb_seconds.get(verb, self.default_seconds)
        if value <= 0:
            raise ValueError(f"duration for {verb} must be positive")
        return value


@dataclass(frozen=True)
class ExecutabilityReport:
    executable: bool
    failing_step_index: int | None = None
    reason: str | None = None
    detail: str = ""


class StepFailure(Exception):
    def __init__(self, reason: str, detail: str = ""):
        assert reason in REASONS
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


@dataclass(frozen=True)
class SimulationState:
    graph: EnvironmentGraph
    posture: str = "STANDING"
    held: tuple = (("LH", None), ("RH", None))  # hand -> object id
    clock_seconds: float = 0.0
    current_room_id: int | None = None

    @property
    def held_map(self) -> dict:
        return dict(self.held)

    def held_ids(self) -> set[int]:
        return {oid for _, oid in self.held if oid is not None}


@dataclass(frozen=True)
class TransitionRecord:
    step_index: int
    step: Step
    duration_seconds: float
    changed_object_ids: frozenset[int]
    start_room_id: int
    end_room_id: int


@dataclass(frozen=True)
class Trace:
    script: ActivityScript
    situations: tuple[SimulationState, ...]
    transitions: tuple[TransitionRecord, ...]

    @property
    def total_seconds(self) -> float:
        return sum(t.duration_seconds for t in self.transitions)


def _room_of_point(env: EnvironmentGraph, x: float, z: float) -> ObjectNode | None:
    for room in env.rooms:
        cx, _, cz = room.bbox.center
        sx, _, sz = room.bbox.size
        if abs(x - cx) <= sx / 2 and abs(z - cz) <= sz / 2:
            return room
    return None


def recompute_relations(state: SimulationState, cfg: SimConfig = SimConfig(),
                        facing: tuple[int, int] | None = None) -> SimulationState:
    """Refresh CLOSE and INSIDE edges from geometry.

    CLOSE is inclusive at the threshold; INSIDE follows the room whose floor
    area contains the node center; ON and HOLDS edges are preserved; FACING
    survives only when re-established by the current step (turnTo/lookAt/find).
    """
    env = state.graph
    held = state.held_ids()
    agent = env.agent
    edges: list[RelationEdge] = []
    keep = {"ON"}
    for e in env.edges:
        if e.relation in keep:
            edges.append(e)
    for hand, oid in state.held:
        if oid is not None:
            edges.append(RelationEdge(agent.id, f"HOLDS_{hand}", oid))
    if facing is not None:
        edges.append(RelationEdge(facing[0], "FACING", facing[1]))

    non_rooms = [n for n in env.nodes if not n.is_room]
    for i, a in enumerate(non_rooms):
        for b in non_rooms[i + 1:]:
            if a.id in held and b.is_agent or b.id in held and a.is_agent:
                edges.append(RelationEdge(a.id, "CLOSE", b.id))
            elif a.bbox.distance_to(b.bbox) <= cfg.close_threshold:
                edges.append(RelationEdge(a.id, "CLOSE", b.id))
    for n in non_rooms:
        room = _room_of_point(env, n.bbox.center[0], n.bbox.center[2])
        if room is not None:
            edges.append(RelationEdge(n.id, "INSIDE", room.id))

    room = _room_of_point(env, agent.bbox.center[0], agent.bbox.center[2])
    return replace(state,
                   graph=env.with_edges(edges),
                   current_room_id=room.id if room else state.current_room_id)


def initial_state(env: EnvironmentGraph, cfg: SimConfig = SimConfig()) -> SimulationState:
    agent = env.agent
    posture = next((p for p in POSTURES if p in agent.states), "STANDING")
    env = env.with_nodes({agent.id: replace(
        agent, states=(agent.states - set(POSTURES)) | {posture})})
    return recompute_relations(SimulationState(graph=env, posture=posture), cfg)


def _is_close(state: SimulationState, obj: ObjectNode, cfg: SimConfig) -> bool:
    if obj.id in state.held_ids():
        return True
    return state.graph.agent.bbox.distance_to(obj.bbox) <= cfg.close_threshold


def _resolve(state: SimulationState, ref: ObjectRef | None) -> ObjectNode:
    if ref is None:
        raise StepFailure("ObjectAbsent", "step names no object")
    try:
        node = state.graph.node(ref.id)
    except KeyError:
        raise StepFailure("ObjectAbsent", f"{ref.name}#{ref.id} not in environment") from None
    return node


def _move_agent(env: EnvironmentGraph, held: set[int], target: BoundingBox,
                cfg: SimConfig) -> tuple[EnvironmentGraph, float]:
    """Move the agent toward the target center, stopping one interaction
    offset short; held objects ride along.  Returns the horizontal distance
    actually travelled."""
    agent = env.agent
    ax, ay, az = agent.bbox.center
    tx, _, tz = target.center
    dx, dz = tx - ax, tz - az
    dist = math.hypot(dx, dz)
    if dist > cfg.interaction_offset:
        travel = dist - cfg.interaction_offset
        nx = ax + dx / dist * travel
        nz = az + dz / dist * travel
    else:
        travel = 0.0
        nx, nz = ax, az
    moved = {agent.id: replace(agent, bbox=BoundingBox((nx, ay, nz), agent.bbox.size))}
    for oid in held:
        node = env.node(oid)
        moved[oid] = replace(node, bbox=BoundingBox(
            (nx + cfg.hold_offset, ay, nz), node.bbox.size))
    return env.with_nodes(moved), travel


def _set_states(env, node, remove=(), add=()):
    return env.with_nodes({node.id: replace(
        node, states=(node.states - set(remove)) | set(add))})


def _set_posture(state: SimulationState, posture: str) -> SimulationState:
    agent = state.graph.agent
    env = _set_states(state.graph, agent, remove=POSTURES, add=(posture,))
    return replace(state, graph=env, posture=posture)


def execute_step(state: SimulationState, step: Step, dm: DurationModel = DurationModel(),
                 cfg: SimConfig = SimConfig(), affordance_table=None,
                 property_table=None, step_index: int = 0,
                 ) -> tuple[SimulationState, TransitionRecord]:
    """Apply one step; raises StepFailure when a precondition fails."""
    verb = step.verb
    pre = state
    start_room = state.current_room_id
    duration = dm.seconds_for(verb)
    facing = None

    def affords(node, v):
        return v in afforded_verbs(node, affordance_table, property_table)

    def require_close(node):
        if not _is_close(state, node, cfg):
            raise StepFailure("NotClose", f"agent not close to {node.class_name}#{node.id}")

    if verb == "walk":
        target = _resolve(state, step.main_object)
        env, travelled = _move_agent(state.graph, state.held_ids(), target.bbox, cfg)
        duration = max(travelled / cfg.walk_speed, cfg.min_walk_seconds)
        state = replace(state, graph=env)
    elif verb == "find":
        target = _resolve(state, step.main_object)
        room = _room_of_point(state.graph, target.bbox.center[0], target.bbox.center[2])
        if room is None or room.id != state.current_room_id:
            raise StepFailure("NotClose", f"{target.class_name}#{target.id} is in another room")
        facing = (state.graph.agent.id, target.id)
    elif verb == "grab":
        target = _resolve(state, step.main_object)
        require_close(target)
        if not affords(target, "grab"):
            raise StepFailure("NoAffordance", f"{target.class_name} does not afford grab")
        held = state.held_map
        free = next((h for h in ("RH", "LH") if held[h] is None), None)
        if free is None:
            raise StepFailure("HandsFull", "both hands occupied")
        held[free] = target.id
        agent = state.graph.agent
        ax, ay, az = agent.bbox.center
        env = state.graph.with_nodes({target.id: replace(
            target, bbox=BoundingBox((ax + cfg.hold_offset, ay, az), target.bbox.size))})
        env = env.with_edges(e for e in env.edges
                             if not (e.relation == "ON" and e.from_id == target.id))
        state = replace(state, graph=env, held=tuple(sorted(held.items())))
    elif verb in ("switchOn", "switchOff"):
        target = _resolve(state, step.main_object)
        require_close(target)
        if not affords(target, verb):
            raise StepFailure("NoAffordance", f"{target.class_name} does not afford {verb}")
        want_off, want_on = ("OFF", "ON") if verb == "switchOn" else ("ON", "OFF")
        if want_off not in target.states:
            raise StepFailure("WrongState", f"{target.class_name} is not {want_off}")
        state = replace(state, graph=_set_states(state.graph, target, (want_off,), (want_on,)))
    elif verb in ("open", "close"):
        target = _resolve(state, step.main_object)
        require_close(target)
        if not affords(target, "open"):
            raise StepFailure("NoAffordance", f"{target.class_name} does not afford open")
        frm, to = ("CLOSED", "OPEN") if verb == "open" else ("OPEN", "CLOSED")
        if frm not in target.states:
            raise StepFailure("WrongState", f"{target.class_name} is not {frm}")
        state = replace(state, graph=_set_states(state.graph, target, (frm,), (to,)))
    elif verb in ("sit", "lie"):
        target = _resolve(state, step.main_object)
        require_close(target)
        if not affords(target, verb):
            raise StepFailure("NoAffordance", f"{target.class_name} does not afford {verb}")
        state = _set_posture(state, "SITTING" if verb == "sit" else "LYING")
    elif verb == "standUp":
        if state.posture == "STANDING":
            raise StepFailure("WrongState", "agent is already standing")
        state = _set_posture(state, "STANDING")
    elif verb == "putBack":
        main = _resolve(state, step.main_object)
        target = _resolve(state, step.target_object)
        held = state.held_map
        hand = next((h for h, oid in held.items() if oid == main.id), None)
        if hand is None:
            raise StepFailure("NotHolding", f"agent is not holding {main.class_name}#{main.id}")
        require_close(target)
        held[hand] = None
        tx, _, tz = target.bbox.center
        new_bb = BoundingBox((tx, target.bbox.top + main.bbox.size[1] / 2, tz), main.bbox.size)
        env = state.graph.with_nodes({main.id: replace(main, bbox=new_bb)})
        env = env.with_edges(list(env.edges) + [RelationEdge(main.id, "ON", target.id)])
        state = replace(state, graph=env, held=tuple(sorted(held.items())))
    elif verb in ("drink", "pour", "read"):
        main = _resolve(state, step.main_object)
        if main.id not in state.held_ids():
            raise StepFailure("NotHolding", f"agent is not holding {main.class_name}#{main.id}")
    elif verb in ("touch", "watch"):
        require_close(_resolve(state, step.main_object))
    elif verb in ("lookAt", "turnTo"):
        target = _resolve(state, step.main_object)
        require_close(target)
        facing = (state.graph.agent.id, target.id)
    else:
        raise StepFailure("UnknownVerb", verb)

    state = recompute_relations(state, cfg, facing=facing)
    state = replace(state, clock_seconds=pre.clock_seconds + duration)
    changed = diff_changed_ids(pre.graph, state.graph,
                               affordance_table=affordance_table,
                               property_table=property_table)
    record = TransitionRecord(
        step_index=step_index,
        step=step,
        duration_seconds=duration,
        changed_object_ids=frozenset(changed),
        start_room_id=start_room,
        end_room_id=state.current_room_id,
    )
    return state, record


def diff_changed_ids(before: EnvironmentGraph, after: EnvironmentGraph,
                     affordance_table=None, property_table=None) -> set[int]:
    """Ids of objects whose state tokens, bbox, or afforded verbs differ."""
    changed = set()
    for node in before.nodes:
        other = after.node(node.id)
        if (node.states != other.states or node.bbox != other.bbox
                or afforded_verbs(node, affordance_table, property_table)
                != afforded_verbs(other, affordance_table, property_table)):
            changed.add(node.id)
    return changed


def run_script(script: ActivityScript, env: EnvironmentGraph,
               dm: DurationModel = DurationModel(), mode: str = "strict",
               cfg: SimConfig = SimConfig(), affordance_table=None,
               property_table=None) -> Trace:
    """Execute a script. Strict mode raises Unexecutable at the first failing
    step; repair mode inserts a walk before any step failing with NotClose
    (once per step) and retries."""
    if mode not in ("strict", "repair"):
        raise ValueError(f"unknown mode {mode!r}")
    current = script
    repaired: set[int] = set()  # indices already given an inserted walk
    while True:
        situations = [initial_state(env, cfg)]
        transitions = []
        failure = None
        for idx, step in enumerate(current.steps):
            try:
                state, record = execute_step(
                    situations[-1], step, dm, cfg, affordance_table,
                    property_table, step_index=idx)
            except StepFailure as exc:
                failure = (idx, step, exc)
                break
            situations.append(state)
            transitions.append(record)
        if failure is None:
            return Trace(current, tuple(situations), tuple(transitions))
        idx, step, exc = failure
        if (mode == "repair" and exc.reason == "NotClose"
                and step.main_object is not None and idx not in repaired):
            current = insert_step(current, idx, Step(
                "walk", step.main_object, inserted=True))
            repaired = {i + 1 if i >= idx else i for i in repaired} | {idx + 1}
            continue
        raise Unexecutable(ExecutabilityReport(False, idx, exc.reason, exc.detail))


def check_executable(script: ActivityScript, env: EnvironmentGraph,
                     dm: DurationModel = DurationModel(), cfg: SimConfig = SimConfig(),
                     affordance_table=None, property_table=None) -> ExecutabilityReport:
    try:
        run_script(script, env, dm, "strict", cfg, affordance_table, property_table)
    except Unexecutable as exc:
        return exc.report
    return ExecutabilityReport(True)


def trace_to_json(trace: Trace) -> dict:
    """Debug export: per-situation environment JSON plus a transitions array."""
    from .home import dump_environment
    return {
        "activity": trace.script.name,
        "situations": [dump_environment(s.graph) for s in trace.situations],
        "transitions": [
            {
                "step_index": t.step_index,
                "verb": t.step.verb,
                "main_object": ([t.step.main_object.name, t.step.main_object.id]
                                if t.step.main_object else None),
                "target_object": ([t.step.target_object.name, t.step.target_object.id]
                                  if t.step.target_object else None),
                "inserted": t.step.inserted,
                "duration_seconds": t.duration_seconds,
                "changed_object_ids": sorted(t.changed_object_ids),
                "start_room_id": t.start_room_id,
                "end_room_id": t.end_room_id,
            }
            for t in trace.transitions
        ],
    }
