import math

import pytest

from vh2kg.errors import Unexecutable
from vh2kg.home import load_environment
from vh2kg.scripts import ActivityScript, ObjectRef, Step
from vh2kg.simulate import (DurationModel, SimConfig, check_executable,
                            initial_state, run_script)


def build_env(extra_nodes=(), extra_edges=()):
    doc = {
        "scene_id": "scene1",
        "nodes": [
            {"id": 1, "class_name": "kitchen", "is_room": True,
             "bounding_box": {"center": [0, 1.25, 0], "size": [20, 2.5, 20]}},
            {"id": 2, "class_name": "character", "is_agent": True,
             "states": ["STANDING"],
             "bounding_box": {"center": [0, 0.9, 0], "size": [0.4, 1.8, 0.3]}},
            *extra_nodes,
        ],
        "edges": [
            {"from_id": 2, "relation_type": "INSIDE", "to_id": 1},
            *extra_edges,
        ],
    }
    return load_environment(doc)


def mug_at(x, z, y=0.9):
    return {"id": 3, "class_name": "mug", "properties": ["GRABBABLE"],
            "bounding_box": {"center": [x, y, z], "size": [0.1, 0.14, 0.1]}}


def inside(node_id, room_id=1):
    return {"from_id": node_id, "relation_type": "INSIDE", "to_id": room_id}


def script_of(*steps):
    return ActivityScript("Test", "test script", "Other", list(steps))


def close_ids(state):
    return {(e.from_id, e.to_id) for e in state.graph.edges
            if e.relation == "CLOSE"}


def test_close_threshold_inclusive():
    # distance exactly 1.5: CLOSE; slightly beyond: not CLOSE
    env = build_env([mug_at(1.5, 0.0)], [inside(3)])
    state = initial_state(env)
    assert (2, 3) in close_ids(state)
    env = build_env([mug_at(1.505, 0.0)], [inside(3)])
    state = initial_state(env)
    assert (2, 3) not in close_ids(state)


def test_walk_stops_at_interaction_offset():
    env = build_env([mug_at(5.0, 0.0)], [inside(3)])
    trace = run_script(script_of(Step("walk", ObjectRef("mug", 3))), env)
    agent = trace.situations[-1].graph.agent
    dist = math.dist(agent.bbox.center, trace.situations[-1].graph.node(3).bbox.center)
    assert dist == pytest.approx(0.5)
    # walked 5.0 - 0.5 horizontally at 1 m/s (the y offset is not traveled)
    assert trace.transitions[0].duration_seconds == pytest.approx(4.5)


def test_walk_duration_never_zero():
    env = build_env([mug_at(0.3, 0.0)], [inside(3)])
    trace = run_script(script_of(Step("walk", ObjectRef("mug", 3))), env)
    assert trace.transitions[0].duration_seconds >= 0.1


def test_grab_requires_close():
    env = build_env([mug_at(5.0, 0.0)], [inside(3)])
    report = check_executable(script_of(Step("grab", ObjectRef("mug", 3))), env)
    assert not report.executable
    assert report.reason == "NotClose"
    assert report.failing_step_index == 0


def test_grab_requires_affordance():
    nodes = [mug_at(1.0, 0.0)]
    nodes[0] = dict(nodes[0], properties=[])
    env = build_env(nodes, [inside(3)])
    report = check_executable(script_of(Step("grab", ObjectRef("mug", 3))), env)
    assert report.reason == "NoAffordance"


def test_grab_hands_full():
    a = dict(mug_at(1.0, 0.0), id=3)
    b = dict(mug_at(0.0, 1.0), id=4)
    c = dict(mug_at(-1.0, 0.0), id=5)
    env = build_env([a, b, c], [inside(3), inside(4), inside(5)])
    script = script_of(Step("grab", ObjectRef("mug", 3)),
                       Step("grab", ObjectRef("mug", 4)),
                       Step("grab", ObjectRef("mug", 5)))
    report = check_executable(script, env)
    assert not report.executable
    assert report.reason == "HandsFull"
    assert report.failing_step_index == 2


def test_held_object_rides_with_agent():
    far = {"id": 4, "class_name": "table", "properties": [],
           "bounding_box": {"center": [6.0, 0.45, 0.0], "size": [1.0, 0.9, 1.0]}}
    env = build_env([mug_at(1.0, 0.0), far], [inside(3), inside(4)])
    script = script_of(Step("grab", ObjectRef("mug", 3)),
                       Step("walk", ObjectRef("table", 4)))
    trace = run_script(script, env)
    final = trace.situations[-1].graph
    agent_c = final.agent.bbox.center
    mug_c = final.node(3).bbox.center
    assert math.dist(agent_c, mug_c) < 1.0
    assert any(e.relation.startswith("HOLDS") and e.to_id == 3 for e in final.edges)


def test_switch_wrong_state():
    tv = {"id": 7, "class_name": "television", "states": ["ON"],
          "properties": ["HAS_SWITCH"],
          "bounding_box": {"center": [1.0, 0.5, 0.0], "size": [1.0, 0.6, 0.2]}}
    env = build_env([tv], [inside(7)])
    report = check_executable(script_of(Step("switchOn", ObjectRef("television", 7))), env)
    assert report.reason == "WrongState"
    trace = run_script(script_of(Step("switchOff", ObjectRef("television", 7))), env)
    assert "OFF" in trace.situations[-1].graph.node(7).states


def test_sit_stand_posture():
    chair = {"id": 8, "class_name": "chair", "properties": ["SITTABLE"],
             "bounding_box": {"center": [1.0, 0.45, 0.0], "size": [0.5, 0.9, 0.5]}}
    env = build_env([chair], [inside(8)])
    trace = run_script(script_of(Step("sit", ObjectRef("chair", 8)), Step("standUp")), env)
    postures = [s.posture for s in trace.situations]
    assert postures == ["STANDING", "SITTING", "STANDING"]
    agent_states = [("SITTING" in s.graph.agent.states) for s in trace.situations]
    assert agent_states == [False, True, False]


def test_standup_requires_sitting():
    env = build_env()
    report = check_executable(script_of(Step("standUp")), env)
    assert report.reason == "WrongState"


def test_putback_places_on_top_face():
    table = {"id": 4, "class_name": "table", "properties": [],
             "bounding_box": {"center": [3.0, 0.45, 0.0], "size": [1.0, 0.9, 1.0]}}
    env = build_env([mug_at(1.0, 0.0), table], [inside(3), inside(4)])
    script = script_of(Step("grab", ObjectRef("mug", 3)),
                       Step("walk", ObjectRef("table", 4)),
                       Step("putBack", ObjectRef("mug", 3), ObjectRef("table", 4)))
    trace = run_script(script, env)
    final = trace.situations[-1].graph
    mug = final.node(3)
    # bottom of the mug rests on the table top (0.9)
    assert mug.bbox.center[1] - mug.bbox.size[1] / 2 == pytest.approx(0.9)
    assert any(e.relation == "ON" and e.from_id == 3 and e.to_id == 4
               for e in final.edges)
    assert not any(e.relation.startswith("HOLDS") and e.to_id == 3
                   for e in final.edges)


def test_strict_mode_raises_with_report():
    env = build_env([mug_at(5.0, 0.0)], [inside(3)])
    with pytest.raises(Unexecutable) as exc:
        run_script(script_of(Step("grab", ObjectRef("mug", 3))), env, mode="strict")
    assert exc.value.report.reason == "NotClose"


def test_repair_mode_inserts_walk():
    env = build_env([mug_at(5.0, 0.0)], [inside(3)])
    trace = run_script(script_of(Step("grab", ObjectRef("mug", 3))), env, mode="repair")
    verbs = [t.step.verb for t in trace.transitions]
    assert verbs == ["walk", "grab"]
    assert trace.transitions[0].step.inserted
    assert not trace.transitions[1].step.inserted


def test_situation_count_and_positive_durations(base_runs):
    for trace, _ in base_runs:
        assert len(trace.situations) == len(trace.transitions) + 1
        assert all(t.duration_seconds > 0 for t in trace.transitions)
        assert trace.total_seconds == pytest.approx(
            sum(t.duration_seconds for t in trace.transitions))


def test_custom_duration_model():
    env = build_env([mug_at(1.0, 0.0)], [inside(3)])
    dm = DurationModel(per_verb_seconds={"grab": 0.5})
    trace = run_script(script_of(Step("grab", ObjectRef("mug", 3))), env, dm)
    assert trace.transitions[0].duration_seconds == pytest.approx(0.5)
