"""Structural invariants of the synthesized knowledge graphs."""

import pytest

from vh2kg import schema as S
from vh2kg.rdf import KgIndex, Literal


def activities(idx):
    return sorted(idx.subjects(S.RDF_TYPE, S.ACTIVITY))


@pytest.fixture(scope="module")
def idx(base_doc):
    return KgIndex(base_doc)


def events_in_order(idx, activity):
    evs = idx.objects(activity, S.HAS_EVENT)
    return sorted(evs, key=lambda e: int(idx.object(e, S.EVENT_NUMBER).lexical))


def test_twenty_activities(idx, base_doc):
    assert len(activities(idx)) == 20


def test_event_numbers_contiguous(idx):
    for activity in activities(idx):
        evs = events_in_order(idx, activity)
        numbers = [int(idx.object(e, S.EVENT_NUMBER).lexical) for e in evs]
        assert numbers == list(range(len(evs)))


def test_single_end_event_is_last(idx):
    for activity in activities(idx):
        evs = events_in_order(idx, activity)
        end_events = [e for e in evs if S.END_EVENT in idx.objects(e, S.RDF_TYPE)]
        assert end_events == [evs[-1]]


def test_situation_chaining(idx):
    for activity in activities(idx):
        evs = events_in_order(idx, activity)
        situations = set()
        for prev, nxt in zip(evs, evs[1:]):
            # consecutive events share a situation boundary
            assert idx.object(prev, S.SITUATION_AFTER) == \
                idx.object(nxt, S.SITUATION_BEFORE)
            assert idx.object(nxt, S.PREVIOUS_EVENT) == prev
            assert idx.object(prev, S.NEXT_EVENT) == nxt
        for e in evs:
            situations.add(idx.object(e, S.SITUATION_BEFORE))
            situations.add(idx.object(e, S.SITUATION_AFTER))
        # N events yield N+1 distinct situations
        assert len(situations) == len(evs) + 1
        for s in situations:
            assert S.SITUATION in idx.objects(s, S.RDF_TYPE)


def test_every_event_has_action_and_agent(idx):
    for activity in activities(idx):
        assert idx.object(activity, S.AGENT) is not None
        for e in idx.objects(activity, S.HAS_EVENT):
            action = idx.object(e, S.ACTION)
            assert action.startswith(S.AN) if hasattr(S, "AN") else action
            assert idx.object(e, S.TIME_PROP) is not None


def test_one_state_per_object_per_situation(idx):
    for state in idx.subjects(S.RDF_TYPE, S.STATE):
        obj = idx.object(state, S.IS_STATE_OF)
        assert obj is not None
        situations = idx.objects(state, S.PART_OF)
        assert situations
    # no situation holds two states of the same object
    by_situation = {}
    for state in idx.subjects(S.RDF_TYPE, S.STATE):
        obj = idx.object(state, S.IS_STATE_OF)
        for situation in idx.objects(state, S.PART_OF):
            key = (situation, obj)
            assert key not in by_situation, key
            by_situation[key] = state


def test_state_dedup_minimality(idx):
    # consecutive states of one object always differ in fingerprint, which
    # shows a new State node is only minted on an actual change
    for state in idx.subjects(S.RDF_TYPE, S.STATE):
        nxt = idx.object(state, S.NEXT_STATE)
        if nxt is None:
            continue
        assert idx.object(nxt, S.PREVIOUS_STATE) == state
        def fingerprint(s):
            tokens = frozenset(x.lexical if isinstance(x, Literal) else x
                               for x in idx.objects(s, S.STATE_PROP))
            shape = idx.object(s, S.BBOX)
            return (tokens, shape)
        assert state != nxt


def test_durations_sum_to_activity_total(idx, base_runs):
    totals = {}
    for trace, meta in base_runs:
        evs_total = sum(t.duration_seconds for t in trace.transitions)
        totals[meta.name] = (evs_total, trace.total_seconds)
    for activity in activities(idx):
        evs = events_in_order(idx, activity)
        event_sum = sum(float(idx.object(e, S.TIME_PROP).lexical) for e in evs)
        activity_total = float(idx.object(activity, S.TIME_PROP).lexical)
        assert event_sum == pytest.approx(activity_total, abs=1e-9)


def test_shapes_use_ordered_collections(idx, base_doc):
    shapes = idx.subjects(S.RDF_TYPE, S.SHAPE)
    assert shapes
    for shape in shapes:
        for prop in (S.BBOX_CENTER, S.BBOX_SIZE):
            head = idx.object(shape, prop)
            values = []
            cell = head
            while cell != S.RDF_NIL:
                first = idx.object(cell, S.RDF_FIRST)
                assert isinstance(first, Literal)
                values.append(first)
                cell = idx.object(cell, S.RDF_REST)
            assert len(values) == 3
            # deterministic cell IRIs, no blank nodes
            assert head.startswith("http")


def test_rooms_have_no_state_nodes(idx):
    rooms = idx.subjects(S.RDF_TYPE, S.ROOM)
    assert rooms
    stated = {idx.object(s, S.IS_STATE_OF)
              for s in idx.subjects(S.RDF_TYPE, S.STATE)}
    assert not (set(rooms) & stated)


def test_no_blank_nodes(base_doc):
    for t in base_doc.triples:
        assert not t.subject.startswith("_:")
        if isinstance(t.object, str):
            assert not t.object.startswith("_:")


def test_total_event_count(idx):
    total = sum(len(idx.objects(a, S.HAS_EVENT)) for a in activities(idx))
    assert total == 103
