#!/usr/bin/env python3
"""Regenerate the fixture environment JSON files.

The base layout is tuned so the 20 scenario scripts execute end to end and
exactly the six annotated risk events satisfy R1/R2.  The second file keeps
the same layout but swaps in whole-unit geometry for the fridge, a high
towel rack, and a floor-level pillow, producing four additional (false
positive) detections.
"""

import json
import pathlib

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "src" / "vh2kg" / "fixtures"

ROOMS = [
    # id, class, center, size
    (11, "bathroom", (-5, 1.25, -5), (10, 2.5, 10)),
    (74, "bedroom", (5, 1.25, -5), (10, 2.5, 10)),
    (207, "kitchen", (-5, 1.25, 5), (10, 2.5, 10)),
    (336, "livingroom", (5, 1.25, 5), (10, 2.5, 10)),
]

# id, class, room, center, size, states, properties
OBJECTS = [
    # bathroom
    (248, "sink", 11, (-8, 0.85, -8), (0.6, 0.3, 0.5), [], ["CONTAINERS"]),
    (51, "faucet", 11, (-8, 1.05, -7.8), (0.1, 0.15, 0.1), ["OFF"], ["HAS_SWITCH"]),
    (66, "toothbrush", 11, (-8, 1.05, -8.2), (0.03, 0.2, 0.03), ["CLEAN"], ["GRABBABLE", "MOVABLE"]),
    (46, "toilet", 11, (-3, 0.25, -8.5), (0.5, 0.5, 0.6), ["CLEAN"], ["SITTABLE", "CAN_OPEN"]),
    (56, "towel", 11, (-8.5, 1.2, -6.5), (0.4, 0.4, 0.05), ["CLEAN"], ["GRABBABLE", "CLOTHES", "MOVABLE"]),
    (73, "washing_machine", 11, (-6, 0.5, -9.2), (0.7, 1.0, 0.7), ["CLOSED", "OFF"], ["CAN_OPEN", "HAS_SWITCH", "CONTAINERS"]),
    # bedroom
    (111, "bed", 74, (7, 0.4, -7), (2.0, 0.8, 1.6), [], ["SITTABLE", "LIEABLE", "SURFACES"]),
    (423, "pillow", 74, (7.5, 0.875, -7), (0.5, 0.15, 0.3), ["CLEAN"], ["GRABBABLE", "MOVABLE"]),
    (175, "light", 74, (9.7, 1.5, -5), (0.15, 0.25, 0.1), ["ON"], ["HAS_SWITCH"]),
    (104, "tablelamp", 74, (8.8, 0.95, -6.2), (0.3, 0.5, 0.3), ["ON"], ["HAS_SWITCH", "MOVABLE"]),
    (190, "cellphone", 74, (8.8, 1.22, -6.5), (0.07, 0.02, 0.15), ["OFF"], ["GRABBABLE", "MOVABLE"]),
    (107, "bookshelf", 74, (3, 0.9, -9.2), (1.0, 1.8, 0.4), [], ["SURFACES"]),
    (192, "book", 74, (3.2, 1.2, -9.2), (0.15, 0.25, 0.05), [], ["GRABBABLE", "READABLE", "MOVABLE"]),
    (266, "clock", 74, (9.7, 1.75, -3), (0.3, 0.3, 0.1), [], ["GRABBABLE", "MOVABLE"]),
    (110, "desk", 74, (2, 0.425, -6.5), (1.2, 0.85, 0.6), [], ["SURFACES"]),
    (196, "mug", 74, (2.2, 0.91, -6.5), (0.08, 0.12, 0.08), ["DIRTY"], ["GRABBABLE", "MOVABLE", "POURABLE"]),
    # kitchen
    (247, "sink", 207, (-8, 0.85, 8), (0.6, 0.3, 0.5), [], ["CONTAINERS"]),
    (249, "faucet", 207, (-8, 1.05, 7.8), (0.1, 0.15, 0.1), ["OFF"], ["HAS_SWITCH"]),
    (271, "glass", 207, (-7.2, 1.06, 8), (0.07, 0.12, 0.07), ["CLEAN"], ["GRABBABLE", "DRINKABLE", "MOVABLE", "POURABLE"]),
    (306, "fridge", 207, (-9.2, 0.875, 2), (0.8, 1.75, 0.8), ["CLOSED", "PLUGGED_IN"], ["CAN_OPEN", "CONTAINERS", "HAS_PLUG"]),
    (237, "kitchencabinet", 207, (-9.2, 1.6, 4), (0.8, 0.8, 0.5), ["CLOSED"], ["CAN_OPEN", "CONTAINERS"]),
    (310, "breadslice", 207, (-6, 1.02, 8.6), (0.12, 0.02, 0.12), [], ["GRABBABLE", "EATABLE", "MOVABLE"]),
    (274, "plate", 207, (-4, 0.78, 5), (0.2, 0.03, 0.2), ["CLEAN"], ["SURFACES", "MOVABLE"]),
    # livingroom
    (419, "wallpictureframe", 336, (5, 1.4, 5.8), (0.6, 0.4, 0.05), [], ["LOOKABLE"]),
    (434, "computer", 336, (2, 0.95, 8.8), (0.5, 0.4, 0.2), ["OFF"], ["HAS_SWITCH", "LOOKABLE"]),
    (373, "chair", 336, (2.8, 0.45, 8.2), (0.5, 0.9, 0.5), [], ["SITTABLE", "MOVABLE"]),
    (194, "box", 336, (3, 0.15, 3), (0.4, 0.3, 0.4), ["CLOSED"], ["GRABBABLE", "CAN_OPEN", "CONTAINERS", "MOVABLE"]),
    (337, "floor", 336, (5, 0.025, 5), (9.9, 0.05, 9.9), [], ["SURFACES"]),
    (369, "sofa", 336, (7.8, 0.45, 5), (2.0, 0.9, 0.9), [], ["SITTABLE", "LIEABLE", "SURFACES"]),
    (422, "pillow", 336, (8.2, 0.975, 5.2), (0.5, 0.15, 0.3), ["CLEAN"], ["GRABBABLE", "MOVABLE"]),
    (427, "tv", 336, (9.3, 1.1, 5), (1.2, 0.7, 0.15), ["OFF", "PLUGGED_IN"], ["HAS_SWITCH", "LOOKABLE", "HAS_PLUG"]),
    (250, "bookshelf", 336, (2, 0.9, 9.3), (1.0, 1.8, 0.4), [], ["SURFACES"]),
    (287, "clothespile", 336, (2, 0.25, 9.0), (0.4, 0.2, 0.3), ["CLEAN"], ["GRABBABLE", "CLOTHES", "MOVABLE"]),
]

AGENT = (1, "character", 336, (5, 0.9, 5), (0.4, 1.8, 0.3), ["STANDING"], [])

# geometry swaps for the false-positive variant
FP_OVERRIDES = {
    306: {"center": (-9.2, 1.0, 2), "size": (0.8, 2.0, 0.8)},   # whole fridge unit
    56: {"center": (-8.5, 1.75, -6.5), "size": (0.4, 0.4, 0.05)},  # high towel rack
    423: {"center": (7.5, 0.075, -7), "size": (0.5, 0.15, 0.3)},   # pillow on floor
}


def build(overrides=None):
    overrides = overrides or {}
    nodes = []
    edges = []
    for oid, cls, center, size in ROOMS:
        nodes.append({"id": oid, "class_name": cls, "category": "Rooms",
                      "is_room": True, "is_agent": False, "states": [],
                      "properties": [],
                      "bounding_box": {"center": list(center), "size": list(size)}})
    rows = OBJECTS + [AGENT]
    for oid, cls, room, center, size, states, props in rows:
        ov = overrides.get(oid, {})
        nodes.append({"id": oid, "class_name": cls,
                      "category": "Characters" if oid == AGENT[0] else "Objects",
                      "is_room": False, "is_agent": oid == AGENT[0],
                      "states": states, "properties": props,
                      "bounding_box": {
                          "center": list(ov.get("center", center)),
                          "size": list(ov.get("size", size))}})
        edges.append({"from_id": oid, "relation_type": "INSIDE", "to_id": room})
    return {"scene_id": "scene1", "nodes": nodes, "edges": edges}


def main():
    (FIXTURES / "environment.json").write_text(
        json.dumps(build(), indent=2) + "\n")
    (FIXTURES / "environment_fp.json").write_text(
        json.dumps(build(FP_OVERRIDES), indent=2) + "\n")
    print("wrote", FIXTURES / "environment.json")
    print("wrote", FIXTURES / "environment_fp.json")


if __name__ == "__main__":
    main()
