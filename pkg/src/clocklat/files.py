"""Reading and writing multiverse files.

A multiverse file is JSON with these fields (unknown fields are rejected):

``vertices``     rotation per vertex: the darts based there, listed
                 counterclockwise.  Vertex ids are list positions.
``edges``        dart pairs, one per edge (boundary arcs included).
``boundary``     one walk per boundary circle: its forward darts, listed
                 with the surface on the left.  ``[]`` is a circle meeting
                 no vertex.
``outer``        index of the outer boundary circle.
``starred``      starred face ids (faces are numbered by the validator in
                 trace order; ``clocklat validate`` prints the table).
``containment``  optional nesting entries ``[child_component,
                 parent_component, parent_face]`` with an optional fourth
                 element naming the child's outer face.
``framing``      optional spine framing overlay, an object with any of
                 ``black_rotations`` (face id -> ccw corner list),
                 ``circle_homes`` and ``component_homes`` (object id ->
                 strand dart identifying a subdivision polygon).

A file may instead carry ``components``: a list of objects with
``vertices``/``edges``/``boundary`` each, which are concatenated (vertex
ids shift by position; dart ids must be globally unique).
"""

from __future__ import annotations

import json

from .combmap import ContainmentForest, build_map, Arrangement
from .errors import SchemaError
from .multiverse import Multiverse
from .spine import Framing, canonical_framing

_TOP_FIELDS = {"vertices", "edges", "boundary", "outer", "starred",
               "containment", "framing", "components", "comment"}
_COMPONENT_FIELDS = {"vertices", "edges", "boundary", "comment"}
_FRAMING_FIELDS = {"black_rotations", "circle_homes", "component_homes"}


def _check_fields(doc, allowed, where):
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: expected an object")
    unknown = set(doc) - allowed
    if unknown:
        raise SchemaError(f"{where}: unknown fields {sorted(unknown)}")


def parse_multiverse(doc) -> Multiverse:
    """Build (but do not validate) a multiverse from a parsed JSON object."""
    _check_fields(doc, _TOP_FIELDS, "multiverse")
    if "components" in doc:
        if "vertices" in doc or "edges" in doc or "boundary" in doc:
            raise SchemaError("use either components or flat fields")
        rotations, edges, boundary = [], [], []
        for i, comp in enumerate(doc["components"]):
            _check_fields(comp, _COMPONENT_FIELDS, f"component {i}")
            rotations.extend(comp.get("vertices", []))
            edges.extend(comp.get("edges", []))
            boundary.extend(comp.get("boundary", []))
    else:
        rotations = doc.get("vertices", [])
        edges = doc.get("edges", [])
        boundary = doc.get("boundary", [])

    try:
        cmap = build_map(rotations, edges, boundary)
    except (TypeError, KeyError) as exc:
        raise SchemaError(f"malformed map data: {exc}")

    containment = [tuple(e) for e in doc.get("containment", [])]
    for e in containment:
        if len(e) not in (3, 4):
            raise SchemaError(f"containment entry {e} needs 3 or 4 fields")
    outer = doc.get("outer")
    if outer is None and len(cmap.boundary) == 1:
        outer = 0
    arr = Arrangement(cmap, ContainmentForest.from_lists(containment), outer)
    return Multiverse(arr, set(doc.get("starred", [])))


def parse_framing(doc, mv) -> Framing:
    """The framing overlay of a file, defaulting to the canonical rule."""
    fr = doc.get("framing")
    if fr is None:
        return canonical_framing(mv)
    _check_fields(fr, _FRAMING_FIELDS, "framing")
    canonical = dict(canonical_framing(mv).black_rotation)
    for face, rot in fr.get("black_rotations", {}).items():
        canonical[int(face)] = tuple(rot)
    homes = []
    for cid, dart in fr.get("circle_homes", {}).items():
        homes.append((('circle', int(cid)), dart))
    for comp, dart in fr.get("component_homes", {}).items():
        homes.append((('component', int(comp)), dart))
    return Framing(tuple(sorted(canonical.items())), tuple(homes))


def load_multiverse(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: {exc}")
    mv = parse_multiverse(doc)
    return mv, parse_framing(doc, mv)


def multiverse_doc(rotations, edges, boundary, outer, starred,
                  containment=(), framing=None, comment=None):
    """Serializable document for a multiverse given raw map data."""
    doc = {}
    if comment:
        doc["comment"] = comment
    doc.update({
        "vertices": [list(r) for r in rotations],
        "edges": [list(e) for e in edges],
        "boundary": [list(w) for w in boundary],
        "outer": outer,
        "starred": sorted(starred),
    })
    if containment:
        doc["containment"] = [list(e) for e in containment]
    if framing:
        doc["framing"] = framing
    return doc


def dump_multiverse(doc, path):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")
