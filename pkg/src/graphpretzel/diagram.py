"""Planar link diagrams as PD codes.

A crossing lists its four incident arc labels counterclockwise starting
from the incoming under-strand, the usual PD convention, so externally
produced PD codes interoperate.  Crossing-free circle components cannot be
expressed in PD slots and are tracked by an explicit ``free_loops``
counter.  Orientation is an optional layer: the bracket works on the
unoriented core, Jones and Alexander need the oriented form.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence


class DiagramError(ValueError):
    """Malformed diagram, PD text or inapplicable operation."""


@dataclass(frozen=True)
class Crossing:
    """Four arc labels, counterclockwise from the incoming under-strand.

    slots[0]/slots[2] form the under-strand, slots[1]/slots[3] the over.
    """

    slots: tuple[int, int, int, int]

    def rotated(self, k: int) -> "Crossing":
        s = self.slots
        k %= 4
        return Crossing((s[k], s[(k + 1) % 4], s[(k + 2) % 4], s[(k + 3) % 4]))


Occurrence = tuple[int, int]  # (crossing index, slot)


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...]
    arc_count: int
    free_loops: int = 0
    # per-arc head occurrence (the slot the arc flows into); None = unoriented
    orientation: tuple[Occurrence, ...] | None = None

    @property
    def oriented(self) -> bool:
        return self.orientation is not None

    def occurrences(self) -> dict[int, list[Occurrence]]:
        occ: dict[int, list[Occurrence]] = {}
        for ci, x in enumerate(self.crossings):
            for s, arc in enumerate(x.slots):
                occ.setdefault(arc, []).append((ci, s))
        return occ

    def validate(self) -> None:
        """Check the PD invariants; raises DiagramError on the first failure."""
        if self.arc_count < 0 or self.free_loops < 0:
            raise DiagramError("negative arc or loop count")
        occ = self.occurrences()
        for arc in occ:
            if not (1 <= arc <= self.arc_count):
                raise DiagramError(f"arc label {arc} outside 1..{self.arc_count}")
        for arc in range(1, self.arc_count + 1):
            n = len(occ.get(arc, []))
            if n != 2:
                raise DiagramError(f"arc {arc} appears {n} times, expected 2")
        if not self.crossings and not self.free_loops:
            raise DiagramError("empty diagram (no crossings, no loops)")
        # arc traversal must close up; walking every strand visits each arc once
        seen: set[int] = set()
        for cycle in self._strand_cycles(occ):
            for ci, s in cycle:
                seen.add(self.crossings[ci].slots[s])
        if len(seen) != self.arc_count:
            raise DiagramError("strand traversal does not cover all arcs")
        if self.orientation is not None:
            self._validate_orientation(occ)

    def _validate_orientation(self, occ: dict[int, list[Occurrence]]) -> None:
        heads = self.orientation
        if heads is None or len(heads) != self.arc_count:
            raise DiagramError("orientation must assign a head to every arc")
        for arc in range(1, self.arc_count + 1):
            if tuple(heads[arc - 1]) not in occ[arc]:
                raise DiagramError(f"orientation head of arc {arc} is not an endpoint")
        for ci, x in enumerate(self.crossings):
            for s_in in range(4):
                arc_in = x.slots[s_in]
                arc_out = x.slots[(s_in + 2) % 4]
                if heads[arc_in - 1] == (ci, s_in) and heads[arc_out - 1] == (ci, (s_in + 2) % 4):
                    raise DiagramError(f"crossing {ci}: strand flows in on both ends")
                if heads[arc_in - 1] != (ci, s_in) and heads[arc_out - 1] != (ci, (s_in + 2) % 4):
                    raise DiagramError(f"crossing {ci}: strand flows out on both ends")
            if heads[x.slots[0] - 1] != (ci, 0):
                raise DiagramError(
                    f"crossing {ci}: slot 0 is not the incoming under-strand"
                )

    # -- strand traversal -------------------------------------------------

    def _next_entry(self, occ, entry: Occurrence) -> Occurrence:
        ci, s = entry
        exit_slot = (s + 2) % 4
        arc = self.crossings[ci].slots[exit_slot]
        a, b = occ[arc]
        return b if a == (ci, exit_slot) else a

    def _strand_cycles(self, occ=None) -> list[list[Occurrence]]:
        """Cycles of entering occurrences, one per closed strand component."""
        if occ is None:
            occ = self.occurrences()
        cycles = []
        visited: set[Occurrence] = set()
        for arc in sorted(occ):
            start = occ[arc][0]
            if start in visited:
                continue
            # also skip if we visited this arc travelling the other way
            if occ[arc][1] in visited:
                continue
            cycle = [start]
            visited.add(start)
            cur = self._next_entry(occ, start)
            while cur != start:
                cycle.append(cur)
                visited.add(cur)
                cur = self._next_entry(occ, cur)
            cycles.append(cycle)
        return cycles


def components(d: Diagram) -> int:
    """Number of closed components, free loops included."""
    d.validate()
    return len(d._strand_cycles()) + d.free_loops


def unknot(loops: int = 1) -> Diagram:
    return Diagram((), 0, free_loops=loops)


def orient(d: Diagram, hints: Mapping[int, Occurrence] | None = None) -> Diagram:
    """Assign a consistent orientation and normalize slot rotations.

    Each component is directed along its traversal from its lowest arc; a
    hint (arc -> desired head occurrence) flips the component it lies on.
    Crossings are rotated so slot 0 is the incoming under-strand.
    """
    occ = d.occurrences()
    heads: dict[int, Occurrence] = {}
    for cycle in d._strand_cycles(occ):
        # entering occurrences along the default direction
        cycle_heads = {d.crossings[ci].slots[s]: (ci, s) for ci, s in cycle}
        flip = False
        if hints:
            for arc, want in hints.items():
                if arc in cycle_heads:
                    flip = cycle_heads[arc] != tuple(want)
                    break
        if flip:
            for arc, head in cycle_heads.items():
                a, b = occ[arc]
                cycle_heads[arc] = b if a == head else a
        heads.update(cycle_heads)

    # rotate each crossing so the under-strand enters at slot 0
    new_crossings: list[Crossing] = []
    rot: list[int] = []
    for ci, x in enumerate(d.crossings):
        k = 0 if heads[x.slots[0]] == (ci, 0) else 2
        rot.append(k)
        new_crossings.append(x.rotated(k))
    remapped = tuple(
        (ci, (s - rot[ci]) % 4) for ci, s in (heads[a] for a in range(1, d.arc_count + 1))
    )
    out = Diagram(tuple(new_crossings), d.arc_count, d.free_loops, remapped)
    out.validate()
    return out


def forget_orientation(d: Diagram) -> Diagram:
    return replace(d, orientation=None)


def crossing_sign(d: Diagram, ci: int) -> int:
    """+1/-1 by the right-hand rule; requires an oriented diagram."""
    if d.orientation is None:
        raise DiagramError("crossing sign needs an oriented diagram")
    x = d.crossings[ci]
    return 1 if d.orientation[x.slots[1] - 1] == (ci, 1) else -1


def writhe(d: Diagram) -> int:
    if d.orientation is None:
        raise DiagramError("writhe needs an oriented diagram")
    return sum(crossing_sign(d, ci) for ci in range(len(d.crossings)))


def mirror(d: Diagram) -> Diagram:
    """Swap over/under at every crossing (slot rotation by one)."""
    rotated = tuple(x.rotated(1) for x in d.crossings)
    if d.orientation is None:
        return Diagram(rotated, d.arc_count, d.free_loops)
    remapped = tuple((ci, (s - 1) % 4) for ci, s in d.orientation)
    out = Diagram(rotated, d.arc_count, d.free_loops, remapped)
    # re-pin slot 0 to the incoming under-strand
    return orient(forget_orientation(out), hints=_head_hints(out))


def _head_hints(d: Diagram) -> dict[int, Occurrence]:
    assert d.orientation is not None
    return {arc: d.orientation[arc - 1] for arc in range(1, d.arc_count + 1)}


def faces(d: Diagram) -> list[list[Occurrence]]:
    """Faces of the underlying 4-valent map (orbits of the rotation system).

    Darts are (crossing, slot) pairs read as arc ends; the next dart walks
    the arc to its far end and turns clockwise.
    """
    occ = d.occurrences()
    darts = [(ci, s) for ci in range(len(d.crossings)) for s in range(4)]
    out: list[list[Occurrence]] = []
    seen: set[Occurrence] = set()
    for start in darts:
        if start in seen:
            continue
        face = []
        cur = start
        while True:
            face.append(cur)
            seen.add(cur)
            ci, s = cur
            arc = d.crossings[ci].slots[s]
            a, b = occ[arc]
            far = b if a == (ci, s) else a
            cur = (far[0], (far[1] - 1) % 4)
            if cur == start:
                break
        out.append(face)
    return out


# -- PD text form ------------------------------------------------------------

_PD_TOKEN = re.compile(r"X\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]|O(?![A-Za-z])")


def parse_pd(text: str) -> Diagram:
    """Parse PD text like ``X[1,4,2,3] X[3,2,4,1]``; ``O`` adds a free loop.

    The two-occurrences-per-arc invariant is enforced; errors carry
    line/column positions.
    """
    crossings: list[Crossing] = []
    loops = 0
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _PD_TOKEN.match(text, pos)
        if not m:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            raise DiagramError(f"PD syntax error at line {line}, column {col}")
        if m.group(0).startswith("X"):
            crossings.append(Crossing(tuple(int(m.group(i)) for i in range(1, 5))))
        else:
            loops += 1
        pos = m.end()
    if not crossings and not loops:
        raise DiagramError("empty PD text")
    arcs = {a for x in crossings for a in x.slots}
    d = Diagram(tuple(crossings), max(arcs) if arcs else 0, loops)
    d.validate()
    return d


def emit_pd(d: Diagram) -> str:
    """Canonical PD text; inverse of parse_pd on canonical form."""
    pieces = []
    for x in d.crossings:
        s = x.slots
        if d.orientation is None and x.rotated(2).slots < s:
            s = x.rotated(2).slots
        pieces.append(f"X[{s[0]},{s[1]},{s[2]},{s[3]}]")
    pieces.extend("O" * d.free_loops)
    return " ".join(pieces)


def gauss_code(d: Diagram) -> str:
    """Signed Gauss code for a knot diagram, e.g. ``O1+ U2+ O3+ ...``."""
    if d.free_loops or not d.crossings:
        if d.free_loops == 1 and not d.crossings:
            return ""
        raise DiagramError("Gauss code is only emitted for one-component knots")
    od = d if d.oriented else orient(d)
    cycles = od._strand_cycles()
    if len(cycles) != 1:
        raise DiagramError("Gauss code is only emitted for one-component knots")
    number: dict[int, int] = {}
    tokens = []
    for ci, s in cycles[0]:
        if ci not in number:
            number[ci] = len(number) + 1
        ou = "U" if s % 2 == 0 else "O"
        sign = "+" if crossing_sign(od, ci) > 0 else "-"
        tokens.append(f"{ou}{number[ci]}{sign}")
    return " ".join(tokens)


def diagram_to_json(d: Diagram) -> str:
    payload = {
        "crossings": [list(x.slots) for x in d.crossings],
        "arc_count": d.arc_count,
        "free_loops": d.free_loops,
        "orientation": [list(h) for h in d.orientation] if d.orientation else None,
    }
    return json.dumps(payload, separators=(",", ":"))


def diagram_from_json(text: str) -> Diagram:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"bad diagram JSON: {exc}") from exc
    try:
        crossings = tuple(Crossing(tuple(int(v) for v in s)) for s in payload["crossings"])
        orientation = payload.get("orientation")
        heads = tuple((int(a), int(b)) for a, b in orientation) if orientation else None
        d = Diagram(crossings, int(payload["arc_count"]), int(payload.get("free_loops", 0)), heads)
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagramError(f"bad diagram JSON structure: {exc}") from exc
    d.validate()
    return d
