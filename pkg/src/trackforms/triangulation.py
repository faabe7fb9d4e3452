"""Ideal triangulations of punctured surfaces.

A triangulation is encoded combinatorially: ``triangle_count`` oriented
triangles whose sides are indexed 0, 1, 2 counterclockwise, together with a
fixed-point-free involution on the side slots ``(triangle, side)`` pairing
each side with the side it is glued to.  Gluings reverse orientation, so the
quotient is a closed oriented surface; its vertices are the punctures.

Derived combinatorics used throughout the package:

* ``edges``: the orbits of the gluing involution, indexed in order of first
  appearance of a slot in lexicographic order.  There are ``n = 6g + 3s - 6``
  of them for genus ``g`` and ``s`` punctures.
* corner cycles: corner ``(t, k)`` of triangle ``t`` is the vertex shared by
  sides ``k`` and ``k+1 (mod 3)``.  Walking counterclockwise around a
  puncture visits corners via ``next(t, k) = (t', k'-1 mod 3)`` where
  ``(t', k')`` is the slot glued to ``(t, k)``.  The cycles partition the
  ``3 * triangle_count`` corners, one cycle per puncture.
* the succession matrix ``sigma``: each corner ``(t, k)`` is swept
  counterclockwise from the ray of side ``k+1`` to the ray of side ``k``, so
  it records one immediate succession of an end of ``edge(t, k)`` after an
  end of ``edge(t, k+1)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

Slot = tuple[int, int]
Corner = tuple[int, int]


class TriangulationError(ValueError):
    """Structurally invalid gluing data or unrealizable (genus, punctures)."""


@dataclass
class Diagnostics:
    """Result of validating raw gluing data.

    ``errors`` lists violated invariants with slot coordinates; the remaining
    fields are populated only when the data is structurally sound.
    """

    errors: list[str] = field(default_factory=list)
    genus: int | None = None
    punctures: int | None = None
    edge_count: int | None = None
    corner_cycles: tuple[tuple[Corner, ...], ...] | None = None

    @property
    def ok(self) -> bool:
        return not self.errors


def _normalize_gluings(gluings) -> list[tuple[Slot, Slot]]:
    out = []
    for pair in gluings:
        (t1, k1), (t2, k2) = pair
        out.append(((int(t1), int(k1)), (int(t2), int(k2))))
    return out


def diagnose(triangle_count: int, gluings) -> Diagnostics:
    """Check gluing data and recover (genus, punctures, edges, corner cycles)."""
    diag = Diagnostics()
    if triangle_count <= 0:
        diag.errors.append("triangle count must be positive")
        return diag

    pairs = _normalize_gluings(gluings)
    slots = {(t, k) for t in range(triangle_count) for k in range(3)}
    pairing: dict[Slot, Slot] = {}
    for a, b in pairs:
        for slot in (a, b):
            if slot not in slots:
                diag.errors.append(f"slot {slot} out of range")
        if a == b:
            diag.errors.append(f"slot {a} glued to itself")
            continue
        for x, y in ((a, b), (b, a)):
            if x in pairing and pairing[x] != y:
                diag.errors.append(f"slot {x} glued twice")
            pairing[x] = y
    for slot in sorted(slots):
        if slot not in pairing:
            diag.errors.append(f"slot {slot} unglued")
    if diag.errors:
        return diag

    # Edge orbits, indexed by first appearance.
    edge_of: dict[Slot, int] = {}
    edges: list[tuple[Slot, Slot]] = []
    for slot in sorted(slots):
        if slot in edge_of:
            continue
        other = pairing[slot]
        edge_of[slot] = edge_of[other] = len(edges)
        edges.append((slot, other))

    # Counterclockwise corner walk around each puncture.
    def next_corner(c: Corner) -> Corner:
        t2, k2 = pairing[c]
        return (t2, (k2 - 1) % 3)

    seen: set[Corner] = set()
    cycles: list[tuple[Corner, ...]] = []
    for t in range(triangle_count):
        for k in range(3):
            if (t, k) in seen:
                continue
            cycle = []
            c = (t, k)
            while c not in seen:
                seen.add(c)
                cycle.append(c)
                c = next_corner(c)
            cycles.append(tuple(cycle))

    s = len(cycles)
    n = len(edges)
    # Euler characteristic of the compactified surface: s - n + faces = 2 - 2g.
    chi = s - n + triangle_count
    if chi % 2 != 0:
        diag.errors.append(f"odd Euler characteristic {chi}")
        return diag
    g = (2 - chi) // 2
    if g < 0:
        diag.errors.append(f"negative genus {g}")
        return diag
    if 2 - 2 * g - s >= 0:
        diag.errors.append(f"(g, s) = ({g}, {s}) has non-negative punctured Euler characteristic")
        return diag

    diag.genus = g
    diag.punctures = s
    diag.edge_count = n
    diag.corner_cycles = tuple(cycles)
    return diag


class IdealTriangulation:
    """Immutable ideal triangulation with its derived combinatorics."""

    def __init__(self, triangle_count: int, gluings):
        diag = diagnose(triangle_count, gluings)
        if not diag.ok:
            raise TriangulationError("; ".join(diag.errors))
        self.triangle_count = triangle_count
        self.gluing: dict[Slot, Slot] = {}
        for a, b in _normalize_gluings(gluings):
            self.gluing[a] = b
            self.gluing[b] = a
        self.genus = diag.genus
        self.punctures = diag.punctures
        self.corner_cycles = diag.corner_cycles
        self.edge_of: dict[Slot, int] = {}
        self.edges: list[tuple[Slot, Slot]] = []
        for t in range(triangle_count):
            for k in range(3):
                slot = (t, k)
                if slot in self.edge_of:
                    continue
                other = self.gluing[slot]
                self.edge_of[slot] = self.edge_of[other] = len(self.edges)
                self.edges.append((slot, other))
        self.puncture_of_corner: dict[Corner, int] = {}
        for p, cycle in enumerate(self.corner_cycles):
            for corner in cycle:
                self.puncture_of_corner[corner] = p

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_ends(self, puncture: int) -> tuple[Slot, ...]:
        """Edge-ends crossed in ccw order around a puncture (the exit ray of each corner)."""
        return tuple((t, k) for (t, k) in self.corner_cycles[puncture])

    def __repr__(self) -> str:
        return (f"IdealTriangulation(g={self.genus}, s={self.punctures}, "
                f"faces={self.triangle_count}, edges={self.edge_count})")

    # JSON round-trip ----------------------------------------------------

    def to_json_dict(self) -> dict:
        pairs = []
        done = set()
        for slot in sorted(self.gluing):
            if slot in done:
                continue
            other = self.gluing[slot]
            done.add(slot)
            done.add(other)
            pairs.append([list(slot), list(other)])
        return {"triangles": self.triangle_count, "gluings": pairs}

    @classmethod
    def from_json_dict(cls, data: dict) -> "IdealTriangulation":
        try:
            triangles = data["triangles"]
            gluings = [((a[0], a[1]), (b[0], b[1])) for a, b in data["gluings"]]
        except (KeyError, TypeError, IndexError) as exc:
            raise TriangulationError(f"malformed triangulation JSON: {exc}") from exc
        return cls(triangles, gluings)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "IdealTriangulation":
        return cls.from_json_dict(json.loads(text))


def validate(triangulation_or_count, gluings=None) -> Diagnostics:
    """Diagnostics for a triangulation object or for raw (count, gluings) data."""
    if gluings is None:
        tri = triangulation_or_count
        data = tri.to_json_dict()
        return diagnose(data["triangles"], [((a[0], a[1]), (b[0], b[1])) for a, b in data["gluings"]])
    return diagnose(triangulation_or_count, gluings)


def _doubled_polygon(s: int) -> IdealTriangulation:
    # Double of a fan-triangulated s-gon: genus 0, punctures at the s polygon
    # vertices.  Top triangles 0..s-3 are (0, j+1, j+2), bottom triangles are
    # the mirror images, glued along the polygon boundary.
    top = lambda j: j
    bot = lambda j: (s - 2) + j
    gluings: list[tuple[Slot, Slot]] = []
    for j in range(s - 3):
        gluings.append(((top(j), 2), (top(j + 1), 0)))
        gluings.append(((bot(j), 0), (bot(j + 1), 2)))

    def top_boundary(k: int) -> Slot:
        if k == 0:
            return (top(0), 0)
        if k <= s - 2:
            return (top(k - 1), 1)
        return (top(s - 3), 2)

    def bottom_boundary(k: int) -> Slot:
        if k == 0:
            return (bot(0), 2)
        if k <= s - 2:
            return (bot(k - 1), 1)
        return (bot(s - 3), 0)

    for k in range(s):
        gluings.append((top_boundary(k), bottom_boundary(k)))
    return IdealTriangulation(2 * (s - 2), gluings)


def _fan_word_polygon(g: int, s: int) -> IdealTriangulation:
    # Fan-triangulated (4g + 2s - 2)-gon whose boundary carries the word
    # a1 b1 a1' b1' ... ag bg ag' bg' c1 c1' ... c_{s-1} c_{s-1}'  (x' = x^{-1}).
    # The commutator part contributes the genus; each folded pair c_j c_j'
    # pins one extra puncture at the polygon vertex between the two sides.
    P = 4 * g + 2 * s - 2
    gluings: list[tuple[Slot, Slot]] = []
    for j in range(P - 3):
        gluings.append(((j, 2), (j + 1, 0)))

    def boundary(k: int) -> Slot:
        if k == 0:
            return (0, 0)
        if k <= P - 2:
            return (k - 1, 1)
        return (P - 3, 2)

    for i in range(g):
        base = 4 * i
        gluings.append((boundary(base), boundary(base + 2)))
        gluings.append((boundary(base + 1), boundary(base + 3)))
    for j in range(s - 1):
        base = 4 * g + 2 * j
        gluings.append((boundary(base), boundary(base + 1)))
    return IdealTriangulation(P - 2, gluings)


def standard_triangulation(g: int, s: int) -> IdealTriangulation:
    """Deterministic ideal triangulation of the genus-g surface with s punctures.

    Genus 0 uses the double of a fan-triangulated s-gon (all corner cycles of
    the triangle pillow at s = 3 have length 2); positive genus uses a
    fan-triangulated polygon with the standard commutator word followed by
    folded puncture pairs.  Rejects (g, s) that admit no ideal triangulation.
    """
    if g < 0 or s < 1 or 2 - 2 * g - s >= 0:
        raise TriangulationError(f"(g, s) = ({g}, {s}) admits no ideal triangulation")
    tri = _doubled_polygon(s) if g == 0 else _fan_word_polygon(g, s)
    if (tri.genus, tri.punctures) != (g, s):
        raise AssertionError(f"construction bug: requested ({g}, {s}), built "
                             f"({tri.genus}, {tri.punctures})")
    return tri


def succession_counts(tri: IdealTriangulation) -> list[list[int]]:
    """Matrix a[i][j]: corners where an end of edge j immediately succeeds an end of edge i, ccw."""
    n = tri.edge_count
    a = [[0] * n for _ in range(n)]
    for t in range(tri.triangle_count):
        for k in range(3):
            i = tri.edge_of[(t, (k + 1) % 3)]
            j = tri.edge_of[(t, k)]
            a[i][j] += 1
    return a


def sigma_matrix(tri: IdealTriangulation) -> list[list[int]]:
    """Antisymmetrized succession matrix sigma = a - a^T, entries in [-2, 2]."""
    a = succession_counts(tri)
    n = tri.edge_count
    return [[a[i][j] - a[j][i] for j in range(n)] for i in range(n)]
