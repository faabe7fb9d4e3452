"""Train tracks, integer weight systems, and the skew intersection pairing.

Encoding
--------
A train track has ``branch_count`` branches, each with two ends; a *dart* is
the pair ``(branch, end)`` with ``end`` in ``{0, 1}``.  Every switch has two
opposite sides, ``side_a`` and ``side_b``, each an ordered tuple of darts
read **left to right when looking out of the switch along the common tangent
direction of that side**.  Every dart occupies exactly one germ slot and both
sides of every switch are non-empty.

Counterclockwise rotation at a switch (with respect to the ambient surface
orientation) therefore visits ``reversed(side_a)`` followed by
``reversed(side_b)``: each side's germs are crossed right to left, since the
two sides point along opposite tangent directions.  Corners between
cyclically consecutive germs on the *same* side are spikes (cusps of the
complementary regions), while the two corners joining the ends of the two
sides are smooth.

Weight systems are integer tuples indexed by branch, satisfying at every
switch ``sum(side_a weights) == sum(side_b weights)``.  The intersection
pairing of two weight systems is

    theta(a, b) = 1/2 * sum over same-side germ pairs (e right of e') of
                  a(e) b(e') - a(e') b(e)

where the doubled sum is always even; an odd doubled sum indicates a germ
bookkeeping bug and raises :class:`IntegralityViolation`.

The track of a triangulation
----------------------------
``from_triangulation`` builds the track carrying the balanced lattice of an
ideal triangulation: one switch per edge, and in each triangle three
branches, one per corner.  Branch ``3*t + j`` cuts corner ``j`` of triangle
``t``; its end 0 sits on side ``j`` and its end 1 on side ``j+1 (mod 3)``.
Each switch side is the germ list of one triangle-side slot:
``[(3*t + (k+2) % 3, 1), (3*t + k, 0)]`` left to right.  With this ordering
theta agrees with the succession-matrix pairing of switch-sum vectors (see
``tests``), which pins the sign convention.
"""

from __future__ import annotations

from dataclasses import dataclass

from .triangulation import IdealTriangulation

Dart = tuple[int, int]


class TrackError(ValueError):
    """Structurally invalid train-track data."""


class IntegralityViolation(ArithmeticError):
    """The doubled intersection sum came out odd: germ ordering bug."""


class ParityViolation(ValueError):
    """A switch-sum vector with an odd total on some triangle."""

    def __init__(self, triangle: int, total: int):
        super().__init__(f"odd switch-sum total {total} on triangle {triangle}")
        self.triangle = triangle


class OddSpikesError(ValueError):
    """Region weight systems require an even number of spikes."""


class TrainTrack:
    def __init__(self, branch_count: int, switches):
        self.branch_count = branch_count
        self.switches: tuple[tuple[tuple[Dart, ...], tuple[Dart, ...]], ...] = tuple(
            (tuple((int(b), int(e)) for b, e in side_a),
             tuple((int(b), int(e)) for b, e in side_b))
            for side_a, side_b in switches
        )
        self.dart_slot: dict[Dart, tuple[int, int, int]] = {}
        for s, (side_a, side_b) in enumerate(self.switches):
            if not side_a or not side_b:
                raise TrackError(f"switch {s} has an empty side")
            for side_idx, side in enumerate((side_a, side_b)):
                for pos, dart in enumerate(side):
                    if dart in self.dart_slot:
                        raise TrackError(f"dart {dart} appears twice")
                    self.dart_slot[dart] = (s, side_idx, pos)
        expected = {(b, e) for b in range(branch_count) for e in (0, 1)}
        missing = expected - set(self.dart_slot)
        extra = set(self.dart_slot) - expected
        if missing:
            raise TrackError(f"unattached branch ends: {sorted(missing)}")
        if extra:
            raise TrackError(f"unknown darts: {sorted(extra)}")

    @property
    def switch_count(self) -> int:
        return len(self.switches)

    def is_connected(self) -> bool:
        if self.switch_count == 0:
            return False
        parent = list(range(self.switch_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for b in range(self.branch_count):
            s1 = self.dart_slot[(b, 0)][0]
            s2 = self.dart_slot[(b, 1)][0]
            parent[find(s1)] = find(s2)
        return len({find(s) for s in range(self.switch_count)}) == 1

    def __repr__(self) -> str:
        return f"TrainTrack(branches={self.branch_count}, switches={self.switch_count})"

    def to_json_dict(self) -> dict:
        return {
            "branches": self.branch_count,
            "switches": [
                {"side_a": [list(d) for d in side_a], "side_b": [list(d) for d in side_b]}
                for side_a, side_b in self.switches
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "TrainTrack":
        try:
            branches = data["branches"]
            switches = [
                ([(d[0], d[1]) for d in sw["side_a"]], [(d[0], d[1]) for d in sw["side_b"]])
                for sw in data["switches"]
            ]
        except (KeyError, TypeError, IndexError) as exc:
            raise TrackError(f"malformed train-track JSON: {exc}") from exc
        return cls(branches, switches)


class TriangulationTrack(TrainTrack):
    """The track of an ideal triangulation; switch i lies on edge i."""

    def __init__(self, tri: IdealTriangulation):
        switches = []
        for slot1, slot2 in tri.edges:
            switches.append((self._slot_germs(slot1), self._slot_germs(slot2)))
        super().__init__(3 * tri.triangle_count, switches)
        self.tri = tri
        # Branch 3*t + j cuts corner (t, j); one side of it faces the corner's
        # puncture region, the other the central region of triangle t.
        self.branch_corner = [(b // 3, b % 3) for b in range(self.branch_count)]

    @staticmethod
    def _slot_germs(slot) -> list[Dart]:
        t, k = slot
        return [(3 * t + (k + 2) % 3, 1), (3 * t + k, 0)]


def from_triangulation(tri: IdealTriangulation) -> TriangulationTrack:
    return TriangulationTrack(tri)


# --- weight systems ------------------------------------------------------

def switch_defects(track: TrainTrack, weights) -> list[int]:
    """Per-switch difference of the two side sums (all zero for a weight system)."""
    if len(weights) != track.branch_count:
        raise TrackError(f"expected {track.branch_count} weights, got {len(weights)}")
    out = []
    for side_a, side_b in track.switches:
        out.append(sum(weights[b] for b, _ in side_a) - sum(weights[b] for b, _ in side_b))
    return out


def is_weight_system(track: TrainTrack, weights) -> bool:
    return all(d == 0 for d in switch_defects(track, weights))


def require_weight_system(track: TrainTrack, weights) -> tuple[int, ...]:
    defects = switch_defects(track, weights)
    bad = [s for s, d in enumerate(defects) if d != 0]
    if bad:
        raise TrackError(f"switch conditions violated at switches {bad}")
    return tuple(int(w) for w in weights)


def switch_matrix(track: TrainTrack) -> list[list[int]]:
    """Integer matrix of the switch conditions (rows: switches, cols: branches)."""
    rows = []
    for side_a, side_b in track.switches:
        row = [0] * track.branch_count
        for b, _ in side_a:
            row[b] += 1
        for b, _ in side_b:
            row[b] -= 1
        rows.append(row)
    return rows


def weight_lattice_basis(track: TrainTrack) -> list[tuple[int, ...]]:
    """Basis of the integer kernel of the switch conditions, canonically ordered."""
    from .lattice import integer_kernel_basis

    basis = integer_kernel_basis(switch_matrix(track))
    return [tuple(v) for v in basis]


def switch_sums(track: TrainTrack, weights) -> tuple[int, ...]:
    """The side sum at each switch (both sides agree for a weight system)."""
    w = require_weight_system(track, weights)
    return tuple(sum(w[b] for b, _ in side_a) for side_a, _ in track.switches)


def from_switch_sums(track: TriangulationTrack, sums) -> tuple[int, ...]:
    """Invert ``switch_sums`` on the track of a triangulation.

    On each triangle the three branch weights solve the local linear system
    ``w[3t+j] = (k_j + k_{j+1} - k_{j+2}) / 2`` with ``k_j`` the sum attached
    to the edge carrying side ``j``; integrality is exactly the per-triangle
    parity condition.
    """
    tri = track.tri
    if len(sums) != tri.edge_count:
        raise TrackError(f"expected {tri.edge_count} switch sums, got {len(sums)}")
    weights = [0] * track.branch_count
    for t in range(tri.triangle_count):
        k = [sums[tri.edge_of[(t, j)]] for j in range(3)]
        total = k[0] + k[1] + k[2]
        if total % 2 != 0:
            raise ParityViolation(t, total)
        for j in range(3):
            weights[3 * t + j] = (k[j] + k[(j + 1) % 3] - k[(j + 2) % 3]) // 2
    return require_weight_system(track, weights)


def puncture_weight(track: TriangulationTrack, puncture: int) -> tuple[int, ...]:
    """Weight system counting branch sides that face the puncture's region.

    For the triangulation track each branch has one side on a puncture region
    and one on a triangle region, so the values land in {0, 1} (inside the
    a-priori range {0, 1, 2}).
    """
    tri = track.tri
    if not 0 <= puncture < tri.punctures:
        raise IndexError(f"puncture index {puncture} out of range")
    weights = [0] * track.branch_count
    for b, corner in enumerate(track.branch_corner):
        if tri.puncture_of_corner[corner] == puncture:
            weights[b] = 1
    return require_weight_system(track, weights)


# --- the intersection pairing --------------------------------------------

def theta_doubled(track: TrainTrack, a, b) -> int:
    """The doubled pairing: sum over same-side pairs (e right of e') of a(e)b(e') - a(e')b(e)."""
    total = 0
    for side_a, side_b in track.switches:
        for side in (side_a, side_b):
            for i in range(len(side)):
                bi = side[i][0]
                for j in range(i + 1, len(side)):
                    bj = side[j][0]
                    # side[j] emerges to the right of side[i]
                    total += a[bj] * b[bi] - a[bi] * b[bj]
    return total


def theta(track: TrainTrack, a, b) -> int:
    doubled = theta_doubled(track, a, b)
    if doubled % 2 != 0:
        raise IntegralityViolation(f"doubled pairing {doubled} is odd")
    return doubled // 2


def theta_matrix(track: TrainTrack, basis) -> list[list[int]]:
    """Antisymmetric matrix of theta over a list of weight systems."""
    m = len(basis)
    out = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            v = theta(track, basis[i], basis[j])
            out[i][j] = v
            out[j][i] = -v
    return out


def sigma_pairing(track: TriangulationTrack, a, b) -> int:
    """Independent computation of theta through switch sums and the succession matrix.

    If ``ka, kb`` are the switch-sum vectors, the pairing equals
    ``1/2 * sum_{u<v} (ka_u kb_v - ka_v kb_u) sigma_{uv}``; agreement with the
    germ-pair formula is what fixes the left-to-right convention.
    """
    from .triangulation import sigma_matrix

    sigma = sigma_matrix(track.tri)
    ka = switch_sums(track, a)
    kb = switch_sums(track, b)
    n = len(ka)
    doubled = 0
    for u in range(n):
        for v in range(u + 1, n):
            doubled += (ka[u] * kb[v] - ka[v] * kb[u]) * sigma[u][v]
    if doubled % 2 != 0:
        raise IntegralityViolation(f"doubled sigma pairing {doubled} is odd")
    return doubled // 2


# --- regions, spikes, and the topology census -----------------------------

@dataclass(frozen=True)
class Region:
    """One complementary annulus: its boundary walk and spike data.

    ``darts`` lists the walk; step ``i`` runs along ``darts[i]``'s branch and
    then crosses a switch corner which is a spike iff ``spike_after[i]``.
    ``puncture`` is set on triangulation tracks for the regions that contain
    a puncture.
    """

    darts: tuple[Dart, ...]
    spike_after: tuple[bool, ...]
    puncture: int | None = None

    @property
    def spikes(self) -> int:
        return sum(self.spike_after)

    @property
    def contains_puncture(self) -> bool:
        return self.puncture is not None

    def branch_multiplicities(self, branch_count: int) -> list[int]:
        out = [0] * branch_count
        for b, _ in self.darts:
            out[b] += 1
        return out


@dataclass(frozen=True)
class TopologyReport:
    genus: int
    n_even: int
    n_odd: int
    orientable: bool
    region_count: int
    euler: int
    switch_count: int
    branch_count: int


def _ccw_cycles(track: TrainTrack):
    """Per-switch counterclockwise germ order and same-side corner flags.

    Returns (next_ccw, same_side_corner) where ``same_side_corner[d]`` tells
    whether the corner between ``d`` and ``next_ccw[d]`` is a spike.
    """
    next_ccw: dict[Dart, Dart] = {}
    same_side: dict[Dart, bool] = {}
    for side_a, side_b in track.switches:
        # Germs leave side_a along one tangent direction and side_b along the
        # opposite one; sweeping counterclockwise crosses each side's germs
        # right to left, so both lists reverse.
        cycle = list(reversed(side_a)) + list(reversed(side_b))
        sides = [0] * len(side_a) + [1] * len(side_b)
        for i, dart in enumerate(cycle):
            j = (i + 1) % len(cycle)
            next_ccw[dart] = cycle[j]
            same_side[dart] = sides[i] == sides[j]
    return next_ccw, same_side


def regions(track: TrainTrack) -> tuple[list[Region], TopologyReport]:
    """Boundary-walk the thickened neighborhood: regions, spikes, genus, orientability.

    Rejects disconnected tracks.  The genus comes from
    ``chi(U) = switches - branches`` and ``chi = 2 - 2h - region_count``.
    """
    if not track.is_connected():
        raise TrackError("train track is not connected")
    next_ccw, same_side = _ccw_cycles(track)

    def phi(d: Dart) -> Dart:
        other = (d[0], 1 - d[1])
        return next_ccw[other]

    seen: set[Dart] = set()
    regs: list[Region] = []
    for start in sorted(track.dart_slot):
        if start in seen:
            continue
        walk = []
        flags = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            flags.append(same_side[(d[0], 1 - d[1])])
            d = phi(d)
        regs.append(Region(tuple(walk), tuple(flags)))

    if isinstance(track, TriangulationTrack):
        regs = [_attach_puncture(track, r) for r in regs]

    chi = track.switch_count - track.branch_count
    b = len(regs)
    genus2 = 2 - b - chi
    if genus2 < 0 or genus2 % 2 != 0:
        raise TrackError(f"inconsistent census: chi={chi}, regions={b}")
    report = TopologyReport(
        genus=genus2 // 2,
        n_even=sum(1 for r in regs if r.spikes % 2 == 0),
        n_odd=sum(1 for r in regs if r.spikes % 2 == 1),
        orientable=is_orientable(track),
        region_count=b,
        euler=chi,
        switch_count=track.switch_count,
        branch_count=track.branch_count,
    )
    return regs, report


def _attach_puncture(track: TriangulationTrack, region: Region) -> Region:
    if region.spikes != 0:
        return region
    tri = track.tri
    punctures = {tri.puncture_of_corner[track.branch_corner[b]] for b, _ in region.darts}
    if len(punctures) != 1:
        raise AssertionError(f"puncture region touches corners of {punctures}")
    return Region(region.darts, region.spike_after, punctures.pop())


def is_orientable(track: TrainTrack) -> bool:
    """Whether the branches admit orientations that cross every switch consistently.

    Parity 2-coloring of switch polarities: a branch with ends on sides
    (x, y) of switches (s1, s2) forces p(s1) + p(s2) = 1 + [x=b] + [y=b]
    over GF(2).
    """
    polarity: dict[int, int] = {}
    for root in range(track.switch_count):
        if root in polarity:
            continue
        polarity[root] = 0
        stack = [root]
        while stack:
            s = stack.pop()
            for b in range(track.branch_count):
                s1, side1, _ = track.dart_slot[(b, 0)]
                s2, side2, _ = track.dart_slot[(b, 1)]
                if s not in (s1, s2):
                    continue
                need = 1 ^ side1 ^ side2
                for here, there in ((s1, s2), (s2, s1)):
                    if here != s:
                        continue
                    want = polarity[s] ^ need
                    if there not in polarity:
                        polarity[there] = want
                        stack.append(there)
                    elif polarity[there] != want:
                        return False
    return True


def region_weight_system(track: TrainTrack, region: Region) -> tuple[int, ...]:
    """The weight system carried by a region with an even number of spikes.

    Split the boundary walk at its spikes into arcs and weight each branch by
    the alternating count of arc passages; with no spikes at all this is the
    plain multiplicity of the core curve on each branch.
    """
    n_spikes = region.spikes
    if n_spikes % 2 != 0:
        raise OddSpikesError(f"region has {n_spikes} spikes")
    weights = [0] * track.branch_count
    L = len(region.darts)
    if n_spikes == 0:
        for b, _ in region.darts:
            weights[b] += 1
        return require_weight_system(track, weights)
    # Rotate so the walk starts just after a spike, then alternate arc signs.
    last_spike = max(i for i in range(L) if region.spike_after[i])
    order = [(i + last_spike + 1) % L for i in range(L)]
    sign = 1
    for i in order:
        weights[region.darts[i][0]] += sign
        if region.spike_after[i]:
            sign = -sign
    return require_weight_system(track, weights)
