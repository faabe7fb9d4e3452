"""Small hand-coded train tracks and a random-track generator for surveys."""

from __future__ import annotations

import random

from .traintrack import TrainTrack


def circle_track() -> TrainTrack:
    """A smooth closed curve: one switch, one branch, one germ per side.

    Orientable, two spikeless regions; the weight lattice is generated by the
    all-ones system of the core curve.
    """
    return TrainTrack(1, [([(0, 0)], [(0, 1)])])


def unorientable_even_track() -> TrainTrack:
    """One switch; branch e runs side to side, branch f returns to side a.

    Both ends of f land on the same switch side, so no consistent branch
    orientation exists, while the single complementary region carries two
    spikes.  Census: h = 1, one even region, no odd regions; the weight
    lattice has rank 1 (f is forced to weight 0) and the pairing vanishes.
    """
    return TrainTrack(2, [([(1, 0), (0, 0), (1, 1)], [(0, 1)])])


def random_ribbon_track(rng: random.Random) -> TrainTrack | None:
    """A random abstract train track, or None when the draw is unusable.

    Draws a branch and switch count, shuffles the darts, seeds every switch
    side with one dart, and scatters the rest.  Connectivity is up to the
    caller to check.
    """
    branches = rng.randint(1, 7)
    switches = rng.randint(1, max(1, branches))
    darts = [(b, e) for b in range(branches) for e in (0, 1)]
    rng.shuffle(darts)
    bins: list[list] = [[] for _ in range(2 * switches)]
    if len(darts) < len(bins):
        return None
    for i, d in enumerate(darts[: len(bins)]):
        bins[i].append(d)
    for d in darts[len(bins):]:
        bins[rng.randrange(len(bins))].append(d)
    return TrainTrack(branches, [(bins[2 * i], bins[2 * i + 1]) for i in range(switches)])
