"""Shared random-instance generators for the test suite."""

import numpy as np

from deconflict.kinematics import Mission, Vec2

BOX_SIDE = 20.0
SPEED_RANGE = (0.66, 1.89)
MIN_ROUTE_LEN = 1.0


def random_mission(rng: np.random.Generator, mid: str,
                   side: float = BOX_SIDE,
                   speed_range=SPEED_RANGE) -> Mission:
    while True:
        x = rng.uniform(0.0, side, 4)
        if np.hypot(x[2] - x[0], x[3] - x[1]) >= MIN_ROUTE_LEN:
            break
    speed = rng.uniform(*speed_range)
    return Mission(id=mid, origin=Vec2(x[0], x[1]),
                   destination=Vec2(x[2], x[3]), speed=speed)


def random_pair(rng: np.random.Generator, kind: str = "generic"):
    """Mission pairs: generic box pairs plus the degenerate families.

    kind "equal_velocity": identical speed and heading (zero relative
    velocity); "same_track": both missions on one line, any speeds.
    """
    a = random_mission(rng, "a")
    if kind == "generic":
        return a, random_mission(rng, "b")
    if kind == "equal_velocity":
        shift = Vec2(rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0))
        return a, Mission(id="b", origin=a.origin + shift,
                          destination=a.destination + shift, speed=a.speed)
    if kind == "same_track":
        d = a.destination - a.origin
        u = d.scaled(1.0 / d.norm())
        s0 = rng.uniform(-5.0, 5.0)
        s1 = s0 + rng.uniform(2.0, 15.0) * (1.0 if rng.random() < 0.7 else -1.0)
        return a, Mission(id="b", origin=a.origin + u.scaled(s0),
                          destination=a.origin + u.scaled(s1),
                          speed=rng.uniform(*SPEED_RANGE))
    raise ValueError(kind)


def pair_stream(seed: int, n: int):
    """Deterministic pair mix: mostly generic, seasoned with degenerate cases."""
    rng = np.random.default_rng(seed)
    for i in range(n):
        if i % 20 == 18:
            yield random_pair(rng, "equal_velocity")
        elif i % 20 == 19:
            yield random_pair(rng, "same_track")
        else:
            yield random_pair(rng, "generic")


def random_instance(rng: np.random.Generator, n: int) -> list:
    return [random_mission(rng, f"M{i + 1}") for i in range(n)]
