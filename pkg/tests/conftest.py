import pytest

from deconflict.kinematics import Mission, SeparationConfig, Vec2


@pytest.fixture
def cfg():
    return SeparationConfig(h=1.5)


@pytest.fixture
def crossing_pair():
    """Perpendicular equal-speed crossing meeting at (10, 10) at t = 10."""
    a = Mission("a", Vec2(0.0, 10.0), Vec2(20.0, 10.0), 1.0)
    b = Mission("b", Vec2(10.0, 0.0), Vec2(10.0, 20.0), 1.0)
    return a, b


@pytest.fixture
def parallel_pair():
    """Same heading, 5 m lateral offset: constant gap, never in conflict at h=1.5."""
    a = Mission("p1", Vec2(0.0, 0.0), Vec2(10.0, 0.0), 1.0)
    b = Mission("p2", Vec2(0.0, 5.0), Vec2(10.0, 5.0), 1.0)
    return a, b


@pytest.fixture
def identical_pair():
    """Same 10 m route, same speed: pure along-track separation."""
    a = Mission("q1", Vec2(0.0, 0.0), Vec2(10.0, 0.0), 1.0)
    b = Mission("q2", Vec2(0.0, 0.0), Vec2(10.0, 0.0), 1.0)
    return a, b
