"""Shared fan builders for the test suites."""

from tropkern import polyhedron as poly
from tropkern.tropictoric import Fan


def fan_line():
    """Complete fan on the line (two rays)."""
    return Fan.from_ray_lists(1, [[(1,)], [(-1,)]])


def fan_plane():
    """Complete simplicial fan with rays e1, e2, -e1-e2."""
    return Fan.from_ray_lists(2, [[(1, 0), (0, 1)],
                                  [(0, 1), (-1, -1)],
                                  [(-1, -1), (1, 0)]])


def fan_square():
    """Complete fan with the four coordinate quadrants."""
    return Fan.from_ray_lists(2, [[(1, 0), (0, 1)],
                                  [(0, 1), (-1, 0)],
                                  [(-1, 0), (0, -1)],
                                  [(0, -1), (1, 0)]])


def fan_space():
    """Complete simplicial fan in rank 3 with rays e1, e2, e3, -e1-e2-e3."""
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
    cones = [[rays[i] for i in range(4) if i != j] for j in range(4)]
    return Fan.from_ray_lists(3, cones)


def ray_cone_id(fan, direction):
    """Id of the one-dimensional cone of the fan containing the direction."""
    for i, c in enumerate(fan.cones):
        if c.dim == 1 and c.contains(direction):
            return i
    raise ValueError("no ray in that direction")


def quadrant(n):
    """The nonnegative orthant as a polyhedron."""
    zero = tuple([0] * n)
    rays = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    return poly.from_vrep([zero], rays, [], n)
