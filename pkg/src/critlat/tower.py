"""Finite truncations of the dyadic towers ``D_p -> 2 D_p -> 4 D_p -> ...``.

The direct system carries the doubling maps, the inverse system the
halving maps. Their limits are 2-adic objects; they are attached to each
report as fixed labels and never computed.
"""

from __future__ import annotations

import enum
import functools
import math
import random
from dataclasses import dataclass

from .critical import critical_determinant
from .geometry import (
    DyadicDomain,
    Point2,
    boundary_point,
    contains,
    p_functional,
    validate_exponent,
    volume,
)
from .lattice import Lattice2, critical_lattice, scale_lattice

MAX_LEVEL = 16
SECTION_SAMPLES = 1000


class Direction(str, enum.Enum):
    DIRECT = "direct"
    INVERSE = "inverse"


LIMIT_LABELS = {
    (Direction.DIRECT, "domain"): "(Q_2/Z_2)·D_p (2-divisible, height one)",
    (Direction.DIRECT, "lattice"): "(Q_2/Z_2)·Λ_p",
    (Direction.INVERSE, "domain"): "free Z_2-module of rank one",
    (Direction.INVERSE, "lattice"): "free Z_2-module of rank two",
}


@dataclass(frozen=True)
class TowerLevel:
    m: int
    domain: DyadicDomain
    lattice: Lattice2
    det: float
    volume: float


@dataclass(frozen=True)
class TowerReport:
    p: float
    levels: list[TowerLevel]
    direction: Direction
    limit_label: str
    lattice_limit_label: str


@functools.singledispatch
def double(obj):
    """The structure map of the direct system."""
    raise TypeError(f"cannot double {type(obj).__name__}")


@double.register
def _(obj: Point2) -> Point2:
    return obj.ldexp(1)


@double.register
def _(obj: Lattice2) -> Lattice2:
    return scale_lattice(obj, 1)


@double.register
def _(obj: DyadicDomain) -> DyadicDomain:
    return obj.doubled()


@functools.singledispatch
def halve(obj):
    """The structure map of the inverse system."""
    raise TypeError(f"cannot halve {type(obj).__name__}")


@halve.register
def _(obj: Point2) -> Point2:
    return obj.ldexp(-1)


@halve.register
def _(obj: Lattice2) -> Lattice2:
    return Lattice2(obj.b1.ldexp(-1), obj.b2.ldexp(-1))


@halve.register
def _(obj: DyadicDomain) -> DyadicDomain:
    return obj.halved()


def build_tower(p: float, max_level: int, direction: Direction | str = Direction.DIRECT) -> TowerReport:
    """Levels ``m = 0..max_level`` of the scaled domains and critical lattices.

    Direct towers list levels ascending, inverse towers descending.
    """
    p = validate_exponent(p)
    direction = Direction(direction)
    if not 0 <= max_level <= MAX_LEVEL:
        raise ValueError(f"max_level must lie in [0, {MAX_LEVEL}], got {max_level!r}")
    base = critical_lattice(p)
    levels = []
    for m in range(max_level + 1):
        dom = DyadicDomain(p, m)
        lat = scale_lattice(base, m)
        levels.append(TowerLevel(m, dom, lat, lat.det, volume(dom)))
    if direction is Direction.INVERSE:
        levels.reverse()
    return TowerReport(
        p=p,
        levels=levels,
        direction=direction,
        limit_label=LIMIT_LABELS[direction, "domain"],
        lattice_limit_label=LIMIT_LABELS[direction, "lattice"],
    )


def expected_det(p: float, m: int) -> float:
    return math.ldexp(critical_determinant(p).delta, 2 * m)


def check_section(p: float, m: int, samples: int = SECTION_SAMPLES, seed: int = 0) -> bool:
    """Check that halving undoes doubling between levels ``m`` and ``m + 1``.

    On sampled points, ``x`` lies in ``2^m D_p`` iff ``2x`` lies in
    ``2^{m+1} D_p`` (open and closed), ``halve(double(x)) == x`` exactly, and
    doubled boundary points stay on the boundary.
    """
    p = validate_exponent(p)
    if not 0 <= m < MAX_LEVEL:
        raise ValueError(f"m must lie in [0, {MAX_LEVEL}), got {m!r}")
    dom = DyadicDomain(p, m)
    up = double(dom)
    if halve(up) != dom:
        return False
    rng = random.Random(seed)
    box = math.ldexp(1.5, m)
    for _ in range(samples):
        x = Point2(rng.uniform(-box, box), rng.uniform(-box, box))
        y = double(x)
        if halve(y) != x:
            return False
        for strict in (False, True):
            if contains(dom, x, strict) != contains(up, y, strict):
                return False
        b = double(boundary_point(dom, rng.uniform(0.0, 2.0 * math.pi)))
        if abs(p_functional(b.ldexp(-up.m), p) - 1.0) > 1e-12:
            return False
    return True
