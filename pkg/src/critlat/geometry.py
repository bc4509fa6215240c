"""Minkowski balls ``|x|^p + |y|^p <= 1`` and their dyadic scalings ``2^m D_p``."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

P_MAX = 64.0

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def validate_exponent(p: float) -> float:
    """Return ``p`` as a float, raising ``ValueError`` unless ``1 <= p <= P_MAX``."""
    try:
        p = float(p)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"exponent must be a real number, got {p!r}") from exc
    if not math.isfinite(p) or not 1.0 <= p <= P_MAX:
        raise ValueError(f"exponent p must satisfy 1 <= p <= {P_MAX:g}, got {p!r}")
    return p


@dataclass(frozen=True, slots=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x!r}, {self.y!r})")

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Point2:
        return Point2(-self.x, -self.y)

    def scaled(self, k: float) -> Point2:
        return Point2(k * self.x, k * self.y)

    def ldexp(self, m: int) -> Point2:
        """Exact multiplication by ``2**m``."""
        return Point2(math.ldexp(self.x, m), math.ldexp(self.y, m))

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True, slots=True)
class DyadicDomain:
    """The body ``2^m D_p``; ``m = 0`` is the ball itself."""

    p: float
    m: int = 0

    def __post_init__(self):
        object.__setattr__(self, "p", validate_exponent(self.p))
        if isinstance(self.m, bool) or not isinstance(self.m, int) or self.m < 0:
            raise ValueError(f"scale level m must be a non-negative integer, got {self.m!r}")

    def doubled(self) -> DyadicDomain:
        return DyadicDomain(self.p, self.m + 1)

    def halved(self) -> DyadicDomain:
        if self.m == 0:
            raise ValueError("cannot halve the unit ball within the tower")
        return DyadicDomain(self.p, self.m - 1)


class BallClass(str, enum.Enum):
    MINKOWSKI = "Minkowski"
    DAVIS = "Davis"
    CHEBYSHEV_COHN = "Chebyshev-Cohn"


def _abs_pow(v: float, p: float) -> float:
    if v == 0.0:
        return 0.0
    return math.exp(p * math.log(abs(v)))


def p_functional(pt: Point2, p: float) -> float:
    """``|x|^p + |y|^p`` with exact zero contributions on the axes."""
    return _abs_pow(pt.x, p) + _abs_pow(pt.y, p)


def contains(dom: DyadicDomain, pt: Point2, strict: bool = False) -> bool:
    """Membership in ``2^m D_p``: open interior if ``strict``, closed set otherwise.

    No tolerance is applied here.
    """
    value = p_functional(pt.ldexp(-dom.m), dom.p)
    return value < 1.0 if strict else value <= 1.0


def boundary_point(dom: DyadicDomain, t: float) -> Point2:
    """Superellipse parameterization of the boundary of ``2^m D_p``."""
    e = 2.0 / dom.p
    c, s = math.cos(t), math.sin(t)
    x = math.copysign(_abs_pow(c, e), c) if c != 0.0 else 0.0
    y = math.copysign(_abs_pow(s, e), s) if s != 0.0 else 0.0
    return Point2(math.ldexp(x, dom.m), math.ldexp(y, dom.m))


def polar_boundary_point(dom: DyadicDomain, phi: float) -> Point2:
    """Boundary point of ``2^m D_p`` in direction ``phi`` (polar angle)."""
    c, s = math.cos(phi), math.sin(phi)
    big, small = max(abs(c), abs(s)), min(abs(c), abs(s))
    # |(c, s)|_p computed without under/overflow for large p
    norm_p = big * math.exp(math.log1p(_abs_pow(small / big, dom.p)) / dom.p)
    r = math.ldexp(1.0 / norm_p, dom.m)
    return Point2(r * c, r * s)


def boundary_parameter(pt: Point2, p: float) -> float:
    """Superellipse parameter ``t`` of a boundary point, inverse of :func:`boundary_point`."""
    e = 0.5 * p
    return math.atan2(math.copysign(_abs_pow(pt.y, e), pt.y), math.copysign(_abs_pow(pt.x, e), pt.x))


def circumradius(dom: DyadicDomain) -> float:
    # axis point (1, 0) against diagonal point 2^{-1/p}(1, 1)
    return math.ldexp(max(1.0, 2.0 ** (0.5 - 1.0 / dom.p)), dom.m)


def log_gamma(x: float) -> float:
    """Natural log of the Gamma function for ``x > 0`` (Lanczos, g=7, n=9)."""
    if not x > 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x!r}")
    if x < 0.5:
        # reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def gamma(x: float) -> float:
    return math.exp(log_gamma(x))


def volume(dom: DyadicDomain) -> float:
    """Area of ``2^m D_p``: ``4^m * 4 Gamma(1+1/p)^2 / Gamma(1+2/p)``."""
    p = dom.p
    log_v = 2.0 * log_gamma(1.0 + 1.0 / p) - log_gamma(1.0 + 2.0 / p)
    return math.ldexp(4.0 * math.exp(log_v), 2 * dom.m)


def classify(p: float, p0: float) -> BallClass:
    """Ball class on the half-open ranges [1, 2), [2, p0), [p0, inf)."""
    p = validate_exponent(p)
    if p < 2.0:
        return BallClass.MINKOWSKI
    if p < p0:
        return BallClass.DAVIS
    return BallClass.CHEBYSHEV_COHN
