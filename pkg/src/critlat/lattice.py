"""Planar lattices: the two closed-form critical lattices of ``D_p``, dyadic
scaling, complete short-vector enumeration and the admissibility verifier.

A lattice is admissible for a body when no nonzero lattice point lies in the
body's open interior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .critical import Branch, delta0, delta1, select_branch, sigma, tau
from .geometry import DyadicDomain, Point2, circumradius, p_functional, validate_exponent

DEFAULT_TOL = 1e-9
MAX_ENUMERATED = 10**7
_CONTACT_TOL = 1e-10


class DegenerateBasisError(ValueError):
    pass


def _cross(u: Point2, v: Point2) -> float:
    return u.x * v.y - u.y * v.x


@dataclass(frozen=True)
class Lattice2:
    b1: Point2
    b2: Point2
    det: float = field(init=False)

    def __post_init__(self):
        d = abs(_cross(self.b1, self.b2))
        if not d > 0.0:
            raise DegenerateBasisError(f"degenerate basis {self.b1}, {self.b2}")
        object.__setattr__(self, "det", d)

    @classmethod
    def from_rows(cls, rows) -> Lattice2:
        (x1, y1), (x2, y2) = rows
        return cls(Point2(float(x1), float(y1)), Point2(float(x2), float(y2)))

    def point(self, a: int, b: int) -> Point2:
        return Point2(a * self.b1.x + b * self.b2.x, a * self.b1.y + b * self.b2.y)

    def basis(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return (self.b1.as_tuple(), self.b2.as_tuple())


@dataclass(frozen=True)
class Violation:
    coeffs: tuple[int, int]
    point: Point2
    value: float


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    violations: list[Violation]
    boundary_pairs: int
    coeff_bound: tuple[int, int]
    tol: float


def lambda0(p: float) -> Lattice2:
    """Sigma-branch critical lattice, spanned by (1, 0) and (1/2, sigma_p/2)."""
    p = validate_exponent(p)
    return Lattice2(Point2(1.0, 0.0), Point2(0.5, 0.5 * sigma(p)))


def lambda1(p: float) -> Lattice2:
    """Tau-branch critical lattice containing ``(-2^{-1/p}, 2^{-1/p})``.

    With ``c = 2^{-1/p}`` the second vector is ``c (1, tau) / (1 - tau)``;
    ``b1 + b2`` is its reflection in the line ``y = x``. Boundary contact of
    all three vectors and the determinant are checked before returning.
    """
    p = validate_exponent(p)
    c = 2.0 ** (-1.0 / p)
    t = tau(p)
    lat = Lattice2(Point2(-c, c), Point2(c / (1.0 - t), c * t / (1.0 - t)))
    for v in (lat.b1, lat.b2, lat.b1 + lat.b2):
        f = p_functional(v, p)
        if abs(f - 1.0) > _CONTACT_TOL:
            raise RuntimeError(f"lambda1({p!r}): {v} off the boundary, functional {f!r}")
    d1 = delta1(p)
    if abs(lat.det - d1) > _CONTACT_TOL:
        raise RuntimeError(f"lambda1({p!r}): det {lat.det!r} != delta1 {d1!r}")
    return lat


def critical_lattice(p: float, branch: Branch | str | None = None) -> Lattice2:
    """Closed-form lattice for ``branch``; ``None`` follows the selected branch."""
    p = validate_exponent(p)
    branch = select_branch(p) if branch is None else Branch(branch)
    return lambda0(p) if branch is Branch.SIGMA else lambda1(p)


def scale_lattice(lat: Lattice2, m: int) -> Lattice2:
    """The lattice ``2^m lat`` (critical for ``2^m D`` when ``lat`` is for ``D``)."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m!r}")
    return Lattice2(lat.b1.ldexp(m), lat.b2.ldexp(m))


def coefficient_bounds(lat: Lattice2, radius: float) -> tuple[int, int]:
    # Cramer's rule: |a| = |cross(v, b2)| / det <= r |b2| / det
    a = math.ceil(radius * lat.b2.norm() / lat.det)
    b = math.ceil(radius * lat.b1.norm() / lat.det)
    return a, b


def enumerate_points(lat: Lattice2, radius: float) -> list[tuple[tuple[int, int], Point2]]:
    """All nonzero lattice points of Euclidean norm ``<= radius``, ordered by coefficients."""
    if not radius > 0.0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    amax, bmax = coefficient_bounds(lat, radius)
    if (2 * amax + 1) * (2 * bmax + 1) > MAX_ENUMERATED:
        raise DegenerateBasisError(
            f"coefficient box {amax}x{bmax} exceeds {MAX_ENUMERATED} points"
        )
    out = []
    for a in range(-amax, amax + 1):
        for b in range(-bmax, bmax + 1):
            if a == 0 and b == 0:
                continue
            v = lat.point(a, b)
            if v.norm() <= radius:
                out.append(((a, b), v))
    return out


def _canonical(coeffs: tuple[int, int]) -> tuple[int, int]:
    a, b = coeffs
    return (a, b) if (a, b) > (0, 0) else (-a, -b)


def admissibility(
    lat: Lattice2, dom: DyadicDomain, tol: float = DEFAULT_TOL, radius_pad: float | None = None
) -> AdmissibilityReport:
    """Check ``lat`` against ``dom`` by enumerating every point that could lie in it.

    A point violates when its rescaled functional is below ``1 - tol``;
    points within ``tol`` of 1 are boundary contacts, counted once per +-pair.
    ``radius_pad`` widens the enumeration radius beyond the circumradius
    (defaults to ``tol``).
    """
    if not 1e-12 <= tol <= 1e-6:
        raise ValueError(f"tol must lie in [1e-12, 1e-6], got {tol!r}")
    radius = circumradius(dom) + (tol if radius_pad is None else radius_pad)
    violations = []
    pairs = set()
    for coeffs, v in enumerate_points(lat, radius):
        f = p_functional(v.ldexp(-dom.m), dom.p)
        if f < 1.0 - tol:
            violations.append(Violation(coeffs, v, f))
        elif abs(f - 1.0) <= tol:
            pairs.add(_canonical(coeffs))
    return AdmissibilityReport(
        admissible=not violations,
        violations=violations,
        boundary_pairs=len(pairs),
        coeff_bound=coefficient_bounds(lat, radius),
        tol=tol,
    )
