"""Brute-force rediscovery of the critical determinant.

Every critical lattice of ``D_p`` has three pairs of boundary points, so it
is spanned by boundary points ``P1, P2`` with ``P1 + P2`` also on the
boundary. Sweeping ``P1`` around the upper half of the boundary, closing the
configuration with a 1-D root solve, and minimizing the determinant of the
admissible members recovers ``Delta(D_p)`` without using either closed form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .critical import Branch, critical_determinant
from .geometry import (
    DyadicDomain,
    boundary_parameter,
    boundary_point,
    p_functional,
    polar_boundary_point,
    validate_exponent,
)
from .lattice import Lattice2, admissibility, lambda0, lambda1
from .roots import BracketError, bracketed_root, golden_section

CLOSURE_XTOL = 1e-12
CONTACT_TOL = 1e-10
SEARCH_TOL = 1e-9
SEARCH_PAD = 1e-6


@dataclass(frozen=True)
class FamilyMember:
    t1: float
    t2: float
    lattice: Lattice2
    det: float
    admissible: bool


@dataclass(frozen=True)
class SearchResult:
    p: float
    best: FamilyMember
    delta_hat: float
    closed_form: float
    abs_gap: float
    grid_size: int


def close_family(p: float, t1: float, check: bool = True) -> FamilyMember | None:
    """Complete ``P1 = boundary_point(t1)`` to a three-contact configuration.

    Finds ``P2`` clockwise of ``P1`` (less than half a turn) with ``P1 + P2``
    on the boundary. ``P2`` is located by its polar angle because the
    superellipse parameter is too compressed near the axes for large ``p``;
    the member's ``t2`` is the superellipse parameter of the solved ``P2``.
    Returns ``None`` if the closure equation has no sign change or the
    solved configuration misses the boundary.
    """
    dom = DyadicDomain(validate_exponent(p))
    p1 = boundary_point(dom, t1)
    phi1 = math.atan2(p1.y, p1.x)

    def h(phi):
        return p_functional(p1 + polar_boundary_point(dom, phi), dom.p) - 1.0

    # stay clear of phi1 - pi, where P1 + P2 is nearly zero
    lo, hi = phi1 - math.pi + 1e-9, phi1 - 1e-9
    try:
        res = bracketed_root(h, lo, hi, xtol=CLOSURE_XTOL)
    except BracketError:
        return None
    p2 = polar_boundary_point(dom, res.root)
    if abs(p_functional(p1 + p2, dom.p) - 1.0) > CONTACT_TOL:
        return None
    try:
        lat = Lattice2(p1, p2)
    except ValueError:
        return None
    t2 = boundary_parameter(p2, dom.p)
    if t2 > t1:
        t2 -= 2.0 * math.pi
    ok = admissibility(lat, dom, SEARCH_TOL, radius_pad=SEARCH_PAD).admissible if check else False
    return FamilyMember(t1, t2, lat, lat.det, ok)


def _better(a: FamilyMember | None, b: FamilyMember | None) -> FamilyMember | None:
    if a is None:
        return b
    if b is None:
        return a
    return a if (a.det, a.t1) <= (b.det, b.t1) else b


def min_det_search(p: float, grid: int = 512, refine_iters: int = 40) -> SearchResult:
    """Minimal admissible determinant over the three-contact family of ``D_p``."""
    p = validate_exponent(p)
    if grid < 64:
        raise ValueError(f"grid must be >= 64, got {grid!r}")
    if refine_iters < 20:
        raise ValueError(f"refine_iters must be >= 20, got {refine_iters!r}")

    step = math.pi / grid
    best = None
    best_k = -1
    for k in range(grid):
        member = close_family(p, (k + 0.5) * step)
        if member is None or not member.admissible:
            continue
        if _better(member, best) is member:
            best, best_k = member, k
    if best is None:
        raise RuntimeError(f"no admissible family member found for p={p!r}")

    def objective(t1):
        m = close_family(p, t1)
        return m.det if m is not None and m.admissible else math.inf

    lo = max(best_k - 0.5, 0.0) * step
    hi = min(best_k + 1.5, float(grid)) * step
    t_star, _ = golden_section(objective, lo, hi, refine_iters)
    best = _better(close_family(p, t_star) if math.isfinite(objective(t_star)) else None, best)

    closed = critical_determinant(p).delta
    return SearchResult(p, best, best.det, closed, abs(best.det - closed), grid)


# symmetries of D_p: coordinate sign changes and the swap x <-> y
_SYMMETRIES = [
    (sx, sy, swap) for sx, sy, swap in itertools.product((1.0, -1.0), (1.0, -1.0), (False, True))
]


def _apply(sym, v):
    sx, sy, swap = sym
    x, y = (v.y, v.x) if swap else (v.x, v.y)
    return sx * x, sy * y


def lattice_distance(a: Lattice2, b: Lattice2) -> float:
    """Distance between two lattices modulo unimodular basis change and the symmetries of ``D_p``.

    For each symmetry ``g``, express ``g(a)``'s basis in ``b``'s coordinates;
    the distance is how far that change-of-basis matrix is from an integer
    matrix of determinant +-1. Returns ``inf`` if no symmetry gets there.
    """
    (p, q), (r, s) = b.basis()
    det = p * s - q * r
    best = math.inf
    for sym in _SYMMETRIES:
        coords = []
        for v in (a.b1, a.b2):
            x, y = _apply(sym, v)
            # solve c1 * b.b1 + c2 * b.b2 = (x, y)
            coords.append(((x * s - y * r) / det, (p * y - q * x) / det))
        rounded = [(round(c1), round(c2)) for c1, c2 in coords]
        (m11, m12), (m21, m22) = rounded
        if abs(m11 * m22 - m12 * m21) != 1:
            continue
        err = max(abs(c - k) for cc, kk in zip(coords, rounded) for c, k in zip(cc, kk))
        best = min(best, err)
    return best


def nearest_branch(p: float, lat: Lattice2) -> tuple[Branch, float]:
    """Which closed-form critical lattice ``lat`` is closest to, and how close."""
    d0 = lattice_distance(lat, lambda0(p))
    d1 = lattice_distance(lat, lambda1(p))
    return (Branch.SIGMA, d0) if d0 <= d1 else (Branch.TAU, d1)
