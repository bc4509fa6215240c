"""Closed-form critical determinants of the balls ``D_p``.

Two expressions compete::

    sigma branch:  delta0(p) = sigma_p / 2,                 sigma_p = (2^p - 1)^(1/p)
    tau branch:    delta1(p) = 4^(-1/p) (1 + tau_p) / (1 - tau_p),
                   where 2 (1 - tau_p)^p = 1 + tau_p^p, 0 <= tau_p < 1

The sigma branch is critical for ``2 <= p <= p0`` and the tau branch
elsewhere; ``p0 ~ 2.5725`` is where they cross.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass

from .geometry import BallClass, DyadicDomain, classify, validate_exponent, volume
from .roots import BracketError, bracketed_root

TAU_XTOL = 1e-14
TAU_FTOL = 1e-13
P0_BRACKET = (2.1, 3.0)


class Branch(str, enum.Enum):
    SIGMA = "sigma"
    TAU = "tau"


@dataclass(frozen=True)
class PZero:
    value: float
    bracket_lo: float
    bracket_hi: float
    residual: float


@dataclass(frozen=True)
class CriticalData:
    p: float
    sigma: float
    tau: float
    delta0: float
    delta1: float
    delta: float
    branch: Branch
    volume: float
    density: float
    ball_class: BallClass


def sigma(p: float) -> float:
    p = validate_exponent(p)
    # 2 (1 - 2^-p)^(1/p); avoids cancellation in 2^p - 1
    return 2.0 * math.exp(math.log1p(-(2.0**-p)) / p)


def tau_residual(t: float, p: float) -> float:
    """``2 (1 - t)^p - 1 - t^p``; positive at 0, negative as ``t -> 1``."""
    a = 2.0 * math.exp(p * math.log1p(-t))
    b = math.exp(p * math.log(t)) if t > 0.0 else 0.0
    return a - 1.0 - b


def tau(p: float) -> float:
    p = validate_exponent(p)
    try:
        res = bracketed_root(
            lambda t: tau_residual(t, p), 0.0, 1.0 - 1e-15, xtol=TAU_XTOL, ftol=TAU_FTOL
        )
    except BracketError as exc:
        raise RuntimeError(f"tau equation lost its bracket at p={p!r}") from exc
    return res.root


def delta0(p: float) -> float:
    return 0.5 * sigma(p)


def delta1(p: float) -> float:
    t = tau(p)
    return 4.0 ** (-1.0 / p) * (1.0 + t) / (1.0 - t)


def branch_gap(p: float) -> float:
    return delta0(p) - delta1(p)


def p_zero(tol: float = 1e-10) -> PZero:
    """Crossover exponent where ``delta0(p) == delta1(p)``, to bracket width ``tol``."""
    if not tol >= 1e-12:
        raise ValueError(f"tol must be >= 1e-12, got {tol!r}")
    lo, hi = P0_BRACKET
    if not branch_gap(lo) < 0.0 < branch_gap(hi):
        raise RuntimeError(f"branch gap does not change sign on {P0_BRACKET}")
    res = bracketed_root(branch_gap, lo, hi, xtol=tol)
    blo, bhi = res.lo, res.hi
    if blo == bhi:
        blo, bhi = math.nextafter(blo, -math.inf), math.nextafter(bhi, math.inf)
    value = 0.5 * (blo + bhi)
    if not blo < value < bhi:
        value = res.root
    result = PZero(value, blo, bhi, abs(branch_gap(value)))
    if not 2.57 < result.value < 2.58:
        raise RuntimeError(f"p0 = {result.value!r} outside (2.57, 2.58)")
    return result


_p0_lock = threading.Lock()
_p0_cache: PZero | None = None


def cached_p_zero() -> PZero:
    """Process-wide ``p_zero(1e-12)``, computed once."""
    global _p0_cache
    if _p0_cache is None:
        with _p0_lock:
            if _p0_cache is None:
                _p0_cache = p_zero(1e-12)
    return _p0_cache


def select_branch(p: float, p0: float | None = None) -> Branch:
    if p0 is None:
        p0 = cached_p_zero().value
    return Branch.SIGMA if 2.0 <= p <= p0 else Branch.TAU


def critical_determinant(p: float) -> CriticalData:
    p = validate_exponent(p)
    p0 = cached_p_zero().value
    s, t = sigma(p), tau(p)
    d0 = 0.5 * s
    d1 = 4.0 ** (-1.0 / p) * (1.0 + t) / (1.0 - t)
    branch = select_branch(p, p0)
    delta = d0 if branch is Branch.SIGMA else d1
    vol = volume(DyadicDomain(p))
    return CriticalData(
        p=p,
        sigma=s,
        tau=t,
        delta0=d0,
        delta1=d1,
        delta=delta,
        branch=branch,
        volume=vol,
        density=vol / (4.0 * delta),
        ball_class=classify(p, p0),
    )


def packing_density(p: float) -> float:
    """Density ``V(D_p) / (4 Delta(D_p))`` of the optimal lattice packing."""
    return critical_determinant(p).density
