"""Derivative-free scalar solvers: a bracketed bisection/secant root finder
and golden-section minimization."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable


class BracketError(ValueError):
    """The supplied interval does not bracket a sign change."""


@dataclass(frozen=True)
class RootResult:
    root: float
    lo: float
    hi: float
    froot: float
    iterations: int


def bracketed_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-14,
    ftol: float = math.inf,
    maxiter: int = 200,
) -> RootResult:
    """Find a zero of ``f`` inside ``[lo, hi]``.

    Each step tries an Illinois-weighted secant point and falls back to the
    midpoint whenever the secant lands outside the bracket or the bracket
    failed to halve over the previous two steps, so convergence is never
    slower than bisection.

    Stops when the bracket is narrower than ``xtol`` and ``|f| <= ftol`` at
    the returned point, or when ``f`` vanishes exactly. The returned root is
    whichever bracket end has the smaller residual.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return RootResult(lo, lo, lo, 0.0, 0)
    if fhi == 0.0:
        return RootResult(hi, hi, hi, 0.0, 0)
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise BracketError(f"no sign change on [{lo!r}, {hi!r}]: f={flo!r}, {fhi!r}")

    wlo, whi = flo, fhi  # Illinois-weighted values
    side = 0
    widths = [hi - lo]
    for it in range(1, maxiter + 1):
        width = hi - lo
        best, fbest = (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)
        if width <= xtol and abs(fbest) <= ftol:
            return RootResult(best, lo, hi, fbest, it - 1)

        x = hi - whi * (hi - lo) / (whi - wlo)
        if not (lo < x < hi) or (len(widths) >= 3 and width > 0.5 * widths[-3]):
            x = lo + 0.5 * width
        if not (lo < x < hi):
            # bracket is down to adjacent doubles
            return RootResult(best, lo, hi, fbest, it - 1)

        fx = f(x)
        if fx == 0.0:
            return RootResult(x, x, x, 0.0, it)
        if math.copysign(1.0, fx) == math.copysign(1.0, flo):
            lo, flo, wlo = x, fx, fx
            if side == -1:
                whi *= 0.5
            side = -1
        else:
            hi, fhi, whi = x, fx, fx
            if side == 1:
                wlo *= 0.5
            side = 1
        widths.append(hi - lo)

    best, fbest = (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)
    return RootResult(best, lo, hi, fbest, maxiter)


INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(
    f: Callable[[float], float], a: float, b: float, iterations: int = 40
) -> tuple[float, float]:
    """Minimize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    if a > b:
        a, b = b, a
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)
