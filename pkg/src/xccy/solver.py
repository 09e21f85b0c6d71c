"""Bracketed Newton/bisection hybrid used by every sequential bootstrap."""

from __future__ import annotations

import math
from typing import Callable

from .errors import CalibrationError

FTOL = 1e-13
MAX_ITER = 100


def solve(f: Callable[[float], float], guess: float, lo: float, hi: float,
          ftol: float = FTOL, max_iter: int = MAX_ITER, label: str = "",
          floor: float | None = None) -> float:
    """Root of ``f`` in ``[lo, hi]`` starting from ``guess``.

    Newton steps use a secant-style slope; any step leaving the current bracket
    falls back to bisection. The bracket is widened geometrically if the
    initial one does not straddle a sign change.
    """
    x = min(max(guess, lo), hi)
    fx = f(x)
    if fx == 0.0 or abs(fx) <= ftol:
        return x
    flo, fhi = f(lo), f(hi)
    widen = 0
    while flo * fhi > 0:
        widen += 1
        if widen > 20 or not (math.isfinite(flo) and math.isfinite(fhi)):
            raise CalibrationError(f"no sign change bracketing root{_at(label)}")
        width = hi - lo
        lo, hi = lo - width, hi + width
        if floor is not None and lo <= floor:
            lo = floor + 0.5 * (lo + width - floor)
        flo, fhi = f(lo), f(hi)
    # shrink the bracket with the guess
    if flo * fx < 0:
        hi, fhi = x, fx
    else:
        lo, flo = x, fx

    h = max(1e-7 * abs(x), 1e-10)
    slope = (f(x + h) - fx) / h
    for _ in range(max_iter):
        step_ok = slope != 0.0 and math.isfinite(slope)
        x_new = x - fx / slope if step_ok else 0.5 * (lo + hi)
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        f_new = f(x_new)
        if abs(f_new) <= ftol or f_new == 0.0:
            return x_new
        if x_new != x:
            slope = (f_new - fx) / (x_new - x)
        if flo * f_new < 0:
            hi, fhi = x_new, f_new
        else:
            lo, flo = x_new, f_new
        x, fx = x_new, f_new
        if hi - lo <= 4 * math.ulp(max(abs(lo), abs(hi), 1e-300)):
            return x if abs(fx) < max(abs(flo), abs(fhi)) else (lo if abs(flo) < abs(fhi) else hi)
    raise CalibrationError(f"root finder did not converge in {max_iter} iterations{_at(label)}")


def _at(label: str) -> str:
    return f" at {label}" if label else ""
