"""Small numerical helpers shared across modules."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import RootFindingError


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    iterations: int
    bracket: tuple[float, float]


def bisect(f: Callable[[float], float], a: float, b: float, *, ftol: float = 1e-12,
           maxiter: int = 200) -> RootResult:
    """Bracketed bisection for a sign change of ``f`` on ``[a, b]``.

    Stops when ``|f(mid)| < ftol`` or the bracket cannot be halved any
    further in double precision.
    """
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return RootResult(a, 0.0, 0, (a, b))
    if fb == 0.0:
        return RootResult(b, 0.0, 0, (a, b))
    if math.copysign(1.0, fa) == math.copysign(1.0, fb):
        raise RootFindingError(
            f"no sign change on [{a!r}, {b!r}]: f(a)={fa:.6g}, f(b)={fb:.6g}")
    lo, hi, flo = a, b, fa
    mid, fmid = lo, fa
    for it in range(1, maxiter + 1):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if abs(fmid) < ftol or mid in (lo, hi):
            return RootResult(mid, fmid, it, (lo, hi))
        if math.copysign(1.0, fmid) == math.copysign(1.0, flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    raise RootFindingError(
        f"bisection did not converge in {maxiter} iterations (|f|={abs(fmid):.3g})")
