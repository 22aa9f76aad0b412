"""Bracketed, derivative-free root refinement (Brent's method)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from ..exceptions import InvalidBracket, NoConvergence
from .quadrature import Tolerance

_EPS = 2.220446049250313e-16

ROOT_TOL = Tolerance(abs_tol=1e-15, rel_tol=4 * _EPS, max_iter=200)


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise InvalidBracket(f"bracket requires lo < hi, got [{self.lo}, {self.hi}]")
        if not (math.isfinite(self.f_lo) and math.isfinite(self.f_hi)):
            raise InvalidBracket("function values at the bracket ends must be finite")
        if self.f_lo * self.f_hi > 0:
            raise InvalidBracket(
                f"no sign change on [{self.lo}, {self.hi}]: f = {self.f_lo}, {self.f_hi}"
            )

    @classmethod
    def from_function(cls, f: Callable[[float], float], lo: float, hi: float) -> "RootBracket":
        return cls(lo, hi, float(f(lo)), float(f(hi)))


def expand_bracket(f, lo, hi, factor=10.0, max_expand=60) -> RootBracket:
    """Grow ``[lo, hi]`` geometrically (for positive ranges) until f changes sign."""
    f_lo, f_hi = float(f(lo)), float(f(hi))
    for _ in range(max_expand):
        if f_lo * f_hi <= 0:
            return RootBracket(lo, hi, f_lo, f_hi)
        if abs(f_lo) < abs(f_hi):
            lo = lo / factor if lo > 0 else lo - factor * (hi - lo)
            f_lo = float(f(lo))
        else:
            hi = hi * factor if hi > 0 else hi + factor * (hi - lo)
            f_hi = float(f(hi))
    raise InvalidBracket(f"no sign change found after {max_expand} expansions")


def find_root(f: Callable[[float], float], bracket: RootBracket, tol: Tolerance = ROOT_TOL) -> float:
    """Locate a zero of ``f`` inside ``bracket``.

    Terminates when |f(x)| <= tol.abs_tol or the bracket shrinks below
    ``tol.rel_tol * |x|`` (plus a few ulps). Inverse-quadratic and secant
    steps are used when they stay inside the bracket and make progress,
    otherwise bisection, so convergence is guaranteed for continuous f.
    """
    a, b = bracket.lo, bracket.hi
    fa, fb = bracket.f_lo, bracket.f_hi
    if fa == 0:
        return a
    if fb == 0:
        return b
    c, fc = a, fa
    d = e = b - a
    for _ in range(tol.max_iter):
        if fb * fc > 0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        width_tol = 2.0 * _EPS * abs(b) + 0.5 * tol.rel_tol * abs(b)
        m = 0.5 * (c - b)
        if abs(fb) <= tol.abs_tol or abs(m) <= width_tol or fb == 0:
            return b
        if abs(e) >= width_tol and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(width_tol * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = e = m
        else:
            d = e = m
        a, fa = b, fb
        b += d if abs(d) > width_tol else math.copysign(width_tol, m)
        fb = float(f(b))
    raise NoConvergence(f"find_root did not converge in {tol.max_iter} iterations")
