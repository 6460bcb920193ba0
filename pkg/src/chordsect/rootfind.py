"""Bracketed scalar root finding: expanding search plus a Newton/bisection hybrid."""

from __future__ import annotations

from typing import Callable

from .errors import RootFindError

_MAX_EXPAND = 200
_MAX_ITER = 120


def expand_bracket(
    fn: Callable[[float], float],
    start: float,
    step: float,
    limit: float,
) -> tuple[float, float]:
    """Walk from ``start`` toward ``limit`` until fn changes sign.

    ``fn(start)`` must be negative. The step doubles each move and the walk is
    clamped at ``limit``; if the sign never flips before the limit, the
    bracket does not exist on this side. Returns (neg, pos) with
    fn(neg) < 0 <= fn(pos); the two ends are ordered along the walk.
    """
    direction = 1.0 if limit >= start else -1.0
    prev = start
    x = start
    for _ in range(_MAX_EXPAND):
        x = x + direction * step
        if (x - limit) * direction >= 0.0:
            x = limit
        if fn(x) >= 0.0:
            return prev, x
        if x == limit:
            raise RootFindError("no sign change before the search limit")
        prev = x
        step *= 2.0
    raise RootFindError("bracket expansion exceeded the step budget")


def newton_bisect(
    fn: Callable[[float], float],
    dfn: Callable[[float], float],
    neg: float,
    pos: float,
    f_tol: float,
) -> float:
    """Root of fn between ``neg`` and ``pos`` where fn(neg) < 0 <= fn(pos).

    Safeguarded Newton: a Newton step is taken only while it stays inside the
    current bracket and keeps halving fast enough, otherwise the step is a
    bisection. Converges when |fn| <= f_tol.
    """
    xlo, xhi = neg, pos
    x = 0.5 * (xlo + xhi)
    dx_old = abs(xhi - xlo)
    dx = dx_old
    fx = fn(x)
    for _ in range(_MAX_ITER):
        if abs(fx) <= f_tol:
            return x
        dfx = dfn(x)
        newton_invalid = (
            dfx == 0.0
            or ((x - xhi) * dfx - fx) * ((x - xlo) * dfx - fx) > 0.0
            or abs(2.0 * fx) > abs(dx_old * dfx)
        )
        dx_old = dx
        if newton_invalid:
            dx = 0.5 * (xhi - xlo)
            x_new = xlo + dx
        else:
            dx = fx / dfx
            x_new = x - dx
        if x_new == x:
            break  # interval collapsed to rounding
        x = x_new
        fx = fn(x)
        if fx < 0.0:
            xlo = x
        else:
            xhi = x
    if abs(fx) <= f_tol:
        return x
    raise RootFindError(f"root polish stalled with residual {fx:.3g} (tolerance {f_tol:.3g})")
