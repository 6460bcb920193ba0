"""Second-order forward-mode dual numbers.

A :class:`Jet` carries ``(val, d1, d2)``: the value and the first and second
derivatives with respect to a single scalar input. Evaluating a composite
function at ``seed(u)`` therefore yields g(u), g'(u), g''(u) exactly (up to
rounding), with no finite differencing anywhere.

Components are ordinarily Python floats; NumPy arrays also work, which lets
test oracles push whole grids through the same formulas.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import EvalDomainError

__all__ = ["Jet", "seed", "sqrt", "exp", "log", "sin", "cos", "is_finite"]


def _any(flag) -> bool:
    # works for bool and for numpy boolean arrays
    return bool(np.any(flag))


class Jet:
    """Value plus first and second derivative w.r.t. one variable.

    Treat instances as immutable; all arithmetic returns new objects.
    """

    __slots__ = ("val", "d1", "d2")

    def __init__(self, val, d1=0.0, d2=0.0):
        self.val = val
        self.d1 = d1
        self.d2 = d2

    def __repr__(self):
        return f"Jet({self.val!r}, {self.d1!r}, {self.d2!r})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val + other.val, self.d1 + other.d1, self.d2 + other.d2)
        return Jet(self.val + other, self.d1, self.d2)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val - other.val, self.d1 - other.d1, self.d2 - other.d2)
        return Jet(self.val - other, self.d1, self.d2)

    def __rsub__(self, other):
        return Jet(other - self.val, -self.d1, -self.d2)

    def __neg__(self):
        return Jet(-self.val, -self.d1, -self.d2)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(
                self.val * other.val,
                self.d1 * other.val + self.val * other.d1,
                self.d2 * other.val + 2.0 * self.d1 * other.d1 + self.val * other.d2,
            )
        return Jet(self.val * other, self.d1 * other, self.d2 * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            if _any(other.val == 0.0):
                raise EvalDomainError("division by zero")
            v = self.val / other.val
            d1 = (self.d1 - v * other.d1) / other.val
            d2 = (self.d2 - 2.0 * d1 * other.d1 - v * other.d2) / other.val
            return Jet(v, d1, d2)
        if _any(other == 0.0):
            raise EvalDomainError("division by zero")
        return Jet(self.val / other, self.d1 / other, self.d2 / other)

    def __rtruediv__(self, other):
        if _any(self.val == 0.0):
            raise EvalDomainError("division by zero")
        v = other / self.val
        d1 = -v * self.d1 / self.val
        d2 = (-2.0 * d1 * self.d1 - v * self.d2) / self.val
        return Jet(v, d1, d2)

    def __pow__(self, p):
        """Power with a constant real exponent."""
        if isinstance(p, Jet):
            raise EvalDomainError("exponent must be a constant")
        p = float(p)
        if p == 0.0:
            return Jet(_ones_like(self.val), 0.0 * self.d1, 0.0 * self.d2)
        if p == 1.0:
            return Jet(self.val, self.d1, self.d2)
        v = self.val
        if not p.is_integer() and _any(v <= 0.0):
            raise EvalDomainError(f"x^{p} needs x > 0 for a smooth real result")
        try:
            f = v**p
            f1 = p * v ** (p - 1.0)
            f2 = p * (p - 1.0) * v ** (p - 2.0)
        except ZeroDivisionError as exc:
            raise EvalDomainError(f"x^{p} is singular at x = 0") from exc
        return self._chain(f, f1, f2)

    def _chain(self, f, f1, f2):
        # outer derivatives f1, f2 evaluated at self.val
        return Jet(f, f1 * self.d1, f2 * self.d1 * self.d1 + f1 * self.d2)

    # -- elementary functions ------------------------------------------------

    def sqrt(self):
        v = self.val
        if _any(v <= 0.0):
            raise EvalDomainError("sqrt needs a strictly positive argument")
        m = math if isinstance(v, float) else np
        r = m.sqrt(v)
        return self._chain(r, 0.5 / r, -0.25 / (r * v))

    def exp(self):
        m = math if isinstance(self.val, float) else np
        e = m.exp(self.val)
        return self._chain(e, e, e)

    def log(self):
        v = self.val
        if _any(v <= 0.0):
            raise EvalDomainError("log needs a strictly positive argument")
        m = math if isinstance(v, float) else np
        return self._chain(m.log(v), 1.0 / v, -1.0 / (v * v))

    def sin(self):
        m = math if isinstance(self.val, float) else np
        s, c = m.sin(self.val), m.cos(self.val)
        return self._chain(s, c, -s)

    def cos(self):
        m = math if isinstance(self.val, float) else np
        s, c = m.sin(self.val), m.cos(self.val)
        return self._chain(c, -s, -c)


def _ones_like(v):
    return 1.0 if isinstance(v, float) else np.ones_like(v)


def seed(u) -> Jet:
    """Jet of the independent variable itself: value u, slope 1, curvature 0."""
    if isinstance(u, (int, float)):
        u = float(u)
    return Jet(u, _ones_like(u), 0.0 * u)


# Generic wrappers so curve definitions read like ordinary math and accept
# floats, Jets, and arrays alike.


def sqrt(x):
    if isinstance(x, Jet):
        return x.sqrt()
    if isinstance(x, float) or isinstance(x, int):
        if x < 0.0:
            raise EvalDomainError("sqrt needs a nonnegative argument")
        return math.sqrt(x)
    if _any(x < 0.0):
        raise EvalDomainError("sqrt needs a nonnegative argument")
    return np.sqrt(x)


def exp(x):
    if isinstance(x, Jet):
        return x.exp()
    if isinstance(x, (float, int)):
        return math.exp(x)
    return np.exp(x)


def log(x):
    if isinstance(x, Jet):
        return x.log()
    if isinstance(x, (float, int)):
        if x <= 0.0:
            raise EvalDomainError("log needs a strictly positive argument")
        return math.log(x)
    if _any(x <= 0.0):
        raise EvalDomainError("log needs a strictly positive argument")
    return np.log(x)


def sin(x):
    if isinstance(x, Jet):
        return x.sin()
    if isinstance(x, (float, int)):
        return math.sin(x)
    return np.sin(x)


def cos(x):
    if isinstance(x, Jet):
        return x.cos()
    if isinstance(x, (float, int)):
        return math.cos(x)
    return np.cos(x)


def is_finite(x) -> bool:
    """True when every component of a float or Jet is finite."""
    if isinstance(x, Jet):
        return is_finite(x.val) and is_finite(x.d1) and is_finite(x.d2)
    if isinstance(x, float):
        return math.isfinite(x)
    return bool(np.isfinite(x).all())
