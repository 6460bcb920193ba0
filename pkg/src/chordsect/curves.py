"""Strictly convex plane curves given as graphs v = g(u), with exact 2-jets.

A :class:`Curve` wraps a jet-generic callable for g together with an open
domain. Construction screens for strict convexity (positive curvature of the
graph with respect to the upward normal) on a fixed sample grid, so every
curve that exists is safe to frame anywhere in its domain.

:func:`frame_at` builds the tangent/normal frame at a point, and
:func:`to_chart` the rotated coordinates in which the point is the origin and
the tangent is the horizontal axis, so the curve becomes y = f(x) with
f(0) = f'(0) = 0 and f''(0) equal to the curvature.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

from . import dual, expr
from .dual import Jet, seed
from .errors import ChordsectError, CurveError, CurveSpecError

__all__ = [
    "Curve",
    "FramedPoint",
    "RotatedChart",
    "BUILTIN_NAMES",
    "builtin_curve",
    "graph_curve",
    "rotated_parabola",
    "curve_from_spec",
    "curve_to_spec",
    "eval_jet2",
    "frame_at",
    "to_chart",
]

# convexity screen: number of interior samples and the curvature floor
_SCREEN_SAMPLES = 257
_KAPPA_FLOOR = 1e-9


@dataclass(frozen=True)
class Curve:
    """A strictly convex graph v = g(u) on an open interval.

    ``fn`` accepts floats, Jets, and arrays; builtins are plain closures and
    graph curves evaluate a parsed expression tree.
    """

    kind: str  # "builtin" | "graph"
    name: str
    fn: Callable = field(repr=False, compare=False)
    domain: tuple[float, float] = (0.0, 1.0)
    param: float | None = None
    expr_text: str | None = None

    def contains(self, u: float) -> bool:
        lo, hi = self.domain
        return lo < u < hi


@dataclass(frozen=True)
class FramedPoint:
    """A curve point with its tangent/normal frame.

    ``alpha`` is the slope g'(u), ``w = sqrt(1 + alpha^2)`` the secant of the
    normal's angle ``theta`` from the vertical, and ``kappa`` the curvature
    with respect to the normal pointing to the convex side (here: upward).
    """

    curve: Curve
    u: float
    point: tuple[float, float]
    tangent: tuple[float, float]
    normal: tuple[float, float]
    theta: float
    alpha: float
    w: float
    kappa: float


@dataclass(frozen=True)
class RotatedChart:
    """Rotation + translation taking the frame at P to the origin.

    ``forward`` maps chart coordinates (x, y) to world (u, v); ``inverse`` is
    its exact inverse. In chart coordinates the curve passes through the
    origin with a horizontal tangent.
    """

    fp: FramedPoint
    cos_t: float
    sin_t: float

    def forward(self, x: float, y: float) -> tuple[float, float]:
        b, c = self.fp.point
        return (
            x * self.cos_t - y * self.sin_t + b,
            x * self.sin_t + y * self.cos_t + c,
        )

    def inverse(self, u: float, v: float) -> tuple[float, float]:
        b, c = self.fp.point
        du, dv = u - b, v - c
        return (du * self.cos_t + dv * self.sin_t, -du * self.sin_t + dv * self.cos_t)

    def trace_jet(self, u: float) -> tuple[Jet, Jet]:
        """Jets of the chart coordinates (x(u), y(u)) of the curve point at u."""
        b, c = self.fp.point
        g = eval_jet2_raw(self.fp.curve, u)
        du = Jet(u - b, 1.0, 0.0)
        gc = g - c
        x = du * self.cos_t + gc * self.sin_t
        y = -du * self.sin_t + gc * self.cos_t
        return x, y


def _screen_convexity(fn: Callable, domain: tuple[float, float], label: str) -> None:
    lo, hi = domain
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise CurveError(f"{label}: domain must be a finite open interval, got {domain}")
    width = hi - lo
    for k in range(_SCREEN_SAMPLES):
        u = lo + width * (k + 1) / (_SCREEN_SAMPLES + 1)
        try:
            jet = fn(seed(u))
        except ChordsectError as exc:
            raise CurveError(f"{label}: not evaluable at u = {u:.6g}: {exc}") from exc
        if not isinstance(jet, Jet):
            jet = Jet(float(jet), 0.0, 0.0)
        if not dual.is_finite(jet):
            raise CurveError(f"{label}: non-finite jet at u = {u:.6g}")
        kappa = jet.d2 / (1.0 + jet.d1 * jet.d1) ** 1.5
        if not kappa > _KAPPA_FLOOR:
            raise CurveError(
                f"{label}: curvature {kappa:.3g} at u = {u:.6g} is below the "
                f"strict-convexity floor {_KAPPA_FLOOR:g}"
            )


def _builtin_parabola(p):
    return lambda u: p * u * u


def _builtin_tilted_parabola(p):
    return lambda u: p * u * u + u


def _builtin_circle(p):
    return lambda u: p - dual.sqrt(p * p - u * u)


def _builtin_ellipse(p):
    return lambda u: 1.0 - dual.sqrt(1.0 - (u * u) / (p * p))


def _builtin_catenary(p):
    half = 0.5 * p
    return lambda u: (dual.exp(u / p) + dual.exp(-u / p)) * half - p


def _builtin_quartic(p):
    return lambda u: u * u * u * u + p * u * u


# name -> (factory, default param, domain builder)
_BUILTINS: dict[str, tuple[Callable, float, Callable[[float], tuple[float, float]]]] = {
    "parabola": (_builtin_parabola, 1.0, lambda p: (-10.0, 10.0)),
    "tilted_parabola": (_builtin_tilted_parabola, 1.0, lambda p: (-10.0, 10.0)),
    "circle": (_builtin_circle, 1.0, lambda p: (-p, p)),
    "ellipse": (_builtin_ellipse, 2.0, lambda p: (-p, p)),
    "catenary": (_builtin_catenary, 1.0, lambda p: (-3.0 * p, 3.0 * p)),
    "quartic": (_builtin_quartic, 1.0, lambda p: (-3.0, 3.0)),
}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


def builtin_curve(name: str, param: float | None = None) -> Curve:
    """One of the builtin strictly convex graphs.

    parabola p*u^2, tilted_parabola p*u^2 + u, circle of radius p (lower
    arc), ellipse with semi-axes (p, 1), catenary p*(cosh(u/p) - 1), and
    quartic u^4 + p*u^2. ``param`` defaults per curve and must be positive.
    """
    if name not in _BUILTINS:
        raise CurveSpecError(f"unknown builtin curve {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    factory, default, domain_of = _BUILTINS[name]
    p = default if param is None else float(param)
    if not (math.isfinite(p) and p > 0.0):
        raise CurveSpecError(f"builtin curve parameter must be finite and positive, got {p!r}")
    fn = factory(p)
    domain = domain_of(p)
    _screen_convexity(fn, domain, f"builtin '{name}'")
    return Curve(kind="builtin", name=name, fn=fn, domain=domain, param=p)


def graph_curve(expr_text: str, domain: tuple[float, float]) -> Curve:
    """Curve from expression text for g(u) on an open interval."""
    ast = expr.parse_expression(expr_text)

    def fn(u):
        return expr.eval_expression(ast, u)

    domain = (float(domain[0]), float(domain[1]))
    _screen_convexity(fn, domain, f"graph '{expr_text}'")
    return Curve(kind="graph", name="graph", fn=fn, domain=domain, expr_text=expr_text)


def rotated_parabola(
    a: float,
    angle: float,
    base: tuple[float, float] = (0.0, 0.0),
    domain: tuple[float, float] | None = None,
) -> Curve:
    """The parabola y = a*x^2 rotated by ``angle`` and translated to ``base``,
    re-expressed as a graph curve.

    The branch through the (translated) vertex solves the rotated implicit
    equation; written with the numerically stable quadratic-formula form it
    uses only parser-supported operations, so the result is an ordinary graph
    curve with exact jets. ``angle`` must stay in (-pi/2, pi/2) for the curve
    to remain a graph near the vertex.
    """
    if not a > 0.0:
        raise CurveSpecError("rotated_parabola needs a > 0")
    if not abs(angle) < math.pi / 2:
        raise CurveSpecError("rotated_parabola needs |angle| < pi/2")
    u0, v0 = float(base[0]), float(base[1])
    c, s = math.cos(angle), math.sin(angle)
    if domain is None:
        if s == 0.0:
            domain = (u0 - 10.0, u0 + 10.0)
        else:
            reach = 0.8 * c * c / (4.0 * a * abs(s))  # stop short of the vertical tangent
            far = 2.0 / a
            domain = (u0 - far, u0 + reach) if s > 0 else (u0 - reach, u0 + far)
    U = "u" if u0 == 0.0 else f"(u - {u0!r})"
    num = f"2.0*({a * c * c!r}*{U}^2 + {s!r}*{U})"
    den = f"({c!r}*(1.0 - {2.0 * a * s!r}*{U}) + sqrt({c * c!r} - {4.0 * a * s!r}*{U}))"
    text = f"{num}/{den}" if v0 == 0.0 else f"{v0!r} + {num}/{den}"
    return graph_curve(text, domain)


def curve_from_spec(spec) -> Curve:
    """Build a curve from spec JSON (text or an already-parsed dict).

    Builtin: ``{"kind": "builtin", "name": "parabola", "param": 1.0}``.
    Graph: ``{"kind": "graph", "expr": "u^2 + u", "domain": [-2.0, 2.0]}``.
    """
    if isinstance(spec, (str, bytes)):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise CurveSpecError(f"curve spec is not valid JSON: {exc}") from exc
    if not isinstance(spec, dict):
        raise CurveSpecError(f"curve spec must be a JSON object, got {type(spec).__name__}")
    kind = spec.get("kind")
    if kind == "builtin":
        extra = set(spec) - {"kind", "name", "param"}
        if extra:
            raise CurveSpecError(f"unexpected builtin-spec keys: {sorted(extra)}")
        if "name" not in spec:
            raise CurveSpecError("builtin curve spec needs a 'name'")
        return builtin_curve(spec["name"], spec.get("param"))
    if kind == "graph":
        extra = set(spec) - {"kind", "expr", "domain"}
        if extra:
            raise CurveSpecError(f"unexpected graph-spec keys: {sorted(extra)}")
        if "expr" not in spec or "domain" not in spec:
            raise CurveSpecError("graph curve spec needs 'expr' and 'domain'")
        domain = spec["domain"]
        if (
            not isinstance(domain, (list, tuple))
            or len(domain) != 2
            or not all(isinstance(x, (int, float)) for x in domain)
        ):
            raise CurveSpecError("'domain' must be [lo, hi]")
        return graph_curve(spec["expr"], (domain[0], domain[1]))
    raise CurveSpecError(f"curve spec 'kind' must be 'builtin' or 'graph', got {kind!r}")


def curve_to_spec(curve: Curve) -> dict:
    """The spec-JSON dict that reconstructs this curve."""
    if curve.kind == "builtin":
        return {"kind": "builtin", "name": curve.name, "param": curve.param}
    return {"kind": "graph", "expr": curve.expr_text, "domain": [curve.domain[0], curve.domain[1]]}


def eval_jet2_raw(curve: Curve, u: float) -> Jet:
    out = curve.fn(seed(u))
    if not isinstance(out, Jet):  # constant expression
        out = Jet(float(out), 0.0, 0.0)
    if not dual.is_finite(out):
        raise CurveError(f"curve jet is non-finite at u = {u!r}")
    return out


def eval_jet2(curve: Curve, u: float) -> tuple[float, float, float]:
    """(g(u), g'(u), g''(u)) by forward-mode dual numbers."""
    if not curve.contains(u):
        raise CurveError(f"u = {u!r} is outside the open domain {curve.domain}")
    jet = eval_jet2_raw(curve, u)
    return jet.val, jet.d1, jet.d2


def frame_at(curve: Curve, u: float) -> FramedPoint:
    """Tangent/normal frame, slope, and curvature of the graph at u."""
    g, g1, g2 = eval_jet2(curve, u)
    w = math.sqrt(1.0 + g1 * g1)
    kappa = g2 / w**3
    if not kappa > 0.0:
        raise CurveError(f"non-positive curvature {kappa:.3g} at u = {u!r}")
    return FramedPoint(
        curve=curve,
        u=u,
        point=(u, g),
        tangent=(1.0 / w, g1 / w),
        normal=(-g1 / w, 1.0 / w),
        theta=math.atan(g1),
        alpha=g1,
        w=w,
        kappa=kappa,
    )


def to_chart(fp: FramedPoint) -> RotatedChart:
    """Chart at fp: the frame point becomes the origin, the tangent the x-axis."""
    return RotatedChart(fp=fp, cos_t=1.0 / fp.w, sin_t=fp.alpha / fp.w)
