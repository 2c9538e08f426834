"""Certified norm estimation on unit windows.

Implements the scale of windowed quantities used throughout the package:

* ``window_integral``      int_x^{x+1} |f(s)|^p ds, exact for even integer p
* ``stepanov_norm``        (sup_x of the window integral)^(1/p), certified
                           over a finite search window via a Lipschitz bound
* ``besicovitch_seminorm`` long-run quadratic mean, exact for polynomials
* ``exceedance_measure``   |{s in [x, x+1] : |g(s)| > lam}| by sampling
* amalgam norms            sup / sum over integer-translated unit windows

For even integer p the integrand |f|^p is expanded exactly as a polynomial
via (f * conj(f))^(p/2); the expansion falls back to adaptive quadrature when
it would exceed the term cap.  All sup estimates are reported as a value plus
a certified ``error_radius`` covering the search window; the sup over all of
the real line is only approached, never certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import TermBlowup, TrigPolynomial, evaluate, multiply
from .quadrature import QuadratureBudgetExceeded, integrate_adaptive

__all__ = [
    "NormExponent",
    "NormEstimate",
    "SampledFunction",
    "TermBlowup",
    "QuadratureBudgetExceeded",
    "TERM_CAP",
    "NODE_CAP",
    "abs_power_poly",
    "poly_power",
    "window_profile",
    "window_integral",
    "sup_window_integral",
    "stepanov_norm",
    "power_sup_norm",
    "besicovitch_seminorm",
    "exceedance_measure",
    "amalgam_linf_norm",
    "amalgam_window_norms",
    "amalgam_l1_norm",
]

TERM_CAP = 200_000
NODE_CAP = 1 << 20
_QUAD_TOL_FACTOR = 1e-10
_GOLDEN_ITERS = 60


@dataclass(frozen=True)
class NormExponent:
    """An L^p exponent, p >= 1."""

    p: float

    def __post_init__(self):
        if not (self.p >= 1.0):
            raise ValueError("norm exponent must satisfy p >= 1")

    @property
    def is_even_integer(self) -> bool:
        return self.p == int(self.p) and int(self.p) % 2 == 0

    @property
    def conjugate(self) -> float:
        """Holder conjugate p' = p/(p-1); +inf at p = 1."""
        return np.inf if self.p == 1.0 else self.p / (self.p - 1.0)


def _as_exponent(p) -> NormExponent:
    return p if isinstance(p, NormExponent) else NormExponent(float(p))


@dataclass(frozen=True)
class NormEstimate:
    """A value with a certified error radius over a finite search window.

    The true quantity, restricted to ``window``, lies within
    [value - error_radius, value + error_radius].
    """

    value: float
    error_radius: float
    window: tuple[float, float]
    grid_step: float

    @property
    def upper(self) -> float:
        return self.value + self.error_radius

    @property
    def lower(self) -> float:
        return max(0.0, self.value - self.error_radius)

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "error_radius": self.error_radius,
            "window": [self.window[0], self.window[1]],
            "grid_step": self.grid_step,
        }


@dataclass(frozen=True)
class SampledFunction:
    """An evaluable function with declared singular points.

    Quadrature panels never straddle a singular point, so integrable
    singularities (e.g. logarithmic blowups) are handled by plain panel
    refinement on either side.
    """

    func: Callable[[np.ndarray], np.ndarray]
    singular_points: tuple[float, ...] = ()

    def __call__(self, x):
        return np.asarray(self.func(np.asarray(x, dtype=float)))


# -- exact windowed integrals of polynomials ---------------------------------

def _unit_window_factors(mu: np.ndarray) -> np.ndarray:
    """int_0^1 e^{i mu s} ds = e^{i mu / 2} * sinc(mu / 2pi), stable near 0."""
    return np.exp(0.5j * mu) * np.sinc(mu / (2.0 * np.pi))


def abs_power_poly(f: TrigPolynomial, p: int, *, term_cap: int | None = TERM_CAP) -> TrigPolynomial:
    """|f|^p as an exact trigonometric polynomial, for even integer p."""
    if p < 2 or p % 2 != 0:
        raise ValueError("abs_power_poly needs an even integer exponent >= 2")
    base = multiply(f, f.conjugate(), term_cap=term_cap)
    return poly_power(base, p // 2, term_cap=term_cap)


def poly_power(q: TrigPolynomial, n: int, *, term_cap: int | None = TERM_CAP) -> TrigPolynomial:
    """q**n by repeated multiplication under the term cap."""
    if n < 1:
        raise ValueError("power must be a positive integer")
    out = q
    for _ in range(n - 1):
        out = multiply(out, q, term_cap=term_cap)
    return out


def window_profile(P: TrigPolynomial, xs) -> np.ndarray:
    """W(x) = int_x^{x+1} P(s) ds for a real-valued polynomial P, vectorized in x.

    Each term integrates in closed form, so W is itself a trigonometric
    polynomial with coefficients c_n * int_0^1 e^{i mu s} ds.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if len(P) == 0:
        return np.zeros(xs.shape)
    weighted = TrigPolynomial(P.frequencies, P.coefficients * _unit_window_factors(P.frequencies))
    return evaluate(weighted, xs).real


def _quad_window_integral(f, p, x, *, node_cap, tol_scale):
    scale = max(f.coefficient_abs_sum, 1e-300)
    abs_tol = _QUAD_TOL_FACTOR * scale**p * tol_scale
    panels = max(1, int(math.ceil(p * f.max_abs_frequency / 8.0)))
    value, _ = integrate_adaptive(
        lambda s: np.abs(evaluate(f, s)) ** p,
        x,
        x + 1.0,
        abs_tol=abs_tol,
        min_panels=min(panels, 4096),
        max_nodes=node_cap,
    )
    return max(0.0, float(value)), abs_tol


def window_integral(
    f: TrigPolynomial,
    p,
    x: float,
    *,
    method: str = "auto",
    term_cap: int = TERM_CAP,
    node_cap: int = NODE_CAP,
    tol_scale: float = 1.0,
) -> float:
    """int_x^{x+1} |f(s)|^p ds.

    ``method`` is "auto" (exact expansion for even integer p, quadrature
    otherwise, falling back on term blowup), "exact" (raise TermBlowup rather
    than fall back) or "quadrature".
    """
    pe = _as_exponent(p)
    if len(f) == 0:
        return 0.0
    if method not in ("auto", "exact", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "exact") and pe.is_even_integer:
        try:
            P = abs_power_poly(f, int(pe.p), term_cap=term_cap)
            return float(window_profile(P, x)[0])
        except TermBlowup:
            if method == "exact":
                raise
    elif method == "exact":
        raise ValueError("exact window integrals require an even integer exponent")
    value, _ = _quad_window_integral(f, pe.p, x, node_cap=node_cap, tol_scale=tol_scale)
    return value


# -- certified sup over a search window --------------------------------------

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(fun, a: float, b: float, iters: int = _GOLDEN_ITERS):
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fun(d)
    return max(fc, fd)


def sup_window_integral(
    P: TrigPolynomial,
    window: tuple[float, float] = (0.0, 64.0),
    grid_step: float = 0.5,
):
    """Certified sup over x in window of W(x) = int_x^{x+1} P for real P >= 0.

    Returns (best, upper, x_best): ``best`` is the refined grid maximum (a
    lower bound up to round-off) and ``upper`` adds the Lipschitz slack
    |W'(x)| <= 2 * sum|coeffs| between grid points.
    """
    lo, hi = float(window[0]), float(window[1])
    if not hi > lo:
        raise ValueError("search window must be non-degenerate")
    if grid_step <= 0.0:
        raise ValueError("grid_step must be positive")
    if len(P) == 0:
        return 0.0, 0.0, lo
    n = int(math.floor((hi - lo) / grid_step + 1e-12)) + 1
    xs = lo + grid_step * np.arange(n)
    W = window_profile(P, xs)
    i = int(np.argmax(W))
    a = max(lo, xs[i] - grid_step)
    b = min(hi, xs[i] + grid_step)
    best = _golden_max(lambda x: float(window_profile(P, x)[0]), a, b)
    best = max(best, float(W[i]))
    lip = 2.0 * float(np.sum(np.abs(P.coefficients)))
    upper = float(W.max()) + 0.5 * lip * grid_step
    return best, upper, float(xs[i])


def power_sup_norm(
    Q: TrigPolynomial,
    power: int,
    root: float,
    window: tuple[float, float] = (0.0, 64.0),
    grid_step: float = 0.5,
    *,
    term_cap: int = TERM_CAP,
) -> NormEstimate:
    """(sup_x int_x^{x+1} Q^power)^(1/root) for a real nonnegative polynomial Q.

    The building block for Stepanov norms of square-sum functions: with
    Q = sum_j |f_j|^2, power = 2^(k-1) and root = 2^k this is the S^{2^k}
    norm of (sum_j |f_j|^2)^(1/2).
    """
    if len(Q) == 0:
        return NormEstimate(0.0, 0.0, window, grid_step)
    P = poly_power(Q, power, term_cap=term_cap) if power > 1 else Q
    best, upper, _ = sup_window_integral(P, window, grid_step)
    value = best ** (1.0 / root)
    radius = max(upper ** (1.0 / root) - value, 0.0) + 1e-14 * max(1.0, value)
    return NormEstimate(value, radius, (float(window[0]), float(window[1])), float(grid_step))


def stepanov_norm(
    f: TrigPolynomial,
    p,
    window: tuple[float, float] = (0.0, 64.0),
    grid_step: float = 0.5,
    *,
    term_cap: int = TERM_CAP,
    node_cap: int = NODE_CAP,
) -> NormEstimate:
    """(sup over the window of the unit-window L^p integral)^(1/p).

    The estimate certifies the sup over the finite search window only; it is
    a lower bound for the sup over the whole line.
    """
    pe = _as_exponent(p)
    if len(f) == 0:
        return NormEstimate(0.0, 0.0, window, grid_step)

    if pe.is_even_integer:
        try:
            P = abs_power_poly(f, int(pe.p), term_cap=term_cap)
            return power_sup_norm(P, 1, pe.p, window, grid_step, term_cap=term_cap)
        except TermBlowup:
            pass

    lo, hi = float(window[0]), float(window[1])
    if not hi > lo or grid_step <= 0.0:
        raise ValueError("invalid search window or grid step")
    n = int(math.floor((hi - lo) / grid_step + 1e-12)) + 1
    xs = lo + grid_step * np.arange(n)

    qtol = 0.0

    def W(x):
        nonlocal qtol
        value, tol = _quad_window_integral(f, pe.p, float(x), node_cap=node_cap, tol_scale=1.0)
        qtol = max(qtol, tol)
        return value

    Wg = np.array([W(x) for x in xs])
    i = int(np.argmax(Wg))
    a, b = max(lo, xs[i] - grid_step), min(hi, xs[i] + grid_step)
    best = max(_golden_max(W, a, b, iters=30), float(Wg[i]))
    lip = 2.0 * f.coefficient_abs_sum**pe.p
    upper = float(Wg.max()) + 0.5 * lip * grid_step + qtol
    lower = max(0.0, best - qtol)
    value = best ** (1.0 / pe.p)
    radius = max(value - lower ** (1.0 / pe.p), upper ** (1.0 / pe.p) - value) + 1e-14 * max(1.0, value)
    return NormEstimate(value, radius, (lo, hi), float(grid_step))


def besicovitch_seminorm(f: TrigPolynomial) -> float:
    """Long-run quadratic mean; equals the l2 norm of the coefficients."""
    if len(f) == 0:
        return 0.0
    return float(np.linalg.norm(f.coefficients))


# -- weak-type exceedance -----------------------------------------------------

def exceedance_measure(g, lam: float, x: float = 0.0, grid_step: float = 1e-4):
    """Sampled Lebesgue measure of {s in [x, x+1] : |g(s)| > lam}.

    Returns (measure, resolution_bound) where the bound is
    step * (number of threshold crossings + 1).
    """
    if lam <= 0.0:
        raise ValueError("exceedance threshold must be positive")
    n = max(1, int(round(1.0 / grid_step)))
    h = 1.0 / n
    s = x + h * (np.arange(n) + 0.5)
    if isinstance(g, TrigPolynomial):
        vals = np.abs(evaluate(g, s))
    else:
        vals = np.abs(np.asarray(g(s), dtype=complex))
    exceed = vals > lam
    measure = h * float(np.count_nonzero(exceed))
    crossings = int(np.count_nonzero(np.diff(exceed)))
    return measure, h * (crossings + 1)


# -- amalgam norms ------------------------------------------------------------

def _window_lp_integral(g, p: float, a: float, *, abs_tol: float, node_cap: int = NODE_CAP):
    """int_a^{a+1} |g|^p for a sampled function, panels split at singularities."""
    sing = getattr(g, "singular_points", ())
    fn = g if callable(g) else None
    if fn is None:
        raise TypeError("sampled window integrals need a callable")
    with np.errstate(divide="ignore", invalid="ignore"):
        value, _ = integrate_adaptive(
            lambda s: np.abs(np.asarray(fn(s), dtype=complex)) ** p,
            a,
            a + 1.0,
            abs_tol=abs_tol,
            min_panels=4,
            split_points=[s for s in sing if a < s < a + 1.0],
            max_nodes=node_cap,
        )
    return max(0.0, float(value))


def amalgam_linf_norm(f, p, index_range: tuple[int, int], *, term_cap: int = TERM_CAP) -> NormEstimate:
    """max over integer x in index_range of the unit-window L^p norm."""
    pe = _as_exponent(p)
    lo, hi = int(index_range[0]), int(index_range[1])
    if hi < lo:
        raise ValueError("empty index range")
    xs = np.arange(lo, hi + 1, dtype=float)
    qtol = 0.0
    if isinstance(f, TrigPolynomial):
        if len(f) == 0:
            return NormEstimate(0.0, 0.0, (float(lo), float(hi + 1)), 1.0)
        if pe.is_even_integer:
            try:
                P = abs_power_poly(f, int(pe.p), term_cap=term_cap)
                vals = window_profile(P, xs)
            except TermBlowup:
                vals = np.array([_quad_window_integral(f, pe.p, x, node_cap=NODE_CAP, tol_scale=1.0)[0] for x in xs])
                qtol = _QUAD_TOL_FACTOR * f.coefficient_abs_sum**pe.p
        else:
            out = [_quad_window_integral(f, pe.p, x, node_cap=NODE_CAP, tol_scale=1.0) for x in xs]
            vals = np.array([v for v, _ in out])
            qtol = max(t for _, t in out)
    else:
        abs_tol = 1e-10
        vals = np.array([_window_lp_integral(f, pe.p, x, abs_tol=abs_tol) for x in xs])
        qtol = abs_tol
    best = float(np.max(vals))
    value = best ** (1.0 / pe.p)
    radius = (best + qtol) ** (1.0 / pe.p) - value + 1e-14 * max(1.0, value)
    return NormEstimate(value, radius, (float(lo), float(hi + 1)), 1.0)


def amalgam_window_norms(g, p_conj, index_range: tuple[int, int], *, abs_tol: float = 1e-9) -> np.ndarray:
    """Per-window L^{p'} norms over the integer windows in index_range."""
    pe = _as_exponent(p_conj)
    lo, hi = int(index_range[0]), int(index_range[1])
    if hi < lo:
        raise ValueError("empty index range")
    if isinstance(g, TrigPolynomial):
        return np.array(
            [window_integral(g, pe, float(x)) ** (1.0 / pe.p) for x in range(lo, hi + 1)]
        )
    return np.array(
        [_window_lp_integral(g, pe.p, float(x), abs_tol=abs_tol) ** (1.0 / pe.p) for x in range(lo, hi + 1)]
    )


def amalgam_l1_norm(g, p_conj, index_range: tuple[int, int], *, abs_tol: float = 1e-9) -> float:
    """Partial sum over index_range of the per-window L^{p'} norms."""
    return float(np.sum(amalgam_window_norms(g, p_conj, index_range, abs_tol=abs_tol)))
