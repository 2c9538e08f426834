"""The operator family as exact frequency multipliers, plus slow oracles.

Every operator here acts on a trigonometric polynomial by scaling the
coefficient at each frequency by a symbol value; no operator ever creates a
frequency.  The module also carries the deliberately slow independent
oracles used to cross-check the multiplier route: direct convolution
quadrature against the space-domain kernel, principal-value quadrature for
the unit-indicator transform, and brute-force grid maxima.

Sign conventions at frequency zero matter for boundary behaviour and are
explicit: ``sgn_plus(0) = +1``, ``sgn_minus(0) = -1``, and the plain
transform uses ``sgn(0) = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    TrigPolynomial,
    evaluate,
    is_real_valued,
    modulate,
    multiply,
)
from .mollifier import Mollifier
from .quadrature import integrate_adaptive


class NotRealValued(ValueError):
    """The operation requires conjugate-symmetric coefficients."""


class JMaxTooSmall(ValueError):
    """The dyadic level cap does not cover the polynomial's bandwidth."""


class SingularPoint(ValueError):
    """Evaluation requested exactly at a singular point."""


@dataclass(frozen=True)
class FrequencyMultiplier:
    """A frequency -> complex scalar symbol with a descriptive tag."""

    symbol: Callable[[np.ndarray], np.ndarray]
    tag: str

    def __call__(self, lam):
        return np.asarray(self.symbol(np.asarray(lam, dtype=float)), dtype=complex)


def apply_multiplier(m: FrequencyMultiplier, f: TrigPolynomial) -> TrigPolynomial:
    """Scale each coefficient by the symbol at its frequency; prune zeros."""
    if len(f) == 0:
        return f
    return TrigPolynomial(f.frequencies, f.coefficients * m(f.frequencies))


def compose(m1: FrequencyMultiplier, m2: FrequencyMultiplier) -> FrequencyMultiplier:
    """Pointwise product of symbols; applying it equals applying m1 then m2."""
    return FrequencyMultiplier(lambda lam: m1(lam) * m2(lam), f"{m2.tag}*{m1.tag}")


def identity_multiplier() -> FrequencyMultiplier:
    return FrequencyMultiplier(lambda lam: np.ones(np.shape(lam), dtype=complex), "id")


def sgn_pm(x, variant: str, *, zero_sign: float | None = None):
    """Sign function assigning +1 (variant "plus") or -1 ("minus") at zero.

    ``zero_sign`` overrides the value at zero; used by corruption tests.
    """
    if variant not in ("plus", "minus"):
        raise ValueError("variant must be 'plus' or 'minus'")
    z = (1.0 if variant == "plus" else -1.0) if zero_sign is None else float(zero_sign)
    x = np.asarray(x, dtype=float)
    out = np.sign(x)
    out[x == 0.0] = z
    return out


def dyadic_cutoff_multiplier(j: int) -> FrequencyMultiplier:
    """Sharp cutoff to |lam| <= 2^j, boundary included."""
    cut = 2.0 ** _check_level(j)
    return FrequencyMultiplier(
        lambda lam: (np.abs(lam) <= cut).astype(complex), f"S_{j}"
    )


def smoothed_cutoff_multiplier(j: int, m: Mollifier) -> FrequencyMultiplier:
    cut = 2.0 ** _check_level(j)
    return FrequencyMultiplier(lambda lam: m.phi_hat(lam / cut).astype(complex), f"R_{j}")


def hilbert_multiplier() -> FrequencyMultiplier:
    return FrequencyMultiplier(lambda lam: -1j * np.sign(lam), "H")


def hilbert_pm_multiplier(variant: str, *, zero_sign: float | None = None) -> FrequencyMultiplier:
    tag = "H+" if variant == "plus" else "H-"
    return FrequencyMultiplier(
        lambda lam: -1j * sgn_pm(lam, variant, zero_sign=zero_sign), tag
    )


def lp_band_multiplier(k: int, m: Mollifier) -> FrequencyMultiplier:
    if k < 1:
        raise ValueError("band index must be a positive integer")
    scale = 2.0**k
    return FrequencyMultiplier(lambda lam: np.asarray(m.psi_hat(lam / scale), dtype=complex), f"psi_{k}")


def _check_level(j: int) -> int:
    if int(j) != j or j < 0:
        raise ValueError("dyadic level must be a nonnegative integer")
    return int(j)


# -- partial sums and transforms ----------------------------------------------

def dyadic_partial_sum(f: TrigPolynomial, j: int) -> TrigPolynomial:
    """Keep the terms with |lam| <= 2^j (boundary included)."""
    return apply_multiplier(dyadic_cutoff_multiplier(j), f)


def smoothed_partial_sum(f: TrigPolynomial, j: int, m: Mollifier) -> TrigPolynomial:
    """Smooth truncation by the plateau profile at scale 2^j."""
    return apply_multiplier(smoothed_cutoff_multiplier(j, m), f)


def hilbert_transform(f: TrigPolynomial) -> TrigPolynomial:
    """Multiplier -i sgn(lam) with sgn(0) = 0."""
    return apply_multiplier(hilbert_multiplier(), f)


def hilbert_pm(f: TrigPolynomial, variant: str, *, zero_sign: float | None = None) -> TrigPolynomial:
    """Multiplier -i sgn_{+/-}(lam); the variants differ only at lam = 0."""
    return apply_multiplier(hilbert_pm_multiplier(variant, zero_sign=zero_sign), f)


def sj_via_modulation(
    f: TrigPolynomial,
    j: int,
    *,
    sgn_plus_zero: float = 1.0,
    sgn_minus_zero: float = -1.0,
) -> TrigPolynomial:
    """Sharp dyadic truncation assembled from modulations and H_{+/-}.

    Computes (i/2) [ e^{-i 2^j x} H_+(e^{i 2^j .} f) - e^{i 2^j x} H_-(e^{-i 2^j .} f) ],
    which reproduces the |lam| <= 2^j cutoff term by term.  The values of the
    signs at zero are exposed so corruption tests can flip the boundary
    convention.
    """
    cut = 2.0 ** _check_level(j)
    up = modulate(hilbert_pm(modulate(f, +cut), "plus", zero_sign=sgn_plus_zero), -cut)
    down = modulate(hilbert_pm(modulate(f, -cut), "minus", zero_sign=sgn_minus_zero), +cut)
    return 0.5j * (up - down)


def lp_piece(f: TrigPolynomial, k: int, m: Mollifier) -> TrigPolynomial:
    """One dyadic band of f: multiplier psi_hat(lam / 2^k)."""
    return apply_multiplier(lp_band_multiplier(k, m), f)


def poly_term_distance(f: TrigPolynomial, g: TrigPolynomial) -> float:
    """Max coefficient deviation over the merged union of term frequencies."""
    diff = f - g
    if len(diff) == 0:
        return 0.0
    return float(np.max(np.abs(diff.coefficients)))


# -- square function and maximal operators -------------------------------------

def _vanishing_level(f: TrigPolynomial) -> int:
    """Smallest j with 2^(j-1) >= max |lam|; all later square-function terms vanish."""
    top = f.max_abs_frequency
    if top <= 0.5:
        return 0
    return int(math.ceil(math.log2(top))) + 1


def square_function(f: TrigPolynomial, j_max: int, x, m: Mollifier):
    """(sum_{j=0}^{j_max} |S_j f(x) - R_j f(x)|^2)^(1/2), exact finite sum.

    Requires j_max at or past the level where sharp and smooth truncations
    agree identically, so the tail contributes exactly zero.
    """
    j_max = _check_level(j_max)
    if len(f) == 0:
        xs = np.asarray(x, dtype=float)
        return 0.0 if xs.ndim == 0 else np.zeros(xs.shape)
    j_zero = _vanishing_level(f)
    if j_max < j_zero:
        raise JMaxTooSmall(f"need j_max >= {j_zero} for max |lam| = {f.max_abs_frequency:g}")
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    pts = np.atleast_1d(xs)
    acc = np.zeros(pts.shape)
    for j in range(0, j_zero):
        cut = 2.0**j
        gains = (np.abs(f.frequencies) <= cut).astype(complex) - m.phi_hat(f.frequencies / cut)
        d = TrigPolynomial(f.frequencies, f.coefficients * gains)
        if len(d):
            acc += np.abs(evaluate(d, pts)) ** 2
    out = np.sqrt(acc)
    return float(out[0]) if scalar else out.reshape(xs.shape)


def maximal_partial_sum(f: TrigPolynomial, j_max: int, x):
    """max over j in {0..j_max} of |S_j f(x)|.

    Only the distinct truncations are evaluated (the cutoff only changes
    when it crosses a term's |frequency|); requires 2^j_max to cover the
    bandwidth so the supremum is attained within the range.
    """
    j_max = _check_level(j_max)
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    pts = np.atleast_1d(xs)
    if len(f) == 0:
        return 0.0 if scalar else np.zeros(xs.shape)
    top = f.max_abs_frequency
    if 2.0**j_max < top:
        raise JMaxTooSmall(f"need 2^j_max >= max |lam| = {top:g}")
    absf = np.abs(f.frequencies)
    order = np.argsort(absf, kind="stable")
    sorted_abs = absf[order]
    counts = np.searchsorted(sorted_abs, [2.0**j for j in range(j_max + 1)], side="right")
    best = np.zeros(pts.shape)
    for cnt in sorted(set(int(c) for c in counts)):
        if cnt == 0:
            continue
        part = TrigPolynomial(f.frequencies[order[:cnt]], f.coefficients[order[:cnt]])
        best = np.maximum(best, np.abs(evaluate(part, pts)))
    return float(best[0]) if scalar else best.reshape(xs.shape)


def smoothed_maximal(f: TrigPolynomial, j_max: int, x, m: Mollifier):
    """max over j in {0..j_max} of |R_j f(x)|."""
    j_max = _check_level(j_max)
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    pts = np.atleast_1d(xs)
    if len(f) == 0:
        return 0.0 if scalar else np.zeros(xs.shape)
    j_zero = _vanishing_level(f)
    best = np.zeros(pts.shape)
    # beyond the vanishing level every smooth truncation equals f itself
    for j in range(0, min(j_max, j_zero) + 1):
        best = np.maximum(best, np.abs(evaluate(smoothed_partial_sum(f, j, m), pts)))
    return float(best[0]) if scalar else best.reshape(xs.shape)


# -- identity and inequality primitives ----------------------------------------

_IDENTITY_GRID = np.linspace(0.0, 10.0, 1000)


def hilbert_identity_check(f: TrigPolynomial, variant: str, grid=None) -> float:
    """Max grid residual of (Hf)^2 - f^2 - 2 H(f Hf) for the chosen variant.

    Requires a real-valued polynomial (conjugate-symmetric coefficients).
    """
    if not is_real_valued(f):
        raise NotRealValued("conjugate symmetry c(-lam) = conj(c(lam)) fails")
    if len(f) == 0:
        return 0.0
    pts = _IDENTITY_GRID if grid is None else np.asarray(grid, dtype=float)
    h = hilbert_pm(f, variant)
    lhs = multiply(h, h)
    rhs = multiply(f, f) + 2.0 * hilbert_pm(multiply(f, h), variant)
    return float(np.max(np.abs(evaluate(lhs, pts) - evaluate(rhs, pts))))


def sequence_hilbert(freqs, values, *, include_self_term: bool = False) -> np.ndarray:
    """(T a)_j = sum_{k != j} a_k / (lam_j - lam_k) for separated frequencies.

    Exact O(n * nnz) summation.  ``include_self_term`` keeps the k = j term
    (a division by zero) and exists only so corruption tests can observe the
    resulting blowup.
    """
    lam = np.asarray(freqs, dtype=float).ravel()
    a = np.asarray(values, dtype=complex).ravel()
    if lam.shape != a.shape:
        raise ValueError("frequency and value sequences must have equal length")
    n = lam.size
    if n == 0:
        return np.zeros(0, dtype=complex)
    if np.any(np.diff(lam) <= 0.0):
        raise ValueError("frequencies must be strictly increasing")
    out = np.zeros(n, dtype=complex)
    nz = np.flatnonzero(a)
    with np.errstate(divide="ignore", invalid="ignore"):
        if nz.size > n // 8 and n <= 4096:
            D = lam[:, None] - lam[None, :]
            if not include_self_term:
                np.fill_diagonal(D, np.inf)
            out = (1.0 / D) @ a
        else:
            for k in nz:
                diff = lam - lam[k]
                if not include_self_term:
                    diff = diff.copy()
                    diff[k] = np.inf
                out += a[k] / diff
    return out


# -- slow independent oracles ---------------------------------------------------

def direct_convolution_oracle(
    f: TrigPolynomial,
    m: Mollifier,
    which: str,
    k: int,
    x: float,
    truncation_radius: float,
    *,
    abs_tol: float | None = None,
    max_nodes: int = 1 << 20,
) -> complex:
    """Truncated convolution quadrature int_{-R}^{R} f(x - y) kernel_k(y) dy.

    The kernel is the space-domain scaled cutoff (``which = "phi_k"``) or band
    kernel (``"psi_k"``).  Agrees with the corresponding multiplier route up
    to kernel tail mass outside [-R, R] plus the quadrature tolerance.
    """
    R = float(truncation_radius)
    if R <= 0.0:
        raise ValueError("truncation radius must be positive")
    if which not in ("phi_k", "psi_k"):
        raise ValueError("which must be 'phi_k' or 'psi_k'")
    if len(f) == 0:
        return 0j
    scale = f.coefficient_abs_sum
    if abs_tol is None:
        abs_tol = 1e-8 * max(scale, 1e-300)

    def integrand(y):
        return evaluate(f, x - y) * m.scaled_kernel(which, k, y, tol=1e-9)

    width = min(4.0 / max(f.max_abs_frequency, 1.0), 1.5 * 2.0 ** (-k))
    panels = max(8, int(math.ceil(2.0 * R / width)))
    value, _ = integrate_adaptive(
        integrand, -R, R, abs_tol=abs_tol, min_panels=min(panels, 8192), max_nodes=max_nodes
    )
    return complex(value)


def pv_hilbert_indicator(x: float, method: str = "closed_form", *, abs_tol: float = 1e-10) -> float:
    """Transform of the unit indicator: (1/pi) log(|x| / |x - 1|).

    ``method = "quadrature"`` instead computes the symmetric principal value
    of (1/pi) int_0^1 dy / (x - y), splitting a symmetric neighbourhood of
    the interior singularity where the principal value cancels exactly.
    """
    x = float(x)
    if x == 0.0 or x == 1.0:
        raise SingularPoint("the transform diverges at 0 and 1")
    if method == "closed_form":
        return math.log(abs(x) / abs(x - 1.0)) / math.pi
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")

    pieces = []
    if 0.0 < x < 1.0:
        delta = min(x, 1.0 - x)
        if x - delta > 0.0:
            pieces.append((0.0, x - delta))
        if x + delta < 1.0:
            pieces.append((x + delta, 1.0))
    else:
        pieces.append((0.0, 1.0))
    total = 0.0
    for a, b in pieces:
        val, _ = integrate_adaptive(
            lambda y: 1.0 / (x - y), a, b, abs_tol=abs_tol, min_panels=8
        )
        total += val
    return total / math.pi
