"""Trigonometric polynomials with arbitrary real frequencies.

The universal function representation for this package is a finite list of
(frequency, complex coefficient) pairs,

    f(x) = sum_n c_n * exp(i * lam_n * x),

with the frequencies kept strictly increasing.  Frequencies closer than
``FREQ_MERGE_TOL`` are merged (coefficients summed); exact zero coefficients
are pruned.  All values are immutable after construction and every operation
in this module is pure, so instances are safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

#: Absolute tolerance below which two frequencies are considered identical.
#: Chosen below quadrature noise but above double-precision accumulation error.
FREQ_MERGE_TOL = 1e-9


class AmbiguousMatch(ValueError):
    """More than one term lies within the match tolerance of a queried frequency."""


class TermBlowup(RuntimeError):
    """A polynomial product exceeded the configured term cap."""


@dataclass(frozen=True)
class AveragingWindow:
    """Symmetric averaging window [-T, T] used by long-run mean estimators."""

    half_length: float

    def __post_init__(self):
        if not np.isfinite(self.half_length) or self.half_length <= 0.0:
            raise ValueError("half_length must be finite and positive")


def _merge_close(freq: np.ndarray, coef: np.ndarray, tol: float):
    """Merge sorted terms whose adjacent frequency gaps are <= tol."""
    if freq.size < 2:
        return freq, coef
    group = np.concatenate(([0], np.cumsum(np.diff(freq) > tol)))
    counts = np.bincount(group)
    out_f = np.bincount(group, weights=freq) / counts
    out_c = np.bincount(group, weights=coef.real) + 1j * np.bincount(group, weights=coef.imag)
    return out_f, out_c


class TrigPolynomial:
    """Immutable finite trigonometric sum with real frequencies.

    Parameters
    ----------
    frequencies, coefficients : array_like
        Parallel sequences of real frequencies and complex coefficients.
        Terms are sorted, near-duplicate frequencies merged within
        ``merge_tol``, and zero coefficients dropped.
    """

    __slots__ = ("frequencies", "coefficients")

    def __init__(self, frequencies=(), coefficients=(), *, merge_tol: float = FREQ_MERGE_TOL):
        freq = np.asarray(frequencies, dtype=float).ravel()
        coef = np.asarray(coefficients, dtype=complex).ravel()
        if freq.shape != coef.shape:
            raise ValueError("frequencies and coefficients must have equal length")
        if freq.size:
            if not np.all(np.isfinite(freq)):
                raise ValueError("frequencies must be finite")
            order = np.argsort(freq, kind="stable")
            freq, coef = freq[order], coef[order]
            freq, coef = _merge_close(freq, coef, merge_tol)
            keep = coef != 0
            if not keep.all():
                freq, coef = freq[keep], coef[keep]
        freq.setflags(write=False)
        coef.setflags(write=False)
        super().__setattr__("frequencies", freq)
        super().__setattr__("coefficients", coef)

    def __setattr__(self, name, value):
        raise AttributeError("TrigPolynomial is immutable")

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[float, complex]]) -> "TrigPolynomial":
        terms = list(terms)
        if not terms:
            return cls()
        freq, coef = zip(*terms)
        return cls(freq, coef)

    def terms(self) -> list[tuple[float, complex]]:
        return [(float(l), complex(c)) for l, c in zip(self.frequencies, self.coefficients)]

    def __len__(self) -> int:
        return int(self.frequencies.size)

    def __repr__(self) -> str:
        if len(self) <= 4:
            inner = ", ".join(f"({l:g}, {c:g})" for l, c in self.terms())
        else:
            inner = f"{len(self)} terms, |lam| <= {self.max_abs_frequency:g}"
        return f"TrigPolynomial({inner})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrigPolynomial):
            return NotImplemented
        return np.array_equal(self.frequencies, other.frequencies) and np.array_equal(
            self.coefficients, other.coefficients
        )

    def __hash__(self):
        return hash((self.frequencies.tobytes(), self.coefficients.tobytes()))

    @property
    def max_abs_frequency(self) -> float:
        return float(np.max(np.abs(self.frequencies))) if len(self) else 0.0

    @property
    def coefficient_abs_sum(self) -> float:
        """sum_n |c_n|, the trivial sup-norm bound for the polynomial."""
        return float(np.sum(np.abs(self.coefficients)))

    # -- linear algebra ----------------------------------------------------

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        if not isinstance(other, TrigPolynomial):
            return NotImplemented
        return TrigPolynomial(
            np.concatenate([self.frequencies, other.frequencies]),
            np.concatenate([self.coefficients, other.coefficients]),
        )

    def __sub__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        return self + (-other)

    def __neg__(self) -> "TrigPolynomial":
        return TrigPolynomial(self.frequencies, -self.coefficients)

    def __mul__(self, other):
        if isinstance(other, TrigPolynomial):
            return multiply(self, other)
        return TrigPolynomial(self.frequencies, self.coefficients * complex(other))

    __rmul__ = __mul__

    def conjugate(self) -> "TrigPolynomial":
        """Complex conjugate; frequencies flip sign."""
        return TrigPolynomial(-self.frequencies, np.conj(self.coefficients))


# -- evaluation -------------------------------------------------------------

_EVAL_CHUNK = 1 << 21  # max term*point products per exp() batch


def evaluate(f: TrigPolynomial, x):
    """Evaluate f at x (scalar or array); the empty polynomial gives 0."""
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    pts = np.atleast_1d(xs).ravel()
    if len(f) == 0:
        out = np.zeros(pts.shape, dtype=complex)
    elif len(f) * pts.size <= _EVAL_CHUNK:
        out = np.exp(1j * np.outer(pts, f.frequencies)) @ f.coefficients
    else:
        out = np.empty(pts.shape, dtype=complex)
        block = max(1, _EVAL_CHUNK // len(f))
        for i in range(0, pts.size, block):
            sl = slice(i, i + block)
            out[sl] = np.exp(1j * np.outer(pts[sl], f.frequencies)) @ f.coefficients
    if scalar:
        return complex(out[0])
    return out.reshape(xs.shape)


def fourier_coefficient_exact(f: TrigPolynomial, lam: float, *, match_tol: float = FREQ_MERGE_TOL) -> complex:
    """Read off the coefficient at frequency lam; 0 when no term matches.

    Raises
    ------
    AmbiguousMatch
        If two terms lie within ``match_tol`` of lam.
    """
    if len(f) == 0:
        return 0j
    hits = np.flatnonzero(np.abs(f.frequencies - lam) <= match_tol)
    if hits.size > 1:
        raise AmbiguousMatch(f"{hits.size} terms within {match_tol} of frequency {lam}")
    if hits.size == 0:
        return 0j
    return complex(f.coefficients[hits[0]])


def fourier_coefficient_estimate(f: TrigPolynomial, lam: float, window: AveragingWindow):
    """Finite-window mean estimator of the coefficient at lam.

    Returns the exact closed form of (1/2T) * int_{-T}^{T} f(x) e^{-i lam x} dx
    together with a certified bound on its distance to the exact coefficient:
    each off-frequency term contributes at most |c_n| / (|lam_n - lam| * T).
    """
    T = window.half_length if isinstance(window, AveragingWindow) else float(window)
    if T <= 0.0:
        raise ValueError("window half-length must be positive")
    if len(f) == 0:
        return 0j, 0.0
    delta = f.frequencies - lam
    on = np.abs(delta) <= FREQ_MERGE_TOL
    value = complex(f.coefficients[on].sum())
    off = ~on
    if off.any():
        z = delta[off] * T
        value += complex(np.sum(f.coefficients[off] * np.sin(z) / z))
        bound = float(np.sum(np.abs(f.coefficients[off]) / (np.abs(delta[off]) * T)))
    else:
        bound = 0.0
    return value, bound


def separation(f: TrigPolynomial) -> float:
    """Minimum adjacent frequency gap; +inf for fewer than two terms."""
    if len(f) < 2:
        return np.inf
    return float(np.min(np.diff(f.frequencies)))


def modulate(f: TrigPolynomial, mu: float) -> TrigPolynomial:
    """Shift every frequency by mu; evaluate(result, x) = exp(i mu x) f(x)."""
    if len(f) == 0:
        return f
    return TrigPolynomial(f.frequencies + mu, f.coefficients)


def multiply(f: TrigPolynomial, g: TrigPolynomial, *, term_cap: int | None = None) -> TrigPolynomial:
    """Pointwise product as frequency-domain convolution.

    Output terms are (lam_n + mu_m, c_n * d_m) with near-equal output
    frequencies merged.  If ``term_cap`` is given and the merged result
    would exceed it (or the raw pair count is hopeless), raises TermBlowup.
    """
    if len(f) == 0 or len(g) == 0:
        return TrigPolynomial()
    pairs = len(f) * len(g)
    if term_cap is not None and pairs > 64 * term_cap:
        raise TermBlowup(f"{pairs} raw product terms exceed 64x term cap {term_cap}")
    freq = np.add.outer(f.frequencies, g.frequencies).ravel()
    coef = np.multiply.outer(f.coefficients, g.coefficients).ravel()
    out = TrigPolynomial(freq, coef)
    if term_cap is not None and len(out) > term_cap:
        raise TermBlowup(f"{len(out)} merged product terms exceed term cap {term_cap}")
    return out


def is_real_valued(f: TrigPolynomial, tol: float = 1e-12) -> bool:
    """True when coefficients satisfy c(-lam) = conj(c(lam)) within tol."""
    if len(f) == 0:
        return True
    fr, co = f.frequencies, f.coefficients
    if np.max(np.abs(fr + fr[::-1])) > FREQ_MERGE_TOL:
        return False
    scale = max(1.0, f.coefficient_abs_sum)
    return bool(np.max(np.abs(co - np.conj(co[::-1]))) <= tol * scale)


# -- interchange format ------------------------------------------------------

def to_json_dict(f: TrigPolynomial) -> dict:
    """{"terms": [{"freq":, "re":, "im":}, ...]} with frequencies ascending."""
    return {
        "terms": [
            {"freq": float(l), "re": float(c.real), "im": float(c.imag)}
            for l, c in zip(f.frequencies, f.coefficients)
        ]
    }


def from_json_dict(data: dict) -> TrigPolynomial:
    terms = data.get("terms", [])
    if not terms:
        return TrigPolynomial()
    freq = [t["freq"] for t in terms]
    coef = [complex(t["re"], t.get("im", 0.0)) for t in terms]
    return TrigPolynomial(freq, coef)
