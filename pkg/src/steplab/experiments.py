"""Two scripted desk-scale experiments.

* ``converge_experiment``: dyadic truncations of a lacunary series with an
  exact geometric tail oracle.  The series sum_{n=1}^{N} 2^{-n} e^{i 3^n x}
  has gaps that grow geometrically, so every truncation drops a tail whose
  coefficients align in phase at x = 0; the sampled sup of the truncation
  error therefore equals the tail sum exactly whenever 0 is on the grid.

* ``amalgam_experiment``: partial sums of the summed-window norm of the
  transformed unit indicator, (1/pi) log(|x| / |x-1|).  Per-window norms
  decay like 1/(pi |n|), so the partial sums over [-N, N] grow like
  (2/pi) log N; the fitted log-slope demonstrates the divergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import TrigPolynomial, evaluate
from .norms import SampledFunction, amalgam_window_norms
from .operators import dyadic_partial_sum

LACUNARY_BASE = 3.0
MAX_LACUNARY_TERMS = 30  # 3^30 is still exactly representable in a double


def lacunary_polynomial(n_terms: int) -> TrigPolynomial:
    """sum_{n=1}^{N} 2^{-n} e^{i 3^n x}; separation grows with the frequency."""
    if not 1 <= n_terms <= MAX_LACUNARY_TERMS:
        raise ValueError(f"term count must be in [1, {MAX_LACUNARY_TERMS}]")
    n = np.arange(1, n_terms + 1)
    return TrigPolynomial(LACUNARY_BASE**n, 2.0 ** (-n.astype(float)))


def lacunary_tail(n_terms: int, j: int) -> float:
    """sum of 2^{-n} over the terms with 3^n > 2^j, in closed form."""
    cutoff = 2.0**j
    n0 = 1
    while n0 <= n_terms and LACUNARY_BASE**n0 <= cutoff:
        n0 += 1
    if n0 > n_terms:
        return 0.0
    return 2.0 ** (-(n0 - 1)) - 2.0 ** (-n_terms)


@dataclass(frozen=True)
class ConvergenceRow:
    j: int
    sup_error: float
    tail_oracle: float


@dataclass(frozen=True)
class ConvergenceCurve:
    rows: tuple[ConvergenceRow, ...]

    def __post_init__(self):
        errs = [r.sup_error for r in self.rows]
        for a, b in zip(errs, errs[1:]):
            if b > a + 1e-12:
                raise ValueError("sup_error must be nonincreasing in j")
        for r in self.rows:
            if r.sup_error > r.tail_oracle + 1e-12:
                raise ValueError("sup_error exceeds its tail oracle")

    def csv_text(self) -> str:
        lines = ["j,sup_error,tail_oracle"]
        lines += [f"{r.j},{r.sup_error:.17g},{r.tail_oracle:.17g}" for r in self.rows]
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.csv_text())


def converge_experiment(
    n_terms: int = 20,
    j_range: tuple[int, int] = (0, 35),
    grid: tuple[float, float, int] = (0.0, 10.0, 2001),
) -> ConvergenceCurve:
    """Sampled sup of |S_j f - f| for the lacunary series, with tail oracle."""
    f = lacunary_polynomial(n_terms)
    lo, hi, count = grid
    xs = np.linspace(float(lo), float(hi), int(count))
    fx = evaluate(f, xs)
    rows = []
    for j in range(int(j_range[0]), int(j_range[1]) + 1):
        diff = dyadic_partial_sum(f, j) - f
        err = float(np.max(np.abs(evaluate(diff, xs)))) if len(diff) else 0.0
        rows.append(ConvergenceRow(j, err, lacunary_tail(n_terms, j)))
    return ConvergenceCurve(tuple(rows))


# -- amalgam divergence ---------------------------------------------------------

def indicator_transform() -> SampledFunction:
    """Closed form (1/pi) log(|x| / |x-1|), singular at 0 and 1."""

    def fn(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return np.log(np.abs(x) / np.abs(x - 1.0)) / math.pi

    return SampledFunction(fn, singular_points=(0.0, 1.0))


def unit_indicator() -> SampledFunction:
    """The indicator of [0, 1]; its jumps are declared as panel boundaries."""

    def fn(x):
        x = np.asarray(x, dtype=float)
        return ((x >= 0.0) & (x <= 1.0)).astype(float)

    return SampledFunction(fn, singular_points=(0.0, 1.0))


@dataclass(frozen=True)
class AmalgamRow:
    n: int
    partial_sum: float
    log_n: float


@dataclass(frozen=True)
class AmalgamTable:
    rows: tuple[AmalgamRow, ...]
    slope: float

    def csv_text(self) -> str:
        lines = ["N,partial_sum,log_N"]
        lines += [f"{r.n},{r.partial_sum:.17g},{r.log_n:.17g}" for r in self.rows]
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.csv_text())


def amalgam_experiment(n_max: int = 1024, p_conj: float = 2.0, *, abs_tol: float = 1e-10) -> AmalgamTable:
    """Summed-window norms of the transformed indicator over [-N, N].

    N runs through the doubling schedule 16, 32, ..., n_max; the slope of the
    partial sum against log N is fitted over the top half of the schedule.
    """
    if n_max < 16:
        raise ValueError("need n_max >= 16 for a meaningful slope fit")
    schedule = []
    n = 16
    while n <= n_max:
        schedule.append(n)
        n *= 2
    top = schedule[-1]
    g = indicator_transform()
    per_window = amalgam_window_norms(g, p_conj, (-top, top), abs_tol=abs_tol)
    # window [n, n+1] lives at index n + top
    rows = []
    for n in schedule:
        s = float(np.sum(per_window[top - n : top + n + 1]))
        rows.append(AmalgamRow(n, s, math.log(n)))
    half = rows[len(rows) // 2 :]
    slope = float(np.polyfit([r.log_n for r in half], [r.partial_sum for r in half], 1)[0])
    return AmalgamTable(tuple(rows), slope)
