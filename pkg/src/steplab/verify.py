"""Random separated ensembles, explicit constant chains, and the check suite.

``run_suite`` executes every checkable identity and inequality in the
package against deterministic random ensembles, producing a
``VerificationReport``.  Explicit-constant inequalities are asserted against
their constants (with certified norm radii always credited to the favorable
side, so a failure is a genuine counterexample and never quadrature noise);
implicit-constant inequalities are reported as finite ratios with a
cross-seed stability requirement.

The suite also hosts the three seeded corruptions used to demonstrate that
the checks have teeth: flipping the minus-variant sign at zero, shrinking
the mollifier plateau and keeping the self term in the discrete kernel sum.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field, fields
from typing import Callable

import numpy as np

from .core import (
    AveragingWindow,
    TermBlowup,
    TrigPolynomial,
    evaluate,
    fourier_coefficient_estimate,
    fourier_coefficient_exact,
    is_real_valued,
    modulate,
    multiply,
    separation,
)
from .mollifier import Mollifier
from .norms import (
    TERM_CAP,
    abs_power_poly,
    amalgam_l1_norm,
    besicovitch_seminorm,
    exceedance_measure,
    power_sup_norm,
    stepanov_norm,
    window_integral,
    window_profile,
)
from .operators import (
    FrequencyMultiplier,
    apply_multiplier,
    compose,
    direct_convolution_oracle,
    dyadic_cutoff_multiplier,
    dyadic_partial_sum,
    hilbert_identity_check,
    hilbert_pm,
    hilbert_transform,
    lp_band_multiplier,
    lp_piece,
    maximal_partial_sum,
    poly_term_distance,
    sequence_hilbert,
    sgn_pm,
    sj_via_modulation,
    smoothed_cutoff_multiplier,
    smoothed_maximal,
    square_function,
)

SUITE_VERSION = "0.1.0"

MUTATIONS = ("sgn_minus_zero_flip", "phi_plateau_shrunk", "sequence_hilbert_self_term")


class InfeasibleSpec(ValueError):
    """The requested ensemble cannot satisfy its own separation constraint."""


class EmptyEnsemble(ValueError):
    """A suite ensemble was configured with zero members."""


# -- ensembles -----------------------------------------------------------------

@dataclass(frozen=True)
class EnsembleSpec:
    """Deterministic recipe for a family of separated random polynomials.

    Frequency gaps are drawn as ``alpha`` plus exponential noise, so the
    realized minimum gap always meets the request.  Real-valued members get
    symmetric frequency sets with conjugate coefficient pairs (and no zero
    frequency); their term count is twice the drawn pair count.
    """

    seed: int = 0
    count: int = 32
    terms: tuple[int, int] = (2, 12)
    alpha: float = 1.0
    freq_span: tuple[float, float] = (-40.0, 40.0)
    coeff_scale: float = 1.0
    real_valued: bool = False


def _complex_member(rng, spec: EnsembleSpec) -> TrigPolynomial:
    lo, hi = spec.freq_span
    span = hi - lo
    m = int(rng.integers(spec.terms[0], spec.terms[1] + 1))
    coef = spec.coeff_scale * (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / math.sqrt(2.0)
    if m == 1:
        return TrigPolynomial([rng.uniform(lo, hi)], coef)
    noise = rng.exponential(spec.alpha, m - 1)
    slack = span - (m - 1) * spec.alpha
    if noise.sum() > 0.9 * slack:
        noise *= 0.9 * slack / noise.sum()
    gaps = spec.alpha + noise
    start = lo + rng.uniform(0.0, span - gaps.sum())
    freqs = start + np.concatenate([[0.0], np.cumsum(gaps)])
    return TrigPolynomial(freqs, coef)


def _real_member(rng, spec: EnsembleSpec) -> TrigPolynomial:
    half = min(-spec.freq_span[0], spec.freq_span[1])
    pairs_lo = max(1, spec.terms[0] // 2)
    pairs_hi = max(pairs_lo, spec.terms[1] // 2)
    p = int(rng.integers(pairs_lo, pairs_hi + 1))
    noise = rng.exponential(spec.alpha, p)
    slack = half - (0.5 * spec.alpha + (p - 1) * spec.alpha)
    if noise.sum() > 0.9 * slack:
        noise *= 0.9 * slack / noise.sum()
    lam = 0.5 * spec.alpha + noise[0] + np.concatenate([[0.0], np.cumsum(spec.alpha + noise[1:])])
    coef = spec.coeff_scale * (rng.standard_normal(p) + 1j * rng.standard_normal(p)) / math.sqrt(2.0)
    freqs = np.concatenate([-lam[::-1], lam])
    values = np.concatenate([np.conj(coef[::-1]), coef])
    return TrigPolynomial(freqs, values)


def generate_ensemble(spec: EnsembleSpec) -> list[TrigPolynomial]:
    """Deterministic list of separated polynomials; see EnsembleSpec."""
    if spec.alpha <= 0.0:
        raise InfeasibleSpec("separation request must be positive")
    if spec.count < 0:
        raise InfeasibleSpec("member count must be nonnegative")
    if not (spec.terms[0] >= 1 and spec.terms[1] >= spec.terms[0]):
        raise InfeasibleSpec("invalid term count range")
    span = spec.freq_span[1] - spec.freq_span[0]
    if spec.terms[1] * spec.alpha > span:
        raise InfeasibleSpec(
            f"{spec.terms[1]} terms at separation {spec.alpha} exceed the span {span}"
        )
    if spec.real_valued:
        half = min(-spec.freq_span[0], spec.freq_span[1])
        pairs_hi = max(1, spec.terms[1] // 2)
        if 0.5 * spec.alpha + (pairs_hi - 1) * spec.alpha >= half:
            raise InfeasibleSpec("symmetric frequency set does not fit the span")
    rng = np.random.default_rng(spec.seed)
    out = []
    for _ in range(spec.count):
        f = _real_member(rng, spec) if spec.real_valued else _complex_member(rng, spec)
        if separation(f) < spec.alpha * (1.0 - 1e-12):
            raise InfeasibleSpec("generated member violates the separation request")
        out.append(f)
    return out


# -- explicit constants ----------------------------------------------------------

@dataclass(frozen=True)
class TheoreticalConstants:
    """The explicit vector-transform bound chain B_1, B_2, ...

    B_1 = sqrt(2 pi / alpha + 1) and B_{k+1} = B_k + sqrt(B_k^2 + 1); the
    chain is strictly increasing in k and decreasing in alpha.
    """

    alpha: float
    bounds: tuple[float, ...]

    def bound(self, k: int) -> float:
        return self.bounds[k - 1]


def constants(alpha: float, k_max: int) -> TheoreticalConstants:
    if not alpha > 0.0:
        raise ValueError("alpha must be positive")
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    b = [math.sqrt(2.0 * math.pi / alpha + 1.0)]
    for _ in range(k_max - 1):
        b.append(b[-1] + math.sqrt(b[-1] ** 2 + 1.0))
    return TheoreticalConstants(float(alpha), tuple(b))


# -- report plumbing --------------------------------------------------------------

def _json_safe(x):
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    if isinstance(x, (np.floating, np.integer)):
        return _json_safe(float(x))
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    return x


@dataclass
class CheckRecord:
    name: str
    measured: float
    bound: float | None
    passed: bool
    provenance: str
    meta: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        meta = dict(self.meta)
        meta["provenance"] = self.provenance
        return {
            "name": self.name,
            "measured": _json_safe(float(self.measured)),
            "bound": None if self.bound is None else _json_safe(float(self.bound)),
            "pass": bool(self.passed),
            "meta": _json_safe(meta),
        }


@dataclass
class VerificationReport:
    version: str
    seed: int
    checks: list[CheckRecord]
    timings: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "version": self.version,
            "seed": self.seed,
            "checks": [c.to_json_dict() for c in sorted(self.checks, key=lambda c: c.name)],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ": "), indent=1) + "\n"

    def table(self) -> str:
        width = max((len(c.name) for c in self.checks), default=4)
        lines = [f"{'check'.ljust(width)}  {'status':6}  {'measured':>12}  {'bound':>12}  provenance"]
        for c in sorted(self.checks, key=lambda c: c.name):
            bound = "-" if c.bound is None else f"{c.bound:.6g}"
            status = "PASS" if c.passed else "FAIL"
            lines.append(
                f"{c.name.ljust(width)}  {status:6}  {c.measured:12.6g}  {bound:>12}  {c.provenance}"
            )
        lines.append(f"aggregate: {'PASS' if self.passed else 'FAIL'} ({len(self.checks)} checks)")
        return "\n".join(lines)


def _ratio(num: float, den: float) -> float:
    if den <= 0.0:
        return 0.0 if num <= 0.0 else math.inf
    return num / den


# -- per-item checks ----------------------------------------------------------------

def check_parseval_chain(
    f: TrigPolynomial,
    *,
    window: tuple[float, float] = (0.0, 32.0),
    grid_step: float = 0.25,
    window_starts=None,
) -> CheckRecord:
    """Coefficient l2 mass against the windowed quadratic sup, both directions.

    Verifies (sum |c_n|^2)^(1/2) <= S2 upper estimate and, for every sampled
    window, int_x^{x+1} |f|^2 <= (2 pi / alpha + 1) * sum |c_n|^2.
    """
    xs = np.arange(window[0], window[1]) if window_starts is None else np.asarray(window_starts, float)
    b = besicovitch_seminorm(f)
    s2 = stepanov_norm(f, 2, window=window, grid_step=grid_step)
    lower_ok = _ratio(b, s2.upper + 1e-15)
    alpha = separation(f)
    factor = 1.0 if math.isinf(alpha) else 2.0 * math.pi / alpha + 1.0
    if len(f):
        P = abs_power_poly(f, 2)
        w_max = float(np.max(window_profile(P, xs)))
    else:
        w_max = 0.0
    slack = 1e-12 * max(1.0, f.coefficient_abs_sum) ** 2
    upper_ok = _ratio(w_max, factor * b * b + slack)
    measured = max(lower_ok, upper_ok)
    return CheckRecord(
        name="parseval_chain",
        measured=measured,
        bound=1.0,
        passed=measured <= 1.0,
        provenance="bound:window-overlap 2pi/alpha+1",
        meta={
            "besicovitch": b,
            "s2_value": s2.value,
            "s2_radius": s2.error_radius,
            "window_max": w_max,
            "alpha": alpha if math.isfinite(alpha) else "inf",
        },
    )


def _square_sum_poly(fs, op=None) -> TrigPolynomial:
    """sum_j |g_j|^2 as a polynomial, with g_j = op(f_j) (identity when None)."""
    acc = TrigPolynomial()
    for f in fs:
        g = f if op is None else op(f)
        acc = acc + multiply(g, g.conjugate())
    return acc


def check_vector_hilbert(
    fs,
    k: int,
    *,
    variant: str = "plus",
    window: tuple[float, float] = (0.0, 16.0),
    grid_step: float = 0.25,
    term_cap: int = TERM_CAP,
    consts: TheoreticalConstants | None = None,
) -> CheckRecord:
    """Vector-valued transform ratio against the explicit bound chain B_k.

    Both square-sum functions are exact polynomials, so the S^{2^k} norms use
    exact window integrals.  On term blowup the family is reduced one member
    at a time (weaker but still valid coverage).
    """
    fs = list(fs)
    if k < 1:
        raise ValueError("k must be at least 1")
    for f in fs:
        if not is_real_valued(f):
            raise ValueError("vector families must be real-valued")
    reduced = 0
    while True:
        if not fs:
            return CheckRecord(
                name=f"vector_hilbert_k{k}",
                measured=0.0,
                bound=None,
                passed=True,
                provenance="degenerate:empty-family",
                meta={"members": 0, "reduced": reduced, "note": "empty family, 0/0 treated as pass"},
            )
        try:
            q = _square_sum_poly(fs)
            qh = _square_sum_poly(fs, op=lambda f: hilbert_pm(f, variant))
            power = 2 ** (k - 1)
            den = power_sup_norm(q, power, 2.0**k, window, grid_step, term_cap=term_cap)
            num = power_sup_norm(qh, power, 2.0**k, window, grid_step, term_cap=term_cap)
            break
        except TermBlowup:
            fs = fs[:-1]
            reduced += 1
    alpha = min(separation(f) for f in fs)
    if consts is None:
        consts = constants(alpha if math.isfinite(alpha) else 1e300, k)
    bound = consts.bound(k)
    ratio = _ratio(num.value, den.value)
    passed = num.lower <= bound * den.upper + 1e-12
    return CheckRecord(
        name=f"vector_hilbert_k{k}",
        measured=ratio,
        bound=bound,
        passed=passed,
        provenance="bound:recursive-chain sqrt(2pi/alpha+1)",
        meta={
            "members": len(fs),
            "reduced": reduced,
            "alpha": alpha if math.isfinite(alpha) else "inf",
            "variant": variant,
            "num": num.value,
            "den": den.value,
        },
    )


def check_square_function_ratio(
    f: TrigPolynomial,
    p=2,
    m: Mollifier | None = None,
    *,
    window: tuple[float, float] = (0.0, 16.0),
    grid_step: float = 0.25,
    term_cap: int = TERM_CAP,
) -> CheckRecord:
    """Band square-sum to source norm ratio; reported, only finiteness asserted."""
    m = m or Mollifier()
    pval = float(p if not hasattr(p, "p") else p.p)
    if pval != int(pval) or int(pval) % 2:
        raise ValueError("exact windows need an even integer exponent")
    pint = int(pval)
    if len(f) == 0:
        return CheckRecord(
            "square_function_ratio", 0.0, None, True, "report:finite-ratio", {"note": "empty input"}
        )
    top = f.max_abs_frequency
    acc = TrigPolynomial()
    k = 1
    while 2.0 ** (-k) * top > m.plateau_end:
        piece = lp_piece(f, k, m)
        if len(piece):
            acc = acc + multiply(piece, piece.conjugate())
        k += 1
    den = stepanov_norm(f, pint, window=window, grid_step=grid_step, term_cap=term_cap)
    if len(acc) == 0:
        ratio = 0.0
    else:
        num = power_sup_norm(acc, pint // 2, pval, window, grid_step, term_cap=term_cap)
        ratio = _ratio(num.value, den.value)
    return CheckRecord(
        name="square_function_ratio",
        measured=ratio,
        bound=None,
        passed=math.isfinite(ratio),
        provenance="report:finite-ratio",
        meta={"p": pval, "bands": k - 1, "den": den.value},
    )


def check_maximal_ratio(
    f: TrigPolynomial,
    k: int = 1,
    m: Mollifier | None = None,
    *,
    window: tuple[float, float] = (0.0, 16.0),
    sample_step: float = 1.0 / 256,
    term_cap: int = TERM_CAP,
) -> CheckRecord:
    """Maximal truncation operator ratio plus the pointwise split margin.

    The numerator is sampled (the maximal function is not a polynomial); the
    denominator uses exact windows.  Also verifies, at every sample, that the
    maximal function is below the square function plus the smoothed maximal.
    """
    m = m or Mollifier()
    if len(f) == 0:
        return CheckRecord("maximal_ratio", 0.0, None, True, "report:finite-ratio", {"note": "empty"})
    top = f.max_abs_frequency
    # covers both requirements: 2^j_max >= bandwidth and the square-function
    # vanishing level 2^(j_max - 1) >= bandwidth
    j_max = 0 if top <= 0.5 else int(math.ceil(math.log2(top))) + 1
    lo, hi = window
    n = int(round((hi + 1.0 - lo) / sample_step))
    s = lo + sample_step * (np.arange(n) + 0.5)
    star = maximal_partial_sum(f, j_max, s)
    p = 2.0**k
    block = int(round(1.0 / sample_step))
    csum = np.concatenate([[0.0], np.cumsum(star**p) * sample_step])
    w = csum[block:] - csum[:-block]
    num = float(np.max(w)) ** (1.0 / p)
    den = stepanov_norm(f, int(p), window=window, grid_step=0.25, term_cap=term_cap)
    ratio = _ratio(num, den.value)
    sq = square_function(f, j_max, s, m)
    sm = smoothed_maximal(f, j_max, s, m)
    margin = float(np.max(star - sq - sm))
    scale = max(1.0, f.coefficient_abs_sum)
    split_ok = margin <= 1e-9 * scale
    return CheckRecord(
        name="maximal_ratio",
        measured=ratio,
        bound=None,
        passed=math.isfinite(ratio) and split_ok,
        provenance="report:finite-ratio",
        meta={"k": k, "j_max": j_max, "split_margin": margin, "den": den.value},
    )


# -- suite configuration --------------------------------------------------------------

@dataclass(frozen=True)
class SuiteConfig:
    """Knobs for run_suite; defaults match the acceptance-scale ensembles."""

    seed: int = 1

    identity_members: int = 500
    identity_max_terms: int = 20
    sequence_cases: int = 1000
    sequence_max_len: int = 200
    consistency_members: int = 500
    oracle_cases: int = 50
    oracle_k_max: int = 5
    parseval_members: int = 500
    parseval_windows: int = 64
    family_count: int = 100
    family_max_members: int = 8
    family_max_terms: int = 12
    family_alpha: float = 1.0
    ratio_members: int = 48
    ratio_seeds: int = 5
    k_levels: tuple[int, ...] = (1, 2)

    norm_window: tuple[float, float] = (0.0, 32.0)
    norm_grid_step: float = 0.25
    family_window: tuple[float, float] = (0.0, 16.0)
    family_grid_step: float = 0.25
    sample_step: float = 1.0 / 256

    convergence_terms: int = 20
    convergence_j_max: int = 35
    amalgam_n_max: int = 1024

    tolerance_scale: float = 1.0
    mutation: str | None = None
    checks: tuple[str, ...] | None = None


def suite_config_from_dict(data: dict) -> SuiteConfig:
    """Build a SuiteConfig from JSON-style keys, rejecting unknown names."""
    known = {f.name for f in fields(SuiteConfig)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    coerced = dict(data)
    for key in ("k_levels", "checks"):
        if key in coerced and coerced[key] is not None:
            coerced[key] = tuple(coerced[key])
    for key in ("norm_window", "family_window"):
        if key in coerced and coerced[key] is not None:
            coerced[key] = (float(coerced[key][0]), float(coerced[key][1]))
    return SuiteConfig(**coerced)


@dataclass(frozen=True)
class _SuiteContext:
    mol: Mollifier
    sgn_minus_zero: float
    include_self_term: bool
    tol: float


def _child_seed(ss: np.random.SeedSequence, index: int) -> int:
    return int(np.random.SeedSequence(entropy=ss.entropy, spawn_key=ss.spawn_key + (index,)).generate_state(1)[0])


def _rec(name, measured, bound, passed, provenance, **meta) -> CheckRecord:
    return CheckRecord(name, float(measured), bound, bool(passed), provenance, meta)


# -- suite builders ---------------------------------------------------------------------

def _build_core_properties(config: SuiteConfig, ss, ctx: _SuiteContext):
    rng = np.random.default_rng(ss)
    spec = EnsembleSpec(seed=_child_seed(ss, 0), count=120, terms=(1, 10), alpha=0.5)
    members = generate_ensemble(spec)
    lin = mod = prod = est = sep = 0.0
    xs = rng.uniform(-20.0, 20.0, size=8)
    for i, f in enumerate(members):
        g = members[(i + 1) % len(members)]
        scale_f, scale_g = f.coefficient_abs_sum, g.coefficient_abs_sum
        lin = max(
            lin,
            float(np.max(np.abs(evaluate(f + g, xs) - evaluate(f, xs) - evaluate(g, xs))))
            / max(scale_f + scale_g, 1e-300),
        )
        mu = float(rng.uniform(-10.0, 10.0))
        mod = max(
            mod,
            float(np.max(np.abs(evaluate(modulate(f, mu), xs) - np.exp(1j * mu * xs) * evaluate(f, xs))))
            / max(scale_f, 1e-300),
        )
        prod = max(
            prod,
            float(np.max(np.abs(evaluate(multiply(f, g), xs) - evaluate(f, xs) * evaluate(g, xs))))
            / max(scale_f * scale_g, 1e-300),
        )
        lam = float(f.frequencies[0]) if i % 2 == 0 else float(rng.uniform(-40.0, 40.0))
        T = AveragingWindow(float(rng.uniform(1.0, 100.0)))
        value, bnd = fourier_coefficient_estimate(f, lam, T)
        err = abs(value - fourier_coefficient_exact(f, lam))
        est = max(est, 0.0 if err == 0.0 else _ratio(err, bnd + 1e-15 * scale_f))
        s0, s1 = separation(f), separation(modulate(f, mu))
        if math.isfinite(s0) or math.isfinite(s1):
            sep = max(sep, abs(s0 - s1) / spec.alpha)
    tol = ctx.tol
    return [
        _rec("core.properties.linearity", lin, 1e-12 * tol, lin <= 1e-12 * tol, "tolerance:float-roundoff"),
        _rec("core.properties.modulation_law", mod, 1e-12 * tol, mod <= 1e-12 * tol, "tolerance:float-roundoff"),
        _rec("core.properties.product_law", prod, 1e-10 * tol, prod <= 1e-10 * tol, "tolerance:float-roundoff"),
        _rec("core.properties.estimator_certificate", est, 1.0, est <= 1.0, "bound:certified-sinc-tail"),
        _rec("core.properties.separation_shift_invariance", sep, 1e-12 * tol, sep <= 1e-12 * tol, "tolerance:float-roundoff"),
    ]


def _build_norm_properties(config: SuiteConfig, ss, ctx: _SuiteContext):
    rng = np.random.default_rng(ss)
    members = generate_ensemble(EnsembleSpec(seed=_child_seed(ss, 0), count=16, terms=(1, 8), alpha=0.5, freq_span=(-20.0, 20.0)))
    agree = 0.0
    for f in members[:10]:
        for p in (2, 4):
            exact = window_integral(f, p, 0.0, method="exact")
            quad = window_integral(f, p, 0.0, method="quadrature")
            agree = max(agree, abs(exact - quad) / max(exact, 1e-3 * f.coefficient_abs_sum**p))
    nest = 0.0
    for f in members:
        est = {p: stepanov_norm(f, p, window=(0.0, 8.0), grid_step=0.5) for p in (1, 2, 4)}
        for p1, p2 in ((1, 2), (2, 4)):
            nest = max(nest, _ratio(est[p1].lower, est[p2].upper + 1e-15))
    cheb = 0.0
    for f in members:
        w2 = window_integral(f, 2, 0.0)
        if w2 <= 0.0:
            continue
        lam = 0.6 * math.sqrt(w2) + 0.1
        measure, res = exceedance_measure(f, lam, 0.0, grid_step=1e-3)
        cheb = max(cheb, _ratio(measure, w2 / lam**2 + res + 1e-12))
    tol = ctx.tol
    return [
        _rec("norms.properties.even_exponent_agreement", agree, 1e-9 * tol, agree <= 1e-9 * tol, "agreement:dual-route"),
        _rec("norms.properties.nesting", nest, 1.0, nest <= 1.0, "bound:window-holder-monotonicity"),
        _rec("norms.properties.chebyshev_exceedance", cheb, 1.0, cheb <= 1.0, "bound:chebyshev"),
    ]


def _build_mollifier_checks(config: SuiteConfig, ss, ctx: _SuiteContext):
    rng = np.random.default_rng(ss)
    m = ctx.mol
    xi = np.linspace(-3.0, 3.0, 10_001)
    ph = m.phi_hat(xi)
    ps = m.psi_hat(xi)
    range_viol = max(
        float(np.max(np.maximum(ph - 1.0, -ph))),
        float(np.max(np.maximum(ps - 1.0, -ps))),
        float(np.max(np.abs(ph - m.phi_hat(-xi)))),
    )
    band = np.linspace(-1.0, 1.0, 10_001)
    cutoff = float(np.max(np.abs(1.0 - m.phi_hat(band) - m.psi_hat(band))))
    tele = 0.0
    for lam in rng.uniform(-50.0, 50.0, size=200):
        k = int(rng.integers(1, 21))
        total = sum(m.psi_hat(lam / 2.0**j) for j in range(k))
        tele = max(tele, abs(total - (m.phi_hat(lam / 2.0**k) - m.phi_hat(lam))))
    from .quadrature import integrate_adaptive

    mass, _ = integrate_adaptive(
        lambda x: m.phi_space(x, tol=1e-9), -200.0, 200.0, abs_tol=2e-7, min_panels=256
    )
    norm_err = abs(float(mass) - 1.0)
    return [
        _rec("mollifier.profile.range_and_evenness", range_viol, 1e-15, range_viol <= 1e-15, "identity:piecewise-profile"),
        _rec("mollifier.profile.cutoff_identity", cutoff, 1e-14, cutoff <= 1e-14, "identity:plateau-complement"),
        _rec("mollifier.profile.telescoping", tele, 1e-14, tele <= 1e-14, "identity:telescoping"),
        _rec("mollifier.profile.space_normalization", norm_err, 1e-6, norm_err <= 1e-6, "identity:transform-at-zero"),
    ]


def _build_multiplier_algebra(config: SuiteConfig, ss, ctx: _SuiteContext):
    rng = np.random.default_rng(ss)
    members = generate_ensemble(EnsembleSpec(seed=_child_seed(ss, 0), count=40, terms=(1, 10), alpha=0.5))
    m_list = [
        dyadic_cutoff_multiplier(2),
        smoothed_cutoff_multiplier(1, ctx.mol),
        FrequencyMultiplier(lambda lam: -1j * np.sign(lam), "H"),
        lp_band_multiplier(2, ctx.mol),
    ]
    comp = 0.0
    for i, f in enumerate(members):
        m1 = m_list[i % len(m_list)]
        m2 = m_list[(i + 1) % len(m_list)]
        two_step = apply_multiplier(m2, apply_multiplier(m1, f))
        one_step = apply_multiplier(compose(m1, m2), f)
        comp = max(comp, poly_term_distance(two_step, one_step) / max(f.coefficient_abs_sum, 1e-300))
    avg = 0.0
    for f in members:
        mean = 0.5 * (hilbert_pm(f, "plus") + hilbert_pm(f, "minus"))
        avg = max(avg, poly_term_distance(mean, hilbert_transform(f)))
    signs = 0.0
    vals = list(rng.uniform(0.5, 9.5, size=24)) + [1.0, 2.0]
    for variant in ("plus", "minus"):
        pairs = [(a, b) for a in (+1, -1) for b in (+1, -1)]
        for sa, sb in pairs:
            for va in vals[:8]:
                for vb in vals[8:16]:
                    a, b = sa * va, sb * vb
                    lhs = 1.0 - (sgn_pm(a, variant) + sgn_pm(b, variant)) * sgn_pm(a + b, variant)
                    signs = max(signs, abs(lhs + sgn_pm(a, variant) * sgn_pm(b, variant)))
        for a in (0.0, 1.5, -1.5):  # zero arguments and zero sums under the +- conventions
            for b in (0.0, -a):
                lhs = 1.0 - (sgn_pm(a, variant) + sgn_pm(b, variant)) * sgn_pm(a + b, variant)
                signs = max(signs, abs(lhs + sgn_pm(a, variant) * sgn_pm(b, variant)))
    return [
        _rec("operators.multiplier_algebra.composition", comp, 1e-13, comp <= 1e-13, "identity:symbol-product"),
        _rec("operators.multiplier_algebra.plusminus_average", avg, 1e-15, avg <= 1e-15, "identity:sign-average"),
        _rec("operators.multiplier_algebra.sign_identity", signs, 0.0, signs <= 0.0, "identity:sign-cases"),
    ]


def _build_identity(config: SuiteConfig, ss, ctx: _SuiteContext):
    members = generate_ensemble(
        EnsembleSpec(
            seed=_child_seed(ss, 0),
            count=config.identity_members,
            terms=(2, config.identity_max_terms),
            alpha=1.0,
            freq_span=(-45.0, 45.0),
            real_valued=True,
        )
    )
    worst = 0.0
    for i, f in enumerate(members):
        variant = "plus" if i % 2 == 0 else "minus"
        resid = hilbert_identity_check(f, variant)
        worst = max(worst, resid / max(f.coefficient_abs_sum**2, 1e-300))
    bound = 1e-10 * ctx.tol
    return [
        _rec(
            "operators.hilbert_squared_identity.residual",
            worst,
            bound,
            worst <= bound,
            "identity:algebraic",
            members=len(members),
        )
    ]


def _build_sequence(config: SuiteConfig, ss, ctx: _SuiteContext):
    rng = np.random.default_rng(ss)
    worst = 0.0
    for _ in range(config.sequence_cases):
        n = int(rng.integers(2, config.sequence_max_len + 1))
        alpha = float(np.exp(rng.uniform(math.log(0.1), math.log(10.0))))
        gaps = alpha + rng.exponential(alpha, n - 1)
        start = float(rng.uniform(-100.0, 100.0))
        lam = start + np.concatenate([[0.0], np.cumsum(gaps)])
        a = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2.0)
        ta = sequence_hilbert(lam, a, include_self_term=ctx.include_self_term)
        realized = float(np.min(np.diff(lam)))
        ratio = float(np.linalg.norm(ta) / np.linalg.norm(a)) * realized / math.pi
        if not math.isfinite(ratio):
            worst = math.inf
            break
        worst = max(worst, ratio)
    n_big = 10_000
    lam = np.arange(-n_big, n_big + 1, dtype=float)
    delta = np.zeros(lam.size, dtype=complex)
    delta[n_big] = 1.0
    ta = sequence_hilbert(lam, delta, include_self_term=ctx.include_self_term)
    row_norm = float(np.linalg.norm(ta))
    target = math.pi / math.sqrt(3.0)
    delta_err = abs(row_norm - target) if math.isfinite(row_norm) else math.inf
    return [
        _rec(
            "operators.sequence_hilbert.kernel_bound",
            worst,
            1.0,
            worst <= 1.0,
            "bound:discrete-kernel pi/alpha",
            cases=config.sequence_cases,
        ),
        _rec(
            "operators.sequence_hilbert.delta_row_norm",
            delta_err,
            1e-3,
            delta_err <= 1e-3,
            "value:computed-row-norm",
            target=target,
        ),
    ]


def _build_consistency(config: SuiteConfig, ss, ctx: _SuiteContext):
    members = generate_ensemble(
        EnsembleSpec(
            seed=_child_seed(ss, 0),
            count=config.consistency_members,
            terms=(1, 12),
            alpha=0.5,
            freq_span=(-40.0, 40.0),
        )
    )
    worst = 0.0
    for i, f in enumerate(members):
        j = i % 6
        if i % 5 == 0 and len(f):
            # plant an exact boundary frequency at +-2^j
            freqs = f.frequencies.copy()
            freqs[i % len(f)] = (2.0**j) * (1.0 if (i // 5) % 2 == 0 else -1.0)
            f = TrigPolynomial(freqs, f.coefficients)
        direct = dyadic_partial_sum(f, j)
        assembled = sj_via_modulation(f, j, sgn_minus_zero=ctx.sgn_minus_zero)
        worst = max(worst, poly_term_distance(direct, assembled))
    bound = 1e-12 * ctx.tol
    return [
        _rec(
            "operators.dyadic_vs_modulation.term_agreement",
            worst,
            bound,
            worst <= bound,
            "identity:modulation-assembly",
            members=len(members),
        )
    ]


def _build_oracle(config: SuiteConfig, ss, ctx: _SuiteContext):
    rng = np.random.default_rng(ss)
    members = generate_ensemble(
        EnsembleSpec(seed=_child_seed(ss, 0), count=config.oracle_cases, terms=(1, 6), alpha=0.5, freq_span=(-16.0, 16.0))
    )
    worst = 0.0
    for i, f in enumerate(members):
        k = i % (config.oracle_k_max + 1)
        which = "phi_k" if i % 2 == 0 else "psi_k"
        x = float(rng.uniform(-2.0, 2.0))
        radius = 200.0 * 2.0 ** (-k)
        via_oracle = direct_convolution_oracle(f, ctx.mol, which, k, x, radius)
        mult = (
            smoothed_cutoff_multiplier(k, ctx.mol)
            if which == "phi_k"
            else FrequencyMultiplier(lambda lam, s=2.0**k: np.asarray(ctx.mol.psi_hat(lam / s), dtype=complex), "psi")
        )
        via_multiplier = evaluate(apply_multiplier(mult, f), x)
        err = abs(via_oracle - via_multiplier) / max(f.coefficient_abs_sum, 1e-300)
        worst = max(worst, err)
    bound = 1e-6 * ctx.tol
    return [
        _rec(
            "operators.convolution_oracle.multiplier_agreement",
            worst,
            bound,
            worst <= bound,
            "agreement:independent-oracle",
            cases=len(members),
        )
    ]


def _build_sf_tail(config: SuiteConfig, ss, ctx: _SuiteContext):
    rng = np.random.default_rng(ss)
    members = generate_ensemble(EnsembleSpec(seed=_child_seed(ss, 0), count=20, terms=(1, 8), alpha=0.5, freq_span=(-30.0, 30.0)))
    xs = rng.uniform(0.0, 16.0, size=32)
    worst = 0.0
    for f in members:
        top = f.max_abs_frequency
        j0 = 0 if top <= 0.5 else int(math.ceil(math.log2(top))) + 1
        a = square_function(f, j0, xs, ctx.mol)
        b = square_function(f, j0 + 3, xs, ctx.mol)
        worst = max(worst, float(np.max(np.abs(a - b))))
    return [
        _rec(
            "operators.square_function_tail.stability",
            worst,
            0.0,
            worst <= 0.0,
            "identity:vanishing-tail",
        )
    ]


def _build_parseval(config: SuiteConfig, ss, ctx: _SuiteContext):
    members = generate_ensemble(
        EnsembleSpec(seed=_child_seed(ss, 0), count=config.parseval_members, terms=(1, 12), alpha=1.0, freq_span=(-40.0, 40.0))
    )
    xs = np.arange(0.0, float(config.parseval_windows))
    worst_lower = worst_window = 0.0
    for f in members:
        rec = check_parseval_chain(f, window=config.norm_window, grid_step=config.norm_grid_step, window_starts=xs)
        b = rec.meta["besicovitch"]
        s2u = rec.meta["s2_value"] + rec.meta["s2_radius"]
        worst_lower = max(worst_lower, _ratio(b, s2u + 1e-15))
        alpha = separation(f)
        factor = 1.0 if math.isinf(alpha) else 2.0 * math.pi / alpha + 1.0
        slack = 1e-12 * max(1.0, f.coefficient_abs_sum) ** 2
        worst_window = max(worst_window, _ratio(rec.meta["window_max"], factor * b * b + slack))
    rng = np.random.default_rng(_child_seed(ss, 1))
    eq = 0.0
    for _ in range(25):
        c = complex(rng.standard_normal(), rng.standard_normal()) / math.sqrt(2.0)
        f1 = TrigPolynomial([rng.uniform(-40.0, 40.0)], [c])
        s2 = stepanov_norm(f1, 2, window=config.norm_window, grid_step=config.norm_grid_step)
        eq = max(eq, abs(s2.value - besicovitch_seminorm(f1)))
    return [
        _rec(
            "norms.parseval_chain.inequality",
            worst_lower,
            1.0,
            worst_lower <= 1.0,
            "bound:coefficient-mass",
            members=len(members),
        ),
        _rec(
            "norms.parseval_chain.single_term_equality",
            eq,
            1e-9,
            eq <= 1e-9,
            "identity:single-term",
        ),
        _rec(
            "norms.parseval_chain.window_coefficient_bound",
            worst_window,
            1.0,
            worst_window <= 1.0,
            "bound:window-overlap 2pi/alpha+1",
            members=len(members),
            windows=int(xs.size),
        ),
    ]


def _build_vector(config: SuiteConfig, ss, ctx: _SuiteContext):
    rng = np.random.default_rng(ss)
    records = {k: [] for k in config.k_levels}
    for fam in range(config.family_count):
        n_members = int(rng.integers(1, config.family_max_members + 1))
        spec = EnsembleSpec(
            seed=_child_seed(ss, fam + 10),
            count=n_members,
            terms=(2, config.family_max_terms),
            alpha=config.family_alpha,
            freq_span=(-45.0, 45.0),
            real_valued=True,
        )
        fs = generate_ensemble(spec)
        variant = "plus" if fam % 2 == 0 else "minus"
        for k in config.k_levels:
            rec = check_vector_hilbert(
                fs,
                k,
                variant=variant,
                window=config.family_window,
                grid_step=config.family_grid_step,
            )
            records[k].append(rec)
    out = []
    for k in config.k_levels:
        recs = records[k]
        rel = [r.measured / r.bound for r in recs if r.bound]
        worst = max(rel) if rel else 0.0
        passed = all(r.passed for r in recs)
        reduced = sum(r.meta.get("reduced", 0) for r in recs)
        out.append(
            _rec(
                f"verify.vector_hilbert.k{k}",
                worst,
                1.0,
                passed,
                "bound:recursive-chain sqrt(2pi/alpha+1)",
                families=len(recs),
                reduced_members=reduced,
                max_ratio=max((r.measured for r in recs), default=0.0),
            )
        )
    return out


def _build_ratios(config: SuiteConfig, ss, ctx: _SuiteContext):
    sf_maxima, mx_maxima = [], []
    split_worst = -math.inf
    all_finite = True
    for s in range(config.ratio_seeds):
        members = generate_ensemble(
            EnsembleSpec(
                seed=_child_seed(ss, 100 + s),
                count=config.ratio_members,
                terms=(1, 10),
                alpha=1.0,
                freq_span=(-40.0, 40.0),
            )
        )
        sf_best = mx_best = 0.0
        for f in members:
            rec_sf = check_square_function_ratio(
                f, 2, ctx.mol, window=config.family_window, grid_step=config.family_grid_step
            )
            rec_mx = check_maximal_ratio(
                f, 1, ctx.mol, window=config.family_window, sample_step=config.sample_step
            )
            all_finite &= math.isfinite(rec_sf.measured) and math.isfinite(rec_mx.measured)
            sf_best = max(sf_best, rec_sf.measured)
            mx_best = max(mx_best, rec_mx.measured)
            split_worst = max(
                split_worst, rec_mx.meta["split_margin"] / max(1.0, f.coefficient_abs_sum)
            )
        sf_maxima.append(sf_best)
        mx_maxima.append(mx_best)

    def spread(vals):
        m = float(np.mean(vals))
        return 0.0 if m == 0.0 else (max(vals) - min(vals)) / m

    sf_spread, mx_spread = spread(sf_maxima), spread(mx_maxima)
    return [
        _rec(
            "verify.ratio_reports.square_function",
            sf_spread,
            0.10,
            all_finite and sf_spread <= 0.10,
            "report:cross-seed-stability",
            per_seed_max=[round(v, 12) for v in sf_maxima],
        ),
        _rec(
            "verify.ratio_reports.maximal",
            mx_spread,
            0.10,
            all_finite and mx_spread <= 0.10,
            "report:cross-seed-stability",
            per_seed_max=[round(v, 12) for v in mx_maxima],
        ),
        _rec(
            "verify.ratio_reports.pointwise_split",
            split_worst,
            1e-9,
            split_worst <= 1e-9,
            "bound:triangle-split",
        ),
    ]


def _build_experiments(config: SuiteConfig, ss, ctx: _SuiteContext):
    from .experiments import amalgam_experiment, converge_experiment, unit_indicator

    curve = converge_experiment(config.convergence_terms, (0, config.convergence_j_max))
    conv_err = max(abs(r.sup_error - r.tail_oracle) for r in curve.rows)
    full = [r.sup_error for r in curve.rows if 2.0**r.j >= 3.0**config.convergence_terms]
    conv_ok = conv_err <= 1e-8 and all(e <= 1e-12 for e in full)

    from .operators import pv_hilbert_indicator

    pts = [-7.3, -3.0, -1.0, -0.4, -0.05, 0.03, 0.2, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 0.97, 1.04, 1.5, 2.0, 3.7, 8.0, 25.0]
    pv_err = max(
        abs(pv_hilbert_indicator(x) - pv_hilbert_indicator(x, method="quadrature")) for x in pts
    )

    table = amalgam_experiment(config.amalgam_n_max, 2.0)
    target = 2.0 / math.pi
    slope_err = abs(table.slope - target) / target
    sums = [r.partial_sum for r in table.rows]
    monotone = all(b > a for a, b in zip(sums, sums[1:]))

    control = amalgam_l1_norm(unit_indicator(), 2.0, (-5, 5))
    control_err = abs(control - 1.0)
    return [
        _rec(
            "harness.experiments.lacunary_convergence",
            conv_err,
            1e-8,
            conv_ok,
            "oracle:geometric-tail",
            rows=len(curve.rows),
        ),
        _rec(
            "harness.experiments.pv_agreement",
            pv_err,
            1e-8,
            pv_err <= 1e-8,
            "agreement:dual-route",
            points=len(pts),
        ),
        _rec(
            "harness.experiments.amalgam_divergence",
            slope_err,
            0.15,
            slope_err <= 0.15 and monotone,
            "asymptotic:log-slope 2/pi",
            slope=table.slope,
        ),
        _rec(
            "harness.experiments.amalgam_indicator_control",
            control_err,
            1e-9,
            control_err <= 1e-9,
            "identity:unit-mass",
        ),
    ]


_REGISTRY: list[tuple[str, Callable]] = [
    ("core.properties", _build_core_properties),
    ("norms.properties", _build_norm_properties),
    ("mollifier.profile", _build_mollifier_checks),
    ("operators.multiplier_algebra", _build_multiplier_algebra),
    ("operators.hilbert_squared_identity", _build_identity),
    ("operators.sequence_hilbert", _build_sequence),
    ("operators.dyadic_vs_modulation", _build_consistency),
    ("operators.convolution_oracle", _build_oracle),
    ("operators.square_function_tail", _build_sf_tail),
    ("norms.parseval_chain", _build_parseval),
    ("verify.vector_hilbert", _build_vector),
    ("verify.ratio_reports", _build_ratios),
    ("harness.experiments", _build_experiments),
]


def _selected(prefix: str, filters) -> bool:
    if not filters:
        return True
    return any(prefix.startswith(f) or f.startswith(prefix) for f in filters)


def run_suite(config: SuiteConfig | None = None) -> VerificationReport:
    """Run every (selected) check; deterministic for a fixed config.

    Raises EmptyEnsemble when a primary ensemble count is zero and
    ValueError for an unknown mutation name.  Individual check errors mark
    the corresponding record failed instead of aborting the run.
    """
    config = config or SuiteConfig()
    if config.mutation is not None and config.mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {config.mutation!r}; pick from {MUTATIONS}")
    for name in (
        "identity_members",
        "sequence_cases",
        "consistency_members",
        "oracle_cases",
        "parseval_members",
        "family_count",
        "ratio_members",
    ):
        if getattr(config, name) <= 0:
            raise EmptyEnsemble(f"{name} must be positive")
    ctx = _SuiteContext(
        mol=Mollifier(plateau_end=0.4) if config.mutation == "phi_plateau_shrunk" else Mollifier(),
        sgn_minus_zero=+1.0 if config.mutation == "sgn_minus_zero_flip" else -1.0,
        include_self_term=config.mutation == "sequence_hilbert_self_term",
        tol=config.tolerance_scale,
    )
    records: list[CheckRecord] = []
    timings: dict[str, float] = {}
    for idx, (prefix, builder) in enumerate(_REGISTRY):
        if not _selected(prefix, config.checks):
            continue
        ss = np.random.SeedSequence(entropy=config.seed, spawn_key=(idx,))
        t0 = time.perf_counter()
        try:
            records.extend(builder(config, ss, ctx))
        except Exception as exc:  # noqa: BLE001  - a failed check must not abort the run
            records.append(
                _rec(prefix + ".error", math.inf, None, False, "error:" + type(exc).__name__, detail=str(exc))
            )
        timings[prefix] = time.perf_counter() - t0
    return VerificationReport(SUITE_VERSION, config.seed, records, timings)
