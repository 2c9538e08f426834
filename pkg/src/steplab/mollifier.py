"""Smooth frequency-domain plateau cutoff and its dyadic band companion.

``phi_hat`` equals 1 on [-1/2, 1/2], vanishes outside (-1, 1), and glues the
two plateaus with the standard smooth step built from exp(-1/t).  The band
function is ``psi_hat(xi) = phi_hat(xi/2) - phi_hat(xi)``, supported in
1/2 <= |xi| <= 2 with psi_hat(0) = 0.  Frequency-domain evaluation is exact;
the space-domain kernel is recovered by quadrature of the inverse transform
under the convention

    phi(x) = (1/2pi) int phi_hat(xi) e^{i x xi} d xi.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quadrature import QuadratureBudgetExceeded, _leggauss


def smooth_step(t):
    """h(t) = g(t) / (g(t) + g(1-t)) with g(t) = exp(-1/t) for t > 0, else 0.

    Increases smoothly from 0 at t <= 0 to 1 at t >= 1; h(t) + h(1-t) = 1.
    """
    t = np.asarray(t, dtype=float)
    g = np.zeros(t.shape)
    gm = np.zeros(t.shape)
    pos = t > 0.0
    neg = t < 1.0
    with np.errstate(over="ignore", under="ignore"):
        g[pos] = np.exp(-1.0 / t[pos])
        gm[neg] = np.exp(-1.0 / (1.0 - t[neg]))
    return g / (g + gm)


@dataclass(frozen=True)
class Mollifier:
    """Plateau profile parameters; the default is the canonical (1/2, 1) pair.

    ``plateau_end`` is where the value-1 plateau stops and ``support_end``
    where the support stops, both in |xi|.
    """

    plateau_end: float = 0.5
    support_end: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.plateau_end < self.support_end:
            raise ValueError("need 0 < plateau_end < support_end")

    def phi_hat(self, xi):
        """Even plateau bump; exact piecewise evaluation, values in [0, 1]."""
        x = np.abs(np.asarray(xi, dtype=float))
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.zeros(x.shape)
        out[x <= self.plateau_end] = 1.0
        band = (x > self.plateau_end) & (x < self.support_end)
        if band.any():
            out[band] = smooth_step((self.support_end - x[band]) / (self.support_end - self.plateau_end))
        return float(out[0]) if scalar else out

    def psi_hat(self, xi):
        """phi_hat(xi/2) - phi_hat(xi); one dyadic band, zero at the origin."""
        xi = np.asarray(xi, dtype=float)
        return self.phi_hat(xi / 2.0) - self.phi_hat(xi)

    # -- space domain --------------------------------------------------------

    @property
    def _mass_scale(self) -> float:
        # (1/2pi) * integral of phi_hat: plateau plus half the glued band
        a, b = self.plateau_end, self.support_end
        return (a + 0.5 * (b - a)) / np.pi

    def phi_space(self, x, *, tol: float = 1e-10, max_nodes: int = 1 << 17):
        """Inverse transform of phi_hat at x (scalar or array).

        The plateau integrates in closed form; the transition band is done by
        composite Gauss-Legendre with panel doubling until two consecutive
        refinements agree to ``tol`` relative to the kernel's mass scale.
        Converged panel densities are cached per profile so later calls warm
        start; matrix products are chunked to bound transient memory.
        """
        xs = np.asarray(x, dtype=float)
        scalar = xs.ndim == 0
        pts = np.atleast_1d(xs).ravel()
        a, b = self.plateau_end, self.support_end

        small = np.abs(pts) < 1e-8
        core = np.empty(pts.shape)
        core[~small] = np.sin(a * pts[~small]) / (np.pi * pts[~small])
        core[small] = a / np.pi * (1.0 - (a * pts[small]) ** 2 / 6.0)

        xmax = float(np.max(np.abs(pts))) if pts.size else 1.0
        key = (a, b, tol)
        density = _PANEL_DENSITY_HINT.get(key, 1.0 / 4.0)
        panels = max(4, int(np.ceil(xmax * (b - a) * density)))
        prev = None
        while True:
            nodes, weights = self._band_rule(panels)
            if nodes.size > max_nodes:
                raise QuadratureBudgetExceeded("transition-band rule exceeded the node budget")
            cur = _chunked_cos_product(pts, nodes, weights) / np.pi
            if prev is not None and np.max(np.abs(cur - prev)) <= tol * self._mass_scale:
                break
            prev = cur
            panels *= 2
        _PANEL_DENSITY_HINT[key] = max(density, panels / (2.0 * max(xmax * (b - a), 1e-9)))
        out = core + cur
        return float(out[0]) if scalar else out.reshape(xs.shape)

    def _band_rule(self, panels: int):
        """Composite GL nodes/weights for the transition band, glue included."""
        a, b = self.plateau_end, self.support_end
        xg, wg = _leggauss(16)
        edges = np.linspace(a, b, panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
        weights = (half[:, None] * wg[None, :]).ravel()
        return nodes, weights * smooth_step((b - nodes) / (b - a))

    def psi_space(self, x, *, tol: float = 1e-10):
        """psi(y) = 2 phi(2y) - phi(y), the exact space-domain band kernel."""
        xs = np.asarray(x, dtype=float)
        return 2.0 * self.phi_space(2.0 * xs, tol=tol) - self.phi_space(xs, tol=tol)

    def scaled_kernel(self, which: str, k: int, y, *, tol: float = 1e-10):
        """2^k * phi(2^k y) or 2^k * psi(2^k y)."""
        ys = np.asarray(y, dtype=float)
        s = 2.0**k
        if which == "phi_k":
            return s * self.phi_space(s * ys, tol=tol)
        if which == "psi_k":
            return s * self.psi_space(s * ys, tol=tol)
        raise ValueError("which must be 'phi_k' or 'psi_k'")
