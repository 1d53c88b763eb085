"""Quadrature against dμ_k = w_k dx, weighted L^p norms, Macdonald-Mehta.

Three quadrature kinds:

* "rank1"  — signed nodes on [-R, R] for N=1 with the |√2 x|^{2k} weight
  folded in.  A Gauss-Jacobi panel at the origin integrates the |x|^{2k}
  factor exactly; geometric Gauss-Legendre panels cover the rest.
* "radial" — radii on (0, R] carrying d · r^{Λ-1} with Λ = N + 2γ and d the
  μ_k surface constant; the rule for radial integrands in any dimension.
* "tensor2" — tensor product of two plain panel rules in the plane with
  w_k(x) applied pointwise (used for N=2 sanity checks only).

`with_power(extra)` rebuilds a rule whose weights absorb an additional
|x|^extra exactly (the origin panel's Jacobi exponent shifts), which is how
weighted norms ‖|x|^a f‖_p stay accurate down to the integrability edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy import special as sps

from .rootsys import RootSystem, weight as rs_weight

__all__ = [
    "WeightedQuadrature",
    "QuadratureError",
    "NonIntegrableWeightError",
    "build_quadrature",
    "radial_quadrature",
    "rank1_quadrature",
    "weighted_lp_norm",
    "macdonald_mehta",
    "exact_macdonald_mehta",
    "surface_constant",
]


class QuadratureError(ValueError):
    pass


class NonIntegrableWeightError(QuadratureError):
    """The requested power weight is not integrable at the origin for this f."""


def _half_axis_rule(sigma: float, rmax: float, resolution: int,
                    r0: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on (0, rmax] for integrals ∫ g(r) r^sigma dr.

    Layout: a Gauss-Jacobi core on (0, r0] (exact in the r^sigma factor),
    geometric Gauss-Legendre panels up to r_mid (so that |f|^p kinks of
    origin-concentrated integrands land in panels narrow at their own
    scale), then uniform width-capped panels to rmax (bounding the phase
    per panel for oscillatory transform kernels).  For rmax > 100 the rule
    is purely geometric: that regime serves slow power tails, never
    oscillatory kernels.
    """
    if resolution < 16:
        raise QuadratureError("resolution must be ≥ 16")
    if rmax <= 0:
        raise QuadratureError("rmax must be positive")
    if sigma <= -1.0:
        raise NonIntegrableWeightError(f"r^{sigma:g} is not integrable at 0")
    if r0 is None:
        r0 = min(0.02, rmax / 64.0)
    n_jac = max(12, min(28, resolution // 8))
    n_per = 16
    n_panels = max(4, (resolution - n_jac) // n_per)

    tj, wj = sps.roots_jacobi(n_jac, 0.0, sigma)
    nodes = [r0 * (1.0 + tj) / 2.0]
    weights = [wj * (r0 / 2.0) ** (sigma + 1.0)]
    tl, wl = sps.roots_legendre(n_per)

    def add_panel(a, b):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        x = mid + half * tl
        nodes.append(x)
        weights.append(wl * half * x ** sigma)

    if rmax > 100.0:
        q = (rmax / r0) ** (1.0 / n_panels)
        a = r0
        for _ in range(n_panels):
            add_panel(a, a * q)
            a *= q
    else:
        r_mid = min(1.0, rmax / 8.0)
        n_geom = max(4, n_panels // 3) if r_mid > r0 else 0
        n_uni = max(4, n_panels - n_geom)
        if n_geom:
            q = (r_mid / r0) ** (1.0 / n_geom)
            a = r0
            for _ in range(n_geom):
                add_panel(a, a * q)
                a *= q
        else:
            r_mid = r0
        edges = np.linspace(r_mid, rmax, n_uni + 1)
        for a, b in zip(edges[:-1], edges[1:]):
            add_panel(a, b)
    return np.concatenate(nodes), np.concatenate(weights)


@dataclass(frozen=True)
class WeightedQuadrature:
    """Nodes and weights approximating ∫ · dμ_k (weights include w_k)."""

    kind: str                 # "rank1" | "radial" | "tensor2"
    nodes: np.ndarray
    weights: np.ndarray
    rmax: float
    recipe: dict = field(default_factory=dict, repr=False)

    @property
    def npoints(self) -> int:
        return self.nodes.shape[0]

    def integrate(self, f) -> float | complex:
        vals = f(self.nodes) if callable(f) else np.asarray(f)
        return np.sum(self.weights * vals)

    def with_power(self, extra: float) -> "WeightedQuadrature":
        """Rule whose weights carry an additional |x|^extra factor, exactly."""
        if extra == 0.0:
            return self
        r = self.recipe
        if self.kind in ("rank1", "radial"):
            sigma = r["sigma"] + extra
            if sigma <= -1.0:
                raise NonIntegrableWeightError(
                    f"power weight |x|^{extra:g} makes the origin exponent {sigma:g} ≤ -1")
            n, w = _half_axis_rule(sigma, self.rmax, r["resolution"], r.get("r0"))
            w = w * r["const"]
            if self.kind == "rank1":
                nodes = np.concatenate([-n[::-1], n])
                weights = np.concatenate([w[::-1], w])
            else:
                nodes, weights = n, w
            return WeightedQuadrature(self.kind, nodes, weights, self.rmax,
                                      {**r, "sigma": sigma - 0.0, "extra": r.get("extra", 0.0) + extra})
        # tensor2: pointwise (no origin singularity support)
        if extra < 0:
            raise NonIntegrableWeightError("tensor2 rules do not support negative power weights")
        rad = np.linalg.norm(self.nodes, axis=1)
        return replace(self, weights=self.weights * rad ** extra)

    def refined(self, factor: int = 2) -> "WeightedQuadrature":
        """Same rule at `factor`× the resolution (convergence studies)."""
        r = dict(self.recipe)
        res = int(r["resolution"] * factor)
        if self.kind == "rank1":
            return rank1_quadrature(r["k"], self.rmax, res, r0=r.get("r0"))
        if self.kind == "radial":
            return radial_quadrature(r["N"], r["gamma"], self.rmax, res,
                                     surface_const=r["const"], r0=r.get("r0"))
        raise QuadratureError("refined() supports rank1/radial rules")


def rank1_quadrature(k: float, rmax: float, resolution: int,
                     r0: float | None = None) -> WeightedQuadrature:
    """Full-line rule for N=1 with weight w_k(x) = 2^k |x|^{2k} folded in."""
    if k < 0:
        raise QuadratureError("multiplicity k must be ≥ 0")
    n, w = _half_axis_rule(2.0 * k, rmax, resolution, r0)
    const = 2.0 ** k
    w = w * const
    nodes = np.concatenate([-n[::-1], n])
    weights = np.concatenate([w[::-1], w])
    return WeightedQuadrature("rank1", nodes, weights, rmax,
                              {"sigma": 2.0 * k, "const": const, "resolution": resolution,
                               "r0": r0, "k": k})


def radial_quadrature(N: int, gamma: float, rmax: float, resolution: int,
                      surface_const: float | None = None,
                      r0: float | None = None) -> WeightedQuadrature:
    """Radial rule: ∫ f(|x|) dμ_k = d ∫_0^∞ f(r) r^{Λ-1} dr, Λ = N + 2γ."""
    lam = N + 2.0 * gamma
    if lam <= 0:
        raise QuadratureError("N + 2γ must be positive")
    d = surface_constant(N, gamma) if surface_const is None else float(surface_const)
    n, w = _half_axis_rule(lam - 1.0, rmax, resolution, r0)
    return WeightedQuadrature("radial", n, w * d, rmax,
                              {"sigma": lam - 1.0, "const": d, "resolution": resolution,
                               "r0": r0, "N": N, "gamma": gamma})


def build_quadrature(rs: RootSystem, scheme: str = "TensorGaussLike", *,
                     rmax: float, resolution: int,
                     surface_const: float | None = None) -> WeightedQuadrature:
    """Quadrature for a concrete root system.

    TensorGaussLike: exact-weight composite rule for N=1; tensor panels with
    pointwise w_k for N=2.  PolarProduct: radial rule against r^{Λ-1} dr
    times the μ_k surface constant (radial integrands, any N).
    """
    if scheme == "PolarProduct":
        d = surface_const if surface_const is not None else surface_constant_for(rs)
        return radial_quadrature(rs.dim, rs.gamma, rmax, resolution, surface_const=d)
    if scheme != "TensorGaussLike":
        raise QuadratureError(f"unknown scheme {scheme!r}")
    if rs.dim == 1:
        k = float(rs.multiplicities[0]) if rs.num_positive else 0.0
        return rank1_quadrature(k, rmax, resolution)
    if rs.dim == 2:
        if rs.family == "ProductZ2N":
            # separable weight: fold |√2 x_i|^{2k_i} exactly per axis
            axes = [rank1_quadrature(float(k), rmax, resolution)
                    for k in rs.multiplicities]
            X, Y = np.meshgrid(axes[0].nodes, axes[1].nodes, indexing="ij")
            nodes = np.column_stack([X.ravel(), Y.ravel()])
            weights = np.outer(axes[0].weights, axes[1].weights).ravel()
        else:
            n, w = _half_axis_rule(0.0, rmax, resolution)
            n1 = np.concatenate([-n[::-1], n])
            w1 = np.concatenate([w[::-1], w])
            X, Y = np.meshgrid(n1, n1, indexing="ij")
            nodes = np.column_stack([X.ravel(), Y.ravel()])
            weights = np.outer(w1, w1).ravel() * rs_weight(rs, nodes)
        return WeightedQuadrature("tensor2", nodes, weights, rmax,
                                  {"resolution": resolution})
    raise QuadratureError("TensorGaussLike is implemented for N ≤ 2; "
                          "use PolarProduct for radial integrands in higher N")


# ---------------------------------------------------------------------------
# surface constants and Macdonald-Mehta


def surface_constant(N: int, gamma: float) -> float:
    """μ_k surface constant convention for the abstract radial mode.

    d = 2 π^{N/2} / Γ(N/2 + γ): the Euclidean sphere area at γ = 0.  For a
    concrete root system use surface_constant_for; all norm ratios computed
    by this package are invariant under this constant.
    """
    return 2.0 * np.pi ** (N / 2.0) / sps.gamma(N / 2.0 + gamma)


def surface_constant_for(rs: RootSystem) -> float:
    """Exact ∫_{S^{N-1}} w_k dω for catalog systems; numeric otherwise."""
    lam = rs.dim + 2.0 * rs.gamma
    mm = exact_macdonald_mehta(rs)
    if mm is not None:
        return mm / (2.0 ** (lam / 2.0 - 1.0) * sps.gamma(lam / 2.0))
    if rs.dim == 2:
        return _sphere_constant_2d(rs)
    if rs.dim == 3:
        tc, wc = sps.roots_legendre(200)      # cosθ ∈ (-1,1)
        tp, wp = sps.roots_legendre(200)
        phi = np.pi * (tp + 1.0)
        ct = tc
        st = np.sqrt(1.0 - ct ** 2)
        X = np.outer(st, np.cos(phi))
        Y = np.outer(st, np.sin(phi))
        Z = np.outer(ct, np.ones_like(phi))
        pts = np.column_stack([X.ravel(), Y.ravel(), Z.ravel()])
        wgt = np.outer(wc, np.pi * wp).ravel()
        return float(np.sum(wgt * rs_weight(rs, pts)))
    raise QuadratureError("surface constant: numeric sphere rule implemented for N ≤ 3")


def _sphere_constant_2d(rs: RootSystem, n: int = 48) -> float:
    """∫_0^{2π} w_k(cosθ, sinθ) dθ with Gauss-Jacobi panels split at the
    hyperplane zeros, so the |⟨α,ω⟩|^{2k} endpoint factors integrate exactly."""
    phis = np.arctan2(rs.positive_roots[:, 1], rs.positive_roots[:, 0])
    zeros = []
    for phi, k in zip(phis, rs.multiplicities):
        if k > 0:
            zeros.append(((phi + np.pi / 2) % (2 * np.pi), float(k)))
            zeros.append(((phi + 3 * np.pi / 2) % (2 * np.pi), float(k)))
    if not zeros:
        return 2.0 * np.pi
    zeros.sort()
    angles = np.array([z[0] for z in zeros])
    ks = np.array([z[1] for z in zeros])
    total = 0.0
    m = len(zeros)
    for i in range(m):
        a, ka = angles[i], ks[i]
        b = angles[(i + 1) % m] if i + 1 < m else angles[0] + 2 * np.pi
        kb = ks[(i + 1) % m]
        t, w = sps.roots_jacobi(n, 2.0 * kb, 2.0 * ka)   # (b-θ)^{2kb} (θ-a)^{2ka}
        theta = a + (b - a) * (t + 1.0) / 2.0
        pts = np.column_stack([np.cos(theta), np.sin(theta)])
        sing = (theta - a) ** (2.0 * ka) * (b - theta) ** (2.0 * kb)
        g = rs_weight(rs, pts) / sing
        total += ((b - a) / 2.0) ** (2.0 * ka + 2.0 * kb + 1.0) * np.sum(w * g)
    return float(total)


def exact_macdonald_mehta(rs: RootSystem) -> float | None:
    """Closed-form M_k = ∫ e^{-|x|²/2} dμ_k where available, else None.

    Rank-1: 2^{2k+1/2} Γ(k+1/2).  ProductZ2N: product of rank-1 factors.
    k ≡ 0: (2π)^{N/2}.
    """
    if np.all(rs.multiplicities == 0.0):
        return float((2.0 * np.pi) ** (rs.dim / 2.0))
    if rs.family == "Rank1Z2":
        k = float(rs.multiplicities[0])
        return float(2.0 ** (2.0 * k + 0.5) * sps.gamma(k + 0.5))
    if rs.family == "ProductZ2N":
        out = 1.0
        for k in rs.multiplicities:
            out *= 2.0 ** (2.0 * k + 0.5) * sps.gamma(k + 0.5)
        return float(out)
    return None


def macdonald_mehta(rs: RootSystem | None, quad: WeightedQuadrature) -> float:
    """∫ e^{-|x|²/2} dμ_k by quadrature (rmax should cover the Gaussian mass)."""
    if quad.rmax < 8.0:
        import warnings
        warnings.warn("Macdonald-Mehta truncation: rmax < 8 may clip Gaussian mass",
                      RuntimeWarning)
    if quad.kind == "tensor2":
        return float(quad.integrate(lambda x: np.exp(-0.5 * np.sum(x * x, axis=1))))
    return float(quad.integrate(lambda r: np.exp(-0.5 * r * r)))


# ---------------------------------------------------------------------------
# weighted L^p norms


def weighted_lp_norm(f, p: float, a: float, quad: WeightedQuadrature) -> float:
    """(∫ |x|^{ap} |f|^p dμ_k)^{1/p}; 0 < p < 1 computed as a quasi-norm.

    Accepts a TestFunction (whose factorable origin power is folded into the
    rule exactly and whose inner support hole, if any, licenses a pointwise
    power) or a bare callable (assumed regular at the origin).  Raises
    NonIntegrableWeightError when |x|^{ap}|f|^p is not integrable at 0.
    """
    if p <= 0:
        raise QuadratureError("p must be positive")
    lam = _dimension_power(quad)
    origin_order = float(getattr(f, "origin_order", 0.0))
    power = float(getattr(f, "origin_factor_power", 0.0))
    support_inner = float(getattr(f, "support_inner", 0.0))

    if support_inner <= 0.0 and a * p + p * origin_order + lam <= 0:
        raise NonIntegrableWeightError(
            f"|x|^({a:g}·{p:g}) |f|^{p:g} is not integrable at the origin "
            f"(origin order {origin_order:g}, dimension power {lam:g})")

    extra = p * (a + power)
    sigma_try = quad.recipe.get("sigma", 0.0) + extra
    if sigma_try > -1.0 or quad.kind == "tensor2":
        q = quad.with_power(extra)
        vals = _reduced_abs_values(f, q, power)
        return float(np.sum(q.weights * vals ** p)) ** (1.0 / p)

    # origin exponent invalid but the function vanishes identically near 0:
    # apply the power pointwise and mask the hole.
    if support_inner <= 0.0:
        raise NonIntegrableWeightError(
            f"power weight a={a:g} needs a function vanishing near the origin")
    vals = _reduced_abs_values(f, quad, 0.0)
    rad = np.abs(quad.nodes) if quad.kind == "rank1" else (
        quad.nodes if quad.kind == "radial" else np.linalg.norm(quad.nodes, axis=1))
    contrib = np.zeros_like(vals)
    live = vals != 0.0
    contrib[live] = rad[live] ** (a * p) * vals[live] ** p
    return float(np.sum(quad.weights * contrib)) ** (1.0 / p)


def _dimension_power(quad: WeightedQuadrature) -> float:
    r = quad.recipe
    if quad.kind == "rank1":
        return 1.0 + r["sigma"]          # = 1 + 2k
    if quad.kind == "radial":
        return 1.0 + r["sigma"]          # = Λ
    return 2.0


def _reduced_abs_values(f, quad: WeightedQuadrature, power: float) -> np.ndarray:
    x = quad.nodes
    if hasattr(f, "value_reduced") and power != 0.0:
        return np.abs(np.asarray(f.value_reduced(x, power)))
    g = f if callable(f) else f.value
    vals = np.abs(np.asarray(g(x)))
    if power != 0.0:
        rad = np.abs(x) if x.ndim == 1 else np.linalg.norm(x, axis=1)
        vals = vals * rad ** (-power)
    return vals
