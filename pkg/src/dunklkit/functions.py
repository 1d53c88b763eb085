"""Structured test functions with exact Dunkl calculus, and corpus generation.

The workhorse carriers:

* RadialPG — radial profiles r^β q(r²) e^{-s r²/2}.  The class is closed
  under d/dr and under the radial Dunkl Laplacian Δ_k = d²/dr² +
  (Λ-1)/r d/dr (radial functions are G-invariant, so the reflection
  differences vanish and Δ_k acts as the classical Bessel operator in
  dimension Λ = N + 2γ).  Weighted L² norms have Γ-function closed forms.
* PolyGauss1D — rank-1 profiles p(x) e^{-s x²/2}, closed under the rank-1
  Dunkl operator T f = f' + k (f(x) - f(-x))/x since the Gaussian factor is
  reflection invariant.

Bump and inverse-power carriers cover compact support, annuli (needed under
negative power weights) and heavy tails (extremal trial families).  A
TestFunction wraps one or more carriers with the metadata the norm and
inequality machinery consumes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Callable, List, Sequence

import numpy as np
from scipy import special as sps

_SERIAL = itertools.count()

__all__ = [
    "RadialPG",
    "PolyGauss1D",
    "RadialBump",
    "AnnularBump",
    "InversePower",
    "TestFunction",
    "generate_corpus",
    "band_profile",
    "CORPUS_FAMILIES",
]

CORPUS_FAMILIES = ("Gaussian", "DilatedGaussian", "HermiteGaussian",
                   "RadialBump", "AnnularBump", "SeededSuperposition")


# ---------------------------------------------------------------------------
# exact carriers


@dataclass(frozen=True)
class RadialPG:
    """r^beta * q(r^2) * exp(-s r^2 / 2) with q given by ascending coeffs."""

    beta: float
    coeffs: tuple
    s: float

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if self.s <= 0:
            raise ValueError("Gaussian scale s must be positive")

    @property
    def lead(self) -> int:
        for m, c in enumerate(self.coeffs):
            if c != 0.0:
                return m
        return 0

    @property
    def min_power(self) -> float:
        """Vanishing order at the origin: f ~ r^{beta + 2*lead}."""
        return self.beta + 2 * self.lead

    def value(self, r: np.ndarray) -> np.ndarray:
        return self.value_reduced(r, 0.0)

    def value_reduced(self, r: np.ndarray, power: float) -> np.ndarray:
        """f(r) / r^power, evaluated stably (requires power ≤ min_power)."""
        r = np.asarray(r, dtype=float)
        u = r * r
        m0 = self.lead
        q = np.zeros_like(u)
        for c in reversed(self.coeffs[m0:]):
            q = q * u + c
        expo = self.beta + 2 * m0 - power
        return (r ** expo) * q * np.exp(-0.5 * self.s * u)

    def derivative(self) -> "RadialPG":
        c = self.coeffs
        n = len(c)
        d = [0.0] * (n + 1)
        for m in range(n):
            d[m] += (self.beta + 2 * m) * c[m]
            d[m + 1] += -self.s * c[m]
        return RadialPG(self.beta - 1.0, tuple(d), self.s)

    def laplacian(self, lam: float) -> "RadialPG":
        """Radial Dunkl Laplacian in dimension Λ: f'' + (Λ-1) f'/r."""
        b, s = self.beta, self.s
        c = self.coeffs
        n = len(c)
        d = [0.0] * (n + 2)
        for m in range(n):
            d[m] += (b * (b + lam - 2.0) + 2.0 * (2.0 * b + lam) * m + 4.0 * m * (m - 1.0)) * c[m]
            d[m + 1] += -s * ((2.0 * b + lam) + 4.0 * m) * c[m]
            d[m + 2] += s * s * c[m]
        return RadialPG(b - 2.0, tuple(d), s)

    def dilate(self, lam: float) -> "RadialPG":
        c = [ (lam ** self.beta) * (lam ** (2 * m)) * cm for m, cm in enumerate(self.coeffs)]
        return RadialPG(self.beta, tuple(c), self.s * lam * lam)

    def weighted_l2_exact(self, a: float, lam: float, surface_const: float = 1.0) -> float:
        """∫ r^{2a} f(r)² dμ = d ∫_0^∞ r^{2a} f² r^{Λ-1} dr, closed form."""
        g = np.polynomial.polynomial.polymul(self.coeffs, self.coeffs)
        out = 0.0
        for m, gm in enumerate(g):
            if gm == 0.0:
                continue
            arg = a + self.beta + m + lam / 2.0
            if arg <= 0:
                raise ValueError("non-integrable origin exponent in exact norm")
            out += gm * sps.gamma(arg) / (2.0 * self.s ** arg)
        return surface_const * out


@dataclass(frozen=True)
class PolyGauss1D:
    """p(x) * exp(-s x^2 / 2) on the line, p by ascending coefficients."""

    coeffs: tuple
    s: float

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if self.s <= 0:
            raise ValueError("Gaussian scale s must be positive")

    @property
    def lead(self) -> int:
        for m, c in enumerate(self.coeffs):
            if c != 0.0:
                return m
        return 0

    @property
    def min_power(self) -> float:
        return float(self.lead)

    def value(self, x: np.ndarray) -> np.ndarray:
        return self.value_reduced(x, 0.0)

    def value_reduced(self, x: np.ndarray, power: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        m0 = self.lead
        p = np.zeros_like(x)
        for c in reversed(self.coeffs[m0:]):
            p = p * x + c
        red = int(round(power))
        if red != power:
            raise ValueError("rank-1 reduction power must be an integer")
        if m0 - red:
            p = p * x ** (m0 - red)
        return p * np.exp(-0.5 * self.s * x * x)

    def derivative(self) -> "PolyGauss1D":
        c = self.coeffs
        n = len(c)
        d = [0.0] * (n + 1)
        for m in range(n):
            if m >= 1:
                d[m - 1] += m * c[m]
            d[m + 1] += -self.s * c[m]
        return PolyGauss1D(tuple(d), self.s)

    def dunkl_apply(self, k: float) -> "PolyGauss1D":
        """T f = f' + k (f(x)-f(-x))/x; exact on this class."""
        der = self.derivative()
        if k == 0.0:
            return der
        c = self.coeffs
        d = list(der.coeffs) + [0.0] * max(0, len(c) - len(der.coeffs))
        for m in range(1, len(c), 2):
            d[m - 1] += k * 2.0 * c[m]
        return PolyGauss1D(tuple(d), self.s)

    def laplacian(self, k: float) -> "PolyGauss1D":
        return self.dunkl_apply(k).dunkl_apply(k)

    def dilate(self, lam: float) -> "PolyGauss1D":
        c = [(lam ** m) * cm for m, cm in enumerate(self.coeffs)]
        return PolyGauss1D(tuple(c), self.s * lam * lam)

    def weighted_l2_exact(self, a: float, k: float) -> float:
        """∫ |x|^{2a} f(x)² dμ_k with w_k = 2^k |x|^{2k}, closed form."""
        g = np.polynomial.polynomial.polymul(self.coeffs, self.coeffs)
        out = 0.0
        for n, gn in enumerate(g):
            if gn == 0.0 or n % 2 == 1:
                continue
            arg = (n + 1) / 2.0 + a + k
            if arg <= 0:
                raise ValueError("non-integrable origin exponent in exact norm")
            out += gn * sps.gamma(arg) / self.s ** arg
        return (2.0 ** k) * out


# ---------------------------------------------------------------------------
# bump and heavy-tail carriers (value/derivative callables)


def _mollifier(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    inside = np.abs(t) < 1.0
    out = np.zeros_like(t)
    ti = t[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - ti * ti))
    return out


def _mollifier_prime(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    inside = np.abs(t) < 1.0
    out = np.zeros_like(t)
    ti = t[inside]
    d = 1.0 - ti * ti
    out[inside] = np.exp(1.0 - 1.0 / d) * (-2.0 * ti / (d * d))
    return out


@dataclass(frozen=True)
class RadialBump:
    """Smooth bump supported on [0, R); equals 1 at the origin."""

    R: float

    def value(self, r):
        return _mollifier(np.asarray(r, float) / self.R)

    def derivative_values(self, r):
        return _mollifier_prime(np.asarray(r, float) / self.R) / self.R


@dataclass(frozen=True)
class AnnularBump:
    """Smooth bump supported on (r_in, r_out); vanishes identically near 0."""

    r_in: float
    r_out: float

    def _t(self, r):
        return (2.0 * np.asarray(r, float) - (self.r_in + self.r_out)) / (self.r_out - self.r_in)

    def value(self, r):
        return _mollifier(self._t(r))

    def derivative_values(self, r):
        return _mollifier_prime(self._t(r)) * 2.0 / (self.r_out - self.r_in)


@dataclass(frozen=True)
class InversePower:
    """(1 + (r/scale)²)^{-beta}: heavy-tailed extremal trial profile."""

    beta: float
    scale: float = 1.0

    def value(self, r):
        t = np.asarray(r, float) / self.scale
        return (1.0 + t * t) ** (-self.beta)

    def derivative_values(self, r):
        t = np.asarray(r, float) / self.scale
        return (-2.0 * self.beta / self.scale) * t * (1.0 + t * t) ** (-self.beta - 1.0)


# ---------------------------------------------------------------------------
# wrapper


@dataclass
class TestFunction:
    """A corpus member: carrier(s) plus the metadata norms and theorems use.

    origin_factor_power: exactly factorable power r^β at the origin (folded
    into quadrature weights); origin_order: actual vanishing order (∞ for
    annuli); support_inner > 0 licenses pointwise power weights.
    """

    __test__ = False          # not a pytest collection target

    fid: str
    family: str
    mode: str                      # "radial" | "rank1"
    params: dict = field(default_factory=dict)
    components: tuple = ()         # RadialPG or PolyGauss1D carriers
    profile: object = None         # bump / inverse-power carrier
    is_radial: bool = True
    vanishes_at_origin: bool = False
    origin_order: float = 0.0
    origin_factor_power: float = 0.0
    support_inner: float = 0.0
    support_outer: float | None = None
    decay_scale: float = 1.0
    heavy_tails: bool = False
    # member of the energy-space closure of functions vanishing near 0
    # (e.g. r^β with β > -1/2: the ε-cutoff error vanishes like ε^{2β+1})
    in_origin_closure: bool = False
    # unique per instance; spectral caches key on it (fids repeat across corpora)
    serial: int = field(init=False, default_factory=_SERIAL.__next__, compare=False)

    # -- evaluation -------------------------------------------------------

    def value(self, x):
        if self.profile is not None:
            return self.profile.value(x)
        out = 0.0
        for c in self.components:
            out = out + c.value(x)
        return out

    __call__ = value

    def value_reduced(self, x, power: float):
        if power == 0.0:
            return self.value(x)
        if self.profile is not None:
            x = np.asarray(x, float)
            vals = self.profile.value(x)
            rad = np.abs(x)
            out = np.zeros_like(vals)
            live = vals != 0.0
            out[live] = vals[live] * rad[live] ** (-power)
            return out
        out = 0.0
        for c in self.components:
            out = out + c.value_reduced(x, power)
        return out

    def derivative(self) -> "TestFunction":
        """d/dr of the radial profile (or d/dx in rank-1)."""
        if self.profile is not None:
            prof = self.profile

            class _D:
                def value(self, x, _p=prof):
                    return _p.derivative_values(x)
            return replace(self, fid=self.fid + "'", components=(), profile=_D(),
                           origin_factor_power=0.0, origin_order=max(0.0, self.origin_order - 1))
        comps = tuple(c.derivative() for c in self.components)
        return self._rewrap(comps, "'")

    def apply_dunkl(self, k: float) -> "TestFunction":
        if self.mode != "rank1":
            raise ValueError("apply_dunkl is the rank-1 operator; use laplacian for radial mode")
        if not self.components:
            raise ValueError(f"{self.fid}: no exact Dunkl hook for this carrier")
        comps = tuple(c.dunkl_apply(k) for c in self.components)
        return self._rewrap(comps, "~T")

    def laplacian(self, lam_or_k: float) -> "TestFunction":
        if not self.components:
            raise ValueError(f"{self.fid}: no exact Laplacian hook for this carrier")
        if self.mode == "radial":
            comps = tuple(c.laplacian(lam_or_k) for c in self.components)
        else:
            comps = tuple(c.laplacian(lam_or_k) for c in self.components)
        return self._rewrap(comps, "~lap")

    def dilate(self, lam: float) -> "TestFunction":
        """f ↦ f(λ·), exact on structured carriers."""
        if self.profile is not None:
            prof = self.profile

            class _S:
                def value(self, x, _p=prof, _l=lam):
                    return _p.value(_l * np.asarray(x, float))

                def derivative_values(self, x, _p=prof, _l=lam):
                    return _l * _p.derivative_values(_l * np.asarray(x, float))
            return replace(self, fid=f"{self.fid}~dil{lam:g}", profile=_S(), components=(),
                           support_inner=self.support_inner / lam,
                           support_outer=None if self.support_outer is None else self.support_outer / lam,
                           decay_scale=self.decay_scale / lam)
        comps = tuple(c.dilate(lam) for c in self.components)
        out = self._rewrap(comps, f"~dil{lam:g}")
        out.decay_scale = self.decay_scale / lam
        return out

    def _rewrap(self, comps: tuple, suffix: str) -> "TestFunction":
        power = min(c.min_power for c in comps)
        return replace(self, fid=self.fid + suffix, components=comps,
                       origin_factor_power=power,
                       origin_order=max(power, 0.0) if np.isfinite(self.origin_order) else self.origin_order)

    def to_dict(self) -> dict:
        return {
            "id": self.fid,
            "family": self.family,
            "mode": self.mode,
            "params": {k: (v if isinstance(v, (int, float)) else list(v))
                       for k, v in self.params.items()},
            "is_radial": self.is_radial,
            "vanishes_at_origin": self.vanishes_at_origin,
        }


# ---------------------------------------------------------------------------
# constructors


def _pg_testfunction(fid: str, family: str, mode: str, comps: Sequence, params: dict) -> TestFunction:
    comps = tuple(comps)
    power = min(c.min_power for c in comps)
    smin = min(c.s for c in comps)
    return TestFunction(
        fid=fid, family=family, mode=mode, params=params, components=comps,
        is_radial=(mode == "radial") or all(
            all(c == 0.0 for m, c in enumerate(pc.coeffs) if m % 2 == 1) for pc in comps),
        vanishes_at_origin=power > 0,
        origin_order=max(power, 0.0),
        origin_factor_power=power,
        decay_scale=1.0 / math.sqrt(smin),
    )


def gaussian(mode: str = "radial", s: float = 1.0, fid: str = "Gaussian-0") -> TestFunction:
    if mode == "radial":
        return _pg_testfunction(fid, "Gaussian", mode, [RadialPG(0.0, (1.0,), s)], {"s": s})
    return _pg_testfunction(fid, "Gaussian", mode, [PolyGauss1D((1.0,), s)], {"s": s})


def band_profile(lo: float, hi: float) -> Callable[[np.ndarray], np.ndarray]:
    """Smooth bump in the spectral variable, supported on [lo, hi]."""
    if not 0 < lo < hi:
        raise ValueError("need 0 < lo < hi")

    def prof(rho):
        t = (2.0 * np.asarray(rho, float) - (lo + hi)) / (hi - lo)
        return _mollifier(t)
    return prof


def generate_corpus(seed: int, count: int, families: Sequence[str],
                    constraints: dict | None = None, mode: str = "radial") -> List[TestFunction]:
    """Deterministic seeded corpus; respects {vanish_at_origin, radial}.

    Families with no natural vanishing (Gaussians) receive an r² (rank-1: x²)
    prefactor under the vanish_at_origin constraint; this is recorded in the
    member's params.
    """
    if count < 1:
        raise ValueError("count must be ≥ 1")
    families = list(families)
    if not families:
        raise ValueError("empty family list")
    unknown = [f for f in families if f not in CORPUS_FAMILIES]
    if unknown:
        raise ValueError(f"unknown families: {unknown}")
    constraints = constraints or {}
    vanish = bool(constraints.get("vanish_at_origin", False))
    radial_only = bool(constraints.get("radial", False))

    rng = np.random.default_rng(seed)
    out: List[TestFunction] = []
    for i in range(count):
        fam = families[i % len(families)]
        fid = f"{fam}-{i:02d}"
        if fam in ("Gaussian", "DilatedGaussian"):
            s = 1.0 if fam == "Gaussian" else float(rng.uniform(0.35, 2.6))
            params = {"s": s, "vanish_prefactor": int(vanish)}
            if mode == "radial":
                comps = [RadialPG(0.0, (0.0, 1.0) if vanish else (1.0,), s)]
            else:
                comps = [PolyGauss1D((0.0, 0.0, 1.0) if vanish else (1.0,), s)]
            out.append(_pg_testfunction(fid, fam, mode, comps, params))
        elif fam == "HermiteGaussian":
            s = float(rng.uniform(0.6, 1.8))
            if mode == "radial":
                deg = int(rng.integers(1, 4))
                c = rng.uniform(-1.0, 1.0, size=deg + 1)
                c[deg] = np.sign(c[deg]) * (0.5 + abs(c[deg]))
                if vanish:
                    c = np.concatenate([[0.0] * int(rng.integers(1, 3)), c])
                comps = [RadialPG(0.0, tuple(c), s)]
            else:
                deg = int(rng.integers(2, 7))
                c = rng.uniform(-1.0, 1.0, size=deg + 1)
                c[deg] = np.sign(c[deg]) * (0.5 + abs(c[deg]))
                if radial_only:
                    c[1::2] = 0.0
                if vanish:
                    c = np.concatenate([[0.0, 0.0], c])
                comps = [PolyGauss1D(tuple(c), s)]
            out.append(_pg_testfunction(fid, fam, mode, comps,
                                        {"s": s, "coeffs": [float(v) for v in c]}))
        elif fam == "RadialBump":
            R = float(rng.uniform(2.0, 5.0))
            if vanish:
                # no radial bump vanishes at the origin; substitute an annulus
                r_in = float(rng.uniform(0.4, 1.0))
                out.append(_annular(fid, r_in, r_in + R, mode))
            else:
                out.append(TestFunction(
                    fid=fid, family=fam, mode=mode, params={"R": R},
                    profile=RadialBump(R), is_radial=True,
                    vanishes_at_origin=False, origin_order=0.0,
                    support_outer=R, decay_scale=R / 3.0))
        elif fam == "AnnularBump":
            r_in = float(rng.uniform(0.4, 1.0))
            width = float(rng.uniform(1.0, 2.5))
            out.append(_annular(fid, r_in, r_in + width, mode))
        elif fam == "SeededSuperposition":
            ncomp = int(rng.integers(2, 4))
            comps = []
            amps = []
            for _ in range(ncomp):
                s = float(rng.uniform(0.4, 2.2))
                amp = float(rng.uniform(0.5, 1.5)) * (1.0 if rng.uniform() < 0.5 else -1.0)
                amps.append((amp, s))
                if mode == "radial":
                    comps.append(RadialPG(0.0, (0.0, amp) if vanish else (amp,), s))
                else:
                    comps.append(PolyGauss1D((0.0, 0.0, amp) if vanish else (amp,), s))
            out.append(_pg_testfunction(fid, fam, mode, comps, {"components": amps}))
    if radial_only:
        for tf in out:
            if not tf.is_radial:
                raise AssertionError("radial constraint produced a non-radial member")
    if vanish:
        for tf in out:
            if not tf.vanishes_at_origin:
                raise AssertionError("vanish_at_origin constraint violated")
    return out


def _annular(fid: str, r_in: float, r_out: float, mode: str) -> TestFunction:
    return TestFunction(
        fid=fid, family="AnnularBump", mode=mode,
        params={"r_in": r_in, "r_out": r_out},
        profile=AnnularBump(r_in, r_out), is_radial=True,
        vanishes_at_origin=True, origin_order=np.inf,
        support_inner=r_in, support_outer=r_out, decay_scale=r_out / 3.0)
