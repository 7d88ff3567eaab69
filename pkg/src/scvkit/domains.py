"""Catalog of evaluable defining functions and scalar weight fields.

Built-ins: the unit ball, ellipsoids, the worm domain in C^2 with a concrete
smooth convex profile, and the weighted function rho * e^psi.  Every field
produces a full second-order jet at any point of its evaluation region, so
all downstream boundary geometry is exact to machine arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import CubicSpline
from scipy.special import exp1

from .jets import (
    CJet,
    EvaluationDomainError,
    Jet2,
    LeviData,
    complex_parts,
    evaluate_jet,
    real_coordinates,
)


class ScalarField:
    """A smooth scalar function of n complex variables, evaluable as jets."""

    def __init__(self, n: int, evaluator: Callable[[list[CJet]], Jet2], name: str = "field"):
        self.n = n
        self.evaluator = evaluator
        self.name = name

    def jet(self, x: Sequence[float]) -> Jet2:
        """Second-order jet at a real point (x_1, y_1, ..., x_n, y_n)."""
        return evaluate_jet(self.evaluator, x)

    def jet_z(self, z: Sequence[complex]) -> Jet2:
        return self.jet(real_coordinates(z))

    def value(self, x: Sequence[float]) -> float:
        return self.jet(x).v

    def value_z(self, z: Sequence[complex]) -> float:
        return self.jet_z(z).v

    def levi(self, z: Sequence[complex]) -> LeviData:
        """Wirtinger first/second derivatives at a complex point."""
        return complex_parts(self.jet_z(z))

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, n={self.n})"


class DefiningFunction(ScalarField):
    """A defining function rho with metadata; Omega = {rho < 0}."""

    def __init__(self, name, n, evaluator, params=None, eval_region="C^n"):
        super().__init__(n, evaluator, name=name)
        self.params = dict(params or {})
        self.eval_region = eval_region

    def config(self) -> dict:
        """JSON-serializable description of this domain."""
        return {"name": self.name, "n": self.n, "params": self.params}


def make_ball(n: int) -> DefiningFunction:
    """rho(z) = sum |z_j|^2 - 1."""
    if n < 1:
        raise ValueError("n must be >= 1")

    def evaluator(zs):
        acc = zs[0].abs2()
        for z in zs[1:]:
            acc = acc + z.abs2()
        return acc - 1.0

    return DefiningFunction("ball", n, evaluator, params={"n": n})


def make_ellipsoid(axes: Sequence[float]) -> DefiningFunction:
    """rho(z) = sum |z_j|^2 / a_j^2 - 1."""
    axes = [float(a) for a in axes]
    if any(a <= 0 for a in axes):
        raise ValueError(f"axes must be positive, got {axes}")

    def evaluator(zs):
        acc = zs[0].abs2() * (1.0 / axes[0] ** 2)
        for z, a in zip(zs[1:], axes[1:]):
            acc = acc + z.abs2() * (1.0 / a**2)
        return acc - 1.0

    return DefiningFunction("ellipsoid", len(axes), evaluator, params={"axes": axes})


@dataclass
class WormProfile:
    """Concrete convex bump phi for the worm domain.

    phi(x) = c * g(|x| - (beta - pi/2)) with g(t) = 0 for t <= 0 and
    g(t) = int_0^t int_0^s e^{-1/u} du ds for t > 0: smooth, convex and flat
    to infinite order at the contact points.  The scale c is fixed by
    phi(a) = 2, which makes phi > 1 well before |x| = a.
    """

    beta: float
    a: float | None = None
    c: float = field(default=0.0)
    _g_spline: CubicSpline = field(default=None, repr=False)

    def __post_init__(self):
        if self.beta <= math.pi / 2:
            raise ValueError(f"beta must exceed pi/2, got {self.beta}")
        self.flat_halfwidth = self.beta - math.pi / 2
        if self.a is None:
            self.a = self.flat_halfwidth + 2.0
        if self.a <= self.flat_halfwidth:
            raise ValueError("a must exceed beta - pi/2")
        # g' has the closed form t e^{-1/t} - E1(1/t); g itself is tabulated
        # once by quadrature of g' and interpolated.
        t_max = (self.a - self.flat_halfwidth) + 4.0
        ts = np.linspace(0.0, t_max, 4001)
        gp = self._g_prime(ts)
        gv = cumulative_trapezoid(gp, ts, initial=0.0)
        # trapezoid alone is O(h^2); refine with Richardson on a doubled grid
        ts_f = np.linspace(0.0, t_max, 8001)
        gv_f = cumulative_trapezoid(self._g_prime(ts_f), ts_f, initial=0.0)
        gv = (4.0 * gv_f[::2] - gv) / 3.0
        self._g_spline = CubicSpline(ts, gv)
        self.c = 2.0 / self._g(self.a - self.flat_halfwidth)

    @staticmethod
    def _g_prime(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        pos = t > 1e-8
        tp = t[pos]
        out[pos] = tp * np.exp(-1.0 / tp) - exp1(1.0 / tp)
        return out

    @staticmethod
    def _g_second(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        pos = t > 1e-8
        out[pos] = np.exp(-1.0 / t[pos])
        return out

    def _g(self, t: float) -> float:
        if t <= 0.0:
            return 0.0
        return float(self._g_spline(t))

    def phi(self, x: float) -> tuple[float, float, float]:
        """phi(x) with first and second derivatives."""
        s = abs(x) - self.flat_halfwidth
        if s <= 0.0:
            return 0.0, 0.0, 0.0
        sign = 1.0 if x >= 0.0 else -1.0
        return (
            self.c * self._g(s),
            sign * self.c * float(self._g_prime(s)),
            self.c * float(self._g_second(s)),
        )

    def phi_value(self, x: float) -> float:
        return self.phi(x)[0]

    def unit_crossing(self) -> float:
        """The x* > 0 with phi(x*) = 1, found by bisection."""
        lo, hi = self.flat_halfwidth, self.a
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self.phi_value(mid) < 1.0:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def config(self) -> dict:
        return {"beta": self.beta, "a": self.a, "c": self.c}


def worm_phi(x: float, profile: WormProfile) -> tuple[float, float, float]:
    """Profile bump value and derivatives at x."""
    return profile.phi(x)


def make_worm(beta: float, profile: WormProfile | None = None) -> DefiningFunction:
    """Worm domain rho(z, w) = |z - e^{i log|w|^2}|^2 - (1 - phi(log|w|^2))."""
    if profile is None:
        profile = WormProfile(beta)
    if profile.beta != beta:
        raise ValueError("profile.beta does not match beta")

    def evaluator(zs):
        z, w = zs
        u = w.abs2()
        if u.v <= 0.0:
            raise EvaluationDomainError("log", "worm domain is undefined at w = 0")
        t = u.log()
        p0, p1, p2 = profile.phi(t.v)
        phit = t.apply(p0, p1, p2)
        # |z - e^{it}|^2 - 1 = |z|^2 - 2(x cos t + y sin t)
        return z.abs2() - 2.0 * (z.re * t.cos() + z.im * t.sin()) + phit

    fn = DefiningFunction(
        "worm",
        2,
        evaluator,
        params={"beta": beta, "profile": profile.config()},
        eval_region="C^2 minus {w = 0}",
    )
    fn.profile = profile
    fn.beta = beta
    return fn


def weight(rho: DefiningFunction, psi: ScalarField | Callable) -> DefiningFunction:
    """The weighted defining function rho * e^psi (psi real-valued)."""
    psi_eval = getattr(psi, "evaluator", psi)

    def evaluator(zs):
        return rho.evaluator(zs) * psi_eval(zs).exp()

    out = DefiningFunction(
        f"{rho.name}*exp(psi)",
        rho.n,
        evaluator,
        params=rho.params,
        eval_region=rho.eval_region,
    )
    for attr in ("profile", "beta"):
        if hasattr(rho, attr):
            setattr(out, attr, getattr(rho, attr))
    return out


def constant_field(n: int, kappa: float) -> ScalarField:
    return ScalarField(n, lambda zs: Jet2.constant(kappa, 2 * n), name=f"const({kappa})")


def norm_squared_field(n: int, scale: float = 1.0) -> ScalarField:
    """psi(z) = scale * ||z||^2."""

    def evaluator(zs):
        acc = zs[0].abs2()
        for z in zs[1:]:
            acc = acc + z.abs2()
        return acc * scale

    return ScalarField(n, evaluator, name=f"{scale}*|z|^2")
