"""Second-order forward-mode jets over R^m, with Wirtinger extraction.

A :class:`Jet2` carries the value, gradient and (exactly symmetric) Hessian
of a scalar expression with respect to m real variables.  Complex coordinates
z_j = x_j + i y_j are handled through :class:`CJet`, a pair of real jets, so
that defining functions written in complex notation differentiate through to
the full real Hessian.  :func:`complex_parts` converts a real jet over R^{2n}
into holomorphic gradient, mixed (Hermitian) Hessian and holomorphic Hessian.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np


class EvaluationDomainError(ValueError):
    """A primitive was evaluated outside its domain (e.g. log of t <= 0)."""

    def __init__(self, primitive: str, detail: str = ""):
        self.primitive = primitive
        msg = f"domain error in primitive '{primitive}'"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class FiniteDifferenceError(RuntimeError):
    """Richardson error indicator exceeded the caller tolerance."""


Scalar = Union[int, float]


class Jet2:
    """Value, gradient and symmetric Hessian of a scalar w.r.t. m real variables."""

    __slots__ = ("v", "g", "h")

    def __init__(self, v, g, h):
        self.v = float(v)
        self.g = np.asarray(g, dtype=float)
        self.h = np.asarray(h, dtype=float)

    @property
    def m(self) -> int:
        return self.g.shape[0]

    @staticmethod
    def variable(value: float, index: int, m: int) -> "Jet2":
        g = np.zeros(m)
        g[index] = 1.0
        return Jet2(value, g, np.zeros((m, m)))

    @staticmethod
    def constant(value: float, m: int) -> "Jet2":
        return Jet2(value, np.zeros(m), np.zeros((m, m)))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.v + other.v, self.g + other.g, self.h + other.h)
        return Jet2(self.v + float(other), self.g, self.h)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.v, -self.g, -self.h)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet2) else -float(other))

    def __rsub__(self, other):
        return (-self) + float(other)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            cross = np.outer(self.g, other.g)
            return Jet2(
                self.v * other.v,
                self.v * other.g + other.v * self.g,
                self.v * other.h + other.v * self.h + cross + cross.T,
            )
        c = float(other)
        return Jet2(c * self.v, c * self.g, c * self.h)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other._reciprocal()
        return self * (1.0 / float(other))

    def __rtruediv__(self, other):
        return self._reciprocal() * float(other)

    def _reciprocal(self) -> "Jet2":
        if self.v == 0.0:
            raise EvaluationDomainError("divide", "division by zero value")
        inv = 1.0 / self.v
        return self.apply(inv, -inv * inv, 2.0 * inv**3)

    # -- composition --------------------------------------------------------

    def apply(self, f0: float, f1: float, f2: float) -> "Jet2":
        """Chain rule through a scalar map with value f0 and derivatives f1, f2 at self.v."""
        return Jet2(f0, f1 * self.g, f1 * self.h + f2 * np.outer(self.g, self.g))

    def exp(self) -> "Jet2":
        e = np.exp(self.v)
        return self.apply(e, e, e)

    def log(self) -> "Jet2":
        if self.v <= 0.0:
            raise EvaluationDomainError("log", f"argument {self.v} <= 0")
        return self.apply(np.log(self.v), 1.0 / self.v, -1.0 / self.v**2)

    def sin(self) -> "Jet2":
        s, c = np.sin(self.v), np.cos(self.v)
        return self.apply(s, c, -s)

    def cos(self) -> "Jet2":
        s, c = np.sin(self.v), np.cos(self.v)
        return self.apply(c, -s, -c)

    def cot(self) -> "Jet2":
        s = np.sin(self.v)
        if abs(s) < 1e-300:
            raise EvaluationDomainError("cot", "argument at a pole of cot")
        c = np.cos(self.v)
        cotv = c / s
        return self.apply(cotv, -1.0 - cotv * cotv, 2.0 * cotv * (1.0 + cotv * cotv))

    def sqrt(self) -> "Jet2":
        if self.v <= 0.0:
            raise EvaluationDomainError("sqrt", f"argument {self.v} <= 0")
        r = np.sqrt(self.v)
        return self.apply(r, 0.5 / r, -0.25 / (r * self.v))

    def power(self, p: float) -> "Jet2":
        """self**p for real p; requires a positive base unless p is a nonnegative integer."""
        if float(p) == int(p) and int(p) >= 0:
            k = int(p)
            if k == 0:
                return Jet2.constant(1.0, self.m)
            f0 = self.v**k
            f1 = k * self.v ** (k - 1)
            f2 = k * (k - 1) * (self.v ** (k - 2) if k >= 2 else 0.0)
            return self.apply(f0, f1, f2)
        if self.v <= 0.0:
            raise EvaluationDomainError("power", f"base {self.v} <= 0 with exponent {p}")
        f0 = self.v**p
        return self.apply(f0, p * f0 / self.v, p * (p - 1.0) * f0 / self.v**2)

    def __repr__(self):
        return f"Jet2(v={self.v!r})"


class CJet:
    """Complex-valued jet: a pair of real jets (re, im) with complex arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re: Jet2, im: Jet2):
        self.re = re
        self.im = im

    @staticmethod
    def from_real(j: Jet2) -> "CJet":
        return CJet(j, Jet2.constant(0.0, j.m))

    def conj(self) -> "CJet":
        return CJet(self.re, -self.im)

    def abs2(self) -> Jet2:
        """|self|^2 as a real jet."""
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        if isinstance(other, CJet):
            return CJet(self.re + other.re, self.im + other.im)
        c = complex(other)
        return CJet(self.re + c.real, self.im + c.imag)

    __radd__ = __add__

    def __neg__(self):
        return CJet(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other if isinstance(other, CJet) else -complex(other))

    def __rsub__(self, other):
        return (-self) + complex(other)

    def __mul__(self, other):
        if isinstance(other, CJet):
            return CJet(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        c = complex(other)
        return CJet(self.re * c.real - self.im * c.imag, self.re * c.imag + self.im * c.real)

    __rmul__ = __mul__


def real_coordinates(z: Sequence[complex]) -> np.ndarray:
    """Complex point (z_1, ..., z_n) -> real point (x_1, y_1, ..., x_n, y_n)."""
    z = np.asarray(z, dtype=complex)
    x = np.empty(2 * z.shape[0])
    x[0::2] = z.real
    x[1::2] = z.imag
    return x


def complex_coordinates(x: Sequence[float]) -> np.ndarray:
    """Real point (x_1, y_1, ..., x_n, y_n) -> complex point (z_1, ..., z_n)."""
    x = np.asarray(x, dtype=float)
    return x[0::2] + 1j * x[1::2]


def seed_complex_jets(x: np.ndarray) -> list[CJet]:
    """Coordinate jets z_j = x_j + i y_j at a real point of R^{2n}."""
    m = x.shape[0]
    return [
        CJet(Jet2.variable(x[2 * j], 2 * j, m), Jet2.variable(x[2 * j + 1], 2 * j + 1, m))
        for j in range(m // 2)
    ]


def evaluate_jet(f, x: Sequence[float]) -> Jet2:
    """Full second-order jet of f at the real point x.

    f is either an object with an ``evaluator`` attribute taking a list of
    coordinate :class:`CJet` values, or such a callable itself.
    """
    x = np.asarray(x, dtype=float)
    evaluator = getattr(f, "evaluator", f)
    result = evaluator(seed_complex_jets(x))
    if isinstance(result, CJet):
        raise TypeError("evaluator returned a complex jet; expected a real-valued one")
    return result


@dataclass(frozen=True)
class LeviData:
    """Complex second-order data of a real scalar at a point of C^n.

    holo_grad[j] = d rho / d z_j, mixed_hess[j, k] = d^2 rho / d z_j d zbar_k
    (exactly Hermitian), holo_hess[j, k] = d^2 rho / d z_j d z_k (exactly
    symmetric).
    """

    value: float
    holo_grad: np.ndarray
    mixed_hess: np.ndarray
    holo_hess: np.ndarray

    def real_hessian(self) -> np.ndarray:
        """Reconstruct the real 2n x 2n Hessian from the complex blocks."""
        n = self.holo_grad.shape[0]
        hp = self.mixed_hess + self.holo_hess
        hm = self.mixed_hess - self.holo_hess
        out = np.empty((2 * n, 2 * n))
        out[0::2, 0::2] = 2.0 * hp.real
        out[1::2, 0::2] = -2.0 * hp.imag
        out[1::2, 1::2] = 2.0 * hm.real
        out[0::2, 1::2] = 2.0 * hm.imag
        return 0.5 * (out + out.T)


def complex_parts(j: Jet2) -> LeviData:
    """Wirtinger derivatives of a real-valued jet over R^{2n}."""
    m = j.m
    if m % 2 != 0:
        raise ValueError(f"jet dimension {m} is not even")
    gx, gy = j.g[0::2], j.g[1::2]
    holo_grad = 0.5 * (gx - 1j * gy)
    hxx = j.h[0::2, 0::2]
    hyy = j.h[1::2, 1::2]
    hxy = j.h[0::2, 1::2]
    hyx = j.h[1::2, 0::2]
    mixed = 0.25 * ((hxx + hyy) + 1j * (hxy - hyx))
    mixed = 0.5 * (mixed + mixed.conj().T)
    holo = 0.25 * ((hxx - hyy) - 1j * (hxy + hyx))
    holo = 0.5 * (holo + holo.T)
    return LeviData(value=j.v, holo_grad=holo_grad, mixed_hess=mixed, holo_hess=holo)


def normal_third_derivative(
    field: Callable[[np.ndarray], float],
    p: Sequence[float],
    direction: Sequence[float],
    h: float = 1e-3,
    tol: float | None = None,
) -> tuple[float, float]:
    """Directional derivative of a scalar field along a real unit direction.

    Central differences at steps h and h/2 with one Richardson extrapolation;
    returns (derivative, error indicator).  Raises
    :class:`FiniteDifferenceError` if the indicator exceeds tol.
    """
    p = np.asarray(p, dtype=float)
    u = np.asarray(direction, dtype=float)

    def central(step):
        return (field(p + step * u) - field(p - step * u)) / (2.0 * step)

    d1 = central(h)
    d2 = central(0.5 * h)
    extrap = (4.0 * d2 - d1) / 3.0
    indicator = abs(extrap - d2)
    if tol is not None and indicator > tol:
        raise FiniteDifferenceError(
            f"finite-difference indicator {indicator:.3e} exceeds tolerance {tol:.3e}"
        )
    return extrap, indicator
