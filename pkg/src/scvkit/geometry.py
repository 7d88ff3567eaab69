"""Boundary geometry: projection, complex normal, tangent frames, Levi forms.

Conventions.  For the flat Hermitian metric, g(X, Y) = (1/2) sum_j X_j
conj(Y_j) on coefficient vectors of (1,0) fields.  The complex normal has
coefficients conj(d rho/d z_j) / s with s = (sum_j |d rho/d z_j|^2)^{1/2},
so g(N, N) = 1/2 and N rho = s = ||grad rho|| / 2.  The Levi form is the
coordinate mixed Hessian paired sesquilinearly: L_rho(X, Y) =
sum_{jk} H_{jk} X_j conj(Y_k).  Tangent fields are extended off the boundary
by projecting out the d rho component, so that L rho = 0 holds exactly at
every evaluation point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .domains import DefiningFunction
from .jets import LeviData, normal_third_derivative, real_coordinates


class ProjectionError(RuntimeError):
    """Newton projection to the boundary failed."""


STRONGLY = "strongly"
WEAKLY = "weakly"
INDETERMINATE = "indeterminate"


def hermitian_g(x: np.ndarray, y: np.ndarray) -> complex:
    """g(X, Y) = (1/2) sum_j X_j conj(Y_j)."""
    return 0.5 * complex(np.sum(np.asarray(x) * np.conj(y)))


@dataclass(frozen=True)
class Classification:
    kind: str  # STRONGLY | WEAKLY | INDETERMINATE
    lambda_min: float
    kernel: tuple[np.ndarray, ...] = ()


@dataclass(frozen=True)
class BoundaryPoint:
    """A point within tolerance of the zero set of rho, with frame data."""

    point: np.ndarray  # complex coordinates, shape (n,)
    rho_value: float
    normal: np.ndarray  # coefficients of N_rho
    tangent_frame: tuple[np.ndarray, ...]
    classification: Classification
    grad_norm: float  # ||grad rho|| = 2 * N rho
    levi: LeviData

    @property
    def n(self) -> int:
        return self.point.shape[0]

    def real_normal(self) -> np.ndarray:
        """Unit outward real normal grad rho / ||grad rho|| in R^{2n} coordinates."""
        # N + conj(N) has real coefficient vector grad rho / ||grad rho||
        h = self.levi.holo_grad
        g = np.empty(2 * self.n)
        g[0::2] = 2.0 * h.real
        g[1::2] = -2.0 * h.imag
        return g / np.linalg.norm(g)

    def kernel_vectors(self) -> tuple[np.ndarray, ...]:
        return self.classification.kernel

    def to_record(self) -> dict:
        """JSON-serializable summary."""
        return {
            "point_re": [float(v) for v in self.point.real],
            "point_im": [float(v) for v in self.point.imag],
            "rho": self.rho_value,
            "grad_norm": self.grad_norm,
            "classification": self.classification.kind,
            "lambda_min": self.classification.lambda_min,
        }


def tangent_frame(holo_grad: np.ndarray) -> tuple[np.ndarray, ...]:
    """Deterministic orthonormal basis of {T : sum T_j holo_grad_j = 0}.

    The frame is Euclidean-orthonormal, i.e. g(T, T) = 1/2 for each member
    (sqrt(2) T is unit for the Hermitian norm used in the metric convention).
    Gram-Schmidt over the standard basis with the conj(holo_grad) direction
    removed, dropping the smallest-norm candidate, ordered by coordinate index.
    """
    n = holo_grad.shape[0]
    s = np.linalg.norm(holo_grad)
    if s == 0.0:
        raise ProjectionError("vanishing gradient: no tangent frame")
    # T rho = 0 means T is Hermitian-orthogonal to conj(holo_grad)
    nu = np.conj(holo_grad) / s
    candidates = []
    for j in range(n):
        e = np.zeros(n, dtype=complex)
        e[j] = 1.0
        v = e - np.vdot(nu, e) * nu
        candidates.append((np.linalg.norm(v), j, v))
    drop = min(candidates, key=lambda c: (c[0], c[1]))[1]
    frame: list[np.ndarray] = []
    for norm_v, j, v in candidates:
        if j == drop:
            continue
        for t in frame:
            v = v - np.vdot(t, v) * t
        nv = np.linalg.norm(v)
        if nv < 1e-13:
            raise ProjectionError("degenerate tangent frame")
        frame.append(v / nv)
    return tuple(frame)


def restricted_levi_matrix(levi: LeviData, frame: Sequence[np.ndarray]) -> np.ndarray:
    """Hermitian (n-1) x (n-1) matrix of the Levi form on the tangent frame."""
    k = len(frame)
    out = np.empty((k, k), dtype=complex)
    for a in range(k):
        for b in range(k):
            out[a, b] = frame[a] @ levi.mixed_hess @ np.conj(frame[b])
    return 0.5 * (out + out.conj().T)


def classify_levi(levi: LeviData, frame: Sequence[np.ndarray], eps_levi: float = 1e-7) -> Classification:
    mat = restricted_levi_matrix(levi, frame)
    vals, vecs = np.linalg.eigh(mat)
    lam_min = float(vals[0])
    if lam_min > eps_levi:
        return Classification(STRONGLY, lam_min)
    kernel = []
    for i, lam in enumerate(vals):
        if abs(lam) <= eps_levi:
            vec = sum(vecs[a, i] * frame[a] for a in range(len(frame)))
            kernel.append(np.asarray(vec))
    if lam_min < -eps_levi:
        return Classification(INDETERMINATE, lam_min, tuple(kernel))
    return Classification(WEAKLY, lam_min, tuple(kernel))


def boundary_point(rho: DefiningFunction, z: Sequence[complex], eps_levi: float = 1e-7) -> BoundaryPoint:
    """Assemble frame data and classification at a point assumed on the boundary."""
    z = np.asarray(z, dtype=complex)
    levi = rho.levi(z)
    h = levi.holo_grad
    s = np.linalg.norm(h)
    if s == 0.0:
        raise ProjectionError(f"vanishing gradient at {z}")
    normal = np.conj(h) / s
    frame = tangent_frame(h)
    cls = classify_levi(levi, frame, eps_levi)
    return BoundaryPoint(
        point=z,
        rho_value=levi.value,
        normal=normal,
        tangent_frame=frame,
        classification=cls,
        grad_norm=2.0 * s,
        levi=levi,
    )


def project_to_boundary(
    rho: DefiningFunction,
    z0: Sequence[complex],
    tol_boundary: float = 1e-12,
    eps_levi: float = 1e-7,
    max_iter: int = 100,
) -> BoundaryPoint:
    """Newton iteration along the real gradient until |rho| <= tol_boundary."""
    x = real_coordinates(np.asarray(z0, dtype=complex))
    for _ in range(max_iter):
        j = rho.jet(x)
        gn2 = float(j.g @ j.g)
        if gn2 < 1e-28:
            raise ProjectionError("vanishing gradient during projection")
        if abs(j.v) <= tol_boundary:
            return boundary_point(rho, x[0::2] + 1j * x[1::2], eps_levi)
        x = x - (j.v / gn2) * j.g
    raise ProjectionError(f"projection did not converge in {max_iter} iterations")


def levi_form(rho: DefiningFunction, z: Sequence[complex], X, Y) -> complex:
    """L_rho(X, Y) at z for coefficient vectors X, Y."""
    levi = rho.levi(np.asarray(z, dtype=complex))
    return complex(np.asarray(X) @ levi.mixed_hess @ np.conj(Y))


def classify(rho: DefiningFunction, z: Sequence[complex], eps_levi: float = 1e-7) -> Classification:
    """Pseudoconvexity classification of the restricted Levi form at z."""
    return boundary_point(rho, z, eps_levi).classification


def extend_tangent(L0: np.ndarray, holo_grad: np.ndarray) -> np.ndarray:
    """Correct L so that sum L_j holo_grad_j = 0 exactly (project out d rho)."""
    h2 = float(np.vdot(holo_grad, holo_grad).real)
    if h2 == 0.0:
        return np.array(L0, copy=True)
    coeff = (L0 @ holo_grad) / h2
    return L0 - coeff * np.conj(holo_grad)


def levi_quadratic_field(rho: DefiningFunction, L0: np.ndarray):
    """z |-> L_rho(L(z), L(z)) with L the projection extension of L0."""

    def field(x: np.ndarray) -> float:
        levi = rho.levi(x[0::2] + 1j * x[1::2])
        L = extend_tangent(L0, levi.holo_grad)
        return float((L @ levi.mixed_hess @ np.conj(L)).real)

    return field


def normal_derivative_levi(
    rho: DefiningFunction,
    p: BoundaryPoint,
    L: Sequence[complex],
    h: float = 1e-3,
    tol: float | None = None,
) -> tuple[float, float]:
    """N L_rho(L, L) at p: half the derivative of the Levi quadratic form
    along the outward unit real normal (the N + conj(N) direction).

    Returns (value, finite-difference error indicator).
    """
    field = levi_quadratic_field(rho, np.asarray(L, dtype=complex))
    x = real_coordinates(p.point)
    d, indicator = normal_third_derivative(field, x, p.real_normal(), h=h, tol=tol)
    return 0.5 * d, 0.5 * indicator
