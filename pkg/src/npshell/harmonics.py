"""Scalar and vector spherical harmonics on spheres.

Provides orthonormal complex spherical harmonics (Condon-Shortley phase),
their surface gradients, and the three orthogonal vector-harmonic families
T/M/N that diagonalize the elastostatic Neumann-Poincare operator, in both
solid (volume) and trace (surface) form.

All evaluation is Cartesian-ladder based so it is well defined on the polar
axis; no 1/sin(theta) formulas are used on the hot paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

import numpy as np

if TYPE_CHECKING:  # pragma: no cover
    from .kelvin import LameParams

FAMILIES = ("T", "M", "N")
_FAMILY_RANK = {"T": 0, "M": 1, "N": 2}


class SingularParameterError(ValueError):
    """Material parameters make a required denominator vanish."""


@dataclass(frozen=True)
class ModeIndex:
    """Address of one vector spherical harmonic: (family, degree n, order m).

    Families T and M use Y_n (|m| <= n).  Family N is indexed by its own
    subscript n but its trace involves Y_{n-1}, so |m| <= n - 1.
    """

    family: str
    n: int
    m: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if self.n < 1:
            raise ValueError(f"degree must be >= 1, got n={self.n}")
        mmax = self.n - 1 if self.family == "N" else self.n
        if abs(self.m) > mmax:
            raise ValueError(
                f"order m={self.m} out of range for family {self.family}, n={self.n} "
                f"(|m| <= {mmax})"
            )

    @property
    def sort_key(self) -> tuple:
        return (_FAMILY_RANK[self.family], self.n, self.m)

    @property
    def scalar_degree(self) -> int:
        """Degree of the scalar harmonic appearing in the trace."""
        return self.n - 1 if self.family == "N" else self.n


@dataclass(frozen=True)
class SurfacePoint:
    """Point on an origin-centered sphere, colatitude/azimuth plus radius."""

    theta: float
    phi: float
    radius: float = 1.0

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    @property
    def unit_normal(self) -> np.ndarray:
        st, ct = math.sin(self.theta), math.cos(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), ct])

    @property
    def position(self) -> np.ndarray:
        return self.radius * self.unit_normal


def mode_indices(n_max: int, families: Iterable[str] = FAMILIES) -> list[ModeIndex]:
    """All valid modes up to degree n_max, in deterministic (family, n, m) order."""
    out = []
    for fam in families:
        for n in range(1, n_max + 1):
            mmax = n - 1 if fam == "N" else n
            for m in range(-mmax, mmax + 1):
                out.append(ModeIndex(fam, n, m))
    return out


# ---------------------------------------------------------------------------
# scalar harmonics
# ---------------------------------------------------------------------------

def _norm_legendre(n: int, m: int, ct: np.ndarray, st: np.ndarray) -> np.ndarray:
    """Fully normalized associated Legendre P~_n^m for m >= 0.

    Normalized so that Y_n^m = P~_n^m(cos theta) exp(i m phi) is orthonormal
    on the sphere; Condon-Shortley phase included.  Upward three-term
    recurrence in the degree with prenormalized coefficients (stable to
    n of a few hundred).
    """
    pmm = np.full_like(ct, 1.0 / math.sqrt(4.0 * math.pi))
    for k in range(1, m + 1):
        pmm = -math.sqrt((2 * k + 1) / (2.0 * k)) * st * pmm
    if n == m:
        return pmm
    pk1 = math.sqrt(2 * m + 3.0) * ct * pmm
    if n == m + 1:
        return pk1
    pk2 = pmm
    for k in range(m + 2, n + 1):
        a = math.sqrt((4.0 * k * k - 1.0) / (k * k - m * m))
        b = math.sqrt(((k - 1.0) ** 2 - m * m) / (4.0 * (k - 1.0) ** 2 - 1.0))
        pk2, pk1 = pk1, a * (ct * pk1 - b * pk2)
    return pk1


def eval_ylm(n: int, m: int, theta, phi) -> np.ndarray:
    """Orthonormal complex spherical harmonic Y_n^m(theta, phi).

    Condon-Shortley phase; Y_n^{-m} = (-1)^m conj(Y_n^m).
    """
    if n < 0 or abs(m) > n:
        raise ValueError(f"invalid spherical-harmonic index (n={n}, m={m})")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    p = _norm_legendre(n, abs(m), np.cos(theta), np.sin(theta))
    val = p * np.exp(1j * m * phi)
    if m < 0 and m % 2:
        val = -val
    return val


def _cartesian_angles(xyz: np.ndarray):
    """(r, theta, phi) from points of shape (..., 3); phi = 0 on the axis."""
    xyz = np.asarray(xyz, dtype=float)
    r = np.linalg.norm(xyz, axis=-1)
    safe = np.where(r > 0, r, 1.0)
    ct = np.clip(xyz[..., 2] / safe, -1.0, 1.0)
    theta = np.arccos(ct)
    phi = np.arctan2(xyz[..., 1], xyz[..., 0])
    return r, theta, phi


def solid_harmonic(n: int, m: int, xyz) -> np.ndarray:
    """Regular solid harmonic r^n Y_n^m at Cartesian points (..., 3)."""
    r, theta, phi = _cartesian_angles(xyz)
    return r**n * eval_ylm(n, m, theta, phi)


def irregular_solid_harmonic(n: int, m: int, xyz) -> np.ndarray:
    """Decaying solid harmonic Y_n^m / r^(n+1); requires r > 0."""
    r, theta, phi = _cartesian_angles(xyz)
    if np.any(r == 0):
        raise ValueError("irregular solid harmonic is singular at the origin")
    return eval_ylm(n, m, theta, phi) / r ** (n + 1)


# ---------------------------------------------------------------------------
# Cartesian gradient ladders (pole-safe)
# ---------------------------------------------------------------------------
# d/dx_d (r^n Y_n^m) is a combination of r^{n-1} Y_{n-1}^{m'} with m' in
# {m-1, m, m+1}; the coefficients below are the standard ladder weights for
# the orthonormal Condon-Shortley convention.  They are pinned against finite
# differences in the test suite.

def _ladder_weights_regular(n: int, m: int) -> dict:
    if n < 1:
        return {0: {}, 1: {}, 2: {}}
    c = math.sqrt((2 * n + 1) / (2 * n - 1.0))
    a = c * math.sqrt(max((n - m) * (n + m), 0))
    b = c * math.sqrt(max((n - m) * (n - m - 1), 0))
    cc = -c * math.sqrt(max((n + m) * (n + m - 1), 0))
    return {
        0: {+1: b / 2.0, -1: cc / 2.0},
        1: {+1: -0.5j * b, -1: 0.5j * cc},
        2: {0: a},
    }


def _ladder_weights_irregular(n: int, m: int) -> dict:
    c = math.sqrt((2 * n + 1) / (2 * n + 3.0))
    a = -c * math.sqrt((n + 1 - m) * (n + 1 + m))
    b = c * math.sqrt((n + m + 1) * (n + m + 2))
    cc = -c * math.sqrt((n - m + 1) * (n - m + 2))
    return {
        0: {+1: b / 2.0, -1: cc / 2.0},
        1: {+1: -0.5j * b, -1: 0.5j * cc},
        2: {0: a},
    }


def grad_solid_harmonic(n: int, m: int, xyz) -> np.ndarray:
    """Cartesian gradient of r^n Y_n^m, shape (..., 3); entire in x."""
    xyz = np.asarray(xyz, dtype=float)
    out = np.zeros(xyz.shape, dtype=complex)
    if n < 1:
        return out
    w = _ladder_weights_regular(n, m)
    cache = {}
    for d in range(3):
        for shift, coeff in w[d].items():
            if coeff == 0 or abs(m + shift) > n - 1:
                continue
            if shift not in cache:
                cache[shift] = solid_harmonic(n - 1, m + shift, xyz)
            out[..., d] += coeff * cache[shift]
    return out


def grad_irregular_solid_harmonic(n: int, m: int, xyz) -> np.ndarray:
    """Cartesian gradient of Y_n^m / r^(n+1), shape (..., 3); r > 0."""
    xyz = np.asarray(xyz, dtype=float)
    out = np.zeros(xyz.shape, dtype=complex)
    w = _ladder_weights_irregular(n, m)
    cache = {}
    for d in range(3):
        for shift, coeff in w[d].items():
            if coeff == 0:
                continue
            if shift not in cache:
                cache[shift] = irregular_solid_harmonic(n + 1, m + shift, xyz)
            out[..., d] += coeff * cache[shift]
    return out


def hess_solid_harmonic(n: int, m: int, xyz) -> np.ndarray:
    """Hessian of r^n Y_n^m, shape (..., 3, 3); traceless and symmetric."""
    xyz = np.asarray(xyz, dtype=float)
    out = np.zeros(xyz.shape + (3,), dtype=complex)
    if n < 2:
        return out
    w1 = _ladder_weights_regular(n, m)
    cache = {}
    for j in range(3):
        for s1, c1 in w1[j].items():
            if c1 == 0 or abs(m + s1) > n - 1:
                continue
            w2 = _ladder_weights_regular(n - 1, m + s1)
            for i in range(3):
                for s2, c2 in w2[i].items():
                    mm = m + s1 + s2
                    if c2 == 0 or abs(mm) > n - 2:
                        continue
                    key = mm
                    if key not in cache:
                        cache[key] = solid_harmonic(n - 2, mm, xyz)
                    out[..., i, j] += c1 * c2 * cache[key]
    return out


def hess_irregular_solid_harmonic(n: int, m: int, xyz) -> np.ndarray:
    """Hessian of Y_n^m / r^(n+1), shape (..., 3, 3); r > 0."""
    xyz = np.asarray(xyz, dtype=float)
    out = np.zeros(xyz.shape + (3,), dtype=complex)
    w1 = _ladder_weights_irregular(n, m)
    cache = {}
    for j in range(3):
        for s1, c1 in w1[j].items():
            w2 = _ladder_weights_irregular(n + 1, m + s1)
            for i in range(3):
                for s2, c2 in w2[i].items():
                    mm = m + s1 + s2
                    if mm not in cache:
                        cache[mm] = irregular_solid_harmonic(n + 2, mm, xyz)
                    out[..., i, j] += c1 * c2 * cache[mm]
    return out


def surface_gradient_ylm(n: int, m: int, theta, phi) -> np.ndarray:
    """Surface gradient of Y_n^m on the unit sphere, tangential (..., 3).

    Computed as grad(r^n Y_n^m) - n Y_n^m nu restricted to r = 1, which is
    finite on the polar axis.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    nu = _unit_vectors(theta, phi)
    g = grad_solid_harmonic(n, m, nu)
    y = eval_ylm(n, m, theta, phi)
    return g - n * y[..., None] * nu


def _unit_vectors(theta, phi) -> np.ndarray:
    st, ct = np.sin(theta), np.cos(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), ct], axis=-1)


# ---------------------------------------------------------------------------
# vector harmonic families
# ---------------------------------------------------------------------------

def a_coeff(n: int, lame: "LameParams") -> complex:
    """Radial-mixing coefficient of the N family.

    (2(n-1) lam + 2(3n-2) mu) / ((n+2) lam + (n+4) mu); independent of the
    order m.  Complex Lame parameters pass through unchanged.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    den = (n + 2) * lame.lam + (n + 4) * lame.mu
    if den == 0:
        raise SingularParameterError(f"a_coeff denominator vanishes at n={n}")
    num = 2 * (n - 1) * lame.lam + 2 * (3 * n - 2) * lame.mu
    val = num / den
    return complex(val) if isinstance(val, complex) else float(val)


def eval_solid_mode(idx: ModeIndex, lame: "LameParams", xyz) -> np.ndarray:
    """Solid (volume) vector harmonic at Cartesian points (..., 3).

    T_n^m = grad(r^n Y_n^m) x x        (rotational, divergence free)
    M_n^m = grad(r^n Y_n^m)            (irrotational, divergence free)
    N_n^m = a_n r^{n-1} Y_{n-1}^m x + (1 - a_n/(2n-1) - r^2) grad(r^{n-1} Y_{n-1}^m)

    All three solve the homogeneous Lame system; T and M do not depend on
    the material.
    """
    xyz = np.asarray(xyz, dtype=float)
    n, m = idx.n, idx.m
    if idx.family == "T":
        return np.cross(grad_solid_harmonic(n, m, xyz), xyz)
    if idx.family == "M":
        return grad_solid_harmonic(n, m, xyz)
    a = a_coeff(n, lame)
    r2 = np.sum(xyz * xyz, axis=-1)
    y = solid_harmonic(n - 1, m, xyz)
    g = grad_solid_harmonic(n - 1, m, xyz)
    return a * y[..., None] * xyz + (1.0 - a / (2 * n - 1) - r2)[..., None] * g


def eval_trace_mode(idx: ModeIndex, lame: "LameParams", theta, phi) -> np.ndarray:
    """Unit-sphere trace of the vector harmonic, as an angular field (..., 3).

    T_n^m = grad_S Y_n^m x nu
    M_n^m = grad_S Y_n^m + n Y_n^m nu
    N_n^m = (a_n/(2n-1)) (-grad_S Y_{n-1}^m + n Y_{n-1}^m nu)
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    nu = _unit_vectors(theta, phi)
    n, m = idx.n, idx.m
    if idx.family == "T":
        return np.cross(grad_solid_harmonic(n, m, nu), nu)
    if idx.family == "M":
        return grad_solid_harmonic(n, m, nu)
    a = a_coeff(n, lame)
    y = eval_ylm(n - 1, m, theta, phi)
    g = grad_solid_harmonic(n - 1, m, nu)
    return (a / (2 * n - 1)) * (-g + (2 * n - 1) * y[..., None] * nu)


def trace_mode_norm_sq(idx: ModeIndex, lame: "LameParams") -> float:
    """Exact L^2(S)^3 norm squared of a trace mode on the unit sphere."""
    n = idx.n
    if idx.family == "T":
        return float(n * (n + 1))
    if idx.family == "M":
        return float(n * (2 * n + 1))
    a = a_coeff(n, lame)
    return abs(a) ** 2 * n / (2 * n - 1)


def gram_matrix(n_max: int, lame: "LameParams", rule) -> tuple[np.ndarray, list[ModeIndex]]:
    """Gram matrix of all trace modes up to degree n_max, by surface quadrature.

    `rule` must provide surface_nodes(radius) -> (points, weights); the rule
    should integrate polynomial products of degree 2*n_max exactly (warns
    otherwise).  Returns (G, modes) with the Hermitian matrix G ordered like
    `modes`.
    """
    if getattr(rule, "n_theta", n_max + 1) <= n_max:
        import warnings

        warnings.warn(
            f"quadrature rule with n_theta={rule.n_theta} is not exact for "
            f"mode products up to degree {2 * n_max}",
            RuntimeWarning,
            stacklevel=2,
        )
    modes = mode_indices(n_max)
    pts, w = rule.surface_nodes(1.0)
    _, theta, phi = _cartesian_angles(pts)
    vals = np.stack([eval_trace_mode(idx, lame, theta, phi) for idx in modes])
    # G[a, b] = sum_k w_k <mode_a(k), conj mode_b(k)>
    gram = np.einsum("kai,lai,a->kl", vals, vals.conj(), w)
    return gram, modes
