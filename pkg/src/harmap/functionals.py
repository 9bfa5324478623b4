"""Global functionals of a harmonic map, each with an honest error estimate.

Area function S_f(r) (image area counting multiplicity, against area measure
normalized so the unit disk has area 1), length l_f(r) of the image of the
circle |z| = r, Hardy means M_p(r, f) and the h^p norm, the Bloch seminorm
sup (1-|z|^2) Lambda_f(z), the hyperbolic distance on the disk, and the
two-point Lipschitz ratio.

Conventions
-----------
* Areas are normalized (the identity map has S(r) = r^2); lengths are not.
* Quadrature values report the finer of two resolutions, with the difference
  between the two as ``error_estimate`` (an a-posteriori bound, not a guess).
* Suprema follow one protocol: coarse grid max, then golden-section
  refinement in radius and angle; the gap closed by the last refinement
  stage is the reported error estimate.
* Boundary suprema over 0 < r < 1 use the dyadic ladder 1 - 2^-k, k <= 20,
  plus a Richardson extrapolant from the two finest rungs; the bare ladder
  is ~1e-6 short for functionals still growing at the boundary and the
  extrapolant restores near machine accuracy for polynomial maps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import HarmonicMap, _abs2, wirtinger
from .grids import Grid, QuadratureSpec, gauss_legendre_01, r_ladder

__all__ = [
    "FunctionalValue",
    "SupResult",
    "SERIES",
    "QUADRATURE",
    "GRID_SUP",
    "MONTE_CARLO",
    "area_series",
    "area_sup",
    "area_quadrature",
    "length_function",
    "length_sup",
    "hardy_mean",
    "hardy_norm",
    "bloch_seminorm",
    "bloch_norm",
    "hyperbolic_distance",
    "lipschitz_ratio",
    "golden_max",
    "grid_sup",
]

SERIES = "series"
QUADRATURE = "quadrature"
GRID_SUP = "grid-sup"
MONTE_CARLO = "monte-carlo"

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class FunctionalValue:
    """A computed functional with its method tag and a-posteriori error."""

    value: float
    method: str
    error_estimate: float = 0.0

    def __post_init__(self):
        if self.error_estimate < 0.0:
            raise ValueError("error_estimate must be nonnegative")

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "error_estimate": self.error_estimate,
        }


def _error_floor(value: float) -> float:
    return 8.0 * _EPS * max(1.0, abs(value))


# ---------------------------------------------------------------------------
# Area
# ---------------------------------------------------------------------------


def _area_coeffs(f: HarmonicMap) -> np.ndarray:
    """Series coefficients n (|a_n|^2 - |b_n|^2), n = 1..N."""
    n = np.arange(1, f.degree + 1)
    return n * (_abs2(f._a_arr[1:]) - _abs2(f._b_full[1:]))


def area_series(f: HarmonicMap, r: float) -> FunctionalValue:
    """S_f(r) = sum n (|a_n|^2 - |b_n|^2) r^(2n): exact for polynomial maps."""
    if not 0.0 <= r <= 1.0:
        raise ValueError("r must lie in [0, 1]")
    c = _area_coeffs(f)
    n = np.arange(1, f.degree + 1)
    value = float(np.sum(c * float(r) ** (2 * n)))
    return FunctionalValue(value, SERIES, 0.0)


def area_sup(f: HarmonicMap) -> FunctionalValue:
    """S_f(1) = sup over 0 < r < 1 of S_f(r).

    For coefficient-dominant maps (|b_n| <= |a_n|) every series term is
    nonnegative, S_f is increasing and the series value at r = 1 is the
    supremum. With mixed signs the sup can sit inside, so the maximum of the
    series value and the dyadic-ladder values is returned; overestimating is
    the safe direction for every check that consumes S_f(1).
    """
    c = _area_coeffs(f)
    n = np.arange(1, f.degree + 1)
    s_one = float(np.sum(c))
    ladder = r_ladder()
    s_ladder = (c[None, :] * ladder[:, None] ** (2 * n[None, :])).sum(axis=1)
    return FunctionalValue(max(s_one, float(np.max(s_ladder))), SERIES, 0.0)


def _area_polar(f: HarmonicMap, r: float, n_rad: int, n_ang: int) -> float:
    x, w = gauss_legendre_01(n_rad)
    rho = r * x
    theta = np.linspace(0.0, 2.0 * np.pi, n_ang, endpoint=False)
    z = rho[:, None] * np.exp(1j * theta)[None, :]
    fz, fzbar = wirtinger(f, z)
    jac = _abs2(fz) - _abs2(fzbar)
    # (1/pi) * int_0^{2pi} int_0^r J rho drho dtheta, trapezoid x Gauss-Legendre
    return float((2.0 * r / n_ang) * np.sum((w * rho) @ jac))


def area_quadrature(f: HarmonicMap, r: float, q: QuadratureSpec | None = None) -> FunctionalValue:
    """S_f(r) by direct integration of the Jacobian over the disk of radius r.

    Gauss-Legendre in radius and the uniform trapezoid rule in angle; both
    are exact for polynomial integrands once radial_nodes >= degree, so this
    is an independent oracle for the coefficient series.
    """
    q = q or QuadratureSpec()
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    if q.radial_nodes < f.degree:
        raise ValueError("radial_nodes must be at least the map degree")
    v1 = _area_polar(f, r, q.radial_nodes, q.angular_nodes)
    v2 = _area_polar(f, r, 2 * q.radial_nodes, 2 * q.angular_nodes)
    return FunctionalValue(v2, QUADRATURE, max(abs(v2 - v1), _error_floor(v2)))


# ---------------------------------------------------------------------------
# Length
# ---------------------------------------------------------------------------


def _circle_lengths(f: HarmonicMap, rs, n_ang: int) -> np.ndarray:
    """l_f(r) for an array of radii, by the periodic trapezoid rule."""
    rs = np.atleast_1d(np.asarray(rs, dtype=float))
    theta = np.linspace(0.0, 2.0 * np.pi, n_ang, endpoint=False)
    z = rs[:, None] * np.exp(1j * theta)[None, :]
    fz, fzbar = wirtinger(f, z)
    integrand = np.abs(fz - np.exp(-2j * theta)[None, :] * fzbar)
    return rs * (2.0 * np.pi / n_ang) * integrand.sum(axis=1)


def length_function(f: HarmonicMap, r: float, q: QuadratureSpec | None = None) -> FunctionalValue:
    """Length of the image of |z| = r, counting multiplicity.

    l_f(r) = r * int |f_z - e^{-2 i theta} f_zbar| dtheta. The integrand is
    smooth and periodic so the trapezoid rule converges spectrally; the
    error estimate comes from node doubling.
    """
    q = q or QuadratureSpec()
    if not 0.0 < r <= 1.0 - 1e-9:
        raise ValueError("r must lie in (0, 1 - 1e-9]")
    v1 = float(_circle_lengths(f, r, q.angular_nodes)[0])
    v2 = float(_circle_lengths(f, r, 2 * q.angular_nodes)[0])
    return FunctionalValue(v2, QUADRATURE, max(abs(v2 - v1), _error_floor(v2)))


def length_sup(f: HarmonicMap, q: QuadratureSpec | None = None) -> FunctionalValue:
    """l_f(1) = sup over 0 < r < 1 of l_f(r), via the ladder plus endpoint
    extrapolation from the two finest rungs."""
    q = q or QuadratureSpec()
    rs = r_ladder()
    coarse = _circle_lengths(f, rs, q.angular_nodes)
    fine = _circle_lengths(f, rs, 2 * q.angular_nodes)
    # Richardson in the boundary gap h = 2^-k (halves per rung):
    # l(1) ~= 2 l_K - l_{K-1} with O(h^2) error, bounded by consecutive
    # extrapolant difference.
    extrap = 2.0 * fine[-1] - fine[-2]
    extrap_prev = 2.0 * fine[-2] - fine[-3]
    value = max(float(np.max(fine)), float(extrap))
    err = max(
        float(np.max(np.abs(fine - coarse))),
        abs(float(extrap - extrap_prev)),
        _error_floor(value),
    )
    return FunctionalValue(value, QUADRATURE, err)


# ---------------------------------------------------------------------------
# Hardy means
# ---------------------------------------------------------------------------


def _circle_pmeans(f: HarmonicMap, rs, p: float, n_ang: int) -> np.ndarray:
    rs = np.atleast_1d(np.asarray(rs, dtype=float))
    theta = np.linspace(0.0, 2.0 * np.pi, n_ang, endpoint=False)
    z = rs[:, None] * np.exp(1j * theta)[None, :]
    vals = np.abs(f(z))
    return np.mean(vals**p, axis=1) ** (1.0 / p)


def hardy_mean(f: HarmonicMap, p: float, r: float, q: QuadratureSpec | None = None) -> FunctionalValue:
    """Integral mean M_p(r, f); for p = inf, the maximum of |f| on |z| = r."""
    q = q or QuadratureSpec()
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    if p != math.inf and not p > 0.0:
        raise ValueError("p must be positive or inf")
    if p == math.inf:
        theta = np.linspace(0.0, 2.0 * np.pi, 4 * q.angular_nodes, endpoint=False)
        vals = np.abs(f(r * np.exp(1j * theta)))
        j = int(np.argmax(vals))
        dt = theta[1] - theta[0]
        v, _ = golden_max(
            lambda t: abs(f(r * cmath.exp(1j * t))), theta[j] - dt, theta[j] + dt
        )
        v = max(v, float(vals[j]))
        return FunctionalValue(v, GRID_SUP, max(v - float(vals[j]), _error_floor(v)))
    v1 = float(_circle_pmeans(f, r, p, q.angular_nodes)[0])
    v2 = float(_circle_pmeans(f, r, p, 2 * q.angular_nodes)[0])
    return FunctionalValue(v2, QUADRATURE, max(abs(v2 - v1), _error_floor(v2)))


def hardy_norm(
    f: HarmonicMap,
    p: float,
    q: QuadratureSpec | None = None,
    grid: Grid | None = None,
) -> FunctionalValue:
    """h^p norm: sup of M_p over the radius ladder (sup of |f| when p = inf)."""
    q = q or QuadratureSpec()
    if p == math.inf:
        rs = r_ladder()
        vals = np.array([hardy_mean(f, p, float(r), q).value for r in rs])
        extrap = 2.0 * vals[-1] - vals[-2]
        extrap_prev = 2.0 * vals[-2] - vals[-3]
        value = max(float(np.max(vals)), float(extrap))
        err = max(abs(float(extrap - extrap_prev)), _error_floor(value))
        return FunctionalValue(value, GRID_SUP, err)
    if not p > 0.0:
        raise ValueError("p must be positive or inf")
    rs = r_ladder()
    coarse = _circle_pmeans(f, rs, p, q.angular_nodes)
    fine = _circle_pmeans(f, rs, p, 2 * q.angular_nodes)
    extrap = 2.0 * fine[-1] - fine[-2]
    extrap_prev = 2.0 * fine[-2] - fine[-3]
    value = max(float(np.max(fine)), float(extrap))
    err = max(
        float(np.max(np.abs(fine - coarse))),
        abs(float(extrap - extrap_prev)),
        _error_floor(value),
    )
    return FunctionalValue(value, QUADRATURE, err)


# ---------------------------------------------------------------------------
# Sup-estimation protocol
# ---------------------------------------------------------------------------

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def golden_max(fn, a: float, b: float, tol: float = 1e-10) -> tuple[float, float]:
    """Golden-section maximization of a scalar function on [a, b].

    Returns (value, argmax). Intended for local polishing after a coarse
    grid scan, where the bracket contains a single interior extremum.
    """
    if b < a:
        a, b = b, a
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return fn(x), x
    n = int(math.ceil(math.log(tol / h) / math.log(_INV_PHI)))
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    yc = fn(c)
    yd = fn(d)
    for _ in range(n - 1):
        h *= _INV_PHI
        if yc > yd:
            b, d, yd = d, c, yc
            c = a + _INV_PHI2 * h
            yc = fn(c)
        else:
            a, c, yc = c, d, yd
            d = a + _INV_PHI * h
            yd = fn(d)
    return (yc, c) if yc > yd else (yd, d)


@dataclass(frozen=True)
class SupResult:
    value: float
    argmax: complex
    error_estimate: float


def grid_sup(fn, grid: Grid | None = None, include_origin: bool = True) -> SupResult:
    """Estimate sup of fn over the disk covered by the grid.

    fn must accept a complex ndarray and return a real array of the same
    shape. Protocol: coarse tensor-grid max; golden-section refinement in
    radius at the best angle; then in angle; then in radius again. The value
    gained by the final stage is reported as the error estimate.
    """
    grid = grid or Grid()
    nodes = grid.nodes
    vals = np.asarray(fn(nodes), dtype=float)
    k = int(np.argmax(vals))
    i, j = divmod(k, grid.n_theta)
    radii = grid.radii
    best_v = float(vals[i, j])
    best_r = float(radii[i])
    best_t = float(grid.angles[j])
    if include_origin:
        v0 = float(np.asarray(fn(np.zeros(1, dtype=complex)))[0])
        if v0 > best_v:
            best_v, best_r, best_t, i = v0, 0.0, 0.0, -1

    def at(r: float, t: float) -> float:
        return float(np.asarray(fn(np.asarray([r * cmath.exp(1j * t)])))[0])

    if i < 0:
        lo, hi = 0.0, float(radii[0])
    else:
        lo = 0.0 if i == 0 else float(radii[i - 1])
        hi = grid.r_max if i >= grid.n_r - 1 else float(radii[i + 1])

    v1, r1 = golden_max(lambda r: at(r, best_t), lo, hi)
    if v1 > best_v:
        best_v, best_r = v1, r1
    stage1 = best_v

    dt = float(grid.angles[1] - grid.angles[0]) if grid.n_theta > 1 else math.pi
    v2, t2 = golden_max(lambda t: at(best_r, t), best_t - dt, best_t + dt)
    if v2 > best_v:
        best_v, best_t = v2, t2
    stage2 = best_v

    v3, r3 = golden_max(lambda r: at(r, best_t), lo, hi)
    if v3 > best_v:
        best_v, best_r = v3, r3

    err = max(best_v - stage2, stage2 - stage1, _error_floor(best_v))
    return SupResult(
        value=best_v,
        argmax=complex(best_r * cmath.exp(1j * best_t)),
        error_estimate=err,
    )


# ---------------------------------------------------------------------------
# Bloch seminorm and the hyperbolic metric
# ---------------------------------------------------------------------------


def bloch_seminorm(f: HarmonicMap, grid: Grid | None = None) -> FunctionalValue:
    """sup over the disk of (1 - |z|^2) Lambda_f(z)."""

    def ratio(z: np.ndarray) -> np.ndarray:
        fz, fzbar = wirtinger(f, z)
        return (1.0 - _abs2(z)) * (np.abs(fz) + np.abs(fzbar))

    res = grid_sup(ratio, grid or Grid())
    return FunctionalValue(res.value, GRID_SUP, res.error_estimate)


def bloch_norm(f: HarmonicMap, grid: Grid | None = None) -> FunctionalValue:
    """|f(0)| plus the Bloch seminorm."""
    semi = bloch_seminorm(f, grid)
    return FunctionalValue(abs(f(0j)) + semi.value, GRID_SUP, semi.error_estimate)


def hyperbolic_distance(z: complex, w: complex) -> float:
    """arctanh of the pseudo-hyperbolic distance |(z - w) / (1 - conj(z) w)|."""
    z, w = complex(z), complex(w)
    for v in (z, w):
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValueError("non-finite input")
    if abs(z) >= 1.0 or abs(w) >= 1.0:
        raise ValueError("both points must lie strictly inside the unit disk")
    return math.atanh(abs((z - w) / (1.0 - z.conjugate() * w)))


def lipschitz_ratio(f: HarmonicMap, z: complex, w: complex) -> float:
    """|f(z) - f(w)| / rho(z, w); never exceeds the Bloch seminorm."""
    z, w = complex(z), complex(w)
    if z == w:
        raise ValueError("points must be distinct")
    return abs(f(z) - f(w)) / hyperbolic_distance(z, w)
