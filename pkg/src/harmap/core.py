"""Truncated-series harmonic maps and their pointwise distortion data.

A planar harmonic map on the unit disk splits as f = h + conj(g) with h, g
analytic. We store the Taylor coefficients of both parts:

    f(z) = sum_{n=0}^{N} a_n z^n  +  sum_{n=1}^{N} conj(b_n) conj(z)^n,

so h has coefficients a_0..a_N and g has b_1..b_N (g(0) = 0). The Wirtinger
derivatives are f_z = h' and f_zbar = conj(g'); from them come the extreme
directional stretches Lambda = |f_z| + |f_zbar| and lambda = ||f_z| - |f_zbar||,
the Jacobian |f_z|^2 - |f_zbar|^2, and the modulus of the second complex
dilatation |f_zbar| / |f_z|.

Everything here is pure and all types are immutable after construction, so
instances are safe to share across threads. Grid reductions go through
numpy's pairwise summation on fixed-shape arrays, which makes results
independent of evaluation order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
from numpy.polynomial import polynomial as npoly

from .grids import Grid

__all__ = [
    "HarmonicMap",
    "PointwiseData",
    "SensePreservation",
    "wirtinger",
    "derivatives",
    "is_sense_preserving",
    "qc_constant",
    "coeff_from_contour",
    "directional_derivative_max",
    "map_json_bytes",
    "load_map",
    "save_map",
    "LAMBDA_FLOOR",
]

# Below this, the ratio Lambda/lambda is beyond double-precision resolution
# and the distortion constant is reported as unbounded.
LAMBDA_FLOOR = 1e-14


def _require_finite(z: np.ndarray) -> None:
    if not np.all(np.isfinite(z)):
        raise ValueError("non-finite input")


@dataclass(frozen=True)
class HarmonicMap:
    """Coefficients (a_0..a_N, b_1..b_N) of f = h + conj(g), degree N >= 1.

    ``a`` and ``b`` are stored as tuples of complex numbers; ``b`` holds one
    entry per positive degree (index n corresponds to b_{n+1}). All
    coefficients must be finite. Instances are hashable and compare by value.
    """

    a: tuple
    b: tuple

    def __post_init__(self):
        a = tuple(complex(v) for v in self.a)
        b = tuple(complex(v) for v in self.b)
        if len(a) < 2:
            raise ValueError("need coefficients a_0..a_N with N >= 1")
        if len(b) != len(a) - 1:
            raise ValueError("b must hold b_1..b_N, one entry per positive degree")
        for v in (*a, *b):
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError("coefficients must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def degree(self) -> int:
        return len(self.a) - 1

    # -- cached coefficient arrays ------------------------------------------

    @cached_property
    def _a_arr(self) -> np.ndarray:
        arr = np.asarray(self.a, dtype=complex)
        arr.flags.writeable = False
        return arr

    @cached_property
    def _b_full(self) -> np.ndarray:
        """b as a polynomial coefficient array with b_0 = 0, length N+1."""
        arr = np.concatenate(([0.0 + 0.0j], np.asarray(self.b, dtype=complex)))
        arr.flags.writeable = False
        return arr

    @cached_property
    def _da(self) -> np.ndarray:
        """Coefficients of h': (n+1) a_{n+1}, length N."""
        n = np.arange(1, self.degree + 1)
        arr = n * self._a_arr[1:]
        arr.flags.writeable = False
        return arr

    @cached_property
    def _db(self) -> np.ndarray:
        """Coefficients of g': (n+1) b_{n+1}, length N."""
        n = np.arange(1, self.degree + 1)
        arr = n * self._b_full[1:]
        arr.flags.writeable = False
        return arr

    # -- evaluation ----------------------------------------------------------

    def __call__(self, z):
        """Evaluate f(z) by Horner recurrences in z and conj(z).

        ``z`` may be a complex scalar or ndarray with |z| <= 1; only
        finiteness is enforced (polynomials extend continuously to the
        closed disk). Returns a value of matching shape.
        """
        zz = np.asarray(z, dtype=complex)
        _require_finite(zz)
        out = npoly.polyval(zz, self._a_arr) + np.conjugate(
            npoly.polyval(zz, self._b_full)
        )
        if zz.ndim == 0:
            return complex(out)
        return out

    def scaled(self, c: float) -> "HarmonicMap":
        """The map c*f for a real factor c (scales both analytic parts)."""
        c = float(c)
        return HarmonicMap(
            a=tuple(c * v for v in self.a), b=tuple(c * v for v in self.b)
        )

    # -- wire format ----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "a": [[v.real, v.imag] for v in self.a],
            "b": [[v.real, v.imag] for v in self.b],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "HarmonicMap":
        try:
            a = [complex(p[0], p[1]) for p in obj["a"]]
            b = [complex(p[0], p[1]) for p in obj["b"]]
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed map object: {exc}") from exc
        return cls(a=tuple(a), b=tuple(b))


def map_json_bytes(f: HarmonicMap) -> bytes:
    """Canonical single-line JSON encoding of a map, newline-terminated.

    Floats are rendered with Python's shortest round-trip representation, so
    load -> dump is byte-identical.
    """
    return (json.dumps(f.to_json_dict()) + "\n").encode("ascii")


def load_map(path) -> HarmonicMap:
    with open(path, "r", encoding="ascii") as fh:
        return HarmonicMap.from_json_dict(json.load(fh))


def save_map(f: HarmonicMap, path) -> None:
    Path(path).write_bytes(map_json_bytes(f))


# ---------------------------------------------------------------------------
# Pointwise quantities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointwiseData:
    """Wirtinger derivatives and distortion quantities at a single point."""

    fz: complex
    fzbar: complex
    max_stretch: float  # |f_z| + |f_zbar|
    min_stretch: float  # | |f_z| - |f_zbar| |
    jacobian: float  # |f_z|^2 - |f_zbar|^2
    dilatation_modulus: float | None  # |f_zbar| / |f_z|; None when f_z = 0


def wirtinger(f: HarmonicMap, z):
    """Vectorized derivative fields (f_z, f_zbar) = (h'(z), conj(g'(z)))."""
    zz = np.asarray(z, dtype=complex)
    _require_finite(zz)
    fz = npoly.polyval(zz, f._da)
    fzbar = np.conjugate(npoly.polyval(zz, f._db))
    if zz.ndim == 0:
        return complex(fz), complex(fzbar)
    return fz, fzbar


def derivatives(f: HarmonicMap, z: complex) -> PointwiseData:
    """All pointwise distortion data of f at z."""
    fz, fzbar = wirtinger(f, complex(z))
    m1, m2 = abs(fz), abs(fzbar)
    return PointwiseData(
        fz=fz,
        fzbar=fzbar,
        max_stretch=m1 + m2,
        min_stretch=abs(m1 - m2),
        jacobian=m1 * m1 - m2 * m2,
        dilatation_modulus=(m2 / m1) if m1 > 0.0 else None,
    )


def _abs2(w: np.ndarray) -> np.ndarray:
    return w.real * w.real + w.imag * w.imag


def max_stretch(f: HarmonicMap, z):
    """Vectorized Lambda_f(z) = |f_z| + |f_zbar|."""
    fz, fzbar = wirtinger(f, z)
    return np.abs(fz) + np.abs(fzbar)


@dataclass(frozen=True)
class SensePreservation:
    """Outcome of a Jacobian positivity scan with its worst grid node."""

    ok: bool
    min_jacobian: float
    witness: complex


def is_sense_preserving(f: HarmonicMap, grid: Grid | None = None, tol: float = 0.0) -> SensePreservation:
    """True iff the Jacobian exceeds tol at every node of the grid."""
    grid = grid or Grid()
    nodes = grid.nodes
    if nodes.size == 0:
        raise ValueError("empty grid")
    fz, fzbar = wirtinger(f, nodes)
    jac = (_abs2(fz) - _abs2(fzbar)).ravel()
    k = int(np.argmin(jac))
    return SensePreservation(
        ok=bool(jac[k] > tol),
        min_jacobian=float(jac[k]),
        witness=complex(nodes.ravel()[k]),
    )


def qc_constant(f: HarmonicMap, grid: Grid | None = None) -> float:
    """Distortion constant: the grid maximum of Lambda / lambda.

    Returns math.inf when lambda drops below LAMBDA_FLOOR anywhere (the
    ratio is then beyond double-precision resolution). Raises ValueError if
    the map is sense-reversing on the grid while lambda stays resolvable,
    since the constant is then meaningless.
    """
    grid = grid or Grid()
    fz, fzbar = wirtinger(f, grid.nodes)
    m1, m2 = np.abs(fz), np.abs(fzbar)
    lam = np.abs(m1 - m2)
    if np.any(lam < LAMBDA_FLOOR):
        return math.inf
    if np.any(m1 <= m2):
        raise ValueError("map is sense-reversing on the grid; no distortion constant")
    return float(np.max((m1 + m2) / lam))


def coeff_from_contour(f: HarmonicMap, n: int, r: float, m: int) -> tuple[complex, complex]:
    """Recover (a_n, b_n) from circle integrals of the derivative fields.

    n a_n and n b_n are the means over |z| = r of f_z(z) z^(1-n) and of
    conj(f_zbar(z)) z^(1-n); the trapezoid rule on m uniform nodes evaluates
    both exactly (up to rounding) once m clears the aliasing threshold. This
    path goes through pointwise evaluation only, so it serves as an oracle
    for the stored coefficients.
    """
    if not 1 <= n <= f.degree:
        raise ValueError("n must lie in 1..N")
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    if m < 4 * f.degree:
        raise ValueError("m must be at least 4N contour nodes")
    theta = np.linspace(0.0, 2.0 * np.pi, m, endpoint=False)
    z = r * np.exp(1j * theta)
    fz, fzbar = wirtinger(f, z)
    w = z ** (1 - n)
    a_n = complex(np.mean(fz * w) / n)
    b_n = complex(np.mean(np.conjugate(fzbar) * w) / n)
    return a_n, b_n


_DIRECTION_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _directions(n_theta: int) -> tuple[np.ndarray, np.ndarray]:
    if n_theta not in _DIRECTION_CACHE:
        t = np.linspace(0.0, 2.0 * np.pi, n_theta, endpoint=False)
        _DIRECTION_CACHE[n_theta] = (np.cos(t), np.sin(t))
    return _DIRECTION_CACHE[n_theta]


def directional_derivative_max(
    f: HarmonicMap, z: complex, n_theta: int = 4096, step: float = 1e-6
) -> float:
    """Grid maximum over directions of |f_x cos t + f_y sin t|.

    The partials f_x, f_y are central finite differences of the map itself,
    so this estimates the maximal directional stretch without touching the
    analytic derivative path; it should reproduce Lambda_f(z).
    """
    z = complex(z)
    fx = (f(z + step) - f(z - step)) / (2.0 * step)
    fy = (f(z + 1j * step) - f(z - 1j * step)) / (2.0 * step)
    c, s = _directions(n_theta)
    return float(np.max(np.abs(fx * c + fy * s)))
