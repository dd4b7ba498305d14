"""Intertwining measures, the deformed exponential kernel, and weight functions.

The rank-one measure nu_x has the explicit Beta-type density
c (1+t)(1-t^2)^(kappa-1) dt on eta = x t, t in [-1, 1]; product groups take
coordinatewise products.  The kernel E(x, y) is the joint eigenfunction of the
deformed derivatives normalized to E(0, y) = 1, available through three
independent computations (power series, measure quadrature, Bessel closed
form) that cross-validate each other.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as sgamma, ive, jv, roots_jacobi

from .errors import CapabilityError, InputError, RangeError
from .reflection import Z2_PRODUCT, ReflectionGroup, RootSystem, canonical_rep

SERIES_BOUND = 200.0


@dataclass(frozen=True)
class OrbitMeasureQuad:
    """Discretized intertwining measure: probability nodes inside conv(G.x)."""

    base_point: np.ndarray
    nodes: np.ndarray  # shape (n, d)
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if abs(w.sum() - 1.0) > 1e-10:
            raise InputError("measure weights must sum to 1")
        if np.any(w < -1e-14):
            raise InputError("measure weights must be nonnegative")
        x = np.abs(np.asarray(self.base_point, dtype=float))
        if np.any(np.abs(self.nodes) > x[None, :] + 1e-10):
            raise InputError("nodes must lie in the convex hull of the orbit")


@dataclass(frozen=True)
class PhiEvaluation:
    value: float
    base: np.ndarray
    argument: np.ndarray
    lam: float
    clamped: int = 0  # count of radicand round-off clamps

    def __post_init__(self):
        if self.value < math.e ** self.lam - 1e-9:
            raise InputError("phi value below its analytic floor e^lambda")


def term_factor(n: int, kappa: float) -> float:
    """Recursion denominator for the rank-one series: n, shifted on odd n."""
    return n + 2.0 * kappa * (n % 2)


def series_coefficients(kappa: float, nmax: int = 220) -> np.ndarray:
    b = np.empty(nmax + 1)
    b[0] = 1.0
    for n in range(1, nmax + 1):
        b[n] = b[n - 1] / term_factor(n, kappa)
    return b


def kernel_series_1d(s, kappa: float) -> np.ndarray:
    """Rank-one kernel E(x, y) as a function of s = x y, by power series."""
    s = np.asarray(s, dtype=float)
    if np.any(np.abs(s) > SERIES_BOUND):
        raise RangeError(f"series argument exceeds validated bound {SERIES_BOUND}")
    b = series_coefficients(kappa)
    out = np.zeros_like(s)
    power = np.ones_like(s)
    for n in range(b.size):
        term = b[n] * power
        out = out + term
        if np.all(np.abs(term) <= 1e-16 * np.maximum(np.abs(out), 1.0)):
            break
        power = power * s
    return out


def njbessel(nu: float, z) -> np.ndarray:
    """Normalized Bessel function Gamma(nu+1) (2/z)^nu J_nu(z); even in z."""
    z = np.abs(np.asarray(z, dtype=float))
    out = np.empty_like(z)
    small = z < 1e-6
    zs = z[small]
    out[small] = 1.0 - zs**2 / (4.0 * (nu + 1.0)) + zs**4 / (
        32.0 * (nu + 1.0) * (nu + 2.0)
    )
    zl = z[~small]
    out[~small] = sgamma(nu + 1.0) * (2.0 / zl) ** nu * jv(nu, zl)
    return out


def e_minus_i(s, kappa: float) -> np.ndarray:
    """Rank-one kernel at imaginary argument, E(x, -i xi) with s = x xi."""
    s = np.asarray(s, dtype=float)
    if kappa == 0.0:
        return np.exp(-1j * s)
    return njbessel(kappa - 0.5, s) - 1j * s / (2.0 * kappa + 1.0) * njbessel(
        kappa + 0.5, s
    )


def scaled_e_real(s, kappa: float) -> np.ndarray:
    """Overflow-safe E(x, y) e^{-|xy|} with s = x y, via scaled Bessel I."""
    s = np.asarray(s, dtype=float)
    if kappa == 0.0:
        return np.exp(s - np.abs(s))
    a = np.abs(s)
    out = np.empty_like(a)
    small = a < 1e-6
    out[small] = (1.0 + s[small] / (2.0 * kappa + 1.0)) * np.exp(-a[small])
    al = a[~small]
    sl = s[~small]
    even = sgamma(kappa + 0.5) * (2.0 / al) ** (kappa - 0.5) * ive(kappa - 0.5, al)
    odd = sgamma(kappa + 1.5) * (2.0 / al) ** (kappa + 0.5) * ive(kappa + 0.5, al)
    out[~small] = even + sl / (2.0 * kappa + 1.0) * odd
    return out


def kernel_bessel_1d(s, kappa: float) -> np.ndarray:
    """Rank-one kernel for real arguments via the scaled Bessel form."""
    s = np.asarray(s, dtype=float)
    return scaled_e_real(s, kappa) * np.exp(np.abs(s))


def rank_one_measure(kappa: float, x: float, n: int) -> tuple:
    """Nodes and weights of the rank-one intertwining measure on eta = x t."""
    if n < 2:
        raise InputError("need at least two quadrature nodes")
    if kappa == 0.0 or x == 0.0:
        return np.array([x]), np.array([1.0])
    # density (1+t)(1-t^2)^(kappa-1) = (1-t)^(kappa-1) (1+t)^kappa
    t, w = roots_jacobi(n, kappa - 1.0, kappa)
    w = w / w.sum()
    return x * t, w


def nu_quadrature(rs: RootSystem, x, n: int = 64) -> OrbitMeasureQuad:
    """Product-group intertwining measure as a tensor quadrature rule."""
    if rs.kind != Z2_PRODUCT:
        raise CapabilityError("explicit measure known only for sign product groups")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    kappas = rs.multiplicities
    axis_nodes = []
    axis_weights = []
    for xj, kap in zip(x, kappas):
        nd, wt = rank_one_measure(float(kap), float(xj), n)
        axis_nodes.append(nd)
        axis_weights.append(wt)
    grids = np.meshgrid(*axis_nodes, indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=-1)
    wgrids = np.meshgrid(*axis_weights, indexing="ij")
    wts = np.ones(nodes.shape[0])
    for wg in wgrids:
        wts = wts * wg.ravel()
    return OrbitMeasureQuad(x, nodes, wts)


def intertwining_apply(m: OrbitMeasureQuad, f) -> float:
    """Quadrature of f against the measure; f maps (n, d) node rows to values."""
    vals = np.asarray(f(m.nodes), dtype=float)
    return float(m.weights @ vals)


def nu_moments_oracle(kappa: float, nmax: int) -> np.ndarray:
    """Exact moments int t^n dnu for base point 1: n! b_n from the recursion."""
    b = series_coefficients(kappa, nmax)
    return np.array([math.factorial(n) * b[n] for n in range(nmax + 1)])


def dunkl_kernel(rs: RootSystem, x, y, method: str = "bessel", n_quad: int = 64):
    """The deformed exponential E(x, y), product over coordinates.

    Real y: positive kernel, three methods available ("bessel", "series",
    "quadrature").  Purely imaginary y (1j * real vector): Bessel closed form
    only; other complex arguments are out of scope.
    """
    if rs.kind != Z2_PRODUCT:
        raise CapabilityError("kernel evaluation requires a sign product group")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    kappas = rs.multiplicities
    if np.iscomplexobj(y):
        y = np.atleast_1d(np.asarray(y))
        if np.max(np.abs(y.real)) > 1e-14:
            raise CapabilityError("complex arguments supported only on i * R^d")
        out = 1.0 + 0.0j
        for xj, vj, kap in zip(x, y.imag, kappas):
            out = out * np.conj(e_minus_i(np.array([xj * vj]), float(kap))[0])
        return complex(out)
    y = np.atleast_1d(np.asarray(y, dtype=float))
    out = 1.0
    for xj, yj, kap in zip(x, y, kappas):
        s = xj * yj
        if method == "bessel":
            out *= float(kernel_bessel_1d(np.array([s]), float(kap))[0])
        elif method == "series":
            out *= float(kernel_series_1d(np.array([s]), float(kap))[0])
        elif method == "quadrature":
            nd, wt = rank_one_measure(float(kap), float(xj), n_quad)
            out *= float(wt @ np.exp(nd * yj))
        else:
            raise InputError(f"unknown kernel method {method!r}")
    return out


def averaged_orbit_measure(
    rs: RootSystem, group: ReflectionGroup, y, n: int = 64
) -> OrbitMeasureQuad:
    """The group-averaged measure |G|^-1 sum over g of nu_(g.y)."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    all_nodes = []
    all_wts = []
    orbit = group.orbit(y)
    for gy in orbit:
        q = nu_quadrature(rs, gy, n)
        all_nodes.append(q.nodes)
        all_wts.append(q.weights / len(orbit))
    nodes = np.concatenate(all_nodes, axis=0)
    wts = np.concatenate(all_wts)
    hull = np.max(np.abs(orbit), axis=0)
    return OrbitMeasureQuad(hull, nodes, wts)


def phi_profile(
    rs: RootSystem, group: ReflectionGroup, xs, y, n: int = 64
) -> np.ndarray:
    """phi(x, y) evaluated on many points x at once (d=1 fast path).

    Integrates e^{sqrt(1 + A^2)} with A^2 = |y|^2 + |x|^2 - 2<x, eta> against
    the averaged orbit measure; tiny negative radicands are clamped at 0.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.ndim == 1:
        pts = xs[:, None]
    else:
        pts = xs
    y = np.atleast_1d(np.asarray(y, dtype=float))
    q = averaged_orbit_measure(rs, group, y, n)
    a2 = (y @ y) + np.sum(pts**2, axis=1)[:, None] - 2.0 * pts @ q.nodes.T
    a2 = np.maximum(a2, 0.0)
    return np.exp(np.sqrt(1.0 + a2)) @ q.weights


def phi(
    rs: RootSystem,
    group: ReflectionGroup,
    x,
    y,
    lam: float = 1.0,
    n: int = 64,
) -> PhiEvaluation:
    """Pointwise phi_lambda(x, y); lam = 1 reproduces the base weight."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    q = averaged_orbit_measure(rs, group, y, n)
    a2 = (y @ y) + (x @ x) - 2.0 * q.nodes @ x
    clamped = int(np.sum(a2 < 0))
    a2 = np.maximum(a2, 0.0)
    base = float(np.exp(np.sqrt(1.0 + a2)) @ q.weights)
    return PhiEvaluation(base**lam, y, x, lam, clamped)


def phi_lemma_defect(
    rs: RootSystem, group: ReflectionGroup, x, y, y0, n: int = 64
) -> float:
    """Signed slack of phi(x, y0) <= phi(y, y0) e^{|x+ - y+|} (>= 0 when it holds)."""
    left = phi(rs, group, x, y0, n=n).value
    right = phi(rs, group, y, y0, n=n).value
    xp = canonical_rep(group, np.atleast_1d(np.asarray(x, float)))
    yp = canonical_rep(group, np.atleast_1d(np.asarray(y, float)))
    return float(right * np.exp(np.linalg.norm(xp - yp)) - left)
