"""Kato-class diagnostics for potentials: definitional moduli (classical and
orbit-distance forms, Lebesgue measure), the heat-semigroup characterization,
resolvent decay, the growth bound, and kernel smoothing norms.

Verdicts are threshold-based trend classifications with an explicit
Inconclusive band; membership in the class is a limit statement and is not
decidable numerically.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.linalg import svdvals
from scipy.special import roots_laguerre, roots_legendre

from .errors import CapabilityError, InputError
from .heat import MODE_NORMALIZED, mode_factor
from .intertwine import scaled_e_real
from .reflection import RootSystem, weight
from .schrodinger import EigenDecomp, schrodinger_kernel

QUAD_LIMIT = 200
QUAD_TOL = 1e-12
DIVERGENCE_RELERR = 1e-2

CLASSICAL = "classical"
ORBIT = "orbit"


@dataclass(frozen=True)
class ModulusValue:
    value: float
    error: float
    divergent: bool
    argmax_probe: float


@dataclass(frozen=True)
class KatoReport:
    dimension: int
    t_list: tuple
    modulus_classical: dict
    modulus_orbit: dict
    heat_modulus: dict
    verdict: str
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SmoothingReport:
    corner_norms: dict
    interpolated: dict
    l2_direct: float


def _lebesgue_quad(fn, lo: float, hi: float, singular=()) -> tuple:
    """Adaptive integral with singular breakpoints; flags divergence."""
    if hi <= lo:
        return 0.0, 0.0, False
    pts = sorted(p for p in singular if lo < p < hi)
    res = quad(fn, lo, hi, points=pts or None, limit=QUAD_LIMIT, full_output=1)
    val, err = res[0], res[1]
    bad = len(res) > 3 or not np.isfinite(val)
    bad = bad or err > DIVERGENCE_RELERR * max(abs(val), 1.0)
    return float(val), float(err), bool(bad)


def _sphere_area(d: int) -> float:
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def _green_factor(d: int):
    if d == 1:
        return lambda r: np.ones_like(np.asarray(r, dtype=float))
    if d == 2:
        return lambda r: np.log(1.0 / np.maximum(np.asarray(r, dtype=float), 1e-12))
    return lambda r: np.asarray(r, dtype=float) ** (2 - d)


def _orbit_intervals(xp: float, t: float) -> list:
    """Regions of y with | |x| - |y| | <= t, as disjoint intervals."""
    a = max(xp - t, 0.0)
    b = xp + t
    if a == 0.0:
        return [(-b, b)]
    return [(-b, -a), (a, b)]


def kato_modulus(
    V_fn,
    t: float,
    form: str = CLASSICAL,
    dimension: int = 1,
    probes=(0.0,),
    singular=(0.0,),
    sign_group: bool = True,
) -> ModulusValue:
    """sup over probes of the Green-weighted mass of |V| near the probe.

    Distances are classical |x - y| or orbit | |x| - |y| | (sign group);
    with sign_group False the orbit form degenerates to the classical one.
    The integral uses Lebesgue measure throughout.
    """
    if t <= 0:
        raise InputError("window size t must be positive")
    if form not in (CLASSICAL, ORBIT):
        raise InputError(f"unknown modulus form {form!r}")
    green = _green_factor(dimension)
    if dimension == 1:
        best, best_err, best_probe, div = -np.inf, 0.0, 0.0, False
        for x in np.atleast_1d(np.asarray(probes, dtype=float)):
            if form == ORBIT and sign_group:
                intervals = _orbit_intervals(abs(x), t)

                def fn(y, _x=abs(x)):
                    return abs(V_fn(y)) * green(abs(_x - abs(y)))

            else:
                intervals = [(x - t, x + t)]

                def fn(y, _x=x):
                    return abs(V_fn(y)) * green(abs(_x - y))

            tot, toterr, bad = 0.0, 0.0, False
            for lo, hi in intervals:
                v, e, b = _lebesgue_quad(fn, lo, hi, singular)
                tot, toterr, bad = tot + v, toterr + e, bad or b
            div = div or bad
            if tot > best:
                best, best_err, best_probe = tot, toterr, float(x)
        return ModulusValue(
            np.inf if div else best, best_err, div, best_probe
        )
    if dimension == 2 and form == CLASSICAL:
        th, wth = roots_legendre(64)
        th = math.pi * (th + 1.0)
        wth = math.pi * wth
        best, best_err, best_probe, div = -np.inf, 0.0, 0.0, False
        for x in np.atleast_2d(np.asarray(probes, dtype=float)):

            def ring(r, _x=x):
                pts = _x[None, :] + r * np.stack([np.cos(th), np.sin(th)], axis=1)
                radii = np.linalg.norm(pts, axis=1)
                return r * green(r) * float(np.abs(V_fn(radii)) @ wth)

            v, e, b = _lebesgue_quad(ring, 0.0, t, singular=(1e-6,))
            div = div or b
            if v > best:
                best, best_err, best_probe = v, e, float(np.linalg.norm(x))
        return ModulusValue(np.inf if div else best, best_err, div, best_probe)
    if dimension >= 3 and form == CLASSICAL:
        # radial potential probed at the origin; closed-form surface factor
        area = _sphere_area(dimension)

        def fn(r):
            return area * r ** (dimension - 1) * green(r) * abs(V_fn(r))

        v, e, b = _lebesgue_quad(fn, 0.0, t, singular)
        return ModulusValue(np.inf if b else v, e, b, 0.0)
    raise CapabilityError(
        f"modulus form {form!r} not implemented for dimension {dimension}"
    )


def kato_equivalence_check(
    V_fn,
    t_list,
    probes=(0.0, 0.5, 1.0, 2.0),
    singular=(0.0,),
    sign_group: bool = True,
) -> dict:
    """Sandwich classical <= orbit <= group-sum of translated classical moduli.

    Dimension-one form; the upper leg sums the classical integral over the
    sign orbit of each probe's chamber representative.
    """
    rows = []
    for t in t_list:
        mc = kato_modulus(V_fn, t, CLASSICAL, 1, probes, singular, sign_group)
        mo = kato_modulus(V_fn, t, ORBIT, 1, probes, singular, sign_group)
        upper = -np.inf
        reps = [abs(x) for x in np.atleast_1d(np.asarray(probes, float))]
        images = [(xp, -xp) for xp in reps] if sign_group else [(xp,) for xp in reps]
        for orbit_pts in images:
            tot = 0.0
            for c in orbit_pts:
                v, _, _ = _lebesgue_quad(
                    lambda y: abs(V_fn(y)), c - t, c + t, singular
                )
                tot += v
            upper = max(upper, tot)
        rows.append(
            {
                "t": float(t),
                "classical": mc.value,
                "orbit": mo.value,
                "upper": float(upper),
                "lower_slack": mo.value - mc.value,
                "upper_slack": float(upper) - mo.value,
            }
        )
    return {"rows": rows, "probe_count": len(np.atleast_1d(probes))}


# ---------------------------------------------------------------------------
# heat characterization


def _kernel_slice_1d(rs: RootSystem, t: float, x: float, ys) -> np.ndarray:
    """Closed-form kernel K_t(x, .) on a batch of points (rank one)."""
    ys = np.asarray(ys, dtype=float)
    kap = float(rs.multiplicities[0])
    s = x * ys / (2.0 * t)
    gauss = np.exp(-((x**2 + ys**2 - 2.0 * np.abs(x * ys))) / (4.0 * t))
    return mode_factor(rs, t, MODE_NORMALIZED) * scaled_e_real(s, kap) * gauss


def semigroup_abs_potential(
    rs: RootSystem,
    V_fn,
    s: float,
    x: float,
    singular=(0.0,),
    epsabs: float = QUAD_TOL,
) -> float:
    """(e^{-sA}|V|)(x) through the closed-form kernel and adaptive quadrature."""
    if rs.dimension != 1:
        raise CapabilityError("heat characterization implemented in rank one")
    L = abs(x) + 20.0 * math.sqrt(s) + 2.0
    kap = float(rs.multiplicities[0])
    # root length sqrt(2): the density is (sqrt(2)|y|)^(2 kappa)
    pref = mode_factor(rs, s, MODE_NORMALIZED) * 2.0**kap
    inv4s = 1.0 / (4.0 * s)
    half_ratio = x / (2.0 * s)
    x2 = x * x

    def fn(y):
        u = half_ratio * y
        g = math.exp(-(x2 + y * y - 2.0 * abs(x * y)) * inv4s)
        w = abs(y) ** (2.0 * kap) if kap else 1.0
        return pref * float(scaled_e_real(u, kap)) * g * w * abs(V_fn(y))

    pts = sorted({0.0, x, -x, *singular})
    pts = [p for p in pts if -L < p < L]
    with warnings.catch_warnings():
        # bounded integrand; sub-roundoff tolerance requests are intentional
        warnings.simplefilter("ignore", IntegrationWarning)
        val, _ = quad(
            fn, -L, L, points=pts or None, limit=QUAD_LIMIT, epsabs=epsabs,
            epsrel=epsabs,
        )
    return float(val)


def _log_panels(t: float, n_panels: int = 9, ratio: float = 1e-4) -> list:
    edges = [0.0] + list(t * np.geomspace(ratio, 1.0, n_panels + 1))
    return list(zip(edges[:-1], edges[1:]))


def heat_modulus(
    rs: RootSystem,
    V_fn,
    t: float,
    probes=(0.0,),
    singular=(0.0,),
    order: int = 8,
    n_panels: int = 9,
    epsabs: float = QUAD_TOL,
) -> float:
    """sup_x of int_0^t (e^{-sA}|V|)(x) ds, log-spaced composite quadrature.

    Each panel uses Gauss-Legendre, so a constant potential integrates to
    exactly t up to the spatial quadrature tolerance.  The coarse knobs
    (order, n_panels, epsabs) trade accuracy for speed in trend checks.
    """
    if t <= 0:
        raise InputError("time must be positive")
    gl_x, gl_w = roots_legendre(order)
    best = -np.inf
    for x in np.atleast_1d(np.asarray(probes, dtype=float)):
        total = 0.0
        for lo, hi in _log_panels(t, n_panels):
            mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
            for xi, wi in zip(gl_x, gl_w):
                total += half * wi * semigroup_abs_potential(
                    rs, V_fn, mid + half * xi, float(x), singular, epsabs
                )
        best = max(best, total)
    return float(best)


def heat_modulus_split(
    rs: RootSystem,
    V_fn,
    t: float,
    c_fit: float = 0.25,
    probes=(0.0,),
    singular=(0.0,),
    n_laguerre: int = 48,
) -> dict:
    """Diagnostic small-ball / Gaussian-tail split of the damped majorant.

    Integrates the a = 1 resolvent kernel (Laguerre in time) against |V| on
    the orbit ball of radius beta = (d t / 2c)^(1/2d) and its complement; the
    heat modulus is bounded by e^t times the sum.
    """
    d = rs.dimension
    if d != 1:
        raise CapabilityError("split diagnostic implemented in rank one")
    beta = (d * t / (2.0 * c_fit)) ** (1.0 / (2.0 * d))
    sv, sw = roots_laguerre(n_laguerre)
    kap = float(rs.multiplicities[0])
    pref = np.array([mode_factor(rs, float(s), MODE_NORMALIZED) for s in sv])
    out = []
    for x in np.atleast_1d(np.asarray(probes, dtype=float)):
        L = abs(x) + 25.0 + 2.0

        def resolvent_density(y):
            u = x * y / (2.0 * sv)
            gauss = np.exp(-((x - y) ** 2 + 2.0 * (x * y - abs(x * y))) / (4.0 * sv))
            ks = pref * scaled_e_real(u, kap) * gauss
            # root length sqrt(2): density (sqrt(2)|y|)^(2 kappa)
            w = (2.0 * y * y) ** kap if kap else 1.0
            return float((sw @ ks) * abs(V_fn(y)) * w)

        xp = abs(x)
        near = _orbit_intervals(xp, beta)
        near_val = 0.0
        for lo, hi in near:
            v, _, _ = _lebesgue_quad(resolvent_density, lo, hi, singular)
            near_val += v
        far_val = 0.0
        cuts = sorted({-L, *[e for seg in near for e in seg], L})
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            if any(abs(lo - a) < 1e-15 and abs(hi - b) < 1e-15 for a, b in near):
                continue
            v, _, _ = _lebesgue_quad(resolvent_density, lo, hi, singular)
            far_val += v
        out.append({"probe": float(x), "small_ball": near_val, "tail": far_val})
    worst = max(out, key=lambda r: r["small_ball"] + r["tail"])
    return {"beta": float(beta), "parts": out, "majorant_at_sup": worst}


def _kernel_slice_1d_batch(rs: RootSystem, ts, x: float, y: float) -> np.ndarray:
    """K_t(x, y) over a batch of times t (rank one)."""
    ts = np.asarray(ts, dtype=float)
    kap = float(rs.multiplicities[0])
    s = x * y / (2.0 * ts)
    gauss = np.exp(-((x**2 + y**2 - 2.0 * abs(x * y))) / (4.0 * ts))
    pref = np.array([mode_factor(rs, float(t), MODE_NORMALIZED) for t in ts])
    return pref * scaled_e_real(s, kap) * gauss


def resolvent_decay(
    rs: RootSystem,
    V_fn,
    a_list,
    probes=(0.0,),
    singular=(0.0,),
    n_laguerre: int = 48,
    epsabs: float = QUAD_TOL,
) -> dict:
    """sup norm of (A + a)^{-1}|V| along a_list, via Gauss-Laguerre in time.

    The Laguerre rule makes a constant potential evaluate to exactly 1/a.
    Also records the short-time bound (1 - e^{-1})^{-1} heat_modulus(1/a).
    """
    sv, sw = roots_laguerre(n_laguerre)
    rows = []
    for a in a_list:
        if a <= 0:
            raise InputError("resolvent shifts must be positive")
        best = -np.inf
        for x in np.atleast_1d(np.asarray(probes, dtype=float)):
            vals = np.array(
                [
                    semigroup_abs_potential(rs, V_fn, s / a, float(x), singular, epsabs)
                    for s in sv
                ]
            )
            best = max(best, float(sw @ vals) / a)
        hm = heat_modulus(rs, V_fn, 1.0 / a, probes, singular, epsabs=epsabs)
        rows.append(
            {
                "a": float(a),
                "norm": best,
                "bound": hm / (1.0 - math.exp(-1.0)),
            }
        )
    return {"rows": rows}


# ---------------------------------------------------------------------------
# growth bound and smoothing


def growth_bound_check(
    V_fn,
    r_list,
    dimension: int = 1,
    probes=(0.0,),
    singular=(0.0,),
    extend: float = 4.0,
    sign_group: bool = True,
) -> dict:
    """Fit C in sup_x int_{orbit ball r} |V| dy <= C (r + 1)^d; report the
    fit's stability when the radius list is extended by the given factor."""

    def fitted(rs_):
        vals = []
        for r in rs_:
            m = kato_modulus(V_fn, r, ORBIT, dimension, probes, singular, sign_group)
            vals.append(m.value)
        ratios = [v / (r + 1.0) ** dimension for v, r in zip(vals, rs_)]
        return vals, max(ratios)

    base_vals, C = fitted(list(r_list))
    _, C_ext = fitted([extend * r for r in r_list])
    return {
        "r_list": [float(r) for r in r_list],
        "integrals": base_vals,
        "C": float(C),
        "C_extended": float(C_ext),
        "stable": bool(np.isfinite(C_ext) and C_ext <= 1.5 * max(C, 1e-300)),
    }


def _theta(p: float, q: float) -> tuple:
    ip = 0.0 if np.isinf(p) else 1.0 / p
    iq = 0.0 if np.isinf(q) else 1.0 / q
    if ip < iq:
        raise InputError("interpolation requires p <= q")
    return iq, 1.0 - ip, ip - iq


def smoothing_norms(ed: EigenDecomp, t: float, pq_list) -> SmoothingReport:
    """Corner norms of the eigencalculus kernel at time t."""
    if t <= 0:
        raise InputError("time must be positive")
    return smoothing_norms_of_kernel(ed.grid, schrodinger_kernel(ed, t), pq_list)


def smoothing_norms_of_kernel(grid, W, pq_list) -> SmoothingReport:
    """Corner norms of an explicit kernel matrix and Riesz-Thorin interpolants.

    1->inf is the kernel sup; inf->inf the max row mass; 1->1 the max column
    mass; interior (p, q) values are the log-convex corner combination.  The
    direct L2 operator norm is included for the upper-bound cross-check.
    """
    om = grid.mu_weights
    n_1inf = float(np.max(np.abs(W)))
    n_infinf = float(np.max(np.abs(W) @ om))
    n_11 = float(np.max(om @ np.abs(W)))
    corners = {(1, 1): n_11, ("inf", "inf"): n_infinf, (1, "inf"): n_1inf}
    interp = {}
    for p, q in pq_list:
        pv = np.inf if p in ("inf", np.inf) else float(p)
        qv = np.inf if q in ("inf", np.inf) else float(q)
        th1, th2, th3 = _theta(pv, qv)
        interp[(p, q)] = float(n_11**th1 * n_infinf**th2 * n_1inf**th3)
    dh = np.sqrt(om)
    l2 = float(svdvals(dh[:, None] * W * dh[None, :])[0])
    return SmoothingReport(corners, interp, l2)


# ---------------------------------------------------------------------------
# verdicts


def classify(
    rs: RootSystem,
    V_fn,
    probes=(0.0,),
    singular=(0.0,),
    t_window=(1.0, 0.3, 0.1, 0.03, 0.01),
) -> KatoReport:
    """Trend-based class verdict over a shrinking window ladder.

    Kato requires a >= 4x drop of the heat modulus from t = 1 to t = 0.03,
    a monotone definitional modulus, and a small-window ratio <= 0.40;
    NotKato on quadrature divergence or a plateau ratio >= 0.8; otherwise
    Inconclusive.  Rank-one reports include the heat leg; higher rank uses
    the definitional trend only.
    """
    d = rs.dimension
    mc, mo, hm = {}, {}, {}
    divergent = False
    for t in t_window:
        m1 = kato_modulus(V_fn, t, CLASSICAL, d, probes, singular)
        mc[float(t)] = m1.value
        divergent = divergent or m1.divergent
        if d == 1:
            m2 = kato_modulus(V_fn, t, ORBIT, d, probes, singular)
            mo[float(t)] = m2.value
            divergent = divergent or m2.divergent
    heat_ok = None
    if d == 1 and not divergent:
        # 4x-drop gating needs ~1e-6 accuracy; run the heat leg coarse
        for t in (1.0, 0.03):
            hm[float(t)] = heat_modulus(
                rs, V_fn, t, probes, singular, order=4, n_panels=6, epsabs=1e-8
            )
        heat_ok = hm[1.0] >= 4.0 * hm[0.03]
    diagnostics = {"divergent": divergent, "probe_count": len(np.atleast_1d(probes))}
    if divergent:
        verdict = "NotKato"
    else:
        ts = sorted(mc)
        vals = [mc[t] for t in ts]
        monotone = all(a <= b * (1.0 + 1e-9) for a, b in zip(vals[:-1], vals[1:]))
        ratio = vals[0] / vals[-1] if vals[-1] > 0 else 0.0
        diagnostics["shrink_ratio"] = ratio
        if ratio >= 0.8:
            verdict = "NotKato"
        elif monotone and ratio <= 0.40 and heat_ok in (True, None):
            verdict = "Kato"
        else:
            verdict = "Inconclusive"
    return KatoReport(d, tuple(t_window), mc, mo, hm, verdict, diagnostics)
