"""Named verification suites over a configured scene (group, grid, potential).

Each suite bundles hard checks (invariants; they gate the exit status) and
soft checks (fitted constants and stability reports).  Results carry labeled
metrics and plottable curves; the runner persists one JSON summary and one
CSV per suite.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import families, kato
from .config import RunConfig
from .errors import CapabilityError, ConfigError, InputError
from .grids import SampledFunction, build_grid, grid_selftest, sample
from .heat import (
    MODE_NORMALIZED,
    gaussian_bound_report,
    heat_apply,
    heat_kernel,
    heat_kernel_matrix,
)
from .intertwine import (
    dunkl_kernel,
    e_minus_i,
    kernel_bessel_1d,
    kernel_series_1d,
    nu_moments_oracle,
    nu_quadrature,
    phi,
    phi_lemma_defect,
    rank_one_measure,
)
from .operators import (
    DunklDerivativeStencil,
    antisymmetry_defect,
    dunkl_derivative,
    dunkl_derivative_matrix,
    dunkl_laplacian,
    multiplier_defect,
    spectral_laplacian,
)
from .reflection import (
    ReflectionGroup,
    RootSystem,
    ball_comparison_quantity,
    ball_volume,
    ball_volume_quadrature,
    calibrate_ball_constants,
    canonical_rep,
    gamma_k,
    generate_group,
    orbit_distance,
    orbit_distance_bruteforce,
    unit_ball_cover,
    weight,
)
from .schrodinger import (
    Potential,
    assemble_L,
    eig,
    inv_sqrt_apply,
    inv_sqrt_subordination,
    potential_function,
    potential_preset,
    resolved_calculus,
    riesz_matrix,
    scaling_identity_gap,
    schrodinger_kernel,
    semigroup_apply,
    semigroup_trotter,
    weak_type_report,
    weighted_estimate_report,
)
from .transform import (
    build_spectral_matrix,
    c_k,
    convolve,
    dunkl_transform,
    inverse_transform,
    parseval_defect,
    refinement_defect_slope,
    translate_radial,
)


# ---------------------------------------------------------------------------
# scene and result plumbing


class Scene:
    """Lazily constructed objects shared by the suites of one run."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        g = cfg.group
        if g["kind"] == "z2_product":
            self.rs = RootSystem.z2_product(g["multiplicities"])
        else:
            self.rs = RootSystem.dihedral(g["m"], g["k_even"], g.get("k_odd"))

    @cached_property
    def group(self) -> ReflectionGroup:
        return generate_group(self.rs)

    @cached_property
    def grid(self):
        return build_grid(self.rs, self.cfg.grid["R"], self.cfg.grid["N"])

    @cached_property
    def sm(self):
        return build_spectral_matrix(self.grid)

    @cached_property
    def potential(self) -> Potential:
        spec = self.cfg.potential
        if "csv" in spec:
            from .schrodinger import potential_from_csv

            return potential_from_csv(self.grid, spec["csv"])
        return potential_preset(self.grid, spec["preset"], **spec["params"])

    @cached_property
    def V_fn(self) -> Callable:
        spec = self.cfg.potential
        if "csv" in spec:
            radii = np.linalg.norm(self.grid.nodes, axis=1)
            order = np.argsort(radii)
            rr, vv = radii[order], self.potential.values[order]
            return lambda r: np.interp(np.abs(np.asarray(r, float)), rr, vv)
        return potential_function(spec["preset"], **spec["params"])

    @property
    def kappa0(self) -> float:
        return float(self.rs.multiplicities[0])

    @cached_property
    def rank_one(self) -> RootSystem:
        if self.rs.dimension == 1 and self.rs.kind == "z2_product":
            return self.rs
        return RootSystem.z2_product([self.kappa0])

    @cached_property
    def kernel_grid(self):
        """Grid sized for kernel-entry accuracy of the resolved calculus."""
        if self.rs.dimension == 1:
            return build_grid(self.rank_one, max(self.cfg.grid["R"], 14.0), 256)
        return build_grid(self.rs, 6.0, 32)

    def kernel_potential(self, preset: Optional[str] = None, **params) -> Potential:
        if preset is None:
            spec = self.cfg.potential
            if "csv" in spec:
                vals = self.V_fn(np.linalg.norm(self.kernel_grid.nodes, axis=1))
                return Potential("csv", dict(spec), vals)
            preset, params = spec["preset"], spec["params"]
        return potential_preset(self.kernel_grid, preset, **params)

    def kernel_resolved(self, preset: Optional[str] = None, **params):
        key = (preset, tuple(sorted(params.items())))
        cache = self.__dict__.setdefault("_kernel_resolved", {})
        if key not in cache:
            pot = self.kernel_potential(preset, **params)
            cache[key] = resolved_calculus(self.kernel_grid, pot)
        return cache[key]


class Checks:
    def __init__(self):
        self.hard = {}
        self.soft = {}
        self.values = {}

    def check(self, name: str, ok, value=None, hard: bool = True):
        target = self.hard if hard else self.soft
        target[name] = bool(ok)
        if value is not None:
            self.values[name] = value

    def metric(self, name: str, value):
        self.values[name] = value

    @property
    def hard_pass(self) -> bool:
        return all(self.hard.values())

    @property
    def soft_pass(self):
        return all(self.soft.values()) if self.soft else None


@dataclass
class SuiteResult:
    name: str
    description: str
    anchor: str
    hard_pass: bool
    soft_pass: Optional[bool]
    hard_checks: dict
    soft_checks: dict
    values: dict
    curves: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SuiteDef:
    name: str
    description: str
    anchor: str
    fn: Callable


REGISTRY: "dict[str, SuiteDef]" = {}


def suite(name: str, description: str, anchor: str):
    def wrap(fn):
        REGISTRY[name] = SuiteDef(name, description, anchor, fn)
        return fn

    return wrap


def _finish(defn_name: str, ck: Checks, curves: dict) -> SuiteResult:
    d = REGISTRY[defn_name]
    return SuiteResult(
        d.name,
        d.description,
        d.anchor,
        ck.hard_pass,
        ck.soft_pass,
        dict(ck.hard),
        dict(ck.soft),
        dict(ck.values),
        curves,
    )


@lru_cache(maxsize=8)
def _aux_sm(kappa: float, R: float, N: int):
    grid = build_grid(RootSystem.z2_product([kappa]), R, N)
    return build_spectral_matrix(grid)


# ---------------------------------------------------------------------------
# geometry and measure suites


@suite(
    "reflection_geometry",
    "group generation, orbit distance, ball volume bracket, covering lemma",
    "doubling geometry of the weighted measure",
)
def suite_reflection_geometry(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    rs, grp = scene.rs, scene.group
    d = rs.dimension
    if rs.kind == "z2_product":
        ck.check("group_order", len(grp) == 2**d, len(grp))
    dih = generate_group(RootSystem.dihedral(3, 0.7))
    ck.check("dihedral3_order", len(dih) == 6, len(dih))
    g2 = RootSystem.z2_product([0.5, 1.5])
    ck.check("gamma_sum", abs(gamma_k(g2) - 2.0) < 1e-14, gamma_k(g2))
    worst = 0.0
    for _ in range(40):
        x = rng.uniform(-4, 4, size=d)
        y = rng.uniform(-4, 4, size=d)
        worst = max(worst, abs(orbit_distance(grp, x, y) - orbit_distance_bruteforce(grp, x, y)))
    ck.check("orbit_distance_oracle", worst <= 1e-10, worst)

    cover_curve = []
    cover_ok, count_ok = True, True
    for _ in range(30):
        x = rng.uniform(-5, 5, size=d)
        r = float(rng.uniform(0.01, 10.0))
        centers = unit_ball_cover(x, r)
        count_ok &= centers.shape[0] <= (2 * d) ** d * (r + 1.0) ** d
        u = rng.standard_normal((150, d))
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        pts = x[None, :] + (r * rng.random(150) ** (1.0 / d))[:, None] * u
        dist = np.linalg.norm(pts[:, None, :] - centers[None, :, :], axis=2).min(axis=1)
        cover_ok &= bool(np.max(dist) <= 1.0 + 1e-9)
        cover_curve.append((r, float(centers.shape[0])))
    ck.check("cover_count_bound", count_ok)
    ck.check("cover_is_covering", cover_ok)

    doubling_ok = True
    dbl = 2.0 ** (d + 2.0 * gamma_k(rs))
    for _ in range(30):
        x = rng.uniform(-3, 3, size=d)
        r = float(rng.uniform(0.05, 3.0))
        q1 = ball_comparison_quantity(rs, x, r)
        q2 = ball_comparison_quantity(rs, x, 2.0 * r)
        doubling_ok &= q2 <= dbl * q1 * (1.0 + 1e-12)
    ck.check("doubling_factor", doubling_ok, dbl)

    cal = calibrate_ball_constants(rs, seed=7)
    bracket_ok = True
    for i in range(20):
        x = rng.uniform(-3, 3, size=d)
        r = float(rng.uniform(0.05, 3.0))
        est = ball_volume_quadrature(rs, x, r, seed=11 + i)
        b = ball_volume(rs, x, r, calibration=cal)
        bracket_ok &= b.lower <= est <= b.upper
    ck.check("ball_bracket", bracket_ok, list(cal))
    one_d = RootSystem.z2_product([1.0])
    exact = ball_volume_quadrature(one_d, np.array([0.0]), 1.0)
    ck.check("unit_ball_kappa1", abs(exact - 4.0 / 3.0) <= 1e-12, exact)
    cover_curve.sort()
    return _finish(
        "reflection_geometry", ck, {"cover_count_vs_r": cover_curve}
    )


@suite(
    "intertwine_measure",
    "intertwining measure: mass, support, moments, positivity, weight lemma",
    "orbit measure realizing the intertwiner",
)
def suite_intertwine_measure(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    rs1 = scene.rank_one
    kap = scene.kappa0
    q = nu_quadrature(rs1, [1.5], 64)
    ck.check("mass_one", abs(q.weights.sum() - 1.0) <= 1e-10, float(q.weights.sum()))
    ck.check(
        "support_in_hull",
        bool(np.all(np.abs(q.nodes) <= 1.5 + 1e-10)),
        float(np.max(np.abs(q.nodes))),
    )
    mom_err, curve = 0.0, []
    oracle = nu_moments_oracle(1.0, 8)
    nd, wt = rank_one_measure(1.0, 1.0, 64)
    for n in range(9):
        m = float(wt @ nd**n)
        err = abs(m - oracle[n])
        mom_err = max(mom_err, err)
        curve.append((float(n), err))
    ck.check("moments_vs_series", mom_err <= 1e-8, mom_err)
    ck.check("first_moment_third", abs((wt @ nd) - 1.0 / 3.0) <= 1e-12, float(wt @ nd))
    nd0, wt0 = rank_one_measure(0.0, 2.0, 32)
    ck.check("kappa0_point_mass", nd0.size == 1 and nd0[0] == 2.0 and wt0[0] == 1.0)
    try:
        nu_quadrature(RootSystem.dihedral(3, 0.5), [1.0, 0.5])
        ck.check("unsupported_kind_raises", False)
    except CapabilityError:
        ck.check("unsupported_kind_raises", True)
    ss = np.linspace(-30.0, 30.0, 601)
    pos = float(np.min(kernel_bessel_1d(ss, max(kap, 0.3))))
    ck.check("kernel_positive", pos > 0.0, pos)
    grp1 = generate_group(rs1)
    pe = phi(rs1, grp1, [0.7], [1.2])
    ck.check("phi_at_least_e", pe.value >= math.e - 1e-9, pe.value)
    lam = 2.5
    pl = phi(rs1, grp1, [0.7], [1.2], lam=lam)
    ck.check("phi_power_rule", abs(pl.value - pe.value**lam) <= 1e-10 * pe.value**lam)
    worst = 0.0
    for _ in range(20):
        x, y, y0 = rng.uniform(-3, 3, size=3)
        worst = min(worst, phi_lemma_defect(rs1, grp1, [x], [y], [y0]))
    ck.check("phi_translation_lemma", worst >= -1e-8, worst)
    return _finish("intertwine_measure", ck, {"nu_moment_error_vs_n": curve})


@suite(
    "kernel_dual",
    "kernel agreement across series, measure quadrature, and Bessel forms",
    "dual representations of the deformed exponential",
)
def suite_kernel_dual(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    ss = np.linspace(-20.0, 20.0, 161)
    gap_sq, gap_sb = 0.0, 0.0
    curve = []
    for kap in (0.3, 0.5, 1.0, 1.5):
        series = kernel_series_1d(ss, kap)
        bessel = kernel_bessel_1d(ss, kap)
        nd, wt = rank_one_measure(kap, 1.0, 96)
        quad = np.array([float(wt @ np.exp(nd * s)) for s in ss])
        rel = np.maximum(np.abs(series), 1.0)
        gsq = float(np.max(np.abs(series - quad) / rel))
        gsb = float(np.max(np.abs(series - bessel) / rel))
        gap_sq, gap_sb = max(gap_sq, gsq), max(gap_sb, gsb)
        if kap == 0.5:
            curve = [(float(s), float(abs(a - b))) for s, a, b in zip(ss, series, quad)]
    ck.check("series_vs_quadrature", gap_sq <= 1e-8, gap_sq)
    ck.check("series_vs_bessel", gap_sb <= 1e-8, gap_sb)
    rs1 = scene.rank_one
    ck.check(
        "kernel_at_zero",
        dunkl_kernel(rs1, [0.0], [2.3]) == 1.0,
        dunkl_kernel(rs1, [0.0], [2.3]),
    )
    worst = 0.0
    for _ in range(20):
        x, y, lam = rng.uniform(0.2, 2.0, size=3)
        a = dunkl_kernel(rs1, [lam * x], [y])
        b = dunkl_kernel(rs1, [x], [lam * y])
        worst = max(worst, abs(a - b) / max(abs(a), 1.0))
    ck.check("argument_symmetry", worst <= 1e-10, worst)
    z = dunkl_kernel(RootSystem.z2_product([0.0]), [1.3], 1j * np.array([2.0]))
    ck.check("kappa0_imaginary_exponential", abs(z - np.exp(1j * 2.6)) <= 1e-12, abs(z - np.exp(1j * 2.6)))
    conj_gap = 0.0
    for _ in range(10):
        x, v = rng.uniform(-3, 3, size=2)
        z1 = dunkl_kernel(rs1, [x], 1j * np.array([v]))
        z2 = dunkl_kernel(rs1, [x], 1j * np.array([-v]))
        conj_gap = max(conj_gap, abs(z1 - np.conj(z2)))
    ck.check("imaginary_conjugation", conj_gap <= 1e-12, conj_gap)
    return _finish("kernel_dual", ck, {"kernel_dual_gap_vs_s": curve})


# ---------------------------------------------------------------------------
# transform suites


@suite(
    "plancherel",
    "transform roundtrip, Parseval identity, and refinement convergence",
    "transform isometry on the weighted L2 space",
)
def suite_plancherel(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    sm = scene.sm
    grid = scene.grid
    seed = int(rng.integers(1 << 30))
    worst_rt, worst_pv, curve = 0.0, 0.0, []
    sweep = [sm]
    if scene.rs.dimension == 1:
        sweep = [
            _aux_sm(float(k), grid.half_width, grid.n_axis)
            for k in scene.cfg.sweeps["kappa_list"]
        ]
    for sm_k in sweep:
        fams = families.band_limited_family(sm_k.grid.nodes[:, 0], 20, seed=seed)
        for i, vals in enumerate(fams):
            f = SampledFunction(sm_k.grid, vals)
            back = inverse_transform(sm_k, dunkl_transform(sm_k, f))
            rt = float(
                SampledFunction(sm_k.grid, back.values - f.values).norm_l2()
                / max(f.norm_l2(), 1e-300)
            )
            pv = parseval_defect(sm_k, f, f) / max(f.norm_l2() ** 2, 1e-300)
            worst_rt, worst_pv = max(worst_rt, rt), max(worst_pv, pv)
            if sm_k is sweep[0]:
                curve.append((float(i), rt))
    ck.check("roundtrip_relative", worst_rt <= 1e-6, worst_rt)
    ck.check("parseval_relative", worst_pv <= 1e-6, worst_pv)
    gvals = np.exp(-np.sum(grid.nodes**2, axis=1) / 2.0)
    g = SampledFunction(grid, gvals)
    pg = parseval_defect(sm, g, g) / g.norm_l2() ** 2
    ck.check("parseval_gaussian", pg <= 1e-8, pg)
    st = grid_selftest(grid, ck_exact=sm.ck)
    ck.check("grid_mass_selftest", st["gaussian_defect"] <= 1e-8, st["gaussian_defect"])
    if scene.rs.dimension == 1:
        def probe(sm_):
            g_ = SampledFunction(
                sm_.grid, np.exp(-np.sum(sm_.grid.nodes**2, axis=1) / 1.3)
            )
            out = inverse_transform(sm_, dunkl_transform(sm_, g_))
            return float(np.max(np.abs(out.values - g_.values)))

        slope = refinement_defect_slope(scene.rank_one, 6.0, [24, 32, 48], probe)
        ck.check("refinement_slope", slope >= 2.0, slope, hard=False)
    return _finish("plancherel", ck, {"roundtrip_defect_vs_index": curve})


@suite(
    "translation_convolution",
    "generalized translation of radial profiles and semigroup convolution",
    "translation operator diagonalized by the transform",
)
def suite_translation_convolution(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    if scene.rs.kind != "z2_product":
        raise CapabilityError("translation suite requires a sign product group")
    sm = scene.sm
    grid = scene.grid
    rs = scene.rs
    sig = 1.1
    prof = lambda r: np.exp(-(r**2) / (2.0 * sig**2))
    base = SampledFunction(grid, prof(np.linalg.norm(grid.nodes, axis=1)))
    base_ft = dunkl_transform(sm, base)
    base_mass = base.integral()
    worst_ft, worst_mass, curve = 0.0, 0.0, []
    for xval in (0.5, 1.0, 2.0):
        x = np.full(rs.dimension, xval / math.sqrt(rs.dimension))
        tau = translate_radial(rs, grid, x, prof)
        lhs = dunkl_transform(sm, tau)
        phase = np.array(
            [dunkl_kernel(rs, x, 1j * xi) for xi in grid.nodes]
        )
        gap = float(
            np.max(np.abs(lhs.values - phase * base_ft.values))
            / max(np.max(np.abs(base_ft.values)), 1e-300)
        )
        mgap = abs(tau.integral() - base_mass) / abs(base_mass)
        worst_ft, worst_mass = max(worst_ft, gap), max(worst_mass, float(mgap))
        curve.append((xval, gap))
    ck.check("translation_transform_identity", worst_ft <= 1e-6, worst_ft)
    ck.check("translation_mass", worst_mass <= 1e-6, worst_mass)
    k1 = SampledFunction(grid, _heat_slice(grid, 0.4))
    k2 = SampledFunction(grid, _heat_slice(grid, 0.6))
    conv = convolve(sm, k1, k2)
    k3 = _heat_slice(grid, 1.0)
    sgap = float(np.max(np.abs(conv.values * c_k(rs) - k3)) / np.max(np.abs(k3)))
    ck.check("heat_semigroup_convolution", sgap <= 1e-6, sgap)
    return _finish("translation_convolution", ck, {"translation_defect_vs_x": curve})


def _heat_slice(grid, t: float) -> np.ndarray:
    """Heat kernel based at the origin, K_t(., 0), on the grid nodes."""
    rs = grid.rs
    vals = np.array(
        [heat_kernel(rs, t, y, np.zeros(rs.dimension)).value for y in grid.nodes]
    )
    return vals


# ---------------------------------------------------------------------------
# operator suites


@suite(
    "operator_identities",
    "stencil derivative identities: even reduction, antisymmetry, multiplier",
    "first order operator with reflection difference term",
)
def suite_operator_identities(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    kap = scene.kappa0
    sm = _aux_sm(kap, 10.0, 128)
    grid = sm.grid
    xs = grid.nodes[:, 0]
    interior = grid.interior_mask(0.8)
    sten = DunklDerivativeStencil(np.array([1.0]), fd_order=6)
    even = SampledFunction(grid, np.exp(-(xs**2) / 2.0))
    deriv = dunkl_derivative(grid, sten, even)
    target = -xs * np.exp(-(xs**2) / 2.0)
    gap_even = float(np.max(np.abs(deriv.values - target)[interior]))
    ck.check("even_function_reduction", gap_even <= 1e-4, gap_even)

    g = SampledFunction(grid, np.exp(-(xs**2) / 2.0) * (1.0 + 0.3 * xs))
    h = SampledFunction(grid, np.exp(-(xs**2) / 1.7) * (1.0 - 0.2 * xs))
    anti = antisymmetry_defect(grid, g, h, order=6)
    ck.check("antisymmetry_gaussian", anti <= 1e-5, anti)
    sm_small = _aux_sm(kap, 10.0, 96)
    g2 = SampledFunction(
        sm_small.grid, np.exp(-(sm_small.grid.nodes[:, 0] ** 2) / 2.0) * (1.0 + 0.3 * sm_small.grid.nodes[:, 0])
    )
    h2 = SampledFunction(
        sm_small.grid, np.exp(-(sm_small.grid.nodes[:, 0] ** 2) / 1.7) * (1.0 - 0.2 * sm_small.grid.nodes[:, 0])
    )
    anti_small = antisymmetry_defect(sm_small.grid, g2, h2, order=6)
    ck.check("antisymmetry_improves", anti <= anti_small * 1.5, anti_small, hard=False)

    md = multiplier_defect(sm, g)
    ck.check("multiplier_identity", md <= 1e-4, md)

    lap_sten = dunkl_laplacian(grid, g, order=6)
    lap_spec = spectral_laplacian(sm, g)
    rel = float(
        np.max(np.abs(lap_sten.values - lap_spec.values)[interior])
        / max(np.max(np.abs(lap_spec.values)), 1e-300)
    )
    ck.check("laplacian_spectral_vs_stencil", rel <= 1e-3, rel)

    grp1 = generate_group(scene.rank_one)
    from .intertwine import phi_profile

    phiv = phi_profile(scene.rank_one, grp1, xs, np.array([0.5]), 64)
    pf = SampledFunction(grid, phiv)
    t2 = dunkl_derivative(grid, sten, dunkl_derivative(grid, sten, pf))
    ratio = float(np.max(np.abs(t2.values[interior]) / phiv[interior]))
    ck.metric("second_derivative_weight_ratio", ratio)
    ck.check("weight_ratio_finite", np.isfinite(ratio), ratio)

    worst = 0.0
    tphi = dunkl_derivative(grid, sten, pf)
    for _ in range(20):
        f = SampledFunction(
            grid, families.random_band_limited(xs, rng, n_terms=8, max_degree=16)
        )
        tf = dunkl_derivative(grid, sten, f)
        num = abs(np.sum(grid.mu_weights * tf.values * f.values * tphi.values))
        den = np.sum(grid.mu_weights * f.values**2 * phiv)
        worst = max(worst, float(num / den))
    ck.metric("form_bound_ratio", worst)
    ck.check("form_bound_finite", np.isfinite(worst), worst)
    return _finish(
        "operator_identities", ck, {"antisymmetry_vs_n": [(96.0, anti_small), (128.0, anti)]}
    )


@suite(
    "kernel_eigenfunction",
    "the kernel as joint eigenfunction of the stencil operator",
    "eigenrelation of the deformed exponential",
)
def suite_kernel_eigenfunction(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    curve = []
    worst_all = 0.0
    sten = DunklDerivativeStencil(np.array([1.0]), fd_order=6)
    for kap in (0.5, 1.5):
        rs1 = RootSystem.z2_product([kap])
        grid = build_grid(rs1, 4.0, 160)
        xs = grid.nodes[:, 0]
        interior = grid.interior_mask(0.8)
        for y in (0.5, 1.0, 2.0):
            e = SampledFunction(grid, kernel_bessel_1d(xs * y, kap))
            te = dunkl_derivative(grid, sten, e)
            res = float(np.max(np.abs(te.values - y * e.values)[interior]))
            worst_all = max(worst_all, res)
            curve.append((y, res))
    ck.check("eigen_residual", worst_all <= 1e-4, worst_all)
    return _finish("kernel_eigenfunction", ck, {"eigen_residual_vs_y": curve})


# ---------------------------------------------------------------------------
# heat suites


@suite(
    "heat_kernel",
    "heat kernel identities: mass, semigroup, closed form vs spectral flow",
    "closed-form heat kernel of the rank-one operator",
)
def suite_heat_kernel(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    if scene.rs.kind != "z2_product":
        raise CapabilityError("heat suite requires a sign product group")
    sm = scene.sm
    grid = scene.grid
    f = SampledFunction(grid, np.exp(-np.sum(grid.nodes**2, axis=1) / 2.0))
    ck.check("zero_time_identity", heat_apply(sm, 0.0, f) is f)
    a = heat_apply(sm, 0.3, heat_apply(sm, 0.2, f))
    b = heat_apply(sm, 0.5, f)
    sgap = float(np.max(np.abs(a.values - b.values)) / np.max(np.abs(b.values)))
    ck.check("semigroup_defect", sgap <= 1e-8, sgap)

    K = heat_kernel_matrix(grid, 0.5)
    quad_apply = K @ (grid.mu_weights * f.values)
    spec_apply = heat_apply(sm, 0.5, f)
    kgap = float(np.max(np.abs(quad_apply - spec_apply.values)) / np.max(np.abs(spec_apply.values)))
    ck.check("kernel_vs_spectral", kgap <= 1e-5, kgap)

    # mass / composition need boundary clearance ~ 7*sqrt(t): use the wide grid
    kgrid = scene.kernel_grid
    interior = kgrid.interior_mask(0.45)
    curve = []
    mass_worst = 0.0
    for t in (0.1, 0.5, 1.0):
        Kt = heat_kernel_matrix(kgrid, t)
        mass = Kt @ kgrid.mu_weights
        mgap = float(np.max(np.abs(mass[interior] - 1.0)))
        mass_worst = max(mass_worst, mgap)
        curve.append((t, mgap))
    ck.check("kernel_mass", mass_worst <= 1e-6, mass_worst)

    ckgap = 0.0
    idx = np.flatnonzero(interior)[:: max(1, interior.sum() // 24)]
    K1 = heat_kernel_matrix(kgrid, 0.2)
    K2 = heat_kernel_matrix(kgrid, 0.4)
    K3 = heat_kernel_matrix(kgrid, 0.6)
    comp = (K1 * kgrid.mu_weights[None, :]) @ K2
    ckgap = float(
        np.max(np.abs(comp[np.ix_(idx, idx)] - K3[np.ix_(idx, idx)]))
        / np.max(np.abs(K3[np.ix_(idx, idx)]))
    )
    ck.check("chapman_kolmogorov", ckgap <= 1e-6, ckgap)

    pos = SampledFunction(grid, np.exp(-np.abs(grid.nodes[:, 0])))
    sups = [float(np.max(np.abs(heat_apply(sm, t, pos).values))) for t in (0.0, 0.1, 0.5, 1.0)]
    mono = all(a >= b - 1e-12 for a, b in zip(sups[:-1], sups[1:]))
    ck.check("sup_norm_monotone", mono, sups)
    return _finish("heat_kernel", ck, {"heat_mass_gap_vs_t": curve})


@suite(
    "heat_gaussian_bounds",
    "Gaussian-shape upper bound fits for the heat kernel in three normalizations",
    "heat kernel upper bounds in the orbit distance",
)
def suite_heat_gaussian_bounds(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    rs1 = scene.rank_one
    t_list = tuple(float(t) for t in scene.cfg.sweeps["t_list"])
    rep = gaussian_bound_report(rs1, t_list, n_samples=40, seed=int(rng.integers(1 << 30)))
    curve = []
    for i, form in enumerate(sorted(rep["fits"])):
        C, c = rep["fits"][form]["C"], rep["fits"][form]["c"]
        ck.check(f"fit_finite_{form}", np.isfinite(C) and np.isfinite(c), [C, c])
        ck.check(f"decay_rate_positive_{form}", c > 0, c, hard=False)
        curve.append((float(i), c))
    rep2 = gaussian_bound_report(rs1, t_list, n_samples=80, seed=int(rng.integers(1 << 30)))
    for form in rep["fits"]:
        c1, c2 = rep["fits"][form]["c"], rep2["fits"][form]["c"]
        ck.check(
            f"rate_stable_{form}",
            abs(c1 - c2) <= 0.1 * max(c1, c2),
            [c1, c2],
            hard=False,
        )
    ck.metric("min_kernel_value", rep["min_kernel_value"])
    ck.check("kernel_positive", rep["min_kernel_value"] > 0.0)
    return _finish("heat_gaussian_bounds", ck, {"bound_rate_vs_form": curve})


# ---------------------------------------------------------------------------
# Schrodinger suites


@suite(
    "spectral_positivity",
    "operator assembly symmetry, nonnegative spectrum, quadratic form identity",
    "form sum of kinetic part and potential",
)
def suite_spectral_positivity(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    sm = scene.sm
    grid = scene.grid
    op = assemble_L(sm, scene.potential)
    ck.check("symmetrization_defect", op.symmetrization_defect <= 1e-6, op.symmetrization_defect)
    ed = eig(op)
    ck.check("spectrum_nonnegative", float(ed.eigenvalues[0]) >= -1e-8, float(ed.eigenvalues[0]))
    curve = [(float(i), float(ed.eigenvalues[i])) for i in range(min(20, ed.n_modes))]

    sten = DunklDerivativeStencil(np.array([1.0]), fd_order=6) if grid.dimension == 1 else None
    worst = 0.0
    xs = grid.nodes[:, 0]
    for _ in range(5):
        if grid.dimension == 1:
            # smooth decaying combos keep the stencil-vs-spectral gap sharp
            coef = rng.normal(size=6)
            vals = sum(c * families.hermite_function(n, xs) for n, c in enumerate(coef))
        else:
            vals = np.exp(-np.sum(grid.nodes**2, axis=1))
        f = SampledFunction(grid, vals)
        g = np.sqrt(grid.mu_weights) * f.values
        quad_form = float(g @ (op.matrix @ g))
        pot_part = float(np.sum(grid.mu_weights * scene.potential.values * f.values**2))
        if grid.dimension == 1:
            tf = dunkl_derivative(grid, sten, f)
            kin = tf.norm_l2() ** 2
        else:
            lap = spectral_laplacian(sm, f)
            kin = -float(np.sum(grid.mu_weights * lap.values * f.values))
        rel = abs(quad_form - (kin + pot_part)) / max(abs(quad_form), 1e-300)
        worst = max(worst, rel)
    ck.check("quadratic_form_identity", worst <= 1e-4, worst)

    cshift = 0.8
    op0 = assemble_L(sm, None)
    ed0 = eig(op0)
    opc = assemble_L(sm, potential_preset(grid, "constant", c=cshift))
    edc = eig(opc)
    shift_gap = float(np.max(np.abs(edc.eigenvalues - ed0.eigenvalues - cshift)))
    ck.check("constant_shift_spectrum", shift_gap <= 1e-8 * max(1.0, float(ed0.eigenvalues[-1])), shift_gap)

    red = scene.kernel_resolved("constant", c=cshift)
    red0 = scene.kernel_resolved("zero")
    W = schrodinger_kernel(red, 0.5)
    W0 = schrodinger_kernel(red0, 0.5)
    kgap = float(np.max(np.abs(W - math.exp(-0.5 * cshift) * W0)) / np.max(np.abs(W0)))
    ck.check("constant_shift_kernel", kgap <= 1e-8, kgap)
    return _finish("spectral_positivity", ck, {"spectrum_vs_index": curve})


@suite(
    "domination",
    "pointwise domination of the damped kernel by the free kernel",
    "semigroup sandwich between zero and the free flow",
)
def suite_domination(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    grid = scene.kernel_grid
    if grid.dimension != 1:
        raise CapabilityError("domination suite runs on rank-one kernel grids")
    # bump edge width 6: the sharper w=4 edge carries content past the
    # resolved-mode cap and costs ~5e-8 in the vector bound
    presets = [("constant", {"c": 1.0}), ("soft_coulomb", {"a": 1.0}), ("bump", {"h": 1.0, "w": 6.0})]
    curve = []
    worst_neg, worst_over, worst_vec = 0.0, 0.0, 0.0
    for t in (0.1, 0.5, 1.0):
        K = heat_kernel_matrix(grid, t)
        kmax = float(np.max(K))
        for name, params in presets:
            ed = scene.kernel_resolved(name, **params)
            W = schrodinger_kernel(ed, t)
            neg = max(0.0, -float(np.min(W)))
            over = max(0.0, float(np.max(W - K)))
            worst_neg = max(worst_neg, neg)
            worst_over = max(worst_over, over)
            if name == "soft_coulomb":
                curve.append((t, over))
            # envelope keeps u inside the resolved region; boundary nodes see
            # only quadrature-floor kernel values
            u = families.random_band_limited(
                grid.nodes[:, 0], rng, n_terms=6, max_degree=12
            ) * np.exp(-grid.nodes[:, 0] ** 2 / 8.0)
            Wu = W @ (grid.mu_weights * u)
            Ku = K @ (grid.mu_weights * np.abs(u))
            worst_vec = max(worst_vec, float(np.max(np.abs(Wu) - Ku)))
    ck.check("kernel_nonnegative", worst_neg <= 1e-6, worst_neg)
    ck.check("kernel_below_free", worst_over <= 1e-6, worst_over)
    ck.check("vector_domination", worst_vec <= 1e-8, worst_vec)

    mono_worst = 0.0
    for t in (0.25, 0.5, 1.0):
        W1 = schrodinger_kernel(scene.kernel_resolved("soft_coulomb", a=1.0), t)
        W2 = schrodinger_kernel(scene.kernel_resolved("soft_coulomb", a=0.5), t)
        # larger potential (smaller a) damps more; gate sits above the
        # resolved-mode floor but far below kernel scale
        mono_worst = max(mono_worst, float(np.max(W2 - W1)))
    ck.check("potential_monotonicity", mono_worst <= 1e-7, mono_worst)
    return _finish("domination", ck, {"domination_gap_vs_t": curve})


@suite(
    "trotter_order",
    "first-order splitting error against the eigencalculus reference",
    "product formula convergence for the damped semigroup",
)
def suite_trotter_order(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    sm = scene.sm
    grid = scene.grid
    V = scene.potential
    ed = resolved_calculus(grid, V)
    f = SampledFunction(grid, np.exp(-np.sum(grid.nodes**2, axis=1) / 2.0))
    t = 1.0
    ref = semigroup_apply(ed, t, f)
    errs, curve = [], []
    for n in (8, 16, 32, 64):
        tr = semigroup_trotter(sm, V, t, n, f)
        err = SampledFunction(grid, tr.values - ref.values).norm_l2()
        errs.append(err)
        curve.append((float(n), err))
    ratios = [errs[i] / errs[i + 1] for i in range(len(errs) - 1)]
    ok = all(1.6 <= r <= 2.4 for r in ratios)
    ck.check("halving_ratios", ok, ratios)
    slope = float(np.polyfit(np.log([8, 16, 32, 64]), np.log(errs), 1)[0])
    ck.check("order_slope", -1.25 <= slope <= -0.75, slope, hard=False)
    return _finish("trotter_order", ck, {"trotter_error_vs_n": curve})


@suite(
    "riesz_l2",
    "Riesz transform L2 bound, inverse square root paths, linearity",
    "derivative of the inverse square root is an L2 contraction",
)
def suite_riesz_l2(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    grid = scene.kernel_grid
    xs = grid.nodes[:, 0]
    worst_ratio, worst_sub = 0.0, 0.0
    curve = []
    for preset, params in (("zero", {}), (None, None)):
        ed = scene.kernel_resolved(preset, **(params or {})) if preset else scene.kernel_resolved()
        R = riesz_matrix(ed, 0, order=6)
        for i in range(12):
            f = SampledFunction(
                grid, families.random_band_limited(xs, rng, n_terms=8, max_degree=16)
            )
            rf = SampledFunction(grid, R @ f.values)
            ratio = rf.norm_l2() / max(f.norm_l2(), 1e-300)
            worst_ratio = max(worst_ratio, float(ratio))
            if preset == "zero":
                curve.append((float(i), float(ratio)))
        f = SampledFunction(grid, np.exp(-(xs**2) / 2.0))
        direct = inv_sqrt_apply(ed, f)
        sub, est = inv_sqrt_subordination(ed, f)
        gap = SampledFunction(grid, direct.values - sub.values).norm_l2() / max(
            direct.norm_l2(), 1e-300
        )
        worst_sub = max(worst_sub, float(gap))
        ck.metric(f"subordination_self_estimate_{preset or 'scene'}", est)
    ck.check("l2_ratio_bound", worst_ratio <= 1.0 + 1e-3, worst_ratio)
    ck.check("subordination_gap", worst_sub <= 1e-4, worst_sub)

    ed = scene.kernel_resolved("zero")
    R = riesz_matrix(ed, 0, order=6)
    f1 = families.random_band_limited(xs, rng, n_terms=5, max_degree=10)
    f2 = families.random_band_limited(xs, rng, n_terms=5, max_degree=10)
    lin = float(np.max(np.abs(R @ (2.0 * f1 - 3.0 * f2) - (2.0 * (R @ f1) - 3.0 * (R @ f2)))))
    ck.check("linearity", lin <= 1e-10 * max(1.0, float(np.max(np.abs(R @ f1)))), lin)

    f = SampledFunction(grid, np.exp(-(xs**2) / 2.0))
    Lf = ed.function_frame_apply(ed.eigenvalues, f.values)
    back = inv_sqrt_apply(ed, inv_sqrt_apply(ed, SampledFunction(grid, Lf)))
    rt = SampledFunction(grid, back.values - f.values).norm_l2() / f.norm_l2()
    ck.check("inverse_root_roundtrip", rt <= 1e-6, float(rt))
    return _finish("riesz_l2", ck, {"riesz_ratio_vs_index": curve})


@suite(
    "weak11",
    "weak type (1,1) ratio over a shrinking atom family, refinement drift",
    "distributional bound for the transform of atoms",
)
def suite_weak11(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    kap = scene.kappa0
    rs1 = RootSystem.z2_product([kap])
    atoms = [(0.0, 1.0), (0.0, 0.5), (0.0, 0.35), (1.3, 1.0), (1.3, 0.5), (1.3, 0.35)]
    sups, curve = {}, []
    for N in (256, 384):
        grid = build_grid(rs1, 10.0, N)
        pot = potential_preset(grid, "soft_coulomb", a=1.0)
        ed = resolved_calculus(grid, pot)
        rep = weak_type_report(ed, atoms, axis=0, order=6)
        sups[N] = rep["sup_ratio"]
        if N == 384:
            for row in rep["atoms"]:
                curve.append((row["radius"], row["ratio"]))
            ck.check(
                "atoms_resolved",
                not any(r["under_resolved"] for r in rep["atoms"]),
                [r["radius"] for r in rep["atoms"]],
            )
    drift = abs(sups[384] - sups[256]) / max(sups[256], 1e-300)
    ck.check("sup_ratio_finite", np.isfinite(sups[384]), sups[384])
    ck.check("refinement_drift", drift <= 0.25, drift)
    curve.sort()
    return _finish("weak11", ck, {"weak11_ratio_vs_radius": curve})


@suite(
    "weighted_phi",
    "weighted gradient-kernel boundedness, tail fit, and scaling identity",
    "weighted square function estimates for the damped kernel",
)
def suite_weighted_phi(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    t_list = (0.25, 0.5, 1.0, 2.0, 4.0)
    curve = []
    for kap in (0.0, 1.0):
        rs1 = RootSystem.z2_product([kap])
        grid = build_grid(rs1, 10.0, 128)
        grp1 = generate_group(rs1)
        ed = resolved_calculus(grid, None)
        rep = weighted_estimate_report(ed, grp1, t_list, (0.1, 0.3))
        for y in (0.1, 0.3):
            vals = [rep["normalized_lhs"][(y, t)] for t in t_list]
            spread = max(vals) / max(min(vals), 1e-300)
            ck.check(f"bounded_ratio_k{kap}_y{y}", spread < 2.0, spread)
            if kap == 1.0 and y == 0.1:
                curve = [(t, v) for t, v in zip(t_list, vals)]
        for y, fit in rep["tail_fit"].items():
            ck.check(f"tail_rate_positive_k{kap}_y{y}", fit["c"] > 0.0, fit["c"])
    gap = scaling_identity_gap(
        RootSystem.z2_product([scene.kappa0]),
        10.0,
        128,
        potential_function("soft_coulomb", a=1.0),
        4.0,
    )
    ck.check("scaling_identity", gap <= 1e-4, gap)
    return _finish("weighted_phi", ck, {"eq01_normalized_vs_t": curve})


# ---------------------------------------------------------------------------
# Kato suites


@suite(
    "kato_class",
    "class verdicts for the potential presets, sandwich and growth bounds",
    "vanishing local singular mass of the potential",
)
def suite_kato_class(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    rs1 = scene.rank_one
    probes = (0.0, 0.25, 0.5, 1.0, 2.0)
    cases = [
        ("constant", {"c": 1.0}, "Kato"),
        ("soft_coulomb", {"a": 1.0}, "Kato"),
        ("bump", {"h": 1.0, "w": 4.0}, "Kato"),
        ("inverse_power", {"beta": 0.75, "cutoff": 1.0}, "Kato"),
        ("inverse_power", {"beta": 1.5, "cutoff": 1.0}, "NotKato"),
    ]
    for name, params, expect in cases:
        fn = potential_function(name, **params)
        rep = kato.classify(rs1, fn, probes=probes)
        tag = f"verdict_{name}_{params.get('beta', '')}"
        ck.check(tag, rep.verdict == expect, rep.verdict)
    scene_fn = scene.V_fn
    curve = []
    for t in (0.01, 0.03, 0.1, 0.3, 1.0):
        m = kato.kato_modulus(scene_fn, t, kato.CLASSICAL, 1, probes)
        curve.append((t, m.value if np.isfinite(m.value) else -1.0))
    finite_vals = [v for _, v in curve if v >= 0]
    mono = all(a <= b * (1 + 1e-9) for a, b in zip(finite_vals[:-1], finite_vals[1:]))
    ck.check("modulus_monotone", mono, finite_vals)

    eq = kato.kato_equivalence_check(
        potential_function("soft_coulomb", a=1.0), (0.25, 0.5, 1.0), probes=probes
    )
    ck.check(
        "sandwich_lower",
        all(r["lower_slack"] >= -1e-8 for r in eq["rows"]),
        min(r["lower_slack"] for r in eq["rows"]),
    )
    ck.check(
        "sandwich_upper",
        all(r["upper_slack"] >= -1e-8 for r in eq["rows"]),
        min(r["upper_slack"] for r in eq["rows"]),
    )

    # trivial group: the flat integral is 2r, so C = sup 2r/(r+1) stays below 2
    gb = kato.growth_bound_check(
        potential_function("constant", c=1.0), (0.5, 1.0, 2.0, 4.0), probes=probes,
        sign_group=False,
    )
    ck.check("growth_constant_flat", gb["C"] <= 2.0 + 1e-9, gb["C"])
    gb2 = kato.growth_bound_check(
        potential_function("soft_coulomb", a=1.0), (0.5, 1.0, 2.0, 4.0), probes=probes
    )
    ck.check("growth_soft_coulomb_stable", gb2["stable"], [gb2["C"], gb2["C_extended"]])
    gb3 = kato.growth_bound_check(
        potential_function("bump", h=1.0, w=4.0), (0.5, 1.0, 2.0, 4.0), probes=probes
    )
    ck.check("growth_bump_plateau", gb3["stable"], gb3["C"])
    return _finish("kato_class", ck, {"kato_modulus_vs_t": curve})


@suite(
    "kato_heat",
    "heat characterization: time-integrated kernel mass and resolvent decay",
    "semigroup characterization of the potential class",
)
def suite_kato_heat(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    rs1 = scene.rank_one
    one = potential_function("constant", c=1.0)
    probes = (0.0, 0.7, 1.5)
    h1 = kato.heat_modulus(rs1, one, 1.0, probes)
    ck.check("constant_heat_modulus_t1", abs(h1 - 1.0) <= 1e-8, h1)
    h03 = kato.heat_modulus(rs1, one, 0.3, probes)
    ck.check("constant_heat_modulus_t03", abs(h03 - 0.3) <= 1e-8, h03)

    soft = potential_function("soft_coulomb", a=1.0)
    ladder = (1.0, 0.3, 0.1, 0.03)
    # trend legs run coarse; the constant-exactness legs above stay tight
    vals = [
        kato.heat_modulus(rs1, soft, t, probes, order=4, n_panels=6, epsabs=1e-8)
        for t in ladder
    ]
    dec = all(a > b for a, b in zip(vals[:-1], vals[1:]))
    ck.check("heat_modulus_decreasing", dec, vals)
    curve = [(t, v) for t, v in zip(ladder, vals)]

    rd = kato.resolvent_decay(rs1, one, (1.0, 4.0), probes=(0.0,))
    worst = max(abs(r["norm"] - 1.0 / r["a"]) for r in rd["rows"])
    ck.check("constant_resolvent_exact", worst <= 1e-10, worst)
    rd2 = kato.resolvent_decay(
        rs1, soft, (1.0, 4.0, 16.0, 64.0), probes=(0.0, 1.0), epsabs=1e-8
    )
    norms = [r["norm"] for r in rd2["rows"]]
    ck.check("resolvent_decreasing", all(a > b for a, b in zip(norms[:-1], norms[1:])), norms)
    ck.check(
        "resolvent_below_bound",
        all(r["norm"] <= r["bound"] * (1 + 1e-9) for r in rd2["rows"]),
        [r["bound"] for r in rd2["rows"]],
    )

    split = kato.heat_modulus_split(rs1, soft, 0.3, probes=(0.0,))
    parts = split["majorant_at_sup"]
    maj = math.exp(0.3) * (parts["small_ball"] + parts["tail"])
    hm = kato.heat_modulus(rs1, soft, 0.3, (0.0,), order=4, n_panels=6, epsabs=1e-8)
    ck.check("split_majorizes", hm <= maj * (1 + 1e-9), [hm, maj], hard=False)
    ck.metric("split_beta", split["beta"])
    return _finish("kato_heat", ck, {"heat_modulus_vs_t": curve})


@suite(
    "smoothing",
    "endpoint kernel norms and their interpolated interior values",
    "boundedness of the damped semigroup between endpoint spaces",
)
def suite_smoothing(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    ed = scene.kernel_resolved()
    ed0 = scene.kernel_resolved("zero")
    grid = ed.grid
    d = grid.dimension
    gam = gamma_k(grid.rs)
    pq = [(1, 2), (2, 2), (2, "inf"), (1, "inf")]
    curve = []
    prev = None
    for t in (0.1, 0.5, 1.0):
        rep = kato.smoothing_norms(ed, t, pq)
        for v in rep.corner_norms.values():
            ck.check(f"corner_finite_t{t}", np.isfinite(v), v)
        ck.check(
            f"row_mass_contraction_t{t}",
            rep.corner_norms[("inf", "inf")] <= 1.0 + 1e-6,
            rep.corner_norms[("inf", "inf")],
        )
        sym = abs(rep.corner_norms[(1, 1)] - rep.corner_norms[("inf", "inf")])
        ck.check(f"self_adjoint_t{t}", sym <= 1e-8, sym)
        ck.check(
            f"interpolation_dominates_l2_t{t}",
            rep.interpolated[(2, 2)] >= rep.l2_direct - 1e-10,
            [rep.interpolated[(2, 2)], rep.l2_direct],
        )
        if prev is not None:
            dec = all(
                rep.corner_norms[key] <= prev.corner_norms[key] * (1 + 1e-9)
                for key in rep.corner_norms
            )
            ck.check(f"norms_decreasing_t{t}", dec)
        prev = rep
        curve.append((t, rep.corner_norms[(1, "inf")]))
    rep0 = kato.smoothing_norms(ed0, 0.5, [(2, 2)])
    ck.check(
        "free_row_mass_one",
        abs(rep0.corner_norms[("inf", "inf")] - 1.0) <= 1e-6,
        rep0.corner_norms[("inf", "inf")],
    )
    Cs = [
        curve_v * t ** (d / 2.0 + gam)
        for (t, curve_v) in curve
    ]
    ck.check("sup_norm_power_fit", max(Cs) <= 2.0 * min(Cs), Cs, hard=False)
    ck.metric("fitted_smoothing_constant", max(Cs))
    return _finish("smoothing", ck, {"smoothing_norm_vs_t": curve})


@suite(
    "classical_limit",
    "vanishing multiplicity reduction to Fourier, Gauss, and Hilbert behavior",
    "degenerate case recovering the classical operators",
)
def suite_classical_limit(scene: Scene, rng) -> SuiteResult:
    ck = Checks()
    sm = _aux_sm(0.0, 10.0, 128)
    grid = sm.grid
    xs = grid.nodes[:, 0]
    ck.check(
        "normalization_sqrt_2pi",
        abs(sm.ck - math.sqrt(2.0 * math.pi)) <= 1e-8,
        sm.ck,
    )
    g = SampledFunction(grid, np.exp(-(xs**2) / 2.0))
    gt = dunkl_transform(sm, g)
    fg = float(np.max(np.abs(gt.values - np.exp(-(xs**2) / 2.0))))
    ck.check("gaussian_self_transform", fg <= 1e-8, fg)

    rs0 = RootSystem.z2_product([0.0])
    curve = []
    worst = 0.0
    for t in (0.1, 0.5, 1.0):
        K = heat_kernel_matrix(grid, t)
        classical = np.exp(-((xs[:, None] - xs[None, :]) ** 2) / (4.0 * t)) / math.sqrt(
            4.0 * math.pi * t
        )
        gap = float(np.max(np.abs(K - classical)))
        worst = max(worst, gap)
        curve.append((t, gap))
    ck.check("classical_heat_kernel", worst <= 1e-8, worst)

    ed0 = resolved_calculus(grid, None)
    R = riesz_matrix(ed0, 0, order=6)
    interior = grid.interior_mask(0.7)
    worst_r, worst_sq = 0.0, 0.0
    for _ in range(10):
        # apply the flow generator first: a double transform-side zero at the
        # origin keeps the nonlocal 1/x tail of Rf inside the box
        coef = rng.normal(size=6)
        g = SampledFunction(grid, sum(c * families.hermite_function(n, xs) for n, c in enumerate(coef)))
        f = spectral_laplacian(sm, g).values
        rf = R @ f
        ratio = math.sqrt(
            float(np.sum(grid.mu_weights * rf**2)) / float(np.sum(grid.mu_weights * f**2))
        )
        worst_r = max(worst_r, ratio)
        sq = R @ rf + f
        rel = float(
            np.max(np.abs(sq[interior])) / max(np.max(np.abs(f)), 1e-300)
        )
        worst_sq = max(worst_sq, rel)
    ck.check("hilbert_isometry", worst_r <= 1.0 + 1e-3, worst_r)
    ck.check("hilbert_squares_to_minus_one", worst_sq <= 1e-2, worst_sq, hard=False)

    fn = potential_function("soft_coulomb", a=1.0)
    mc = kato.kato_modulus(fn, 0.5, kato.CLASSICAL, 1, (0.0, 1.0), sign_group=False)
    mo = kato.kato_modulus(fn, 0.5, kato.ORBIT, 1, (0.0, 1.0), sign_group=False)
    ck.check("trivial_group_moduli_coincide", mc.value == mo.value, [mc.value, mo.value])
    return _finish("classical_limit", ck, {"classical_kernel_gap_vs_t": curve})


# ---------------------------------------------------------------------------
# runner


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return v
    return str(v)


def write_curves_csv(path: Path, curves: dict) -> None:
    lines = ["curve,x,y"]
    for name in sorted(curves):
        for x, y in curves[name]:
            lines.append("%s,%.12e,%.12e" % (name, float(x), float(y)))
    path.write_text("\n".join(lines) + "\n")


def run_suites(
    cfg: RunConfig, out_dir: Path, seed: int, strict: bool = False
) -> dict:
    """Execute the configured suites in order; write summary and curve files.

    Returns the summary mapping (also persisted as summary.json).
    """
    import json

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    scene = Scene(cfg)
    suite_block = {}
    curve_index = {}
    all_hard = True
    all_soft = True
    for i, name in enumerate(cfg.suites):
        defn = REGISTRY[name]
        rng = np.random.default_rng([seed, i])
        res = defn.fn(scene, rng)
        write_curves_csv(out_dir / f"{name}.csv", res.curves)
        for cname in res.curves:
            curve_index[cname] = name
        all_hard &= res.hard_pass
        if res.soft_pass is False:
            all_soft = False
        suite_block[name] = {
            "description": res.description,
            "anchor": res.anchor,
            "pass": res.hard_pass,
            "soft_pass": res.soft_pass,
            "hard_checks": _jsonable(res.hard_checks),
            "soft_checks": _jsonable(res.soft_checks),
            "values": _jsonable(res.values),
        }
    overall = all_hard and (all_soft or not strict)
    summary = {
        "seed": int(seed),
        "strict": bool(strict),
        "config": {
            "group": _jsonable(cfg.group),
            "grid": _jsonable(cfg.grid),
            "potential": _jsonable(cfg.potential),
            "sweeps": _jsonable(cfg.sweeps),
        },
        "suite_order": list(cfg.suites),
        "suites": suite_block,
        "curves": curve_index,
        "all_hard_pass": bool(all_hard),
        "overall_pass": bool(overall),
    }
    (out_dir / "summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n"
    )
    return summary
