"""Verification suites behind `spinmono verify`."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import currents, gauge, harmonics, operators, pauli, radial, wigner
from .fields import basis_spinor, random_spinor, valid_js
from .numerics import HalfInt, SphereGrid, as_half

SUITES = ("wigner", "algebra", "jmin", "gauge", "currents")
DEFAULT_KS = ("0", "1/2", "-1/2", "1", "-1", "3/2")
JMIN_KS = ("1/2", "-1/2", "1", "-1", "3/2", "-3/2", "2", "-2")


@dataclass
class Check:
    name: str
    residual: float
    tol: float
    passed: bool | None = None
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.passed is None:
            self.passed = bool(self.residual < self.tol)

    def as_dict(self) -> dict:
        out = {"check": self.name, "residual": float(self.residual), "tol": float(self.tol), "pass": bool(self.passed)}
        out.update(self.detail)
        return out


@dataclass(frozen=True)
class VerifyConfig:
    grid: SphereGrid
    tol: float = 1e-8
    seed: int = 0
    k: HalfInt | None = None
    j: HalfInt | None = None
    m: HalfInt | None = None
    eps: float = 0.6
    mass: float = 1.0
    n_random: int = 5


def _ks(cfg: VerifyConfig, default=DEFAULT_KS):
    return [cfg.k] if cfg.k is not None else [as_half(k) for k in default]


def suite_wigner(cfg: VerifyConfig) -> list[Check]:
    g = cfg.grid
    out = []
    worst = 0.0
    for lam2 in range(-4, 5):
        lam = HalfInt(lam2)
        for j in pauli.allowed_j(lam, 8):
            if j.twice > 7:
                break
            ms = [-j + i for i in range(j.twice + 1)]
            vals = [wigner.phi_jm(lam, j, m, g.theta, g.phi) for m in ms]
            G = np.array([[g.integrate(np.conj(a) * b) for b in vals] for a in vals])
            worst = max(worst, float(np.max(np.abs(G - np.eye(len(ms))))))
    out.append(Check("gram_identity j<=7/2 |2lam|<=4", worst, min(cfg.tol, 1e-10)))
    worst = 0.0
    for k2 in range(-4, 5):
        for j2 in range(0, 10):
            if (j2 - k2) % 2 == 0 or j2 < abs(k2) - 1:
                continue
            for m2 in range(-j2, j2 + 1, 2):
                r = wigner.recursion_residuals(HalfInt(j2), HalfInt(m2), HalfInt(k2), g.theta_nodes)
                worst = max(worst, max(r))
    out.append(Check("theta_recursions 2j<=9 |2k|<=4", worst, cfg.tol))
    worst = 0.0
    for j2 in range(0, 10):
        rows = sum(wigner.little_d(HalfInt(j2), HalfInt(j2), HalfInt(b))(g.theta_nodes) ** 2 for b in range(-j2, j2 + 1, 2))
        worst = max(worst, float(np.max(np.abs(rows - 1))))
    out.append(Check("unitarity_row_sum 2j<=9", worst, 1e-12))
    worst = 0.0
    for lam, j in (("1/2", "1/2"), ("-1/2", "3/2"), ("1", "2"), ("3/2", "5/2")):
        j = as_half(j)
        for m in [-j + i for i in range(j.twice + 1)]:
            ratio = wigner.ladder_construct(lam, j, m)(g.theta, g.phi) / wigner.phi_jm(lam, j, m, g.theta, g.phi)
            worst = max(worst, float(np.max(np.abs(ratio - ratio.flat[0]))))
    out.append(Check("ladder_vs_closed_form ratio spread", worst, 1e-10))
    return out


def suite_algebra(cfg: VerifyConfig) -> list[Check]:
    g = cfg.grid
    rng = np.random.default_rng(cfg.seed)
    out = []
    for k in _ks(cfg):
        worst = 0.0
        for _ in range(cfg.n_random):
            psi = random_spinor(k, rng, j_max=HalfInt(7))
            worst = max(worst, max(operators.commutator_residuals(psi, g)))
        out.append(Check(f"su2_commutators k={k}", worst, cfg.tol))
        worst_cas, worst_sig = 0.0, 0.0
        for j in valid_js(k, HalfInt(7)):
            for m in (-j, j):
                f = rng.normal(size=4) + 1j * rng.normal(size=4)
                psi = basis_spinor(k, j, m, f)
                jj = float(j) * (float(j) + 1)
                worst_cas = max(worst_cas, operators.relative_residual(
                    operators.casimir(psi).sample(g), psi.scaled(jj).sample(g)))
                worst_sig = max(worst_sig, operators.apply_sigma(k, psi, g).residual)
        out.append(Check(f"casimir k={k}", worst_cas, cfg.tol))
        out.append(Check(f"sigma_pattern k={k}", worst_sig, cfg.tol))
    return out


def suite_jmin(cfg: VerifyConfig) -> list[Check]:
    g = cfg.grid
    out = []
    for k in _ks(cfg, JMIN_KS):
        if k.twice == 0:
            raise ValueError("k = 0 has no j_min state")
        j = operators.j_min(k)
        sig = kres = 0.0
        verdict_ok = True
        for m in [-j + i for i in range(j.twice + 1)]:
            psi = basis_spinor(k, j, m, [0.6, 0.8, 0.3 - 0.2j, 0.5j])
            scale = max(float(np.max(np.abs(psi.sample(g)))), 1e-300)
            sig = max(sig, float(np.max(np.abs(operators.apply_sigma(k, psi).field.sample(g)))) / scale)
            kres = max(kres, float(np.max(np.abs(operators.apply_K(k, psi).field.sample(g)))) / scale)
            verdict_ok &= operators.apply_parity("N", psi, g).eigenvalue is None
        out.append(Check(f"sigma_annihilation k={k}", sig, cfg.tol))
        out.append(Check(f"K_null k={k}", kres, cfg.tol))
        out.append(Check(f"N_no_eigenvector k={k}", 0.0 if verdict_ok else 1.0, 0.5, verdict_ok))
        sol = radial.jmin_solve(k, cfg.eps, cfg.mass)
        out.append(Check(f"jmin_radial_pair k={k}", radial.jmin_pair_residual(sol, np.linspace(0.1, 5, 8)), 1e-9))
    return out


def suite_gauge(cfg: VerifyConfig) -> list[Check]:
    g = cfg.grid
    out = []
    gc = 0.8
    for k in ("1/2", "1", "3/2"):
        shift = gauge.potential_shift("S", "D", k, gc)
        out.append(Check(f"potential_shift S->D k={k}", abs(shift - (-gc)), 1e-12))
    for k in _ks(cfg, ("1/2", "-1", "3/2", "0")):
        j = operators.j_min(k) + 1 if k.twice else HalfInt(3)
        for delta in (1, -1):
            psi = basis_spinor(k, j, j - 1, [0.6, 0.3j, 0.3j * delta, 0.6 * delta])
            trip = [gauge.eigen_triple(gauge.gauge_transform(psi, G), g) for G in ("S", "D", "WY_N", "WY_S")]
            spread = max(abs(a - b) for t in trip for a, b in zip(t, trip[0]))
            out.append(Check(f"eigen_invariance k={k} j={j} delta={delta}", spread, 1e-10,
                             detail={"m": str(trip[0][0].real), "K": str(trip[0][1].real), "N": str(trip[0][2])}))
    agree = all(gauge.wy_single_valued(x) == (abs(2 * x - round(2 * x)) < 1e-12) for x in (0.5, 1.0, 1.5, 1 / 3, 0.25, 0.7))
    out.append(Check("wy_single_valued iff 2k integer", 0.0 if agree else 1.0, 0.5, agree))
    for p in radial.PROFILES.values():
        out.append(Check(f"maxwell {p.name}", gauge.maxwell_residual(p, gc, np.linspace(0.2, 2.9, 7)), 1e-12))
    return out


def suite_currents(cfg: VerifyConfig) -> list[Check]:
    g = cfg.grid
    out = []
    th, ph = g.theta, g.phi
    f = (0.6 + 0.2j, 0.3j, 0.4, 0.1 - 0.5j)
    jth = jph = 0.0
    for k in _ks(cfg, ("0", "1/2", "-1/2", "1", "-3/2")):
        for j in valid_js(k, HalfInt(7)):
            if k.twice and j == operators.j_min(k):
                mode = harmonics.MonopoleMode(k, j, j, f)
                jph = max(jph, float(np.max(np.abs(currents.current_of_mode(mode, th, ph).Jphi))))
                continue
            for delta in (1, -1):
                mode = harmonics.MonopoleMode(k, j, -j + 1 if j.twice > 1 else j, f, delta=delta)
                jth = max(jth, float(np.max(np.abs(currents.current_of_mode(mode, th, ph).Jtheta))))
    out.append(Check("Jtheta_zero fixed-N", jth, 1e-12))
    out.append(Check("Jphi_zero j_min", jph, 1e-12))
    k = cfg.k if cfg.k is not None and cfg.k.twice else HalfInt(1)
    jc = operators.j_min(k) + 1
    mode = harmonics.MonopoleMode(k, jc, jc - 1, f)
    ctrl = float(np.max(np.abs(currents.current_of_mode(mode, th, ph).Jphi)))
    out.append(Check("Jphi_positive_control exceeds tol", ctrl, 1e-3, ctrl > 1e-3))
    base = currents.current_of_mode(mode, th, ph).as_array()
    spread = max(float(np.max(np.abs(currents.current_of_mode(mode, th, ph, gauge=G).as_array() - base)))
                 for G in ("D", "WY_N", "WY_S"))
    out.append(Check("current_gauge_invariance", spread, 1e-12))
    return out


SUITE_FUNCS = {
    "wigner": suite_wigner,
    "algebra": suite_algebra,
    "jmin": suite_jmin,
    "gauge": suite_gauge,
    "currents": suite_currents,
}


def run_suite(name: str, cfg: VerifyConfig) -> list[Check]:
    if name == "all":
        return [c for s in SUITES for c in SUITE_FUNCS[s](cfg)]
    if name not in SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return SUITE_FUNCS[name](cfg)
