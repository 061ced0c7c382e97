"""Verification suites run by ``curved-maxwell verify``.

Every suite returns a list of Check records; a check passes when the observed
value is at most its tolerance (or at least it, for negative controls).
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import flat_check, geometry, matrix_core, modes, radial, wigner
from .errors import QuantizationError
from .geometry import SpaceModel
from .matrix_core import alpha, j_generator

SCOPES = ("algebra", "geometry", "wigner", "radial", "modes", "flat")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    tolerance: float
    observed: float
    at_least: bool = False

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.observed):
            return False
        return self.observed >= self.tolerance if self.at_least else self.observed <= self.tolerance

    def line(self) -> str:
        op = ">=" if self.at_least else "<="
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  [{self.suite}] {self.name}: {self.observed:.3e} (need {op} {self.tolerance:.0e})"


def algebra(tol: float = 1e-15) -> list[Check]:
    return [Check("algebra", k, tol, v) for k, v in matrix_core.verify_algebra().items()]


def geometry_suite(n_points: int = 100, seed: int = 1, tol: float = 1e-7) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for model in (SpaceModel.s3(), SpaceModel.h3()):
        tag = model.kind.value
        pts = geometry.random_interior_points(model, n_points, rng)
        gam = max(np.max(np.abs(geometry.christoffel(model, x) - geometry.christoffel_fd(model, x))) for x in pts)
        ric = max(np.max(np.abs(geometry.ricci_rotation(model, x) - geometry.ricci_rotation_fd(model, x))) for x in pts)
        anti = max(np.max(np.abs(geometry.ricci_rotation(model, x) + np.swapaxes(geometry.ricci_rotation(model, x), 0, 1))) for x in pts)
        orth = max(geometry.tetrad_orthonormality(model, x) for x in pts)
        compat = max(geometry.metric_compatibility_fd(model, x) for x in pts)
        conn = 0.0
        conn_fd = 0.0
        op = 0.0
        for x in pts[:20]:
            closed = geometry.connection(model, x)
            conn = max(conn, max(np.max(np.abs(a - b)) for a, b in zip(closed, geometry.connection_from_ricci(model, x))))
            conn_fd = max(conn_fd, max(np.max(np.abs(a - b)) for a, b in zip(closed, geometry.connection_fd(model, x))))
            op = max(op, connection_term_mismatch(model, x))
        out += [
            Check("geometry", f"{tag}: Christoffel closed form vs metric FD", tol, gam),
            Check("geometry", f"{tag}: Ricci rotation closed form vs definition FD", tol, ric),
            Check("geometry", f"{tag}: Ricci rotation antisymmetry", 0.0, anti),
            Check("geometry", f"{tag}: tetrad orthonormality", 1e-13, orth),
            Check("geometry", f"{tag}: metric compatibility (FD)", 1e-6, compat),
            Check("geometry", f"{tag}: connection closed form vs Ricci assembly", 1e-14, conn),
            Check("geometry", f"{tag}: connection closed form vs tetrad FD", tol, conn_fd),
            Check("geometry", f"{tag}: alpha^rho A_rho vs separated connection term", 1e-14, op),
        ]
    return out


def connection_term_mismatch(model: SpaceModel, x) -> float:
    """Compare alpha^rho A_rho with (alpha1 j31 + alpha2 j32) r'/r + alpha2 cos j12 / (r sin)."""
    a = geometry.alpha_coordinate(model, x)
    A = geometry.connection(model, x)
    lhs = sum(a[r] @ A[r] for r in range(4))
    k, rr = model.cot(x.chi), model.r(x.chi)
    rhs = (alpha(1) @ j_generator(3, 1) + alpha(2) @ j_generator(3, 2)) * k + alpha(2) @ j_generator(1, 2) * np.cos(
        x.theta
    ) / (rr * np.sin(x.theta))
    return float(np.max(np.abs(lhs - rhs)))


def wigner_suite(j_max: int = 8, n_theta: int = 50, action_j_max: int = 5, seed: int = 2) -> list[Check]:
    theta = np.linspace(0.1, np.pi - 0.1, n_theta)
    rec = 0.0
    fd = 0.0
    h = 1e-5
    for j in range(1, j_max + 1):
        for m in range(-j, j + 1):
            rec = max(rec, float(np.max(np.abs(wigner.recurrence_residuals(j, m, theta)))))
            for s in (-1, 0, 1):
                if abs(s) > j:
                    continue
                num = (wigner.small_d(j, -m, s, theta + h) - wigner.small_d(j, -m, s, theta - h)) / (2 * h)
                fd = max(fd, float(np.max(np.abs(num - wigner.small_d_dtheta(j, -m, s, theta)))))
    rng = np.random.default_rng(seed)
    th = np.linspace(0.2, np.pi - 0.2, 12)[:, None]
    ph = np.linspace(0, 2 * np.pi, 7, endpoint=False)[None, :]
    act = 0.0
    for j in range(1, action_j_max + 1):
        for m in range(-j, j + 1):
            f = rng.normal(size=3) + 1j * rng.normal(size=3)
            a = wigner.angular_action(j, m, *f, th, ph)
            b = wigner.angular_action_fd(j, m, *f, th, ph)
            act = max(act, float(np.max(np.abs(a - b))))
    return [
        Check("wigner", f"six recurrences, j<={j_max}, {n_theta}-point theta grid", 1e-10, rec),
        Check("wigner", "analytic vs FD d_theta of small-d", 1e-6, fd),
        Check("wigner", f"angular action vs FD operator, j<={action_j_max}", 1e-6, act),
    ]


def radial_checks(model: SpaceModel, j: int, omega: float, tol: float = 1e-8) -> list[Check]:
    """Second/first-order residuals, exponent conditions and oracle match for one (j, omega)."""
    p = radial.RadialParams(model, omega, j)
    tag = f"{model.kind.value} j={j} omega={omega:g}"
    out = []
    if model.compact:
        n = p.quantum_number()
        dist = 0.0 if n is not None else abs(omega - (j + 1) - max(0, round(omega - (j + 1))))
        out.append(Check("radial", f"{tag}: omega on spectrum n+1+j (distance)", 1e-12, dist))
        growth = abs(radial.endpoint_growth(p))
        out.append(Check("radial", f"{tag}: |log10 G(pi-eps)/G(eps)| of chi=0-regular solution", 0.5, growth))
        if n is None:
            return out
    red = radial.reduction(p)
    ca, cb = red.exponent_conditions(p)
    out.append(Check("radial", f"{tag}: exponent conditions", 1e-12, float(max(abs(ca), abs(cb)))))
    chi = radial.default_grid(model, 200, chi_max=2.0)
    try:
        sol = radial.solve_radial(p, chi)
    except QuantizationError:  # pragma: no cover - guarded above
        return out
    out.append(Check("radial", f"{tag}: second-order residual", tol, sol.residual_2nd))
    out.append(Check("radial", f"{tag}: first-order residual", tol, sol.residual_1st))
    red_res = np.max(np.abs(radial.reduced_system(p, sol))) / np.max(np.abs(sol.F1))
    out.append(Check("radial", f"{tag}: reduced system (divergence row identity)", tol, float(red_res)))
    hi = np.pi - 0.1 if model.compact else 2.0
    lo = 0.1 if model.compact else 0.05
    G0, dG0 = radial.closed_form_G(p, lo)
    grid, Go, _ = radial.ode_oracle(p, lo, hi, (G0[0], dG0[0]), n=100, rtol=1e-12)
    Gc, _ = radial.closed_form_G(p, grid)
    scale = np.max(np.abs(Gc))
    oracle_tol = 1e-7 if model.compact else 1e-6
    out.append(Check("radial", f"{tag}: closed form vs RK oracle", oracle_tol, float(np.max(np.abs(Go - Gc)) / scale)))
    return out


def radial_suite(model: SpaceModel | None = None, j: int | None = None, n: int | None = None,
                 omega: float | None = None) -> list[Check]:
    out = []
    if model is not None and j is not None:
        if model.compact and omega is None:
            omega = float((n or 0) + 1 + j)
        if omega is None:
            raise ValueError("H3 radial verification needs --omega")
        return radial_checks(model, j, omega)
    s3, h3 = SpaceModel.s3(), SpaceModel.h3()
    for jj in range(1, 5):
        for nn in range(4):
            out += radial_checks(s3, jj, float(nn + 1 + jj))
        for w in (0.5, 1.3, 2.7):
            out += radial_checks(h3, jj, w)
    # off-spectrum S3 frequencies must lose regularity at chi = pi
    weakest = np.inf
    for jj in range(1, 5):
        for nn in range(4):
            p = radial.RadialParams(s3, nn + 1.5 + jj, jj)
            weakest = min(weakest, abs(radial.endpoint_growth(p)))
    out.append(Check("radial", "s3 half-integer detuned omega: min endpoint growth in decades", 0.5, weakest, at_least=True))
    chi = np.linspace(0.05, np.pi - 0.05, 97)
    for model_ in (s3, h3):
        for name, v in radial.change_of_variable_residuals(model_, chi).items():
            out.append(Check("radial", f"{model_.kind.value}: {name}", 1e-12, v))
    return out


def _mode_residual(spec, grid):
    return spec, modes.curved_operator_residual(spec, grid)


def modes_suite(j_max: int = 4, n_max: int = 3, grid_n: int = 20, threads: int | None = None) -> list[Check]:
    s3, h3 = SpaceModel.s3(), SpaceModel.h3()
    specs = [modes.ModeSpec(s3, j, m, n=n) for j in range(1, j_max + 1) for n in range(n_max + 1) for m in range(-j, j + 1)]
    grid = modes.ModeGrid.default(s3, grid_n, grid_n, grid_n)
    workers = threads or modes.thread_count()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda s: _mode_residual(s, grid), specs))
    worst_a = max(r.analytic for _, r in results)
    worst_b = max(r.brute for _, r in results)
    worst_aux = max(r.auxiliary for _, r in results)
    block = results[0][1].block_identity
    detuned = min(
        modes.curved_operator_residual(modes.ModeSpec(s3, j, 0, n=n, detuning=0.05), grid).analytic
        for j in range(1, j_max + 1)
        for n in range(n_max + 1)
    )
    hgrid = modes.ModeGrid.default(h3, 12, 12, 12, chi_range=(0.1, 1.5))
    h_specs = [modes.ModeSpec(h3, j, m, omega=w) for j in range(1, j_max + 1) for m in (-j, 0, j) for w in (0.5, 1.3, 2.7)]
    h_res = [modes.curved_operator_residual(s, hgrid) for s in h_specs]
    tag = f"s3 j<={j_max} n<={n_max} all m"
    return [
        Check("modes", f"{tag}: curved operator, analytic path", 1e-8, worst_a),
        Check("modes", f"{tag}: curved operator, 4th-order FD path", 1e-6, worst_b),
        Check("modes", f"{tag}: auxiliary slot of operator output", 1e-8, worst_aux),
        Check("modes", "connection block matches its diagonal action", 1e-15, block),
        Check("modes", "s3 omega detuned 5%: curved operator residual (negative control)", 1e-2, detuned, at_least=True),
        Check("modes", "h3 omega in {0.5,1.3,2.7}: curved operator, analytic path", 1e-8, max(r.analytic for r in h_res)),
        Check("modes", "h3 omega in {0.5,1.3,2.7}: curved operator, FD path", 1e-6, max(r.brute for r in h_res)),
    ]


def flat_suite(seed: int = 3) -> list[Check]:
    rng = np.random.default_rng(seed)
    pts = [np.concatenate([[rng.uniform(-1, 1)], rng.uniform(0.3, 1.5, 3) * rng.choice([-1, 1], 3)]) for _ in range(20)]
    out = []
    for name, make in flat_check.FAMILIES.items():
        fld = make()
        eq = max(flat_check.equivalence_residual(fld, x) for x in pts)
        res = max(np.max(np.abs(flat_check.matrix_residual(fld, x))) for x in pts)
        res_fd = max(np.max(np.abs(flat_check.matrix_residual(fld, x, method="fd"))) for x in pts)
        out += [
            Check("flat", f"{name}: regrouped matrix residual vs eight classical residuals", 1e-13, eq),
            Check("flat", f"{name}: matrix residual (analytic derivatives)", 1e-10, float(res)),
            Check("flat", f"{name}: matrix residual (FD derivatives)", 1e-6, float(res_fd)),
        ]
    return out


def run(scope: str, **kwargs) -> tuple[list[Check], float]:
    """Run a named suite (or "all"); returns the checks and the wall time."""
    start = time.perf_counter()
    if scope == "all":
        checks = []
        for s in SCOPES:
            checks += run(s)[0]
    elif scope == "algebra":
        checks = algebra()
    elif scope == "geometry":
        checks = geometry_suite()
    elif scope == "wigner":
        checks = wigner_suite()
    elif scope == "radial":
        checks = radial_suite(**kwargs)
    elif scope == "modes":
        checks = modes_suite()
    elif scope == "flat":
        checks = flat_suite()
    else:
        raise ValueError(f"unknown scope {scope!r}; choose from {SCOPES + ('all',)}")
    return checks, time.perf_counter() - start
