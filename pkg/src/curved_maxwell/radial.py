"""Radial equations for spherical electromagnetic modes on S3 and H3.

All radial data is expressed through one function G(chi) obeying

    G'' + omega^2 G - nu^2 G / r(chi)^2 = 0,     nu^2 = j (j + 1),

from which the first-order quantities follow:

    F2 = i nu G / (omega r),   F = -(i / omega) G',
    F1 = (F + G) / sqrt 2,     F3 = (F - G) / sqrt 2,     f_k = F_k / r.

Closed forms substitute z = 1 - exp(-2 i chi) (S3) or 1 - exp(-2 chi) (H3) and
G = z^a (1 - z)^b g(z) with g hypergeometric.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConvergenceError, CoordinateError, QuantizationError
from .geometry import SpaceModel
from .special import HypParams, nonpositive_integer

SQRT2 = np.sqrt(2.0)
ODE_RTOL = 1e-10
H3_SERIES_MAX = 0.99
CHI_GUARD = 0.05


def z_of_chi(model: SpaceModel, chi):
    chi = np.asarray(chi, dtype=float)
    if model.compact:
        return 1.0 - np.exp(-2j * chi)
    return (1.0 - np.exp(-2.0 * chi)).astype(complex)


@dataclass(frozen=True)
class RadialParams:
    model: SpaceModel
    omega: float
    j: int

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if int(self.j) != self.j or self.j < 0:
            raise ValueError(f"j must be a non-negative integer, got {self.j}")

    @property
    def nu(self) -> float:
        return float(np.sqrt(self.j * (self.j + 1)))

    def quantum_number(self) -> int | None:
        """n with omega = n + 1 + j on S3, or None when omega is off-spectrum."""
        if not self.model.compact:
            return None
        return nonpositive_integer(self.j + 1 - self.omega)


@dataclass(frozen=True)
class HypReduction:
    a_exp: complex
    b_exp: complex
    hyp: HypParams

    def exponent_conditions(self, p: RadialParams) -> tuple[complex, complex]:
        """(a(a-1) - nu^2, b^2 -+ omega^2/4); both vanish for a valid reduction."""
        sign = -1.0 if p.model.compact else 1.0
        return (
            self.a_exp * (self.a_exp - 1) - p.nu**2,
            self.b_exp**2 + sign * p.omega**2 / 4,
        )


def reduction(p: RadialParams, a_branch: str = "regular", b_sign: int = -1) -> HypReduction:
    """Exponents (a, b) and hypergeometric parameters for the chosen branches.

    a_branch: "regular" gives a = j + 1, "singular" gives a = -j.
    b_sign: -1 gives b = -omega/2 (S3) or -i omega/2 (H3); +1 the partner.
    """
    if a_branch not in ("regular", "singular"):
        raise ValueError(f"unknown a_branch {a_branch!r}")
    if b_sign not in (-1, 1):
        raise ValueError("b_sign must be -1 or +1")
    a = float(p.j + 1) if a_branch == "regular" else float(-p.j)
    half = p.omega / 2 if p.model.compact else 1j * p.omega / 2
    b = b_sign * half
    hyp = HypParams(a + b - half, a + b + half, 2 * a)
    return HypReduction(complex(a), complex(b), hyp)


def _check_chi(model: SpaceModel, chi: np.ndarray, guard: float = 1e-6) -> None:
    if model.compact:
        bad = (chi <= 0) | (chi >= np.pi) | (np.abs(np.sin(chi)) < guard)
    else:
        bad = chi < guard
    if np.any(bad):
        raise CoordinateError(f"chi outside the model interior: {chi[bad][:3]}")


def _prefactor_logs(model: SpaceModel, red: HypReduction, chi):
    """P = z^a (1-z)^b and its log-derivatives L1 = P'/P, L2 = L1'."""
    a, b = red.a_exp, red.b_exp
    r = model.r(chi)
    if model.compact:
        # z = 2 sin(chi) exp(i (pi/2 - chi)); keeps the phase continuous on (0, pi)
        P = (2 * r) ** a * np.exp(1j * a * (np.pi / 2 - chi)) * np.exp(-2j * b * chi)
        L1 = a * (model.cot(chi) - 1j) - 2j * b
    else:
        P = (2 * r) ** a * np.exp(-a * chi) * np.exp(-2 * b * chi)
        L1 = a * (model.cot(chi) - 1.0) - 2 * b
    L2 = -a / r**2
    return P, L1, L2


def _z_derivs(model: SpaceModel, chi):
    if model.compact:
        e = np.exp(-2j * chi)
        return 2j * e, 4 * e
    e = np.exp(-2 * chi)
    return 2 * e, -4 * e


def local_solution(p: RadialParams, chi, a_branch: str = "regular", b_sign: int = -1):
    """(G, G', G'') from z^a (1-z)^b F(alpha, beta; gamma; z).

    No spectrum check: off the S3 spectrum this is the solution regular at
    chi = 0, available only where the series converges (|z| < 1).
    """
    chi = np.atleast_1d(np.asarray(chi, dtype=float))
    _check_chi(p.model, chi)
    red = reduction(p, a_branch, b_sign)
    z = z_of_chi(p.model, chi)
    P, L1, L2 = _prefactor_logs(p.model, red, chi)
    g = red.hyp.value(z)
    gz = red.hyp.derivative(z)
    gzz = red.hyp.second_derivative(z)
    z1, z2 = _z_derivs(p.model, chi)
    g1 = z1 * gz
    g2 = z2 * gz + z1**2 * gzz
    G = P * g
    dG = P * (L1 * g + g1)
    d2G = P * ((L1**2 + L2) * g + 2 * L1 * g1 + g2)
    return G, dG, d2G


def closed_form_derivatives(p: RadialParams, chi, b_sign: int = -1, series_max: float = H3_SERIES_MAX):
    """(G, G', G'') of the physical closed-form solution.

    S3 requires omega = n + 1 + j (terminating polynomial).  On H3 the series
    is used while z <= series_max; further out the solution is continued by
    integrating the radial ODE from the last series point.
    """
    chi = np.atleast_1d(np.asarray(chi, dtype=float))
    _check_chi(p.model, chi)
    if p.j < 1:
        raise ValueError("closed-form modes need j >= 1")
    if p.model.compact:
        if p.quantum_number() is None:
            raise QuantizationError(
                f"omega = {p.omega} is not of the form n + 1 + j for j = {p.j}; "
                "the hypergeometric factor does not terminate"
            )
        return local_solution(p, chi, "regular", b_sign)

    chi_cut = -0.5 * np.log1p(-series_max)
    inner = chi <= chi_cut
    G = np.empty(chi.shape, dtype=complex)
    dG = np.empty_like(G)
    d2G = np.empty_like(G)
    if np.any(inner):
        G[inner], dG[inner], d2G[inner] = local_solution(p, chi[inner], "regular", b_sign)
    if np.any(~inner):
        g0, dg0, _ = local_solution(p, np.array([chi_cut]), "regular", b_sign)
        outer = chi[~inner]
        order = np.argsort(outer)
        Gc, dGc = integrate_radial(p, chi_cut, outer[order], (g0[0], dg0[0]))
        back = np.empty_like(order)
        back[order] = np.arange(order.size)
        G[~inner], dG[~inner] = Gc[back], dGc[back]
        d2G[~inner] = (p.nu**2 / p.model.r(outer) ** 2 - p.omega**2) * G[~inner]
    return G, dG, d2G


def closed_form_G(p: RadialParams, chi, b_sign: int = -1, series_max: float = H3_SERIES_MAX):
    """(G, dG/dchi) of the closed-form solution."""
    G, dG, _ = closed_form_derivatives(p, chi, b_sign, series_max)
    return G, dG


@dataclass
class RadialSolution:
    chi_grid: np.ndarray
    G: np.ndarray
    dG: np.ndarray
    d2G: np.ndarray
    F: np.ndarray
    F1: np.ndarray
    F2: np.ndarray
    F3: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    f3: np.ndarray
    df1: np.ndarray
    df2: np.ndarray
    df3: np.ndarray
    residual_2nd: float = field(default=np.nan)
    residual_1st: float = field(default=np.nan)


def assemble_first_order(p: RadialParams, chi, G, dG, d2G=None) -> RadialSolution:
    """Build F, F1..F3 and f1..f3 (with chi-derivatives) from G and its derivatives.

    When d2G is omitted it is taken from the second-order equation itself.
    """
    chi = np.atleast_1d(np.asarray(chi, dtype=float))
    _check_chi(p.model, chi)
    if p.j < 1:
        raise ValueError("first-order assembly needs j >= 1")
    G = np.asarray(G, dtype=complex)
    dG = np.asarray(dG, dtype=complex)
    r, dr = p.model.r(chi), p.model.dr(chi)
    if d2G is None:
        d2G = (p.nu**2 / r**2 - p.omega**2) * G
    d2G = np.asarray(d2G, dtype=complex)
    w, nu = p.omega, p.nu
    F = -1j / w * dG
    dF = -1j / w * d2G
    F2 = 1j * nu / (w * r) * G
    dF2 = 1j * nu / w * (dG / r - G * dr / r**2)
    F1, F3 = (F + G) / SQRT2, (F - G) / SQRT2
    dF1, dF3 = (dF + dG) / SQRT2, (dF - dG) / SQRT2

    def lower(Fk, dFk):
        return Fk / r, dFk / r - Fk * dr / r**2

    f1, df1 = lower(F1, dF1)
    f2, df2 = lower(F2, dF2)
    f3, df3 = lower(F3, dF3)
    return RadialSolution(chi, G, dG, d2G, F, F1, F2, F3, f1, f2, f3, df1, df2, df3)


def first_order_system(p: RadialParams, sol: RadialSolution) -> np.ndarray:
    """Left-hand sides of the four coupled first-order equations, shape (4, N)."""
    chi = sol.chi_grid
    r, k = p.model.r(chi), p.model.cot(chi)
    w, c = p.omega, p.nu / SQRT2
    f1, f2, f3 = sol.f1, sol.f2, sol.f3
    return np.array([
        sol.df2 + 2 * k * f2 + c / r * (f1 + f3),
        -w * f1 - 1j * sol.df1 - 1j * k * f1 - 1j * c / r * f2,
        -w * f2 + 1j * c / r * (f1 - f3),
        -w * f3 + 1j * sol.df3 + 1j * k * f3 + 1j * c / r * f2,
    ])


def reduced_system(p: RadialParams, sol: RadialSolution) -> np.ndarray:
    """The same four equations after f_k = F_k / r, shape (4, N).

    Row 0 is the divergence-type equation that becomes an identity once
    rows 2 and the (2)+(4) combination hold.
    """
    chi = sol.chi_grid
    r, k = p.model.r(chi), p.model.cot(chi)
    w, c = p.omega, p.nu / SQRT2
    dF = -1j / w * sol.d2G
    dF1, dF3 = (dF + sol.dG) / SQRT2, (dF - sol.dG) / SQRT2
    dF2 = 1j * p.nu / w * (sol.dG / r - sol.G * p.model.dr(chi) / r**2)
    F1, F2, F3 = sol.F1, sol.F2, sol.F3
    return np.array([
        w * (dF2 + k * F2) + w * c / r * (F1 + F3),
        -w**2 * F1 - 1j * w * dF1 - 1j * c / r * w * F2,
        w * F2 - 1j * c / r * (F1 - F3),
        -w**2 * F3 + 1j * w * dF3 + 1j * c / r * w * F2,
    ])


def residual_first_order(p: RadialParams, sol: RadialSolution) -> float:
    """max |first-order system| relative to max |f_k| on the grid."""
    scale = max(np.max(np.abs(sol.f1)), np.max(np.abs(sol.f2)), np.max(np.abs(sol.f3)))
    return float(np.max(np.abs(first_order_system(p, sol))) / scale)


Sampler = Callable[[np.ndarray], tuple]


def residual_second_order(p: RadialParams, sampler: Sampler, chi) -> float:
    """max |G'' + omega^2 G - nu^2 G / r^2| / max |G| with G, G', G'' from sampler."""
    chi = np.atleast_1d(np.asarray(chi, dtype=float))
    G, _, d2G = sampler(chi)
    res = d2G + p.omega**2 * G - p.nu**2 * G / p.model.r(chi) ** 2
    return float(np.max(np.abs(res)) / np.max(np.abs(G)))


def closed_form_sampler(p: RadialParams, b_sign: int = -1, series_max: float = H3_SERIES_MAX) -> Sampler:
    return lambda chi: closed_form_derivatives(p, chi, b_sign, series_max)


def solve_radial(p: RadialParams, chi, b_sign: int = -1, series_max: float = H3_SERIES_MAX) -> RadialSolution:
    """Closed-form radial solution on a grid, with residual diagnostics filled in."""
    chi = np.atleast_1d(np.asarray(chi, dtype=float))
    G, dG, d2G = closed_form_derivatives(p, chi, b_sign, series_max)
    sol = assemble_first_order(p, chi, G, dG, d2G)
    sol.residual_2nd = residual_second_order(p, lambda _: (G, dG, d2G), chi)
    sol.residual_1st = residual_first_order(p, sol)
    return sol


def default_grid(model: SpaceModel, n: int = 200, guard: float = CHI_GUARD, chi_max: float = 5.0) -> np.ndarray:
    hi = np.pi - guard if model.compact else chi_max
    return np.linspace(guard, hi, n)


# -- ODE oracle ---------------------------------------------------------------


def _rhs(p: RadialParams):
    nu2, w2, r = p.nu**2, p.omega**2, p.model.r

    def f(chi, y):
        return np.array([y[1], (nu2 / r(chi) ** 2 - w2) * y[0]])

    return f


def integrate_radial(p: RadialParams, chi0: float, chi_eval, init, rtol: float = ODE_RTOL):
    """Integrate G'' = (nu^2/r^2 - omega^2) G from chi0 and sample at chi_eval (sorted)."""
    chi_eval = np.asarray(chi_eval, dtype=float)
    y0 = np.array(init, dtype=complex)
    if not np.all(np.isfinite(y0)):
        raise ValueError("initial data must be finite")
    chi1 = float(chi_eval[-1]) if chi_eval[-1] != chi0 else float(chi_eval[0])
    sol = solve_ivp(
        _rhs(p), (chi0, chi1), y0, method="DOP853", t_eval=chi_eval,
        rtol=rtol, atol=1e-14 * float(np.max(np.abs(y0))),
    )
    if sol.status != 0:
        raise ConvergenceError(f"radial ODE integration failed: {sol.message}")
    return sol.y[0], sol.y[1]


def ode_oracle(p: RadialParams, chi0: float, chi1: float, init, n: int = 200, rtol: float = ODE_RTOL):
    """Adaptive Runge-Kutta (DOP853) solution of the radial equation on [chi0, chi1].

    Returns (chi, G, dG) sampled at n evenly spaced points.
    """
    if chi0 <= 0:
        raise CoordinateError("oracle integration must start at chi0 > 0")
    chi = np.linspace(chi0, chi1, n)
    G, dG = integrate_radial(p, chi0, chi, init, rtol)
    return chi, G, dG


def endpoint_growth(p: RadialParams, eps: float = 0.1, rtol: float = 1e-12) -> float:
    """log10 |G(pi - eps)| / |G(eps)| for the solution regular at chi = 0 (S3 only).

    The S3 radial equation is symmetric under chi -> pi - chi, so a solution
    regular at both poles satisfies G(pi - chi) = +-G(chi) and returns 0.  Any
    admixture of the solution singular at chi = pi grows like (pi - chi)^-j and
    pushes the value far above zero.  G starts from its series at chi = eps and
    is carried across by the RK integrator.
    """
    if not p.model.compact:
        raise ValueError("endpoint regularity applies to the compact model only")
    G0, dG0, _ = local_solution(p, np.array([eps]))
    G, _ = integrate_radial(p, eps, np.array([np.pi - eps]), (G0[0], dG0[0]), rtol)
    return float(np.log10(np.abs(G[0]) / np.abs(G0[0])))


def is_regular(p: RadialParams, eps: float = 0.1, max_decades: float = 0.5) -> bool:
    """True when the chi=0-regular solution is also regular at chi = pi."""
    return abs(endpoint_growth(p, eps)) < max_decades


def leading_power(p: RadialParams, a_branch: str, chi):
    """|z^a| near chi = 0 for either exponent branch (the -j branch diverges)."""
    red = reduction(p, a_branch)
    return np.abs(z_of_chi(p.model, np.asarray(chi, dtype=float)) ** red.a_exp)


def change_of_variable_residuals(model: SpaceModel, chi) -> dict[str, float]:
    """Check the z-substitution identities at sample points (max abs error)."""
    chi = np.atleast_1d(np.asarray(chi, dtype=float))
    z = z_of_chi(model, chi)
    z1, _ = _z_derivs(model, chi)
    if model.compact:
        return {
            "dz/dchi = 2i(1-z)": float(np.max(np.abs(z1 - 2j * (1 - z)))),
            "cot = i(2-z)/z": float(np.max(np.abs(model.cot(chi) - 1j * (2 - z) / z))),
            "1/sin^2 = -4(1-z)/z^2": float(np.max(np.abs(1 / model.r(chi) ** 2 + 4 * (1 - z) / z**2))),
            "|z - 1| = 1": float(np.max(np.abs(np.abs(z - 1) - 1))),
        }
    return {
        "dz/dchi = 2(1-z)": float(np.max(np.abs(z1 - 2 * (1 - z)))),
        "coth = (2-z)/z": float(np.max(np.abs(model.cot(chi) - (2 - z) / z))),
        "1/sinh^2 = 4(1-z)/z^2": float(np.max(np.abs(1 / model.r(chi) ** 2 - 4 * (1 - z) / z**2))),
        "z in [0, 1)": float(np.all((z.real >= 0) & (z.real < 1)) == 0),
    }
