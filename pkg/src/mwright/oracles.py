"""Independent quadrature oracles for the transform pairs of the M-Wright family.

Laplace, Fourier-cosine and Mellin transforms are computed numerically with
the in-house adaptive Gauss-Kronrod rule and compared against the closed
forms, so every identity used elsewhere in the package is checked without
trusting the series evaluators it is checked against.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import quadrature, specfun
from .errors import InvalidArgument, InvalidOrder, InvalidPair

PAIR_IDS = ("L_4_1", "L_4_2", "L_4_7", "F_4_11", "M_4_13",
            "L_4_15", "L_4_16", "F_4_17", "SUB_4_18")


@dataclass
class PairReport:
    """Result of verifying one transform pair over a parameter grid."""

    pair_id: str
    params: dict
    max_abs_residual: float
    samples: int

    def to_json(self) -> str:
        return json.dumps({
            "pair_id": self.pair_id,
            "params": self.params,
            "max_abs_residual": self.max_abs_residual,
            "samples": self.samples,
        })


def laplace_numeric(f, s: float, tol: float = 1e-10, tail_bound=None) -> float:
    """int_0^inf exp(-s r) f(r) dr by truncated adaptive quadrature.

    Parameters
    ----------
    f : callable
        Vectorized integrand factor; must decay at least exponentially or
        be dominated by the supplied tail_bound.
    s : float
        Laplace variable, s > 0.
    tol : float
        Absolute accuracy target.
    tail_bound : callable, optional
        Decreasing envelope of |f| for large r; combined with exp(-s r)
        to place the truncation cut. When omitted, |f| is probed directly.
    """
    if not s > 0.0:
        raise InvalidArgument("Laplace variable must be positive")

    def g(r):
        return np.exp(-s * np.asarray(r)) * f(r)

    tb = None
    if tail_bound is not None:
        tb = lambda r: math.exp(-s * r) * tail_bound(r)
    val, _ = quadrature.integrate_to_inf(g, 0.0, tol=tol, rtol=1e-12,
                                         tail_bound=tb)
    return val


def fourier_cosine_numeric(f, kappa: float, tol: float = 1e-10,
                           tail_bound=None) -> float:
    """int_0^inf cos(kappa r) f(r) dr with oscillation-safe panel sizing."""
    kappa = float(kappa)

    def g(r):
        return np.cos(kappa * np.asarray(r)) * f(r)

    width = None
    if kappa != 0.0:
        width = math.pi / (4.0 * abs(kappa))
    val, _ = quadrature.integrate_to_inf(g, 0.0, tol=tol, rtol=1e-12,
                                         tail_bound=tail_bound,
                                         max_panel_width=width)
    return val


def mellin_numeric(f, s: float, tol: float = 1e-10, tail_bound=None) -> float:
    """int_0^inf r^(s-1) f(r) dr; caller guarantees convergence at both ends."""
    s = float(s)

    def g(r):
        r = np.asarray(r)
        return r ** (s - 1.0) * f(r)

    tb = None
    if tail_bound is not None:
        tb = lambda r: r ** max(s - 1.0, 0.0) * tail_bound(r)
    # resolve the algebraic endpoint behaviour at 0 explicitly
    pts = [10.0 ** k for k in range(-12, 0)]
    val, _ = quadrature.integrate_to_inf(g, 0.0, tol=tol, rtol=1e-12,
                                         tail_bound=tb, points=pts)
    return val


def m2(nu, x: float, t: float) -> float:
    """Two-variable density t^(-nu) M_nu(x t^(-nu)); in x it integrates to 1."""
    nu = specfun._as_nu(nu)
    if not t > 0.0:
        raise InvalidArgument("t must be positive")
    if x < 0.0:
        raise InvalidArgument("x must be >= 0")
    if nu == 0.0:
        return math.exp(-x)
    scale = t ** (-nu)
    return scale * specfun.m_wright(nu, x * scale).value


def _m2_values(nu, xs, t):
    scale = t ** (-nu)
    return scale * specfun.m_wright_values(nu, np.asarray(xs) * scale)


def subordination_check(lambda_, mu_, x: float, t: float,
                        tol: float = 1e-8) -> PairReport:
    """Check the subordination integral against the composed density.

    int_0^inf M2_lambda(x, tau) M2_mu(tau, t) dtau must equal
    M2_(lambda*mu)(x, t).
    """
    lam = specfun._as_nu(lambda_)
    mu = specfun._as_nu(mu_)
    if not (0.0 < lam < 1.0 and 0.0 < mu < 1.0):
        raise InvalidOrder("subordination orders must lie in (0, 1)")
    if not t > 0.0:
        raise InvalidArgument("t must be positive")
    x = float(x)

    def integrand(tau):
        tau = np.asarray(tau)
        a = tau ** (-lam) * specfun.m_wright_values(lam, x * tau ** (-lam))
        b = t ** (-mu) * specfun.m_wright_values(mu, tau * t ** (-mu))
        return a * b

    env_mu = specfun.m_wright_envelope(mu)
    t_mu = t ** mu
    # sup of the first factor's M part; the peak exceeds M(0) for orders
    # past 1/2, so measure it rather than assume the origin value
    lam_peak = 1.2 * float(np.max(specfun.m_wright_values(
        lam, np.linspace(0.0, 2.5, 26))))

    def tail(tau):
        return (tau ** (-lam) * lam_peak + 1e-300) * (
            env_mu(tau / t_mu) / t_mu)

    # resolve the integrable tau^(-lam) behaviour at 0 (x = 0 case)
    pts = [10.0 ** k for k in range(-10, 1)]
    lhs, _ = quadrature.integrate_to_inf(integrand, 0.0, tol=0.1 * tol,
                                         rtol=1e-11, tail_bound=tail,
                                         points=pts)
    rhs = m2(lam * mu, x, t)
    res = abs(lhs - rhs)
    return PairReport("SUB_4_18",
                      {"lambda": lam, "mu": mu, "x": x, "t": t},
                      res, 1)


# ---------------------------------------------------------------------------
# transform-pair verification matrix
# ---------------------------------------------------------------------------

def _pair_residual(pair_id: str, p: dict, tol: float) -> float:
    """|quadrature of the time-domain side - closed form| at one point."""
    nu = p.get("nu")
    if pair_id == "L_4_1":
        # stable density  nu/r^(nu+1) M_nu(1/r^nu)  <->  exp(-s^nu)
        s = p["s"]

        def f(r):
            r = np.asarray(r)
            return nu * r ** (-nu - 1.0) * specfun.m_wright_values(
                nu, r ** (-nu))

        def tail(r):
            return nu * r ** (-nu - 1.0) / math.gamma(1.0 - nu) * 2.0

        pts = [10.0 ** k for k in range(-8, 1)]
        def g(r):
            return np.exp(-s * np.asarray(r)) * f(r)
        lhs, _ = quadrature.integrate_to_inf(
            g, 0.0, tol=0.1 * tol, rtol=1e-11,
            tail_bound=lambda r: math.exp(-s * r) * tail(r), points=pts)
        return abs(lhs - math.exp(-s ** nu))
    if pair_id == "L_4_2":
        # r^(-nu) M_nu(1/r^nu)  <->  s^(nu-1) exp(-s^nu)
        s = p["s"]

        def f(r):
            r = np.asarray(r)
            return r ** (-nu) * specfun.m_wright_values(nu, r ** (-nu))

        pts = [10.0 ** k for k in range(-8, 1)]
        def g(r):
            return np.exp(-s * np.asarray(r)) * f(r)
        lhs, _ = quadrature.integrate_to_inf(
            g, 0.0, tol=0.1 * tol, rtol=1e-11,
            tail_bound=lambda r: math.exp(-s * r) * r ** (-nu)
            / math.gamma(1.0 - nu) * 2.0, points=pts)
        return abs(lhs - s ** (nu - 1.0) * math.exp(-s ** nu))
    if pair_id == "L_4_7":
        # M_nu(r) <-> E_nu(-s)
        s = p["s"]
        lhs = laplace_numeric(lambda r: specfun.m_wright_values(nu, r), s,
                              tol=0.1 * tol,
                              tail_bound=specfun.m_wright_envelope(nu))
        return abs(lhs - specfun.mittag_leffler_neg(nu, s, 1e-12).value)
    if pair_id == "F_4_11":
        # cos transform of M_nu <-> E_2nu(-kappa^2)
        kappa = p["kappa"]
        lhs = fourier_cosine_numeric(
            lambda r: specfun.m_wright_values(nu, r), kappa, tol=0.1 * tol,
            tail_bound=specfun.m_wright_envelope(nu))
        rhs = specfun.mittag_leffler_neg(2.0 * nu, kappa * kappa, 1e-12).value
        return abs(lhs - rhs)
    if pair_id == "M_4_13":
        # Mellin transform <-> Gamma(s)/Gamma(nu(s-1)+1)
        s = p["s"]
        lhs = mellin_numeric(lambda r: specfun.m_wright_values(nu, r), s,
                             tol=0.1 * tol,
                             tail_bound=specfun.m_wright_envelope(nu))
        return abs(lhs - specfun.mellin_m_wright(nu, s))
    if pair_id == "L_4_15":
        # Laplace in t of M2_nu(x, t) <-> s^(nu-1) exp(-x s^nu)
        s, x = p["s"], p["x"]

        def g(tt):
            tt = np.asarray(tt)
            return np.exp(-s * tt) * tt ** (-nu) * specfun.m_wright_values(
                nu, x * tt ** (-nu))

        def tail(tt):
            return math.exp(-s * tt) * tt ** (-nu) / math.gamma(1.0 - nu) * 2.0

        pts = [10.0 ** k for k in range(-8, 1)]
        lhs, _ = quadrature.integrate_to_inf(g, 0.0, tol=0.1 * tol,
                                             rtol=1e-11, tail_bound=tail,
                                             points=pts)
        return abs(lhs - s ** (nu - 1.0) * math.exp(-x * s ** nu))
    if pair_id == "L_4_16":
        # Laplace in x of M2_nu(x, t) <-> E_nu(-s t^nu)
        s, t = p["s"], p["t"]
        lhs = laplace_numeric(lambda xx: _m2_values(nu, xx, t), s,
                              tol=0.1 * tol,
                              tail_bound=lambda r: specfun.m_wright_envelope(
                                  nu)(r * t ** (-nu)) * t ** (-nu))
        rhs = specfun.mittag_leffler_neg(nu, s * t ** nu, 1e-12).value
        return abs(lhs - rhs)
    if pair_id == "F_4_17":
        # Fourier of the symmetric M2_nu <-> 2 E_2nu(-kappa^2 t^(2nu)).
        # The time exponent must be 2nu: substituting u = x t^(-nu) in the
        # cosine transform scales kappa by t^nu, and the pair must reduce
        # to the Green-function transform E_beta(-kappa^2 t^beta) with
        # beta = 2nu.
        kappa, t = p["kappa"], p["t"]
        lhs = 2.0 * fourier_cosine_numeric(
            lambda xx: _m2_values(nu, xx, t), kappa, tol=0.1 * tol,
            tail_bound=lambda r: specfun.m_wright_envelope(nu)(
                r * t ** (-nu)) * t ** (-nu))
        rhs = 2.0 * specfun.mittag_leffler_neg(
            2.0 * nu, kappa * kappa * t ** (2.0 * nu), 1e-12).value
        return abs(lhs - rhs)
    raise InvalidPair(f"unknown pair id {pair_id!r}")


def default_pair_grid(pair_id: str):
    """At least nine parameter points per pair, inside each pair's validity."""
    nus = (0.25, 0.5, 0.75)
    if pair_id in ("L_4_1", "L_4_2", "L_4_7"):
        return [{"nu": n, "s": s} for n in nus for s in (0.5, 1.0, 2.0)]
    if pair_id == "F_4_11":
        return [{"nu": n, "kappa": k} for n in nus for k in (0.5, 1.0, 2.0)]
    if pair_id == "M_4_13":
        return [{"nu": n, "s": s} for n in nus for s in (1.0, 1.5, 3.0)]
    if pair_id == "L_4_15":
        return [{"nu": n, "s": 1.0, "x": x} for n in nus
                for x in (0.5, 1.0, 2.0)]
    if pair_id == "L_4_16":
        return [{"nu": n, "s": s, "t": t} for n in nus
                for (s, t) in ((0.5, 1.0), (1.0, 1.0), (1.0, 2.0))]
    if pair_id == "F_4_17":
        return [{"nu": n, "kappa": k, "t": t} for n in nus
                for (k, t) in ((0.5, 1.0), (1.0, 2.0), (2.0, 1.0))]
    if pair_id == "SUB_4_18":
        return [{"lambda": l, "mu": m, "x": 1.0, "t": 1.0}
                for l in (0.3, 0.5, 0.7) for m in (0.3, 0.5, 0.7)]
    raise InvalidPair(f"unknown pair id {pair_id!r}")


def verify_pair(pair_id: str, points=None, tol: float = 1e-8) -> PairReport:
    """Verify one transform pair over a grid of parameter points.

    The left side is integrated numerically from the real-domain expression
    and compared against the closed form; the report carries the largest
    absolute residual over the grid.
    """
    if pair_id not in PAIR_IDS:
        raise InvalidPair(f"unknown pair id {pair_id!r}")
    if points is None:
        points = default_pair_grid(pair_id)
    worst = 0.0
    for p in points:
        if pair_id == "SUB_4_18":
            rep = subordination_check(p["lambda"], p["mu"], p["x"], p["t"],
                                      tol=tol)
            res = rep.max_abs_residual
        else:
            res = _pair_residual(pair_id, p, tol)
        worst = max(worst, res)
    return PairReport(pair_id, {"points": list(points)}, worst, len(points))
