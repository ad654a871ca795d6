"""Carbon-budget emission trajectories from beta-distribution shapes.

The annual emission cap declines from its initial value ``e0`` to zero
over ``[t0, tf]`` following

    e(t) = e0 * (1 - CDF(t))

where CDF is the cumulative distribution of a beta law rescaled to the
interval.  The density is always normalized so that its integral over
``[t0, tf]`` is exactly one.

A symmetric beta(b, b) integrates ``e(t)`` to ``e0 * (tf - t0) / 2``
for *every* shape ``b``, so the symmetric family cannot be fitted to
any other budget; :func:`solve_beta` therefore works on the
one-parameter asymmetric family beta(1, b), whose trajectory is the
power decline ``e0 * (1 - u)**b`` and which recovers the linear path at
``b = 1`` exactly like the symmetric family does.
"""
from __future__ import annotations

import dataclasses
import math

import numpy as np
from scipy import integrate
from scipy.special import betainc, betaln

from .errors import BudgetOutOfRange, NonIdentifiable, OutOfDomain, ValidationError

#: Bracketing interval for the solved shape parameter.
BETA_BRACKET = (0.05, 50.0)


def _check_interval(t0: float, tf: float):
    if not (math.isfinite(t0) and math.isfinite(tf)) or tf <= t0:
        raise OutOfDomain(f"need t0 < tf, got [{t0}, {tf}]")


def _shapes(beta: float, beta2: float | None) -> tuple[float, float]:
    b1 = float(beta)
    b2 = b1 if beta2 is None else float(beta2)
    if b1 <= 0 or b2 <= 0:
        raise OutOfDomain(f"shape parameters must be positive, got ({b1}, {b2})")
    return b1, b2


def beta_pdf(t, t0: float, tf: float, beta: float, beta2: float | None = None):
    """Rescaled beta density on the open interval (t0, tf).

    With one shape argument the symmetric beta(beta, beta) is used;
    ``beta2`` selects the asymmetric beta(beta, beta2).  The density
    integrates to 1 over [t0, tf] by construction.
    """
    _check_interval(t0, tf)
    b1, b2 = _shapes(beta, beta2)
    t = np.asarray(t, dtype=np.float64)
    width = tf - t0
    u = (t - t0) / width
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        raise OutOfDomain(f"density arguments must lie strictly inside ({t0}, {tf})")
    log_pdf = (
        (b1 - 1.0) * np.log(u)
        + (b2 - 1.0) * np.log1p(-u)
        - betaln(b1, b2)
        - np.log(width)
    )
    out = np.exp(log_pdf)
    return out if out.ndim else float(out)


def beta_cdf(t, t0: float, tf: float, beta: float, beta2: float | None = None):
    """Cumulative distribution of :func:`beta_pdf` on the closed interval.

    Exactly 0 at ``t0`` and 1 at ``tf``.
    """
    _check_interval(t0, tf)
    b1, b2 = _shapes(beta, beta2)
    t = np.asarray(t, dtype=np.float64)
    u = (t - t0) / (tf - t0)
    if np.any(u < 0.0) or np.any(u > 1.0):
        raise OutOfDomain(f"cdf arguments must lie within [{t0}, {tf}]")
    out = betainc(b1, b2, u)
    return out if out.ndim else float(out)


@dataclasses.dataclass(frozen=True)
class EmissionPathway:
    """A declining annual emission cap over ``[t0, tf]``.

    ``shape_a`` is the first beta shape; ``None`` means the symmetric
    family (``shape_a = beta``).  ``budget`` is informative: the
    cumulative emissions the trajectory was solved for, if any.
    """

    t0: float
    tf: float
    e0: float  # initial annual emissions (e.g. GtCO2/yr)
    beta: float
    budget: float | None = None
    shape_a: float | None = None

    def __post_init__(self):
        _check_interval(self.t0, self.tf)
        if self.e0 <= 0:
            raise ValidationError(f"e0 must be positive, got {self.e0}")
        _shapes(self.beta if self.shape_a is None else self.shape_a, self.beta)

    @property
    def shapes(self) -> tuple[float, float]:
        a = self.beta if self.shape_a is None else self.shape_a
        return a, self.beta


def emission(t, pathway: EmissionPathway):
    """Annual emission cap ``e0 * (1 - CDF(t))`` at time(s) ``t``."""
    a, b = pathway.shapes
    cdf = beta_cdf(t, pathway.t0, pathway.tf, a, b)
    return pathway.e0 * (1.0 - cdf)


def cumulative_emission(t, pathway: EmissionPathway):
    """Integral of the cap from ``t0`` to ``t``, in closed form.

    Uses the partial-moment identity
    ``int_0^x v b(v; a, b) dv = mu * I_x(a+1, b)`` with
    ``mu = a / (a + b)``, so the value at ``tf`` equals the trajectory's
    total budget to machine precision.
    """
    a, b = pathway.shapes
    _check_interval(pathway.t0, pathway.tf)
    t_arr = np.asarray(t, dtype=np.float64)
    width = pathway.tf - pathway.t0
    u = (t_arr - pathway.t0) / width
    if np.any(u < 0.0) or np.any(u > 1.0):
        raise OutOfDomain(
            f"cumulative emission arguments must lie within "
            f"[{pathway.t0}, {pathway.tf}]"
        )
    mu = a / (a + b)
    out = pathway.e0 * width * (
        u * (1.0 - betainc(a, b, u)) + mu * betainc(a + 1.0, b, u)
    )
    return out if out.ndim else float(out)


def trajectory_budget(pathway: EmissionPathway) -> float:
    """Total cumulative emissions of the trajectory, ``e0 * W * mu``."""
    a, b = pathway.shapes
    return pathway.e0 * (pathway.tf - pathway.t0) * a / (a + b)


def solve_beta(
    e0: float,
    t0: float,
    tf: float,
    budget: float,
    mode: str = "asymmetric",
    max_iter: int = 200,
) -> float:
    """Shape parameter whose trajectory integrates to ``budget``.

    ``mode="asymmetric"`` bisects beta(1, b) over ``b`` in
    :data:`BETA_BRACKET` on the residual of the numerically integrated
    trajectory.  ``mode="symmetric"`` can never match a budget other
    than ``e0 * (tf - t0) / 2``: it raises
    :class:`NonIdentifiable` at exactly that value (every shape works)
    and :class:`BudgetOutOfRange` otherwise.
    """
    _check_interval(t0, tf)
    width = tf - t0
    if e0 <= 0:
        raise ValidationError(f"e0 must be positive, got {e0}")
    if not 0.0 < budget < e0 * width:
        raise BudgetOutOfRange(
            f"budget {budget} outside the feasible range (0, {e0 * width})"
        )

    if mode == "symmetric":
        fixed = e0 * width / 2.0
        if math.isclose(budget, fixed, rel_tol=1e-12):
            raise NonIdentifiable(
                "every symmetric shape integrates to e0*(tf-t0)/2; "
                "the budget does not pin one down"
            )
        raise BudgetOutOfRange(
            f"the symmetric family always integrates to {fixed}; "
            f"budget {budget} is unreachable"
        )
    if mode != "asymmetric":
        raise ValidationError(f"unknown solve mode {mode!r}")

    def residual(b: float) -> float:
        pw = EmissionPathway(t0=t0, tf=tf, e0=e0, beta=b, shape_a=1.0)
        total, _ = integrate.quad(lambda s: emission(s, pw), t0, tf, limit=200)
        return total - budget

    lo, hi = BETA_BRACKET
    r_lo = residual(lo)
    r_hi = residual(hi)
    # residual decreases in b: beta(1, b) front-loads the decline as b grows
    if r_lo < 0.0 or r_hi > 0.0:
        raise BudgetOutOfRange(
            f"budget {budget} not bracketed by shapes in {BETA_BRACKET}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        r_mid = residual(mid)
        if r_mid > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13 * max(1.0, hi):
            break
    mid = 0.5 * (lo + hi)
    if abs(residual(mid)) > 1e-6 * budget:
        raise BudgetOutOfRange(
            f"bisection failed to reach residual 1e-6 * budget at shape {mid}"
        )
    return mid


def solve_pathway(
    e0: float, t0: float, tf: float, budget: float, mode: str = "asymmetric"
) -> EmissionPathway:
    """Convenience wrapper returning the solved :class:`EmissionPathway`."""
    beta = solve_beta(e0, t0, tf, budget, mode=mode)
    return EmissionPathway(
        t0=t0, tf=tf, e0=e0, beta=beta, budget=budget,
        shape_a=None if mode == "symmetric" else 1.0,
    )


def pathway_table(pathway: EmissionPathway, step_years: int = 1):
    """Yearly rows ``(year, emission, cumulative, cap_fraction)``."""
    years = np.arange(pathway.t0, pathway.tf + 0.5 * step_years, step_years)
    rows = []
    for y in years:
        e = emission(float(y), pathway)
        c = cumulative_emission(float(y), pathway)
        rows.append((float(y), float(e), float(c), float(e / pathway.e0)))
    return rows
