"""Power-sum bound for log|F| on the unit disk and the explicit Lindelof check for L(1/2 + it, chi)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .algebra.cyclotomic import CycInt
from .algebra.irreducibles import irreducibles
from .errors import DomainError, IdentityViolation
from .places import DirichletChar, L_eval, LPoly, char_L_poly, place_sum

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class CVInput:
    """M roots and the magnitudes |sum_m alpha_m^n| for n = 1..N_max."""

    M: int
    power_sum_magnitudes: tuple

    def __post_init__(self):
        if self.M < 1:
            raise DomainError("M must be >= 1")
        if any(m < 0 for m in self.power_sum_magnitudes):
            raise DomainError("magnitudes must be nonnegative")

    @classmethod
    def from_roots(cls, roots, N_max: int) -> "CVInput":
        r = np.asarray(roots, dtype=complex)
        mags = tuple(float(abs(np.sum(r ** n))) for n in range(1, N_max + 1))
        return cls(len(r), mags)


def cv_bound(inp: CVInput, N: int) -> float:
    """log2 * M/(N+1) + sum_{n<=N} |p_n|/n, valid when all roots lie in the closed unit disk."""
    if not 1 <= N <= len(inp.power_sum_magnitudes):
        raise DomainError(f"N must be in 1..{len(inp.power_sum_magnitudes)}")
    return LOG2 * inp.M / (N + 1) + sum(m / n for n, m in enumerate(inp.power_sum_magnitudes[:N], start=1))


def sup_log_abs(roots, grid: int = 4096) -> float:
    """max over |z| = 1 (uniform grid) of log|prod (z - alpha_m)|; the boundary suffices by maximum modulus."""
    z = np.exp(2j * np.pi * np.arange(grid) / grid)
    r = np.asarray(roots, dtype=complex)
    with np.errstate(divide="ignore"):
        vals = np.log(np.abs(z[:, None] - r[None, :])).sum(axis=1)
    return float(vals.max())


# ---------------------------------------------------------------- character power sums


def char_power_sum(chi: DirichletChar, n: int, L: LPoly | None = None) -> CycInt:
    """sum_{deg v | n} deg v chi(v)^(n/deg v) over all places, checked against -p_n of L*(u, chi).

    L* is L with the trivial zero removed, so p_n = q^(n/2) sum_j e^(i n theta_j).
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    lhs = place_sum(chi, n)
    Ls = (L or char_L_poly(chi)).normalized()
    rhs = -Ls.power_sums(n)[n - 1]
    if lhs != rhs:
        raise IdentityViolation(
            f"place sum {lhs} != -p_{n} = {rhs} for v0={chi.modulus}, ell={chi.ell}, k={chi.k}, "
            f"even={chi.is_even}, L*={[str(c) for c in Ls.coeffs]}",
            detail={"lhs": lhs, "rhs": rhs, "v0": chi.modulus.coeffs},
        )
    return lhs


# ---------------------------------------------------------------- Lindelof


def n_max(q: int, d: int) -> int:
    """floor((2 - f(d)) log_q d) with f(d) = log_q log_q d / log_q d, at least 1."""
    lq = math.log(d) / math.log(q)
    f = math.log(lq) / math.log(q) / lq
    return max(1, math.floor((2 - f) * lq + 1e-12))


def lindelof_bound(q: int, d: int, N: int | None = None) -> tuple[float, int]:
    """(bound, N) with bound = log2 (d-2)/(N+1) + sum_{n<=N} (1 + q^(n/2))/n, minimised over admissible N."""
    if d < 3:
        raise DomainError("conductor degree must be >= 3")
    Ns = [N] if N is not None else range(1, n_max(q, d) + 1)
    best = None
    for k in Ns:
        b = LOG2 * (d - 2) / (k + 1) + sum((1 + q ** (n / 2)) / n for n in range(1, k + 1))
        if best is None or b < best[0]:
            best = (b, k)
    return best


@dataclass(frozen=True)
class LindelofReport:
    q: int
    ell: int
    k: int
    v0: tuple
    d: int  # conductor degree
    sup_logL: float
    t_at_sup: float
    bound: float
    N_opt: int
    ok: bool

    @property
    def ratio(self) -> float:
        return self.sup_logL / (self.d / math.log(self.d, self.q))

    CSV_HEADER = "q,ell,v0,d,sup_logL,bound,N_opt,ratio"

    def csv_row(self) -> str:
        v0 = " ".join(str(c) for c in self.v0)
        return f"{self.q},{self.ell},{v0},{self.d},{self.sup_logL:.10f},{self.bound:.10f},{self.N_opt},{self.ratio:.10f}"


def sup_log_L(L: LPoly, grid: int = 4096, refine: int = 5) -> tuple[float, float]:
    """(sup, argmax) of log|L(1/2 + it)| over one period of t, grid plus golden-section refinement."""
    period = 2 * math.pi / math.log(L.q)
    t = np.arange(grid) * (period / grid)
    with np.errstate(divide="ignore"):
        vals = np.log(np.abs(L_eval(L, 0.5, t)))
    best_t, best = float(t[np.argmax(vals)]), float(vals.max())
    h = period / grid
    for i in np.argsort(vals)[::-1][:refine]:
        res = minimize_scalar(
            lambda s: -math.log(max(abs(L_eval(L, 0.5, s)), 1e-300)),
            bounds=(t[i] - h, t[i] + h),
            method="bounded",
            options={"xatol": 1e-12},
        )
        if -res.fun > best:
            best, best_t = float(-res.fun), float(res.x % period)
    return best, best_t


def lindelof_check(chi: DirichletChar, t_grid_size: int = 4096, strict: bool = True) -> LindelofReport:
    """Compare sup_t log|L*(1/2+it, chi)| with the explicit N-optimised bound."""
    if t_grid_size < 64:
        raise DomainError("t grid needs at least 64 points")
    d = chi.conductor_degree
    if d < 3:
        raise DomainError("conductor degree must be >= 3")
    Ls = char_L_poly(chi).normalized()
    if Ls.degree != d - 2:
        raise IdentityViolation(f"L* has degree {Ls.degree}, expected {d - 2}")
    sup, t_at = sup_log_L(Ls, t_grid_size) if Ls.degree > 0 else (0.0, 0.0)
    bound, N = lindelof_bound(chi.q, d)
    ok = sup <= bound
    if strict and not ok:
        raise IdentityViolation(f"Lindelof bound violated at v0={chi.modulus}, t={t_at}: {sup} > {bound}")
    return LindelofReport(chi.q, chi.ell, chi.k, chi.modulus.coeffs, d, sup, t_at, bound, N, ok)


def lindelof_sweep(q: int, ell: int, dmin: int, dmax: int, grid: int = 4096) -> list[LindelofReport]:
    """Every irreducible v0 with dmin <= deg v0 <= dmax, character k = 1, canonical order."""
    out = []
    for dv in range(dmin, dmax + 1):
        for v0 in irreducibles(q, dv):
            chi = DirichletChar(v0, ell)
            if chi.conductor_degree < 3:
                continue
            out.append(lindelof_check(chi, grid, strict=False))
    return out


def bound_ratio_trend(q: int, ds) -> list[tuple[int, float]]:
    """bound(d) / (d / log_q d) for each d (bound only, no curves)."""
    return [(d, lindelof_bound(q, d)[0] / (d / math.log(d, q))) for d in ds]
