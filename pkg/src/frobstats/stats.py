"""Trace moments, random-matrix baselines, one-level densities and the 1/g deviation sums."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from scipy.special import polygamma

from .algebra.irreducibles import divisors, prime_count
from .errors import DomainError
from .families import Family

# ---------------------------------------------------------------- test functions


@dataclass(frozen=True)
class TestFunction:
    """Even test function given through its Fourier transform fhat, supported in [-alpha, alpha].

    ``kind='fejer'``: fhat(x) = max(0, 1 - |x|/alpha), f(x) = alpha sinc^2(alpha x).
    ``kind='tabulated'``: fhat sampled on a uniform grid over [0, alpha] and
    linearly interpolated (an approximation of whatever function was sampled);
    f is the exact transform of that interpolant.
    """

    __test__ = False  # not a pytest class

    alpha: float
    kind: str = "fejer"
    values: tuple = ()

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError("support radius must be positive")
        if self.kind == "tabulated":
            if len(self.values) < 2 or self.values[-1] != 0:
                raise DomainError("tabulated fhat needs >= 2 samples ending in 0")
        elif self.kind != "fejer":
            raise DomainError(f"unknown test function {self.kind!r}")

    @classmethod
    def fejer(cls, alpha: float) -> "TestFunction":
        return cls(alpha, "fejer")

    @classmethod
    def tabulated(cls, alpha: float, values) -> "TestFunction":
        return cls(alpha, "tabulated", tuple(float(v) for v in values))

    @property
    def _h(self) -> float:
        return self.alpha / (len(self.values) - 1)

    def fhat(self, x):
        x = np.abs(np.asarray(x, dtype=float))
        if self.kind == "fejer":
            return np.maximum(0.0, 1.0 - x / self.alpha)
        grid = np.linspace(0.0, self.alpha, len(self.values))
        return np.interp(x, grid, self.values, right=0.0)

    def f(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "fejer":
            return self.alpha * np.sinc(self.alpha * x) ** 2
        h = self._h
        base = h * np.sinc(h * x) ** 2
        out = self.values[0] * base
        for k, y in enumerate(self.values[1:], start=1):
            if y:
                out = out + 2 * y * base * np.cos(2 * np.pi * k * h * x)
        return out

    def integral(self) -> float:
        return float(self.fhat(0.0))


# ---------------------------------------------------------------- moments


def eta(n: int) -> int:
    return 1 if n % 2 == 0 else 0


def avg_power_sum(fam: Family, n: int) -> Fraction:
    """(1/#fam) sum S_n exactly; n = 0 returns 2g."""
    if len(fam) == 0:
        raise DomainError("empty family")
    if n == 0:
        return Fraction(2 * fam.genus)
    if n < 0:
        raise DomainError("n must be >= 0")
    S = fam.power_sums(n)[:, n - 1]
    return Fraction(int(S.astype(object).sum()), len(fam))


def rmt_moment(group: str, n: int, g: int) -> tuple[int, bool]:
    """E[Tr U^n] over USp(2g) or U(2g); second value flags the boundary n = 2g (USp)."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if group == "U":
        return (2 * g if n == 0 else 0), False
    if group != "USp":
        raise DomainError(f"unknown group {group!r}")
    if n == 0:
        return 2 * g, False
    if n < 2 * g:
        return -eta(n), False
    if n == 2 * g:
        return -1, True
    return 0, False


def _places(q: int, d: int, include_infinity: bool) -> int:
    return prime_count(q, d) + (1 if include_infinity and d == 1 else 0)


@dataclass(frozen=True)
class Prediction:
    value: float  # predicted <Tr Theta^n>
    scaled: float  # predicted <-q^{n/2} Tr Theta^n>
    budget: str  # error-term order of the cited statement
    budget_value: float  # that order evaluated at (q, g, n) with eps = 0.1, trace units
    boundary: bool = False


PREDICTION_KINDS = ("quadratic", "quadratic_limit", "odd", "cyclic", "cubic")


def predicted_moment(
    kind: str,
    q: int,
    n: int,
    g: int,
    ell: int = 2,
    include_infinity: bool = False,
    eps: float = 0.1,
) -> Prediction:
    """Main term of the average n-th trace moment.

    quadratic: finite places, deg v != 1, n/2 divisible by deg v.
    quadratic_limit: the large-n form -eta_n (1 - 1/(1 + q^{n/2})).
    odd: the monic odd-degree family (finite places, boundary at n = 2g).
    cyclic: places with deg v | n/ell; ``include_infinity`` adds the infinite place.
    cubic: all places, infinity included.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    e = eta(n)
    half = q ** (n / 2)
    boundary = False
    if kind == "quadratic":
        s = 0.0
        if e:
            s = sum(d * prime_count(q, d) / (1 + q ** d) for d in divisors(n // 2) if d != 1)
        scaled = e * half - e * s
        budget = "O(q^((eps-1)(g+1) + n(1+eps)))"
        bval = q ** ((eps - 1) * (g + 1) + n * (1 + eps)) / half
        return Prediction(-scaled / half, scaled, budget, bval)
    if kind == "quadratic_limit":
        val = -e * (1 - 1 / (1 + half))
        bval = q ** (-n / 4) + q ** ((eps - 1) * g + n * (eps + 0.5))
        return Prediction(val, -val * half, "O(q^(-n/4) + q^((eps-1)g + n(eps+1/2)))", bval)
    if kind == "odd":
        s = 0.0
        if e:
            s = sum(d * prime_count(q, d) / (q ** d + 1) for d in divisors(n // 2))
        val = e * s / half
        if n < 2 * g:
            val -= e
        elif n == 2 * g:
            val += -1 - 1 / (q - 1)
            boundary = True
        return Prediction(val, -val * half, "O(g q^-g) (+ O(n q^(n/2-2g)) for n > 2g)", g * q ** (-g), boundary)
    if kind == "cyclic":
        scaled = 0.0
        if n % ell == 0:
            for d in divisors(n // ell):
                cnt = _places(q, d, include_infinity)
                scaled += cnt * (ell - 1) * d / (1 + (ell - 1) * q ** (-d))
        dd = 2 * g / (ell - 1) + 2
        bval = (q ** (n / ell) * n ** (ell - 2) / dd + q ** ((eps - 0.5) * dd + n * (1 + eps))) / half
        return Prediction(-scaled / half, scaled, "O(q^(n/ell) n^(ell-2)/d + q^((eps-1/2)d + n(1+eps)))", bval)
    if kind == "cubic":
        tau = 1 if n % 3 == 0 else 0
        scaled = e * half + e
        for d in divisors(n):
            cnt = _places(q, d, True)
            den = 1 + q ** d + q ** (2 * d)
            scaled += cnt * q ** d * d / den
            if e and (n // 2) % d == 0:
                scaled -= cnt * (q ** d + 1) * d / den
            if tau and (n // 3) % d == 0:
                scaled += cnt * q ** (2 * d) * d / den
        return Prediction(-scaled / half, scaled, "O(q^(-delta g) q^((B+1)n))", float("nan"))
    raise DomainError(f"unknown prediction kind {kind!r}; choose from {PREDICTION_KINDS}")


@dataclass(frozen=True)
class MomentReport:
    q: int
    kind: str
    g: int
    n: int
    avg_S: Fraction  # exact average of S_n
    avg_trace: float
    predicted: float
    rmt: int
    boundary: bool

    CSV_HEADER = "q,kind,g,n,avg_S_num,avg_S_den,avg_trace,predicted,rmt,boundary_flag"

    def csv_row(self) -> str:
        return (
            f"{self.q},{self.kind},{self.g},{self.n},{self.avg_S.numerator},{self.avg_S.denominator},"
            f"{self.avg_trace + 0.0:.12g},{self.predicted + 0.0:.12g},{self.rmt},{int(self.boundary)}"
        )


def moment_report(fam: Family, n: int, prediction_kind: str | None = None, **kw) -> MomentReport:
    q, g = fam.q, fam.genus
    avg = avg_power_sum(fam, n)
    kind = prediction_kind or {"quadratic": "quadratic", "cyclic": "cyclic", "cubic": "cubic"}[fam.kind]
    if fam.kind == "quadratic" and fam.params.get("variant") == "odd" and prediction_kind is None:
        kind = "odd"
    pred = predicted_moment(kind, q, n, g, ell=fam.ell, **kw)
    group = "U" if fam.kind == "cyclic" else "USp"
    rmt, boundary = rmt_moment(group, n, g)
    return MomentReport(q, fam.kind, g, n, avg, float(avg) / q ** (n / 2), pred.value, rmt, boundary or pred.boundary)


# ---------------------------------------------------------------- one-level density


def _check_alpha(f: TestFunction) -> None:
    if not f.alpha < 1:
        raise DomainError(f"support radius {f.alpha} must be < 1 for the terminating Fourier sum")


def old_from_power_sums(S: np.ndarray, q: int, g: int, f: TestFunction) -> np.ndarray:
    """W_f per row of power sums (rows need at least floor(2 alpha g) entries)."""
    nmax = int(math.floor(2 * f.alpha * g))
    S = np.atleast_2d(S)
    w = np.full(S.shape[0], f.integral())
    for n in range(1, nmax + 1):
        w += f.fhat(n / (2 * g)) * S[:, n - 1] / q ** (n / 2) / g
    return w


def one_level_density(obj, f: TestFunction, method: str = "fourier") -> float:
    """W_f for a single zeta numerator / model, or the family mean for a Family.

    ``fourier`` uses exact power sums; ``direct`` sums f over eigenangles
    (periodised, |k| <= 2000 with an analytic tail for Fejer).
    """
    from .curves import ZetaNumerator, zeta_numerator

    _check_alpha(f)
    if isinstance(obj, Family):
        g = obj.genus
        if g == 0:
            raise DomainError("genus 0 family has no zeros")
        if method == "fourier":
            total = f.integral()
            for n in range(1, int(math.floor(2 * f.alpha * g)) + 1):
                total += float(f.fhat(n / (2 * g))) * float(avg_power_sum(obj, n)) / obj.q ** (n / 2) / g
            return total
        # distinct zeta numerators weighted by multiplicity
        rows, counts = np.unique(obj.zeta_coeffs(), axis=0, return_counts=True)
        vals = [one_level_density(ZetaNumerator(tuple(int(x) for x in r), obj.q), f, "direct") for r in rows]
        return float(np.dot(vals, counts) / counts.sum())
    Z = obj if isinstance(obj, ZetaNumerator) else zeta_numerator(obj)
    g, q = Z.genus, Z.q
    if g == 0:
        raise DomainError("genus 0: W_f undefined")
    if method == "fourier":
        nmax = max(1, int(math.floor(2 * f.alpha * g)))
        S = np.array(Z.power_sums(nmax).S, dtype=float)
        return float(old_from_power_sums(S, q, g, f)[0])
    if method != "direct":
        raise DomainError(f"unknown method {method!r}")
    return _direct_old(Z.eigenangles(), g, f)


def _direct_old(theta: np.ndarray, g: int, f: TestFunction, K: int = 2000) -> float:
    N = 2 * g
    total = 0.0
    for th in theta:
        t = th / (2 * np.pi)
        k0 = round(t)
        ks = np.arange(k0 - K, k0 + K + 1)
        total += float(f.f(N * (t - ks)).sum())
        if f.kind == "fejer":
            # tail |k - k0| > K: sin^2 = (1 - cos)/2, the cos part is constant when alpha N is an integer
            x = t - k0
            a = f.alpha
            tail = polygamma(1, K + 1 - x) + polygamma(1, K + 1 + x)
            aN = a * N
            osc = math.cos(2 * math.pi * aN * x) if abs(aN - round(aN)) < 1e-12 else 0.0
            total += (1 - osc) / (2 * math.pi ** 2 * a * N ** 2) * tail
    return total


def usp_integral(f: TestFunction, g: int) -> float:
    """int_{USp(2g)} W_f = fhat(0) + (1/g) sum_{n>=1} fhat(n/2g) E[Tr U^n]."""
    total = f.integral()
    for n in range(1, int(math.floor(2 * f.alpha * g)) + 1):
        total += float(f.fhat(n / (2 * g))) * rmt_moment("USp", n, g)[0] / g
    return total


# ---------------------------------------------------------------- deviation sums


@dataclass(frozen=True)
class PlaceSum:
    value: float
    degree: int  # truncation degree D
    tail_bound: float


def _place_series(term, q: int, D: int, include_infinity: bool, dps: int = 50):
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        for d in range(1, D + 1):
            cnt = prime_count(q, d) + (1 if include_infinity and d == 1 else 0)
            total += cnt * term(mpmath.mpf(q), d)
        return total


def _truncate(tail, tol: float) -> int:
    D = 1
    while tail(D) >= tol:
        D += 1
    return D


def hyperelliptic_sum(q: int, tol: float = 1e-13, D: int | None = None, skip_degree_one: bool = True) -> PlaceSum:
    """sum over finite v (deg v != 1 unless skip_degree_one is False) of deg v/(q^(2 deg v) - 1)."""
    tail = lambda D: 2 * q ** (-(D + 1)) / (1 - 1 / q)
    D = D or _truncate(tail, tol)
    term = lambda Q, d: 0 if (skip_degree_one and d == 1) else d / (Q ** (2 * d) - 1)
    return PlaceSum(float(_place_series(term, q, D, False)), D, tail(D))


def dev_odd(f: TestFunction, q: int, tol: float = 1e-13) -> float:
    """dev(f) for the monic odd-degree family: fhat(0) sum_v deg v/(q^(2deg v)-1) - fhat(1)/(q-1)."""
    s = hyperelliptic_sum(q, tol, skip_degree_one=False).value
    return f.integral() * s - float(f.fhat(1.0)) / (q - 1)


def ell_cover_sum(q: int, ell: int, tol: float = 1e-13, D: int | None = None) -> PlaceSum:
    """sum over all places of deg v / ((1 + (ell-1) q^-deg v)(q^(ell deg v/2) - 1))."""
    r = ell / 2 - 1
    tail = lambda D: 2 * q ** (-(D + 1) * r) / (1 - q ** (-r))
    D = D or _truncate(tail, tol)
    term = lambda Q, d: d / ((1 + (ell - 1) * Q ** (-d)) * (Q ** (ell * d / mpmath.mpf(2)) - 1))
    return PlaceSum(float(_place_series(term, q, D, True)), D, tail(D))


@dataclass(frozen=True)
class KappaReport:
    q: int
    kappa: float
    sums: dict  # name -> value
    degree: int
    tail_bound: float


def kappa_and_sums(q: int, tol: float = 1e-13, D: int | None = None) -> KappaReport:
    """kappa = 1/(q-1) - T1 + T2 + T3, each a sum over all places, truncated at degree D."""
    tail = lambda D: 2 * q ** (-(D + 1)) / (1 - 1 / q) + 4 * q ** (-(D + 1) / 2) / (1 - q ** -0.5)
    D = D or _truncate(tail, tol)

    def den(Q, d):
        return 1 + Q ** d + Q ** (2 * d)

    t1 = _place_series(lambda Q, d: (1 + Q ** d) * d / ((Q ** d - 1) * den(Q, d)), q, D, True)
    t2 = _place_series(lambda Q, d: Q ** d * d / ((Q ** (mpmath.mpf(d) / 2) - 1) * den(Q, d)), q, D, True)
    t3 = _place_series(lambda Q, d: Q ** (2 * d) * d / ((Q ** (3 * mpmath.mpf(d) / 2) - 1) * den(Q, d)), q, D, True)
    with mpmath.workdps(50):
        kappa = mpmath.mpf(1) / (q - 1) - t1 + t2 + t3
    sums = {"inv_q_minus_1": 1 / (q - 1), "T1": float(t1), "T2": float(t2), "T3": float(t3)}
    return KappaReport(q, float(kappa), sums, D, tail(D))


# ---------------------------------------------------------------- one-level predictions

SUPPORT = {"quadratic": 1.0, "odd": 2.0}


def predicted_old(
    kind: str,
    f: TestFunction,
    g: int,
    q: int,
    ell: int = 3,
    cubic_support: float = 1.0,
    tol: float = 1e-13,
) -> tuple[float, float]:
    """(baseline group integral, baseline + 1/g deviation) for the family kind.

    Support guards (strict): quadratic alpha < 1, odd alpha < 2,
    cyclic alpha < 1/(ell-1), cubic alpha < cubic_support.
    """
    a = f.alpha
    if kind == "quadratic":
        if not a < 1:
            raise DomainError("quadratic one-level density needs supp fhat inside (-1, 1)")
        base = usp_integral(f, g)
        return base, base + f.integral() / g * hyperelliptic_sum(q, tol).value
    if kind == "odd":
        if not a < 2:
            raise DomainError("odd-degree family needs supp fhat inside (-2, 2)")
        base = usp_integral(f, g)
        return base, base + dev_odd(f, q, tol) / g
    if kind == "cyclic":
        if not a < 1 / (ell - 1):
            raise DomainError(f"cyclic ell={ell} needs supp fhat inside (-1/(ell-1), 1/(ell-1))")
        base = f.integral()
        return base, base - f.integral() * (ell - 1) / g * ell_cover_sum(q, ell, tol).value
    if kind == "cubic":
        if not a < cubic_support:
            raise DomainError(f"cubic family support radius must be < {cubic_support} (delta/(2B+1))")
        base = usp_integral(f, g)
        return base, base - f.integral() / g * kappa_and_sums(q, tol).kappa
    raise DomainError(f"unknown kind {kind!r}")


def usp_limit(f: TestFunction) -> float:
    """int f(x)(1 - sin(2 pi x)/(2 pi x)) dx, via fhat: fhat(0) - (1/2) int_{-1}^{1} fhat."""
    from scipy.integrate import quad

    lo = min(1.0, f.alpha)
    val, _ = quad(lambda x: float(f.fhat(x)), -lo, lo, limit=200)
    return f.integral() - 0.5 * val
