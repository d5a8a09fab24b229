"""Families of covers: enumeration, canonical forms and splitting densities."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .algebra import poly as P
from .algebra.field import GF
from .algebra.irreducibles import factor_tuple
from .curves import (
    CubicModel,
    KummerCover,
    cubic_counts,
    cubic_rhs_batch,
    kummer_counts,
    kummer_rhs_batch,
    power_sums_batch,
    zeta_batch_from_counts,
)
from .errors import BudgetExceeded, DomainError
from .places import (
    C_IN,
    C_PR,
    C_PS,
    C_TS,
    CUBIC_CODE,
    K_INERT,
    K_RAM,
    K_SPLIT,
    KUMMER_CODE,
    Place,
    SplitType,
    _cubic_root_count,
    cubic_infinity,
    infinity_type_kummer,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000_000
VARIANTS = ("full", "odd", "even")


def least_nonsquare(q: int) -> int:
    return next(c for c in range(2, q) if pow(c, (q - 1) // 2, q) == q - 1)


def _check_budget(required: int, budget: int, what: str) -> None:
    if required > budget:
        raise BudgetExceeded(
            f"{what} needs {required} candidate models, above the budget of {budget}", required
        )


def _monic_rows(q: int, d: int) -> np.ndarray:
    """All monic polynomials of degree d, rows ascending, in code order."""
    n = q ** d
    rows = np.zeros((n, d + 1), dtype=np.int64)
    c = np.arange(n, dtype=np.int64)
    for i in range(d):
        rows[:, i] = c % q
        c //= q
    rows[:, d] = 1
    return rows


def _canonical_order(rows: np.ndarray) -> np.ndarray:
    """Indices sorting rows by (degree, ascending coefficient tuple)."""
    nz = rows != 0
    deg = rows.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1)
    keys = [rows[:, i] for i in range(rows.shape[1] - 1, -1, -1)] + [deg]
    return np.lexsort(keys)


@dataclass
class Family:
    """An enumerated family.

    Kummer families store ``rows`` (coefficients of Q); cubic families store
    ``a_rows``, ``b_rows`` and the infinity types.  ``params`` holds
    g / d / ell / variant.
    """

    kind: str  # quadratic | cyclic | cubic
    q: int
    params: dict
    rows: np.ndarray | None = None
    rad_degrees: np.ndarray | None = None
    a_rows: np.ndarray | None = None
    b_rows: np.ndarray | None = None
    inf_types: list | None = None
    dedupe_log: dict = dc_field(default_factory=dict)
    estimate: bool = False
    _cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def ell(self) -> int:
        return 3 if self.kind == "cubic" else self.params["ell"]

    @property
    def genus(self) -> int:
        if self.kind == "quadratic":
            return self.params["g"]
        if self.kind == "cyclic":
            return (self.ell - 1) * (self.params["d"] - 2) // 2
        return self.params["g"]

    def __len__(self) -> int:
        return len(self.rows) if self.rows is not None else len(self.a_rows)

    def label(self) -> str:
        p = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.kind}(q={self.q},{p})"

    def models(self):
        if self.kind == "cubic":
            for a, b in zip(self.a_rows, self.b_rows):
                yield CubicModel.trusted(_tup(a), _tup(b), self.q)
        else:
            for r, rd in zip(self.rows, self.rad_degrees):
                yield KummerCover.trusted(_tup(r), self.q, self.ell, int(rd))

    def counts(self, n: int) -> np.ndarray:
        key = ("counts", n)
        if key not in self._cache:
            if self.kind == "cubic":
                self._cache[key] = cubic_counts(self.a_rows, self.b_rows, self.inf_types, self.q, n)
            else:
                self._cache[key] = kummer_counts(self.rows, self.q, self.ell, n)
        return self._cache[key]

    def zeta_coeffs(self) -> np.ndarray:
        """(M, 2g+1) integer array of zeta numerator coefficients."""
        if "zeta" not in self._cache:
            g = self.genus
            counts = np.stack([self.counts(n) for n in range(1, g + 1)], axis=1) if g else np.zeros((len(self), 0), np.int64)
            self._cache["zeta"] = zeta_batch_from_counts(counts, self.q, g)
        return self._cache["zeta"]

    def power_sums(self, N: int) -> np.ndarray:
        """(M, N) array of S_1..S_N."""
        return power_sums_batch(self.zeta_coeffs(), N)

    def subset(self, idx) -> "Family":
        """Members at the given indices (same kind and parameters)."""
        idx = np.asarray(idx, dtype=np.int64)
        pick = lambda a: None if a is None else a[idx]
        inf = None if self.inf_types is None else [self.inf_types[i] for i in idx]
        return Family(
            self.kind, self.q, dict(self.params), pick(self.rows), pick(self.rad_degrees),
            pick(self.a_rows), pick(self.b_rows), inf, dict(self.dedupe_log), self.estimate,
        )

    def explicit_formula(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """(-S_n, place-sum side) for every member, as integer arrays."""
        lhs = -self.power_sums(n)[:, n - 1]
        if self.kind == "cubic":
            rhs = cubic_rhs_batch(self.a_rows, self.b_rows, self.inf_types, self.q, n)
        else:
            rhs, _ = kummer_rhs_batch(self.rows, self.q, self.ell, n)
        return lhs, rhs

    def types_at(self, v0: Place) -> np.ndarray:
        """Splitting codes of every member at v0 (K_* or C_* codes)."""
        q = self.q
        if v0.is_infinite:
            if self.kind == "cubic":
                inv = {v: k for k, v in CUBIC_CODE.items()}
                return np.array([inv[t] for t in self.inf_types], dtype=np.int64)
            inv = {v: k for k, v in KUMMER_CODE.items()}
            return np.array(
                [inv[infinity_type_kummer(_tup(r), q, self.ell)] for r in self.rows], dtype=np.int64
            )
        F = GF(q, v0.poly)
        x = np.array([F.x()])
        if self.kind == "cubic":
            A = F.horner(self.a_rows, x)[0]
            B = F.horner(self.b_rows, x)[0]
            n = _cubic_root_count(F, A, B)
            lut = np.array([C_IN, C_PS, C_PR, C_TS], dtype=np.int64)
            return lut[n]
        vals = F.horner(self.rows, x)[0]
        e = F.residue_exponent(vals, self.ell)
        return np.where(e < 0, K_RAM, np.where(e == 0, K_SPLIT, K_INERT))


def _tup(row) -> tuple:
    return P.trim(int(x) for x in row)


# ---------------------------------------------------------------- quadratic


def quadratic_size(q: int, g: int, variant: str = "full") -> int:
    """Exact family size: monic squarefree of degree D number q^D - q^(D-1)."""
    odd = q ** (2 * g + 1) - q ** (2 * g)
    even = q ** (2 * g + 2) - q ** (2 * g + 1)
    return {"full": 2 * (odd + even), "odd": odd, "even": even}[variant]


def enum_quadratic(q: int, g: int, variant: str = "full", budget: int = DEFAULT_BUDGET) -> Family:
    """Quadratic extensions of genus g (Full) or the monic odd/even degree models."""
    P.check_odd_prime(q)
    if g < 1:
        raise DomainError("g must be >= 1")
    if variant not in VARIANTS:
        raise DomainError(f"variant must be one of {VARIANTS}")
    degs = {"full": (2 * g + 1, 2 * g + 2), "odd": (2 * g + 1,), "even": (2 * g + 2,)}[variant]
    _check_budget(sum(q ** D for D in degs) * (2 if variant == "full" else 1), budget, "quadratic family")
    width = 2 * g + 3
    blocks = []
    for D in degs:
        rows = _monic_rows(q, D)
        keep = [i for i, r in enumerate(rows) if P.is_squarefree(tuple(int(x) for x in r), q)]
        sub = np.zeros((len(keep), width), dtype=np.int64)
        sub[:, : D + 1] = rows[keep]
        blocks.append(sub)
    monic = np.vstack(blocks)
    if variant == "full":
        c0 = least_nonsquare(q)
        rows = np.vstack([monic, (monic * c0) % q])
    else:
        rows = monic
    rows = rows[_canonical_order(rows)]
    rad = (rows != 0).shape[1] - 1 - np.argmax((rows != 0)[:, ::-1], axis=1)
    fam = Family("quadratic", q, {"g": g, "variant": variant, "ell": 2}, rows=rows, rad_degrees=rad)
    fam.dedupe_log = {"class_size": 1, "classes": len(rows)}
    expected = quadratic_size(q, g, variant)
    assert len(fam) == expected, (len(fam), expected)
    return fam


def sample_quadratic(q: int, g: int, size: int, seed: int, variant: str = "full") -> Family:
    """Seeded random subset (with replacement) of the quadratic family; marked as an estimate."""
    rng = np.random.default_rng(seed)
    c0 = least_nonsquare(q)
    degs = {"full": (2 * g + 1, 2 * g + 2), "odd": (2 * g + 1,), "even": (2 * g + 2,)}[variant]
    weights = np.array([q ** D - q ** (D - 1) for D in degs], dtype=float)
    width = 2 * g + 3
    rows = []
    while len(rows) < size:
        D = degs[rng.choice(len(degs), p=weights / weights.sum())]
        r = tuple(int(x) for x in rng.integers(0, q, D)) + (1,)
        if not P.is_squarefree(r, q):
            continue
        if variant == "full" and rng.integers(0, 2):
            r = tuple(x * c0 % q for x in r)
        rows.append(r + (0,) * (width - len(r)))
    rows = np.array(rows, dtype=np.int64)
    rad = (rows != 0).shape[1] - 1 - np.argmax((rows != 0)[:, ::-1], axis=1)
    fam = Family("quadratic", q, {"g": g, "variant": variant, "ell": 2}, rows=rows, rad_degrees=rad)
    fam.estimate = True
    return fam


# ---------------------------------------------------------------- cyclic


def _powerfree_generators(q: int, ell: int, r: int):
    """Yield (factors, exponents) for monic ell-powerfree M with deg rad(M) = r."""
    for row in _monic_rows(q, r):
        R = tuple(int(x) for x in row)
        _, fs = factor_tuple(R, q)
        if any(e > 1 for _, e in fs):
            continue
        facs = [f for f, _ in fs]
        for exps in itertools.product(range(1, ell), repeat=len(facs)):
            yield facs, exps


def _expand(facs, exps, c: int, q: int) -> tuple:
    out = (c % q,)
    for f, e in zip(facs, exps):
        out = P.pmul(out, P.ppow(f, e, q), q)
    return out


def cyclic_class(facs, exps, c: int, q: int, ell: int) -> list:
    """All models c' Q^j (mod ell-th powers) of the extension defined by c * prod f^e."""
    cubes = sorted({pow(u, ell, q) for u in range(1, q)})
    out = []
    for j in range(1, ell):
        ej = [e * j % ell for e in exps]
        base = _expand(facs, ej, 1, q)
        cj = pow(c, j, q)
        for s in cubes:
            out.append(P.pscale(base, s * cj, q))
    return out


def enum_cyclic(q: int, ell: int, d: int, budget: int = DEFAULT_BUDGET) -> Family:
    """One canonical Kummer model per cyclic degree-ell extension with conductor degree d."""
    P.check_odd_prime(q)
    if ell == 2 or not P.is_prime(ell) or (q - 1) % ell:
        raise DomainError(f"ell={ell} must be an odd prime dividing q-1={q - 1}")
    if ((ell - 1) * (d - 2)) % 2 or d < 2:
        raise DomainError(f"conductor degree {d} gives no integral genus")
    required = (q - 1) * sum(q ** r * (ell - 1) ** r for r in (d - 1, d))
    _check_budget(required, budget, "cyclic family")
    classes: dict = {}
    for r, need_div in ((d, True), (d - 1, False)):
        if r < 1:
            continue
        for facs, exps in _powerfree_generators(q, ell, r):
            degM = sum((len(f) - 1) * e for f, e in zip(facs, exps))
            if (degM % ell == 0) != need_div:
                continue
            for c in range(1, q):
                members = cyclic_class(facs, exps, c, q, ell)
                canon = min(members, key=P.sort_key)
                classes.setdefault(canon, [r, 0])[1] += 1
    sizes = {v[1] for v in classes.values()}
    expected = (ell - 1) * (q - 1) // ell
    if sizes != {expected}:
        raise AssertionError(f"non-uniform class sizes {sizes}, expected {expected}")
    keys = sorted(classes, key=P.sort_key)
    width = max(len(k) for k in keys)
    rows = np.zeros((len(keys), width), dtype=np.int64)
    for i, k in enumerate(keys):
        rows[i, : len(k)] = k
    rad = np.array([classes[k][0] for k in keys], dtype=np.int64)
    fam = Family("cyclic", q, {"ell": ell, "d": d}, rows=rows, rad_degrees=rad)
    fam.dedupe_log = {"class_size": expected, "classes": len(keys), "raw_models": expected * len(keys)}
    return fam


def canonicalize_cyclic(Q: P.Poly, ell: int) -> P.Poly:
    """Canonical representative of the extension F_q(X)(Q^(1/ell))."""
    q = Q.q
    unit, fs = factor_tuple(Q.coeffs, q)
    facs = [f for f, _ in fs]
    exps = [e % ell for _, e in fs]
    keep = [(f, e) for f, e in zip(facs, exps) if e]
    members = cyclic_class([f for f, _ in keep], [e for _, e in keep], unit, q, ell)
    return P.Poly(min(members, key=P.sort_key), q)


# ---------------------------------------------------------------- cubic


def _all_polys(q: int, maxdeg: int) -> np.ndarray:
    n = q ** (maxdeg + 1)
    rows = np.zeros((n, maxdeg + 1), dtype=np.int64)
    c = np.arange(n, dtype=np.int64)
    for i in range(maxdeg + 1):
        rows[:, i] = c % q
        c //= q
    return rows


def _np_polymul(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    """Row-wise product of broadcastable coefficient arrays (last axis = coefficients)."""
    la, lb = A.shape[-1], B.shape[-1]
    shape = np.broadcast_shapes(A.shape[:-1], B.shape[:-1]) + (la + lb - 1,)
    out = np.zeros(shape, dtype=np.int64)
    for i in range(la):
        out[..., i : i + lb] += A[..., i : i + 1] * B
    return out % q


def _deg(rows: np.ndarray) -> np.ndarray:
    nz = rows != 0
    d = rows.shape[-1] - 1 - np.argmax(nz[..., ::-1], axis=-1)
    return np.where(nz.any(axis=-1), d, -1)


def cubic_size_required(q: int, g: int) -> int:
    k = (g + 2) // 3
    return q ** (2 * k + 1) * q ** (3 * k + 1)


def enum_cubic(q: int, g: int, budget: int = DEFAULT_BUDGET) -> Family:
    """Cubic models Y^3 + aY + b of genus g with squarefree discriminant.

    The infinite place is classified only when the normalised model has
    discriminant valuation 0 or 1 there, which forces deg disc = 6k or 6k - 1
    with k = (g + 2)/3.  Models are deduplicated under (a, b) -> (u^2 a, u^3 b).
    """
    P.check_odd_prime(q)
    if q == 3:
        raise DomainError("cubic family needs characteristic > 3")
    if g < 1 or (g + 2) % 3:
        raise DomainError(f"g={g}: classifiable models exist only for g = 3k - 2")
    k = (g + 2) // 3
    _check_budget(cubic_size_required(q, g), budget, "cubic family")
    A = _all_polys(q, 2 * k)
    Bp = _all_polys(q, 3 * k)
    B = Bp[_deg(Bp) >= 0]
    degA, degB = _deg(A), _deg(B)
    kA = np.where(degA < 0, 0, -(-degA // 2))
    kB = -(-degB // 3)
    ok_k = np.maximum(kA[:, None], kB[None, :]) == k
    a3 = _np_polymul(_np_polymul(A, A, q), A, q)
    b2 = _np_polymul(B, B, q)
    w = max(a3.shape[1], b2.shape[1])
    a3 = np.pad(a3, ((0, 0), (0, w - a3.shape[1])))
    b2 = np.pad(b2, ((0, 0), (0, w - b2.shape[1])))
    disc = (-4 * a3[:, None, :] - 27 * b2[None, :, :]) % q
    ddeg = _deg(disc)
    cand = ok_k & ((ddeg == 6 * k) | (ddeg == 6 * k - 1))
    # reducible: a root c in F_q[X] with deg c <= k
    Cs = _all_polys(q, k)
    Cs = Cs[_deg(Cs) >= 0]
    Apad = np.pad(A, ((0, 0), (0, 3 * k + 1 - A.shape[1])))
    for c in Cs:
        c3 = _np_polymul(_np_polymul(c[None], c[None], q), c[None], q)[0]
        ac = _np_polymul(Apad, c[None], q)
        wv = max(len(c3), ac.shape[1], B.shape[1])
        val = (
            np.pad(c3, (0, wv - len(c3)))[None, None, :]
            + np.pad(ac, ((0, 0), (0, wv - ac.shape[1])))[:, None, :]
            + np.pad(B, ((0, 0), (0, wv - B.shape[1])))[None, :, :]
        ) % q
        cand &= (val != 0).any(axis=-1)
    ia, ib = np.nonzero(cand)
    seen = {}
    for i, j in zip(ia.tolist(), ib.tolist()):
        dsc = P.trim(int(x) for x in disc[i, j])
        if not P.is_squarefree(dsc, q):
            continue
        a, b = _tup(A[i]), _tup(B[j])
        orbit = [(P.pscale(a, u * u, q), P.pscale(b, u ** 3, q)) for u in range(1, q)]
        canon = min(orbit, key=lambda ab: (P.sort_key(ab[0]), P.sort_key(ab[1])))
        seen.setdefault(canon, 0)
        seen[canon] += 1
    keys = sorted(seen, key=lambda ab: (P.sort_key(ab[0]), P.sort_key(ab[1])))
    a_rows = np.zeros((len(keys), 2 * k + 1), dtype=np.int64)
    b_rows = np.zeros((len(keys), 3 * k + 1), dtype=np.int64)
    inf = []
    for n, (a, b) in enumerate(keys):
        a_rows[n, : len(a)] = a
        b_rows[n, : len(b)] = b
        t = cubic_infinity(a, b, q)
        assert t is not SplitType.UNCLASSIFIED
        inf.append(t)
    fam = Family("cubic", q, {"g": g}, a_rows=a_rows, b_rows=b_rows, inf_types=inf)
    sizes = {}
    for v in seen.values():
        sizes[v] = sizes.get(v, 0) + 1
    fam.dedupe_log = {"orbit_sizes": sizes, "classes": len(keys)}
    return fam


# ---------------------------------------------------------------- densities


@dataclass(frozen=True)
class DensityReport:
    q: int
    kind: str
    g_or_d: int
    place: str
    behavior: SplitType
    empirical: Fraction
    predicted: Fraction
    gap: float

    CSV_HEADER = "q,kind,g_or_d,place,behavior,empirical_num,empirical_den,predicted,gap"

    def csv_row(self) -> str:
        return (
            f"{self.q},{self.kind},{self.g_or_d},{self.place},{self.behavior},"
            f"{self.empirical.numerator},{self.empirical.denominator},"
            f"{float(self.predicted):.12g},{self.gap:.12g}"
        )


_KUMMER_OMEGA = {SplitType.RAMIFIED: K_RAM, SplitType.SPLIT: K_SPLIT, SplitType.INERT: K_INERT}
_CUBIC_OMEGA = {
    SplitType.TOTALLY_SPLIT: C_TS,
    SplitType.PARTIALLY_SPLIT: C_PS,
    SplitType.INERT: C_IN,
    SplitType.PARTIALLY_RAMIFIED: C_PR,
}


def predicted_density(kind: str, q: int, deg_v: int, omega: SplitType, ell: int = 2) -> Fraction:
    """Main-term density of behaviour omega at a place of degree deg_v."""
    Q = Fraction(q) ** deg_v
    if kind == "quadratic":
        if omega is SplitType.RAMIFIED:
            return (1 / Q) / (1 + 1 / Q)
        if omega in (SplitType.SPLIT, SplitType.INERT):
            return 1 / (2 * (1 + 1 / Q))
    elif kind == "cyclic":
        if omega is SplitType.RAMIFIED:
            return (ell - 1) / Q / (1 + (ell - 1) / Q)
        c = 1 / (ell * (1 + (ell - 1) / Q))
        if omega is SplitType.SPLIT:
            return c
        if omega is SplitType.INERT:
            # P_inert / P -> ell - 1 at leading order
            return (ell - 1) * c
    elif kind == "cubic":
        base = Q * Q / (1 + Q + Q * Q)
        factor = {
            SplitType.TOTALLY_SPLIT: Fraction(1, 6),
            SplitType.PARTIALLY_SPLIT: Fraction(1, 2),
            SplitType.INERT: Fraction(1, 3),
            SplitType.PARTIALLY_RAMIFIED: 1 / Q,
            SplitType.TOTALLY_RAMIFIED: 1 / (Q * Q),
        }.get(omega)
        if factor is not None:
            return base * factor
    raise DomainError(f"behaviour {omega} not defined for {kind} families")


def empirical_density(fam: Family, v0: Place, omega: SplitType) -> DensityReport:
    if len(fam) == 0:
        raise DomainError("empty family")
    if fam.kind == "cubic":
        if omega is SplitType.TOTALLY_RAMIFIED:
            raise DomainError("totally ramified places are excluded by the model restriction")
        code = _CUBIC_OMEGA[omega]
    else:
        code = _KUMMER_OMEGA[omega]
    types = fam.types_at(v0)
    emp = Fraction(int((types == code).sum()), len(fam))
    pred = predicted_density(fam.kind, fam.q, v0.degree, omega, fam.ell)
    g_or_d = fam.params.get("g", fam.params.get("d"))
    return DensityReport(fam.q, fam.kind, g_or_d, str(v0), omega, emp, pred, abs(float(emp - pred)))
