"""Places of F_q(X), power residue symbols, splitting types and Dirichlet L-polynomials."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import poly as P
from .algebra.cyclotomic import CycInt
from .algebra.field import GF, field, place_roots
from .algebra.irreducibles import divisors, irreducible_array, is_irreducible
from .errors import DomainError, IdentityViolation, ModelError


class SplitType(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"
    TOTALLY_SPLIT = "totally_split"
    PARTIALLY_SPLIT = "partially_split"
    PARTIALLY_RAMIFIED = "partially_ramified"
    TOTALLY_RAMIFIED = "totally_ramified"
    UNCLASSIFIED = "unclassified"

    def __str__(self):
        return self.value


KUMMER_TYPES = (SplitType.RAMIFIED, SplitType.SPLIT, SplitType.INERT)
CUBIC_TYPES = (
    SplitType.TOTALLY_SPLIT,
    SplitType.PARTIALLY_SPLIT,
    SplitType.INERT,
    SplitType.PARTIALLY_RAMIFIED,
    SplitType.TOTALLY_RAMIFIED,
)

# integer codes used by the batch classifiers
K_RAM, K_SPLIT, K_INERT = 0, 1, 2
C_TS, C_PS, C_IN, C_PR, C_UNCL = 0, 1, 2, 3, -1
KUMMER_CODE = {K_RAM: SplitType.RAMIFIED, K_SPLIT: SplitType.SPLIT, K_INERT: SplitType.INERT}
CUBIC_CODE = {
    C_TS: SplitType.TOTALLY_SPLIT,
    C_PS: SplitType.PARTIALLY_SPLIT,
    C_IN: SplitType.INERT,
    C_PR: SplitType.PARTIALLY_RAMIFIED,
    C_UNCL: SplitType.UNCLASSIFIED,
}


@dataclass(frozen=True)
class Place:
    """A finite place (monic irreducible ``poly``) or the infinite place (``poly is None``)."""

    q: int
    poly: tuple | None = None

    def __post_init__(self):
        if self.poly is not None:
            p = P.reduce(self.poly, self.q)
            if not p or p[-1] != 1 or not is_irreducible(p, self.q):
                raise DomainError(f"{p} is not a monic irreducible over F_{self.q}")
            object.__setattr__(self, "poly", p)

    @classmethod
    def infinity(cls, q: int) -> "Place":
        return cls(q, None)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else len(self.poly) - 1

    def __str__(self):
        return "inf" if self.poly is None else str(P.Poly(self.poly, self.q))


def _require_ell(q: int, ell: int) -> None:
    if ell < 2 or not P.is_prime(ell) or (q - 1) % ell:
        raise DomainError(f"ell={ell} must be a prime dividing q-1={q - 1}")


def residue_symbol(f: P.Poly, v: Place, ell: int) -> int | None:
    """Exponent e with f^((q^deg v - 1)/ell) = zeta_ell^e mod v, or None when v | f."""
    q = f.q
    _require_ell(q, ell)
    if v.is_infinite:
        raise DomainError("residue symbol needs a finite place")
    r = P.pmod(f.coeffs, v.poly, q)
    if not r:
        return None
    c = P.ppowmod(r, (q ** v.degree - 1) // ell, v.poly, q)
    if len(c) != 1:
        raise IdentityViolation(f"power residue of {f} mod {v} is not a constant: {c}")
    z = P.zeta_ell(q, ell)
    for e in range(ell):
        if pow(z, e, q) == c[0]:
            return e
    raise IdentityViolation(f"{c[0]} is not an ell-th root of unity")


def infinity_type_kummer(Q: tuple, q: int, ell: int) -> SplitType:
    deg = len(Q) - 1
    if deg % ell:
        return SplitType.RAMIFIED
    lc = Q[-1]
    return SplitType.SPLIT if pow(lc, (q - 1) // ell, q) == 1 else SplitType.INERT


def split_kummer(cover, v: Place) -> SplitType:
    """Splitting of v in F_q(X)(Q^(1/ell)); ``cover`` needs ``Q`` (Poly) and ``ell``."""
    Q, ell = cover.Q, cover.ell
    if v.is_infinite:
        return infinity_type_kummer(Q.coeffs, Q.q, ell)
    e = residue_symbol(Q, v, ell)
    if e is None:
        return SplitType.RAMIFIED
    return SplitType.SPLIT if e == 0 else SplitType.INERT


def kummer_types_at_degree(Qs: np.ndarray, q: int, ell: int, d: int) -> np.ndarray:
    """Splitting codes (K_*) of every place of degree d for each row of ``Qs``.

    ``Qs`` is a (M, D+1) coefficient array.  Result has shape (M, pi(d)), with
    places in canonical order.
    """
    roots, _ = place_roots(q, d)
    F = field(q, d)
    vals = F.horner(Qs, roots).T
    e = F.residue_exponent(vals, ell)
    return np.where(e < 0, K_RAM, np.where(e == 0, K_SPLIT, K_INERT))


# ---------------------------------------------------------------- cubic


def _cubic_root_count(F: GF, A, B) -> np.ndarray:
    """Number of distinct roots of y^3 + A y + B in F (vectorised over A, B).

    Uses the discriminant: zero gives 2 (or 1 when A = B = 0), a non-square
    gives 1, a square gives 3 or 0 decided by y^|F| = y mod the cubic.
    """
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    q = F.q
    A3 = F.pow(A, 3)
    B2 = F.pow(B, 2)
    disc = F.neg(F.add(F.mul_base(A3, 4 % q), F.mul_base(B2, 27 % q)))
    out = np.zeros(A.shape, dtype=np.int64)
    zero = disc == 0
    out[zero] = np.where((A[zero] == 0) & (B[zero] == 0), 1, 2)
    sq = F.is_square(disc)
    out[~zero & ~sq] = 1
    idx = np.flatnonzero(~zero & sq)
    if len(idx):
        a, b = A.ravel()[idx], B.ravel()[idx]
        na, nb = F.neg(a), F.neg(b)
        Z = np.zeros_like(a)

        def mulmod(x, y):
            d = [Z] * 5
            for i in range(3):
                for j in range(3):
                    d[i + j] = F.add(d[i + j], F.mul(x[i], y[j]))
            # y^3 = -a y - b, y^4 = -a y^2 - b y
            r0 = F.add(d[0], F.mul(nb, d[3]))
            r1 = F.add(F.add(d[1], F.mul(na, d[3])), F.mul(nb, d[4]))
            r2 = F.add(d[2], F.mul(na, d[4]))
            return (r0, r1, r2)

        one = np.ones_like(a)
        res = (one, Z, Z)
        base = (Z, one, Z)
        e = F.order
        while e:
            if e & 1:
                res = mulmod(res, base)
            e >>= 1
            if e:
                base = mulmod(base, base)
        ts = (res[0] == 0) & (res[1] == 1) & (res[2] == 0)
        flat = out.ravel()
        flat[idx] = np.where(ts, 3, 0)
        out = flat.reshape(A.shape)
    return out


_ROOTS_TO_CODE = {3: C_TS, 1: C_PS, 0: C_IN, 2: C_PR}
_ROOTS_LOOKUP = np.array([C_IN, C_PS, C_PR, C_TS], dtype=np.int64)


def cubic_types_at_degree(a_rows: np.ndarray, b_rows: np.ndarray, q: int, d: int) -> np.ndarray:
    """Cubic splitting codes (C_*) of every finite place of degree d, shape (M, pi(d))."""
    roots, _ = place_roots(q, d)
    F = field(q, d)
    A = F.horner(a_rows, roots).T
    B = F.horner(b_rows, roots).T
    if ((A == 0) & (B == 0)).any():
        raise ModelError("totally ramified place found; discriminant is not squarefree")
    n = _cubic_root_count(F, A, B)
    return _ROOTS_LOOKUP[n]


def cubic_infinity(a: tuple, b: tuple, q: int) -> SplitType:
    """Type of the infinite place for Y^3 + aY + b.

    With k = max(ceil(deg a/2), ceil(deg b/3)) the substitution Y = X^k Y'
    gives a cubic over F_q[[1/X]] whose discriminant has valuation
    6k - deg(disc).  Valuation 0 is classified by the reduced cubic over F_q,
    valuation 1 is partially ramified, anything else is left unclassified.
    """
    da, db = len(a) - 1, len(b) - 1
    k = max(-(-da // 2) if da >= 0 else 0, -(-db // 3) if db >= 0 else 0)
    disc = cubic_disc(a, b, q)
    vt = 6 * k - (len(disc) - 1)
    if vt == 1:
        return SplitType.PARTIALLY_RAMIFIED
    if vt != 0:
        return SplitType.UNCLASSIFIED
    abar = a[2 * k] if da == 2 * k else 0
    bbar = b[3 * k] if db == 3 * k else 0
    F = field(q, 1)
    n = int(_cubic_root_count(F, np.array([abar]), np.array([bbar]))[0])
    return CUBIC_CODE[_ROOTS_TO_CODE[n]]


def cubic_disc(a: tuple, b: tuple, q: int) -> tuple:
    return P.padd(P.pscale(P.ppow(a, 3, q), -4, q), P.pscale(P.pmul(b, b, q), -27, q), q)


def split_cubic(model, v: Place) -> SplitType:
    """Splitting of v in the cubic field defined by Y^3 + aY + b (``model.a``, ``model.b``)."""
    a, b, q = model.a.coeffs, model.b.coeffs, model.q
    if v.is_infinite:
        return cubic_infinity(a, b, q)
    disc = cubic_disc(a, b, q)
    if not P.pmod(disc, v.poly, q):
        if not P.pmod(a, v.poly, q) and not P.pmod(b, v.poly, q):
            raise ModelError("totally ramified place; the model restriction excludes it")
        return SplitType.PARTIALLY_RAMIFIED
    F = GF(q, v.poly)
    x = np.array([F.x()])
    A = F.horner(np.array([a or (0,)]), x)[0]
    B = F.horner(np.array([b or (0,)]), x)[0]
    n = int(_cubic_root_count(F, A, B)[0])
    return CUBIC_CODE[_ROOTS_TO_CODE[n]]


# ---------------------------------------------------------------- characters


@dataclass(frozen=True)
class DirichletChar:
    """chi_{v0, ell}^k: the ell-th power residue symbol modulo v0, raised to k."""

    modulus: P.Poly
    ell: int
    k: int = 1

    def __post_init__(self):
        q = self.modulus.q
        _require_ell(q, self.ell)
        if not self.modulus.is_monic() or not is_irreducible(self.modulus.coeffs, q):
            raise DomainError("modulus must be monic irreducible")
        if not 1 <= self.k <= self.ell - 1:
            raise DomainError("trivial character (k must be in 1..ell-1)")

    @property
    def q(self) -> int:
        return self.modulus.q

    @property
    def degree(self) -> int:
        return self.modulus.degree

    @property
    def is_even(self) -> bool:
        """Trivial on F_q^*: chi(c) = c^((q-1)/ell * deg v0), so even iff ell | deg v0."""
        return self.degree % self.ell == 0

    @property
    def conductor_degree(self) -> int:
        """deg v0 plus one when the infinite place ramifies (chi odd)."""
        return self.degree + (0 if self.is_even else 1)

    def field(self) -> GF:
        return _modulus_field(self.q, self.modulus.coeffs)

    def exponents(self, codes) -> np.ndarray:
        """chi exponents (k * residue exponent mod ell) of residues given as codes; -1 for 0."""
        e = self.field().residue_exponent(codes, self.ell)
        return np.where(e < 0, -1, e * self.k % self.ell)

    def __call__(self, f: P.Poly) -> int | None:
        e = residue_symbol(f, Place(self.q, self.modulus.coeffs), self.ell)
        return None if e is None else e * self.k % self.ell


@lru_cache(maxsize=256)
def _modulus_field(q: int, modulus: tuple) -> GF:
    return GF(q, modulus)


@dataclass(frozen=True)
class LPoly:
    """L(u, chi) = sum_m coeffs[m] u^m with coefficients in Z[zeta_ell]."""

    q: int
    ell: int
    k: int
    modulus: tuple
    coeffs: tuple  # of CycInt
    normalized_flag: bool = False

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self) -> str:
        return json.dumps(
            {
                "q": self.q,
                "ell": self.ell,
                "k": self.k,
                "modulus_coeffs": list(self.modulus),
                "coeffs": [c.to_list() for c in self.coeffs],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "LPoly":
        d = json.loads(text)
        cs = tuple(CycInt(tuple(c), d["ell"]) for c in d["coeffs"])
        return cls(d["q"], d["ell"], d["k"], tuple(d["modulus_coeffs"]), cs)

    def is_even(self) -> bool:
        return (len(self.modulus) - 1) % self.ell == 0

    def normalized(self) -> "LPoly":
        """Divide out the trivial zero (1 - u) when chi is even."""
        if self.normalized_flag or not self.is_even():
            return LPoly(self.q, self.ell, self.k, self.modulus, self.coeffs, True)
        out = []
        acc = CycInt.from_int(0, self.ell)
        for c in self.coeffs[:-1]:
            acc = acc + c
            out.append(acc)
        if not (acc + self.coeffs[-1]).is_zero():
            raise IdentityViolation("even character L-polynomial does not vanish at u = 1")
        return LPoly(self.q, self.ell, self.k, self.modulus, tuple(out), True)

    def power_sums(self, N: int) -> list:
        """p_n = sum_j alpha_j^n for n = 1..N, exact in Z[zeta], where L = prod (1 - alpha_j u)."""
        a = list(self.coeffs)
        z = CycInt.from_int(0, self.ell)
        p = []
        for n in range(1, N + 1):
            an = a[n] if n < len(a) else z
            s = an * (-n)
            for i in range(1, n):
                ai = a[i] if i < len(a) else z
                s = s - ai * p[n - i - 1]
            p.append(s)
        return p

    def complex_coeffs(self) -> np.ndarray:
        return np.array([c.embed() for c in self.coeffs], dtype=complex)

    def roots(self) -> np.ndarray:
        c = self.complex_coeffs()
        if len(c) <= 1:
            return np.zeros(0, dtype=complex)
        return np.roots(c[::-1])

    def __mul__(self, other: "LPoly") -> list:
        """Coefficient list (CycInt) of the product polynomial."""
        z = CycInt.from_int(0, self.ell)
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return out


def char_L_poly(chi: DirichletChar) -> LPoly:
    """L(u, chi) from character sums over monic polynomials of each degree < deg v0."""
    q, ell, D = chi.q, chi.ell, chi.degree
    coeffs = []
    for m in range(D + 1):
        # monic f of degree m < D are their own residues; in degree D every residue occurs once
        codes = np.arange(q ** m, dtype=np.int64) + (q ** m if m < D else 0)
        e = chi.exponents(codes)
        counts = np.bincount(e[e >= 0], minlength=ell)
        c = CycInt.from_exponents(dict(enumerate(counts.tolist())), ell)
        if m == D:
            if not c.is_zero():
                raise IdentityViolation(f"character sum in degree {D} is {c}, expected 0")
        else:
            coeffs.append(c)
    return LPoly(q, ell, chi.k, chi.modulus.coeffs, tuple(coeffs))


def L_eval(L: LPoly, sigma: float, t) -> complex | np.ndarray:
    """L at s = sigma + i t, i.e. at u = q^(-s)."""
    t = np.asarray(t, dtype=float)
    u = np.exp(-(sigma + 1j * t) * np.log(L.q))
    c = L.complex_coeffs()
    out = np.zeros(u.shape, dtype=complex)
    for coef in c[::-1]:
        out = out * u + coef
    return out if out.ndim else complex(out)


def place_sum(chi: DirichletChar, n: int) -> CycInt:
    """sum over places v with deg v | n of deg v * chi(v)^(n/deg v), infinity included.

    chi(inf) is 1 for even chi (infinity splits) and 0 otherwise.
    """
    q, ell = chi.q, chi.ell
    F = chi.field()
    rho = np.array([F.x()])
    counts: dict = {}
    for d in divisors(n):
        rows = irreducible_array(q, d)
        vals = F.horner(rows, rho)[0]
        e = chi.exponents(vals)
        hist = np.bincount(e[e >= 0], minlength=ell)
        for ex, cnt in enumerate(hist.tolist()):
            key = ex * (n // d) % ell
            counts[key] = counts.get(key, 0) + d * cnt
    if chi.is_even:
        counts[0] = counts.get(0, 0) + 1
    return CycInt.from_exponents(counts, ell)
