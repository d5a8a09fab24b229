"""Finite fields F_{q^n} with vectorised table arithmetic.

An element is an integer code ``sum(c_i * q**i)`` of its coordinates in the
power basis of ``F_q[X]/(m)``.  Codes ``0..q-1`` are the prime subfield.
Multiplication goes through discrete log tables built from a primitive
element; addition is digitwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import DomainError
from . import poly as P
from .irreducibles import canonical_modulus, is_irreducible

# largest field order we are willing to tabulate
MAX_ORDER = 20_000_000


class GF:
    """The field F_q[X]/(modulus) with exp/log tables.

    Use :func:`field` for the cached canonical instance of F_{q^n}.
    """

    def __init__(self, q: int, modulus: tuple):
        P.check_odd_prime(q)
        modulus = P.pmonic(P.reduce(modulus, q), q)
        n = len(modulus) - 1
        if n < 1 or not is_irreducible(modulus, q):
            raise DomainError(f"modulus {modulus} is not irreducible over F_{q}")
        order = q ** n
        if order > MAX_ORDER:
            raise DomainError(f"F_{q}^{n} too large to tabulate")
        self.q, self.n, self.order, self.modulus = q, n, order, modulus
        self.pw = q ** np.arange(n, dtype=np.int64)
        self.gen = self._find_generator()
        self.exp, self.log = self._tables()

    # -- construction -------------------------------------------------
    def _find_generator(self) -> tuple:
        q, m, N = self.q, self.modulus, self.order - 1
        fs = P.prime_factors(N) if N > 1 else []
        for code in range(1, self.order):
            g = self._code_to_tuple(code)
            if len(g) == 0:
                continue
            if all(P.ppowmod(g, N // r, m, q) != (1,) for r in fs):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    def _code_to_tuple(self, code: int) -> tuple:
        out = []
        for _ in range(self.n):
            out.append(code % self.q)
            code //= self.q
        return P.trim(out)

    def _mult_matrix(self, g: tuple) -> np.ndarray:
        """Matrix of y -> g*y acting on coordinate column vectors."""
        n, q = self.n, self.q
        M = np.zeros((n, n), dtype=np.int64)
        for j in range(n):
            col = P.pmod(P.pmul(g, (0,) * j + (1,), q), self.modulus, q)
            M[: len(col), j] = col
        return M

    def _tables(self):
        q, n, N = self.q, self.n, self.order - 1
        M = self._mult_matrix(self.gen)
        m = max(1, int(np.ceil(np.sqrt(N))))
        baby = np.zeros((m, n), dtype=np.int64)
        v = np.zeros(n, dtype=np.int64)
        v[0] = 1
        for j in range(m):
            baby[j] = v
            v = (M @ v) % q
        # v == gen^m as a vector; giant step matrix is M^m
        Mm = np.eye(n, dtype=np.int64)
        base, e = M.copy(), m
        while e:
            if e & 1:
                Mm = (Mm @ base) % q
            base = (base @ base) % q
            e >>= 1
        blocks = []
        cur = baby
        total = 0
        while total < N:
            blocks.append(cur)
            total += m
            cur = (cur @ Mm.T) % q
        vecs = np.vstack(blocks)[:N]
        exp = vecs @ self.pw
        logt = np.full(self.order, -1, dtype=np.int64)
        logt[exp] = np.arange(N, dtype=np.int64)
        if (logt[1:] < 0).any():
            raise AssertionError("generator is not primitive")  # pragma: no cover
        exp = np.concatenate([exp, exp])
        exp.setflags(write=False)
        logt.setflags(write=False)
        return exp, logt

    # -- element helpers ------------------------------------------------
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self.pw) % self.q

    def from_digits(self, d) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) % self.q) @ self.pw

    def x(self) -> int:
        """Code of the class of X, a root of the modulus."""
        return self.q if self.n > 1 else (-self.modulus[0]) % self.q

    # -- arithmetic -------------------------------------------------------
    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for p in self.pw.tolist():
            out += ((a // p + b // p) % self.q) * p
        return out

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        for p in self.pw.tolist():
            out += ((-(a // p)) % self.q) * p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def add_base(self, a, c):
        """a + c with c in the prime field (only the lowest digit changes)."""
        a = np.asarray(a, dtype=np.int64)
        low = a % self.q
        return a - low + (low + c) % self.q

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self.log[a], self.log[b]
        out = self.exp[np.where(la < 0, 0, la) + np.where(lb < 0, 0, lb)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def mul_base(self, a, c):
        """a * c with c in the prime field, digitwise."""
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        for p in self.pw.tolist():
            out += ((a // p) * c % self.q) * p
        return out

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        la = self.log[a]
        N = self.order - 1
        out = self.exp[(np.where(la < 0, 0, la) * (e % N)) % N]
        if e == 0:
            return np.ones_like(a)
        return np.where(la < 0, 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ZeroDivisionError("inverse of zero")
        N = self.order - 1
        return self.exp[(N - self.log[a]) % N]

    def frob(self, a, k: int = 1):
        return self.pow(a, self.q ** k)

    def is_square(self, a):
        """True for nonzero squares (and False for 0)."""
        la = self.log[np.asarray(a, dtype=np.int64)]
        return (la >= 0) & (la % 2 == 0)

    def horner(self, coeffs, x):
        """Evaluate base-field polynomials at field points.

        ``coeffs`` has shape (P, D+1), ascending; ``x`` has shape (M,).
        Returns an (M, P) array of codes.
        """
        C = np.atleast_2d(np.asarray(coeffs, dtype=np.int64)) % self.q
        x = np.asarray(x, dtype=np.int64)
        acc = np.zeros((len(x), C.shape[0]), dtype=np.int64)
        xx = np.broadcast_to(x[:, None], acc.shape)
        for k in range(C.shape[1] - 1, -1, -1):
            if k < C.shape[1] - 1:
                acc = self.mul(acc, xx)
            acc = self.add_base(acc, C[None, :, k])
        return acc

    def eval_poly(self, coeffs, x):
        """Evaluate a single polynomial whose coefficients are field codes."""
        x = np.asarray(x, dtype=np.int64)
        acc = np.zeros(x.shape, dtype=np.int64)
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, x), c)
        return acc

    @lru_cache(maxsize=None)
    def zeta_log_factor(self, ell: int) -> int:
        """c with e = c * log(a) mod ell, where a^((Q-1)/ell) = zeta_ell^e."""
        N = self.order - 1
        z = P.zeta_ell(self.q, ell)
        step = N // ell
        lz = int(self.log[z])
        assert lz % step == 0
        c = lz // step  # zeta = omega^c, omega = gen^step
        return pow(c, -1, ell)

    def residue_exponent(self, a, ell: int):
        """Exponent e of the ell-th power residue of a (-1 where a == 0)."""
        if (self.order - 1) % ell:
            raise DomainError(f"ell={ell} does not divide |F*|")
        la = self.log[np.asarray(a, dtype=np.int64)]
        e = (la % ell) * self.zeta_log_factor(ell) % ell
        return np.where(la < 0, -1, e)

    def min_poly(self, a: int) -> tuple:
        """Minimal polynomial over F_q of the element with code a (ascending tuple)."""
        conj = [int(a)]
        while True:
            nxt = int(self.frob(conj[-1]))
            if nxt == conj[0]:
                break
            conj.append(nxt)
        coeffs = [1]  # field codes, ascending
        for r in conj:
            nr = int(self.neg(r))
            new = [0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                new[i + 1] = int(self.add(new[i + 1], c))
                new[i] = int(self.add(new[i], self.mul(c, nr)))
            coeffs = new
        assert all(0 <= c < self.q for c in coeffs)
        return tuple(coeffs)

    def element_degree(self, a) -> np.ndarray:
        """Degree over F_q of each element (the size of its Frobenius orbit)."""
        a = np.asarray(a, dtype=np.int64)
        deg = np.zeros(a.shape, dtype=np.int64)
        for d in sorted(d for d in range(1, self.n + 1) if self.n % d == 0):
            fixed = (self.frob(a, d) == a) & (deg == 0)
            deg[fixed] = d
        return deg

    def __repr__(self):
        return f"GF({self.q}^{self.n}, modulus={list(self.modulus)})"


@lru_cache(maxsize=None)
def field(q: int, n: int) -> GF:
    """Canonical F_{q^n}: modulus is the lexicographically least monic irreducible."""
    return GF(q, canonical_modulus(q, n))


@lru_cache(maxsize=None)
def place_roots(q: int, d: int) -> tuple[np.ndarray, list]:
    """One root (in the canonical F_{q^d}) per monic irreducible of degree d.

    Returns ``(roots, minpolys)`` sorted by the canonical order of the minimal
    polynomials.
    """
    F = field(q, d)
    els = F.elements()
    deg = F.element_degree(els)
    cand = els[deg == d]
    seen = np.zeros(F.order, dtype=bool)
    reps = []
    for a in cand.tolist():
        if seen[a]:
            continue
        orbit = [a]
        for k in range(1, d):
            orbit.append(int(F.frob(a, k)))
        seen[orbit] = True
        reps.append(a)
    mins = [F.min_poly(a) for a in reps]
    order = sorted(range(len(reps)), key=lambda i: P.sort_key(mins[i]))
    roots = np.array([reps[i] for i in order], dtype=np.int64)
    roots.setflags(write=False)
    return roots, [mins[i] for i in order]


@dataclass(frozen=True)
class ExtFieldElem:
    """Scalar wrapper around a code of the canonical F_{q^n}."""

    code: int
    q: int
    n: int

    def __post_init__(self):
        if not 0 <= self.code < self.q ** self.n:
            raise DomainError("code out of range")

    @property
    def F(self) -> GF:
        return field(self.q, self.n)

    @property
    def coeffs(self) -> tuple:
        return tuple(int(x) for x in self.F.digits(self.code))

    def _w(self, c) -> "ExtFieldElem":
        return ExtFieldElem(int(c), self.q, self.n)

    def __add__(self, o):
        return self._w(self.F.add(self.code, o.code))

    def __sub__(self, o):
        return self._w(self.F.sub(self.code, o.code))

    def __mul__(self, o):
        return self._w(self.F.mul(self.code, o.code))

    def __pow__(self, e):
        return self._w(self.F.pow(self.code, e))

    def frob(self):
        return self._w(self.F.frob(self.code))

    def is_base(self) -> bool:
        return self.code < self.q
