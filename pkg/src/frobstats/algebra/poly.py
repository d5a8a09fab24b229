"""Dense univariate polynomials over a prime field F_q.

Polynomials are stored as tuples of residues in ascending degree with the
zero polynomial as the empty tuple.  The tuple-level helpers (``padd``,
``pmul``, ...) are what the hot loops use; :class:`Poly` is a thin immutable
wrapper carrying the modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..errors import DomainError


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def check_odd_prime(q: int) -> None:
    if not (isinstance(q, int) and q > 2 and is_prime(q)):
        raise DomainError(f"q must be an odd prime, got {q!r}")


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def least_primitive_root(q: int) -> int:
    fs = prime_factors(q - 1)
    for g in range(2, q):
        if all(pow(g, (q - 1) // r, q) != 1 for r in fs):
            return g
    return 1  # q == 2


@lru_cache(maxsize=None)
def zeta_ell(q: int, ell: int) -> int:
    """The fixed primitive ell-th root of unity g0^((q-1)/ell) in F_q."""
    if (q - 1) % ell:
        raise DomainError(f"ell={ell} does not divide q-1={q - 1}")
    return pow(least_primitive_root(q), (q - 1) // ell, q)


def trim(c) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def reduce(c, q: int) -> tuple:
    return trim(x % q for x in c)


def padd(a, b, q):
    if len(a) < len(b):
        a, b = b, a
    return trim([(x + (b[i] if i < len(b) else 0)) % q for i, x in enumerate(a)])


def psub(a, b, q):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % q for i in range(n)])


def pscale(a, c, q):
    c %= q
    if c == 0:
        return ()
    return tuple(x * c % q for x in a)


def pmul(a, b, q):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(v % q for v in out)


def pdivmod(a, b, q):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], q - 2, q)
    if len(r) - 1 < db:
        return (), trim(r)
    quo = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % q
        quo[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % q
    return trim(quo), trim(r[:db])


def pmod(a, b, q):
    return pdivmod(a, b, q)[1]


def pmonic(a, q):
    if not a:
        return a
    return pscale(a, pow(a[-1], q - 2, q), q)


def pgcd(a, b, q):
    while b:
        a, b = b, pmod(a, b, q)
    return pmonic(a, q)


def pderiv(a, q):
    return trim(i * x % q for i, x in enumerate(a) if i)


def ppowmod(a, e, m, q):
    result = (1,)
    base = pmod(a, m, q)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, q), m, q)
        e >>= 1
        if e:
            base = pmod(pmul(base, base, q), m, q)
    return result


def ppow(a, e, q):
    result = (1,)
    while e:
        if e & 1:
            result = pmul(result, a, q)
        e >>= 1
        if e:
            a = pmul(a, a, q)
    return result


def peval(a, x, q):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % q
    return acc


def is_squarefree(a, q) -> bool:
    if not a:
        return False
    return len(pgcd(a, pderiv(a, q), q)) == 1


def sort_key(a) -> tuple:
    """Canonical order: degree first, then the ascending coefficient tuple."""
    return (len(a), tuple(a))


@dataclass(frozen=True, slots=True)
class Poly:
    """Polynomial over F_q; ``coeffs`` ascending, no trailing zeros."""

    coeffs: tuple
    q: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", reduce(self.coeffs, self.q))

    @classmethod
    def x(cls, q):
        return cls((0, 1), q)

    @classmethod
    def const(cls, c, q):
        return cls((c,), q)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def _wrap(self, c):
        return Poly(c, self.q)

    def _other(self, other):
        if isinstance(other, Poly):
            if other.q != self.q:
                raise DomainError("polynomials over different fields")
            return other.coeffs
        if isinstance(other, int):
            return reduce((other,), self.q)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(padd(self.coeffs, o, self.q))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(psub(self.coeffs, o, self.q))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(psub(o, self.coeffs, self.q))

    def __neg__(self):
        return self._wrap(pscale(self.coeffs, -1, self.q))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(pmul(self.coeffs, o, self.q))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return self._wrap(ppow(self.coeffs, e, self.q))

    def __divmod__(self, other):
        qq, r = pdivmod(self.coeffs, self._other(other), self.q)
        return self._wrap(qq), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        return peval(self.coeffs, x, self.q)

    def __lt__(self, other):
        return sort_key(self.coeffs) < sort_key(other.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)}, q={self.q})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)

    def monic(self) -> "Poly":
        return self._wrap(pmonic(self.coeffs, self.q))

    def derivative(self) -> "Poly":
        return self._wrap(pderiv(self.coeffs, self.q))

    def powmod(self, e: int, m: "Poly") -> "Poly":
        return self._wrap(ppowmod(self.coeffs, e, m.coeffs, self.q))

    def gcd(self, other: "Poly") -> "Poly":
        return self._wrap(pgcd(self.coeffs, other.coeffs, self.q))

    def is_squarefree(self) -> bool:
        return is_squarefree(self.coeffs, self.q)

    def sort_key(self):
        return sort_key(self.coeffs)
