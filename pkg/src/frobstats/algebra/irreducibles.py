"""Monic irreducible polynomials over F_q: sieve enumeration, counts, factoring.

Monic polynomials of degree d are addressed by an integer *code*
``sum(c_i * q**i for i < d)`` of their lower coefficients.  The sieve marks
every product ``f * h`` with ``f`` irreducible of degree ``<= d/2`` and ``h``
any monic of the complementary degree; the survivors are irreducible.
"""

from __future__ import annotations

import itertools
import logging
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from ..errors import DomainError
from . import poly as P

log = logging.getLogger(__name__)

# enumerate explicitly up to this many monic candidates; beyond it only counts
ENUM_LIMIT = 2_000_000
_CHUNK = 1 << 21


def cache_dir() -> Path | None:
    """Directory for irreducible cache files; ``None`` when disabled (empty env value)."""
    val = os.environ.get("FROBSTATS_CACHE", "./cache")
    return Path(val) if val else None


def mobius(n: int) -> int:
    fs = P.prime_factors(n)
    m = n
    for p in fs:
        m //= p
        if m % p == 0:
            return 0
    return -1 if len(fs) % 2 else 1


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def necklace_count(q: int, d: int) -> int:
    """(1/d) sum_{e|d} mu(e) q^(d/e), the number of monic irreducibles of degree d."""
    total = sum(mobius(e) * q ** (d // e) for e in divisors(d))
    assert total % d == 0
    return total // d


def _codes_to_coeffs(codes: np.ndarray, q: int, d: int) -> np.ndarray:
    out = np.empty((len(codes), d), dtype=np.int64)
    c = codes.copy()
    for i in range(d):
        out[:, i] = c % q
        c //= q
    return out


def _sieve(q: int, d: int) -> np.ndarray:
    """Lower-coefficient rows of all monic irreducibles of degree d (unsorted)."""
    n = q ** d
    reducible = np.zeros(n, dtype=bool)
    pw = q ** np.arange(d, dtype=np.int64)
    for d1 in range(1, d // 2 + 1):
        d2 = d - d1
        F = _irreducible_rows(q, d1)
        F = np.hstack([F, np.ones((len(F), 1), dtype=np.int64)])
        H = _codes_to_coeffs(np.arange(q ** d2, dtype=np.int64), q, d2)
        H = np.hstack([H, np.ones((len(H), 1), dtype=np.int64)])
        step = max(1, _CHUNK // len(H))
        for s in range(0, len(F), step):
            Fc = F[s : s + step]
            prod = np.zeros((len(Fc), len(H), d), dtype=np.int64)
            for i in range(d1 + 1):
                for j in range(d2 + 1):
                    if i + j < d:
                        prod[:, :, i + j] += Fc[:, i, None] * H[None, :, j]
            codes = (prod % q) @ pw
            reducible[codes.ravel()] = True
    keep = np.flatnonzero(~reducible)
    return _codes_to_coeffs(keep, q, d)


def _cache_path(q: int, d: int) -> Path | None:
    root = cache_dir()
    return None if root is None else root / f"irr_q{q}_d{d}.txt"


def _read_cache(path: Path, q: int, d: int) -> np.ndarray | None:
    try:
        with open(path) as fh:
            header = fh.readline().split()
            if header[:2] != [f"q={q}", f"d={d}"] or header[-1] != "v1":
                return None
            count = int(header[2].split("=")[1])
            rows = [[int(x) for x in line.split(",")] for line in fh if line.strip()]
    except (OSError, ValueError, IndexError):
        return None
    if len(rows) != count:
        return None
    arr = np.array(rows, dtype=np.int64).reshape(count, d + 1)
    return arr[:, :d]


def _write_cache(path: Path, q: int, d: int, rows: np.ndarray) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(f"q={q} d={d} count={len(rows)} v1\n")
            for r in rows:
                fh.write(",".join(map(str, r.tolist())) + ",1\n")
        os.replace(tmp, path)
    except OSError as exc:  # cache is an optimisation only
        log.warning("could not write irreducible cache %s: %s", path, exc)


@lru_cache(maxsize=None)
def _irreducible_rows(q: int, d: int) -> np.ndarray:
    if d == 1:
        return np.arange(q, dtype=np.int64).reshape(q, 1)
    if q ** d > ENUM_LIMIT:
        raise DomainError(f"q^d = {q}^{d} exceeds the enumeration limit {ENUM_LIMIT}")
    path = _cache_path(q, d)
    if path is not None and path.exists():
        rows = _read_cache(path, q, d)
        if rows is not None:
            return rows
        log.warning("ignoring malformed cache file %s", path)
    rows = _sieve(q, d)
    # canonical order: lexicographic on the ascending coefficient tuple
    rows = rows[np.lexsort(rows.T[::-1])]
    rows.setflags(write=False)
    if path is not None:
        _write_cache(path, q, d, rows)
    return rows


def irreducible_array(q: int, d: int) -> np.ndarray:
    """Read-only (pi(d), d+1) array of monic irreducible coefficients, canonical order."""
    P.check_odd_prime(q)
    if d < 1:
        raise DomainError("degree must be positive")
    rows = _irreducible_rows(q, d)
    return np.hstack([rows, np.ones((len(rows), 1), dtype=np.int64)])


@lru_cache(maxsize=None)
def _irreducible_tuples(q: int, d: int) -> tuple:
    return tuple(tuple(int(x) for x in r) for r in irreducible_array(q, d))


def irreducibles(q: int, d: int) -> list[P.Poly]:
    """All monic irreducibles of degree d over F_q, sorted canonically."""
    return [P.Poly(c, q) for c in _irreducible_tuples(q, d)]


def prime_count(q: int, d: int) -> int:
    """pi(d). Enumerates when feasible, otherwise uses the Moebius formula."""
    P.check_odd_prime(q)
    if d < 1:
        raise DomainError("degree must be positive")
    if q ** d <= ENUM_LIMIT:
        return len(_irreducible_rows(q, d))
    return necklace_count(q, d)


def verify_pnt(q: int, n: int) -> bool:
    """Check q^n = sum_{d|n} d * pi(d) exactly."""
    return q ** n == sum(d * prime_count(q, d) for d in divisors(n))


def is_irreducible(f, q: int) -> bool:
    """Rabin's test on a coefficient tuple (or Poly)."""
    if isinstance(f, P.Poly):
        f = f.coeffs
    f = P.pmonic(P.reduce(f, q), q)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = (0, 1)
    if P.ppowmod(x, q ** n, f, q) != P.pmod(x, f, q):
        return False
    for r in P.prime_factors(n):
        h = P.psub(P.ppowmod(x, q ** (n // r), f, q), x, q)
        if len(P.pgcd(f, h, q)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def canonical_modulus(q: int, n: int) -> tuple:
    """Lexicographically least monic irreducible of degree n (ascending tuple)."""
    if n == 1:
        return (0, 1)
    for low in itertools.product(range(q), repeat=n):
        if low[0] == 0:
            continue
        f = low + (1,)
        if is_irreducible(f, q):
            return f
    raise AssertionError("no irreducible found")  # pragma: no cover


@dataclass(frozen=True)
class Factorization:
    unit: int
    factors: tuple  # ((Poly, multiplicity), ...)
    q: int

    def expand(self) -> P.Poly:
        out = P.Poly((self.unit,), self.q)
        for f, e in self.factors:
            out = out * f ** e
        return out

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def is_powerfree(self, ell: int) -> bool:
        return all(e < ell for _, e in self.factors)

    def radical(self) -> P.Poly:
        out = P.Poly((1,), self.q)
        for f, _ in self.factors:
            out = out * f
        return out


def factor_tuple(p, q: int) -> tuple[int, tuple]:
    """Trial division; returns (unit, ((coeff tuple, mult), ...)) in canonical order."""
    if not p:
        raise DomainError("cannot factor the zero polynomial")
    unit = p[-1]
    rest = P.pmonic(p, q)
    out = []
    d = 1
    while 2 * d <= len(rest) - 1:
        if q ** d > ENUM_LIMIT:
            raise DomainError("factor degree too large for trial division")
        for f in _irreducible_tuples(q, d):
            e = 0
            while True:
                qq, r = P.pdivmod(rest, f, q)
                if r:
                    break
                rest, e = qq, e + 1
            if e:
                out.append((f, e))
            if 2 * d > len(rest) - 1:
                break
        d += 1
    if len(rest) > 1:
        # remaining cofactor is irreducible; it may repeat an earlier factor only if
        # it has degree <= d, which trial division already removed
        out.append((rest, 1))
    out.sort(key=lambda fe: P.sort_key(fe[0]))
    return unit, tuple(out)


def factor(p: P.Poly) -> Factorization:
    unit, fs = factor_tuple(p.coeffs, p.q)
    return Factorization(unit, tuple((P.Poly(f, p.q), e) for f, e in fs), p.q)
