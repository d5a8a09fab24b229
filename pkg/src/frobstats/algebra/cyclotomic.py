"""Cyclotomic integers Z[zeta_ell] in the basis 1, zeta, ..., zeta^(ell-2)."""

from __future__ import annotations

import cmath
from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class CycInt:
    coords: tuple
    ell: int

    def __post_init__(self):
        c = tuple(int(x) for x in self.coords)
        if len(c) != self.ell - 1:
            raise ValueError(f"need {self.ell - 1} coordinates, got {len(c)}")
        object.__setattr__(self, "coords", c)

    @classmethod
    def from_int(cls, n: int, ell: int) -> "CycInt":
        return cls((n,) + (0,) * (ell - 2), ell)

    @classmethod
    def zeta_pow(cls, e: int, ell: int) -> "CycInt":
        return cls.from_exponents({e % ell: 1}, ell)

    @classmethod
    def from_exponents(cls, counts: dict, ell: int) -> "CycInt":
        """sum_e counts[e] * zeta^e, reducing zeta^(ell-1) = -(1 + ... + zeta^(ell-2))."""
        full = [0] * ell
        for e, c in counts.items():
            full[e % ell] += c
        top = full[ell - 1]
        return cls(tuple(x - top for x in full[: ell - 1]), ell)

    @property
    def is_rational(self) -> bool:
        return all(x == 0 for x in self.coords[1:])

    def __int__(self):
        if not self.is_rational:
            raise ValueError(f"{self} is not a rational integer")
        return self.coords[0]

    def __add__(self, o):
        if isinstance(o, int):
            o = CycInt.from_int(o, self.ell)
        return CycInt(tuple(a + b for a, b in zip(self.coords, o.coords)), self.ell)

    __radd__ = __add__

    def __neg__(self):
        return CycInt(tuple(-a for a in self.coords), self.ell)

    def __sub__(self, o):
        return self + (-o if isinstance(o, CycInt) else -o)

    def __mul__(self, o):
        if isinstance(o, int):
            return CycInt(tuple(a * o for a in self.coords), self.ell)
        full = {}
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        full[(i + j) % self.ell] = full.get((i + j) % self.ell, 0) + a * b
        return CycInt.from_exponents(full, self.ell)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = CycInt.from_int(1, self.ell)
        for _ in range(e):
            out = out * self
        return out

    def conj(self) -> "CycInt":
        """Image under zeta -> zeta^-1."""
        return CycInt.from_exponents({-i: a for i, a in enumerate(self.coords)}, self.ell)

    def galois(self, k: int) -> "CycInt":
        """Image under zeta -> zeta^k."""
        return CycInt.from_exponents({i * k: a for i, a in enumerate(self.coords)}, self.ell)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def embed(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.ell)
        return sum(a * z ** i for i, a in enumerate(self.coords))

    def to_list(self) -> list:
        return list(self.coords)
