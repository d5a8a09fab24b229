import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frobstats.algebra import (
    GF,
    CycInt,
    Poly,
    canonical_modulus,
    factor,
    field,
    irreducible_array,
    irreducibles,
    is_irreducible,
    necklace_count,
    place_roots,
    prime_count,
    verify_pnt,
)
from frobstats.algebra import poly as P
from frobstats.errors import DomainError

Q = st.sampled_from([3, 5, 7])


def polys(q, max_deg=6):
    return st.lists(st.integers(0, q - 1), min_size=1, max_size=max_deg + 1).map(lambda c: Poly(tuple(c), q))


@st.composite
def poly_pair(draw):
    q = draw(Q)
    a = draw(polys(q))
    b = draw(polys(q).filter(lambda p: not p.is_zero()))
    return a, b


@given(poly_pair())
def test_divmod_identity(ab):
    a, b = ab
    quo, rem = P.pdivmod(a.coeffs, b.coeffs, a.q)
    assert Poly(quo, a.q) * b + Poly(rem, a.q) == a
    assert len(rem) < len(b.coeffs) or rem == ()


@given(poly_pair())
def test_gcd_divides_both(ab):
    a, b = ab
    g = a.gcd(b)
    assert (a % g).is_zero() and (b % g).is_zero()
    assert g.is_monic()


@given(Q.flatmap(lambda q: polys(q, 7).filter(lambda p: p.degree >= 1)))
@settings(max_examples=60)
def test_factorization_expands(p):
    fac = factor(p)
    assert fac.expand() == p
    for f, _ in fac.factors:
        assert is_irreducible(f, p.q)


@given(Q.flatmap(lambda q: polys(q, 6).filter(lambda p: p.degree >= 1)))
def test_squarefree_matches_factorization(p):
    assert p.is_squarefree() == factor(p).is_squarefree()


def test_poly_str_and_order():
    x = Poly.x(3)
    assert str(x * x * x + Poly((0, 2), 3)) == "X^3 + 2*X"
    assert Poly((1, 1), 3) < Poly((0, 0, 1), 3)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_prime_counts_match_necklace(q):
    d = 1
    while q ** d <= 200_000:
        assert len(irreducible_array(q, d)) == necklace_count(q, d)
        d += 1


@pytest.mark.parametrize("q", [3, 5, 7])
def test_pnt_identity(q):
    for n in range(1, 13):
        assert verify_pnt(q, n)


def test_prime_count_small_values():
    # hand counts: 3 monic irreducible quadratics over F_3, 8 cubics
    assert [prime_count(3, d) for d in (1, 2, 3)] == [3, 3, 8]
    assert prime_count(2 + 1, 30) == necklace_count(3, 30)


def test_irreducibles_brute_force():
    q, d = 5, 3
    brute = []
    for c in itertools.product(range(q), repeat=d):
        f = tuple(c) + (1,)
        if all(P.peval(f, x, q) for x in range(q)):
            brute.append(f)
    assert sorted(tuple(p.coeffs) for p in irreducibles(q, d)) == sorted(brute)


@pytest.mark.parametrize("q,n", [(3, 2), (5, 3), (7, 2), (3, 5)])
def test_field_axioms(q, n):
    F = field(q, n)
    a = F.elements()
    rng = np.random.default_rng(q * n)
    x, y, z = (rng.choice(a, 200) for _ in range(3))
    assert np.array_equal(F.mul(x, F.add(y, z)), F.add(F.mul(x, y), F.mul(x, z)))
    nz = x[x != 0]
    assert np.all(F.mul(nz, F.inv(nz)) == F.from_digits(np.eye(1, n, 0, dtype=np.int64))[0])
    assert np.array_equal(F.frob(x, n), x)
    assert np.array_equal(F.pow(x, q ** n), x)


def test_canonical_modulus_is_least_irreducible():
    for q, n in [(3, 2), (5, 2), (3, 3)]:
        m = canonical_modulus(q, n)
        assert is_irreducible(m, q)
        assert m == min((p.coeffs for p in irreducibles(q, n)), key=lambda c: c)


def test_place_roots_minpolys_match_sieve():
    for q, d in [(3, 4), (5, 3), (7, 2)]:
        roots, mins = place_roots(q, d)
        assert [tuple(m) for m in mins] == [p.coeffs for p in irreducibles(q, d)]
        F = field(q, d)
        vals = F.horner(np.array(mins), roots)
        assert np.all(np.diagonal(vals) == 0)


def test_field_rejects_reducible_modulus():
    with pytest.raises(DomainError):
        GF(3, (2, 0, 1))  # X^2 + 2 = (X - 1)(X + 1)
    with pytest.raises(DomainError):
        P.check_odd_prime(4)


@given(st.sampled_from([3, 5]), st.data())
def test_cycint_ring(ell, data):
    vec = st.lists(st.integers(-5, 5), min_size=ell - 1, max_size=ell - 1).map(lambda c: CycInt(tuple(c), ell))
    a, b, c = data.draw(vec), data.draw(vec), data.draw(vec)
    assert a * (b + c) == a * b + a * c
    assert abs((a * b).embed() - a.embed() * b.embed()) < 1e-9
    assert (a * a.conj()).embed().imag == pytest.approx(0, abs=1e-9)


def test_cycint_zeta_relation():
    z = CycInt.zeta_pow(1, 3)
    assert (1 + z + z * z).is_zero()
    assert (z ** 3) == CycInt.from_int(1, 3)
