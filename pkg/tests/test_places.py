import numpy as np
import pytest

from frobstats.algebra import GF, Poly, irreducibles
from frobstats.curves import CubicModel, KummerCover
from frobstats.errors import DomainError
from frobstats.places import (
    DirichletChar,
    LPoly,
    Place,
    SplitType,
    char_L_poly,
    infinity_type_kummer,
    place_sum,
    residue_symbol,
    split_cubic,
    split_kummer,
)


@pytest.mark.parametrize("q,ell", [(3, 2), (7, 3)])
def test_residue_symbol_trivial_iff_power(q, ell):
    rng = np.random.default_rng(q)
    for v in irreducibles(q, 2)[:4]:
        place = Place(q, v.coeffs)
        F = GF(q, v.coeffs)
        for _ in range(10):
            f = Poly(tuple(int(x) for x in rng.integers(0, q, 5)), q)
            e = residue_symbol(f, place, ell)
            a = int(F.horner(np.array([f.coeffs or (0,)]), np.array([F.x()]))[0, 0])
            if a == 0:
                assert e is None
                continue
            is_power = int(F.pow(a, (F.order - 1) // ell)) == 1
            assert (e == 0) == is_power


def test_residue_symbol_multiplicative():
    q, ell = 7, 3
    rng = np.random.default_rng(1)
    v = Place(q, irreducibles(q, 3)[5].coeffs)
    for _ in range(30):
        f = Poly(tuple(int(x) for x in rng.integers(0, q, 4)), q)
        g = Poly(tuple(int(x) for x in rng.integers(0, q, 4)), q)
        ef, eg, efg = residue_symbol(f, v, ell), residue_symbol(g, v, ell), residue_symbol(f * g, v, ell)
        if ef is not None and eg is not None:
            assert efg == (ef + eg) % ell


@pytest.mark.parametrize("q,ell,deg", [(3, 2, 5), (7, 3, 4), (5, 2, 4)])
def test_split_kummer_counts_fibres(q, ell, deg):
    """Split places have ell residue-field points above them, inert ones none, ramified one."""
    rng = np.random.default_rng(deg)
    covers = 0
    while covers < 5:
        Q = Poly(tuple(int(x) for x in rng.integers(0, q, deg)) + (1,), q)
        try:
            C = KummerCover(Q, ell)
        except Exception:
            continue
        covers += 1
        for d in (1, 2):
            for v in irreducibles(q, d):
                F = GF(q, v.coeffs)
                ys = F.elements()
                a = int(F.horner(np.array([Q.coeffs]), np.array([F.x()]))[0, 0])
                sols = int((F.pow(ys, ell) == a).sum())
                t = split_kummer(C, Place(q, v.coeffs))
                assert sols == {SplitType.RAMIFIED: 1, SplitType.SPLIT: ell, SplitType.INERT: 0}[t]


def test_infinity_rule():
    # deg Q odd: ramified for ell = 2; even degree with square leading coefficient splits
    assert infinity_type_kummer((1, 0, 0, 1), 3, 2) is SplitType.RAMIFIED
    assert infinity_type_kummer((1, 0, 0, 0, 1), 3, 2) is SplitType.SPLIT
    assert infinity_type_kummer((1, 0, 0, 0, 2), 3, 2) is SplitType.INERT


def test_split_cubic_matches_root_count():
    q = 5
    rng = np.random.default_rng(7)
    done = 0
    while done < 8:
        a = Poly(tuple(int(x) for x in rng.integers(0, q, 3)), q)
        b = Poly(tuple(int(x) for x in rng.integers(0, q, 4)), q)
        try:
            model = CubicModel(a, b)
        except Exception:
            continue
        done += 1
        for d in (1, 2):
            for v in irreducibles(q, d):
                place = Place(q, v.coeffs)
                F = GF(q, v.coeffs)
                ys = F.elements()
                x = np.array([F.x()])
                A = int(F.horner(np.array([a.coeffs or (0,)]), x)[0, 0])
                B = int(F.horner(np.array([b.coeffs]), x)[0, 0])
                roots = int((F.add(F.add(F.pow(ys, 3), F.mul(A, ys)), B) == 0).sum())
                expected = {3: SplitType.TOTALLY_SPLIT, 1: SplitType.PARTIALLY_SPLIT, 0: SplitType.INERT}
                t = split_cubic(model, place)
                if roots == 2 or (A == 0 and B == 0):
                    assert t is SplitType.PARTIALLY_RAMIFIED
                else:
                    assert t is expected[roots]


def test_character_rejects_bad_input():
    with pytest.raises(DomainError):
        DirichletChar(Poly((1, 0, 1), 3), 3)  # 3 does not divide q - 1
    with pytest.raises(DomainError):
        DirichletChar(Poly((2, 0, 1), 3), 2)  # reducible
    with pytest.raises(DomainError):
        DirichletChar(Poly((1, 1), 7), 3, 0)


@pytest.mark.parametrize("q,ell,d", [(3, 2, 4), (3, 2, 5), (7, 3, 2), (7, 3, 3)])
def test_char_L_poly_rh_and_place_sums(q, ell, d):
    for v in irreducibles(q, d)[:6]:
        for k in range(1, ell):
            chi = DirichletChar(v, ell, k)
            L = char_L_poly(chi).normalized()
            assert L.degree == chi.conductor_degree - 2
            r = L.roots()
            assert np.allclose(np.abs(r), q ** -0.5, atol=1e-9)
            ps = L.power_sums(4)
            for n in range(1, 5):
                assert place_sum(chi, n) == -ps[n - 1]


def test_lpoly_json_roundtrip():
    chi = DirichletChar(irreducibles(7, 3)[0], 3, 2)
    L = char_L_poly(chi)
    assert LPoly.from_json(L.to_json()) == L


def test_even_character_has_trivial_zero():
    chi = DirichletChar(irreducibles(3, 4)[0], 2)
    assert chi.is_even
    L = char_L_poly(chi)
    assert sum(c.embed() for c in L.coeffs) == pytest.approx(0)
    assert L.normalized().degree == L.degree - 1
