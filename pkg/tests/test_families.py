from fractions import Fraction

import numpy as np
import pytest

from frobstats.algebra import Poly, irreducibles
from frobstats.curves import CubicModel, KummerCover
from frobstats.errors import BudgetExceeded, DomainError
from frobstats.families import (
    canonicalize_cyclic,
    empirical_density,
    enum_cyclic,
    enum_quadratic,
    predicted_density,
    quadratic_size,
    sample_quadratic,
)
from frobstats.places import CUBIC_CODE, KUMMER_CODE, Place, SplitType, split_cubic, split_kummer

# confirmed by enumeration before freezing
QUADRATIC_SIZES = {1: 144, 2: 1296, 3: 11664}


@pytest.mark.parametrize("g", [1, 2, 3])
def test_quadratic_sizes(quad_families, g):
    q = 3
    assert len(quad_families[g]) == QUADRATIC_SIZES[g] == 2 * q ** (2 * g + 2) * (q * q - 1) // (q * q)
    assert quadratic_size(q, g) == QUADRATIC_SIZES[g]


def test_quadratic_variants():
    odd, even = enum_quadratic(3, 2, "odd"), enum_quadratic(3, 2, "even")
    # the variants are monic; the full family also carries the non-square twist
    assert 2 * (len(odd) + len(even)) == QUADRATIC_SIZES[2]
    assert len(odd) == quadratic_size(3, 2, "odd") == 3 ** 5 - 3 ** 4


def test_quadratic_members_distinct_and_valid(quad_families):
    fam = quad_families[2]
    assert len({tuple(r) for r in fam.rows}) == len(fam)
    for m in list(fam.models())[::97]:
        KummerCover(m.Q, 2)  # revalidates


def test_types_at_matches_scalar(quad_families, cyclic_families, cubic_family):
    for fam in (quad_families[1], cyclic_families[3], cubic_family):
        v = irreducibles(fam.q, 2)[1]
        place = Place(fam.q, v.coeffs)
        codes = fam.types_at(place)
        models = list(fam.models())
        for i in range(0, len(fam), max(1, len(fam) // 40)):
            m = models[i]
            t = split_cubic(m, place) if fam.kind == "cubic" else split_kummer(m, place)
            table = CUBIC_CODE if fam.kind == "cubic" else KUMMER_CODE
            assert table[int(codes[i])] is t


def test_explicit_formula_whole_families(quad_families):
    for g in (1, 2):
        fam = quad_families[g]
        for n in range(1, 7):
            lhs, rhs = fam.explicit_formula(n)
            assert np.array_equal(lhs, rhs)


def test_cyclic_classes(cyclic_families):
    fam = cyclic_families[3]
    assert fam.dedupe_log["class_size"] == 4
    assert len(fam) == fam.dedupe_log["classes"]
    for m in list(fam.models())[::50]:
        assert canonicalize_cyclic(m.Q, 3) == m.Q
        assert m.conductor_degree == 3
        # another generator of the same extension: 2^3 * Q^2 canonicalises back
        other = (m.Q * m.Q) * Poly((8 % 7,), 7)
        assert canonicalize_cyclic(other, 3) == m.Q


def test_cyclic_rejects_bad_ell():
    with pytest.raises(DomainError):
        enum_cyclic(5, 3, 3)


def test_cubic_family(cubic_family):
    fam = cubic_family
    assert len(fam) == 12000
    assert set(fam.dedupe_log["orbit_sizes"]) == {4}
    assert fam.genus == 1
    for m in list(fam.models())[::600]:
        CubicModel(m.a, m.b)
        assert m.infinity_type is not SplitType.UNCLASSIFIED


def test_budget_refusal():
    with pytest.raises(BudgetExceeded) as exc:
        enum_quadratic(3, 5, budget=1000)
    assert exc.value.required > 1000


def test_sample_is_seeded():
    a, b = sample_quadratic(3, 6, 50, seed=11), sample_quadratic(3, 6, 50, seed=11)
    assert a.estimate and np.array_equal(a.rows, b.rows)


def test_quadratic_density_g3(quad_families):
    fam = quad_families[3]
    v = Place(3, (0, 1))
    ram = empirical_density(fam, v, SplitType.RAMIFIED)
    assert ram.predicted == Fraction(1, 4)
    assert ram.gap <= 0.01


def test_predicted_density_values():
    assert predicted_density("cyclic", 7, 1, SplitType.RAMIFIED, 3) == Fraction(2, 9)
    assert predicted_density("cyclic", 7, 1, SplitType.INERT, 3) == 2 * predicted_density("cyclic", 7, 1, SplitType.SPLIT, 3)
    with pytest.raises(DomainError):
        predicted_density("quadratic", 3, 1, SplitType.TOTALLY_SPLIT)
