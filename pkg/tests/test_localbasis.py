import random

import pytest
from hypothesis import given, settings, strategies as st

from findet import GF, INF, QQ, Ideal, PolyRing, Submodule
from findet.localbasis import (
    GeneratorIsUnit,
    UnitIdeal,
    k_dim,
    krull_dim_and_height,
    m_primary_exponent,
    minimal_generators,
    normal_form,
    standard_basis,
)

import oracles
from strategies import random_primary_ideal

R = PolyRing(QQ, ("x", "y"))
x, y = R.gens()
R3 = PolyRing(QQ, ("x", "y", "z"))


def I(*gens, ring=R):
    return Ideal(ring, list(gens))


def test_leading_ideal_of_local_example():
    basis = standard_basis(I("2*x + y^3", "3*y^2"))
    assert sorted(basis.leading_monomials) == [(0, 2), (1, 0)]


def test_kdim_and_staircase():
    basis = standard_basis(I("x^2", "y^3"))
    assert sorted(basis.staircase()) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert k_dim(I("x^2", "y^3")) == 6
    assert k_dim(I("x^2", "x*y")) == INF


def test_units_are_invertible_locally():
    # x + x^2 = x(1 + x) generates the same ideal as x
    assert I("x + x^2").contains(x)
    assert k_dim(I("x + x^2", "y")) == 1


def test_normal_forms():
    basis = standard_basis(I("x^2", "y^2"))
    assert normal_form(y, basis) == y
    assert normal_form(x**2 * y + y**2, basis) == 0


def test_dimension_and_height():
    assert krull_dim_and_height(I("x^2", "x*y")) == (1, 1)
    assert krull_dim_and_height(I("x", "y")) == (0, 2)
    assert krull_dim_and_height(I(ring=R)) == (2, 0)
    with pytest.raises(UnitIdeal):
        krull_dim_and_height(I("1 + x"))


def test_m_primary_exponent():
    assert m_primary_exponent(I("x^2", "y^3")) == 4
    assert m_primary_exponent(I("x", "y")) == 1
    assert m_primary_exponent(I("x^2", "x*y")) is None


def test_minimal_generators():
    assert len(minimal_generators(I("x^2", "y^3", "x*y^2"))) == 3
    assert minimal_generators(I("x", "y", "x + y^2")) in [(x, y), (y, x + y**2), (x, x + y**2)]
    assert len(minimal_generators(I("x", "x*y"))) == 1
    with pytest.raises(GeneratorIsUnit):
        minimal_generators(I("x", "1 + y"))


def test_submodule_kdim():
    N = Submodule(R, 2, [(x, R.zero), (R.zero, y), (y, x)])
    assert N.k_dim() == oracles.module_colength(
        [[{(1, 0): 1}, {}], [{}, {(0, 1): 1}], [{(0, 1): 1}, {(1, 0): 1}]], 2, 2
    )


def test_dump_is_deterministic():
    a = standard_basis(I("x^2 + y^3", "x*y")).dump()
    b = standard_basis(I("x^2 + y^3", "x*y")).dump()
    assert a == b and a.startswith("# standard basis over Q[[x, y]]")


# ----------------------------------------------------------------- properties


@settings(max_examples=30)
@given(st.integers(0, 10**6), st.sampled_from([0, 3, 7]), st.integers(1, 3))
def test_kdim_matches_oracle(seed, p, s):
    field = GF(p) if p else QQ
    ring = PolyRing(field, ("x", "y", "z")[:s])
    ideal = random_primary_ideal(ring, random.Random(seed))
    expected = oracles.colength([oracles.poly_from_terms(g.terms, p) for g in ideal.generators if g], s, p)
    assert expected is not None
    assert k_dim(ideal) == expected


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_generators_reduce_to_zero(seed):
    ideal = random_primary_ideal(R3, random.Random(seed))
    basis = ideal.std
    for g in ideal.generators:
        assert basis.contains(g)
    for e in basis.elements:
        assert ideal.contains(e)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_staircase_monomials_are_independent_mod_ideal(seed):
    ideal = random_primary_ideal(R, random.Random(seed))
    basis = ideal.std
    for e in basis.staircase():
        assert not basis.contains(R.monomial(e))
    k = m_primary_exponent(ideal)
    assert oracles.power_contained([oracles.poly_from_terms(g.terms) for g in ideal.generators if g], 2, k)
    if k > 1:
        assert not oracles.power_contained([oracles.poly_from_terms(g.terms) for g in ideal.generators if g], 2, k - 1)


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_kdim_invariant_under_unit_multiples(seed):
    rng = random.Random(seed)
    ideal = random_primary_ideal(R, rng)
    unit = R.one + x * rng.randint(-3, 3) + y * y * rng.randint(-3, 3)
    scaled = Ideal(R, [g * unit for g in ideal.generators])
    assert k_dim(scaled) == k_dim(ideal)


def test_truncation_is_sound_across_positions():
    # every position has staircase {1}, yet x*e_1 is not in the module
    N = Submodule(R, 2, [(x, R.one), (y, R.zero), (R.zero, x), (R.zero, y)])
    assert k_dim(N) == 2
    assert not N.contains((x, R.zero))
    assert N.contains((x ** 2, R.zero))
    assert N.contains((x, R.one + x))
    assert not N.contains((R.zero, R.one))


FP = PolyRing(GF(32003), ("x", "y", "z"))


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_capped_height_agrees_with_full_standard_basis(seed, cap):
    rng = random.Random(seed)
    gens = []
    for _ in range(rng.randint(1, 3)):
        f = FP.zero
        for _ in range(rng.randint(1, 3)):
            e = [rng.randint(0, 2) for _ in range(3)]
            if sum(e):
                f = f + FP.monomial(e, rng.randint(1, 50))
        gens.append(f)
    if not any(gens):
        return
    full = Ideal(FP, gens)
    dim, height = full.std and krull_dim_and_height(full)
    fast = krull_dim_and_height(Ideal(FP, gens), height_cap=max(cap, height))
    assert fast == (dim, height)
