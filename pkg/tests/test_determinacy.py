import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from findet import GF, INF, QQ, Automorphism, Ideal, PolyMatrix, PolyRing
from findet.determinacy import (
    CAVEAT_FINITE_FIELD,
    FINITE,
    NOT_FINITE,
    UNDECIDED,
    PreconditionError,
    Verdict,
    classify_column_g,
    classify_contact,
    classify_matrix,
    classify_right,
    extended_codim,
    fitting_height_check,
    icis_check,
    milnor,
    perturbation_probe,
    singular_ideal,
    tangent_condition_exponent,
    tjurina,
)
from findet.experiments import generic_column
from findet.localbasis import UnitIdeal, k_dim
from findet.matrixops import parse_matrix

import oracles

R = PolyRing(QQ, ("x", "y"))
R3 = PolyRing(QQ, ("x", "y", "z"))
x, y = R.gens()


def ideal(*gens, ring=R):
    return Ideal(ring, list(gens))


def terms(f):
    return dict(f.terms)


# values frozen from the truncated linear algebra oracle (tests/oracles.py)
A_K_TABLE = {k: k for k in range(1, 7)}  # tau = mu = k for x^(k+1) + y^2
CUSP_TABLE = {"x^3 + y^4": 6, "x^3 + y^5": 8}


@pytest.mark.parametrize("k", range(1, 7))
def test_a_k_singularities(k):
    f = R(f"x^{k + 1} + y^2")
    assert tjurina(Ideal(R, [f])) == milnor(f) == A_K_TABLE[k]
    assert oracles.tjurina([terms(f)], 2) == oracles.milnor(terms(f), 2) == k


@pytest.mark.parametrize("text", sorted(CUSP_TABLE))
def test_cusp_invariants(text):
    f = R(text)
    assert tjurina(Ideal(R, [f])) == milnor(f) == CUSP_TABLE[text]
    assert oracles.milnor(terms(f), 2) == CUSP_TABLE[text]


@pytest.mark.parametrize("a", range(2, 7))
@pytest.mark.parametrize("b", range(2, 7))
def test_quasihomogeneous_table(a, b):
    f = R(f"x^{a} + y^{b}")
    assert tjurina(Ideal(R, [f])) == milnor(f) == (a - 1) * (b - 1)


def test_tjurina_examples():
    assert tjurina(ideal("x^2 + y^3")) == 2
    for k in (2, 3, 4):
        assert tjurina(ideal(f"x^{k}")) == INF
    assert tjurina(ideal("x", "y")) == 0
    assert tjurina(ideal("x^2 + y^3 + y^2")) == 1
    assert oracles.tjurina([terms(R("x^2 + y^3 + y^2"))], 2) == 1
    with pytest.raises(UnitIdeal):
        tjurina(ideal("1 + x"))


def test_milnor_examples():
    assert milnor(R("x^2 + y^2")) == 1
    assert milnor(R("x^3 + y^4")) == 6
    for p in (3, 5, 7):
        Fp = PolyRing(GF(p), ("x", "y"))
        assert milnor(Fp(f"x^{p} + y^2")) == INF
        assert oracles.milnor(terms(Fp(f"x^{p} + y^2")), 2, p, max_degree=12) is None
    with pytest.raises(PreconditionError):
        classify_right(R("1 + x"))


def test_extended_codimension_examples():
    assert extended_codim(parse_matrix("[x^2 + y^3]", R)) == 2
    assert extended_codim(parse_matrix("[x; y]", R)) == 0
    A = parse_matrix("[x^2; y^3]", R)
    oracle = oracles.tjurina([terms(R("x^2")), terms(R("y^3"))], 2)
    assert extended_codim(A) == oracle == 7


def test_fitting_height_examples():
    for k in (2, 3):
        (check,) = fitting_height_check(parse_matrix(f"[x^{k}]", R))
        assert (check.t, check.height, check.expected, check.passed) == (1, 1, 1, True)
    t1, t2 = fitting_height_check(parse_matrix("[x, 0; 0, x]", R))
    assert (t1.height, t1.expected, t1.passed) == (1, 2, False)
    assert (t2.height, t2.expected, t2.passed) == (1, 1, True)
    generic = generic_column(2, 3, 2, QQ).matrix
    assert all(c.passed for c in fitting_height_check(generic))


def test_fitting_height_check_transposes_wide_matrices():
    wide = parse_matrix("[x, y, 0]", R3)
    assert fitting_height_check(wide) == fitting_height_check(wide.transpose())


def test_icis_examples():
    assert icis_check(ideal("x^2 + y^3"))
    assert not icis_check(ideal("x^3"))
    assert not icis_check(ideal("x*y", "x*z", ring=R3))


def test_classify_contact_examples():
    report = classify_contact(ideal("x^2 + y^3"))
    assert report.verdict == Verdict(FINITE, 4, "tjurina-bound")
    assert (report.tau, report.ord, report.mng, report.dim, report.icis) == (2, 2, 1, 1, True)
    for k in (2, 3, 4, 5):
        for ring in (R, PolyRing(GF(5), ("x", "y"))):
            rep = classify_contact(Ideal(ring, [ring(f"x^{k}")]))
            assert rep.verdict.status == NOT_FINITE
            assert [(c.t, c.height, c.passed) for c in rep.fitting] == [(1, 1, True)]
    report = classify_contact(ideal("x^2", "y^3", "x*y^2"))
    assert report.dim == 0
    assert ("colength-bound", 4) in report.bounds
    assert report.verdict.bound == min(b for _, b in report.bounds)


def test_colength_branch_exponent_matches_oracle():
    gens = [terms(R(g)) for g in ("x^2", "y^3", "x*y^2")]
    m_times = [{tuple(a + (i == j) for j, a in enumerate(e)): c for e, c in g.items()} for g in gens for i in range(2)]
    exps = [k for k in range(1, 8) if oracles.power_contained(m_times, 2, k)]
    assert exps[0] == 4  # m^4 lies in m*I, so k = 2 and the bound is 2*2 - 2 + 2
    assert oracles.colength(gens, 2) == 5


def test_classify_right_examples():
    assert classify_right(R("x^2 + y^2")).verdict.bound == 2
    assert classify_right(R("x^3 + y^4")).verdict == Verdict(FINITE, 11, "milnor-bound")


@pytest.mark.parametrize("p", [3, 5, 7])
def test_characteristic_split(p):
    Fp = PolyRing(GF(p), ("x", "y"))
    f = Fp(f"x^{p} + y^2")
    right = classify_right(f)
    assert right.mu == INF and right.verdict.status == NOT_FINITE
    contact = classify_contact(Ideal(Fp, [f]))
    assert contact.tau == p
    assert contact.verdict.status == FINITE and contact.verdict.bound == 2 * p
    assert oracles.tjurina([terms(f)], 2, p) == p


def test_classify_column_examples():
    column = classify_column_g(parse_matrix("[x^2 + y^3]", R))
    contact = classify_contact(ideal("x^2 + y^3"))
    assert column.verdict.status == contact.verdict.status
    assert column.verdict.bound == contact.verdict.bound
    rep = classify_column_g(parse_matrix("[x^3]", R))
    assert rep.verdict.status == NOT_FINITE and CAVEAT_FINITE_FIELD not in rep.caveats
    rep = classify_column_g(generic_column(2, 3, 2, QQ).matrix)
    assert rep.verdict.status == FINITE


def test_singular_ideal_colength_matches_oracle():
    ideal_ = singular_ideal(parse_matrix("[x^3 + y^3]", R))
    assert k_dim(ideal_) == 4
    assert oracles.colength([terms(g) for g in ideal_.generators], 2) == 4


def test_finite_field_caveat_on_negative_verdicts():
    F5 = PolyRing(GF(5), ("x", "y", "z"))
    rep = classify_contact(Ideal(F5, [F5("x*y"), F5("x*z")]))
    assert rep.verdict.status == NOT_FINITE
    assert CAVEAT_FINITE_FIELD in rep.caveats
    rep = classify_contact(Ideal(R3, [R3("x*y"), R3("x*z")]))
    assert CAVEAT_FINITE_FIELD not in rep.caveats


def test_classify_matrix_outcomes():
    ok = classify_matrix(parse_matrix("[x, y; y, x]", R))
    assert ok.verdict.status == FINITE and ok.verdict.theorem == "tangent-image-bound"
    bad = classify_matrix(parse_matrix("[x, 0; 0, x]", R))
    assert bad.verdict == Verdict(NOT_FINITE, None, "fitting-height")
    assert tangent_condition_exponent(parse_matrix("[x, 0; 0, x]", R)) is None
    column = classify_matrix(parse_matrix("[x^2 + y^3]", R))
    assert column.verdict == classify_column_g(parse_matrix("[x^2 + y^3]", R)).verdict


def test_verdict_requires_bound_and_criterion():
    with pytest.raises(ValueError):
        Verdict(FINITE, None, "tjurina-bound")
    assert Verdict(UNDECIDED).bound is None


def test_report_serialization():
    data = classify_right(PolyRing(GF(5), ("x", "y"))("x^5 + y^2")).to_dict()
    assert data["mu"] == "infinity"
    assert json.loads(json.dumps(data)) == data
    assert set(data) >= {"ord", "tau", "mu", "d_e", "mng", "icis", "fitting", "verdict", "caveats"}
    text = classify_contact(ideal("x^2 + y^3")).to_text()
    assert "bound:    4 (tjurina-bound)" in text


def test_probe_examples():
    target = ideal("x^2 + y^3")
    low = perturbation_probe(target, k=1, trials=100, seed=0)
    assert low["falsified"] and low["below_bound"]
    high = perturbation_probe(target, k=4, trials=100, seed=0)
    assert not high["falsified"] and high["first_mismatch"] is None
    empty = perturbation_probe(target, k=4, trials=0)
    assert empty["samples"] == [] and not empty["falsified"]
    with pytest.raises(PreconditionError):
        perturbation_probe(ideal("x^3"), k=4, trials=1)


def test_right_probe_uses_milnor_number():
    report = perturbation_probe(R("x^3 + y^4"), k=11, trials=5, seed=1)
    assert report["relation"] == "right"
    assert all(sample["mu"] == 6 for sample in report["samples"])


# -- properties ------------------------------------------------------------


def _semi_quasihomogeneous(rng, ring):
    """x^a + y^b plus terms of weighted degree > 1, so the singularity is isolated."""
    a, b = rng.randint(2, 4), rng.randint(2, 4)
    f = ring(f"x^{a} + y^{b}")
    for _ in range(rng.randint(0, 3)):
        i, j = rng.randint(0, a + 1), rng.randint(0, b + 1)
        if i * b + j * a > a * b:
            f = f + ring.monomial((i, j), rng.randint(-3, 3))
    return f


def _random_automorphism(ring, rng):
    gens = ring.gens()
    while True:
        lin = [[rng.randint(-2, 2) for _ in gens] for _ in gens]
        images = [sum((g.scale(c) for g, c in zip(gens, row)), ring.zero) for row in lin]
        images = [im + ring.monomial(tuple(rng.randint(0, 1) for _ in gens), rng.randint(-1, 1)) * gens[i] for i, im in enumerate(images)]
        try:
            return Automorphism(images)
        except ValueError:
            continue


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_tjurina_is_a_contact_invariant(seed):
    rng = random.Random(seed)
    f = _semi_quasihomogeneous(rng, R)
    phi = _random_automorphism(R, rng)
    unit = R.one + R.monomial((rng.randint(0, 1), rng.randint(0, 1)), rng.randint(-2, 2)) * x
    g = phi.apply(f) * unit
    assert tjurina(Ideal(R, [g])) == tjurina(Ideal(R, [f]))


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_hypersurface_consistency(seed):
    rng = random.Random(seed)
    f = _semi_quasihomogeneous(rng, R)
    tau = tjurina(Ideal(R, [f]))
    assert tau == extended_codim(PolyMatrix.column(R, [f]))
    assert tau == k_dim(Ideal(R, [f, f.partial(0), f.partial(1)]))
    assert tau == oracles.colength([terms(f), terms(f.partial(0)), terms(f.partial(1))], 2)
    assert tau <= milnor(f)


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_bounds_are_sane_and_relations_agree(seed):
    rng = random.Random(seed)
    f = _semi_quasihomogeneous(rng, R)
    contact = classify_contact(Ideal(R, [f]))
    column = classify_column_g(PolyMatrix.column(R, [f]))
    right = classify_right(f)
    for rep in (contact, column, right):
        assert rep.verdict.status == FINITE
        assert rep.ord <= rep.verdict.bound < INF
        assert all(b >= rep.ord for _, b in rep.bounds)
    assert contact.verdict.status == column.verdict.status
