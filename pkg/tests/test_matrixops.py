import random

import pytest
from hypothesis import given, settings, strategies as st

from findet import QQ, GF, Automorphism, PolyRing, Submodule
from findet.localbasis import k_dim
from findet.matrixops import (
    GroupElement,
    PolyMatrix,
    ShapeError,
    act_group,
    column_span,
    fitting_ideal,
    jacobian,
    minors,
    parse_matrix,
    presentation_theta,
    tangent_image,
)
from findet.determinacy import singular_ideal
from findet.experiments import fitting_heights, generic_perturbation

from strategies import random_group_element, random_poly

R = PolyRing(QQ, ("x", "y"))
x, y = R.gens()


def M(text, ring=R):
    return parse_matrix(text, ring)


def test_group_action_examples():
    A = M("[x; y]")
    assert act_group(GroupElement.identity(R, 2, 1), A) == A
    g = GroupElement(PolyMatrix(R, [[1, 1], [0, 1]]), PolyMatrix.identity(R, 1), Automorphism.identity(R))
    assert act_group(g, A) == M("[x + y; y]")
    g = GroupElement(PolyMatrix.identity(R, 1), PolyMatrix.identity(R, 1), Automorphism([y, x]))
    assert act_group(g, M("[x^2]")) == M("[y^2]")


def test_group_element_validation():
    with pytest.raises(ValueError):
        GroupElement(PolyMatrix(R, [[x]]), PolyMatrix.identity(R, 1), Automorphism.identity(R))
    with pytest.raises(ShapeError):
        act_group(GroupElement.identity(R, 1, 1), M("[x; y]"))


def test_fitting_ideal_examples():
    D = M("[x, 0; 0, y]")
    assert fitting_ideal(D, 2).generators == (x * y,)
    assert set(fitting_ideal(D, 1).generators) == {x, y}
    assert set(fitting_ideal(M("[x; y]"), 1).generators) == {x, y}
    with pytest.raises(ValueError):
        fitting_ideal(D, 3)


def test_jacobian_examples():
    assert jacobian(M("[x^2 + y^3]")) == M("[2*x, 3*y^2]")
    F3 = PolyRing(GF(3), ("x", "y"))
    assert jacobian(parse_matrix("[x^3]", F3)) == parse_matrix("[0, 0]", F3)
    assert jacobian(M("[x; y]")) == PolyMatrix.identity(R, 2)
    with pytest.raises(ShapeError):
        jacobian(M("[x, y]"))


def test_tangent_image_examples():
    f = x**2 + y**3
    T = tangent_image(M("[x^2 + y^3]"))
    assert set(g[0] for g in T.generators) == {f, f.partial(0), f.partial(1)}
    assert tangent_image(M("[x; y]")).k_dim() == 0
    assert tangent_image(PolyMatrix.zeros(R, 2, 2)).generators == ()
    with pytest.raises(ValueError):
        tangent_image(M("[1 + x]"))


def test_presentation_matrix_layout():
    f = x**2 + y**3
    theta = presentation_theta(M("[x^2 + y^3]"))
    assert theta == PolyMatrix(R, [[f.partial(0), f.partial(1), f]])
    theta = presentation_theta(M("[x; y]"))
    assert theta.shape == (2, 6)
    assert [row[:2] for row in theta.entries] == [(R.one, R.zero), (R.zero, R.one)]
    assert column_span(presentation_theta(M("[x^2 + y^3]"))).k_dim() == tangent_image(M("[x^2 + y^3]")).k_dim() == 2


# ----------------------------------------------------------------- properties


FP = PolyRing(GF(32003), ("x", "y"))
R3 = PolyRing(QQ, ("x", "y", "z"))


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.sampled_from([(2, 2), (2, 1), (3, 2)]))
def test_fitting_heights_are_group_invariant(seed, shape):
    # sparse inputs often have degenerate heights; those need a full standard
    # basis, which stays cheap over F_p under linear coordinate changes
    rng = random.Random(seed)
    m, n = shape
    A = PolyMatrix(FP, [[random_poly(FP, rng) for _ in range(n)] for _ in range(m)])
    B = act_group(random_group_element(FP, m, n, rng, mild=True), A)
    assert fitting_heights(A) == fitting_heights(B)


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.sampled_from([(2, 2), (2, 1), (3, 2)]), st.sampled_from([R, R3]))
def test_generic_fitting_heights_are_group_invariant(seed, shape, ring):
    rng = random.Random(seed)
    m, n = shape
    A = PolyMatrix(ring, [[random_poly(ring, rng, 2, 3) for _ in range(n)] for _ in range(m)])
    A = generic_perturbation(A, 1, seed, box=5)
    B = act_group(random_group_element(ring, m, n, rng), A)
    heights = fitting_heights(A)
    assert heights == fitting_heights(B)
    assert all(h == expected for _, h, expected in heights)


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_fitting_ideals_are_nested(seed):
    rng = random.Random(seed)
    A = PolyMatrix(FP, [[random_poly(FP, rng) for _ in range(3)] for _ in range(3)])
    for t in (1, 2):
        small = fitting_ideal(A, t)
        for d in minors(A, t + 1):
            assert small.contains(d)


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_extended_tangent_image_of_column(seed, m):
    rng = random.Random(seed)
    A = PolyMatrix.column(R, [random_poly(R, rng, 1, 4) for _ in range(m)])
    T = tangent_image(A, extended=True)
    direct = Submodule(
        R,
        m,
        [tuple(a if k == pos else R.zero for k in range(m)) for a in A.flat() for pos in range(m)]
        + [jacobian(A).column_entries(j) for j in range(R.nvars)],
    )
    for g in T.generators:
        assert direct.contains(g)
    for g in direct.generators:
        assert T.contains(g)


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.integers(1, 2))
def test_isolated_iff_finite_codimension(seed, m):
    rng = random.Random(seed)
    A = PolyMatrix.column(R, [random_poly(R, rng, 1, 3, 2) for _ in range(m)])
    finite_sing = k_dim(singular_ideal(A)) != float("inf")
    finite_de = tangent_image(A).k_dim() != float("inf")
    assert finite_sing == finite_de


def test_isolated_iff_finite_codimension_fixed_instances():
    for text, finite in [("[x^2 + y^3]", True), ("[x^3]", False), ("[x^2; y^3]", True), ("[x*y; x^2]", False)]:
        A = M(text)
        assert (k_dim(singular_ideal(A)) != float("inf")) == finite
        assert (tangent_image(A).k_dim() != float("inf")) == finite
