"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from findet import QQ, GF, Automorphism, Ideal, PolyRing, Polynomial
from findet.matrixops import GroupElement, PolyMatrix


def polynomials(ring: PolyRing, max_terms=5, max_degree=5, min_order=0, coeff=5):
    s = ring.nvars
    exps = st.tuples(*[st.integers(0, max_degree)] * s).filter(lambda e: min_order <= sum(e) <= max_degree)
    coeffs = st.integers(-coeff, coeff)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Polynomial(ring, d))


def fields():
    return st.sampled_from([QQ, GF(3), GF(5), GF(7), GF(32003)])


def random_poly(ring, rng, low=1, high=3, terms=3):
    out = ring.zero
    for _ in range(terms):
        e = [0] * ring.nvars
        for _ in range(rng.randint(low, high)):
            e[rng.randrange(ring.nvars)] += 1
        out = out + ring.monomial(e, rng.randint(-3, 3))
    return out


def random_group_element(ring, m, n, rng, mild=False):
    """Permutation times unipotent, and a linear map plus a quadratic term.

    ``mild`` keeps the unipotent entries constant and the automorphism linear,
    which keeps images of degenerate inputs cheap to analyze.
    """

    def unit_matrix(k):
        perm = list(range(k))
        rng.shuffle(perm)
        P = PolyMatrix(ring, [[1 if perm[i] == j else 0 for j in range(k)] for i in range(k)])

        def above(i, j):
            if j <= i:
                return ring.zero
            return ring(rng.randint(-2, 2)) if mild else random_poly(ring, rng, 0, 2, 2)

        U = [[ring.one if i == j else above(i, j) for j in range(k)] for i in range(k)]
        return P @ PolyMatrix(ring, U)

    s = ring.nvars
    while True:
        lin = [[rng.randint(-2, 2) for _ in range(s)] for _ in range(s)]
        try:
            images = [
                sum((ring.gens()[j].scale(lin[i][j]) for j in range(s)), ring.zero)
                + (ring.zero if mild else random_poly(ring, rng, 2, 2, 1))
                for i in range(s)
            ]
            phi = Automorphism(images)
            break
        except ValueError:
            continue
    return GroupElement(unit_matrix(m), unit_matrix(n), phi)


def random_primary_ideal(ring, rng, p=0):
    """An m-primary ideal: pure powers plus random extra generators and tails."""
    s = ring.nvars
    gens = []
    for i in range(s):
        e = [0] * s
        e[i] = rng.randint(1, 4)
        terms = {tuple(e): 1}
        for _ in range(rng.randint(0, 3)):
            t = tuple(rng.randint(0, 3) for _ in range(s))
            if sum(t) > sum(e):
                terms[t] = rng.randint(-3, 3)
        gens.append(Polynomial(ring, terms))
    for _ in range(rng.randint(0, 2)):
        terms = {tuple(rng.randint(0, 3) for _ in range(s)): rng.randint(-3, 3) for _ in range(3)}
        terms = {e: c for e, c in terms.items() if sum(e) > 0}
        gens.append(Polynomial(ring, terms))
    return Ideal(ring, gens)
