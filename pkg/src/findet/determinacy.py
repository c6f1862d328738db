"""Determinacy invariants and classifiers for ideals, power series and matrices.

Verdicts carry a criterion tag naming the statement that produced them:

``colength-bound``
    dim R/I = 0; bound 2k - ord + 2 with k minimal such that m^(k+2) lies in m*I.
``tjurina-bound`` / ``codimension-bound``
    Tjurina number (resp. extended codimension d_e of a column) finite;
    bound 2*tau - ord + 2 (resp. 2*d_e - ord + 2).
``singular-ideal-bound``
    m <= s and I + I_m(Jac) contains m^k; bound 2*k*m - ord + 2.
``milnor-bound``
    Milnor number finite; right bound 2*mu - ord + 2.
``tangent-image-bound``
    general matrices: m^(k+2) M lies in m * (tangent image); bound 2k - ord + 2.
``*-infinite`` / ``fitting-height``
    the corresponding necessary condition fails.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .localbasis import (
    Ideal,
    Submodule,
    UnitIdeal,
    krull_dim_and_height,
    m_power_exponent,
    m_primary_exponent,
    minimal_generators,
)
from .matrixops import PolyMatrix, fitting_ideal, jacobian, tangent_image
from .polyring import INF, Polynomial, PolyRing

FINITE = "FinitelyDetermined"
NOT_FINITE = "NotFinitelyDetermined"
UNDECIDED = "NotDeterminedByThisTool"

CAVEAT_FINITE_FIELD = "K finite: necessity direction unproved"
CAVEAT_FITTING_FINITE_FIELD = "K finite: maximal height of I_t for t > 1 is only proved necessary over infinite fields"
CAVEAT_POWER_SERIES = "inputs are polynomials standing for power series (finitely determined series are equivalent to their jets)"


class PreconditionError(ValueError):
    pass


def _num(v):
    """JSON form of a natural-or-infinity."""
    if v is None:
        return None
    if v == INF:
        return "infinity"
    return int(v)


@dataclass(frozen=True)
class Verdict:
    status: str
    bound: Optional[int] = None
    theorem: Optional[str] = None

    def __post_init__(self):
        if self.status == FINITE and (self.bound is None or self.theorem is None):
            raise ValueError("a finite-determinacy verdict needs a bound and a criterion")

    def to_dict(self) -> dict:
        return {"status": self.status, "bound": self.bound, "theorem": self.theorem}

    def __str__(self) -> str:
        if self.status == FINITE:
            return f"{self.status} (bound {self.bound}, {self.theorem})"
        return f"{self.status} ({self.theorem})" if self.theorem else self.status


@dataclass(frozen=True)
class FittingCheck:
    t: int
    height: int
    expected: int

    @property
    def passed(self) -> bool:
        return self.height == self.expected

    def to_dict(self) -> dict:
        return {"t": self.t, "height": self.height, "expected": self.expected, "pass": self.passed}


@dataclass(frozen=True)
class DeterminacyReport:
    input: str
    relation: str
    field: str
    ord: object
    verdict: Verdict
    tau: object = None
    mu: object = None
    d_e: object = None
    mng: Optional[int] = None
    dim: Optional[int] = None
    icis: Optional[bool] = None
    fitting: Tuple[FittingCheck, ...] = ()
    bounds: Tuple[Tuple[str, int], ...] = ()
    caveats: Tuple[str, ...] = ()

    def __post_init__(self):
        if (
            self.verdict.status == NOT_FINITE
            and self.field != "Q"
            and (self.mng or 0) > 1
            and CAVEAT_FINITE_FIELD not in self.caveats
            and self.relation == "contact"
        ):
            object.__setattr__(self, "caveats", self.caveats + (CAVEAT_FINITE_FIELD,))

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "input": self.input,
            "relation": self.relation,
            "field": self.field,
            "ord": _num(self.ord),
            "tau": _num(self.tau),
            "mu": _num(self.mu),
            "d_e": _num(self.d_e),
            "mng": self.mng,
            "dim": self.dim,
            "icis": self.icis,
            "fitting": [f.to_dict() for f in self.fitting],
            "verdict": self.verdict.to_dict(),
            "bounds": [{"theorem": tag, "bound": b} for tag, b in self.bounds],
            "caveats": list(self.caveats),
        }

    def to_text(self) -> str:
        lines = [f"input:    {self.input}", f"field:    {self.field}", f"relation: {self.relation}"]
        for key in ("ord", "tau", "mu", "d_e", "mng", "dim", "icis"):
            value = getattr(self, key)
            if value is not None:
                lines.append(f"{key + ':':<9} {_num(value) if key not in ('icis',) else value}")
        for f in self.fitting:
            mark = "pass" if f.passed else "FAIL"
            lines.append(f"fitting:  t={f.t} height={f.height} expected={f.expected} {mark}")
        for tag, b in self.bounds:
            lines.append(f"bound:    {b} ({tag})")
        lines.append(f"verdict:  {self.verdict}")
        for c in self.caveats:
            lines.append(f"caveat:   {c}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# invariants


def _check_column(A: PolyMatrix):
    if A.ncols != 1:
        raise PreconditionError(f"expected a column matrix, got shape {A.shape}")
    if not A.in_maximal_ideal():
        raise PreconditionError("column entries must lie in the maximal ideal")


def _proper_generators(I: Ideal) -> Tuple[Polynomial, ...]:
    for g in I.generators:
        if g.is_unit():
            raise UnitIdeal(f"generator {g} is a unit")
    return minimal_generators(I)


def tjurina_module(gens: Sequence[Polynomial], ring: PolyRing) -> Submodule:
    """I*R^m + column span of Jac for the column of ``gens``."""
    A = PolyMatrix.column(ring, gens)
    return tangent_image(A, extended=True)


def tjurina(I: Ideal):
    """Tjurina number: dim_K R^m / (I R^m + Jac columns) over minimal generators."""
    gens = _proper_generators(I)
    if not gens:
        return 0
    return tjurina_module(gens, I.ring).k_dim()


def jacobian_ideal(f: Polynomial) -> Ideal:
    return Ideal(f.ring, [f.partial(i) for i in range(f.ring.nvars)])


def milnor(f: Polynomial):
    if f.is_unit():
        raise PreconditionError(f"{f} is a unit")
    return jacobian_ideal(f).k_dim()


def extended_codim(A: PolyMatrix):
    """d_e = dim_K M_{m,1} / extended tangent image."""
    _check_column(A)
    return tangent_image(A, extended=True).k_dim()


def singular_ideal(A: PolyMatrix) -> Ideal:
    """I_1(A) + I_m(Jac A) for a column A with m entries (no minors when m > s)."""
    m = A.nrows
    gens = list(A.flat())
    if m <= A.ring.nvars:
        gens += fitting_ideal(jacobian(A), m).generators
    return Ideal(A.ring, gens)


def expected_height(m: int, n: int, s: int, t: int) -> int:
    return min(s, (m - t + 1) * (n - t + 1))


def fitting_height_check(A: PolyMatrix) -> List[FittingCheck]:
    """Heights of I_t(A) against min(s, (m-t+1)(n-t+1)) for t = 1..n (n <= m)."""
    if not A.in_maximal_ideal():
        raise PreconditionError("matrix entries must lie in the maximal ideal")
    if A.ncols > A.nrows:
        A = A.transpose()
    m, n = A.shape
    s = A.ring.nvars
    out = []
    for t in range(1, n + 1):
        expected = expected_height(m, n, s, t)
        _, height = krull_dim_and_height(fitting_ideal(A, t), height_cap=expected)
        out.append(FittingCheck(t, height, expected))
    return out


def icis_check(I: Ideal) -> bool:
    gens = _proper_generators(I)
    s = I.ring.nvars
    m = len(gens)
    dim, _ = krull_dim_and_height(Ideal(I.ring, gens))
    if dim != s - m:
        return False
    return m_primary_exponent(singular_ideal(PolyMatrix.column(I.ring, gens))) is not None


def tangent_condition_exponent(A: PolyMatrix) -> Optional[int]:
    """Smallest k >= 0 with m^(k+2) M_{m,n} inside m * (tangent image), or None."""
    if not A.in_maximal_ideal():
        raise PreconditionError("matrix entries must lie in the maximal ideal")
    N = tangent_image(A, extended=False).times_maximal()
    e = m_power_exponent(N)
    if e is None:
        return None
    return max(e - 2, 0)


# ---------------------------------------------------------------------------
# classifiers


def _bound(invariant: int, order, factor: int = 2) -> int:
    return int(factor * invariant - order + 2)


def _column_bounds(A: PolyMatrix, d_e, field_infinite: bool) -> List[Tuple[str, int]]:
    """All applicable determinacy bounds for a column in m*M_{m,1}."""
    m = A.nrows
    s = A.ring.nvars
    order = A.ord()
    bounds = []
    if d_e != INF:
        bounds.append(("codimension-bound", _bound(d_e, order)))
    I = A.entry_ideal()
    if m >= s:
        e = m_primary_exponent(I.times_maximal())
        if e is not None:
            bounds.append(("colength-bound", _bound(max(e - 2, 0), order)))
    if m <= s and (m == 1 or field_infinite):
        k = m_primary_exponent(singular_ideal(A))
        if k is not None:
            bounds.append(("singular-ideal-bound", int(2 * k * m - order + 2)))
    return bounds


def _best(bounds: Sequence[Tuple[str, int]]) -> Verdict:
    tag, b = min(bounds, key=lambda tb: tb[1])
    return Verdict(FINITE, b, tag)


def classify_contact(I: Ideal) -> DeterminacyReport:
    """Finite contact determinacy of a proper ideal with explicit bounds."""
    gens = _proper_generators(I)
    if not gens:
        raise PreconditionError("the zero ideal has no minimal generators")
    ring = I.ring
    field = ring.field
    A = PolyMatrix.column(ring, gens)
    m = len(gens)
    order = A.ord()
    dim, _ = krull_dim_and_height(Ideal(ring, gens))
    tau = tjurina_module(gens, ring).k_dim()
    fitting = tuple(fitting_height_check(A))
    caveats = [CAVEAT_POWER_SERIES]
    bounds = []
    if dim == 0:
        e = m_primary_exponent(Ideal(ring, gens).times_maximal())
        bounds.append(("colength-bound", _bound(e - 2, order)))
    if tau != INF:
        bounds.append(("tjurina-bound", _bound(tau, order)))
        if m <= ring.nvars and (m == 1 or not field.is_finite):
            k = m_primary_exponent(singular_ideal(A))
            if k is not None:
                bounds.append(("singular-ideal-bound", int(2 * k * m - order + 2)))
    if bounds:
        verdict = _best(bounds)
        icis = icis_check(Ideal(ring, gens)) if dim > 0 else (m == ring.nvars)
    else:
        verdict = Verdict(NOT_FINITE, None, "tjurina-infinite")
        icis = False
        if field.is_finite and m > 1:
            caveats.append(CAVEAT_FINITE_FIELD)
    return DeterminacyReport(
        input=str(Ideal(ring, I.generators)),
        relation="contact",
        field=str(field),
        ord=order,
        verdict=verdict,
        tau=tau,
        mng=m,
        dim=dim,
        icis=icis,
        fitting=fitting,
        bounds=tuple(bounds),
        caveats=tuple(caveats),
    )


def classify_right(f: Polynomial) -> DeterminacyReport:
    """Finite right determinacy of a single power series (any field)."""
    if f.is_unit():
        raise PreconditionError(f"{f} is a unit")
    mu = jacobian_ideal(f).k_dim()
    order = f.ord()
    bounds = []
    if mu != INF:
        bounds.append(("milnor-bound", _bound(mu, order)))
        verdict = _best(bounds)
    else:
        verdict = Verdict(NOT_FINITE, None, "milnor-infinite")
    fitting = tuple(fitting_height_check(PolyMatrix.column(f.ring, [f]))) if f else ()
    return DeterminacyReport(
        input=str(f),
        relation="right",
        field=str(f.ring.field),
        ord=order,
        verdict=verdict,
        mu=mu,
        mng=1 if f else 0,
        fitting=fitting,
        bounds=tuple(bounds),
        caveats=(CAVEAT_POWER_SERIES,),
    )


def classify_column_g(A: PolyMatrix) -> DeterminacyReport:
    """Finite left-right determinacy of a column matrix."""
    _check_column(A)
    field = A.ring.field
    m, s = A.nrows, A.ring.nvars
    d_e = extended_codim(A)
    fitting = tuple(fitting_height_check(A))
    caveats = [CAVEAT_POWER_SERIES]
    bounds = _column_bounds(A, d_e, not field.is_finite) if d_e != INF else []
    if bounds:
        verdict = _best(bounds)
    else:
        verdict = Verdict(NOT_FINITE, None, "codimension-infinite")
        if field.is_finite and 1 < m < s:
            caveats.append(CAVEAT_FINITE_FIELD)
    return DeterminacyReport(
        input=str(A),
        relation="leftright",
        field=str(field),
        ord=A.ord(),
        verdict=verdict,
        d_e=d_e,
        fitting=fitting,
        bounds=tuple(bounds),
        caveats=tuple(caveats),
    )


def classify_matrix(A: PolyMatrix) -> DeterminacyReport:
    """Left-right determinacy of a general m x n matrix.

    Columns go to :func:`classify_column_g`. Otherwise the Fitting heights give
    the necessary condition and the tangent-image condition the sufficient one;
    when both are silent in positive characteristic no verdict is issued.
    """
    if A.ncols == 1:
        return classify_column_g(A)
    if A.nrows == 1:
        report = classify_column_g(A.transpose())
        return DeterminacyReport(**{**report.__dict__, "input": str(A)})
    if not A.in_maximal_ideal():
        raise PreconditionError("matrix entries must lie in the maximal ideal")
    field = A.ring.field
    fitting = tuple(fitting_height_check(A))
    caveats = [CAVEAT_POWER_SERIES]
    bounds = []
    failed = [f for f in fitting if not f.passed]
    k = tangent_condition_exponent(A)
    if k is not None:
        bounds.append(("tangent-image-bound", _bound(k, A.ord())))
    if bounds:
        verdict = _best(bounds)
    elif failed:
        verdict = Verdict(NOT_FINITE, None, "fitting-height")
        if field.is_finite and all(f.t > 1 for f in failed):
            caveats.append(CAVEAT_FITTING_FINITE_FIELD)
    elif not field.is_finite and field.characteristic == 0:
        verdict = Verdict(NOT_FINITE, None, "tangent-image-infinite")
    else:
        verdict = Verdict(UNDECIDED, None, "tangent-image-infinite")
        caveats.append("tangent image of infinite codimension; necessity is open in positive characteristic")
    return DeterminacyReport(
        input=str(A),
        relation="leftright",
        field=str(field),
        ord=A.ord(),
        verdict=verdict,
        fitting=fitting,
        bounds=tuple(bounds),
        caveats=tuple(caveats),
    )


# ---------------------------------------------------------------------------
# perturbation probe


def random_element_of_power(ring: PolyRing, low: int, high: int, rng: random.Random, coeff_range: int = 3) -> Polynomial:
    """Random polynomial with all terms of degree in [low, high]."""
    from .localbasis import _monomials_of_degree

    field = ring.field
    terms = {}
    for d in range(low, high + 1):
        for e in _monomials_of_degree(ring.nvars, d):
            if field.is_finite:
                terms[e] = rng.randrange(field.characteristic)
            else:
                terms[e] = rng.randint(-coeff_range, coeff_range)
    return Polynomial(ring, terms)


def _probe_invariants(gens: Sequence[Polynomial], ring: PolyRing, relation: str) -> dict:
    if relation == "right":
        f = gens[0]
        value = jacobian_ideal(f).k_dim()
    else:
        value = tjurina(Ideal(ring, gens))
    heights = [c.height for c in fitting_height_check(PolyMatrix.column(ring, gens))]
    order = min(g.ord() for g in gens)
    return {"invariant": value, "ord": order, "heights": heights}


def perturbation_probe(
    target: Union[Ideal, Polynomial],
    k: int,
    trials: int,
    seed: int = 0,
    coeff_range: int = 3,
) -> dict:
    """Add random elements of m^(k+1) (degree <= k+3) to the generators and compare invariants.

    A mismatch shows the input is not k-determined; agreement is only evidence.
    """
    if isinstance(target, Polynomial):
        relation, inv_name = "right", "mu"
        baseline = classify_right(target)
        gens = (target,)
        ring = target.ring
    else:
        relation, inv_name = "contact", "tau"
        baseline = classify_contact(target)
        gens = minimal_generators(target)
        ring = target.ring
    if baseline.verdict.status != FINITE:
        raise PreconditionError(f"input is not finitely determined ({baseline.verdict})")
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    rng = random.Random(seed)
    base = _probe_invariants(gens, ring, relation)
    samples = []
    first = None
    for trial in range(trials):
        perturbed = [g + random_element_of_power(ring, k + 1, k + 3, rng, coeff_range) for g in gens]
        got = _probe_invariants(perturbed, ring, relation)
        mismatch = got != base
        samples.append(
            {
                "trial": trial,
                "generators": [str(g) for g in perturbed],
                inv_name: _num(got["invariant"]),
                "ord": _num(got["ord"]),
                "heights": got["heights"],
                "pass": not mismatch,
            }
        )
        if mismatch and first is None:
            first = trial
    return {
        "schema": 1,
        "kind": "perturbation-probe",
        "input": baseline.input,
        "relation": relation,
        "field": baseline.field,
        "k": k,
        "seed": seed,
        "bound": baseline.verdict.bound,
        "below_bound": k < baseline.verdict.bound,
        "baseline": {inv_name: _num(base["invariant"]), "ord": _num(base["ord"]), "heights": base["heights"]},
        "samples": samples,
        "falsified": first is not None,
        "first_mismatch": first,
    }
