"""Seeded randomized harnesses: generic columns and perturbations, one-parameter
family scans and specialization of parametric matrices.

Every report is a plain dict in the same schema family as the determinacy
reports and records the seed it was produced with.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .determinacy import _num, expected_height, extended_codim, singular_ideal, tjurina
from .field import CoefficientField
from .linalg import det
from .localbasis import UnitIdeal, krull_dim_and_height
from .matrixops import PolyMatrix, fitting_ideal
from .polyring import INF, Polynomial, PolyRing

EXHAUSTIVE_LIMIT = 2 ** 16
SAMPLING_BUDGET = 2000
DEFAULT_SAMPLES = 20


class NoValidScheme(RuntimeError):
    pass


class InfiniteReference(ValueError):
    pass


class InconsistentSpecialization(ValueError):
    pass


def default_ring(field: CoefficientField, s: int) -> PolyRing:
    names = ("x", "y", "z", "w")[:s] if s <= 4 else tuple(f"x{i}" for i in range(1, s + 1))
    return PolyRing(field, names)


# ---------------------------------------------------------------------------
# generic columns


@dataclass(frozen=True)
class CoefficientScheme:
    """An m x s coefficient grid with no vanishing maximal minor, and an exponent N."""

    field: CoefficientField
    coefficients: Tuple[Tuple[int, ...], ...]
    N: int

    def __post_init__(self):
        p = self.field.characteristic
        if p and self.N % p == 0:
            raise ValueError(f"characteristic {p} divides N = {self.N}")
        if not _all_maximal_minors_nonzero(self.coefficients, self.field):
            raise ValueError("some maximal minor of the coefficient grid vanishes")

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.coefficients), len(self.coefficients[0])

    def column(self, ring: PolyRing) -> PolyMatrix:
        """The column with entries sum_j c_ij x_j^N."""
        xs = ring.gens()
        entries = []
        for row in self.coefficients:
            f = ring.zero
            for c, x in zip(row, xs):
                if c:
                    f = f + (x ** self.N).scale(c)
            entries.append(f)
        return PolyMatrix.column(ring, entries)


def _all_maximal_minors_nonzero(grid, field: CoefficientField) -> bool:
    m, s = len(grid), len(grid[0])
    if m > s:
        return False
    for cols in combinations(range(s), m):
        if det([[row[j] for j in cols] for row in grid], field) == 0:
            return False
    return True


@dataclass(frozen=True)
class GenericColumn:
    scheme: CoefficientScheme
    matrix: PolyMatrix
    seed: int
    attempts: int


def generic_column(
    m: int,
    s: int,
    N: int,
    field: CoefficientField,
    seed: int = 0,
    ring: Optional[PolyRing] = None,
    budget: int = SAMPLING_BUDGET,
) -> GenericColumn:
    """Column [f_1 .. f_m] with f_i = sum_j c_ij x_j^N and no vanishing maximal minor of c.

    Over Q the grid is Vandermonde with nodes 1..m (totally positive, so every
    maximal minor is positive). Over F_p all grids are enumerated in a seeded
    order when there are at most 2^16 of them, otherwise grids are sampled.
    """
    if not 1 <= m <= s:
        raise ValueError(f"need 1 <= m <= s, got m={m}, s={s}")
    if N < 2:
        raise ValueError("N must be at least 2")
    p = field.characteristic
    if p and N % p == 0:
        raise ValueError(f"characteristic {p} divides N = {N}")
    ring = ring or default_ring(field, s)
    if ring.nvars != s or ring.field != field:
        raise ValueError("ring does not match s and the field")

    if not field.is_finite:
        grid = tuple(tuple(lam ** j for j in range(s)) for lam in range(1, m + 1))
        scheme = CoefficientScheme(field, grid, N)
        return GenericColumn(scheme, scheme.column(ring), seed, 1)

    rng = random.Random(seed)
    cells = m * s
    if p ** cells <= EXHAUSTIVE_LIMIT:
        order = list(range(p ** cells))
        rng.shuffle(order)
        candidates = (_grid_from_index(idx, p, m, s) for idx in order)
    else:
        candidates = (
            tuple(tuple(rng.randrange(p) for _ in range(s)) for _ in range(m)) for _ in range(budget)
        )
    attempts = 0
    for grid in candidates:
        attempts += 1
        if _all_maximal_minors_nonzero(grid, field):
            scheme = CoefficientScheme(field, grid, N)
            return GenericColumn(scheme, scheme.column(ring), seed, attempts)
    raise NoValidScheme(
        f"no {m}x{s} grid over {field} without a vanishing maximal minor ({attempts} grids tried)"
    )


def _grid_from_index(idx: int, p: int, m: int, s: int):
    digits = []
    for _ in range(m * s):
        idx, r = divmod(idx, p)
        digits.append(r)
    return tuple(tuple(digits[i * s:(i + 1) * s]) for i in range(m))


# ---------------------------------------------------------------------------
# generic perturbations


def _random_coefficient(field: CoefficientField, rng: random.Random, box: int) -> int:
    if field.is_finite:
        return rng.randrange(field.characteristic)
    return rng.randint(-box, box)


def generic_perturbation(A: PolyMatrix, N: int, seed: int = 0, box: int = 10 ** 4) -> PolyMatrix:
    """A + B with b_ij = sum_k a_ijk x_k^N for random a_ijk.

    Over Q the a_ijk are integers in [-box, box]; over F_p they are uniform.
    Maximal heights of the Fitting ideals hold only off a proper closed set.
    """
    if not A.in_maximal_ideal():
        raise ValueError("matrix entries must lie in the maximal ideal")
    if N < 1:
        raise ValueError("N must be positive")
    ring = A.ring
    rng = random.Random(seed)
    powers = [x ** N for x in ring.gens()]
    rows = []
    for row in A.entries:
        out = []
        for a in row:
            b = ring.zero
            for xp in powers:
                c = _random_coefficient(ring.field, rng, box)
                if c:
                    b = b + xp.scale(c)
            out.append(a + b)
        rows.append(out)
    return PolyMatrix(ring, rows)


def fitting_heights(A: PolyMatrix) -> List[Tuple[int, int, int]]:
    """(t, height of I_t(A), min(s, (m-t+1)(n-t+1))) for t = 1..min(m, n)."""
    m, n = A.shape
    s = A.ring.nvars
    out = []
    for t in range(1, min(m, n) + 1):
        expected = expected_height(m, n, s, t)
        _, h = krull_dim_and_height(fitting_ideal(A, t), height_cap=expected)
        out.append((t, h, expected))
    return out


def parametric_perturbation(A: PolyMatrix, N: int, prefix: str = "a") -> Tuple[PolyMatrix, Tuple[str, ...]]:
    """A + sum_k a_ijk x_k^N with the a_ijk as parameter variables placed first."""
    ring = A.ring
    m, n = A.shape
    s = ring.nvars
    params = tuple(f"{prefix}{i}{j}{k}" for i in range(1, m + 1) for j in range(1, n + 1) for k in range(1, s + 1))
    clash = set(params) & set(ring.names)
    if clash:
        raise ValueError(f"parameter names clash with variables: {sorted(clash)}")
    big = PolyRing(ring.field, params + ring.names)
    lift = [big.var(name) for name in ring.names]
    rows = []
    idx = 0
    for i in range(m):
        row = []
        for j in range(n):
            entry = _lift(A[i, j], big, len(params))
            for k in range(s):
                entry = entry + big.var(params[idx]) * lift[k] ** N
                idx += 1
            row.append(entry)
        rows.append(row)
    return PolyMatrix(big, rows), params


def _lift(f: Polynomial, big: PolyRing, offset: int) -> Polynomial:
    return Polynomial(big, {(0,) * offset + e: c for e, c in f.terms.items()})


# ---------------------------------------------------------------------------
# one-parameter families


ANALYSES = ("singular-ideal", "de", "tau")


@dataclass(frozen=True)
class FamilySpec:
    """The linear family base + t * direction, scanned at ``sample_points``."""

    base: PolyMatrix
    direction: PolyMatrix
    sample_points: Tuple = ()
    reference_point: object = 0

    def __post_init__(self):
        if self.base.shape != self.direction.shape:
            raise ValueError(f"shapes differ: {self.base.shape} vs {self.direction.shape}")
        if self.base.ring != self.direction.ring:
            raise ValueError("base and direction live in different rings")
        field = self.base.ring.field
        pts = tuple(field.convert(p) for p in self.sample_points)
        ref = field.convert(self.reference_point)
        if len(set(pts)) != len(pts):
            raise ValueError("sample points must be pairwise distinct")
        if ref in pts:
            raise ValueError("sample points must differ from the reference point")
        object.__setattr__(self, "sample_points", pts)
        object.__setattr__(self, "reference_point", ref)

    def fiber(self, t0) -> PolyMatrix:
        return self.base + self.direction.scale(t0)


def default_sample_points(field: CoefficientField, reference=0, count: int = DEFAULT_SAMPLES, seed: int = 0):
    """First ``count`` positive integers over Q; distinct seeded draws over F_p."""
    ref = field.convert(reference)
    if not field.is_finite:
        pts = []
        k = 1
        while len(pts) < count:
            if field.convert(k) != ref:
                pts.append(k)
            k += 1
        return tuple(pts)
    pool = [a for a in range(field.characteristic) if a != ref]
    rng = random.Random(seed)
    return tuple(rng.sample(pool, min(count, len(pool))))


def analysis_value(A: PolyMatrix, analysis: str):
    if analysis == "singular-ideal":
        return singular_ideal(A).k_dim()
    if analysis == "de":
        return extended_codim(A)
    if analysis == "tau":
        try:
            return tjurina(A.entry_ideal())
        except UnitIdeal:
            return 0
    raise ValueError(f"unknown analysis {analysis!r} (choose from {', '.join(ANALYSES)})")


def family_scan(spec: FamilySpec, analysis: str = "singular-ideal", seed: int = 0) -> dict:
    """Evaluate the analysis at t = t0 for each sample and compare with the reference fiber.

    Semicontinuity predicts d(t0) <= d(reference) near the reference point;
    violations are reported, never raised.
    """
    if analysis not in ANALYSES:
        raise ValueError(f"unknown analysis {analysis!r} (choose from {', '.join(ANALYSES)})")
    field = spec.base.ring.field
    points = spec.sample_points or default_sample_points(field, spec.reference_point, seed=seed)
    ref_value = analysis_value(spec.fiber(spec.reference_point), analysis)
    if ref_value == INF:
        raise InfiniteReference(f"the {analysis} value of the reference fiber is infinite")
    samples = []
    for t0 in points:
        value = analysis_value(spec.fiber(t0), analysis)
        samples.append({"point": _point(t0), "value": _num(value), "pass": value <= ref_value})
    violations = [s["point"] for s in samples if not s["pass"]]
    return {
        "schema": 1,
        "kind": "family-scan",
        "field": str(field),
        "analysis": analysis,
        "base": str(spec.base),
        "direction": str(spec.direction),
        "seed": seed,
        "reference": {"point": _point(spec.reference_point), "value": _num(ref_value)},
        "samples": samples,
        "violations": violations,
        "semicontinuous": not violations,
    }


def _point(v):
    if isinstance(v, Fraction):
        return str(v)
    return v


# ---------------------------------------------------------------------------
# specialization of parametric matrices


def specialization_check(
    M: PolyMatrix,
    params: Sequence[str],
    t: int,
    samples: Optional[Sequence[Sequence]] = None,
    seed: int = 0,
    count: int = DEFAULT_SAMPLES,
    box: int = 100,
) -> dict:
    """Height of I_t(M_a) at parameter values a; the maximum is the empirical generic height.

    ``params`` name the parameter block, which must be the leading variables of
    the ring. Samples default to ``count`` seeded random tuples.
    """
    ring = M.ring
    r = len(params)
    if tuple(ring.names[:r]) != tuple(params):
        raise ValueError("parameters must be the leading variables of the ring")
    if r == ring.nvars:
        raise ValueError("no variables left after removing the parameters")
    m, n = M.shape
    if not 1 <= t <= min(m, n):
        raise ValueError(f"minor size {t} out of range for a {m}x{n} matrix")
    field = ring.field
    target = PolyRing(field, ring.names[r:])
    if samples is None:
        rng = random.Random(seed)
        samples = [tuple(_random_coefficient(field, rng, box) for _ in range(r)) for _ in range(count)]
    rows = []
    for a in samples:
        if len(a) != r:
            raise ValueError(f"sample {a} has {len(a)} values for {r} parameters")
        assignment = dict(enumerate(a))
        Ma = PolyMatrix(target, [[f.specialize(assignment, target) for f in row] for row in M.entries])
        try:
            _, h = krull_dim_and_height(fitting_ideal(Ma, t), height_cap=(m - t + 1) * (n - t + 1))
        except UnitIdeal:
            h = None
        rows.append((tuple(_point(field.convert(v)) for v in a), h))

    proper = [h for _, h in rows if h is not None]
    units = len(rows) - len(proper)
    need = math.ceil(2 * len(rows) / 3)
    if proper and units >= need:
        raise InconsistentSpecialization(
            f"{units} of {len(rows)} specializations give the unit ideal but {len(proper)} give a proper ideal"
        )
    generic = max(proper) if proper else None
    agree = sum(1 for _, h in rows if h == generic)
    return {
        "schema": 1,
        "kind": "specialization",
        "field": str(field),
        "matrix": str(M),
        "parameters": list(params),
        "t": t,
        "seed": seed,
        "expected": expected_height(m, n, target.nvars, t),
        "generic_height": generic,
        "samples": [
            {"point": list(a), "value": "unit" if h is None else h, "pass": h == generic} for a, h in rows
        ],
        "non_generic": [list(a) for a, h in rows if h != generic],
        "consistent": agree >= need,
    }
