"""Local standard bases (Mora's tangent cone algorithm) for ideals and submodules.

Everything happens in the localization of K[x] at the origin, which has the
same quotients of finite colength as K[[x]]. Module elements are handled by
one engine: a vector is a dict keyed by ``(position, e_1, ..., e_s)`` and
ideals are rank-one modules. Modules use position-over-term with position 0
largest.

Over Q the engine keeps vectors fraction free (primitive integer vectors);
over F_p it keeps monic vectors with entries in ``[0, p)``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from itertools import combinations, combinations_with_replacement, product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .field import CoefficientField
from .polyring import DEFAULT_ORDERING, INF, LocalOrdering, Polynomial, PolyRing

Term = Tuple[int, ...]  # (position, e_1, ..., e_s)
Vec = Dict[Term, int]


class UnitIdeal(ArithmeticError):
    """The ideal is the whole local ring."""


class GeneratorIsUnit(ValueError):
    def __init__(self, generator):
        self.generator = generator
        super().__init__(f"generator {generator} is a unit (not in the maximal ideal)")


# ---------------------------------------------------------------------------
# engine


class _Elt:
    __slots__ = ("vec", "lt", "ecart")

    def __init__(self, vec: Vec, lt: Term, ecart: int):
        self.vec = vec
        self.lt = lt
        self.ecart = ecart


class _Engine:
    def __init__(self, field: CoefficientField, ordering: LocalOrdering):
        self.p = field.characteristic
        base_key = ordering.key

        @lru_cache(maxsize=None)
        def tkey(t: Term):
            return (-t[0],) + base_key(t[1:])

        self.tkey = tkey
        # position -> D with m^D * e_pos known to lie in the module (highest corner)
        self.caps: Dict[int, int] = {}
        self.rank: Optional[int] = None

    # -- conversion --

    def from_polys(self, entries: Sequence[Polynomial]) -> Vec:
        vec = {}
        for pos, f in enumerate(entries):
            for e, c in f.terms.items():
                vec[(pos,) + e] = c
        return self.normalize(vec)

    def normalize(self, vec: Vec) -> Vec:
        if not vec:
            return vec
        p = self.p
        if p:
            lc = vec[self.lead(vec)]
            if lc != 1:
                inv = pow(lc, -1, p)
                vec = {t: c * inv % p for t, c in vec.items()}
            return vec
        if any(isinstance(c, Fraction) for c in vec.values()):
            den = reduce(_lcm, (Fraction(c).denominator for c in vec.values()), 1)
            vec = {t: int(c * den) for t, c in vec.items()}
        return self._primitive(vec)

    def _primitive(self, vec: Vec) -> Vec:
        g = reduce(math.gcd, vec.values(), 0)
        if vec[self.lead(vec)] < 0:
            g = -g
        if g != 1:
            vec = {t: c // g for t, c in vec.items()}
        return vec

    # -- term data --

    def lead(self, vec: Vec) -> Term:
        return max(vec, key=self.tkey)

    @staticmethod
    def ecart(vec: Vec, lt: Term) -> int:
        return max(sum(t) - t[0] for t in vec) - (sum(lt) - lt[0])

    def elt(self, vec: Vec) -> _Elt:
        lt = self.lead(vec)
        return _Elt(vec, lt, self.ecart(vec, lt))

    @staticmethod
    def divides(a: Term, b: Term) -> bool:
        if a[0] != b[0]:
            return False
        for x, y in zip(a, b):
            if x > y:
                return False
        return True

    # -- arithmetic --

    def cancel(self, h: Vec, hlt: Term, g: _Elt) -> Vec:
        """Return a combination c*h - d*x^a*g whose coefficient at ``hlt`` vanishes."""
        shift = tuple(a - b for a, b in zip(hlt[1:], g.lt[1:]))
        glc = g.vec[g.lt]
        hlc = h[hlt]
        p = self.p
        if p:
            factor = hlc * pow(glc, -1, p) % p
            out = dict(h)
            for t, c in g.vec.items():
                k = (t[0],) + tuple(a + b for a, b in zip(t[1:], shift))
                v = (out.get(k, 0) - factor * c) % p
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
            return out
        d = math.gcd(glc, hlc)
        a, b = glc // d, hlc // d
        out = {t: a * c for t, c in h.items()} if a != 1 else dict(h)
        for t, c in g.vec.items():
            k = (t[0],) + tuple(x + y for x, y in zip(t[1:], shift))
            v = out.get(k, 0) - b * c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        if out:
            gg = reduce(math.gcd, out.values(), 0)
            if gg != 1:
                out = {t: c // gg for t, c in out.items()}
        return out

    def spoly(self, f: _Elt, g: _Elt) -> Vec:
        lcm = (f.lt[0],) + tuple(max(a, b) for a, b in zip(f.lt[1:], g.lt[1:]))
        shift = tuple(a - b for a, b in zip(lcm[1:], f.lt[1:]))
        h = {(t[0],) + tuple(a + b for a, b in zip(t[1:], shift)): c for t, c in f.vec.items()}
        return self.cancel(h, lcm, g)

    def truncate(self, vec: Vec, keep: Optional[Term] = None) -> Vec:
        """Drop terms lying in the known power m^D * e_pos (except ``keep``)."""
        caps = self.caps
        if not caps:
            return vec
        return {
            t: c for t, c in vec.items() if t == keep or t[0] not in caps or sum(t) - t[0] < caps[t[0]]
        }

    def _update_caps(self, basis: Sequence[_Elt], rank: int) -> bool:
        """Tighten the known powers m^D * e_pos contained in the span of ``basis``.

        Under position-over-term a remainder may move to a later position, so
        the staircase bound (top degree + 1) is only sound at the last
        position. Once every staircase is finite the quotient has length at
        most the total staircase size d, and m^d kills it.
        """
        s = len(basis[0].lt) - 1
        stairs = []
        for pos in range(rank):
            lms = [g.lt[1:] for g in basis if g.lt[0] == pos]
            stairs.append(_staircase(lms, s) if lms else None)
        proposals = {}
        last = stairs[-1]
        if last is not None:
            proposals[rank - 1] = max((sum(e) + 1 for e in last), default=0)
        if all(st is not None for st in stairs):
            total = sum(len(st) for st in stairs)
            for pos in range(rank):
                proposals[pos] = min(proposals.get(pos, total), total)
        changed = False
        for pos, cap in proposals.items():
            if cap < self.caps.get(pos, math.inf):
                self.caps[pos] = cap
                changed = True
        return changed

    def nf_mora(self, vec: Vec, basis: Sequence[_Elt]) -> Tuple[Vec, bool]:
        """Mora's weak normal form; returns (remainder, whether any step happened).

        The remainder r satisfies u*f - r in <basis> for a unit u, and its
        leading term is not divisible by any leading term of ``basis``.
        """
        h = self.truncate(vec)
        touched = len(h) != len(vec)
        if not h:
            return h, touched
        # With every position capped the leading term walks down a finite set
        # of monomials, so plain reduction terminates and the ecart rule (which
        # feeds large intermediate remainders back in) is not needed.
        bounded = self.rank is not None and len(self.caps) == self.rank
        todo = list(basis)
        while h:
            hlt = self.lead(h)
            best = None
            for g in todo:
                if self.divides(g.lt, hlt) and (best is None or g.ecart < best.ecart):
                    best = g
                    if g.ecart == 0:
                        break
            if best is None:
                break
            hecart = self.ecart(h, hlt)
            if not bounded and best.ecart > hecart:
                todo.append(_Elt(h, hlt, hecart))
            h = self.truncate(self.cancel(h, hlt, best))
            touched = True
        return h, touched

    def standard_basis(self, vecs: Sequence[Vec], rank: int = 1, preset_cap: Optional[int] = None) -> List[_Elt]:
        """Standard basis of the span of ``vecs``, or of span + m^preset_cap * R^rank."""
        self.rank = rank
        if preset_cap is not None:
            self.caps = {pos: preset_cap for pos in range(rank)}
        basis: List[_Elt] = []
        queue: list = []
        counter = 0
        single_position = all(t[0] == 0 for v in vecs for t in v)

        def add(vec: Vec):
            nonlocal counter
            new = self.elt(self.normalize(vec))
            j = len(basis)
            for i, old in enumerate(basis):
                if old.lt[0] != new.lt[0]:
                    continue
                if single_position and all(min(a, b) == 0 for a, b in zip(old.lt[1:], new.lt[1:])):
                    continue  # coprime leading monomials
                lcm = tuple(max(a, b) for a, b in zip(old.lt[1:], new.lt[1:]))
                heapq.heappush(queue, (sum(lcm) + max(old.ecart, new.ecart), sum(lcm), counter, i, j))
                counter += 1
            basis.append(new)
            if self._update_caps(basis, rank):
                for k, g in enumerate(basis):
                    short = self.truncate(g.vec, keep=g.lt)
                    if len(short) != len(g.vec):
                        basis[k] = _Elt(short, g.lt, self.ecart(short, g.lt))

        for v in vecs:
            if not v:
                continue
            r, _ = self.nf_mora(dict(v), basis)
            if r:
                add(r)
        while queue:
            _, _, _, i, j = heapq.heappop(queue)
            if self._chain_redundant(basis, i, j):
                continue
            h, _ = self.nf_mora(self.spoly(basis[i], basis[j]), basis)
            if h:
                add(h)
        return self._minimalize(basis)

    def _chain_redundant(self, basis, i, j) -> bool:
        # some third leading term divides lcm(i, j) and both of its pairs with i and j
        # have strictly smaller lcm
        fi, fj = basis[i].lt, basis[j].lt
        lcm = (fi[0],) + tuple(max(a, b) for a, b in zip(fi[1:], fj[1:]))
        for k, g in enumerate(basis):
            if k == i or k == j or not self.divides(g.lt, lcm):
                continue
            lik = (fi[0],) + tuple(max(a, b) for a, b in zip(fi[1:], g.lt[1:]))
            ljk = (fi[0],) + tuple(max(a, b) for a, b in zip(fj[1:], g.lt[1:]))
            if lik != lcm and ljk != lcm:
                return True
        return False

    def _minimalize(self, basis: List[_Elt]) -> List[_Elt]:
        keep = []
        for idx, g in enumerate(basis):
            redundant = False
            for jdx, other in enumerate(basis):
                if jdx == idx or not self.divides(other.lt, g.lt):
                    continue
                if other.lt != g.lt or jdx < idx:
                    redundant = True
                    break
            if not redundant:
                keep.append(g)
        keep.sort(key=lambda g: self.tkey(g.lt), reverse=True)
        return keep


def _staircase(lms: Sequence[Tuple[int, ...]], s: int) -> Optional[List[Tuple[int, ...]]]:
    """Monomials outside the monomial ideal generated by ``lms``; None if infinite."""
    if any(sum(e) == 0 for e in lms):
        return []
    bounds = []
    for i in range(s):
        pure = [e[i] for e in lms if e[i] > 0 and sum(e) == e[i]]
        if not pure:
            return None
        bounds.append(min(pure))
    return [e for e in product(*(range(b) for b in bounds)) if not any(all(a <= b for a, b in zip(lm, e)) for lm in lms)]


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# ---------------------------------------------------------------------------
# ideals and submodules


@dataclass(frozen=True)
class Ideal:
    ring: PolyRing
    generators: Tuple[Polynomial, ...]

    def __init__(self, ring: PolyRing, generators: Sequence[Union[Polynomial, str, int]] = ()):
        gens = tuple(ring(g) for g in generators)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", gens)

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.generators) + ">"

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise ValueError("ring mismatch")
        return Ideal(self.ring, self.generators + other.generators)

    def nonzero_generators(self) -> Tuple[Polynomial, ...]:
        return tuple(g for g in self.generators if g)

    def times_maximal(self) -> "Ideal":
        """The ideal m*I."""
        return Ideal(self.ring, [x * g for g in self.nonzero_generators() for x in self.ring.gens()])

    def as_submodule(self) -> "Submodule":
        return Submodule(self.ring, 1, [(g,) for g in self.generators])

    def ord(self):
        return min((g.ord() for g in self.generators), default=INF)

    @cached_property
    def std(self) -> "StandardBasis":
        return standard_basis(self)

    def contains(self, f) -> bool:
        return self.std.contains(self.ring(f))

    def k_dim(self):
        return k_dim(self)

    def dim_and_height(self) -> Tuple[int, int]:
        return krull_dim_and_height(self)

    def height(self) -> int:
        return krull_dim_and_height(self)[1]

    def m_primary_exponent(self) -> Optional[int]:
        return m_primary_exponent(self)

    def mingens(self) -> Tuple[Polynomial, ...]:
        return minimal_generators(self)

    def is_unit_ideal(self) -> bool:
        return self.std.contains(self.ring.one)


@dataclass(frozen=True)
class Submodule:
    ring: PolyRing
    rank: int
    generators: Tuple[Tuple[Polynomial, ...], ...]

    def __init__(self, ring: PolyRing, rank: int, generators: Sequence[Sequence] = ()):
        gens = []
        for v in generators:
            v = tuple(ring(c) for c in v)
            if len(v) != rank:
                raise ValueError(f"generator of length {len(v)} in a rank-{rank} module")
            gens.append(v)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "generators", tuple(gens))

    def __add__(self, other: "Submodule") -> "Submodule":
        if other.ring != self.ring or other.rank != self.rank:
            raise ValueError("ambient module mismatch")
        return Submodule(self.ring, self.rank, self.generators + other.generators)

    def times_maximal(self) -> "Submodule":
        return Submodule(
            self.ring, self.rank, [tuple(x * c for c in v) for v in self.generators for x in self.ring.gens()]
        )

    @cached_property
    def std(self) -> "StandardBasis":
        return standard_basis(self)

    def contains(self, vector) -> bool:
        return self.std.contains(tuple(self.ring(c) for c in vector))

    def k_dim(self):
        return k_dim(self)


def _unit_vector(ring: PolyRing, rank: int, pos: int, f: Polynomial):
    return tuple(f if i == pos else ring.zero for i in range(rank))


# ---------------------------------------------------------------------------
# standard bases


@dataclass(frozen=True)
class StandardBasis:
    source: Union[Ideal, Submodule]
    ordering: LocalOrdering
    _elts: Tuple[_Elt, ...] = dc_field(repr=False, compare=False)
    _engine: _Engine = dc_field(repr=False, compare=False)

    @property
    def ring(self) -> PolyRing:
        return self.source.ring

    @property
    def rank(self) -> int:
        return self.source.rank if isinstance(self.source, Submodule) else 1

    @cached_property
    def leading_terms(self) -> Tuple[Term, ...]:
        """Leading terms as ``(position, e_1, ..., e_s)``."""
        return tuple(g.lt for g in self._elts)

    @cached_property
    def leading_monomials(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(t[1:] for t in self.leading_terms)

    @cached_property
    def elements(self) -> tuple:
        """Basis elements with leading coefficient 1 (polynomials or vectors)."""
        out = []
        for g in self._elts:
            entries = self._to_entries(g.vec, g.vec[g.lt])
            out.append(entries[0] if isinstance(self.source, Ideal) else entries)
        return tuple(out)

    def _to_entries(self, vec: Vec, scale=1) -> Tuple[Polynomial, ...]:
        field = self.ring.field
        inv = field.inv(field.convert(scale))
        per_pos: List[dict] = [{} for _ in range(self.rank)]
        for t, c in vec.items():
            per_pos[t[0]][t[1:]] = field.mul(field.convert(c), inv)
        return tuple(Polynomial(self.ring, d) for d in per_pos)

    def _as_vec(self, f) -> Vec:
        if isinstance(f, Polynomial):
            f = (f,)
        f = tuple(f)
        if len(f) != self.rank:
            raise ValueError(f"expected a vector of length {self.rank}")
        for c in f:
            if c.ring != self.ring:
                raise ValueError(f"ring mismatch: {c.ring} vs {self.ring}")
        return self._engine.from_polys(f)

    def normal_form(self, f):
        """Weak normal form, determined up to a unit factor; zero iff f is in the source."""
        vec = self._as_vec(f)
        r, touched = self._engine.nf_mora(vec, self._elts)
        if not touched:
            if isinstance(self.source, Ideal) and not isinstance(f, Polynomial):
                return tuple(f)[0]
            return f if isinstance(f, Polynomial) else tuple(f)
        entries = self._to_entries(r, r[self._engine.lead(r)] if r else 1)
        return entries[0] if isinstance(self.source, Ideal) else entries

    def contains(self, f) -> bool:
        r, _ = self._engine.nf_mora(self._as_vec(f), self._elts)
        return not r

    def staircase(self, position: int = 0) -> Optional[List[Tuple[int, ...]]]:
        """Standard monomials at one position, or None when there are infinitely many."""
        lms = [t[1:] for t in self.leading_terms if t[0] == position]
        return _staircase(lms, self.ring.nvars)

    def k_dim(self):
        total = 0
        for pos in range(self.rank):
            stairs = self.staircase(pos)
            if stairs is None:
                return INF
            total += len(stairs)
        return total

    def dump(self) -> str:
        """Deterministic text form: one line per element with its leading term."""
        names = self.ring.names
        lines = [f"# standard basis over {self.ring}, rank {self.rank}, {len(self._elts)} elements"]
        for idx, (t, g) in enumerate(zip(self.leading_terms, self.elements)):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, t[1:]) if k) or "1"
            if isinstance(g, Polynomial):
                body = str(g)
                lead = mono
            else:
                body = "[" + ", ".join(str(c) for c in g) + "]"
                lead = f"{mono}*e{t[0] + 1}"
            lines.append(f"[{idx}] lead {lead} : {body}")
        return "\n".join(lines)


# Truncated attempts stop once the truncated quotient would exceed this many
# monomial vectors; beyond that plain Mora is used.
TRUNCATION_BUDGET = 3000


def _generator_vectors(src: Union[Ideal, Submodule]):
    if isinstance(src, Ideal):
        return 1, [(g,) for g in src.generators]
    return src.rank, src.generators


def _truncated_attempts(src: Union[Ideal, Submodule], ordering: LocalOrdering):
    """Yield ``(D, engine, basis)`` with ``basis`` a standard basis of src + m^D, D doubling."""
    ring = src.ring
    rank, gens = _generator_vectors(src)
    s = ring.nvars
    top = max((max(sum(e) for e in f.terms) for v in gens for f in v if f), default=0)
    D = max(4, min(top, 8) + 2)
    while rank * math.comb(D + s - 1, s) <= TRUNCATION_BUDGET:
        engine = _Engine(ring.field, ordering)
        vecs = [engine.from_polys(v) for v in gens]
        yield D, engine, engine.standard_basis(vecs, rank, preset_cap=D)
        D *= 2


def _mora(src: Union[Ideal, Submodule], ordering: LocalOrdering) -> StandardBasis:
    rank, gens = _generator_vectors(src)
    engine = _Engine(src.ring.field, ordering)
    vecs = [engine.from_polys(v) for v in gens]
    return StandardBasis(src, ordering, tuple(engine.standard_basis(vecs, rank)), engine)


def standard_basis(src: Union[Ideal, Submodule], ordering: LocalOrdering = DEFAULT_ORDERING) -> StandardBasis:
    """Standard basis under ``ordering`` (position-over-term for submodules).

    Modules of finite colength are computed modulo m^D for growing D first:
    if the result has no standard monomial of degree D - 1, then m^(D-1)
    lies in N + m^D, hence in N by Nakayama, and the truncated basis is a
    standard basis of N itself. Otherwise plain Mora is run.
    """
    rank, _ = _generator_vectors(src)
    s = src.ring.nvars
    for D, engine, elts in _truncated_attempts(src, ordering):
        if _all_below(elts, rank, s, D - 1):
            return StandardBasis(src, ordering, tuple(elts), engine)
    return _mora(src, ordering)


def _all_below(elts: Sequence[_Elt], rank: int, s: int, degree: int) -> bool:
    """Whether every standard monomial at every position has degree < ``degree``."""
    for pos in range(rank):
        lms = [g.lt[1:] for g in elts if g.lt[0] == pos]
        stairs = _staircase(lms, s) if lms else None
        if stairs is None or any(sum(e) >= degree for e in stairs):
            return False
    return True


def normal_form(f, basis: StandardBasis):
    return basis.normal_form(f)


def k_dim(src: Union[Ideal, Submodule]):
    """dim_K of R/I or R^m/N; ``math.inf`` when infinite."""
    return src.std.k_dim()


def _monomial_dimension(lms: Sequence[Tuple[int, ...]], s: int) -> int:
    supports = [frozenset(i for i, k in enumerate(e) if k) for e in lms]
    for size in range(s, -1, -1):
        for subset in combinations(range(s), size):
            sub = set(subset)
            if not any(supp <= sub for supp in supports):
                return size
    return -1


def krull_dim_and_height(ideal: Ideal, height_cap: Optional[int] = None) -> Tuple[int, int]:
    """Krull dimension of R/I and height of I in the local ring.

    ``height_cap`` is an a priori upper bound on the height (for instance the
    Eagon-Northcott bound for a Fitting ideal). Monomials of degree < D that
    lead elements of I + m^D also lead elements of I, so a truncated basis
    bounds the height from below; when that meets the upper bound
    min(s, #generators, height_cap) the answer is certified without running
    Mora to completion.
    """
    s = ideal.ring.nvars
    gens = ideal.nonzero_generators()
    if any(g.constant_coefficient() for g in gens):
        raise UnitIdeal(f"{ideal} is the unit ideal")
    if "std" not in ideal.__dict__:
        cap = min(s, len(gens), s if height_cap is None else height_cap)
        for D, engine, elts in _truncated_attempts(ideal, DEFAULT_ORDERING):
            if _all_below(elts, 1, s, D - 1):
                ideal.__dict__["std"] = StandardBasis(ideal, DEFAULT_ORDERING, tuple(elts), engine)
                break
            dim = _monomial_dimension([g.lt[1:] for g in elts if sum(g.lt[1:]) < D], s)
            if s - dim >= cap:
                return s - cap, cap
        else:
            ideal.__dict__["std"] = _mora(ideal, DEFAULT_ORDERING)
    dim = _monomial_dimension(ideal.std.leading_monomials, s)
    return dim, s - dim


def _monomials_of_degree(s: int, k: int):
    for combo in combinations_with_replacement(range(s), k):
        e = [0] * s
        for i in combo:
            e[i] += 1
        yield tuple(e)


def m_power_exponent(src: Union[Ideal, Submodule]) -> Optional[int]:
    """Smallest k with m^k * R^r contained in the ideal/submodule, or None.

    The staircase gives the candidate (one more than its top degree); every
    degree-k monomial at every position is then certified by a normal form.
    """
    basis = src.std
    ring = src.ring
    s = ring.nvars
    rank = basis.rank
    k = 0
    for pos in range(rank):
        stairs = basis.staircase(pos)
        if stairs is None:
            return None
        k = max(k, max((sum(e) + 1 for e in stairs), default=0))
    while True:
        if all(
            basis.contains(_unit_vector(ring, rank, pos, ring.monomial(e)))
            for pos in range(rank)
            for e in _monomials_of_degree(s, k)
        ):
            return k
        k += 1


def m_primary_exponent(ideal: Ideal) -> Optional[int]:
    """Smallest k with m^k contained in I, or None if I is not m-primary."""
    return m_power_exponent(ideal)


def minimal_generators(ideal: Ideal) -> Tuple[Polynomial, ...]:
    """A minimal generating subsequence (images form a basis of I/mI)."""
    gens = list(ideal.nonzero_generators())
    for g in gens:
        if g.ord() == 0:
            raise GeneratorIsUnit(g)
    keep = []
    for g in gens:
        if g not in keep:
            keep.append(g)
    if len(keep) <= 1:
        return tuple(keep)
    xs = ideal.ring.gens()
    i = 0
    while i < len(keep):
        g = keep[i]
        others = keep[:i] + keep[i + 1:]
        test = Ideal(ideal.ring, others + [x * h for h in keep for x in xs])
        if test.contains(g):
            keep.pop(i)
        else:
            i += 1
    return tuple(keep)
