"""Sparse multivariate polynomials standing in for power-series jets.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
coefficients of a :class:`CoefficientField`. Orders and jets refer to the
total degree, so the maximal ideal of K[[x]] is the set of polynomials with
``ord() >= 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from .field import CoefficientField
from .linalg import det

Exponent = Tuple[int, ...]
INF = math.inf


@dataclass(frozen=True)
class PolyRing:
    field: CoefficientField
    names: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __str__(self) -> str:
        return f"{self.field}[[{', '.join(self.names)}]]"

    def index(self, var: Union[int, str]) -> int:
        if isinstance(var, str):
            try:
                return self.names.index(var)
            except ValueError:
                raise KeyError(f"unknown variable {var!r}") from None
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range")
        return var

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): c})

    def var(self, var: Union[int, str]) -> "Polynomial":
        i = self.index(var)
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def parse(self, text: str) -> "Polynomial":
        from .parsing import parse_polynomial

        return parse_polynomial(text, self)

    def __call__(self, obj) -> "Polynomial":
        if isinstance(obj, Polynomial):
            if obj.ring != self:
                raise ValueError(f"polynomial lives in {obj.ring}, not {self}")
            return obj
        if isinstance(obj, str):
            return self.parse(obj)
        return self.constant(obj)


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponent, object]):
        field = ring.field
        s = ring.nvars
        clean: Dict[Exponent, object] = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != s or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e} for {s} variables")
            c = field.convert(c)
            if c != 0:
                clean[e] = c
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: PolyRing, terms: Dict[Exponent, object]) -> "Polynomial":
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # ----- basic predicates -----

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def is_unit(self) -> bool:
        """Unit of the local ring: nonzero constant term."""
        return self.constant_coefficient() != 0

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    # ----- arithmetic -----

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        field = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = field.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        field = self.ring.field
        return Polynomial._raw(self.ring, {e: field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        field = self.ring.field
        out: Dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        p = field.characteristic
        if p:
            clean = {e: c % p for e, c in out.items() if c % p}
        else:
            clean = {e: field.convert(c) for e, c in out.items() if c != 0}
        return Polynomial._raw(self.ring, clean)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        field = self.ring.field
        c = field.convert(c)
        return Polynomial._raw(
            self.ring, {e: v for e, v in ((e, field.mul(x, c)) for e, x in self.terms.items()) if v}
        )

    def mul_monomial(self, exps: Sequence[int]) -> "Polynomial":
        return Polynomial._raw(
            self.ring, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()}
        )

    # ----- degree data -----

    def ord(self):
        """Lowest total degree of a term; ``math.inf`` for the zero polynomial."""
        if not self.terms:
            return INF
        return min(sum(e) for e in self.terms)

    def degree(self):
        if not self.terms:
            return -INF
        return max(sum(e) for e in self.terms)

    def jet(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("jet order must be nonnegative")
        return Polynomial._raw(self.ring, {e: c for e, c in self.terms.items() if sum(e) <= k})

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def partial(self, var: Union[int, str]) -> "Polynomial":
        """Formal partial derivative; exponents divisible by p die in char p."""
        i = self.ring.index(var)
        field = self.ring.field
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            v = field.mul(c, e[i])
            if v:
                ee = list(e)
                ee[i] -= 1
                out[tuple(ee)] = v
        return Polynomial._raw(self.ring, out)

    def substitute(self, images: Union["Automorphism", Sequence["Polynomial"]]) -> "Polynomial":
        """Return f(g_1, ..., g_s) where ``images`` lists the g_i."""
        if isinstance(images, Automorphism):
            images = images.images
        images = list(images)
        if len(images) != self.ring.nvars:
            raise ValueError(f"need {self.ring.nvars} images, got {len(images)}")
        target = images[0].ring if images else self.ring
        for g in images:
            if g.ring != target:
                raise ValueError("images live in different rings")
        if target.field != self.ring.field:
            raise ValueError(f"field mismatch: {self.ring.field} vs {target.field}")
        powers = [[target.one] for _ in images]

        def power(i, k):
            cache = powers[i]
            while len(cache) <= k:
                cache.append(cache[-1] * images[i])
            return cache[k]

        result = target.zero
        for e, c in self.terms.items():
            term = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def evaluate(self, point: Sequence) -> object:
        field = self.ring.field
        point = [field.convert(v) for v in point]
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term = field.mul(term, field.convert(v ** k))
            total = field.add(total, term)
        return total

    def specialize(self, assignment: Mapping[int, object], target: PolyRing) -> "Polynomial":
        """Plug field values into the variables indexed by ``assignment``.

        The remaining variables map, in order, onto the variables of ``target``.
        """
        field = self.ring.field
        if target.field != field:
            raise ValueError("field mismatch")
        keep = [i for i in range(self.ring.nvars) if i not in assignment]
        if len(keep) != target.nvars:
            raise ValueError("target ring has the wrong number of variables")
        values = {i: field.convert(v) for i, v in assignment.items()}
        out: Dict[Exponent, object] = {}
        for e, c in self.terms.items():
            coeff = c
            for i, v in values.items():
                if e[i]:
                    coeff = field.mul(coeff, field.convert(v ** e[i]))
            if coeff == 0:
                continue
            ee = tuple(e[i] for i in keep)
            out[ee] = field.add(out.get(ee, 0), coeff)
        return Polynomial(target, out)

    # ----- ordering-dependent data -----

    def lead_exponent(self, ordering: Optional["LocalOrdering"] = None) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = (ordering or DEFAULT_ORDERING).key
        return max(self.terms, key=key)

    def sorted_terms(self, ordering: Optional["LocalOrdering"] = None):
        key = (ordering or DEFAULT_ORDERING).key
        return sorted(self.terms.items(), key=lambda item: key(item[0]), reverse=True)

    # ----- printing -----

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            if self.ring.field.characteristic and c > self.ring.field.characteristic // 2:
                c = c - self.ring.field.characteristic
            neg = c < 0
            a = -c if neg else c
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{a}*{mono}"
            else:
                body = str(a)
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self}, ring={self.ring})"


@dataclass(frozen=True)
class LocalOrdering:
    """Negative-degree reverse-lexicographic ordering.

    ``key`` maps an exponent tuple to a sort key such that larger keys mean
    larger monomials; ``1`` is the largest monomial. ``perm`` reorders the
    variables before the reverse-lexicographic tie break.
    """

    perm: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "key", lru_cache(maxsize=None)(self._key))

    def _key(self, e: Exponent):
        if self.perm is not None:
            e = tuple(e[i] for i in self.perm)
        return (-sum(e),) + tuple(-x for x in reversed(e))

    def greater(self, u: Exponent, v: Exponent) -> bool:
        return self.key(u) > self.key(v)

    def __hash__(self):
        return hash(self.perm)

    def __eq__(self, other):
        return isinstance(other, LocalOrdering) and self.perm == other.perm


DEFAULT_ORDERING = LocalOrdering()


class Automorphism:
    """Polynomial automorphism x_i -> phi_i with phi_i in m and invertible linear part."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[Polynomial]):
        images = tuple(images)
        if not images:
            self.images = images
            return
        ring = images[0].ring
        if len(images) != ring.nvars or any(g.ring != ring for g in images):
            raise ValueError("an automorphism needs one image per variable, all in one ring")
        for i, g in enumerate(images):
            if g.ord() < 1:
                raise ValueError(f"image of {ring.names[i]} is not in the maximal ideal: {g}")
        if det(self._linear_rows(images), ring.field) == 0:
            raise ValueError("linear part of the automorphism is singular")
        self.images = images

    @staticmethod
    def _linear_rows(images):
        s = len(images)
        rows = []
        for g in images:
            row = []
            for j in range(s):
                e = [0] * s
                e[j] = 1
                row.append(g.coefficient(e))
            rows.append(row)
        return rows

    @classmethod
    def identity(cls, ring: PolyRing) -> "Automorphism":
        return cls(ring.gens())

    @property
    def ring(self) -> PolyRing:
        return self.images[0].ring

    def linear_part(self):
        return self._linear_rows(self.images)

    def apply(self, f: Polynomial) -> Polynomial:
        if self.images and f.ring != self.ring:
            raise ValueError(f"ring mismatch: {f.ring} vs {self.ring}")
        return f.substitute(self.images)

    __call__ = apply

    def compose(self, inner: "Automorphism") -> "Automorphism":
        """``self.compose(inner)`` acts as ``f -> self(inner(f))``."""
        return Automorphism([self.apply(g) for g in inner.images])

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Automorphism({', '.join(str(g) for g in self.images)})"
