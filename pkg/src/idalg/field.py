"""Monomial function fields GF(q)(t, t^alpha) with exact normalized arithmetic.

An element is a fraction of finite GF(q)-combinations of monomials
t^beta with beta = a + b*alpha ranging over the exponent group
Z + Z*alpha (or plain Z for the rational subfield GF(q)(t)).  The pair
(a, b) indexes the monomial, so numerators and denominators are the
two-variable polynomial dicts of :mod:`idalg.polys`, with the second
generator x = t^alpha treated as transcendental over GF(q)(t).  That is
legitimate exactly when alpha is irrational, which the digit oracle is
expected to certify heuristically.

The normal form (common monomial factors cleared, polynomial gcd
cancelled, denominator's lexicographically least coefficient scaled to
1) is unique, so equality of elements is equality of representations.
All values are immutable after construction; contexts may be shared
between threads.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .fq import Fq, get_field
from .padic import (DigitOracle, PadicExponent, PrecisionError,
                    looks_eventually_periodic, oracle_from_spec)


@dataclass(frozen=True)
class ExponentLattice:
    """The exponent group scale * (Z + Z*pi_shift) of a tower field.

    ``pi_shift`` is the digit shift of the session stream alpha that
    parametrizes this lattice (alpha = prefix + p^shift * pi_shift); rank-1
    lattices (no transcendental parameter) use ``root = None``.  Membership
    and index computations are exact integer arithmetic on coordinates.
    """

    root: DigitOracle | None
    shift: int
    scale: int
    p: int

    @property
    def rank(self) -> int:
        return 1 if self.root is None else 2

    def _prefix(self, upto: int) -> int:
        # integer formed by digits [0, upto) of the root stream
        assert self.root is not None
        total, mult = 0, 1
        for i in range(upto):
            total += self.root.digit(i) * mult
            mult *= self.p
        return total

    def coords(self, u: int, v: int) -> tuple[Fraction, Fraction]:
        """Coordinates of u + v*alpha over this lattice's basis."""
        if self.root is None:
            if v != 0:
                raise ValueError("rank-1 lattice cannot express the parameter")
            return Fraction(u, self.scale), Fraction(0)
        c = self._prefix(self.shift)
        pl = self.p ** self.shift
        return (Fraction(u + v * c, self.scale), Fraction(v * pl, self.scale))

    def contains_exponent(self, beta: PadicExponent) -> bool:
        try:
            q1, q2 = self.coords(beta.a, beta.b)
        except ValueError:
            return False
        return q1.denominator == 1 and q2.denominator == 1

    def basis_in_root_coords(self) -> list[tuple[Fraction, Fraction]]:
        """Basis vectors as (u, v) with value u + v*alpha, u, v rational."""
        if self.root is None:
            return [(Fraction(self.scale), Fraction(0))]
        c = self._prefix(self.shift)
        pl = self.p ** self.shift
        return [(Fraction(self.scale), Fraction(0)),
                (Fraction(-self.scale * c, pl), Fraction(self.scale, pl))]

    def contains_lattice(self, sub: "ExponentLattice") -> bool:
        if self.rank != sub.rank:
            return False
        try:
            mat = self._transition(sub)
        except ValueError:
            return False
        return all(x.denominator == 1 for row in mat for x in row)

    def _transition(self, sub: "ExponentLattice") -> list[list[Fraction]]:
        rows = []
        for (u, v) in sub.basis_in_root_coords():
            if self.root is None:
                if v != 0:
                    raise ValueError("rank mismatch")
                rows.append([u / self.scale])
            else:
                c = self._prefix(self.shift)
                pl = self.p ** self.shift
                rows.append([(u + v * c) / self.scale, v * pl / self.scale])
        return rows

    def index_of(self, sub: "ExponentLattice") -> int:
        """[self : sub] for sub a finite-index sublattice; exact determinant."""
        mat = self._transition(sub)
        if any(x.denominator != 1 for row in mat for x in row):
            raise ValueError("not a sublattice")
        if len(mat) == 1:
            det = mat[0][0]
        else:
            det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
        det = int(det)
        if det == 0:
            raise ValueError("degenerate lattice map")
        return abs(det)

    def equals(self, other: "ExponentLattice") -> bool:
        return self.contains_lattice(other) and other.contains_lattice(self)


def lattice_index(sub: ExponentLattice, sup: ExponentLattice) -> int:
    """Index of ``sub`` inside ``sup`` (checks containment)."""
    return sup.index_of(sub)


class FieldCtx:
    """Context for GF(q)(t) or GF(q)(t, t^alpha) with its iterative derivation.

    Holds the coefficient field, the parameter digit stream (None for the
    rational subfield), the truncation order for derivation expansions and
    the internal derivation caches.  Immutable as far as callers are
    concerned; the caches are lock-protected.
    """

    def __init__(self, fq: Fq, oracle: DigitOracle | None, trunc: int):
        if trunc < 1:
            raise ValueError("truncation order must be >= 1")
        self.fq = fq
        self.oracle = oracle
        self.trunc = trunc
        self.lattice = ExponentLattice(oracle, 0, 1, fq.p)
        self._theta_lock = threading.Lock()
        self._theta_cache: dict = {}
        self._den_cache: dict = {}
        self.param_certified_irrational = False
        if oracle is not None:
            if oracle.p != fq.p:
                raise ValueError("oracle characteristic mismatch")
            if oracle.irrational:
                if looks_eventually_periodic(oracle):
                    raise ValueError(
                        "digit stream declared irrational but looks eventually "
                        "periodic within the budget")
                self.param_certified_irrational = True
        # non-degeneracy: theta^(1)(t) must be 1
        from .derivation import theta_series
        ts = theta_series(self.t(), 1)
        if ts[1] != self.one():
            raise AssertionError("derivation is degenerate on t")

    # -- basic facts ---------------------------------------------------------

    @property
    def p(self) -> int:
        return self.fq.p

    @property
    def k(self) -> int:
        return self.fq.k

    @property
    def q(self) -> int:
        return self.fq.q

    @property
    def rank(self) -> int:
        return 1 if self.oracle is None else 2

    @property
    def imperfection_degree(self) -> int:
        """log_p [F : F^p]: 1 for GF(q)(t), 2 with an irrational parameter."""
        return self.rank

    def exponent(self, a: int, b: int = 0) -> PadicExponent:
        return PadicExponent(a, b, self.p, self.oracle)

    # -- element constructors -------------------------------------------------

    def zero(self) -> "MonoElem":
        return MonoElem._make(self, {}, dict(polys.ONE))

    def one(self) -> "MonoElem":
        return MonoElem._make(self, dict(polys.ONE), dict(polys.ONE))

    def scalar(self, code: int) -> "MonoElem":
        code %= self.q
        if code == 0:
            return self.zero()
        return MonoElem._make(self, {(0, 0): code}, dict(polys.ONE))

    def from_int(self, n: int) -> "MonoElem":
        return self.scalar(self.fq.of_int(n))

    def monomial(self, a: int, b: int = 0, coeff: int = 1) -> "MonoElem":
        if b != 0 and self.rank == 1:
            raise ValueError("this context has no transcendental parameter")
        if coeff % self.q == 0:
            return self.zero()
        return self.element({(a, b): coeff % self.q})

    def t(self) -> "MonoElem":
        return self.monomial(1, 0)

    def x(self) -> "MonoElem":
        return self.monomial(0, 1)

    def element(self, num: dict, den: dict | None = None) -> "MonoElem":
        """Build and normalize a fraction from raw {(a, b): code} dicts."""
        if self.rank == 1:
            for (_, b) in list(num) + (list(den) if den else []):
                if b != 0:
                    raise ValueError("this context has no transcendental parameter")
        num = {k: c % self.q for k, c in num.items() if c % self.q}
        if den is None:
            den = dict(polys.ONE)
        else:
            den = {k: c % self.q for k, c in den.items() if c % self.q}
        num, den = _normalize(self, num, den)
        return MonoElem._make(self, num, den)

    def restrict_to_t(self) -> "FieldCtx":
        """The rational subfield GF(q)(t) with the same derivation on t."""
        return FieldCtx(self.fq, None, self.trunc)

    def __repr__(self) -> str:
        if self.oracle is None:
            return f"<FieldCtx GF({self.q})(t) trunc={self.trunc}>"
        return (f"<FieldCtx GF({self.q})(t, t^alpha) alpha={self.oracle.spec!r} "
                f"trunc={self.trunc}>")


def required_digit_budget(p: int, trunc: int) -> int:
    """Session digit budget: enough for all binomials up to the truncation
    order plus four guard digits."""
    return max(math.ceil(math.log(max(trunc, 2), p)), 1) + 4


def make_field(p: int, k: int, oracle: DigitOracle | str | None,
               trunc: int, budget: int | None = None) -> FieldCtx:
    """Create GF(p^k)(t, t^alpha), or GF(p^k)(t) when ``oracle`` is None.

    ``oracle`` may be a spec string ("squares", "ones", "explicit:...").
    The digit budget defaults to a comfortable margin above the minimum
    required for derivation orders up to ``trunc``.
    """
    fq = get_field(p, k)
    minimum = required_digit_budget(p, trunc)
    if budget is None:
        budget = max(minimum, 16)
    elif budget < minimum:
        raise ValueError(f"digit budget {budget} below required minimum {minimum}")
    if isinstance(oracle, str):
        oracle = oracle_from_spec(oracle, p, budget)
    return FieldCtx(fq, oracle, trunc)


def _normalize(ctx: FieldCtx, num: dict, den: dict) -> tuple[dict, dict]:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, dict(polys.ONE)
    ma = min(min(a for a, _ in num), min(a for a, _ in den))
    mb = min(min(b for _, b in num), min(b for _, b in den))
    if ma or mb:
        num = polys.pshift(num, -ma, -mb)
        den = polys.pshift(den, -ma, -mb)
    num, den = polys.reduce_fraction(ctx.fq, num, den)
    c = den[polys.least_key(den)]
    if c != 1:
        inv = ctx.fq.inv(c)
        num = polys.pscale(ctx.fq, num, inv)
        den = polys.pscale(ctx.fq, den, inv)
    return num, den


def _assemble_reduced(ctx: FieldCtx, num: dict, den: dict) -> tuple[dict, dict]:
    """Normal form for a fraction whose polynomial parts are already coprime.

    Only clears monomial content and rescales; skips the gcd.
    """
    if not num:
        return {}, dict(polys.ONE)
    ma = min(min(a for a, _ in num), min(a for a, _ in den))
    mb = min(min(b for _, b in num), min(b for _, b in den))
    if ma or mb:
        num = polys.pshift(num, -ma, -mb)
        den = polys.pshift(den, -ma, -mb)
    c = den[polys.least_key(den)]
    if c != 1:
        inv = ctx.fq.inv(c)
        num = polys.pscale(ctx.fq, num, inv)
        den = polys.pscale(ctx.fq, den, inv)
    return num, den


class MonoElem:
    """A normalized element of a monomial function field.

    Instances are immutable; arithmetic always returns normalized results,
    so ``==`` is plain representation equality.
    """

    __slots__ = ("ctx", "num", "den", "_hash")

    def __init__(self):  # pragma: no cover - use the context constructors
        raise TypeError("use FieldCtx methods to build elements")

    @classmethod
    def _make(cls, ctx: FieldCtx, num: dict, den: dict) -> "MonoElem":
        self = object.__new__(cls)
        self.ctx = ctx
        self.num = num
        self.den = den
        self._hash = None
        return self

    # -- predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == polys.ONE and self.den == polys.ONE

    def is_scalar(self) -> bool:
        """True iff the element lies in GF(q); exact, no truncation."""
        if not self.num:
            return True
        if len(self.num) != len(self.den):
            return False
        if set(self.num) != set(self.den):
            return False
        fq = self.ctx.fq
        ratio = None
        for k, c in self.num.items():
            r = fq.div(c, self.den[k])
            if ratio is None:
                ratio = r
            elif ratio != r:
                return False
        return True

    def scalar_value(self) -> int:
        """The GF(q) code of a constant element."""
        if not self.num:
            return 0
        if not self.is_scalar():
            raise ValueError("element is not a scalar")
        k = next(iter(self.num))
        return self.ctx.fq.div(self.num[k], self.den[k])

    # -- arithmetic --------------------------------------------------------------

    def _check(self, other: "MonoElem") -> None:
        if self.ctx is not other.ctx:
            raise ValueError("elements from different field contexts")

    def __add__(self, other: "MonoElem") -> "MonoElem":
        self._check(other)
        fq = self.ctx.fq
        if self.den == other.den:
            num = polys.padd(fq, self.num, other.num)
            den = self.den
        else:
            num = polys.padd(fq, polys.pmul(fq, self.num, other.den),
                             polys.pmul(fq, other.num, self.den))
            den = polys.pmul(fq, self.den, other.den)
        return self.ctx.element(num, den)

    def __neg__(self) -> "MonoElem":
        return MonoElem._make(self.ctx, polys.pneg(self.ctx.fq, self.num),
                              dict(self.den))

    def __sub__(self, other: "MonoElem") -> "MonoElem":
        return self + (-other)

    def __mul__(self, other: "MonoElem") -> "MonoElem":
        self._check(other)
        fq = self.ctx.fq
        num = polys.pmul(fq, self.num, other.num)
        den = polys.pmul(fq, self.den, other.den)
        if self.den == polys.ONE and other.den == polys.ONE:
            return MonoElem._make(self.ctx, num, dict(polys.ONE))
        return self.ctx.element(num, den)

    def __truediv__(self, other: "MonoElem") -> "MonoElem":
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero element")
        fq = self.ctx.fq
        num = polys.pmul(fq, self.num, other.den)
        den = polys.pmul(fq, self.den, other.num)
        return self.ctx.element(num, den)

    def inverse(self) -> "MonoElem":
        return self.ctx.one() / self

    def __pow__(self, e: int) -> "MonoElem":
        if e < 0:
            return self.inverse() ** (-e)
        fq = self.ctx.fq
        num = polys.ppow(fq, self.num, e)
        den = polys.ppow(fq, self.den, e)
        # powers of a normalized fraction stay coprime
        num, den = _assemble_reduced(self.ctx, num, den)
        return MonoElem._make(self.ctx, num, den)

    def scale(self, code: int) -> "MonoElem":
        """Multiply by a GF(q) scalar, given by its code."""
        if code % self.ctx.q == 0:
            return self.ctx.zero()
        return MonoElem._make(self.ctx,
                              polys.pscale(self.ctx.fq, self.num, code % self.ctx.q),
                              dict(self.den))

    # -- derivation -----------------------------------------------------------

    def theta(self, order: int | None = None):
        """Truncated derivation expansion; see :func:`idalg.derivation.theta_series`."""
        from .derivation import theta_series
        return theta_series(self, order if order is not None else self.ctx.trunc)

    # -- structure ----------------------------------------------------------------

    def support(self) -> set[tuple[int, int]]:
        return set(self.num) | set(self.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonoElem):
            return NotImplemented
        return (self.ctx is other.ctx and self.num == other.num
                and self.den == other.den)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(sorted(self.num.items())),
                               tuple(sorted(self.den.items()))))
        return self._hash

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"MonoElem({format_element(self)})"


def arith(x: MonoElem, y: MonoElem, op: str) -> MonoElem:
    """Field arithmetic by operator name: one of '+', '-', '*', '/'."""
    if op == "+":
        return x + y
    if op == "-":
        return x - y
    if op == "*":
        return x * y
    if op == "/":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def is_constant(x: MonoElem) -> bool:
    """True iff x lies in the constant field GF(q).

    Exact: a normalized fraction is constant iff numerator is a scalar
    multiple of the denominator.
    """
    return x.is_scalar()


def p_root(x: MonoElem) -> MonoElem:
    """The unique y with y^p = x, when it exists in the same field.

    Every monomial exponent of the normalized representation must be
    divisible by p in both coordinates; coefficients pass through the
    inverse Frobenius c -> c^(p^(k-1)).
    """
    ctx = x.ctx
    p = ctx.p
    fq = ctx.fq

    def root_poly(f: dict) -> dict:
        out = {}
        for (a, b), c in f.items():
            if a % p or b % p:
                raise ValueError(
                    f"not a p-th power: monomial exponent ({a}, {b}) "
                    f"not divisible by p={p}")
            out[(a // p, b // p)] = fq.p_root(c)
        return out

    num = root_poly(x.num)
    den = root_poly(x.den)
    # roots of a normal form are again a normal form, but rescale defensively
    num, den = _assemble_reduced(ctx, num, den)
    return MonoElem._make(ctx, num, den)


# -- canonical string form -----------------------------------------------------

def _format_poly(ctx: FieldCtx, f: dict) -> str:
    if not f:
        return "0"
    parts = []
    for (a, b) in sorted(f):
        c = f[(a, b)]
        factors = []
        if c != 1 or (a == 0 and b == 0):
            factors.append(str(c))
        if a != 0:
            factors.append("t" if a == 1 else f"t^{a}")
        if b != 0:
            factors.append("x" if b == 1 else f"x^{b}")
        parts.append("*".join(factors))
    return " + ".join(parts)


def format_element(x: MonoElem) -> str:
    """Canonical string in the CLI grammar; parses back to the same element."""
    if x.den == polys.ONE:
        return _format_poly(x.ctx, x.num)
    return f"({_format_poly(x.ctx, x.num)})/({_format_poly(x.ctx, x.den)})"
