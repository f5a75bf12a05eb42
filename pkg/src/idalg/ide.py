"""Iterative differential equations theta(y) = A y.

An equation is given by its truncated matrix series A = sum A_k T^k with
A_0 the identity and the coefficient compatibility condition

    binom(k+l, l) A_{k+l} = sum_{i+j=l} theta^(i)(A_k) A_j.

A fundamental solution matrix is an invertible Y with theta(Y) = A Y,
equivalently theta^(k)(Y) = A_k Y for every k.  This module derives A
from a given Y, verifies the compatibility condition and solution pairs,
measures how deep A sits in the Frobenius tower, and pulls a level-ell
pair back to the p^ell-th root field by taking entrywise roots.

Matrix entries live in an explicitly chosen ring handle: a field context
or a finite extension; nothing is inferred.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .derivation import CheckLine, theta_series, verify_iterativity
from .field import FieldCtx, MonoElem
from .linalg import SingularMatrixError
from .padic import int_binom_mod
from .tower import TowerLevel, in_kernel_subfield


@dataclass(frozen=True)
class FundamentalMatrix:
    """An invertible candidate solution matrix over ``ring``."""

    ring: object
    entries: tuple

    @property
    def n(self) -> int:
        return len(self.entries)

    def inverse(self) -> tuple:
        return linalg.mat_inv(self.ring, self.entries)

    def determinant(self):
        return linalg.det(self.ring, self.entries)


@dataclass(frozen=True)
class IdeMatrix:
    """The truncated coefficient series A_0..A_N of an equation."""

    ring: object
    coeffs: tuple  # coeffs[k] is the n x n matrix A_k

    @property
    def n(self) -> int:
        return len(self.coeffs[0])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> tuple:
        return self.coeffs[k]


@dataclass(frozen=True)
class IdeReport:
    lines: tuple

    @property
    def ok(self) -> bool:
        return all(l.ok for l in self.lines)

    def failures(self):
        return [l for l in self.lines if not l.ok]


@dataclass(frozen=True)
class SolutionReport:
    solves: bool        # theta(Y) = A Y to the checked order
    iterative: bool     # every entry of Y satisfies the iteration rule
    lines: tuple

    @property
    def agree(self) -> bool:
        return self.solves == self.iterative

    @property
    def ok(self) -> bool:
        return self.solves and self.iterative


def monomial_solution(ctx: FieldCtx, a: int, b: int = 0) -> FundamentalMatrix:
    """The 1x1 solution matrix (t^(a + b alpha))."""
    return FundamentalMatrix(ctx, linalg.freeze([[ctx.monomial(a, b)]]))


def _theta_matrix(y: FundamentalMatrix, order: int) -> list:
    """List over k of the matrices theta^(k)(Y), entrywise."""
    series = [[theta_series(e, order) for e in row] for row in y.entries]
    return [linalg.freeze([[series[i][j][k] for j in range(y.n)]
                           for i in range(y.n)])
            for k in range(order + 1)]


def derive_matrix(y: FundamentalMatrix, order: int) -> IdeMatrix:
    """A with theta(Y) = A Y: A_k = theta^(k)(Y) Y^(-1); A_0 is automatic."""
    yinv = y.inverse()  # raises SingularMatrixError for singular Y
    thetas = _theta_matrix(y, order)
    coeffs = [linalg.mat_mul(tk, yinv) for tk in thetas]
    return IdeMatrix(y.ring, tuple(coeffs))


def verify_ide(a: IdeMatrix, order: int | None = None) -> IdeReport:
    """Exact per-(k, l) check of the coefficient compatibility condition."""
    ring = a.ring
    order = a.order if order is None else min(order, a.order)
    p = ring.p
    lines = [CheckLine("A_0 = identity",
                       linalg.mat_eq(a[0], linalg.identity(ring, a.n)))]
    # theta^(i) of every coefficient matrix, reused across pairs
    theta_of = [_theta_matrix(FundamentalMatrix(ring, a[k]), order)
                for k in range(order + 1)]
    for k in range(order + 1):
        for l in range(order + 1 - k):
            lhs = linalg.mat_scale(a[k + l], _ring_scalar(ring, int_binom_mod(k + l, l, p)))
            rhs = None
            for i in range(l + 1):
                term = linalg.mat_mul(theta_of[k][i], a[l - i])
                rhs = term if rhs is None else linalg.mat_add(rhs, term)
            lines.append(CheckLine(f"compat(k={k},l={l})", linalg.mat_eq(lhs, rhs)))
    return IdeReport(tuple(lines))


def _ring_scalar(ring, code: int):
    return ring.scalar(code) if hasattr(ring, "scalar") else ring.from_int(code)


def verify_solution(a: IdeMatrix, y: FundamentalMatrix,
                    order: int | None = None) -> SolutionReport:
    """Check theta(Y) = A Y and, independently, entrywise iterativity of Y.

    The two verdicts coincide for honest pairs; the report records both and
    whether they agree.
    """
    if y.n != a.n:
        raise ValueError("matrix sizes differ")
    order = a.order if order is None else min(order, a.order)
    thetas = _theta_matrix(y, order)
    lines = []
    solves = True
    for k in range(order + 1):
        ok = linalg.mat_eq(thetas[k], linalg.mat_mul(a[k], y.entries))
        solves = solves and ok
        lines.append(CheckLine(f"theta^({k})(Y) = A_{k} Y", ok))
    iterative = True
    for i, row in enumerate(y.entries):
        for j, e in enumerate(row):
            rep = verify_iterativity(e, order)
            iterative = iterative and rep.ok
            lines.append(CheckLine(f"Y[{i}][{j}] iterativity", rep.ok))
    return SolutionReport(solves=solves, iterative=iterative, lines=tuple(lines))


def frobenius_level(a: IdeMatrix) -> dict:
    """The largest ell with A_k = 0 whenever p^ell does not divide k >= 1.

    Also reports whether all coefficient entries lie in the level-ell
    kernel subfield, and whether the level is only a truncation cap (the
    sentinel for A = identity to the checked order).
    """
    ring = a.ring
    p = ring.p
    order = a.order
    cap = 0
    while p ** (cap + 1) <= order:
        cap += 1
    nonzero = [k for k in range(1, order + 1)
               if not linalg.is_zero_matrix(a[k])]
    if not nonzero:
        level = cap
        capped = True
    else:
        level = cap
        for k in nonzero:
            v = 0
            while k % p == 0:
                k //= p
                v += 1
            level = min(level, v)
        capped = False
    entries_in_kernel = True
    if isinstance(ring, FieldCtx) and level > 0:
        for k in range(order + 1):
            for row in a[k]:
                for e in row:
                    if not e.is_zero() and not in_kernel_subfield(e, level):
                        entries_in_kernel = False
    return {"level": level, "capped": capped,
            "entries_in_kernel_field": entries_in_kernel}


def pullback(a: IdeMatrix, y: FundamentalMatrix, tower: TowerLevel
             ) -> tuple[IdeMatrix, FundamentalMatrix]:
    """Entrywise p^ell-th roots of a level-ell pair, in the root field.

    Requires A_k = 0 for p^ell not dividing k and Y entries in the level's
    kernel subfield; the returned pair satisfies the root-field equation
    with coefficients A'_k = root(A_{k p^ell}).
    """
    ell = tower.level
    p = tower.base.p
    pl = p ** ell
    info = frobenius_level(a)
    if info["level"] < ell and not info["capped"]:
        raise ValueError(f"matrix series only has Frobenius level {info['level']}")
    new_order = a.order // pl
    coeffs = []
    for k in range(new_order + 1):
        coeffs.append(linalg.freeze(
            [[tower.root_of_kernel_element(e) for e in row]
             for row in a[k * pl]]))
    y2 = linalg.freeze([[tower.root_of_kernel_element(e) for e in row]
                        for row in y.entries])
    return (IdeMatrix(tower.ctx, tuple(coeffs)),
            FundamentalMatrix(tower.ctx, y2))


def generation_lattice_check(y: FundamentalMatrix) -> bool:
    """Surrogate for solution-field generation over the base line field:
    the exponent lattice spanned by t, the entry supports of Y and of
    det(Y)^(-1) must be the whole context lattice.

    Sound for monomial solution matrices (each listed exponent is realized
    by an element of the generated field); reported as a surrogate, not a
    proof, for general entries.
    """
    ctx = y.ring
    if not isinstance(ctx, FieldCtx):
        raise ValueError("lattice generation check needs field entries")
    keys: set = {(1, 0)}
    for row in y.entries:
        for e in row:
            keys |= set(e.num) | set(e.den)
    d = y.determinant()
    keys |= set(d.num) | set(d.den)
    vecs = [k for k in keys if k != (0, 0)]
    # Hermite form of the generated subgroup of Z^2: d2 = gcd of the
    # b-coordinates with a witness (w, d2); then reduce all a-coordinates.
    d2, w = 0, 0
    for (u, v) in vecs:
        if v:
            g, s, t = _xgcd(d2, v)
            w = s * w + t * u
            d2 = g
    d1 = 0
    for (u, v) in vecs:
        if d2:
            u = u - (v // d2) * w
        d1 = _gcd(d1, abs(u))
    if ctx.rank == 1:
        return d1 == 1
    return d1 == 1 and d2 == 1


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g = s*a + t*b with g >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0
