"""Subfield and p-th-root towers of a monomial ID-field.

For a field F with non-degenerate iterative derivation, level ell of the
tower has two sides:

* the kernel subfield: elements killed by every theta^(j) with
  0 < j < p^ell.  For monomial fields this is the span of monomials
  whose exponents have vanishing low digits, an exponent lattice
  p^ell * (Z + Z*gamma) with gamma the digit shift of alpha.

* the p^ell-th root field: the maximal purely inseparable extension of
  exponent <= ell.  It is again a monomial field, with parameter gamma,
  and F embeds by t -> t and t^alpha -> t^prefix * (t^gamma)^(p^ell).

Field degrees in this tower are computed as exponent-lattice indices:
monomials in distinct lattice cosets are linearly independent over the
perfect coefficient field, so the 2x2 index determinant equals the field
degree.  That bridge is exact for these fields and is the library's
stated interpretation of tower degrees throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .derivation import theta_series
from .field import ExponentLattice, FieldCtx, MonoElem, p_root
from .padic import PadicExponent


@dataclass(frozen=True)
class TowerLevel:
    """One level of the tower over ``base``.

    ``ctx`` is the root field at this level (equal to ``base`` for rank-1
    contexts, whose root tower is trivial).  ``alpha_prefix`` is the
    canonical representative of the low digits of alpha in [0, p^level).
    Both lattices are referenced to the base parameter stream so they can
    be compared and indexed against each other.
    """

    level: int
    base: FieldCtx
    alpha_prefix: int
    kernel_lattice: ExponentLattice
    root_lattice: ExponentLattice
    ctx: FieldCtx

    def embed(self, x: MonoElem) -> MonoElem:
        """The inclusion of the base field into the root field ``ctx``."""
        if x.ctx is not self.base:
            raise ValueError("element does not live in the tower's base field")
        if self.ctx is self.base:
            return x
        pl = self.base.p ** self.level
        pref = self.alpha_prefix

        def map_poly(f: dict) -> dict:
            return {(a + b * pref, b * pl): c for (a, b), c in f.items()}

        num = map_poly(x.num)
        den = map_poly(x.den)
        if not num:
            return self.ctx.zero()
        from .field import _assemble_reduced
        num, den = _assemble_reduced(self.ctx, num, den)
        return MonoElem._make(self.ctx, num, den)

    def root_of_kernel_element(self, z: MonoElem) -> MonoElem:
        """z^(p^-level) in the root field, for z in the level's kernel field."""
        out = self.embed(z)
        for _ in range(self.level):
            out = p_root(out)
        return out


def kernel_lattice(ctx: FieldCtx, level: int) -> ExponentLattice:
    """Exponent lattice of the level-``level`` kernel subfield."""
    if level < 0:
        raise ValueError("tower level must be >= 0")
    scale = ctx.p ** level
    if ctx.rank == 1:
        return ExponentLattice(None, 0, scale, ctx.p)
    return ExponentLattice(ctx.oracle, level, scale, ctx.p)


def pth_power_lattice(ctx: FieldCtx) -> ExponentLattice:
    """Exponent lattice of F^p (coefficients absorb into F_q: it is perfect)."""
    return ExponentLattice(ctx.oracle if ctx.rank == 2 else None, 0, ctx.p, ctx.p)


def tower_level(ctx: FieldCtx, level: int) -> TowerLevel:
    if level < 0:
        raise ValueError("tower level must be >= 0")
    klat = kernel_lattice(ctx, level)
    if ctx.rank == 1 or level == 0:
        # the root tower of GF(q)(t) is GF(q)(t) itself
        return TowerLevel(level, ctx, 0, klat, ctx.lattice, ctx)
    prefix = 0
    mult = 1
    for i in range(level):
        prefix += ctx.oracle.digit(i) * mult
        mult *= ctx.p
    root_lat = ExponentLattice(ctx.oracle, level, 1, ctx.p)
    bracket = FieldCtx(ctx.fq, ctx.oracle.shifted(level), ctx.trunc)
    return TowerLevel(level, ctx, prefix, klat, root_lat, bracket)


def root_extension(ctx: FieldCtx, level: int) -> TowerLevel:
    """The maximal purely inseparable extension of exponent <= level,
    realized as the monomial field with the digit-shifted parameter."""
    return tower_level(ctx, level)


def in_kernel_subfield(x: MonoElem, level: int) -> bool:
    """True iff theta^(p^i)(x) == 0 for all i < level.

    Equivalent to vanishing of every theta^(j), 0 < j < p^level, by the
    kernel-collapse consequence of iterativity.
    """
    ctx = x.ctx
    if level < 0:
        raise ValueError("tower level must be >= 0")
    if level and ctx.p ** (level - 1) > ctx.trunc:
        raise ValueError(
            f"level {level} needs derivation order {ctx.p ** (level - 1)}, "
            f"context truncation is {ctx.trunc}")
    if level == 0:
        return True
    ts = theta_series(x, ctx.p ** (level - 1))
    return all(ts[ctx.p ** i].is_zero() for i in range(level))


def kernel_field_is_pth_powers(ctx: FieldCtx) -> bool:
    """Whether the first kernel subfield coincides with the p-th powers.

    Exact lattice comparison; the coefficient field contributes nothing
    because GF(q) is perfect.  True for GF(q)(t), false for the rank-2
    fields with an irrational parameter.
    """
    return kernel_lattice(ctx, 1).equals(pth_power_lattice(ctx))


def tower_report(ctx: FieldCtx, level: int) -> dict:
    """Degree and digit summary of one tower level (CLI surface)."""
    tl = tower_level(ctx, level)
    out = {
        "level": level,
        "alpha_ell": tl.alpha_prefix,
        "index_F_over_Fell": ctx.lattice.index_of(tl.kernel_lattice),
        "index_Fbracket_over_F": tl.root_lattice.index_of(ctx.lattice),
    }
    if ctx.rank == 2 and ctx.oracle is not None:
        prefix_len = min(8, max(tl.ctx.oracle.budget, 0)) if tl.ctx.oracle else 0
        out["gamma_digits_prefix"] = [tl.ctx.oracle.digit(i)
                                      for i in range(prefix_len)] if prefix_len else []
    else:
        out["gamma_digits_prefix"] = []
    return out
