"""The iterative derivation engine and its axiom checkers.

The derivation theta maps an element r to the truncated power series
theta(r) = sum_n theta^(n)(r) T^n.  On a monomial t^beta the n-th
coefficient is binom(beta, n) * t^(beta - n); the rule extends
additively to polynomials and to fractions through the series inverse
of the denominator image.

Internally everything runs on cleared denominators: the k-th
coefficient of any series we manipulate is a polynomial divided by
d^(k + off) for the fixed denominator polynomial d of the element at
hand.  Multiplying such series is pure polynomial convolution, so no
gcd is taken until a coefficient is materialized as a normalized field
element (and then only against the small d, never against its powers).
Materialized expansions are cached per element under a lock.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import polys
from .field import FieldCtx, MonoElem, _assemble_reduced
from .padic import int_binom_mod


class TruncSeries:
    """A truncated series with coefficients in any ring handle.

    ``ring`` must provide ``zero()`` and ``one()``; coefficients must
    support +, -, * and equality.  Index n holds the coefficient of T^n.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        raise IndexError(f"series truncated at order {self.order}")

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        return TruncSeries(self.ring,
                           [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        return TruncSeries(self.ring,
                           [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)])

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        zero = self.ring.zero()
        out = []
        for k in range(n + 1):
            acc = zero
            for i in range(k + 1):
                ci = self.coeffs[i]
                cj = other.coeffs[k - i]
                acc = acc + ci * cj
            out.append(acc)
        return TruncSeries(self.ring, out)

    def truncate(self, order: int) -> "TruncSeries":
        if order >= self.order:
            return self
        return TruncSeries(self.ring, self.coeffs[:order + 1])

    def is_zero(self) -> bool:
        return all(_elem_is_zero(c) for c in self.coeffs)

    def __repr__(self) -> str:
        inner = ", ".join(str(c) for c in self.coeffs)
        return f"TruncSeries[{inner}]"


def _elem_is_zero(c) -> bool:
    return c.is_zero() if hasattr(c, "is_zero") else c == 0


def series_of_constant(ring, value, order: int) -> TruncSeries:
    zero = ring.zero()
    return TruncSeries(ring, [value] + [zero] * order)


def series_invert(s: TruncSeries) -> TruncSeries:
    """Multiplicative inverse mod T^(order+1); the constant term must be a unit."""
    c0 = s[0]
    if _elem_is_zero(c0):
        raise ZeroDivisionError("series has non-invertible constant term")
    one = s.ring.one()
    inv0 = one / c0
    out = [inv0]
    for k in range(1, s.order + 1):
        acc = s.ring.zero()
        for i in range(1, k + 1):
            acc = acc + s[i] * out[k - i]
        out.append(s.ring.zero() - inv0 * acc)
    return TruncSeries(s.ring, out)


# -- the cleared-denominator engine -------------------------------------------


def _theta_poly_series(ctx: FieldCtx, f: dict, order: int) -> list[dict]:
    """theta of a polynomial: list of polynomial coefficients, exact."""
    fq = ctx.fq
    out = [dict() for _ in range(order + 1)]
    for (a, b), c in f.items():
        beta = ctx.exponent(a, b)
        for n in range(order + 1):
            lb = beta.lucas_binom(n)
            if lb:
                k = (a - n, b)
                coef = fq.mul(c, lb) if lb != 1 else c
                tgt = out[n]
                s = fq.add(tgt.get(k, 0), coef)
                if s:
                    tgt[k] = s
                else:
                    tgt.pop(k, None)
    return out


@dataclass
class _FracSeries:
    """Series whose k-th coefficient is polys[k] / d^(k + off)."""

    ctx: FieldCtx
    d: dict
    off: int
    polys_: list

    def mul(self, other: "_FracSeries", order: int) -> "_FracSeries":
        fq = self.ctx.fq
        out = []
        for k in range(order + 1):
            acc: dict = {}
            for i in range(k + 1):
                a = self.polys_[i]
                b = other.polys_[k - i]
                if a and b:
                    acc = polys.padd(fq, acc, polys.pmul(fq, a, b))
            out.append(acc)
        return _FracSeries(self.ctx, self.d, self.off + other.off, out)

    def coefficient(self, k: int) -> MonoElem:
        return _materialize(self.ctx, self.polys_[k], self.d, k + self.off)


def _materialize(ctx: FieldCtx, num: dict, den: dict, power: int) -> MonoElem:
    """Normalize num / den**power into a field element."""
    if not num:
        return ctx.zero()
    fq = ctx.fq
    na, nb = polys.pmin_exps(num)
    num0 = polys.pshift(num, -na, -nb) if (na or nb) else dict(num)
    da, db = polys.pmin_exps(den)
    den0 = polys.pshift(den, -da, -db) if (da or db) else dict(den)
    rnum, rden = polys.reduce_fraction_power(fq, num0, den0, power)
    sa = na - power * da
    sb = nb - power * db
    if sa > 0 or sb > 0:
        rnum = polys.pshift(rnum, max(sa, 0), max(sb, 0))
    if sa < 0 or sb < 0:
        rden = polys.pshift(rden, max(-sa, 0), max(-sb, 0))
    rnum, rden = _assemble_reduced(ctx, rnum, rden)
    return MonoElem._make(ctx, rnum, rden)


class _DenData:
    """Per-denominator engine state: theta(d), inverse ladder, d powers."""

    __slots__ = ("d", "order", "theta_d", "inv_polys", "inv_pows", "_dpow")

    def __init__(self, ctx: FieldCtx, d: dict, order: int):
        self.d = d
        self.order = order
        self.theta_d = _theta_poly_series(ctx, d, order)
        fq = ctx.fq
        # S_0 = 1, S_k = -sum_{i=1..k} theta_d[i] * S_{k-i} * d^(i-1);
        # then theta(1/d) has coefficients S_k / d^(k+1).
        dpow = [dict(polys.ONE)]
        for _ in range(order):
            dpow.append(polys.pmul(fq, dpow[-1], d))
        S = [dict(polys.ONE)]
        for k in range(1, order + 1):
            acc: dict = {}
            for i in range(1, k + 1):
                ti = self.theta_d[i]
                if ti:
                    term = polys.pmul(fq, ti, S[k - i])
                    if i > 1:
                        term = polys.pmul(fq, term, dpow[i - 1])
                    acc = polys.padd(fq, acc, term)
            S.append(polys.pneg(fq, acc))
        self.inv_polys = S
        self.inv_pows: dict[int, list] = {1: S}
        self._dpow = dpow

    def inv_power(self, ctx: FieldCtx, m: int, order: int) -> _FracSeries:
        """(theta(d)^-1)^m as a cleared series with offset m."""
        fq = ctx.fq
        if m not in self.inv_pows:
            best = max(e for e in self.inv_pows if e < m)
            cur = self.inv_pows[best]
            for e in range(best + 1, m + 1):
                if e in self.inv_pows:
                    cur = self.inv_pows[e]
                    continue
                nxt = []
                for k in range(self.order + 1):
                    acc: dict = {}
                    for i in range(k + 1):
                        a = cur[i]
                        b = self.inv_polys[k - i]
                        if a and b:
                            acc = polys.padd(fq, acc, polys.pmul(fq, a, b))
                    nxt.append(acc)
                self.inv_pows[e] = nxt
                cur = nxt
        return _FracSeries(ctx, self.d, m, self.inv_pows[m][:order + 1])


def _den_key(d: dict) -> tuple:
    return tuple(sorted(d.items()))


def _den_data(ctx: FieldCtx, d: dict, order: int) -> _DenData:
    key = _den_key(d)
    with ctx._theta_lock:
        data = ctx._den_cache.get(key)
        if data is None or data.order < order:
            data = _DenData(ctx, d, max(order, ctx.trunc))
            ctx._den_cache[key] = data
        return data


def _theta_frac(ctx: FieldCtx, num: dict, den: dict, den_power: int,
                order: int) -> _FracSeries:
    """theta(num / den**den_power) in cleared form over the base d = den."""
    fq = ctx.fq
    data = _den_data(ctx, den, order)
    P = _theta_poly_series(ctx, num, order)
    padded = []
    for k in range(order + 1):
        padded.append(polys.pmul(fq, P[k], data._dpow[k]) if P[k] else {})
    lhs = _FracSeries(ctx, den, 0, padded)
    inv = data.inv_power(ctx, den_power, order)
    return lhs.mul(inv, order)


def theta_series(x, order: int | None = None) -> TruncSeries:
    """The truncated derivation image theta(x) as a TruncSeries.

    Exact in every coefficient; coefficient 0 is x itself.  For field
    elements results are cached on the context.  ``order`` defaults to and
    may not exceed the context truncation.
    """
    if not isinstance(x, MonoElem):
        return x.theta(order)
    ctx = x.ctx
    if order is None:
        order = ctx.trunc
    if order > ctx.trunc:
        raise ValueError(f"order {order} exceeds context truncation {ctx.trunc}")
    with ctx._theta_lock:
        cached = ctx._theta_cache.get(x)
    if cached is None or len(cached) <= order:
        if x.den == polys.ONE:
            P = _theta_poly_series(ctx, x.num, ctx.trunc)
            coeffs = [_materialize(ctx, P[k], polys.ONE, 0)
                      for k in range(ctx.trunc + 1)]
        elif len(x.den) <= 2:
            # cleared-denominator engine: powers of a 1- or 2-term d stay
            # sparse, so the polynomial convolutions are cheap
            fs = _theta_frac(ctx, x.num, x.den, 1, ctx.trunc)
            coeffs = [fs.coefficient(k) for k in range(ctx.trunc + 1)]
        else:
            # fat denominators: the reduced coefficients collapse massively,
            # so solve theta(num) = theta(den) * theta(x) with normalized
            # elements instead of filling dense cleared boxes
            P = [_materialize(ctx, f, polys.ONE, 0)
                 for f in _theta_poly_series(ctx, x.num, ctx.trunc)]
            D = [_materialize(ctx, f, polys.ONE, 0)
                 for f in _theta_poly_series(ctx, x.den, ctx.trunc)]
            coeffs = [x]
            for k in range(1, ctx.trunc + 1):
                acc = P[k]
                for i in range(1, k + 1):
                    acc = acc - D[i] * coeffs[k - i]
                coeffs.append(acc / D[0])
        with ctx._theta_lock:
            ctx._theta_cache[x] = coeffs
        cached = coeffs
    return TruncSeries(ctx, cached[:order + 1])


# -- axiom verification ---------------------------------------------------------


@dataclass(frozen=True)
class CheckLine:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class AxiomReport:
    subject: str
    lines: tuple

    @property
    def ok(self) -> bool:
        return all(line.ok for line in self.lines)

    def failures(self) -> list[CheckLine]:
        return [line for line in self.lines if not line.ok]


def verify_iterativity(x, order: int | None = None) -> AxiomReport:
    """Check theta^(i)(theta^(j)(x)) == binom(i+j, i) theta^(i+j)(x) exactly
    for every pair with i + j <= order."""
    if isinstance(x, MonoElem):
        return _iterativity_fast(x, order)
    return _iterativity_generic(x, order)


def _iterativity_fast(x: MonoElem, order: int | None) -> AxiomReport:
    ctx = x.ctx
    if order is None:
        order = ctx.trunc
    p = ctx.p
    ts = theta_series(x, order)
    lines = []
    if x.den == polys.ONE or len(x.den) > 2:
        inner = {j: theta_series(ts[j], order - j) for j in range(order + 1)}
        get = lambda j, i: inner[j][i]
    else:
        base = _theta_frac(ctx, x.num, x.den, 1, order)
        levels = {}
        for j in range(order + 1):
            levels[j] = _theta_frac(ctx, base.polys_[j], x.den, j + 1, order - j)
        get = lambda j, i: levels[j].coefficient(i)
    for j in range(order + 1):
        for i in range(order + 1 - j):
            lhs = get(j, i)
            rhs = ts[i + j].scale(int_binom_mod(i + j, i, p))
            lines.append(CheckLine(f"theta^({i})∘theta^({j})", lhs == rhs))
    return AxiomReport(subject=str(x), lines=tuple(lines))


def _iterativity_generic(x, order: int | None) -> AxiomReport:
    ts = x.theta(order)
    order = ts.order
    p = ts.ring.p if hasattr(ts.ring, "p") else ts.ring.ctx.p
    lines = []
    for j in range(order + 1):
        inner = ts[j].theta(order - j)
        for i in range(order + 1 - j):
            rhs = ts[i + j].scale(int_binom_mod(i + j, i, p))
            lines.append(CheckLine(f"theta^({i})∘theta^({j})", inner[i] == rhs))
    return AxiomReport(subject=str(x), lines=tuple(lines))


def verify_homomorphism(x, y, order: int | None = None) -> AxiomReport:
    """Check theta^(k)(x*y) == sum_{i+j=k} theta^(i)(x) theta^(j)(y) for k <= order."""
    if (isinstance(x, MonoElem) and isinstance(y, MonoElem)
            and len(x.den) <= 2 and len(y.den) <= 2):
        return _homomorphism_fast(x, y, order)
    sx = x.theta(order)
    sy = y.theta(order)
    sxy = (x * y).theta(order)
    lines = []
    for k in range(sxy.order + 1):
        acc = None
        for i in range(k + 1):
            term = sx[i] * sy[k - i]
            acc = term if acc is None else acc + term
        lines.append(CheckLine(f"theta^({k})(xy)", acc == sxy[k]))
    return AxiomReport(subject=f"{x} * {y}", lines=tuple(lines))


def _homomorphism_fast(x: MonoElem, y: MonoElem, order: int | None) -> AxiomReport:
    ctx = x.ctx
    if y.ctx is not ctx:
        raise ValueError("elements from different field contexts")
    if order is None:
        order = ctx.trunc
    fq = ctx.fq
    # run theta on the unnormalized product representation: the derivation is
    # well defined on fractions, so theta(num_x num_y / den_x den_y) equals
    # theta(xy) regardless of common factors; equality of the cleared
    # coefficients is then a polynomial identity, no normalization needed.
    den = polys.pmul(fq, x.den, y.den)
    num = polys.pmul(fq, x.num, y.num)
    prod_fs = _theta_frac(ctx, num, den, 1, order)
    fx = _theta_frac(ctx, x.num, x.den, 1, order)
    fy = _theta_frac(ctx, y.num, y.den, 1, order)
    dx_pow = [dict(polys.ONE)]
    dy_pow = [dict(polys.ONE)]
    for _ in range(order + 1):
        dx_pow.append(polys.pmul(fq, dx_pow[-1], x.den))
        dy_pow.append(polys.pmul(fq, dy_pow[-1], y.den))
    lines = []
    for k in range(order + 1):
        # sum over i of fx_i/dx^(i+1) * fy_(k-i)/dy^(k-i+1), brought to the
        # common denominator (dx dy)^(k+1)
        acc: dict = {}
        for i in range(k + 1):
            a = fx.polys_[i]
            b = fy.polys_[k - i]
            if a and b:
                term = polys.pmul(fq, a, b)
                term = polys.pmul(fq, term, dx_pow[k - i])
                term = polys.pmul(fq, term, dy_pow[i])
                acc = polys.padd(fq, acc, term)
        lines.append(CheckLine(f"theta^({k})(xy)", acc == prod_fs.polys_[k]))
    return AxiomReport(subject=f"{x} * {y}", lines=tuple(lines))


def verify_additivity(x, y, order: int | None = None) -> AxiomReport:
    sx = x.theta(order)
    sy = y.theta(order)
    sxy = (x + y).theta(order)
    lines = [CheckLine(f"theta^({k})(x+y)", sx[k] + sy[k] == sxy[k])
             for k in range(sxy.order + 1)]
    return AxiomReport(subject=f"{x} + {y}", lines=tuple(lines))


def derivation_constant(x, order: int | None = None) -> bool:
    """True iff theta^(n)(x) == 0 for all 1 <= n <= order (truncated test)."""
    ts = x.theta(order)
    return all(_elem_is_zero(ts[n]) for n in range(1, ts.order + 1))
