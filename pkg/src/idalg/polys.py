"""Internal two-variable (Laurent) polynomial helpers over GF(q).

A polynomial is a dict mapping exponent pairs (a, b) to nonzero field
codes; {} is zero.  The two slots are the exponents of the two monomial
generators of the ambient field (t and the transcendental parameter).
Negative exponents are allowed everywhere except in the gcd machinery,
which expects cleared (nonnegative) supports.

The gcd is the classic content / primitive-part pseudo-remainder
recursion over GF(q)[t][x]: exact, no factorization.  Treating the two
generators as independent variables is valid because the parameter is
transcendental over GF(q)(t).
"""

from __future__ import annotations

from .fq import Fq, is_prime

Poly = dict  # {(a, b): code}

ONE = {(0, 0): 1}


def pzero() -> Poly:
    return {}


def pconst(c: int) -> Poly:
    return {(0, 0): c} if c else {}


def is_monomial(f: Poly) -> bool:
    return len(f) == 1


def padd(fq: Fq, f: Poly, g: Poly) -> Poly:
    if not f:
        return dict(g)
    if not g:
        return dict(f)
    out = dict(f)
    if fq.k == 1:
        p = fq.p
        get = out.get
        for k, c in g.items():
            s = (get(k, 0) + c) % p
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out
    for k, c in g.items():
        s = fq.add(out.get(k, 0), c)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def pneg(fq: Fq, f: Poly) -> Poly:
    return {k: fq.neg(c) for k, c in f.items()}


def psub(fq: Fq, f: Poly, g: Poly) -> Poly:
    return padd(fq, f, pneg(fq, g))


def pscale(fq: Fq, f: Poly, c: int) -> Poly:
    if c == 0:
        return {}
    if c == 1:
        return dict(f)
    return {k: fq.mul(v, c) for k, v in f.items()}


def pterm_mul(fq: Fq, f: Poly, key: tuple[int, int], c: int) -> Poly:
    if c == 0 or not f:
        return {}
    da, db = key
    if c == 1:
        return {(a + da, b + db): v for (a, b), v in f.items()}
    return {(a + da, b + db): fq.mul(v, c) for (a, b), v in f.items()}


def pmul(fq: Fq, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return {}
    if len(f) > len(g):
        f, g = g, f
    if len(f) == 1:
        ((key, c),) = f.items()
        return pterm_mul(fq, g, key, c)
    out: Poly = {}
    if fq.k == 1:
        p = fq.p
        get = out.get
        gitems = list(g.items())
        for (a1, b1), c1 in f.items():
            for (a2, b2), c2 in gitems:
                k = (a1 + a2, b1 + b2)
                s = (get(k, 0) + c1 * c2) % p
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out
    mul, add = fq.mul, fq.add
    for (a1, b1), c1 in f.items():
        for (a2, b2), c2 in g.items():
            k = (a1 + a2, b1 + b2)
            s = add(out.get(k, 0), mul(c1, c2))
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def ppow(fq: Fq, f: Poly, m: int) -> Poly:
    if m < 0:
        raise ValueError("negative polynomial power")
    out = dict(ONE)
    base = f
    while m:
        if m & 1:
            out = pmul(fq, out, base)
        m >>= 1
        if m:
            base = pmul(fq, base, base)
    return out


def pfrobenius_pow(fq: Fq, f: Poly, ell: int) -> Poly:
    """f ** (p**ell) by the freshman's dream: termwise power."""
    pe = fq.p ** ell
    return {(a * pe, b * pe): fq.pow(c, pe) for (a, b), c in f.items()}


def pmin_exps(f: Poly) -> tuple[int, int]:
    return (min(a for a, _ in f), min(b for _, b in f))


def pshift(f: Poly, da: int, db: int) -> Poly:
    if da == 0 and db == 0:
        return dict(f)
    return {(a + da, b + db): c for (a, b), c in f.items()}


def least_key(f: Poly) -> tuple[int, int]:
    return min(f)


# -- univariate t-polynomials as dense tuples (gcd internals) ----------------

def _t_trim(u: list[int]) -> tuple[int, ...]:
    while u and u[-1] == 0:
        u.pop()
    return tuple(u)


def _t_add(fq: Fq, u, v):
    n = max(len(u), len(v))
    out = [0] * n
    if fq.k == 1:
        p = fq.p
        for i, c in enumerate(u):
            out[i] = c
        for i, c in enumerate(v):
            out[i] = (out[i] + c) % p
        return _t_trim(out)
    for i, c in enumerate(u):
        out[i] = c
    for i, c in enumerate(v):
        out[i] = fq.add(out[i], c)
    return _t_trim(out)


# Kronecker packing: 32 bits per coefficient is far beyond any convolution
# bound at the degrees this library sees (picked once, no per-call analysis).
_KRON_BITS = 32
_KRON_MASK = (1 << _KRON_BITS) - 1


def _t_mul(fq: Fq, u, v):
    if not u or not v:
        return ()
    if fq.k == 1:
        # pack into a single integer and use native bigint multiplication
        p = fq.p
        pu = pv = 0
        for a in reversed(u):
            pu = (pu << _KRON_BITS) | a
        for b in reversed(v):
            pv = (pv << _KRON_BITS) | b
        w = pu * pv
        out = []
        for _ in range(len(u) + len(v) - 1):
            out.append((w & _KRON_MASK) % p)
            w >>= _KRON_BITS
        return _t_trim(out)
    out = [0] * (len(u) + len(v) - 1)
    mul, add = fq.mul, fq.add
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    out[i + j] = add(out[i + j], mul(a, b))
    return _t_trim(out)


def _t_scale(fq: Fq, u, c):
    if c == 0:
        return ()
    return tuple(fq.mul(a, c) for a in u)


def _t_divmod(fq: Fq, u, v):
    if not v:
        raise ZeroDivisionError("t-polynomial division by zero")
    u = list(u)
    _t_trim(u)
    dv = len(v) - 1
    inv_lead = fq.inv(v[-1])
    q = [0] * max(len(u) - dv, 0)
    if fq.k == 1:
        p = fq.p
        while len(u) - 1 >= dv:
            c = (u[-1] * inv_lead) % p
            shift = len(u) - 1 - dv
            q[shift] = c
            if c:
                for i, a in enumerate(v):
                    u[shift + i] = (u[shift + i] - c * a) % p
            u.pop()
            _t_trim(u)
        return _t_trim(q), _t_trim(u)
    while len(u) - 1 >= dv:
        c = fq.mul(u[-1], inv_lead)
        shift = len(u) - 1 - dv
        q[shift] = c
        if c:
            for i, a in enumerate(v):
                u[shift + i] = fq.sub(u[shift + i], fq.mul(c, a))
        u.pop()
        _t_trim(u)
    return _t_trim(q), _t_trim(u)


def _t_gcd(fq: Fq, u, v):
    u, v = _t_trim(list(u)), _t_trim(list(v))
    while v:
        _, r = _t_divmod(fq, u, v)
        u, v = v, r
    if u:
        u = _t_scale(fq, u, fq.inv(u[-1]))  # monic
    return u


def _t_divexact(fq: Fq, u, v):
    q, r = _t_divmod(fq, u, v)
    if r:
        raise ArithmeticError("inexact t-polynomial division")
    return q


# -- layered view: poly in x with t-polynomial coefficients ------------------

def _to_layers(f: Poly) -> list:
    """Dense list over the x-degree; entry b is the t-coefficient tuple."""
    maxb = max(b for _, b in f)
    maxa = max(a for a, _ in f)
    rows = [[0] * (maxa + 1) for _ in range(maxb + 1)]
    for (a, b), c in f.items():
        rows[b][a] = c
    return [_t_trim(row) for row in rows]


def _from_layers(layers: list) -> Poly:
    out: Poly = {}
    for b, row in enumerate(layers):
        for a, c in enumerate(row):
            if c:
                out[(a, b)] = c
    return out


def _layers_trim(layers: list) -> list:
    while layers and not layers[-1]:
        layers.pop()
    return layers


def _layers_content(fq: Fq, layers: list):
    g = ()
    for row in layers:
        if row:
            g = _t_gcd(fq, g, row)
            if len(g) == 1:
                return g
    return g


def _layers_div_t(fq: Fq, layers: list, d) -> list:
    return [_t_divexact(fq, row, d) if row else () for row in layers]


def _layers_mul_t(fq: Fq, layers: list, d) -> list:
    return [_t_mul(fq, row, d) for row in layers]


# -- modular gcd in the x-variable --------------------------------------------
#
# Classical PRS schemes swell badly here, so the x-direction gcd is
# computed in one shot inside the big extension E = GF(q)[t]/(h) with h
# irreducible of degree beyond every t-degree the answer can have: the
# monic x-gcd over E, rescaled by the gcd of the leading coefficients,
# lifts coefficientwise to GF(q)[t] (degrees are input-bounded, unlike
# subresultants), and a trial division certifies the candidate.  Unlucky
# h (dividing the relevant subresultant) just moves on to the next one.


def _t_rem_monic(fq: Fq, u, h):
    """Remainder mod a monic h, exploiting sparse tails (the enumerated
    irreducibles have their support in the lowest coefficients)."""
    m = len(h) - 1
    if len(u) <= m:
        return _t_trim(list(u))
    u = list(u)
    tail = [(j, c) for j, c in enumerate(h[:-1]) if c]
    if fq.k == 1:
        p = fq.p
        for i in range(len(u) - 1, m - 1, -1):
            c = u[i]
            if c:
                u[i] = 0
                base = i - m
                for j, hc in tail:
                    u[base + j] = (u[base + j] - c * hc) % p
    else:
        for i in range(len(u) - 1, m - 1, -1):
            c = u[i]
            if c:
                u[i] = 0
                base = i - m
                for j, hc in tail:
                    u[base + j] = fq.sub(u[base + j], fq.mul(c, hc))
    return _t_trim(u)


def _t_powmod(fq: Fq, base, e: int, mod):
    res = (1,)
    base = _t_rem_monic(fq, base, mod)
    while e:
        if e & 1:
            res = _t_rem_monic(fq, _t_mul(fq, res, base), mod)
        base = _t_rem_monic(fq, _t_mul(fq, base, base), mod)
        e >>= 1
    return res


def _t_is_irreducible(fq: Fq, h) -> bool:
    m = len(h) - 1
    t = (0, 1)
    tq = _t_powmod(fq, t, fq.q ** m, h)
    if _t_add(fq, tq, _t_scale(fq, t, fq.neg(1))):
        return False
    mm = m
    r = 2
    primes = []
    while r * r <= mm:
        if mm % r == 0:
            primes.append(r)
            while mm % r == 0:
                mm //= r
        r += 1
    if mm > 1:
        primes.append(mm)
    for r in primes:
        tr = _t_powmod(fq, t, fq.q ** (m // r), h)
        diff = _t_add(fq, tr, _t_scale(fq, t, fq.neg(1)))
        if not diff or len(_t_gcd(fq, diff, h)) != 1:
            return False
    return True


_irreducible_cache: dict = {}


def _irreducible_t_poly(fq: Fq, degree: int, index: int):
    """The index-th monic irreducible of given degree over GF(q), found by
    enumerating tail coefficient codes; deterministic and cached."""
    key = (fq.p, fq.k, degree)
    found = _irreducible_cache.setdefault(key, [])
    code = (found[-1][1] + 1) if found else 0
    while len(found) <= index:
        tail = []
        c = code
        for _ in range(degree):
            c, r = divmod(c, fq.q)
            tail.append(r)
        h = tuple(tail) + (1,)
        if _t_is_irreducible(fq, h):
            found.append((h, code))
        code += 1
        if code > fq.q ** degree:
            raise AssertionError("ran out of modulus candidates")
    return found[index][0]


def _t_inv_mod(fq: Fq, a, h):
    r0, r1 = h, _t_rem_monic(fq, a, h)
    s0, s1 = (), (1,)
    while r1:
        q, r = _t_divmod(fq, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _t_add(fq, s0, _t_scale(fq, _t_mul(fq, q, s1), fq.neg(1)))
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible modulo h")
    return _t_rem_monic(fq, _t_scale(fq, s0, fq.inv(r0[0])), h)


def _x_gcd_mod_h(fq: Fq, F: list, G: list, h) -> list | None:
    """Monic x-gcd of the reductions of F, G in GF(q)[t]/(h); None when a
    leading coefficient dies under reduction (pick another h)."""

    def red(layers):
        out = [_t_rem_monic(fq, row, h) for row in layers]
        while out and not out[-1]:
            out.pop()
        return out

    f = red(F)
    g = red(G)
    if len(f) != len(F) or len(g) != len(G):
        return None
    if len(f) < len(g):
        f, g = g, f
    neg1 = fq.neg(1)
    while g:
        inv = _t_inv_mod(fq, g[-1], h)
        g = [(_t_rem_monic(fq, _t_mul(fq, row, inv), h) if row else ())
             for row in g]
        dg = len(g) - 1
        f = list(f)
        while len(f) - 1 >= dg:
            lf = f[-1]
            if lf:
                shift = len(f) - 1 - dg
                for i in range(dg):
                    if g[i]:
                        term = _t_rem_monic(fq, _t_mul(fq, g[i], lf), h)
                        f[shift + i] = _t_add(fq, f[shift + i],
                                              _t_scale(fq, term, neg1))
            f.pop()
            while f and not f[-1]:
                f.pop()
        f, g = g, f
    inv = _t_inv_mod(fq, f[-1], h)
    return [(_t_rem_monic(fq, _t_mul(fq, row, inv), h) if row else ())
            for row in f]


def _layers_tdeg(layers: list) -> int:
    return max((len(row) - 1 for row in layers if row), default=0)


_BUCKET_PRIMES = (7, 11, 17, 23, 37, 53, 79, 127, 191, 283, 431, 647, 971)


def _degree_bucket(bound: int) -> int:
    """Smallest catalogued prime above ``bound``.

    Prime degrees make the irreducibility test a two-powmod affair, and the
    short ladder keeps the per-(q, degree) modulus cache hot.
    """
    for m in _BUCKET_PRIMES:
        if m > bound:
            return m
    m = bound + 1
    while not is_prime(m):
        m += 1
    return m


def _x_gcd_primitive(fq: Fq, fp: list, gp: list) -> list:
    """gcd of two primitive layered polynomials; primitive layered result."""
    gamma = _t_gcd(fq, fp[-1], gp[-1])
    # the true gcd has t-degree at most min of the inputs and its leading
    # coefficient divides gamma, so this bound keeps the lift faithful
    bound = min(_layers_tdeg(fp), _layers_tdeg(gp)) + len(gamma) + 1
    bound = _degree_bucket(bound)
    for attempt in range(25):
        h = _irreducible_t_poly(fq, bound, attempt)
        ge = _x_gcd_mod_h(fq, fp, gp, h)
        if ge is None:
            continue
        if len(ge) == 1:
            return [(1,)]
        # lift gamma * monic gcd: true coefficient degrees stay below deg h
        rows = [(_t_rem_monic(fq, _t_mul(fq, row, gamma), h) if row else ())
                for row in ge]
        cont = _layers_content(fq, rows)
        if len(cont) > 1:
            rows = _layers_div_t(fq, rows, cont)
        cand = _from_layers(rows)
        try:
            pdivexact(fq, _from_layers(fp), cand)
            pdivexact(fq, _from_layers(gp), cand)
        except ArithmeticError:
            continue  # unlucky modulus
        return rows
    raise AssertionError("modular gcd failed to stabilize")


def gcd2(fq: Fq, f: Poly, g: Poly) -> Poly:
    """gcd in GF(q)[t, x]; inputs need nonnegative exponents.

    Canonically scaled so the least monomial has coefficient 1.
    """
    if not f:
        return _canon_scale(fq, dict(g))
    if not g:
        return _canon_scale(fq, dict(f))
    lf = _to_layers(f)
    lg = _to_layers(g)
    cf = _layers_content(fq, lf)
    cg = _layers_content(fq, lg)
    c = _t_gcd(fq, cf, cg)
    fp = _layers_div_t(fq, lf, cf)
    gp = _layers_div_t(fq, lg, cg)
    if len(fp) == 1 or len(gp) == 1:
        h = [(1,)]
    else:
        h = _x_gcd_primitive(fq, fp, gp)
    out = _from_layers(_layers_mul_t(fq, h, c))
    return _canon_scale(fq, out)


def _canon_scale(fq: Fq, f: Poly) -> Poly:
    if not f:
        return f
    c = f[least_key(f)]
    if c == 1:
        return f
    return pscale(fq, f, fq.inv(c))


def pdivexact(fq: Fq, f: Poly, g: Poly) -> Poly:
    """Exact division in GF(q)[t, x]; raises if g does not divide f."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(g) == 1:
        ((ka, kb), c), = g.items()
        inv = fq.inv(c)
        return {(a - ka, b - kb): fq.mul(v, inv) for (a, b), v in f.items()}
    rem = dict(f)
    out: Poly = {}
    # long division wrt the (b, a)-lex leading term; terminates because the
    # leading monomial strictly drops and divisibility is assumed.
    gl = max(g, key=lambda k: (k[1], k[0]))
    glc_inv = fq.inv(g[gl])
    while rem:
        rl = max(rem, key=lambda k: (k[1], k[0]))
        da, db = rl[0] - gl[0], rl[1] - gl[1]
        if da < 0 or db < 0:
            raise ArithmeticError("inexact polynomial division")
        c = fq.mul(rem[rl], glc_inv)
        out[(da, db)] = c
        rem = psub(fq, rem, pterm_mul(fq, g, (da, db), c))
    return out


def reduce_fraction(fq: Fq, num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Cancel gcd(num, den); inputs cleared, output cleared and coprime."""
    if not num:
        return {}, dict(ONE)
    if is_monomial(num) or is_monomial(den):
        return dict(num), dict(den)
    g = gcd2(fq, num, den)
    if is_monomial(g) and (0, 0) in g:
        return dict(num), dict(den)
    return pdivexact(fq, num, g), pdivexact(fq, den, g)


def reduce_fraction_power(fq: Fq, num: Poly, den: Poly, m: int) -> tuple[Poly, Poly]:
    """Reduce num / den**m without ever forming gcd(num, den**m).

    Repeatedly strips gcd(num, den); the removed product divides den**m
    exactly and the final pair is coprime (valuation argument per prime
    factor).  Inputs must be cleared of monomial factors.
    """
    if not num:
        return {}, dict(ONE)
    if m == 0:
        return dict(num), dict(ONE)
    if is_monomial(den):
        return dict(num), ppow(fq, den, m)
    removed: list[Poly] = []
    cur = dict(num)
    for _ in range(m):
        g = gcd2(fq, cur, den)
        if is_monomial(g) and (0, 0) in g:
            break
        cur = pdivexact(fq, cur, g)
        removed.append(g)
    denm = ppow(fq, den, m)
    if removed:
        prod = removed[0]
        for g in removed[1:]:
            prod = pmul(fq, prod, g)
        denm = pdivexact(fq, denm, prod)
    return cur, denm
