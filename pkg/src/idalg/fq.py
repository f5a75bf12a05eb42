"""Arithmetic in the finite fields GF(p^k).

Field elements are plain integers in ``range(p**k)``: the integer
``sum(c_i * p**i)`` encodes the element ``sum(c_i * X**i)`` in a fixed
polynomial basis ``{1, X, ..., X**(k-1)}`` over GF(p).  The basis is cut
out by the lexicographically smallest monic irreducible polynomial of
degree k over GF(p), chosen deterministically from (p, k) so that a
field and every serialized element are reproducible across sessions.

For k == 1 everything is modular arithmetic on ints.  For k > 1
multiplication, inversion and powering go through discrete exp/log
tables of the cyclic group GF(q)^*, which is plenty fast for the small
fields this library targets.  ``Fq`` instances are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import functools


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense GF(p)[X] helpers used only to pick the modulus --------------------

def _ptrim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmulmod(f: list[int], g: list[int], m: list[int], p: int) -> list[int]:
    res = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                res[i + j] = (res[i + j] + a * b) % p
    return _pmod(res, m, p)


def _pmod(f: list[int], m: list[int], p: int) -> list[int]:
    f = list(f)
    _ptrim(f)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(f) - 1 >= dm:
        shift = len(f) - 1 - dm
        c = (f[-1] * inv_lead) % p
        if c:
            for i, a in enumerate(m):
                f[shift + i] = (f[shift + i] - c * a) % p
        f.pop()
        _ptrim(f)
    return f


def _ppowmod(f: list[int], e: int, m: list[int], p: int) -> list[int]:
    res = [1]
    base = _pmod(f, m, p)
    while e:
        if e & 1:
            res = _pmulmod(res, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return res


def _pgcd(f: list[int], g: list[int], p: int) -> list[int]:
    f, g = _ptrim(list(f)), _ptrim(list(g))
    while g:
        f = _pmod(f, g, p)
        f, g = g, f
    return f


def _is_irreducible(m: list[int], p: int) -> bool:
    # m monic of degree k: irreducible iff X^(p^k) == X mod m and
    # gcd(X^(p^(k/r)) - X, m) == 1 for every prime r | k.
    k = len(m) - 1
    x = [0, 1]
    xq = _ppowmod(x, p ** k, m, p)
    diff = _ptrim([(a - b) % p for a, b in
                   zip(xq + [0] * len(x), x + [0] * len(xq))])
    if diff:
        return False
    for r in _prime_factors(k):
        xr = _ppowmod(x, p ** (k // r), m, p)
        diff = _ptrim([(a - b) % p for a, b in
                       zip(xr + [0] * len(x), x + [0] * len(xr))])
        if not diff or len(_pgcd(diff, m, p)) != 1:
            return False
    return True


def _find_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over GF(p)."""
    for code in range(p ** k):
        coeffs = []
        c = code
        for _ in range(k):
            c, r = divmod(c, p)
            coeffs.append(r)
        m = coeffs + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # unreachable


@functools.lru_cache(maxsize=None)
def get_field(p: int, k: int = 1) -> "Fq":
    return Fq(p, k)


class Fq:
    """The field GF(p^k); elements are ints in range(p**k)."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p ** k
        self.zero = 0
        self.one = 1
        if k == 1:
            self.modulus = (0, 1)
            self._exp = None
            self._log = None
        else:
            self.modulus = _find_modulus(p, k)
            self._build_tables()

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        # smallest generator of GF(q)^*
        factors = _prime_factors(q - 1)
        g = None
        for cand in range(2, q):
            if all(self._pow_slow(cand, (q - 1) // r) != 1 for r in factors):
                g = cand
                break
        assert g is not None
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._mul_slow(exp[i - 1], g)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log
        self.generator = g

    # slow paths used only during table construction
    def _mul_slow(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        fa = self.decode(a)
        fb = self.decode(b)
        prod = [0] * (2 * k - 1)
        for i, ca in enumerate(fa):
            if ca:
                for j, cb in enumerate(fb):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        prod = _pmod(prod, list(self.modulus), p)
        return self.encode(prod)

    def _pow_slow(self, a: int, e: int) -> int:
        res = 1
        while e:
            if e & 1:
                res = self._mul_slow(res, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return res

    def decode(self, a: int) -> list[int]:
        """Coordinate vector of a over GF(p) in the polynomial basis."""
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def encode(self, coeffs: list[int]) -> int:
        a = 0
        for c in reversed(coeffs):
            a = a * self.p + (c % self.p)
        return a

    def of_int(self, n: int) -> int:
        """Image of the rational integer n under Z -> GF(q)."""
        return n % self.p

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out, mult = 0, 1
        for _ in range(self.k):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        out, mult = 0, 1
        for _ in range(self.k):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(q)")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero in GF(q)")
            return 0 if e else 1
        if self.k == 1:
            return pow(a, e % (self.p - 1), self.p)
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        """x -> x^p, an automorphism (GF(q) is perfect)."""
        return self.pow(a, self.p)

    def p_root(self, a: int) -> int:
        """The unique p-th root: inverse of Frobenius, x -> x^(p^(k-1))."""
        return self.pow(a, self.p ** (self.k - 1))

    def elements(self):
        return range(self.q)

    def __eq__(self, other) -> bool:
        return isinstance(other, Fq) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((Fq, self.p, self.k))

    def __repr__(self) -> str:
        return f"Fq({self.p}, {self.k})"
