"""Digit oracles and exact arithmetic in the exponent group Z + Z*alpha.

Monomial exponents in this library are elements ``a + b*alpha`` of the
group Z + Z*alpha sitting inside the p-adic integers Z_p, where the
base-p digit stream of alpha is produced by a ``DigitOracle``.  Because
1 and alpha are Z-linearly independent whenever alpha is irrational,
the integer pair (a, b) is a faithful representation and all group
arithmetic is exact integer arithmetic.

Digit extraction and binomial coefficients are the only places where
the stream itself is consulted.  Every oracle carries a digit budget;
queries past the budget raise :class:`PrecisionError` instead of
silently truncating.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field


class PrecisionError(Exception):
    """Raised when an operation would need digits beyond the session budget."""


class DigitOracle:
    """Deterministic base-p digit stream for a p-adic integer.

    Subclasses implement ``_digit(i)`` returning an int in [0, p).
    Instances are immutable and safe for concurrent reads.
    """

    def __init__(self, p: int, budget: int, irrational: bool, spec: str):
        self.p = p
        self.budget = budget
        self.irrational = irrational
        self.spec = spec

    def digit(self, i: int) -> int:
        if i < 0:
            raise ValueError("digit index must be >= 0")
        if i >= self.budget:
            raise PrecisionError(
                f"insufficient precision: digit {i} requested, budget {self.budget}")
        d = self._digit(i)
        if not 0 <= d < self.p:
            raise ValueError(f"oracle produced digit {d} outside [0, {self.p})")
        return d

    def _digit(self, i: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def integer_prefix(self, count: int) -> int:
        """sum(d_i * p**i for i < count), the canonical truncation mod p^count."""
        total, mult = 0, 1
        for i in range(count):
            total += self.digit(i) * mult
            mult *= self.p
        return total

    def shifted(self, levels: int) -> "DigitOracle":
        """The stream with the first ``levels`` digits removed."""
        if levels == 0:
            return self
        return ShiftedOracle(self, levels)

    @property
    def key(self) -> tuple:
        """Value identity: oracles with equal keys produce equal streams."""
        return (self.p, self.spec)

    def __repr__(self) -> str:
        return f"<DigitOracle {self.spec!r} p={self.p} budget={self.budget}>"


class SquaresOracle(DigitOracle):
    """d_i = 1 if i is a perfect square else 0; not eventually periodic."""

    def __init__(self, p: int, budget: int):
        super().__init__(p, budget, irrational=True, spec="squares")

    def _digit(self, i: int) -> int:
        r = math.isqrt(i)
        return 1 if r * r == i else 0


class OnesOracle(DigitOracle):
    """The all-ones stream; periodic, hence a rational value (flagged so)."""

    def __init__(self, p: int, budget: int):
        super().__init__(p, budget, irrational=False, spec="ones")

    def _digit(self, i: int) -> int:
        return 1


class ExplicitOracle(DigitOracle):
    """A finite digit list, zero-extended; always flagged non-irrational."""

    def __init__(self, p: int, budget: int, digits: tuple[int, ...]):
        if any(not 0 <= d < p for d in digits):
            raise ValueError(f"explicit digits must lie in [0, {p})")
        spec = "explicit:" + ",".join(str(d) for d in digits)
        super().__init__(p, budget, irrational=False, spec=spec)
        self._digits = tuple(digits)

    def _digit(self, i: int) -> int:
        return self._digits[i] if i < len(self._digits) else 0


class ShiftedOracle(DigitOracle):
    def __init__(self, parent: DigitOracle, levels: int):
        # collapse nested shifts so equal streams get equal keys
        if isinstance(parent, ShiftedOracle):
            levels += parent.levels
            parent = parent.parent
        super().__init__(parent.p, max(parent.budget - levels, 0),
                         parent.irrational, f"{parent.spec}>>{levels}")
        self.parent = parent
        self.levels = levels

    def _digit(self, i: int) -> int:
        return self.parent.digit(i + self.levels)


class FunctionOracle(DigitOracle):
    """Wraps a user function; memoizes under a lock so repeated queries agree."""

    def __init__(self, p: int, budget: int, fn, irrational: bool, spec: str):
        super().__init__(p, budget, irrational, spec)
        self._fn = fn
        self._memo: dict[int, int] = {}
        self._lock = threading.Lock()

    def _digit(self, i: int) -> int:
        with self._lock:
            if i not in self._memo:
                self._memo[i] = int(self._fn(i))
            return self._memo[i]


def oracle_from_spec(spec: str, p: int, budget: int) -> DigitOracle:
    """Build an oracle from a CLI spec string.

    Accepted forms: ``squares``, ``ones``, ``explicit:<d0,d1,...>``.
    """
    if spec == "squares":
        return SquaresOracle(p, budget)
    if spec == "ones":
        return OnesOracle(p, budget)
    if spec.startswith("explicit:"):
        body = spec[len("explicit:"):]
        try:
            digits = tuple(int(s) for s in body.split(",")) if body else ()
        except ValueError:
            raise ValueError(f"bad explicit digit list: {body!r}") from None
        return ExplicitOracle(p, budget, digits)
    raise ValueError(f"unknown digit oracle spec {spec!r}")


def looks_eventually_periodic(oracle: DigitOracle, window: int | None = None) -> bool:
    """Heuristic periodicity scan of the first ``window`` digits.

    Returns True when some pre-period r and period q (both <= window // 3)
    explain every digit in the window, i.e. the stream is consistent with a
    rational value at this precision.  A False verdict certifies nothing
    beyond the window; it is the best a finite check can do.
    """
    if window is None:
        window = oracle.budget
    window = min(window, oracle.budget)
    digs = [oracle.digit(i) for i in range(window)]
    bound = max(window // 3, 1)
    for q in range(1, bound + 1):
        for r in range(bound + 1):
            if r + 2 * q > window:
                break
            if all(digs[i] == digs[i + q] for i in range(r, window - q)):
                return True
    return False


@dataclass(frozen=True)
class PadicExponent:
    """An exponent a + b*alpha with alpha given by ``oracle``.

    ``oracle`` may be None only when b == 0 (plain integers).  Equality is
    equality of the (a, b) pair over the same digit stream; this is sound
    because (a, b) determines the value uniquely when alpha is irrational.
    """

    a: int
    b: int
    p: int
    oracle: DigitOracle | None = field(default=None)

    def __post_init__(self):
        if self.b != 0 and self.oracle is None:
            raise ValueError("an irrational part needs a digit oracle")
        if self.oracle is not None and self.oracle.p != self.p:
            raise ValueError("oracle characteristic mismatch")

    def is_integer(self) -> bool:
        return self.b == 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def digits(self, count: int) -> list[int]:
        """First ``count`` base-p digits of a + b*alpha, carries included.

        Negative integers expand with the usual infinite (p-1)-tail, of
        which this returns the truncation.
        """
        if count < 0:
            raise ValueError("digit count must be >= 0")
        if self.b == 0:
            total = self.a
        else:
            total = self.a + self.b * self.oracle.integer_prefix(count)
        total %= self.p ** count if count else 1
        out = []
        for _ in range(count):
            total, r = divmod(total, self.p)
            out.append(r)
        return out

    def lucas_binom(self, n: int) -> int:
        """binom(a + b*alpha, n) mod p via the digitwise product.

        Agrees with the factorial formula whenever the exponent is an
        integer >= n.  Needs ceil(log_p(n+1)) digits; raises
        :class:`PrecisionError` past the budget, never a wrong value.
        """
        if n < 0:
            raise ValueError("binomial lower index must be >= 0")
        if n == 0:
            return 1
        ndigits = []
        m = n
        while m:
            m, r = divmod(m, self.p)
            ndigits.append(r)
        bdigits = self.digits(len(ndigits))
        res = 1
        for bd, nd in zip(bdigits, ndigits):
            res = (res * math.comb(bd, nd)) % self.p
            if res == 0:
                return 0
        return res

    def _check_compatible(self, other: "PadicExponent") -> DigitOracle | None:
        if self.p != other.p:
            raise ValueError("exponent characteristic mismatch")
        if self.b == 0:
            return other.oracle
        if other.b == 0:
            return self.oracle
        if self.oracle is other.oracle or self.oracle.key == other.oracle.key:
            return self.oracle
        raise ValueError("exponents over distinct digit streams cannot be combined")

    def __add__(self, other: "PadicExponent") -> "PadicExponent":
        return combine_exponents(1, self, 1, other)

    def __sub__(self, other: "PadicExponent") -> "PadicExponent":
        return combine_exponents(1, self, -1, other)

    def __rmul__(self, c: int) -> "PadicExponent":
        return PadicExponent(c * self.a, c * self.b, self.p, self.oracle)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PadicExponent):
            return NotImplemented
        if (self.a, self.b, self.p) != (other.a, other.b, other.p):
            return False
        if self.b == 0:
            return True
        return self.oracle is other.oracle or self.oracle.key == other.oracle.key

    def __hash__(self) -> int:
        okey = None if self.b == 0 else self.oracle.key
        return hash((self.a, self.b, self.p, okey))

    def __repr__(self) -> str:
        if self.b == 0:
            return f"PadicExponent({self.a})"
        return f"PadicExponent({self.a} + {self.b}*alpha)"


def combine_exponents(c1: int, beta1: PadicExponent,
                      c2: int, beta2: PadicExponent) -> PadicExponent:
    """c1*beta1 + c2*beta2 as a new exponent over the common stream."""
    oracle = beta1._check_compatible(beta2)
    a = c1 * beta1.a + c2 * beta2.a
    b = c1 * beta1.b + c2 * beta2.b
    return PadicExponent(a, b, beta1.p, oracle)


def digits(beta: PadicExponent, count: int) -> list[int]:
    return beta.digits(count)


def lucas_binom(beta: PadicExponent, n: int) -> int:
    return beta.lucas_binom(n)


def int_binom_mod(n: int, i: int, p: int) -> int:
    """binom(n, i) mod p for ordinary nonnegative integers (Lucas product)."""
    if i < 0 or i > n:
        return 0
    res = 1
    while i:
        n, nd = divmod(n, p)
        i, id_ = divmod(i, p)
        res = (res * math.comb(nd, id_)) % p
        if res == 0:
            return 0
    return res
