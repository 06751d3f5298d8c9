"""Exact scalar fields: the rationals and prime fields F_p with p >= 5.

Scalars are plain Python values: ``Fraction`` over the rationals, canonical
residues ``0..p-1`` (ints) over a prime field.  A ``Field`` instance carries
the arithmetic; it is immutable and shareable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatchError, NiljError, RootNotInFieldError

MAX_ROOT_SEARCH_P = 101  # exhaustive root search is only supported this far


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the prime field F_p with p >= 5."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not is_prime(self.p):
                raise NiljError(f"modulus {self.p} is not prime")
            if self.p < 5:
                raise NiljError(f"prime field F_{self.p} not supported (need p >= 5)")

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def __repr__(self):
        return "Q" if self.p is None else f"F{self.p}"

    # -- element constructors ------------------------------------------------

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def of(self, value):
        """Coerce an int, Fraction or scalar string into this field."""
        if isinstance(value, int):
            return value % self.p if self.p is not None else Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        if self.p is None:
            return Fraction(value)
        frac = Fraction(value)
        den = frac.denominator % self.p
        if den == 0:
            raise FieldMismatchError(f"denominator of {value} vanishes mod {self.p}")
        return frac.numerator * pow(den, -1, self.p) % self.p

    def parse(self, text: str):
        """Parse "3/4" or "-2" (rationals also accepted over F_p, reduced)."""
        try:
            frac = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise NiljError(f"bad scalar literal {text!r}") from exc
        return self.of(frac)

    def fmt(self, x) -> str:
        return str(x)

    # -- arithmetic ------------------------------------------------------------

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverting zero field element")
        return pow(a, -1, self.p) if self.p is not None else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not a

    # -- roots -----------------------------------------------------------------

    def sqrt(self, a):
        return self.nth_root(a, 2)

    def nth_root(self, a, n: int):
        """An exact n-th root in this field, or None.

        F_p roots are found by exhaustive search (p <= 101); over the
        rationals only exact rational roots are returned.
        """
        if self.p is not None:
            if self.p > MAX_ROOT_SEARCH_P:
                raise NiljError(f"root search not supported for p > {MAX_ROOT_SEARCH_P}")
            for x in range(self.p):
                if pow(x, n, self.p) == a % self.p:
                    return x
            return None
        frac = Fraction(a)
        if frac < 0 and n % 2 == 0:
            return None
        sign = -1 if frac < 0 else 1
        num, den = abs(frac.numerator), frac.denominator
        rn = _int_nth_root(num, n)
        rd = _int_nth_root(den, n)
        if rn is None or rd is None:
            return None
        return sign * Fraction(rn, rd)

    def sqrt_or_raise(self, a):
        root = self.sqrt(a)
        if root is None:
            raise RootNotInFieldError(a, 2)
        return root

    def elements(self):
        if self.p is None:
            raise NiljError("cannot enumerate the rationals")
        return range(self.p)


def _int_nth_root(m: int, n: int) -> int | None:
    if m == 0:
        return 0
    r = round(m ** (1.0 / n))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**n == m:
            return cand
    # float seed can be off for large m; fall back to integer bisection
    lo, hi = 0, 1 << (m.bit_length() // n + 2)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid**n
        if v == m:
            return mid
        if v < m:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


QQ = Field()


def same_field(a: Field, b: Field) -> Field:
    if a != b:
        raise FieldMismatchError(f"mixed fields {a} and {b}")
    return a
