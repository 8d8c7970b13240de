"""Exact arithmetic relative to a fixed prime p.

Everything downstream works in the log domain: a positive quantity q is
carried as the exponent t with q = p^(-t), so products become sums and the
ultrametric becomes a min.  Two kinds of values appear:

* ``Ord`` -- a single valuation exponent t in QQ, or +infinity (the
  valuation of 0).  Encodes absolute values |x| = p^(-ord(x)) and radii
  r = p^(-t).
* ``PPowerSum`` -- a finite formal sum of positive p-power terms
  sum_i c_i * p^(e_i) with c_i a positive p-unit rational and the e_i
  rational, pairwise inequivalent mod ZZ.  This is the currency for metric
  values (which are differences of p-powers) and Lipschitz bounds (which
  carry integer factors like d * p^t).

Normal forms are canonical: powers of p with exponents in distinct classes
mod ZZ are linearly independent over QQ (x^m - p is Eisenstein), so value
equality is syntactic equality of normal forms.  Strict comparison of
unequal values is decided by refining dyadic enclosures of p^(1/m).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, getcontext
from fractions import Fraction
from math import floor, lcm

from .errors import ParseError

__all__ = [
    "PrimeContext",
    "Ord",
    "ORD_INF",
    "is_prime",
    "ord_p",
    "int_val",
    "PPowerSum",
    "PPOW_ZERO",
    "ppow_normalize",
    "ppow_term",
    "ppow_from_radius_ord",
    "ppow_add",
    "ppow_scale",
    "ppow_mul",
    "ppow_compare",
    "ppow_max",
    "ppow_decimal",
    "parse_fraction",
    "format_fraction",
]


# ---------------------------------------------------------------------------
# primality
# ---------------------------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Miller-Rabin with these witnesses is deterministic below this bound
# (Sorenson & Webster).
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic primality test for the context prime."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    if n >= _MR_DETERMINISTIC_BOUND:
        raise ValueError(f"prime candidate {n} exceeds the deterministic test bound")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeContext:
    """A fixed prime p; the base of every absolute value and radius."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")


# ---------------------------------------------------------------------------
# valuations
# ---------------------------------------------------------------------------


def int_val(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True, slots=True)
class Ord:
    """A valuation exponent t in QQ, or +infinity; |x| = p^(-t).

    Total order with +infinity as the maximum.  Addition and integer
    scaling follow valuation arithmetic (infinity is absorbing).
    """

    _v: Fraction | None  # None encodes +infinity

    @staticmethod
    def of(value) -> "Ord":
        return Ord(Fraction(value))

    @staticmethod
    def inf() -> "Ord":
        return ORD_INF

    @property
    def is_inf(self) -> bool:
        return self._v is None

    @property
    def frac(self) -> Fraction:
        if self._v is None:
            raise ValueError("infinite Ord has no finite value")
        return self._v

    def __add__(self, other) -> "Ord":
        o = other if isinstance(other, Ord) else Ord.of(other)
        if self._v is None or o._v is None:
            return ORD_INF
        return Ord(self._v + o._v)

    __radd__ = __add__

    def __sub__(self, other) -> "Ord":
        o = other if isinstance(other, Ord) else Ord.of(other)
        if o._v is None:
            raise ValueError("cannot subtract an infinite Ord")
        if self._v is None:
            return ORD_INF
        return Ord(self._v - o._v)

    def __mul__(self, k) -> "Ord":
        k = Fraction(k)
        if self._v is None:
            if k <= 0:
                raise ValueError("cannot scale infinite Ord by a nonpositive factor")
            return ORD_INF
        return Ord(self._v * k)

    __rmul__ = __mul__

    def __neg__(self) -> "Ord":
        if self._v is None:
            raise ValueError("cannot negate infinite Ord")
        return Ord(-self._v)

    def _key(self, other):
        o = other if isinstance(other, Ord) else Ord.of(other)
        return self._v, o._v

    def __lt__(self, other) -> bool:
        a, b = self._key(other)
        if a is None:
            return False
        if b is None:
            return True
        return a < b

    def __le__(self, other) -> bool:
        return self == other or self < other

    def __gt__(self, other) -> bool:
        o = other if isinstance(other, Ord) else Ord.of(other)
        return o < self

    def __ge__(self, other) -> bool:
        return self == other or self > other

    def __eq__(self, other) -> bool:
        if isinstance(other, Ord):
            return self._v == other._v
        if isinstance(other, (int, Fraction)):
            return self._v == Fraction(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._v)

    def __str__(self) -> str:
        return "inf" if self._v is None else format_fraction(self._v)

    def __repr__(self) -> str:
        return f"Ord({self})"


ORD_INF = Ord(None)


def ord_p(p: int, x) -> Ord:
    """Exact p-adic valuation of a rational; ord_p(0) = +infinity."""
    x = Fraction(x)
    if x == 0:
        return ORD_INF
    return Ord.of(int_val(abs(x.numerator), p) - int_val(x.denominator, p))


# ---------------------------------------------------------------------------
# rational string forms ("num/den", denominator omitted when 1)
# ---------------------------------------------------------------------------


def parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad rational {s!r}: {e}") from None


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# symbolic sums of p-powers
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PPowerSum:
    """Normal-form finite sum of positive p-power terms.

    ``terms`` is a tuple of (coefficient, exponent) pairs meaning
    sum c * p^e, with every coefficient a positive p-unit rational,
    exponents pairwise inequivalent mod ZZ, sorted descending.  The empty
    sum is the value 0.  Build through :func:`ppow_normalize`.
    """

    terms: tuple[tuple[Fraction, Fraction], ...]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{format_fraction(c)}*p^{format_fraction(e)}" for c, e in self.terms
        )

    def __repr__(self) -> str:
        return f"PPowerSum({self})"


PPOW_ZERO = PPowerSum(())


def ppow_normalize(p: int, terms) -> PPowerSum:
    """Merge raw (coefficient, exponent) terms into normal form.

    Terms whose exponents differ by integers are commensurable and are
    summed exactly; cancellation to zero drops the class, while a negative
    net value is rejected (all quantities in scope are non-negative).
    Residual p-valuation of a coefficient is folded into the exponent so
    every surviving coefficient is a p-unit.
    """
    groups: dict[Fraction, list[tuple[Fraction, Fraction]]] = {}
    for coef, exp in terms:
        coef, exp = Fraction(coef), Fraction(exp)
        if coef == 0:
            continue
        cls = exp - floor(exp)
        groups.setdefault(cls, []).append((coef, exp))
    out = []
    for cls, items in groups.items():
        base = min(e for _, e in items)
        total = Fraction(0)
        for coef, exp in items:
            total += coef * Fraction(p) ** int(exp - base)
        if total == 0:
            continue
        if total < 0:
            raise ValueError("non-positive term")
        v = int_val(total.numerator, p) - int_val(total.denominator, p)
        unit = total / Fraction(p) ** v
        out.append((unit, base + v))
    out.sort(key=lambda t: t[1], reverse=True)
    return PPowerSum(tuple(out))


def ppow_term(p: int, coef, exp) -> PPowerSum:
    return ppow_normalize(p, [(Fraction(coef), Fraction(exp))])


def ppow_from_radius_ord(p: int, t: Ord) -> PPowerSum:
    """The value p^(-t) as a sum; an infinite exponent gives 0."""
    if t.is_inf:
        return PPOW_ZERO
    return ppow_term(p, 1, -t.frac)


def ppow_add(p: int, *sums: PPowerSum) -> PPowerSum:
    raw = [term for s in sums for term in s.terms]
    return ppow_normalize(p, raw)


def ppow_scale(p: int, s: PPowerSum, factor) -> PPowerSum:
    factor = Fraction(factor)
    if factor < 0:
        raise ValueError("non-positive term")
    return ppow_normalize(p, [(c * factor, e) for c, e in s.terms])


def ppow_mul(p: int, a: PPowerSum, b: PPowerSum) -> PPowerSum:
    raw = [(ca * cb, ea + eb) for ca, ea in a.terms for cb, eb in b.terms]
    return ppow_normalize(p, raw)


def _sum_bounds(terms, lo: Fraction, hi: Fraction):
    """Interval bounds of sum c * X^k for X in [lo, hi], all c > 0."""
    lo_val = Fraction(0)
    hi_val = Fraction(0)
    for c, k in terms:
        if k >= 0:
            lo_val += c * lo**k
            hi_val += c * hi**k
        else:
            lo_val += c * hi**k
            hi_val += c * lo**k
    return lo_val, hi_val


def _root_terms(s: PPowerSum, m: int):
    return [(c, int(e * m)) for c, e in s.terms]


def ppow_compare(p: int, a: PPowerSum, b: PPowerSum) -> int:
    """Exact comparison of values: -1, 0 or +1.

    Equal values have identical normal forms.  Otherwise the difference is
    strict; with m the lcm of the exponent denominators, both sides are
    polynomials in X = p^(1/m) with positive coefficients, and a bisected
    dyadic enclosure of X separates them after finitely many refinements.
    """
    if a.terms == b.terms:
        return 0
    m = lcm(*[e.denominator for _, e in a.terms + b.terms], 1)
    if m == 1:
        va = sum(c * Fraction(p) ** int(e) for c, e in a.terms)
        vb = sum(c * Fraction(p) ** int(e) for c, e in b.terms)
        return -1 if va < vb else 1
    ta, tb = _root_terms(a, m), _root_terms(b, m)
    lo, hi = Fraction(1), Fraction(p)
    for _ in range(256):
        for _ in range(8):
            mid = (lo + hi) / 2
            if mid**m <= p:
                lo = mid
            else:
                hi = mid
        a_lo, a_hi = _sum_bounds(ta, lo, hi)
        b_lo, b_hi = _sum_bounds(tb, lo, hi)
        if a_hi < b_lo:
            return -1
        if b_hi < a_lo:
            return 1
    raise ArithmeticError("enclosure refinement failed to separate unequal values")


def ppow_max(p: int, *sums: PPowerSum) -> PPowerSum:
    best = sums[0]
    for s in sums[1:]:
        if ppow_compare(p, s, best) > 0:
            best = s
    return best


def ppow_decimal(p: int, s: PPowerSum, digits: int = 12) -> str:
    """Decimal rendering to ``digits`` significant figures (display only)."""
    if s.is_zero:
        return "0"
    m = lcm(*[e.denominator for _, e in s.terms], 1)
    if m == 1:
        val = sum(c * Fraction(p) ** int(e) for c, e in s.terms)
        lo_val = hi_val = val
    else:
        terms = _root_terms(s, m)
        lo, hi = Fraction(1), Fraction(p)
        lo_val, hi_val = _sum_bounds(terms, lo, hi)
        while hi_val - lo_val > lo_val / 10 ** (digits + 4):
            mid = (lo + hi) / 2
            if mid**m <= p:
                lo = mid
            else:
                hi = mid
            lo_val, hi_val = _sum_bounds(terms, lo, hi)
    mid_val = (lo_val + hi_val) / 2
    ctx = getcontext().copy()
    ctx.prec = digits
    d = ctx.divide(Decimal(mid_val.numerator), Decimal(mid_val.denominator))
    return str(d)
