"""Dense integer polynomials with arbitrary-precision coefficients.

``IntPoly`` stores coefficients in ascending degree with trailing zeros
trimmed; the zero polynomial is the empty tuple. ``LaurentPoly`` pairs an
``IntPoly`` with a power-of-t shift and exists mostly for braid
representations and unit normalisation in Z[t, t^-1].
"""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import DivideByZero, InvalidIndex, NotDivisible, PolySyntaxError, ZeroPolynomial
from .intmat import bareiss_det


class IntPoly:
    """Immutable polynomial in Z[t].

    >>> IntPoly([1, -3, 1])
    IntPoly('t^2 - 3t + 1')
    >>> IntPoly([1, -3, 1]).degree
    2
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        if k < 0:
            raise ValueError("negative exponent; use LaurentPoly")
        return cls([0] * k + [c])

    @classmethod
    def t_pow_minus_one(cls, n: int) -> IntPoly:
        """t^n - 1."""
        return cls([-1] + [0] * (n - 1) + [1])

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        lp = LaurentPoly.parse(text)
        if lp.shift < 0 and not lp.poly.is_zero():
            raise PolySyntaxError(f"negative exponent in polynomial {text!r}")
        return lp.to_intpoly()

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial (stand-in for -infinity)."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def height(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_power(self, v: int) -> IntPoly:
        """f(t^v) for v >= 1."""
        if v < 1:
            raise ValueError("compose_power needs v >= 1")
        out = [0] * (v * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * v] = c
        return IntPoly(out)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> IntPoly:
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly([-x for x in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        if k < 0:
            raise ValueError("negative power")
        result = IntPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __lt__(self, other: IntPoly) -> bool:
        # deterministic ordering for reports: by degree, then coefficients high to low
        return (self.degree, self.coeffs[::-1]) < (other.degree, other.coeffs[::-1])

    def __repr__(self):
        return f"IntPoly({str(self)!r})"

    def __str__(self):
        return format_terms(self.coeffs, 0)

    def to_record(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs], "lowest_deg": 0}


def format_terms(coeffs: Sequence[int], low: int) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        e = i + low
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "t" if e == 1 else f"t^{e}"
            body = var if mag == 1 else f"{mag}{var}"
        if not terms:
            terms.append(f"-{body}" if c < 0 else body)
        else:
            terms.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(terms) if terms else "0"


_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*(\*?\s*t(?:\s*\^\s*(-?\d+))?)?\s*")


@dataclass(frozen=True)
class LaurentPoly:
    """``t^shift * poly`` in Z[t, t^-1], kept with ``poly(0) != 0`` when nonzero."""

    poly: IntPoly
    shift: int = 0

    def __post_init__(self):
        c = self.poly.coeffs
        if not c:
            object.__setattr__(self, "shift", 0)
            return
        k = 0
        while c[k] == 0:
            k += 1
        if k:
            object.__setattr__(self, "poly", IntPoly(c[k:]))
            object.__setattr__(self, "shift", self.shift + k)

    @classmethod
    def from_int(cls, c: int) -> LaurentPoly:
        return cls(IntPoly([c]))

    @classmethod
    def t_power(cls, k: int, c: int = 1) -> LaurentPoly:
        return cls(IntPoly([c]), k)

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Parse ``"t^2 - 3t + 1"``-style text; ``*`` is optional, ``t^-1`` allowed."""
        s = text.replace("−", "-").strip()
        if not s:
            raise PolySyntaxError("empty polynomial")
        terms: dict[int, int] = {}
        pos = 0
        first = True
        while pos < len(s):
            m = _TERM.match(s, pos)
            sign, digits, tpart, exp = m.group(1), m.group(2), m.group(3), m.group(4)
            if m.end() == pos or (not digits and not tpart):
                raise PolySyntaxError(f"cannot parse polynomial {text!r} at offset {pos}")
            if not sign and not first:
                raise PolySyntaxError(f"missing operator in {text!r} at offset {pos}")
            coef = int(digits) if digits else 1
            if sign == "-":
                coef = -coef
            e = 0 if not tpart else (int(exp) if exp is not None else 1)
            terms[e] = terms.get(e, 0) + coef
            pos = m.end()
            first = False
        low = min(terms)
        high = max(terms)
        coeffs = [terms.get(e, 0) for e in range(low, high + 1)]
        return cls(IntPoly(coeffs), low)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self):
        return bool(self.poly)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, IntPoly):
            return LaurentPoly(other)
        if isinstance(other, int):
            return LaurentPoly.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            return self
        if not self:
            return other
        low = min(self.shift, other.shift)
        a = IntPoly([0] * (self.shift - low) + list(self.poly.coeffs))
        b = IntPoly([0] * (other.shift - low) + list(other.poly.coeffs))
        return LaurentPoly(a + b, low)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(-self.poly, self.shift)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.poly * other.poly, self.shift + other.shift)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.poly == other.poly and self.shift == other.shift

    def __hash__(self):
        return hash(("LaurentPoly", self.poly.coeffs, self.shift))

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        other = self._coerce(other)
        return LaurentPoly(exact_div(self.poly, other.poly), self.shift - other.shift)

    def to_intpoly(self) -> IntPoly:
        if self.shift < 0:
            raise ValueError("Laurent polynomial has negative powers")
        return IntPoly([0] * self.shift + list(self.poly.coeffs))

    def to_record(self) -> dict:
        return {"coeffs": [str(c) for c in self.poly.coeffs], "lowest_deg": self.shift}

    def __str__(self):
        return format_terms(self.poly.coeffs, self.shift)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def poly_from_record(rec: dict) -> LaurentPoly:
    return LaurentPoly(IntPoly(int(c) for c in rec["coeffs"]), int(rec.get("lowest_deg", 0)))


@dataclass(frozen=True)
class LaurentUnit:
    """The unit ``sign * t^shift`` of Z[t, t^-1]."""

    sign: int
    shift: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __mul__(self, other: LaurentUnit) -> LaurentUnit:
        return LaurentUnit(self.sign * other.sign, self.shift + other.shift)

    def apply(self, f: IntPoly | LaurentPoly) -> LaurentPoly:
        if isinstance(f, IntPoly):
            f = LaurentPoly(f)
        return LaurentPoly(f.poly * self.sign, f.shift + self.shift)

    def to_record(self) -> dict:
        return {"sign": self.sign, "shift": self.shift}


# ---------------------------------------------------------------------------
# division


def poly_divmod(f: IntPoly, g: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Division over Z when possible; raises NotDivisible if a quotient
    coefficient is not integral."""
    if g.is_zero():
        raise DivideByZero("division by the zero polynomial")
    r = list(f.coeffs)
    b = g.coeffs
    db = len(b) - 1
    lead = b[-1]
    if len(r) <= db:
        return IntPoly(), f
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c:
            qk, rem = divmod(c, lead)
            if rem:
                raise NotDivisible(f"{f} is not divisible by {g} over Z")
            q[k] = qk
            for j in range(db + 1):
                r[k + j] -= qk * b[j]
    return IntPoly(q), IntPoly(r)


def exact_div(f: IntPoly, g: IntPoly) -> IntPoly:
    """Return q with ``f == q * g``; raise NotDivisible otherwise.

    >>> exact_div(IntPoly([-1, 0, 1]), IntPoly([-1, 1]))
    IntPoly('t + 1')
    """
    q, r = poly_divmod(f, g)
    if r:
        raise NotDivisible(f"{f} is not divisible by {g}")
    return q


def divides(g: IntPoly, f: IntPoly) -> bool:
    try:
        exact_div(f, g)
    except NotDivisible:
        return False
    return True


def pseudo_rem(f: IntPoly, g: IntPoly) -> IntPoly:
    """lc(g)^(deg f - deg g + 1) * f mod g, computed in Z[t]."""
    df, dg = f.degree, g.degree
    if df < dg:
        return f
    r = list(f.coeffs)
    b = g.coeffs
    lead = b[-1]
    for k in range(df - dg, -1, -1):
        c = r[k + dg]
        r = [lead * x for x in r]
        if c:
            for j in range(dg + 1):
                r[k + j] -= c * b[j]
    return IntPoly(r)


# ---------------------------------------------------------------------------
# resultants


def sylvester_matrix(f: IntPoly, g: IntPoly) -> list[list[int]]:
    """Sylvester matrix with the rows of f above the rows of g.

    Coefficients run highest degree first along each row, so for
    ``f = t - 1`` and ``g = t - 2`` the matrix is ``[[1, -1], [1, -2]]``.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("Sylvester matrix of a zero polynomial")
    d, e = f.degree, g.degree
    size = d + e
    a = f.coeffs[::-1]
    b = g.coeffs[::-1]
    rows = []
    for i in range(e):
        rows.append([0] * i + list(a) + [0] * (size - d - 1 - i))
    for i in range(d):
        rows.append([0] * i + list(b) + [0] * (size - e - 1 - i))
    return rows


def resultant_sylvester(f: IntPoly, g: IntPoly) -> int:
    """Resultant as the Bareiss determinant of the Sylvester matrix."""
    return bareiss_det(sylvester_matrix(f, g))


def resultant_subresultant(f: IntPoly, g: IntPoly) -> int:
    """Resultant via the subresultant pseudo-remainder sequence.

    Same value and sign as :func:`resultant_sylvester`, much faster when one
    argument has large degree (e.g. t^n - 1).
    """
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of a zero polynomial")
    A, B = f, g
    ca, cb = A.content(), B.content()
    if A.lc < 0:
        ca = -ca
    if B.lc < 0:
        cb = -cb
    A = IntPoly([x // ca for x in A.coeffs])
    B = IntPoly([x // cb for x in B.coeffs])
    scale = ca ** B.degree * cb ** A.degree
    sign = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            sign = -sign
    g_, h = 1, 1
    while B.degree > 0:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            sign = -sign
        R = pseudo_rem(A, B)
        A = B
        if R.is_zero():
            return 0
        denom = g_ * h ** delta
        B = IntPoly([_exact(x, denom) for x in R.coeffs])
        g_ = A.lc
        if delta == 0:
            pass
        else:
            h = _exact(g_ ** delta, h ** (delta - 1))
    # deg B == 0
    dA = A.degree
    if dA == 0:
        res = 1
    else:
        res = _exact(B.lc ** dA, h ** (dA - 1))
    return sign * scale * res


def _exact(a: int, b: int) -> int:
    q, r = divmod(a, b)
    assert r == 0, "subresultant step was not exact"
    return q


def resultant(f: IntPoly, g: IntPoly, method: str = "subresultant") -> int:
    """det Syl(f, g) with f-rows above g-rows.

    >>> resultant(IntPoly([-1, 1]), IntPoly([-2, 1]))
    -1
    """
    if method == "subresultant":
        return resultant_subresultant(f, g)
    if method == "sylvester":
        return resultant_sylvester(f, g)
    raise ValueError(f"unknown resultant method {method!r}")


# ---------------------------------------------------------------------------
# cyclotomic polynomials

_CYCLO_CACHE: dict[int, IntPoly] = {}
_CYCLO_LOCK = threading.Lock()


def cyclotomic(m: int) -> IntPoly:
    """The m-th cyclotomic polynomial, by dividing t^m - 1 by lower ones.

    >>> cyclotomic(12)
    IntPoly('t^4 - t^2 + 1')
    """
    if not isinstance(m, int) or m < 1:
        raise InvalidIndex(f"cyclotomic index must be >= 1, got {m!r}")
    hit = _CYCLO_CACHE.get(m)
    if hit is not None:
        return hit
    q = IntPoly.t_pow_minus_one(m)
    for d in divisors(m):
        if d != m:
            q = exact_div(q, cyclotomic(d))
    with _CYCLO_LOCK:
        return _CYCLO_CACHE.setdefault(m, q)


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def totient(n: int) -> int:
    result = n
    p = 2
    k = n
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def cyclotomic_divisors(f: IntPoly) -> list[int]:
    """All m with Phi_m | f, ascending.

    Candidates are m with totient(m) <= deg f; since totient(m) >= sqrt(m/2)
    they all satisfy m <= 2 * deg(f)^2.
    """
    if f.is_zero():
        raise ZeroPolynomial("cyclotomic_divisors of zero")
    d = f.degree
    out = []
    for m in range(1, 2 * d * d + 1):
        if totient(m) <= d and divides(cyclotomic(m), f):
            out.append(m)
    return out


def cyclotomic_multiplicity(f: IntPoly, m: int) -> int:
    phi = cyclotomic(m)
    k = 0
    while True:
        try:
            f = exact_div(f, phi)
        except NotDivisible:
            return k
        k += 1


# ---------------------------------------------------------------------------
# reciprocity and units


def is_reciprocal(f: IntPoly) -> bool:
    """True iff the coefficient sequence is a palindrome."""
    if f.is_zero():
        raise ZeroPolynomial("is_reciprocal of zero")
    return f.coeffs == f.coeffs[::-1]


def normalize_unit(f: IntPoly | LaurentPoly) -> tuple[IntPoly, LaurentUnit]:
    """Split ``f = u * g`` with ``g(0) != 0`` and ``lc(g) > 0``.

    >>> normalize_unit(IntPoly([0, 0, -1, 1]))
    (IntPoly('t - 1'), LaurentUnit(sign=1, shift=2))
    """
    if isinstance(f, IntPoly):
        f = LaurentPoly(f)
    if f.is_zero():
        raise ZeroPolynomial("normalize_unit of zero")
    g = f.poly
    sign = 1
    if g.lc < 0:
        g = -g
        sign = -1
    return g, LaurentUnit(sign, f.shift)
