"""Exact arithmetic kernel: Gaussian rationals and truncated multivariate polynomials.

Every symbolic quantity in this package is a polynomial in the six variables

    x1, x2, x3, e1, e2, e3

(three base-point coordinates and three covector increments around the anchor
covector), truncated by joint total degree.  Coefficients are Gaussian
rationals, i.e. complex numbers with exact rational real and imaginary parts,
so all symbolic results are bit-exact.

A TruncatedPoly stores a finite map from exponent tuples to non-zero
GaussianRational coefficients together with a truncation order.  Values are
immutable by convention and all operations are pure functions, so they are
safe to share across threads.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

try:
    from gmpy2 import mpq as _mpq

    def rat(value: object = 0, den: object = None) -> object:
        """Coerce to the exact rational type (gmpy2.mpq when available)."""
        if den is None:
            return _mpq(value)
        return _mpq(value, den)

except ImportError:  # pragma: no cover - exercised only without gmpy2

    def rat(value: object = 0, den: object = None) -> object:
        """Coerce to the exact rational type (Fraction fallback)."""
        if den is None:
            if isinstance(value, str):
                return Fraction(value)
            return Fraction(value)
        return Fraction(value, den)


NUM_VARS = 6
VAR_NAMES = ("x1", "x2", "x3", "e1", "e2", "e3")
#: Variable indices: base coordinates x1..x3 and covector increments e1..e3.
X1, X2, X3, E1, E2, E3 = range(6)

Exponent = tuple

_ZERO_EXP = (0,) * NUM_VARS


def rat_str(q: object) -> str:
    """Render a rational as "p/q" (or "p" when the denominator is 1)."""
    return str(q)


class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: object = 0, im: object = 0) -> None:
        object.__setattr__(self, "re", rat(re))
        object.__setattr__(self, "im", rat(im))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("GaussianRational is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_strings(re: str, im: str) -> "GaussianRational":
        return GaussianRational(rat(re), rat(im))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        other = _coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: object) -> "GaussianRational":
        return _coerce(other) - self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: object) -> "GaussianRational":
        other = _coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "GaussianRational":
        other = _coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- comparison and display ------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) or type(other).__name__ == "mpq":
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        if self.im == 0:
            return f"GR({self.re})"
        return f"GR({self.re}, {self.im}i)"


def _coerce(value: object) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    return GaussianRational(value)


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


class TruncatedPoly:
    """A polynomial in six variables truncated by joint total degree.

    Invariants: every stored exponent tuple has total degree <= order and no
    stored coefficient is zero, so equal values have equal representations.
    """

    __slots__ = ("order", "terms")

    def __init__(
        self,
        order: int,
        terms: Mapping[Exponent, GaussianRational] | None = None,
        *,
        _trusted: bool = False,
    ) -> None:
        if order < 0:
            raise ValueError(f"truncation order must be >= 0, got {order}")
        if terms is None:
            clean: dict = {}
        elif _trusted:
            clean = dict(terms)
        else:
            clean = {}
            for exp, coeff in terms.items():
                coeff = _coerce(coeff)
                if coeff.is_zero():
                    continue
                if len(exp) != NUM_VARS or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent tuple {exp!r}")
                if sum(exp) > order:
                    continue
                clean[tuple(exp)] = coeff
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("TruncatedPoly is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(order: int) -> "TruncatedPoly":
        return TruncatedPoly(order)

    @staticmethod
    def constant(value: object, order: int) -> "TruncatedPoly":
        coeff = _coerce(value)
        if coeff.is_zero():
            return TruncatedPoly(order)
        return TruncatedPoly(order, {_ZERO_EXP: coeff}, _trusted=True)

    @staticmethod
    def variable(var: int, order: int, coeff: object = 1) -> "TruncatedPoly":
        if not 0 <= var < NUM_VARS:
            raise ValueError(f"variable index out of range: {var}")
        if order < 1:
            return TruncatedPoly(order)
        exp = [0] * NUM_VARS
        exp[var] = 1
        c = _coerce(coeff)
        if c.is_zero():
            return TruncatedPoly(order)
        return TruncatedPoly(order, {tuple(exp): c}, _trusted=True)

    @staticmethod
    def monomial(exp: Iterable[int], coeff: object, order: int) -> "TruncatedPoly":
        return TruncatedPoly(order, {tuple(exp): _coerce(coeff)})

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> GaussianRational:
        return self.terms.get(_ZERO_EXP, GR_ZERO)

    def coefficient(self, exp: Iterable[int]) -> GaussianRational:
        return self.terms.get(tuple(exp), GR_ZERO)

    def degree(self) -> int:
        """Actual maximal total degree of the stored terms (0 for zero)."""
        if not self.terms:
            return 0
        return max(sum(exp) for exp in self.terms)

    def evaluate(self, point: Iterable[object]) -> GaussianRational:
        """Exact evaluation at a 6-tuple of rationals."""
        vals = [rat(v) for v in point]
        if len(vals) != NUM_VARS:
            raise ValueError("evaluation point must have 6 components")
        total = GR_ZERO
        for exp, coeff in self.terms.items():
            factor = rat(1)
            for e, v in zip(exp, vals):
                if e:
                    factor *= v**e
            total = total + coeff * factor
        return total

    def restrict(self, zero_vars: Iterable[int]) -> "TruncatedPoly":
        """Set the given variables to zero, keeping the truncation order."""
        zs = set(zero_vars)
        kept = {
            exp: coeff
            for exp, coeff in self.terms.items()
            if all(exp[v] == 0 for v in zs)
        }
        return TruncatedPoly(self.order, kept, _trusted=True)

    def truncate(self, order: int) -> "TruncatedPoly":
        """Drop all terms of total degree > order and lower the bound."""
        if order >= self.order:
            if order == self.order:
                return self
            raise ValueError("cannot raise the truncation order")
        kept = {exp: c for exp, c in self.terms.items() if sum(exp) <= order}
        return TruncatedPoly(order, kept, _trusted=True)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "TruncatedPoly") -> "TruncatedPoly":
        return poly_add(self, other)

    def __sub__(self, other: "TruncatedPoly") -> "TruncatedPoly":
        return poly_add(self, other.__neg__())

    def __neg__(self) -> "TruncatedPoly":
        return TruncatedPoly(
            self.order,
            {exp: -c for exp, c in self.terms.items()},
            _trusted=True,
        )

    def __mul__(self, other: object) -> "TruncatedPoly":
        if isinstance(other, TruncatedPoly):
            return poly_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other: object) -> "TruncatedPoly":
        return self.scale(other)

    def scale(self, value: object) -> "TruncatedPoly":
        coeff = _coerce(value)
        if coeff.is_zero():
            return TruncatedPoly(self.order)
        return TruncatedPoly(
            self.order,
            {exp: c * coeff for exp, c in self.terms.items()},
            _trusted=True,
        )

    def conjugate(self) -> "TruncatedPoly":
        return TruncatedPoly(
            self.order,
            {exp: c.conjugate() for exp, c in self.terms.items()},
            _trusted=True,
        )

    # -- comparison and display ------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.order, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return f"TruncatedPoly(0; order {self.order})"
        parts = []
        for exp in sorted(self.terms):
            coeff = self.terms[exp]
            mono = "*".join(
                f"{name}^{e}" if e > 1 else name
                for name, e in zip(VAR_NAMES, exp)
                if e
            )
            parts.append(f"({coeff}){'*' + mono if mono else ''}")
        return f"TruncatedPoly({' + '.join(parts)}; order {self.order})"


def poly_add(a: TruncatedPoly, b: TruncatedPoly) -> TruncatedPoly:
    """Exact sum; the result carries order min(a.order, b.order)."""
    order = min(a.order, b.order)
    out: dict = {}
    for src in (a.terms, b.terms):
        for exp, coeff in src.items():
            if sum(exp) > order:
                continue
            acc = out.get(exp)
            coeff = coeff if acc is None else acc + coeff
            if coeff.is_zero():
                out.pop(exp, None)
            else:
                out[exp] = coeff
    return TruncatedPoly(order, out, _trusted=True)


def poly_mul(a: TruncatedPoly, b: TruncatedPoly) -> TruncatedPoly:
    """Exact product with terms above min(a.order, b.order) discarded."""
    order = min(a.order, b.order)
    out: dict = {}
    for ea, ca in a.terms.items():
        da = sum(ea)
        if da > order:
            continue
        for eb, cb in b.terms.items():
            if da + sum(eb) > order:
                continue
            exp = (
                ea[0] + eb[0],
                ea[1] + eb[1],
                ea[2] + eb[2],
                ea[3] + eb[3],
                ea[4] + eb[4],
                ea[5] + eb[5],
            )
            coeff = ca * cb
            acc = out.get(exp)
            coeff = coeff if acc is None else acc + coeff
            if coeff.is_zero():
                out.pop(exp, None)
            else:
                out[exp] = coeff
    return TruncatedPoly(order, out, _trusted=True)


def poly_diff(a: TruncatedPoly, var: int) -> TruncatedPoly:
    """Formal partial derivative; lowers the truncation order by one.

    A polynomial known up to degree k determines its derivative only up to
    degree k - 1, so differentiating an order-0 value is an error.
    """
    if not 0 <= var < NUM_VARS:
        raise ValueError(f"variable index out of range: {var}")
    if a.order < 1:
        raise ValueError("cannot differentiate a poly of truncation order 0")
    out: dict = {}
    for exp, coeff in a.terms.items():
        e = exp[var]
        if e == 0:
            continue
        new = list(exp)
        new[var] = e - 1
        out[tuple(new)] = coeff * e
    return TruncatedPoly(a.order - 1, out, _trusted=True)


def binomial_power_jet(u: TruncatedPoly, r: object) -> TruncatedPoly:
    """Jet of (1 + u)^r for rational r, where u has zero constant term.

    Returns sum over k of C(r, k) u^k up to u's truncation order, with
    generalized binomial coefficients computed exactly.
    """
    if not u.constant_term().is_zero():
        raise ValueError("binomial_power_jet requires a zero constant term")
    r = rat(r)
    order = u.order
    result = TruncatedPoly.constant(1, order)
    if u.is_zero():
        return result
    coeff = rat(1)
    power = TruncatedPoly.constant(1, order)
    for k in range(1, order + 1):
        coeff = coeff * (r - (k - 1)) / k
        if coeff == 0:
            break
        power = poly_mul(power, u)
        if power.is_zero():
            break
        result = poly_add(result, power.scale(coeff))
    return result


# -- serialization --------------------------------------------------------


def poly_to_dict(p: TruncatedPoly) -> dict:
    """JSON-ready form with terms sorted lexicographically by exponent."""
    return {
        "order": p.order,
        "terms": [
            {
                "exp": list(exp),
                "re": rat_str(p.terms[exp].re),
                "im": rat_str(p.terms[exp].im),
            }
            for exp in sorted(p.terms)
        ],
    }


def poly_from_dict(data: Mapping) -> TruncatedPoly:
    terms = {}
    for entry in data["terms"]:
        exp = tuple(int(e) for e in entry["exp"])
        terms[exp] = GaussianRational.from_strings(entry["re"], entry["im"])
    return TruncatedPoly(int(data["order"]), terms)


def poly_dumps(p: TruncatedPoly) -> str:
    return json.dumps(poly_to_dict(p), separators=(",", ":"))


def poly_loads(text: str) -> TruncatedPoly:
    return poly_from_dict(json.loads(text))


def iter_exponents(order: int) -> Iterator[Exponent]:
    """All exponent tuples of total degree <= order, lexicographic order."""

    def rec(prefix: list, remaining: int, slots: int) -> Iterator[Exponent]:
        if slots == 0:
            yield tuple(prefix)
            return
        for e in range(remaining + 1):
            prefix.append(e)
            yield from rec(prefix, remaining - e, slots - 1)
            prefix.pop()

    yield from rec([], order, NUM_VARS)
