"""Exact sparse Laurent polynomials over the integers.

Each polynomial carries a variable tag (A, q, t or z) and a fixed exponent
denominator per variable, so the quarter powers of q and half powers of t
that show up in bracket/Jones/Alexander conversions stay exact: exponents
are stored internally as integers in units of 1/scale.  Coefficients are
plain Python ints and never overflow.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Mapping, Union

#: exponent denominator per variable tag
SCALES = {"A": 1, "q": 4, "t": 2, "z": 1}

PowerLike = Union[int, Fraction]


class LaurentError(ValueError):
    """Raised on variable mismatches, bad exponents or parse failures."""


def _check_variable(variable: str) -> None:
    if variable not in SCALES:
        raise LaurentError(f"unknown variable {variable!r}; expected one of {sorted(SCALES)}")


class LaurentPoly:
    """Immutable Laurent polynomial in one variable.

    Internally a map from scaled exponent to nonzero integer coefficient.
    All operations return new values; instances are safe to share across
    threads.
    """

    __slots__ = ("variable", "_terms", "_hash")

    def __init__(self, variable: str, terms: Mapping[int, int] | None = None):
        _check_variable(variable)
        clean: dict[int, int] = {}
        if terms:
            for exp, coeff in terms.items():
                if not isinstance(exp, int) or not isinstance(coeff, int):
                    raise LaurentError("scaled exponents and coefficients must be ints")
                if coeff != 0:
                    clean[exp] = coeff
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, variable: str) -> "LaurentPoly":
        return cls(variable)

    @classmethod
    def one(cls, variable: str) -> "LaurentPoly":
        return cls(variable, {0: 1})

    @classmethod
    def constant(cls, variable: str, value: int) -> "LaurentPoly":
        return cls(variable, {0: value})

    @classmethod
    def monomial(cls, variable: str, power: PowerLike = 1, coeff: int = 1) -> "LaurentPoly":
        """c * variable**power, where power may be an int or a Fraction
        compatible with the variable's scale."""
        _check_variable(variable)
        scale = SCALES[variable]
        units = Fraction(power) * scale
        if units.denominator != 1:
            raise LaurentError(
                f"power {power} not representable for {variable} (scale {scale})"
            )
        return cls(variable, {int(units): coeff})

    # -- basic queries ---------------------------------------------------

    @property
    def scale(self) -> int:
        return SCALES[self.variable]

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def terms_scaled(self) -> dict[int, int]:
        """Copy of the internal scaled-exponent -> coefficient map."""
        return dict(self._terms)

    def terms_by_power(self) -> Iterator[tuple[Fraction, int]]:
        """(power, coefficient) pairs in descending power order."""
        for exp in sorted(self._terms, reverse=True):
            yield Fraction(exp, self.scale), self._terms[exp]

    def min_units(self) -> int:
        if not self._terms:
            raise LaurentError("zero polynomial has no exponent range")
        return min(self._terms)

    def max_units(self) -> int:
        if not self._terms:
            raise LaurentError("zero polynomial has no exponent range")
        return max(self._terms)

    def eval_at_one(self) -> int:
        """Value at variable = 1, i.e. the coefficient sum."""
        return sum(self._terms.values())

    # -- arithmetic -------------------------------------------------------

    def _require_same(self, other: "LaurentPoly") -> None:
        if not isinstance(other, LaurentPoly):
            raise LaurentError(f"expected LaurentPoly, got {type(other).__name__}")
        if other.variable != self.variable:
            raise LaurentError(
                f"variable mismatch: {self.variable} vs {other.variable}"
            )

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._require_same(other)
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            out[exp] = out.get(exp, 0) + coeff
        return LaurentPoly(self.variable, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.variable, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.variable, {e: c * other for e, c in self._terms.items()})
        self._require_same(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.variable, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            raise LaurentError("exponent must be an int")
        if n < 0:
            if len(self._terms) != 1:
                raise LaurentError("negative powers only defined for monomials")
            (exp, coeff), = self._terms.items()
            if coeff not in (1, -1):
                raise LaurentError("negative powers need a unit coefficient")
            return LaurentPoly(self.variable, {exp * n: coeff if n % 2 else 1})
        result = LaurentPoly.one(self.variable)
        base = self
        k = n
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shifted(self, units: int) -> "LaurentPoly":
        """Multiply by variable**(units/scale)."""
        return LaurentPoly(self.variable, {e + units: c for e, c in self._terms.items()})

    def div_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self / divisor; raises LaurentError if inexact."""
        self._require_same(divisor)
        if divisor.is_zero():
            raise LaurentError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.variable)
        # shift both to ordinary polynomials and long-divide from the top
        num = dict(self._terms)
        den = divisor._terms
        den_top = max(den)
        den_lead = den[den_top]
        quot: dict[int, int] = {}
        while num:
            top = max(num)
            lead = num[top]
            if lead % den_lead != 0:
                raise LaurentError("inexact polynomial division (coefficient)")
            qc = lead // den_lead
            qe = top - den_top
            quot[qe] = quot.get(qe, 0) + qc
            for e, c in den.items():
                ne = e + qe
                nv = num.get(ne, 0) - qc * c
                if nv:
                    num[ne] = nv
                else:
                    num.pop(ne, None)
            if num and max(num) >= top:
                raise LaurentError("inexact polynomial division (no progress)")
        return LaurentPoly(self.variable, quot)

    # -- variable maps ----------------------------------------------------

    def invert_variable(self) -> "LaurentPoly":
        """Exponent-negated polynomial (variable -> variable**-1)."""
        return LaurentPoly(self.variable, {-e: c for e, c in self._terms.items()})

    def substitute_A_to_q(self) -> "LaurentPoly":
        """Rewrite an A-polynomial in q via A^2 = q^(-1/2), i.e. A = q^(-1/4)."""
        if self.variable != "A":
            raise LaurentError("substitute_A_to_q requires variable A")
        # A-exponent k becomes q-exponent -k/4; q's scale is 4, so the
        # scaled q-exponent is just -k.
        return LaurentPoly("q", {-e: c for e, c in self._terms.items()})

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.variable == other.variable
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.variable, tuple(sorted(self._terms.items()))))
            object.__setattr__(self, "_hash", h)
        return h

    # -- text form ----------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.variable!r}, {format_poly(self)!r})"


def format_poly(p: LaurentPoly) -> str:
    """Canonical text form: descending exponents, `c*V^e` terms joined by
    +/-, exponents as integers or reduced fractions (e.g. q^-1/4)."""
    if p.is_zero():
        return "0"
    pieces: list[str] = []
    for power, coeff in p.terms_by_power():
        mag = abs(coeff)
        if power == 0:
            body = str(mag)
        else:
            if power.denominator == 1:
                exp = "" if power == 1 else f"^{power.numerator}"
            else:
                exp = f"^{power.numerator}/{power.denominator}"
            body = f"{p.variable}{exp}" if mag == 1 else f"{mag}*{p.variable}{exp}"
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(pieces)


_TERM_RE = re.compile(
    r"""
    (?P<coeff>\d+)? \s* \*? \s*
    (?P<var>[Aqtz])
    (?: \^ (?P<num>-?\d+) (?: / (?P<den>\d+) )? )?
    \s*$
    |
    (?P<const>\d+) \s*$
    """,
    re.VERBOSE,
)


def parse_poly(text: str, variable: str) -> LaurentPoly:
    """Parse the canonical/loose text form back into a polynomial.

    Accepts arbitrary term order and optional '*' between coefficient and
    variable.  Raises LaurentError with the offending position on bad input.
    """
    _check_variable(variable)
    scale = SCALES[variable]
    s = text.strip()
    if not s:
        raise LaurentError("empty polynomial text")
    if s == "0":
        return LaurentPoly.zero(variable)
    # split into signed terms, tracking offsets for error messages
    terms: dict[int, int] = {}
    idx = 0
    sign = 1
    n = len(s)
    while idx < n:
        while idx < n and s[idx].isspace():
            idx += 1
        if idx >= n:
            break
        if s[idx] == "+":
            sign = 1
            idx += 1
            continue
        if s[idx] == "-":
            sign = -1
            idx += 1
            continue
        # consume one term: up to the next top-level +/- (exponent minus
        # signs follow '^' and are eaten with the term)
        start = idx
        while idx < n and s[idx] not in "+-":
            idx += 1
            if idx < n and s[idx] in "+-" and s[idx - 1] == "^":
                idx += 1
        chunk = s[start:idx].strip()
        m = _TERM_RE.match(chunk)
        if not m:
            raise LaurentError(f"bad term {chunk!r} at column {start + 1}")
        if m.group("const") is not None:
            coeff = sign * int(m.group("const"))
            units = 0
        else:
            if m.group("var") != variable:
                raise LaurentError(
                    f"unexpected variable {m.group('var')!r} at column {start + 1}; "
                    f"expected {variable!r}"
                )
            coeff = sign * int(m.group("coeff") or 1)
            if m.group("num") is None:
                frac = Fraction(1)
            elif m.group("den") is None:
                frac = Fraction(int(m.group("num")))
            else:
                frac = Fraction(int(m.group("num")), int(m.group("den")))
            scaled = frac * scale
            if scaled.denominator != 1:
                raise LaurentError(
                    f"exponent {frac} at column {start + 1} not representable "
                    f"for {variable} (scale {scale})"
                )
            units = int(scaled)
        terms[units] = terms.get(units, 0) + coeff
        sign = 1
    return LaurentPoly(variable, terms)


# small conveniences used throughout the invariant code

def A_poly(terms: Mapping[int, int]) -> LaurentPoly:
    """Laurent polynomial in A from a plain exponent -> coefficient map."""
    return LaurentPoly("A", dict(terms))


def loop_delta() -> LaurentPoly:
    """The circle value -A^2 - A^-2 of the bracket state sum."""
    return A_poly({2: -1, -2: -1})


def minus_A_cubed_power(k: int) -> LaurentPoly:
    """(-A^3)**k for any integer k."""
    return A_poly({3 * k: -1 if k % 2 else 1})
