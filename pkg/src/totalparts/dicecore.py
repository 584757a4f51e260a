"""Dice, sacks, distribution polynomials, and the forward part-to-total map.

A die of order k is a vector of k (pseudo)probabilities summing to 1; entries
are exact ``Fraction`` or ``CycElem`` scalars, never floats.  A sack is an
ordered list of dice.  The total distribution of a sack is the coefficient
vector of the product of the dice's distribution polynomials, padded to
length T+1 where T = sum(k_j - 1).

Polynomials are plain coefficient lists/tuples, constant term first.  Dice
may carry trailing zero probabilities: the order is declared, not inferred
from the degree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import CycElem, SignCertificate, cyc_sign

Scalar = object  # Fraction | CycElem


class InexactDivision(ArithmeticError):
    """Raised when polynomial division leaves a nonzero remainder."""


class ZeroSum(ArithmeticError):
    """Raised when a polynomial with coefficient sum zero is normalized."""


# -- scalar helpers ----------------------------------------------------------

def as_scalar(x) -> Scalar:
    if isinstance(x, (Fraction, CycElem)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def scalar_is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, CycElem) else x == 0


def demote(x) -> Scalar:
    """Collapse a rational-valued CycElem to a Fraction."""
    if isinstance(x, CycElem) and x.is_rational():
        return x.rational_value()
    return x


def scalar_sign(x) -> SignCertificate:
    return cyc_sign(x)


def render_scalar(x) -> str:
    if isinstance(x, CycElem):
        return x.render()
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def scalar_to_json(x):
    x = demote(as_scalar(x))
    if isinstance(x, Fraction):
        return render_scalar(x)
    return {"conductor": x.n, "coords": [render_scalar(c) for c in x.coords]}


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, dict):
        return demote(CycElem(obj["conductor"], [Fraction(c) for c in obj["coords"]]))
    raise ValueError(f"cannot parse scalar from {obj!r}")


# -- polynomial helpers ------------------------------------------------------

def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not scalar_is_zero(x):
            for j, y in enumerate(b):
                if not scalar_is_zero(y):
                    out[i + j] = out[i + j] + x * y
    return out


def poly_sum(p) -> Scalar:
    total = Fraction(0)
    for c in p:
        total = total + c
    return total


def poly_trim(p):
    p = list(p)
    while len(p) > 1 and scalar_is_zero(p[-1]):
        p.pop()
    return p


def poly_eq(a, b) -> bool:
    a, b = poly_trim(a), poly_trim(b)
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))


def poly_divide_exact(num, den):
    """Quotient of num by den when the division is exact over the field.

    Raises InexactDivision if the remainder is nonzero (exact test).
    """
    num = [as_scalar(c) for c in poly_trim(num)]
    den = [as_scalar(c) for c in poly_trim(den)]
    if len(den) == 1 and scalar_is_zero(den[0]):
        raise ZeroDivisionError("division by the zero polynomial")
    dd = len(den) - 1
    lead = den[-1]
    lead_inv = lead.inverse() if isinstance(lead, CycElem) else 1 / lead
    if len(num) - 1 < dd:
        if all(scalar_is_zero(c) for c in num):
            return [Fraction(0)]
        raise InexactDivision("divisor degree exceeds dividend degree")
    q = [Fraction(0)] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] * lead_inv
        q[i - dd] = c
        if not scalar_is_zero(c):
            for j, dj in enumerate(den):
                num[i - dd + j] = num[i - dd + j] - c * dj
    if any(not scalar_is_zero(c) for c in num[:dd]):
        raise InexactDivision("nonzero remainder")
    return [demote(c) for c in q]


def poly_gcd(a, b):
    """Monic gcd over Q; used for exact squarefreeness tests."""
    a = [Fraction(c) for c in poly_trim(a)]
    b = [Fraction(c) for c in poly_trim(b)]
    while not (len(b) == 1 and b[0] == 0):
        a, b = b, _poly_mod(a, b)
    if a[-1] != 0:
        a = [c / a[-1] for c in a]
    return a


def _poly_mod(num, den):
    num = list(num)
    dd = len(den) - 1
    if dd == 0:
        return [Fraction(0)]
    lead = den[-1]
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] / lead
        if c:
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    return poly_trim(num[:dd])


# -- core types --------------------------------------------------------------

@dataclass(frozen=True)
class Die:
    """A die of order k: probability vector of length k summing to 1."""

    probs: tuple

    def __post_init__(self):
        probs = tuple(demote(as_scalar(p)) for p in self.probs)
        if len(probs) < 2:
            raise ValueError("a die needs order at least 2")
        if poly_sum(probs) != 1:
            raise ValueError("die probabilities must sum to 1 exactly")
        object.__setattr__(self, "probs", probs)

    @property
    def order(self) -> int:
        return len(self.probs)

    def poly(self):
        return list(self.probs)

    def reverse(self) -> "Die":
        return Die(self.probs[::-1])

    def is_real(self) -> bool:
        return all(not isinstance(p, CycElem) or p.is_real() for p in self.probs)

    def is_strict(self) -> bool:
        """Real with every entry certified >= 0."""
        if not self.is_real():
            return False
        return all(scalar_sign(p).sign >= 0 for p in self.probs)

    def is_positive(self) -> bool:
        if not self.is_real():
            return False
        return all(scalar_sign(p).sign > 0 for p in self.probs)

    def is_fair(self) -> bool:
        k = self.order
        return all(p == Fraction(1, k) for p in self.probs)

    def is_palindromic(self) -> bool:
        return self.probs == self.probs[::-1]

    @staticmethod
    def fair(k: int) -> "Die":
        return Die((Fraction(1, k),) * k)

    def to_json(self) -> dict:
        return {"order": self.order, "probs": [scalar_to_json(p) for p in self.probs]}

    @staticmethod
    def from_json(obj: dict) -> "Die":
        probs = [scalar_from_json(p) for p in obj["probs"]]
        order = obj.get("order", len(probs))
        if order != len(probs):
            raise ValueError("declared order does not match probability count")
        return Die(tuple(probs))


@dataclass(frozen=True)
class Sack:
    """An ordered, nonempty list of dice."""

    dice: tuple

    def __post_init__(self):
        if not self.dice:
            raise ValueError("a sack needs at least one die")
        object.__setattr__(self, "dice", tuple(self.dice))

    @property
    def type_vector(self) -> tuple[int, ...]:
        return tuple(d.order for d in self.dice)

    @property
    def T(self) -> int:
        return sum(k - 1 for k in self.type_vector)

    @property
    def U(self) -> int:
        return sum(self.type_vector)

    def reverse(self) -> "Sack":
        return Sack(tuple(d.reverse() for d in self.dice))

    def is_strict(self) -> bool:
        return all(d.is_strict() for d in self.dice)

    def is_fair(self) -> bool:
        return all(d.is_fair() for d in self.dice)

    def to_json(self) -> dict:
        return {"dice": [d.to_json() for d in self.dice]}

    @staticmethod
    def from_json(obj: dict) -> "Sack":
        return Sack(tuple(Die.from_json(d) for d in obj["dice"]))

    def canonical_key(self):
        return tuple(tuple(d.probs) for d in self.dice)


@dataclass(frozen=True)
class DistPoly:
    """A total distribution: coefficient vector f_0..f_T summing to 1."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(demote(as_scalar(c)) for c in self.coeffs)
        if poly_sum(coeffs) != 1:
            raise ValueError("total distribution must sum to 1 exactly")
        object.__setattr__(self, "coeffs", coeffs)

    def reverse(self) -> "DistPoly":
        return DistPoly(self.coeffs[::-1])

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def to_json(self) -> list:
        return [scalar_to_json(c) for c in self.coeffs]

    @staticmethod
    def from_json(obj) -> "DistPoly":
        return DistPoly(tuple(scalar_from_json(c) for c in obj))


# -- operations --------------------------------------------------------------

def parts_to_total(sack: Sack) -> DistPoly:
    """Total distribution of a sack: the product of its dice polynomials."""
    prod = [Fraction(1)]
    for die in sack.dice:
        prod = poly_mul(prod, die.poly())
    prod += [Fraction(0)] * (sack.T + 1 - len(prod))
    return DistPoly(tuple(demote(c) for c in prod))


def normalize_poly(p):
    """Scale p so its coefficients sum to 1; returns (coeffs, c) with c the
    scalar by which p was divided.  Raises ZeroSum when the sum is 0."""
    p = [as_scalar(c) for c in p]
    total = poly_sum(p)
    if scalar_is_zero(total):
        raise ZeroSum("coefficient sum is exactly zero")
    inv = total.inverse() if isinstance(total, CycElem) else 1 / total
    return [demote(c * inv) for c in p], demote(total)


def normalize_to_die(p, order: int | None = None) -> Die:
    """The die obtained by scaling p to coefficient sum 1.

    ``order`` pads with trailing zeros; it defaults to max(len(p), 2).
    """
    coeffs, _ = normalize_poly(p)
    k = order if order is not None else max(len(coeffs), 2)
    if len(coeffs) > k:
        coeffs = poly_trim(coeffs)
        if len(coeffs) > k:
            raise ValueError(f"polynomial degree too high for order {k}")
    coeffs = list(coeffs) + [Fraction(0)] * (k - len(coeffs))
    return Die(tuple(coeffs))


def psi(k: int):
    """The fair-die numerator polynomial 1 + x + ... + x^(k-1)."""
    return [Fraction(1)] * k


def sack_to_json_str(sack: Sack) -> str:
    return json.dumps(sack.to_json())
