"""Geometry of the part-to-total map: degree, fiber enumeration, coin formulas.

The generic fiber of the part-to-total map over a total of type k has
T!/prod((k_j-1)!) points, and every fiber is obtained by redistributing the
irreducible factors of the total polynomial among the dice, then rescaling
each slot to coefficient sum 1.

General complex totals with unknown factorizations are handled only through
a caller-supplied :class:`FactorMultiset`; no numeric root isolation is done
here, which keeps every result certificate-exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import CycElem, two_cos
from .dicecore import (
    Die,
    DistPoly,
    Sack,
    ZeroSum,
    as_scalar,
    demote,
    normalize_to_die,
    poly_gcd,
    poly_mul,
    poly_trim,
    render_scalar,
    scalar_from_json,
    scalar_to_json,
)


class DegenerateTotal(ValueError):
    """Raised for coin totals outside the solvable range."""


class IrrationalDiscriminant(ValueError):
    """Raised when a coin solution is not rational; carries the minimal
    polynomial of the head probability."""

    def __init__(self, polynomial):
        self.polynomial = tuple(polynomial)
        super().__init__(
            f"head probability is an irrational root of {polynomial}")


# -- factors -----------------------------------------------------------------

@dataclass(frozen=True)
class LinearFactor:
    """The monic linear factor x - root."""

    root: object

    def __post_init__(self):
        object.__setattr__(self, "root", demote(as_scalar(self.root)))

    degree = 1

    def coeffs(self):
        return [-self.root, Fraction(1)]

    def to_json(self):
        return {"type": "linear", "root": scalar_to_json(self.root)}


@dataclass(frozen=True)
class ChiFactor:
    """The real irreducible quadratic x^2 - 2cos(2*pi*m/k)x + 1.

    (m, k) is stored in lowest terms with 0 < m/k < 1/2, so equal factors
    arising from different orders compare equal.
    """

    m: int
    k: int

    def __post_init__(self):
        if not 0 < Fraction(self.m, self.k) < Fraction(1, 2):
            raise ValueError("chi factor needs 0 < m/k < 1/2")
        g = math.gcd(self.m, self.k)
        object.__setattr__(self, "m", self.m // g)
        object.__setattr__(self, "k", self.k // g)

    degree = 2

    @property
    def tau(self) -> CycElem:
        return two_cos(self.m, self.k)

    def coeffs(self):
        return [Fraction(1), -self.tau, Fraction(1)]

    def to_json(self):
        return {"type": "chi", "m": self.m, "k": self.k}


def factor_from_json(obj):
    if obj["type"] == "linear":
        return LinearFactor(scalar_from_json(obj["root"]))
    if obj["type"] == "chi":
        return ChiFactor(obj["m"], obj["k"])
    raise ValueError(f"unknown factor type {obj['type']!r}")


@dataclass(frozen=True)
class FactorMultiset:
    """Multiset of monic irreducible real factors of a total polynomial."""

    entries: tuple  # of (factor, multiplicity)

    def __post_init__(self):
        merged: dict = {}
        for factor, mult in self.entries:
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult:
                merged[factor] = merged.get(factor, 0) + mult
        object.__setattr__(self, "entries", tuple(sorted(
            merged.items(), key=lambda e: repr(e[0]))))

    @property
    def total_degree(self) -> int:
        return sum(f.degree * mult for f, mult in self.entries)

    def product(self):
        prod = [Fraction(1)]
        for factor, mult in self.entries:
            for _ in range(mult):
                prod = poly_mul(prod, factor.coeffs())
        return prod

    def to_json(self):
        return [{**f.to_json(), "multiplicity": m} for f, m in self.entries]

    @staticmethod
    def from_json(obj) -> "FactorMultiset":
        return FactorMultiset(tuple(
            (factor_from_json(e), e.get("multiplicity", 1)) for e in obj))


# -- operations --------------------------------------------------------------

def fiber_degree(sack_type) -> int:
    """Degree of the part-to-total map: T!/prod((k_j-1)!)."""
    ks = tuple(sack_type)
    if not ks or any(k < 2 for k in ks):
        raise ValueError("sack type entries must be >= 2")
    t = sum(k - 1 for k in ks)
    deg = math.factorial(t)
    for k in ks:
        deg //= math.factorial(k - 1)
    return deg


def _compositions(total, caps):
    # All ways of writing total as a sum over len(caps) slots with bounds.
    if len(caps) == 1:
        if total <= caps[0]:
            yield (total,)
        return
    for first in range(min(total, caps[0]) + 1):
        for rest in _compositions(total - first, caps[1:]):
            yield (first,) + rest


def enumerate_fiber(factors: FactorMultiset, sack_type, dedupe: bool = True):
    """All sacks of the given type whose total has the given factor multiset.

    Every distribution of the factors among the slots respecting the degree
    bounds k_j - 1 yields one candidate; slots whose polynomial has
    coefficient sum zero do not normalize to a pseudodie and are skipped.
    """
    ks = tuple(sack_type)
    caps = [k - 1 for k in ks]
    if factors.total_degree > sum(caps):
        raise ValueError("factor degree exceeds the capacity of the type")
    entries = factors.entries
    results = []
    seen = set()

    def assign(idx, remaining, slot_factors):
        if idx == len(entries):
            dice = []
            try:
                for j, k in enumerate(ks):
                    poly = [Fraction(1)]
                    for factor, count in slot_factors[j]:
                        for _ in range(count):
                            poly = poly_mul(poly, factor.coeffs())
                    dice.append(normalize_to_die(poly, order=k))
            except ZeroSum:
                return
            sack = Sack(tuple(dice))
            if dedupe:
                key = sack.canonical_key()
                if key in seen:
                    return
                seen.add(key)
            results.append(sack)
            return
        factor, mult = entries[idx]
        slot_caps = [r // factor.degree for r in remaining]
        for comp in _compositions(mult, slot_caps):
            new_remaining = [r - c * factor.degree for r, c in zip(remaining, comp)]
            new_slots = [sf + ([(factor, c)] if c else [])
                         for sf, c in zip(slot_factors, comp)]
            assign(idx + 1, new_remaining, new_slots)

    assign(0, caps, [[] for _ in ks])
    results.sort(key=lambda s: tuple(
        tuple(render_scalar(p) for p in d.probs) for d in s.dice))
    return results


def total_is_squarefree(total: DistPoly) -> bool:
    """Exact gcd(f, f') = 1 test; only defined for rational totals."""
    f = [Fraction(c) for c in poly_trim(total.coeffs)]
    fp = [i * c for i, c in enumerate(f)][1:] or [Fraction(0)]
    g = poly_gcd(f, fp)
    return len(g) == 1


# -- coins -------------------------------------------------------------------

def _fraction_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class CoinPairSolutions:
    pairs: tuple  # of (p, q) head-probability pairs
    discriminant: Fraction


def coin_pair_solve(f: DistPoly) -> CoinPairSolutions:
    """Head probabilities of two coins with total distribution f = (r, s, t).

    The probabilities are the roots of p^2 - (2r+s)p + r, which has
    discriminant D = s^2 - 4rt; the two roots are swapped when the coins are.
    """
    if len(f.coeffs) != 3:
        raise DegenerateTotal("a pair of coins has a length-3 total")
    r, s, _t = (Fraction(c) for c in f.coeffs)
    disc = s * s - 4 * r * _t
    half_trace = 2 * r + s
    root = _fraction_sqrt(disc)
    if root is None:
        raise IrrationalDiscriminant((r, -half_trace, Fraction(1)))
    p1 = (half_trace + root) / 2
    p2 = (half_trace - root) / 2
    pairs = ((p1, p2),) if p1 == p2 else ((p1, p2), (p2, p1))
    return CoinPairSolutions(pairs, disc)


def _binomial_to_elementary(f):
    # Invert f_t = sum_{k>=t} (-1)^(k-t) C(k,t) e_k (upper triangular, unit
    # diagonal).
    n = len(f) - 1
    e = [Fraction(0)] * (n + 1)
    for t in range(n, -1, -1):
        acc = Fraction(f[t])
        for k in range(t + 1, n + 1):
            acc -= (-1) ** (k - t) * math.comb(k, t) * e[k]
        e[t] = acc
    return e


def _rational_roots(poly):
    # All rational roots (with multiplicity) of a Fraction polynomial;
    # returns (roots, residual monic polynomial).
    p = [Fraction(c) for c in poly_trim(poly)]
    roots = []
    while len(p) > 1 and p[0] == 0:
        roots.append(Fraction(0))
        p = p[1:]
    while len(p) > 1:
        denom = math.lcm(*(c.denominator for c in p))
        ip = [int(c * denom) for c in p]
        found = None
        a0, an = abs(ip[0]), abs(ip[-1])
        for num in divisors(a0):
            for den in divisors(an):
                if math.gcd(num, den) != 1:
                    continue
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if _horner(p, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        p = _deflate(p, found)
    residual = None
    if len(p) > 1:
        residual = tuple(c / p[-1] for c in p)
    return sorted(roots), residual


def divisors(n: int):
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _horner(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _deflate(p, root):
    out = [Fraction(0)] * (len(p) - 1)
    acc = Fraction(0)
    for i in range(len(p) - 1, 0, -1):
        acc = acc * root + p[i]
        out[i - 1] = acc
    return out


@dataclass(frozen=True)
class CoinParts:
    """Head probabilities recovered from a coin-sack total.

    ``roots`` lists the rational head probabilities with multiplicity;
    ``residual`` is the monic polynomial carrying any irrational ones, or
    None when the probabilities split completely over Q.
    """

    roots: tuple
    residual: tuple | None
    polynomial: tuple


def coins_parts_from_total(f: DistPoly, n: int) -> CoinParts:
    """Recover the multiset of head probabilities of n coins from the total.

    Inverts the binomial matrix to obtain the elementary symmetric values
    e_1..e_n, forms prod(x - p_j) = x^n - e_1 x^(n-1) + ... and reads off
    its roots.
    """
    if len(f.coeffs) != n + 1:
        raise ValueError("total of n coins has length n+1")
    e = _binomial_to_elementary([Fraction(c) for c in f.coeffs])
    # coefficient of x^(n-i) is (-1)^i e_i
    poly = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        poly[n - i] = (-1) ** i * e[i]
    roots, residual = _rational_roots(poly)
    return CoinParts(tuple(roots), residual, tuple(poly))


def coin_die_elimination(f: DistPoly):
    """Monic degree-k polynomial whose roots are the coin probabilities in
    the fiber of type (2, k) over f; coefficients constant-first."""
    k = len(f.coeffs) - 1
    fs = [Fraction(c) for c in f.coeffs]
    coeffs = [sum((-1) ** (k - i) * math.comb(k - j, k - i) * fs[j]
                  for j in range(i + 1)) for i in range(k)]
    return coeffs + [Fraction(1)]
