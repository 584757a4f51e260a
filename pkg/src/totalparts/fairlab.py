"""Totally fair sacks: fair-fiber enumeration, counts, ramification, the
craps impossibility, coin+die fairness, and Sicherman dice.

A pair of totally fair k-dice corresponds to a multiplicity vector
r = (r_1..r_{k-1}) with 0 <= r_m <= 2 and sum r_m = k-1: the first die is
the normalization of prod_m (x - zeta_k^m)^{r_m} and the second takes the
complementary multiplicities 2 - r_m.  Pairs are built from this explicit
root multiset, not by factoring at runtime.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import CycElem, cyclotomic_poly
from .dicecore import (
    Die,
    Sack,
    demote,
    normalize_to_die,
    poly_mul,
    poly_trim,
    psi,
)
from .fibers import ChiFactor, FactorMultiset, LinearFactor, enumerate_fiber, fiber_degree


@dataclass(frozen=True)
class FairPair:
    """A pair of totally fair k-dice with its multiplicity vector r."""

    d: Die
    dhat: Die
    r: tuple

    @property
    def order(self) -> int:
        return self.d.order

    @property
    def ell(self) -> int:
        return sum(1 for rm in self.r if rm == 2)

    def is_real(self) -> bool:
        return self.d.is_real() and self.dhat.is_real()

    def is_strict(self) -> bool:
        return self.d.is_strict() and self.dhat.is_strict()

    def is_fair(self) -> bool:
        return all(rm == 1 for rm in self.r)

    def is_palindromic(self) -> bool:
        return self.d.is_palindromic() and self.dhat.is_palindromic()

    def swapped(self) -> "FairPair":
        return FairPair(self.dhat, self.d, tuple(2 - rm for rm in self.r))


def fair_pair_count(k: int) -> int:
    """Number of pairs of totally fair dice of order k."""
    if k < 2:
        raise ValueError("order must be >= 2")
    return sum(math.comb(k - 1, ell) * math.comb(k - ell - 1, k - 1 - 2 * ell)
               for ell in range(0, (k - 1) // 2 + 1))


def multiplicity_vectors(k: int):
    """All r in {0,1,2}^(k-1) with sum r = k-1, grouped implicitly by the
    number ell of entries equal to 2."""
    positions = range(k - 1)
    for ell in range(0, (k - 1) // 2 + 1):
        for twos in itertools.combinations(positions, ell):
            rest = [m for m in positions if m not in twos]
            for ones in itertools.combinations(rest, k - 1 - 2 * ell):
                r = [0] * (k - 1)
                for m in twos:
                    r[m] = 2
                for m in ones:
                    r[m] = 1
                yield tuple(r)


def _die_from_multiplicities(k: int, r) -> Die:
    poly = [CycElem.from_rational(1, k)]
    for m, rm in enumerate(r, start=1):
        root = CycElem.zeta(k, m)
        for _ in range(rm):
            poly = poly_mul(poly, [-root, Fraction(1)])
    return normalize_to_die(poly, order=k)


def enumerate_fair_pairs(k: int):
    """All fair pairs of order k, one per multiplicity vector, in the
    canonical order: by ell, then lexicographically on r."""
    rs = sorted(multiplicity_vectors(k),
                key=lambda r: (sum(1 for x in r if x == 2), r))
    pairs = []
    for r in rs:
        d = _die_from_multiplicities(k, r)
        dhat = _die_from_multiplicities(k, tuple(2 - rm for rm in r))
        pairs.append(FairPair(d, dhat, r))
    return pairs


def ramification_check(k: int) -> tuple[int, int]:
    """Weighted count of general-fiber points coming together over the fair
    total versus the degree of the part-to-total map; the two agree.

    A fair pair with ell doubled roots absorbs 2^(k-1-2*ell) points of the
    general fiber.
    """
    lhs = sum((2 ** (k - 1 - 2 * ell))
              * math.comb(k - 1, ell) * math.comb(k - ell - 1, k - 1 - 2 * ell)
              for ell in range(0, (k - 1) // 2 + 1))
    rhs = fiber_degree((k, k))
    return lhs, rhs


@dataclass(frozen=True)
class CrapsImpossibilityReport:
    strict_pairs: tuple
    only_strict_is_fair: bool
    candidate: FairPair
    candidate_vector: tuple
    candidate_is_strict: bool


def craps_fair_impossibility() -> CrapsImpossibilityReport:
    """The only strict pair of 6-dice with fair total is the fair pair.

    Also exhibits the unique other real candidate, proportional to
    (x^2-x+1)^2 (x+1), and flags it non-strict.
    """
    pairs = enumerate_fair_pairs(6)
    strict = tuple(p for p in pairs if p.is_strict())
    only_fair = len(strict) == 1 and strict[0].is_fair()
    # chi_{1,6}^2 (x+1) = x^5 - x^4 + x^3 + x^2 - x + 1
    cand_poly = poly_mul(poly_mul([Fraction(1), Fraction(-1), Fraction(1)],
                                  [Fraction(1), Fraction(-1), Fraction(1)]),
                         [Fraction(1), Fraction(1)])
    vector = tuple(Fraction(c) for c in cand_poly)
    d = normalize_to_die(cand_poly, order=6)
    dhat_poly = poly_mul(poly_mul([Fraction(1), Fraction(1), Fraction(1)],
                                  [Fraction(1), Fraction(1), Fraction(1)]),
                         [Fraction(1), Fraction(1)])
    dhat = normalize_to_die(dhat_poly, order=6)
    # multiplicities: zeta_6 (m=1) and zeta_6^5 (m=5) doubled, zeta_6^3 = -1 once
    candidate = FairPair(d, dhat, (2, 0, 1, 0, 2))
    return CrapsImpossibilityReport(
        strict_pairs=strict,
        only_strict_is_fair=only_fair,
        candidate=candidate,
        candidate_vector=vector,
        candidate_is_strict=candidate.is_strict(),
    )


@dataclass(frozen=True)
class CoinDieFairReport:
    order: int
    strict_sacks: tuple
    only_fair_is_strict: bool


def coin_die_fair_check(k: int) -> CoinDieFairReport:
    """Redistribute the factors of psi_2 * psi_k between a coin and a k-die
    and confirm the only strict outcome is the fair/fair sack."""
    entries = [(LinearFactor(Fraction(-1)), 2 if k % 2 == 0 else 1)]
    for m in range(1, (k + 1) // 2):
        if Fraction(m, k) < Fraction(1, 2):
            entries.append((ChiFactor(m, k), 1))
    sacks = enumerate_fiber(FactorMultiset(tuple(entries)), (2, k))
    strict = tuple(s for s in sacks if s.is_strict())
    only_fair = all(s.is_fair() for s in strict) and len(strict) >= 1
    return CoinDieFairReport(k, strict, only_fair)


def _integer_factors_of_psi(k: int):
    # psi_k = prod over divisors d > 1 of k of Phi_d, all with integer coeffs
    out = []
    d = 2
    for d in range(2, k + 1):
        if k % d == 0:
            out.append([Fraction(c) for c in cyclotomic_poly(d)])
    return out


def sicherman_search(k: int, label_min: int = 1):
    """All pairs of uniform k-sided dice with positive integer labels whose
    total distribution matches a standard pair.

    Redistributes the integer factorization of psi_k^2 into two polynomials
    with nonnegative coefficients summing to k each; labels are exponents
    shifted by ``label_min``.  Returns sorted label-tuple pairs, the
    standard pair included.
    """
    factors = _integer_factors_of_psi(k)
    n = len(factors)
    results = set()
    for counts in itertools.product((0, 1, 2), repeat=n):
        a = [Fraction(1)]
        for f, c in zip(factors, counts):
            for _ in range(c):
                a = poly_mul(a, f)
        if sum(a) != k:
            continue
        b = [Fraction(1)]
        for f, c in zip(factors, counts):
            for _ in range(2 - c):
                b = poly_mul(b, f)
        if sum(b) != k:
            continue
        if any(c < 0 or c.denominator != 1 for c in a + b):
            continue
        labels_a = _labels_from_poly(a, label_min)
        labels_b = _labels_from_poly(b, label_min)
        results.add(tuple(sorted((labels_a, labels_b))))
    return sorted(results)


def _labels_from_poly(p, label_min):
    labels = []
    for exp, c in enumerate(poly_trim(p)):
        labels.extend([exp + label_min] * int(c))
    return tuple(labels)


def fair_total(sack_type):
    """The fair total polynomial prod (1/k_j) psi_{k_j} for the given type."""
    prod = [Fraction(1)]
    for k in sack_type:
        prod = poly_mul(prod, [Fraction(1, k)] * k)
    return prod
