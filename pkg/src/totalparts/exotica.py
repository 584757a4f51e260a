"""Exotic-sack searches: factor-swap censuses, the order-3 and order-4 scans,
and verification harnesses for the tridecahedral example.

Candidate dice are products of the real irreducible factors (x+1) and
chi_{m,k}(x) = x^2 - 2cos(2*pi*m/k)x + 1.  Strictness is decided in stages:
a fast outward-rounded float interval pass, an mpmath interval pass at
escalating precision, and finally exact cyclotomic arithmetic for
coefficients whose intervals still straddle zero (exact zeros are proven
zero, never assumed).  No sack is admitted or rejected from an unresolved
interval.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

import mpmath
import numpy as np

from .exactnum import CycElem, cyc_embed, cyc_sign, two_cos
from .dicecore import Die, Sack, demote, normalize_to_die, poly_mul, psi

M3_RATIO_BOUND = Fraction(60, 143)

_INF = math.inf


# -- outward-rounded float intervals ----------------------------------------

def _widen(lo: float, hi: float) -> tuple[float, float]:
    return math.nextafter(lo, -_INF), math.nextafter(hi, _INF)


def _iadd(a, b):
    return _widen(a[0] + b[0], a[1] + b[1])


def _imul(a, b):
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return _widen(min(p), max(p))


def _ipoly_mul(a, b):
    out = [(0.0, 0.0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = _iadd(out[i + j], _imul(x, y))
    return out


@functools.lru_cache(maxsize=None)
def _tau_float_interval(m: int, k: int) -> tuple[float, float]:
    # Enclosure of 2cos(2*pi*m/k) from an 80-bit evaluation; the absolute
    # margin covers the evaluation error even when the value is near zero.
    with mpmath.workprec(80):
        v = float(2 * mpmath.cos(2 * mpmath.pi * m / k))
    return _widen(v - 2.0 ** -64, v + 2.0 ** -64)


# -- strictness of factor products ------------------------------------------

def _chi_product_signs_float(chis, x1_count):
    poly = [(1.0, 1.0)]
    for m, k, mult in chis:
        lo, hi = _tau_float_interval(m, k)
        factor = [(1.0, 1.0), (-hi, -lo), (1.0, 1.0)]
        for _ in range(mult):
            poly = _ipoly_mul(poly, factor)
    for _ in range(x1_count):
        poly = _ipoly_mul(poly, [(1.0, 1.0), (1.0, 1.0)])
    status = []
    for lo, hi in poly:
        status.append(1 if lo > 0 else (-1 if hi < 0 else 0))
    return status


def _chi_product_exact(chis, x1_count, conductor):
    poly = [Fraction(1)]
    for m, k, mult in chis:
        tau = two_cos((m * conductor) // k, conductor)
        factor = [Fraction(1), -tau, Fraction(1)]
        for _ in range(mult):
            poly = poly_mul(poly, factor)
    for _ in range(x1_count):
        poly = poly_mul(poly, [Fraction(1), Fraction(1)])
    return [demote(c) for c in poly]


def _factors_strict(chis, x1_count, conductor) -> bool:
    """Certified: every coefficient of the product has sign in {0, +}."""
    status = _chi_product_signs_float(chis, x1_count)
    if any(s < 0 for s in status):
        return False
    if all(s > 0 for s in status):
        return True
    poly = _chi_product_exact(chis, x1_count, conductor)
    return all(cyc_sign(c).sign >= 0 for c in poly)


def _die_from_chis(chis, x1_count, conductor, order) -> Die:
    return normalize_to_die(_chi_product_exact(chis, x1_count, conductor),
                            order=order)


# -- swap specifications and censuses ---------------------------------------

@dataclass(frozen=True)
class SwapSpec:
    """A factor redistribution relative to the fair assignment: ``give`` are
    the factor indices removed from the first die, ``take`` those added."""

    give: tuple
    take: tuple
    orders: tuple

    def canonical(self) -> "SwapSpec":
        a, b = sorted((tuple(self.give), tuple(self.take)))
        return SwapSpec(a, b, self.orders)

    def render(self) -> str:
        fmt = lambda s: ",".join(str(x) for x in s)
        return f"[{fmt(self.give)}<->{fmt(self.take)}]"


@dataclass(frozen=True)
class ExoticCensus:
    orders: tuple
    sacks: tuple  # of (Sack, SwapSpec)

    @property
    def count(self) -> int:
        return len(self.sacks)


class NotFound(LookupError):
    pass


def _sum_bounded_vectors(n, total):
    # Vectors in {0,1,2}^n with the given sum.
    def rec(i, remaining):
        if i == n:
            if remaining == 0:
                yield ()
            return
        slots_left = n - i - 1
        for v in (0, 1, 2):
            rest = remaining - v
            if 0 <= rest <= 2 * slots_left:
                for tail in rec(i + 1, rest):
                    yield (v,) + tail
    yield from rec(0, total)


def _diagonal_census(k: int) -> list[tuple[tuple, Sack, SwapSpec]]:
    """Strict exotic pairs of order k, one per unordered multiplicity
    vector pair {r, 2-r}."""
    ms = list(range(1, (k + 1) // 2))
    x1 = 1 if k % 2 == 0 else 0
    target = (k - 2) // 2 if k % 2 == 0 else (k - 1) // 2
    found = []
    for r in _sum_bounded_vectors(len(ms), target):
        comp = tuple(2 - v for v in r)
        if r >= comp:
            continue  # swap symmetry; equality only at the fair vector
        chis_d = [(m, k, v) for m, v in zip(ms, r) if v]
        chis_dhat = [(m, k, v) for m, v in zip(ms, comp) if v]
        if not _factors_strict(chis_d, x1, k):
            continue
        if not _factors_strict(chis_dhat, x1, k):
            continue
        d = _die_from_chis(chis_d, x1, k, k)
        dhat = _die_from_chis(chis_dhat, x1, k, k)
        spec = SwapSpec(
            give=tuple(m for m, v in zip(ms, r) if v == 0),
            take=tuple(m for m, v in zip(ms, r) if v == 2),
            orders=(k, k),
        ).canonical()
        found.append((r, Sack((d, dhat)), spec))
    found.sort(key=lambda e: (len(e[2].give), e[2].give, e[2].take))
    return found


def swap_census(k: int) -> list[SwapSpec]:
    """Strict exotic pairs of k-dice as give/take swap lists, ordered first
    by the number of factors swapped and then lexicographically."""
    return [spec for _, _, spec in _diagonal_census(k)]


def _merged_factor_multiset(k: int, kp: int):
    # Real irreducible factors of psi_k * psi_kp keyed by the angle fraction
    # m/k in lowest terms; equal factors from the two orders merge.
    chis: dict[Fraction, int] = {}
    for order in (k, kp):
        for m in range(1, (order + 1) // 2):
            key = Fraction(m, order)
            if key < Fraction(1, 2):
                chis[key] = chis.get(key, 0) + 1
    x1 = (1 if k % 2 == 0 else 0) + (1 if kp % 2 == 0 else 0)
    return chis, x1


def exotic_search(k: int, kp: int) -> ExoticCensus:
    """All strict exotic sacks of type (k, kp) obtained by redistributing
    the real irreducible factors of psi_k * psi_kp."""
    if not 2 <= k <= kp:
        raise ValueError("orders must satisfy 2 <= k <= k'")
    if k == kp:
        entries = tuple((s, spec) for _, s, spec in _diagonal_census(k))
        return ExoticCensus((k, kp), entries)
    chis, x1_total = _merged_factor_multiset(k, kp)
    keys = sorted(chis)
    conductor = math.lcm(k, kp)
    fair_d1 = {Fraction(m, k) for m in range(1, (k + 1) // 2)
               if Fraction(m, k) < Fraction(1, 2)}
    results = []

    # Enumerate counts per quadratic factor for die 1, then the (x+1) split;
    # die 1 must reach degree exactly k-1.
    def rec(idx, deg_left, partial):
        if idx == len(keys):
            for x1_d1 in range(0, x1_total + 1):
                if x1_d1 > deg_left or deg_left - x1_d1 != 0:
                    continue
                yield partial, x1_d1
            return
        key = keys[idx]
        for c in range(0, min(chis[key], deg_left // 2) + 1):
            yield from rec(idx + 1, deg_left - 2 * c, partial + [(key, c)])

    for partial, x1_d1 in rec(0, k - 1, []):
        chis_d1 = [(key.numerator, key.denominator, c)
                   for key, c in partial if c]
        chis_d2 = [(key.numerator, key.denominator, chis[key] - c)
                   for key, c in partial if chis[key] - c]
        x1_d2 = x1_total - x1_d1
        assigned_d1 = {key: c for key, c in partial}
        is_fair = (all(assigned_d1.get(key, 0) == (1 if key in fair_d1 else 0)
                       for key in keys)
                   and x1_d1 == (1 if k % 2 == 0 else 0))
        if is_fair:
            continue
        if not _factors_strict(chis_d1, x1_d1, conductor):
            continue
        if not _factors_strict(chis_d2, x1_d2, conductor):
            continue
        d1 = _die_from_chis(chis_d1, x1_d1, conductor, k)
        d2 = _die_from_chis(chis_d2, x1_d2, conductor, kp)
        give = tuple(key for key in sorted(fair_d1)
                     if assigned_d1.get(key, 0) < 1)
        take = tuple(key for key in keys
                     if assigned_d1.get(key, 0) > (1 if key in fair_d1 else 0))
        spec = SwapSpec(give, take, (k, kp))
        results.append((Sack((d1, d2)), spec))
    results.sort(key=lambda e: (e[1].give, e[1].take))
    return ExoticCensus((k, kp), tuple(results))


def smallest_exotic_34() -> Sack:
    """The exotic sack of type (3, 4); raises NotFound if the census is
    unexpectedly empty."""
    census = exotic_search(3, 4)
    if not census.sacks:
        raise NotFound("no exotic sack of type (3, 4) found")
    return census.sacks[0][0]


# -- the tridecahedral example ----------------------------------------------

TRIDECA_TABLE_D = (0.0992916, 0.0210685, 0.1381701, 0.0410895,
                   0.0693196, 0.1241391, 0.0138431)
TRIDECA_TABLE_DHAT = (0.0595938, 0.1065425, 0.0732460, 0.0499115,
                      0.0997570, 0.0877406, 0.0464172)


@dataclass(frozen=True)
class TridecahedralReport:
    d: Die
    dhat: Die
    strict: bool
    palindromic: bool
    product_is_fair: bool
    table_matches: bool
    max_table_slack: Fraction


def verify_tridecahedral() -> TridecahedralReport:
    """Exact verification of the order-13 exotic pair built by swapping the
    chi_4 and chi_5 factors of a fair pair; the published 7-place table
    values must match to within 5e-8."""
    k = 13
    d = _die_from_chis([(1, k, 1), (2, k, 1), (3, k, 1), (4, k, 2), (6, k, 1)],
                       0, k, k)
    dhat = _die_from_chis([(1, k, 1), (2, k, 1), (3, k, 1), (5, k, 2), (6, k, 1)],
                          0, k, k)
    strict = d.is_strict() and dhat.is_strict()
    palindromic = d.is_palindromic() and dhat.is_palindromic()
    total = poly_mul(d.poly(), dhat.poly())
    fair = [Fraction(c, 169) for c in poly_mul(psi(13), psi(13))]
    product_ok = all(demote(a) == b for a, b in zip(total, fair))
    tol = Fraction(5, 10 ** 8)
    ok = True
    max_slack = Fraction(0)
    for die, table in ((d, TRIDECA_TABLE_D), (dhat, TRIDECA_TABLE_DHAT)):
        for i, approx in enumerate(table):
            target = Fraction(approx).limit_denominator(10 ** 7)
            lo, hi = cyc_embed(die.probs[i], 64)
            slack = max(abs(lo - target), abs(hi - target))
            max_slack = max(max_slack, slack)
            if not (target - tol <= lo and hi <= target + tol):
                ok = False
    return TridecahedralReport(d, dhat, strict, palindromic, product_ok,
                               ok, max_slack)


# -- the order-3 and order-4 scans ------------------------------------------

@dataclass(frozen=True)
class ScanRecord:
    """Result of one swap scan: the strict-swap index set S, its maximum M,
    and the ratio R = M/k (None when S is empty)."""

    k: int
    S: tuple
    M: int | None
    R: Fraction | None


_SCAN_CACHE: dict[tuple[int, int], ScanRecord] = {}


def _scan_f(ell: int, k: int):
    # Coefficients of psi_k * psi_3 (ell=3) or psi_k * (x^2+1) (ell=4).
    if ell == 3:
        return [min(i + 1, 3, k + 2 - i) for i in range(k + 2)]
    return [(1 if i <= k - 1 else 0) + (1 if 2 <= i <= k + 1 else 0)
            for i in range(k + 2)]


def _scan_params(ell: int):
    # f differs from its middle value c only at the top: f_k and f_{k+1}
    # fall short by a and b.
    return (3, 1, 2) if ell == 3 else (2, 1, 1)


def _scan_float_pass(ell: int, k: int, ms):
    """Closed-form evaluation of every swap quotient coefficient at once.

    Solving the division recurrence gives q_j = sum_i f_{j+2+i} U_i with
    U_i = sin((i+1)t)/sin(t) and t = 2*pi*m/k; summing the sines in closed
    form (f is constant except at the top) yields, with N = k-1-j,

      q_j sin(t) = c (cos(t/2) - cos((N+3/2)t)) / (2 sin(t/2))
                   - a sin(Nt) - b sin((N+1)t).

    sin(t) > 0, so this has the sign of q_j.  All angles are reduced
    exactly as integer multiples of pi/k before any float trig, so the
    absolute error is a few ulps; MARGIN covers it conservatively and
    everything inside the margin is escalated, never guessed.
    """
    c, a, b = _scan_params(ell)
    marr = np.asarray(ms, dtype=np.int64)[:, None]
    n = (k - 1) - np.arange(k, dtype=np.int64)[None, :]  # N as a function of j
    r1 = (marr * (2 * n + 3)) % (2 * k)
    r2 = (2 * marr * n) % (2 * k)
    r3 = (2 * marr * (n + 1)) % (2 * k)
    half = np.pi * marr / k  # t/2, in (0, pi/2)
    v = (c * (np.cos(half) - np.cos(np.pi * r1 / k)) / (2 * np.sin(half))
         - a * np.sin(np.pi * r2 / k) - b * np.sin(np.pi * r3 / k))
    return v


_SCAN_MARGIN = 1e-9


def _scan_iv_coeff_sign(ell: int, k: int, m: int, j: int, bits: int) -> int:
    # The same closed form with mpmath intervals; 0 means unresolved.
    c, a, b = _scan_params(ell)
    n = k - 1 - j
    old = mpmath.iv.prec
    mpmath.iv.prec = bits
    try:
        pi = mpmath.iv.pi
        half = pi * m / k
        v = (c * (mpmath.iv.cos(half)
                  - mpmath.iv.cos(pi * ((m * (2 * n + 3)) % (2 * k)) / k))
             / (2 * mpmath.iv.sin(half))
             - a * mpmath.iv.sin(pi * ((2 * m * n) % (2 * k)) / k)
             - b * mpmath.iv.sin(pi * ((2 * m * (n + 1)) % (2 * k)) / k))
        if v.a > 0:
            return 1
        if v.b < 0:
            return -1
    finally:
        mpmath.iv.prec = old
    return 0


def _scan_exact_coeff_sign(ell: int, k: int, m: int, j: int) -> int:
    """Exact sign of coefficient j of the swap quotient.

    Solving the division recurrence gives q_j = sum_i f_{j+2+i} U_i with
    U_i = sin((i+1)t)/sin(t), t = 2*pi*m/k.  Writing W_i for the purely
    imaginary zeta^((i+1)m) - zeta^(-(i+1)m) = 2i sin((i+1)t) and using that
    f is constant in the middle, q_j * |W_0|^2 = -W_0 * (c*sum_{i<=N} W_i
    - corrections), a small-integer vector in the power basis of Q(zeta_k).
    """
    n = k - 1 - j  # top summation index N
    c = 3 if ell == 3 else 2
    x = [0] * k  # c * sum_{i=0..N} W_i minus the edge corrections
    for i in range(n + 1):
        e = ((i + 1) * m) % k
        x[e] += c
        x[-e % k] -= c
    # f_k and f_{k+1} fall short of the middle value c by (1, 2) for ell=3
    # and (1, 1) for ell=4; they occur at i = N-1 and i = N.
    for i, short in ((n - 1, 1), (n, 2 if ell == 3 else 1)):
        if i >= 0:
            e = ((i + 1) * m) % k
            x[e] -= short
            x[-e % k] += short
    # multiply by -W_0 = zeta^(-m) - zeta^m (two rotations)
    y = [x[(i + m) % k] - x[(i - m) % k] for i in range(k)]
    elem = CycElem.from_power_basis(k, [Fraction(v) for v in y])
    return cyc_sign(elem).sign


def _scan_coeff_sign(ell: int, k: int, m: int, j: int) -> int:
    """Certified sign of one straddling quotient coefficient."""
    for bits in (128, 512):
        s = _scan_iv_coeff_sign(ell, k, m, j, bits)
        if s:
            return s
    return _scan_exact_coeff_sign(ell, k, m, j)


def s_scan(ell: int, k: int) -> ScanRecord:
    """The strict-swap scan: for each m < k/2, swap chi_{m,k} into a fair
    ell-die and test strictness of both resulting dice.

    The small die is strict iff m/k >= 1/4 (ell=3) or m/k >= 1/6 (ell=4),
    an exact rational test; the k-die is tested by certified division.
    """
    if ell not in (3, 4):
        raise ValueError("only the order-3 and order-4 scans are supported")
    if k < 2:
        raise ValueError("k must be >= 2")
    cached = _SCAN_CACHE.get((ell, k))
    if cached is not None:
        return cached
    threshold = Fraction(1, 4) if ell == 3 else Fraction(1, 6)
    ms = [m for m in range(1, (k + 1) // 2)
          if threshold <= Fraction(m, k) < Fraction(1, 2)]
    members = []
    if ms:
        v = _scan_float_pass(ell, k, ms)
        for i, m in enumerate(ms):
            if np.any(v[i] < -_SCAN_MARGIN):
                continue
            unclear = np.nonzero(np.abs(v[i]) <= _SCAN_MARGIN)[0]
            if all(_scan_coeff_sign(ell, k, m, int(j)) >= 0 for j in unclear):
                members.append(m)
    record = ScanRecord(
        k, tuple(members),
        max(members) if members else None,
        Fraction(max(members), k) if members else None,
    )
    _SCAN_CACHE[(ell, k)] = record
    return record


def _s3_worker(k: int) -> ScanRecord:
    return s_scan(3, k)


def s3_table(k_max: int, workers: int = 1) -> list[ScanRecord]:
    """Scan records for ell=3 and every k from 2 to k_max; deterministic for
    any worker count."""
    ks = [k for k in range(2, k_max + 1) if (3, k) not in _SCAN_CACHE]
    if workers > 1 and len(ks) > workers:
        with Pool(workers) as pool:
            for record in pool.map(_s3_worker, ks, chunksize=8):
                _SCAN_CACHE[(3, record.k)] = record
    else:
        for k in ks:
            s_scan(3, k)
    return [_SCAN_CACHE[(3, k)] for k in range(2, k_max + 1)]


@dataclass(frozen=True)
class M3Exception:
    k: int
    difference: int


@dataclass(frozen=True)
class M3ExceptionReport:
    k_max: int
    exceptions: tuple
    b_sequence: tuple  # empirical b_a with k_a = 603*a + 143*b_a


def m3_exception_scan(k_max: int, workers: int = 1) -> M3ExceptionReport:
    """All k <= k_max - 143 where M3(k+143) - M3(k) differs from 60, with
    the empirical reconstruction of the exception sequence b_a."""
    if k_max < 746:
        raise ValueError("k_max must be at least 746 to see the first exception")
    records = s3_table(k_max, workers=workers)
    m3 = {r.k: r.M for r in records}
    exceptions = []
    for k in range(2, k_max - 143 + 1):
        if m3[k] is None or m3[k + 143] is None:
            continue
        diff = m3[k + 143] - m3[k]
        if diff != 60:
            exceptions.append(M3Exception(k, diff))
    bs = []
    for a, exc in enumerate(exceptions, start=1):
        rem = exc.k - 603 * a
        bs.append(Fraction(rem, 143))
    return M3ExceptionReport(k_max, tuple(exceptions), tuple(bs))


@dataclass(frozen=True)
class ScatterRow:
    k: int
    M: int | None
    R: Fraction | None

    @property
    def decimal(self) -> float | None:
        return None if self.R is None else float(self.R)


def scatter_emit(k_max: int, workers: int = 1):
    """Rows (k, M3(k), M3(k)/k) for k up to k_max, plus any violations of
    the conjectured bound R3(k) <= 60/143 (reported, not asserted)."""
    records = s3_table(k_max, workers=workers)
    rows = [ScatterRow(r.k, r.M, r.R) for r in records]
    violations = [row for row in rows
                  if row.R is not None and row.R > M3_RATIO_BOUND]
    return rows, violations
