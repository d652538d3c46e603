"""Upper bounds on F(m) and the numeric inequalities behind the main bound.

Bound values are exact sympy expressions (integer powers of square roots are
kept symbolic).  The proof inequalities are checked with mpmath interval
arithmetic: a check passes only when the upper end of the left-hand interval
is below the lower end of the right-hand one, so passing is a certificate and
not a floating-point accident.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Sequence

import sympy as sp
from mpmath import iv

from .core import as_modulus
from .errors import DomainError, SubsetBlowup
from .modarith import Modulus

iv.dps = 50

MAX_SUBSET_PRIMES = 14
DEFAULT_C = sp.Rational(1, 5)


def _as_rational(c) -> sp.Rational:
    if isinstance(c, sp.Basic):
        return sp.nsimplify(c)
    return sp.Rational(str(c))


def g_d(n: int, d: int) -> sp.Expr:
    """(3n)^{1.5(n-d)}, exactly."""
    if not (1 <= d <= n):
        raise DomainError(f"need 1 <= d <= n, got n={n}, d={d}")
    return sp.Integer(3 * n) ** sp.Rational(3 * (n - d), 2)


def theorem_bound(m) -> sp.Expr:
    """sqrt(m) * (3n)^{1.5n} where n counts the odd prime divisors of m."""
    modulus = as_modulus(m)
    n = modulus.n
    return sp.sqrt(modulus.m) * sp.Integer(3 * n) ** sp.Rational(3 * n, 2)


def matolcsi_ruzsa_bound(m) -> sp.Expr | None:
    """sqrt(m) (a strict bound) when every prime divisor is 1 mod 4, else ``None``."""
    modulus = as_modulus(m)
    return sp.sqrt(modulus.m) if modulus.all_one_mod_four else None


def alon_tournament_bound(m) -> int | None:
    """prod (p_i + 1)/2 when every prime divisor is 3 mod 4, else ``None``."""
    modulus = as_modulus(m)
    if not modulus.all_three_mod_four:
        return None
    out = 1
    for p in modulus.primes:
        out *= (p + 1) // 2
    return out


@dataclass(frozen=True)
class CombinedBound:
    value: sp.Expr
    c: sp.Rational
    branches: dict[str, sp.Expr | None]
    active: str


def combined_bound(m, c=DEFAULT_C) -> CombinedBound:
    """m * min(2^{-cn}, m^{-1/2} (3n)^{1.5n}) together with the labelled branch values.

    ``branches`` also records the reduction used when the product m' of the
    3 mod 4 primes is small: if m' < sqrt(m), then |A| <= m' sqrt(m/m') <= m^{3/4}.
    """
    modulus = as_modulus(m)
    c = _as_rational(c)
    if c <= 0:
        raise DomainError(f"c must be positive, got {c}")
    M, n = modulus.m, modulus.n
    exponential = M * sp.Integer(2) ** (-c * n)
    theorem = theorem_bound(modulus)
    m3 = 1
    for p in modulus.primes:
        if p % 4 == 3:
            m3 *= p
    small_m3 = m3 * m3 < M
    branches = {
        "exponential": exponential,
        "theorem": theorem,
        "m_prime": sp.Integer(m3),
        "small_m_prime": m3 * sp.sqrt(sp.Rational(M, m3)) if small_m3 else None,
        "m_three_quarters": sp.Integer(M) ** sp.Rational(3, 4),
    }
    if bool(exponential <= theorem):
        return CombinedBound(exponential, c, branches, "exponential")
    return CombinedBound(theorem, c, branches, "theorem")


def ceil_decimal(x: sp.Expr, digits: int = 6) -> float:
    """x rounded up to ``digits`` decimals."""
    scale = 10**digits
    return float(sp.ceiling(x * scale) / scale)


@dataclass
class BoundEntry:
    name: str
    value: sp.Expr | None
    applicable: bool
    source: str
    strict: bool = False

    def admits(self, size: int) -> bool:
        """Whether a valid set of this size is consistent with the bound."""
        if not self.applicable:
            return True
        return bool(size < self.value) if self.strict else bool(size <= self.value)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "strict": self.strict,
            "source": self.source,
            "exact": None if self.value is None else str(self.value),
            "value": None if self.value is None else ceil_decimal(self.value),
        }


@dataclass
class BoundReport:
    m: int
    n: int
    primes: tuple[int, ...]
    entries: list[BoundEntry]
    c: sp.Rational = DEFAULT_C
    F: int | None = None
    F_exact: bool | None = None

    @property
    def min_applicable(self) -> BoundEntry:
        live = [e for e in self.entries if e.applicable and e.name != "combined"]
        return min(live, key=lambda e: sp.N(e.value, 60))

    def entry(self, name: str) -> BoundEntry:
        return next(e for e in self.entries if e.name == name)

    def violations(self, size: int | None = None) -> list[str]:
        size = self.F if size is None else size
        if size is None:
            return []
        return [e.name for e in self.entries if not e.admits(size)]

    def slack(self) -> float | None:
        if self.F is None:
            return None
        return float(sp.N(self.min_applicable.value - self.F, 30))

    def to_json(self) -> dict:
        best = self.min_applicable
        return {
            "m": self.m,
            "n": self.n,
            "primes": list(self.primes),
            "c": str(self.c),
            "F": self.F,
            "F_exact": self.F_exact,
            "bounds": [e.to_json() for e in self.entries],
            "min_applicable": {"name": best.name, "value": ceil_decimal(best.value)},
            "violations": self.violations(),
        }


def bound_report(m, c=DEFAULT_C, F: int | None = None, F_exact: bool | None = None) -> BoundReport:
    modulus = as_modulus(m)
    mr = matolcsi_ruzsa_bound(modulus)
    alon = alon_tournament_bound(modulus)
    comb_ = combined_bound(modulus, c)
    single_3 = modulus.n == 1 and modulus.m % 4 == 3
    entries = [
        BoundEntry("theorem", theorem_bound(modulus), True, "main-theorem"),
        BoundEntry("matolcsi_ruzsa", mr, mr is not None, "matolcsi-ruzsa", strict=True),
        BoundEntry("alon", None if alon is None else sp.Integer(alon), alon is not None, "alon-lemma"),
        # the 2^{-cn} branch is only established when every prime is 3 mod 4
        BoundEntry("combined", comb_.value, modulus.all_three_mod_four, "combined-min"),
        BoundEntry("prime_3_mod_4", sp.Integer(1) if single_3 else None, single_3, "prime-3-mod-4"),
    ]
    return BoundReport(modulus.m, modulus.n, modulus.primes, entries, comb_.c, F, F_exact)


# ---------------------------------------------------------------- interval checks


def _fourth_root(x) -> iv.mpf:
    return iv.sqrt(iv.sqrt(iv.mpf(int(x))))


def _g_half(n: int, d: int) -> iv.mpf:
    # G_d^{1/2} = (3n)^{0.75(n-d)} = ((3n)^{3(n-d)})^{1/4}
    return _fourth_root(sp.Integer(3 * n) ** (3 * (n - d)))


@dataclass
class InequalityCheck:
    name: str
    left: iv.mpf
    right: iv.mpf
    applicable: bool = True
    strict: bool = True

    @property
    def passed(self) -> bool:
        """left < right (or <=), certified on the interval endpoints."""
        if self.strict:
            return bool(self.left.b < self.right.a)
        return bool(self.left.b <= self.right.a)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "left_upper": float(self.left.b),
            "right_lower": float(self.right.a),
            "passed": self.passed,
        }


@dataclass
class InequalityReport:
    primes: tuple[int, ...]
    checks: list[InequalityCheck]
    elementary: list[iv.mpf] = field(repr=False, default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.applicable)

    def check(self, name: str) -> InequalityCheck:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {"primes": list(self.primes), "passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def subset_sums(primes: Sequence[int]) -> list[iv.mpf]:
    """e_l = sum over |D'| = l of p_{D'}^{-1/4}, by enumerating every subset."""
    n = len(primes)
    q = [1 / _fourth_root(p) for p in primes]
    vals = [iv.mpf(1)] * (1 << n)
    e = [iv.mpf(0)] * (n + 1)
    e[0] = iv.mpf(1)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        vals[mask] = vals[mask & (mask - 1)] * q[low]
        e[mask.bit_count()] += vals[mask]
    return e


def t1_sum(n: int, e: Sequence[iv.mpf]) -> iv.mpf:
    return sum((_g_half(n, d) * e[d] for d in range(1, n + 1)), iv.mpf(0))


def t2_sum(n: int, e: Sequence[iv.mpf]) -> iv.mpf:
    """sum over D' of p_{D'}^{-1/4} times sum over D strictly containing D' of G_|D|^{1/2} G_{|D|-|D'|}^{1/2}."""
    total = iv.mpf(0)
    for l in range(n):
        inner = iv.mpf(0)
        for r in range(l + 1, n + 1):
            inner += comb(n - l, r - l) * _g_half(n, r) * _g_half(n, r - l)
        total += e[l] * inner
    return total


def proof_inequality_report(primes: Sequence[int]) -> InequalityReport:
    primes = tuple(int(p) for p in primes)
    if list(primes) != sorted(set(primes)) or any(p < 3 or p % 2 == 0 for p in primes):
        raise DomainError("primes must be distinct, sorted and odd")
    n = len(primes)
    if n == 0:
        raise DomainError("need at least one prime")
    if n > MAX_SUBSET_PRIMES:
        raise SubsetBlowup(f"n={n} > {MAX_SUBSET_PRIMES}: refusing 2^{n} subsets")

    e = subset_sums(primes)
    three_n_34 = _fourth_root(sp.Integer(3 * n) ** (3 * n))  # (3n)^{0.75n}
    c113, c065, c027, c016 = iv.mpf("1.13"), iv.mpf("0.65"), iv.mpf("0.27"), iv.mpf("0.16")
    n34 = _fourth_root(n**3)
    x = 1 / (iv.sqrt(iv.mpf(27)) * iv.sqrt(iv.mpf(n)))  # 3^{-1.5} n^{-1/2}
    ratio = c113 / _fourth_root(27)  # 1.13 * 3^{-0.75}

    integral = iv.mpf(2) / 3 * (_fourth_root((2 * n + 2) ** 3) - _fourth_root(8))
    odd_sum = sum((1 / _fourth_root(2 * j + 1) for j in range(1, n + 1)), iv.mpf(0))
    t1_series = sum((ratio**d / factorial(d) for d in range(1, n + 1)), iv.mpf(0))
    t2_series = sum((ratio**l / factorial(l) for l in range(n)), iv.mpf(0))

    checks = [
        InequalityCheck("sum_p_quarter", e[1], c113 * n34),
        # p_j >= 2j + 1 termwise, which gives the sum comparison; checked on integers
        InequalityCheck("primes_dominate_odd_numbers",
                        iv.mpf(max(2 * j + 1 - p for j, p in enumerate(primes, 1))), iv.mpf(0), strict=False),
        InequalityCheck("odd_numbers_vs_integral", odd_sum, integral),
        InequalityCheck("integral_vs_two_thirds", integral, iv.mpf(2) / 3 * _fourth_root((2 * n) ** 3)),
        InequalityCheck("two_thirds_vs_1.13", iv.mpf(2) / 3 * _fourth_root((2 * n) ** 3), c113 * n34),
        InequalityCheck("T1", t1_sum(n, e), c065 * three_n_34),
        InequalityCheck("T1_series_constant", t1_series, c065),
        InequalityCheck("T2_geometric_factor", x / (1 - x), c016, applicable=n >= 2),
        InequalityCheck("T2_series_constant", c016 * t2_series, c027),
        InequalityCheck("T2", t2_sum(n, e), c027 * three_n_34**2),
    ]
    return InequalityReport(primes, checks, e)


@dataclass
class ContradictionReport:
    m: int
    n: int
    assumed_size: int
    sigma: iv.mpf
    L: iv.mpf
    R: iv.mpf
    middle: iv.mpf

    @property
    def sigma_ok(self) -> bool:
        return bool(self.sigma.a >= 0.99)

    @property
    def contradiction(self) -> bool:
        """L > R, certified by interval endpoints."""
        return bool(self.L.a > self.R.b)

    @property
    def chain_ok(self) -> bool:
        """L > (0.99 - 0.65) sqrt(m) (3n)^{1.5n} > R."""
        return bool(self.L.a > self.middle.b and self.middle.a > self.R.b)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "assumed_size": self.assumed_size,
            "sigma_lower": float(self.sigma.a),
            "L_lower": float(self.L.a),
            "R_upper": float(self.R.b),
            "sigma_ok": self.sigma_ok,
            "chain_ok": self.chain_ok,
            "contradiction": self.contradiction,
        }


def check_final_contradiction(m, assumed_size: int) -> ContradictionReport:
    """Evaluate the closing inequality for a hypothetical valid set above the bound.

    With sigma = 1 - 1/|A| the estimates give L <= R where
    L = |A|^{1/2} (|A|^{1/2} sigma - 0.65 m^{1/4} (3n)^{0.75n}) and
    R = 0.27 m^{1/2} (3n)^{1.5n}; for |A| above the bound L > R instead.
    """
    modulus = as_modulus(m)
    n = modulus.n
    if n < 2:
        raise DomainError("the closing step needs n >= 2")
    if not bool(sp.Integer(assumed_size) > theorem_bound(modulus)):
        raise DomainError(f"{assumed_size} does not exceed the bound for m={modulus.m}")
    A = iv.mpf(assumed_size)
    sigma = 1 - 1 / A
    root_A = iv.sqrt(A)
    three_n_34 = _fourth_root(sp.Integer(3 * n) ** (3 * n))
    m14 = _fourth_root(modulus.m)
    L = root_A * (root_A * sigma - iv.mpf("0.65") * m14 * three_n_34)
    scale = m14**2 * three_n_34**2
    R = iv.mpf("0.27") * scale
    middle = (iv.mpf("0.99") - iv.mpf("0.65")) * scale
    return ContradictionReport(modulus.m, n, assumed_size, sigma, L, R, middle)
