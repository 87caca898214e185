"""p-stable exponent sets and the triangular parts of affine-type subgroups.

A set I of integers >= 2 is p-stable when, for every n in I, each k >= 2
with C(n, k) nonzero mod p is again in I.  Equivalently the span of
{y^i : i in I} together with y and 1 is closed under affine changes y -> ay+b.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .automorphism import Auto, triangular_parts
from .bipoly import BiPoly
from .coefficients import check_char

FINITE = "finite"
RANGE_TO = "range_to"
PPOWERS = "ppowers"
PMULT = "pmult"
ALL = "all"
EMPTY = "empty"
SCALED_RANGE = "scaled_range"
SCALED_ALL = "scaled_all"
PPAIR = "ppair"
UNION = "union"
INTERSECTION = "intersection"

_KINDS = {FINITE, RANGE_TO, PPOWERS, PMULT, ALL, EMPTY, SCALED_RANGE, SCALED_ALL, PPAIR, UNION, INTERSECTION}
_ZERO_CHAR_OK = {EMPTY, RANGE_TO, ALL, UNION, INTERSECTION}

DEFAULT_BOUND = 200


@dataclass(frozen=True)
class PStableSet:
    kind: str
    p: int
    args: tuple = ()

    def __post_init__(self):
        check_char(self.p)
        if self.kind not in _KINDS:
            raise ValueError(f"unknown set kind {self.kind!r}")
        if self.p == 0 and self.kind not in _ZERO_CHAR_OK:
            raise ValueError(f"{self.kind} is not available in characteristic 0")
        if self.kind == FINITE:
            if any(n < 2 for n in self.args):
                raise ValueError("elements must be >= 2")
            object.__setattr__(self, "args", tuple(sorted(set(self.args))))
        elif self.kind == RANGE_TO:
            (k,) = self.args
            if k < 2:
                raise ValueError("range upper bound must be >= 2")
        elif self.kind in (SCALED_RANGE, SCALED_ALL, PPAIR):
            if self.args[0] < 1:
                raise ValueError("scale exponent must be >= 1")
            if self.kind == SCALED_RANGE and self.args[1] < 1:
                raise ValueError("range length must be >= 1")
        elif self.kind in (UNION, INTERSECTION):
            if not self.args:
                raise ValueError("empty combination")
            for part in self.args:
                if not isinstance(part, PStableSet) or part.p != self.p:
                    raise ValueError("parts must be sets over the same characteristic")

    # -- constructors ----------------------------------------------------

    @classmethod
    def finite(cls, elems, p: int) -> "PStableSet":
        return cls(FINITE, p, tuple(elems))

    @classmethod
    def range_to(cls, k: int, p: int) -> "PStableSet":
        return cls(RANGE_TO, p, (k,))

    @classmethod
    def ppowers(cls, p: int) -> "PStableSet":
        return cls(PPOWERS, p)

    @classmethod
    def pmult(cls, p: int) -> "PStableSet":
        return cls(PMULT, p)

    @classmethod
    def all(cls, p: int) -> "PStableSet":
        return cls(ALL, p)

    @classmethod
    def empty(cls, p: int) -> "PStableSet":
        return cls(EMPTY, p)

    @classmethod
    def scaled_range(cls, n: int, k: int, p: int) -> "PStableSet":
        return cls(SCALED_RANGE, p, (n, k))

    @classmethod
    def scaled_all(cls, n: int, p: int) -> "PStableSet":
        return cls(SCALED_ALL, p, (n,))

    @classmethod
    def ppair(cls, n: int, p: int) -> "PStableSet":
        return cls(PPAIR, p, (n,))

    def __or__(self, other: "PStableSet") -> "PStableSet":
        return PStableSet(UNION, self.p, (self, other))

    def __and__(self, other: "PStableSet") -> "PStableSet":
        return PStableSet(INTERSECTION, self.p, (self, other))

    # -- membership ------------------------------------------------------

    def __contains__(self, n: int) -> bool:
        if n < 2:
            return False
        p, k, a = self.p, self.kind, self.args
        if k == FINITE:
            return n in a
        if k == RANGE_TO:
            return n <= a[0]
        if k == PPOWERS:
            while n % p == 0:
                n //= p
            return n == 1
        if k == PMULT:
            return n % p == 0
        if k == ALL:
            return True
        if k == EMPTY:
            return False
        if k == SCALED_RANGE:
            q = p ** a[0]
            return n % q == 0 and n // q <= a[1]
        if k == SCALED_ALL:
            return n % p ** a[0] == 0
        if k == PPAIR:
            return n in (p ** a[0], p ** (a[0] + 1))
        if k == UNION:
            return any(n in part for part in a)
        return all(n in part for part in a)

    def as_finite(self) -> Optional[frozenset]:
        """The elements when the set is known to be finite, else None."""
        p, k, a = self.p, self.kind, self.args
        if k == FINITE:
            return frozenset(a)
        if k == RANGE_TO:
            return frozenset(range(2, a[0] + 1))
        if k == EMPTY:
            return frozenset()
        if k == SCALED_RANGE:
            q = p ** a[0]
            return frozenset(q * i for i in range(1, a[1] + 1) if q * i >= 2)
        if k == PPAIR:
            return frozenset((p ** a[0], p ** (a[0] + 1)))
        if k == UNION:
            parts = [part.as_finite() for part in a]
            if any(s is None for s in parts):
                return None
            return frozenset().union(*parts)
        if k == INTERSECTION:
            finite = [part.as_finite() for part in a]
            known = [s for s in finite if s is not None]
            if not known:
                return None
            base = min(known, key=len)
            return frozenset(n for n in base if n in self)
        return None

    def elements_upto(self, bound: int) -> list[int]:
        return [n for n in range(2, bound + 1) if n in self]

    def __str__(self):
        k, a = self.kind, self.args
        if k == FINITE:
            return "{" + ",".join(map(str, a)) + "}"
        if k == RANGE_TO:
            return f"2..{a[0]}"
        if k in (PPOWERS, PMULT, ALL, EMPTY):
            return k
        if k == SCALED_RANGE:
            return f"scaled({a[0]},{a[1]})"
        if k == SCALED_ALL:
            return f"scaled({a[0]})"
        if k == PPAIR:
            return f"ppair({a[0]})"
        op = " | " if k == UNION else " & "
        return "(" + op.join(str(part) for part in a) + ")"


# -- binomials ---------------------------------------------------------------


def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        result = result * _small_binom(ni, ki, p) % p
        n //= p
        k //= p
    return result


@lru_cache(maxsize=None)
def _small_binom(n: int, k: int, p: int) -> int:
    num = den = 1
    for i in range(k):
        num = num * (n - i) % p
        den = den * (i + 1) % p
    return num * pow(den, -1, p) % p


def expand_binomial_support(n: int, p: int) -> set[int]:
    """Exponents with nonzero coefficient in (y+1)^n over F_p."""
    if p == 0:
        return set(range(n + 1))
    # the support is the set of k whose base-p digits are bounded by n's
    support = {0}
    place = 1
    while n:
        d = n % p
        support = {s + place * j for s in support for j in range(d + 1)}
        n //= p
        place *= p
    return support


# -- stability ---------------------------------------------------------------


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    certificate: str
    exact: bool = True
    counterexample: Optional[tuple[int, int]] = None
    bound: Optional[int] = None


def _violation(n: int, I: PStableSet) -> Optional[tuple[int, int]]:
    for k in sorted(expand_binomial_support(n, I.p)):
        if k >= 2 and k not in I:
            return (n, k)
    return None


def audit_condition_iv(I: PStableSet, bound: int = DEFAULT_BOUND) -> Optional[tuple[int, int]]:
    """First pair (n, k) with n in I, n <= bound, C(n,k) != 0 mod p and
    k not in I; None when no such pair exists below the bound."""
    for n in I.elements_upto(bound):
        bad = _violation(n, I)
        if bad:
            return bad
    return None


def is_p_stable(I: PStableSet, bound: int = DEFAULT_BOUND) -> StabilityVerdict:
    p, k, a = I.p, I.kind, I.args
    if k == EMPTY:
        return StabilityVerdict(True, "empty set: nothing to check")
    if k == ALL:
        return StabilityVerdict(True, "every k >= 2 lies in I")
    if k == RANGE_TO:
        return StabilityVerdict(True, f"every 2 <= k <= n lies in 2..{a[0]} when n does")
    if k == PPOWERS:
        return StabilityVerdict(True, "(y+1)^(p^j) = y^(p^j) + 1")
    if k == PMULT:
        return StabilityVerdict(True, "(y+1)^(p*k) = (y^p + 1)^k")
    if k in (SCALED_RANGE, SCALED_ALL):
        return StabilityVerdict(True, f"(y+1)^(p^{a[0]}*k) = (y^(p^{a[0]}) + 1)^k")
    if k == PPAIR:
        n = a[0]
        return StabilityVerdict(True, f"(y+1)^(p^{n}+1) = y^(p^{n}+1) + y^(p^{n}) + y + 1")
    if k == FINITE:
        for n in a:
            bad = _violation(n, I)
            if bad:
                return StabilityVerdict(False, f"C({bad[0]},{bad[1]}) != 0 mod {p} and {bad[1]} not in I",
                                        counterexample=bad)
        return StabilityVerdict(True, "binomial support check over all n in I")
    # unions and intersections
    parts = [is_p_stable(part, bound) for part in a]
    if all(v.stable for v in parts):
        word = "union" if k == UNION else "intersection"
        return StabilityVerdict(True, f"{word} of p-stable sets", exact=all(v.exact for v in parts))
    finite = I.as_finite()
    if finite is None and k == UNION:
        # elements of stable parts are fine; only the other parts need checking
        unstable = [part for part, v in zip(a, parts) if not v.stable]
        extra = [part.as_finite() for part in unstable]
        if all(e is not None for e in extra):
            for n in sorted(frozenset().union(*extra)):
                bad = _violation(n, I)
                if bad:
                    return StabilityVerdict(False, f"C({bad[0]},{bad[1]}) != 0 mod {p} and {bad[1]} not in I",
                                            counterexample=bad)
            return StabilityVerdict(True, "stable parts plus a checked finite remainder")
    elems = sorted(finite) if finite is not None else I.elements_upto(bound)
    for n in elems:
        bad = _violation(n, I)
        if bad:
            return StabilityVerdict(False, f"C({bad[0]},{bad[1]}) != 0 mod {p} and {bad[1]} not in I",
                                    counterexample=bad)
    if finite is not None:
        return StabilityVerdict(True, "binomial support check over all n in I")
    return StabilityVerdict(True, f"no violation for n <= {bound}", exact=False, bound=bound)


# -- triangular elements of A^I -----------------------------------------------


@dataclass(frozen=True)
class TriangularFactorization:
    """beta = power_part * affine_part with power_part in B^I."""

    power_part: Auto
    affine_part: Auto


def triangular_in_AI(beta: Auto, I: PStableSet) -> tuple[bool, Optional[TriangularFactorization]]:
    parts = triangular_parts(beta)
    if parts is None:
        raise ValueError("triangular element required")
    u, P, v, w = parts
    p = beta.p
    high = {e: c for e, c in P.terms.items() if e[1] >= 2}
    if any(e[1] not in I for e in high):
        return False, None
    S = BiPoly._raw(high, p, "K").scale(u.inverse())
    x, y = BiPoly.x(p), BiPoly.y(p)
    power = Auto(x + S, y)
    b, c = P.coefficient(0, 1), P.coefficient(0, 0)
    affine = Auto(x.scale(u) + y.scale(b) + BiPoly.const(c, p), y.scale(v) + BiPoly.const(w, p))
    return True, TriangularFactorization(power, affine)


# -- containment ---------------------------------------------------------------


@dataclass(frozen=True)
class OrderResult:
    subset: bool
    witness: Optional[int] = None
    exact: bool = True
    bound: Optional[int] = None

    @property
    def label(self) -> str:
        return "SUBSET" if self.subset else f"NOT_SUBSET({self.witness})"


def _family_subset(I: PStableSet, J: PStableSet) -> Optional[bool]:
    """Exact containment for pairs of named infinite families, when known."""
    ki, kj = I.kind, J.kind
    if I == J:
        return True
    if kj == ALL or ki == EMPTY:
        return True
    if ki == PPOWERS and kj == PMULT:
        return True
    if ki == SCALED_ALL and kj == PMULT:
        return True
    if ki == SCALED_ALL and kj == SCALED_ALL:
        return I.args[0] >= J.args[0]
    if ki == PMULT and kj == SCALED_ALL:
        return J.args[0] <= 1
    return None


def ai_order(I: PStableSet, J: PStableSet, bound: int = DEFAULT_BOUND) -> OrderResult:
    """Decide I <= J (equivalently A^I <= A^J)."""
    if I.p != J.p:
        raise ValueError("sets over different characteristics")
    if I.kind == UNION:
        results = [ai_order(part, J, bound) for part in I.args]
        for r in results:
            if not r.subset:
                return r
        exact = all(r.exact for r in results)
        return OrderResult(True, exact=exact, bound=None if exact else bound)
    if J.kind == INTERSECTION:
        results = [ai_order(I, part, bound) for part in J.args]
        for r in results:
            if not r.subset:
                return r
        exact = all(r.exact for r in results)
        return OrderResult(True, exact=exact, bound=None if exact else bound)
    known = _family_subset(I, J)
    if known is True:
        return OrderResult(True)
    finite = I.as_finite()
    if finite is not None:
        for n in sorted(finite):
            if n not in J:
                return OrderResult(False, n)
        return OrderResult(True)
    for n in range(2, bound + 1):
        if n in I and n not in J:
            return OrderResult(False, n)
    jfin = J.as_finite()
    if jfin is not None:
        # an infinite I always outgrows a finite J
        start = max(jfin, default=1) + 1
        for n in range(start, start + 10 ** 6):
            if n in I:
                return OrderResult(False, n)
    return OrderResult(True, exact=known is not None, bound=None if known is not None else bound)
