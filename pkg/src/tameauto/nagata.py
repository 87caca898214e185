"""Automorphisms sigma(a, P, Q) = (a^-1 (Q(ax + P(y)) - y), ax + P(y)).

They are defined over R = F_p[t] whenever P(Q(y)) = y modulo a R[y], and
factor over K as beta1 * tau * beta2 with

    beta1 = (ax + P(y), y),  tau = (y, x),  beta2 = (a^-1 (Q(y) - x), y).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .amalgam import AFF_BA, Letter, LetterVerdict, Word, criterion_letters, in_B_times_H, is_reduced, star
from .automorphism import Auto
from .bipoly import BiPoly
from .coefficients import RatFunc, TPoly, is_unit, reduce_mod
from .pstable import PStableSet, ai_order


def _as_y_poly(f: BiPoly, name: str) -> BiPoly:
    if f.uses("x"):
        raise ValueError(f"{name} must be a polynomial in y")
    if not f.is_integral():
        raise ValueError(f"{name} must have coefficients in F_p[t]")
    return f.to_ring("R")


def _is_y_free(f: BiPoly) -> bool:
    return not f.uses("y") and not f.uses("x")


@dataclass(frozen=True)
class SigmaParams:
    a: TPoly
    P: BiPoly
    Q: BiPoly

    def __post_init__(self):
        if self.a.is_zero():
            raise ValueError("a must be nonzero")
        if not (self.a.p == self.P.p == self.Q.p):
            raise ValueError("characteristic mismatch")
        object.__setattr__(self, "P", _as_y_poly(self.P, "P"))
        object.__setattr__(self, "Q", _as_y_poly(self.Q, "Q"))
        y = BiPoly.y(self.p, "R")
        diff = self.P.substitute(BiPoly.x(self.p, "R"), self.Q) - y
        if not reduce_mod(diff, self.a).is_zero():
            raise ValueError("P∘Q ≢ y mod a")

    @property
    def p(self) -> int:
        return self.a.p

    def __str__(self):
        return f"a={self.a}, P={self.P}, Q={self.Q}"


def _a_const(s: SigmaParams) -> BiPoly:
    return BiPoly.const(s.a, s.p, "R")


def make_sigma(s: SigmaParams) -> tuple[Auto, Word]:
    p = s.p
    x, y = BiPoly.x(p, "R"), BiPoly.y(p, "R")
    inner = _a_const(s) * x + s.P
    top = s.Q.substitute(x, inner) - y
    terms = {}
    for e, c in top.terms.items():
        q, r = divmod(c.as_tpoly(), s.a)
        if not r.is_zero():
            raise ArithmeticError("division by a failed")
        terms[e] = RatFunc.from_tpoly(q)
    sigma = Auto(BiPoly(terms, p, "R"), inner)
    ainv = RatFunc.from_tpoly(s.a).inverse()
    beta1 = Auto(inner.to_ring("K"), y.to_ring("K"))
    beta2 = Auto((s.Q - x).scale(ainv), y.to_ring("K"))
    tau = Auto.swap(p)
    word = Word((Letter("B", beta1), Letter("A", tau), Letter("B", beta2)), p)
    return sigma, word


def sigma_is_tame(s: SigmaParams) -> bool:
    """P = b*y + c modulo a R[y].  The congruence P(Q) = y already forces b
    to be invertible modulo a, so only the degree is tested."""
    return reduce_mod(s.P, s.a).degree_in("y") <= 1


def sigma_is_diff_affine(s: SigmaParams) -> bool:
    """P' and Q' free of y, i.e. the Jacobian of sigma has constant entries."""
    return _is_y_free(s.P.partial_derivative("y")) and _is_y_free(s.Q.partial_derivative("y"))


def sigma_in_HT(s: SigmaParams) -> bool:
    """P' is congruent to a constant modulo a R[y]."""
    return _is_y_free(reduce_mod(s.P.partial_derivative("y"), s.a))


def double_coset_reps(s: SigmaParams) -> SigmaParams:
    return SigmaParams(s.a, reduce_mod(s.P, s.a), reduce_mod(s.Q, s.a))


# -- non-normality witnesses ---------------------------------------------------


@dataclass(frozen=True)
class NonNormalityWitness:
    n: int
    a: TPoly
    g: Auto
    t: Auto
    g_word: Word
    word: Word
    verdicts: tuple[LetterVerdict, ...]
    reduced: bool

    @property
    def verdict(self) -> str:
        return "NOT_IN" if any(not v.passed for v in self.verdicts) else "UNDECIDED"

    def conjugate(self) -> Auto:
        """g t g^-1 expanded; the degree grows like n^4."""
        return self.word.evaluate()


def nonnormality_witness(I: PStableSet, J: PStableSet, a: TPoly) -> NonNormalityWitness:
    """An element of <A^J, T> whose conjugate of tau = (y, x) leaves <A^I, T>."""
    if I.p != J.p or I.p != a.p:
        raise ValueError("characteristic mismatch")
    order = ai_order(J, I)
    if order.subset:
        raise ValueError("I not proper in J")
    if a.is_zero() or is_unit(a):
        raise ValueError("a must be a non-unit")
    n = order.witness
    p = a.p
    x, y = BiPoly.x(p, "R"), BiPoly.y(p, "R")
    A = BiPoly.const(a, p, "R")
    P1 = y + A * y ** n
    P2 = y - A * y ** n
    g, g_word = make_sigma(SigmaParams(a * a, P1, P2))
    tau = Auto.swap(p)
    t_word = Word((Letter("A", tau),), p)
    word = star(star(g_word, t_word), g_word.inverse())
    verdicts = tuple(criterion_letters(word, AFF_BA, I))
    return NonNormalityWitness(n, a, g, tau, g_word, word, verdicts, is_reduced(word))


# -- random parameters ----------------------------------------------------------


def _inverse_mod(b: TPoly, a: TPoly) -> TPoly:
    """b^-1 modulo a (b coprime to a)."""
    r0, r1 = a, b % a
    s0, s1 = TPoly.zero(a.p), TPoly.one(a.p)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.deg != 0:
        raise ValueError("not invertible modulo a")
    return (s0.scale(pow(r0.coeffs[0], -1, a.p))) % a


def _random_tpoly(rng: random.Random, p: int, max_deg: int) -> TPoly:
    return TPoly([rng.randrange(p) for _ in range(max_deg + 1)], p)


def random_sigma_params(rng: random.Random, p: int, max_a_deg: int = 3, max_g_deg: int = 4) -> SigmaParams:
    """Random parameters with a non-unit a of degree <= max_a_deg.

    a is a product of (t - c)^e with e <= 2, and P = b*y + c + r*g(y) with r
    the radical of a, so r*g is nilpotent modulo a.  Q is then obtained from
    the fixed-point iteration Q <- b^-1 (y - c - r*g(Q)), which is exact
    modulo a after two rounds since r^2 = 0 there.
    """
    while True:
        a = TPoly.one(p)
        r = TPoly.one(p)
        roots = list(range(p))
        rng.shuffle(roots)
        for c in roots:
            e = rng.choice([0, 1, 2])
            if e and a.deg + e <= max_a_deg:
                a = a * TPoly([-c, 1], p) ** e
                r = r * TPoly([-c, 1], p)
        if a.deg >= 1:
            break
    while True:
        b = _random_tpoly(rng, p, a.deg - 1)
        if not b.is_zero() and b.gcd(a).is_one():
            break
    c = _random_tpoly(rng, p, a.deg - 1)
    x, y = BiPoly.x(p, "R"), BiPoly.y(p, "R")
    # exponents: arbitrary, or only multiples of p (giving P' = b mod a)
    if rng.random() < 0.4:
        exps = [k for k in range(2, max_g_deg + 1) if k % p == 0] or [p]
    else:
        exps = list(range(2, max_g_deg + 1))
    g = BiPoly({(0, k): _random_tpoly(rng, p, a.deg - 1) for k in exps if rng.random() < 0.7}, p, "R")
    N = g.scale(r)
    P = reduce_mod(y.scale(b) + BiPoly.const(c, p, "R") + N, a)
    binv = _inverse_mod(b, a)
    Q = reduce_mod((y - BiPoly.const(c, p, "R")).scale(binv), a)
    for _ in range(2):
        Q = reduce_mod((y - BiPoly.const(c, p, "R") - N.substitute(x, Q)).scale(binv), a)
    return SigmaParams(a, P, Q)
