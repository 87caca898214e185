"""Degree reduction of plane automorphisms over K = F_p(t).

Each round compares the leading forms of the two components.  For an
automorphism the leading form of the higher-degree component is a scalar
multiple of a power of the other one, so subtracting ``alpha * f_i^d``
strictly lowers the degree.  When both components are affine the loop stops.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Optional

from .amalgam import AFF_BA, Letter, Word, reduce_word
from .automorphism import Auto, affine_parts, classify, compose
from .bipoly import BiPoly
from .coefficients import RatFunc


class NotAutomorphism(ValueError):
    def __init__(self, msg: str = "not an automorphism"):
        super().__init__(msg)


@dataclass(frozen=True)
class ReductionStep:
    alpha: RatFunc
    d: int
    side: str  # component that was reduced: "f1" or "f2"

    def __str__(self):
        return f"{self.side}: alpha={self.alpha}, d={self.d}"


NO_STEP = None


def reduce_step(f_i: BiPoly, f_j: BiPoly, side: str = "f2") -> Optional[ReductionStep]:
    """alpha, d with deg(f_j - alpha*f_i^d) < deg f_j, or NO_STEP."""
    di, dj = f_i.total_degree(), f_j.total_degree()
    if dj <= 1 or di < 1 or di > dj or dj % di:
        return NO_STEP
    d = dj // di
    Li = f_i.leading_form()
    Lj = f_j.leading_form()
    Lid = Li ** d
    top = Lid.sort_key_terms()[0][0]
    alpha = Lj.coefficient(*top) / Lid.coefficient(*top)
    if alpha.is_zero() or Lj != Lid.scale(alpha):
        return NO_STEP
    return ReductionStep(alpha, d, side)


def _run(phi: Auto, check=None):
    """Reduce phi to an affine map.  Returns (final affine map, steps) where
    phi = final * E_k^-1 * ... * E_1^-1 and E_i is the i-th elementary map."""
    p = phi.p
    f1, f2 = phi.f1.to_ring("K"), phi.f2.to_ring("K")
    steps: list[ReductionStep] = []
    while max(f1.total_degree(), f2.total_degree()) > 1:
        before = f1.total_degree() + f2.total_degree()
        if f1.total_degree() <= f2.total_degree():
            step = reduce_step(f1, f2, "f2")
            if step is NO_STEP:
                raise NotAutomorphism()
            f2 = f2 - (f1 ** step.d).scale(step.alpha)
        else:
            step = reduce_step(f2, f1, "f1")
            if step is NO_STEP:
                raise NotAutomorphism()
            f1 = f1 - (f2 ** step.d).scale(step.alpha)
        if check:
            check(step)
        steps.append(step)
        assert f1.total_degree() + f2.total_degree() < before
    final = Auto(f1, f2)
    parts = affine_parts(final)
    (a11, a12, a21, a22), _ = parts
    if (a11 * a22 - a12 * a21).is_zero():
        raise NotAutomorphism()
    return final, steps


def elementary_inverse(step: ReductionStep, p: int) -> Auto:
    """The inverse of the elementary map removed by ``step``."""
    x, y = BiPoly.x(p), BiPoly.y(p)
    if step.side == "f2":
        return Auto(x, y + (x ** step.d).scale(step.alpha))
    return Auto(x + (y ** step.d).scale(step.alpha), y)


def _step_letters(step: ReductionStep, p: int) -> list[Letter]:
    g = elementary_inverse(step, p)
    if step.d == 1:
        return [Letter("A", g)]
    if step.side == "f1":
        return [Letter("B", g)]
    tau = Auto.swap(p)
    x, y = BiPoly.x(p), BiPoly.y(p)
    return [Letter("A", tau), Letter("B", Auto(x + (y ** step.d).scale(step.alpha), y)), Letter("A", tau)]


def _assemble(final: Auto, steps: list[ReductionStep], p: int) -> Word:
    letters = [Letter("A", final)]
    for step in reversed(steps):
        letters.extend(_step_letters(step, p))
    return reduce_word(letters, AFF_BA, p)


def decompose_with_trace(phi: Auto) -> tuple[Word, list[ReductionStep]]:
    final, steps = _run(phi)
    return _assemble(final, steps, phi.p), steps


def decompose(phi: Auto) -> Word:
    """A reduced (Aff_2(K), BA_2(K))-word evaluating to phi."""
    return decompose_with_trace(phi)[0]


def decompose_diff_affine(phi: Auto) -> tuple[Word, list[ReductionStep]]:
    """Same reduction, checking that every exponent d is 1 or divisible by p,
    so each elementary factor is itself differentially affine."""
    p = phi.p
    if p == 0:
        raise ValueError("positive characteristic required")
    if not classify(Auto(phi.f1.to_ring("K"), phi.f2.to_ring("K"))).diff_affine:
        raise ValueError("differentially affine automorphism required")

    def check(step: ReductionStep):
        if step.d != 1 and step.d % p:
            raise AssertionError(f"elementary step with d={step.d} not divisible by p={p}")

    final, steps = _run(phi, check)
    return _assemble(final, steps, p), steps


@dataclass(frozen=True)
class AdditiveFactorization:
    """Linear and elementary additive maps whose product is the input."""

    letters: tuple[Auto, ...]
    steps: tuple[ReductionStep, ...]
    p: int

    def evaluate(self) -> Auto:
        if not self.letters:
            return Auto.identity(self.p)
        return reduce(compose, self.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ; ".join(f"({g.f1}, {g.f2})" for g in self.letters) or "empty"


def _shape(g: Auto) -> str:
    if g.degree() <= 1:
        return "linear"
    x, y = BiPoly.x(g.p), BiPoly.y(g.p)
    if g.f2 == y and not (g.f1 - x).uses("x"):
        return "upper"
    if g.f1 == x and not (g.f2 - y).uses("y"):
        return "lower"
    return "other"


def decompose_additive(phi: Auto) -> AdditiveFactorization:
    p = phi.p
    if p == 0 or not classify(Auto(phi.f1.to_ring("K"), phi.f2.to_ring("K"))).additive:
        raise ValueError("not additive")

    def check(step: ReductionStep):
        d = step.d
        while d % p == 0:
            d //= p
        if d != 1:
            raise AssertionError(f"additive step with d={step.d} not a power of p={p}")

    final, steps = _run(phi, check)
    raw = [final] + [elementary_inverse(s, p) for s in reversed(steps)]
    out: list[Auto] = []
    for g in raw:
        if g.is_identity():
            continue
        if out and _shape(out[-1]) == _shape(g):
            g = compose(out.pop(), g)
            if g.is_identity():
                continue
        out.append(g)
    return AdditiveFactorization(tuple(out), tuple(steps), p)


def length_of(phi: Auto) -> int:
    word = decompose(phi)
    if len(word) == 1 and AFF_BA.in_A_and_B(word[0].payload):
        return 0
    return len(word)
