"""Random elements for tests and benchmarks.  Every function takes an explicit
``random.Random`` so runs are reproducible."""
from __future__ import annotations

import random
from functools import reduce

from .amalgam import Letter
from .automorphism import Auto, compose
from .bipoly import BiPoly
from .coefficients import RatFunc, TPoly


def random_tpoly(rng: random.Random, p: int, max_deg: int = 2, nonzero: bool = False) -> TPoly:
    while True:
        f = TPoly([rng.randrange(p) for _ in range(rng.randint(0, max_deg) + 1)], p)
        if f.coeffs or not nonzero:
            return f


def random_ratfunc(rng: random.Random, p: int, max_deg: int = 2, integral: bool = False,
                   nonzero: bool = False) -> RatFunc:
    num = random_tpoly(rng, p, max_deg, nonzero)
    if integral or rng.random() < 0.5:
        return RatFunc.from_tpoly(num)
    den = random_tpoly(rng, p, max_deg, nonzero=True)
    return RatFunc(num, den)


def random_unit(rng: random.Random, p: int, ring: str = "K") -> RatFunc:
    if ring == "R":
        return RatFunc.from_int(rng.randrange(1, p), p)
    return random_ratfunc(rng, p, 1, nonzero=True)


def random_affine(rng: random.Random, p: int, ring: str = "K", linear: bool = False) -> Auto:
    integral = ring == "R"
    while True:
        m = [random_ratfunc(rng, p, 1, integral) for _ in range(4)]
        det = m[0] * m[3] - m[1] * m[2]
        if det.is_zero():
            continue
        if integral and not det.is_constant():
            continue
        break
    x, y = BiPoly.x(p, ring), BiPoly.y(p, ring)
    b1 = b2 = RatFunc.zero(p)
    if not linear:
        b1, b2 = random_ratfunc(rng, p, 1, integral), random_ratfunc(rng, p, 1, integral)
    return Auto(
        x.scale(m[0]) + y.scale(m[1]) + BiPoly.const(b1, p, ring),
        x.scale(m[2]) + y.scale(m[3]) + BiPoly.const(b2, p, ring),
    )


def random_y_poly(rng: random.Random, p: int, exps, ring: str = "K", lead: bool = True) -> BiPoly:
    """Random polynomial in y supported on ``exps`` with a nonzero top term."""
    exps = sorted(exps)
    integral = ring == "R"
    terms = {(0, e): random_ratfunc(rng, p, 1, integral) for e in exps}
    if lead and exps:
        terms[(0, exps[-1])] = random_ratfunc(rng, p, 1, integral, nonzero=True)
    return BiPoly(terms, p, ring)


def random_triangular(rng: random.Random, p: int, degree: int, ring: str = "K") -> Auto:
    """(u*x + P(y), v*y + w) with deg P = degree."""
    x, y = BiPoly.x(p, ring), BiPoly.y(p, ring)
    P = random_y_poly(rng, p, range(degree + 1), ring)
    u, v = random_unit(rng, p, ring), random_unit(rng, p, ring)
    w = random_ratfunc(rng, p, 1, ring == "R")
    return Auto(x.scale(u) + P, y.scale(v) + BiPoly.const(w, p, ring))


def random_tame(rng: random.Random, p: int, max_letters: int = 4, max_degree: int = 9,
                ring: str = "K") -> tuple[Auto, list[Letter]]:
    """Alternating product of at most ``max_letters`` affine and triangular
    letters with total degree at most ``max_degree``."""
    n = rng.randint(1, max_letters)
    tag = rng.choice("AB")
    letters: list[Letter] = []
    degree = 1
    for _ in range(n):
        if tag == "A":
            letters.append(Letter("A", random_affine(rng, p, ring)))
        else:
            top = max_degree // degree
            if top < 2:
                break
            d = rng.randint(2, min(3, top))
            degree *= d
            letters.append(Letter("B", random_triangular(rng, p, d, ring)))
        tag = "B" if tag == "A" else "A"
    if not letters:
        letters.append(Letter("A", random_affine(rng, p, ring)))
    phi = reduce(compose, (l.payload for l in letters))
    return phi, letters


def random_intersection(rng: random.Random, p: int, ring: str = "K") -> Auto:
    """Random affine triangular map (u*x + b*y + c, v*y + w)."""
    x, y = BiPoly.x(p, ring), BiPoly.y(p, ring)
    integral = ring == "R"
    u, v = random_unit(rng, p, ring), random_unit(rng, p, ring)
    b, c, w = (random_ratfunc(rng, p, 1, integral) for _ in range(3))
    return Auto(x.scale(u) + y.scale(b) + BiPoly.const(c, p, ring), y.scale(v) + BiPoly.const(w, p, ring))


def random_diff_affine(rng: random.Random, p: int, max_letters: int = 4, max_degree: int = 18) -> Auto:
    """Product of affine maps and triangular maps whose nonlinear exponents
    are multiples of p."""
    x, y = BiPoly.x(p), BiPoly.y(p)
    n = rng.randint(2, max_letters)
    tag = rng.choice("AB")
    maps = []
    degree = 1
    for _ in range(n):
        if tag == "A":
            maps.append(random_affine(rng, p))
        else:
            choices = [d for d in range(p, max_degree // degree + 1, p) if d <= 3 * p]
            if not choices:
                break
            d = rng.choice(choices)
            degree *= d
            P = random_y_poly(rng, p, [0, 1] + list(range(p, d + 1, p)))
            maps.append(Auto(x.scale(random_unit(rng, p)) + P, y.scale(random_unit(rng, p)) + BiPoly.const(random_ratfunc(rng, p, 1), p)))
        tag = "B" if tag == "A" else "A"
    return reduce(compose, maps)


def random_additive(rng: random.Random, p: int, max_letters: int = 4, max_degree: int = 27) -> Auto:
    """Product of linear maps and elementary maps x -> x + c*y^(p^k) or
    y -> y + c*x^(p^k)."""
    x, y = BiPoly.x(p), BiPoly.y(p)
    n = rng.randint(1, max_letters)
    maps = []
    degree = 1
    for _ in range(n):
        kind = rng.choice(["linear", "upper", "lower"])
        if kind == "linear":
            maps.append(random_affine(rng, p, linear=True))
            continue
        powers = [p ** k for k in (1, 2) if degree * p ** k <= max_degree]
        if not powers:
            continue
        q = rng.choice(powers)
        degree *= q
        c = random_ratfunc(rng, p, 1, nonzero=True)
        if kind == "upper":
            maps.append(Auto(x + (y ** q).scale(c), y))
        else:
            maps.append(Auto(x, y + (x ** q).scale(c)))
    if not maps:
        maps.append(random_affine(rng, p, linear=True))
    return reduce(compose, maps)
