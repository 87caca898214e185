"""Endomorphisms of R[x,y] and K[x,y] stored as image pairs.

``compose(phi, psi)`` substitutes phi's components into psi, so it first
applies phi to the coordinates and then psi.  With this convention

    (x, y+1) * (x+y^n, y) = (x+(y+1)^n, y+1)

and the three-letter product beta1 * tau * beta2 expands to the familiar
Nagata-type formula (see :mod:`tameauto.nagata`).  The Jacobian chain rule
then reads ``J(phi*psi) = phi(J psi) . J phi``.
"""
from __future__ import annotations

from dataclasses import dataclass, fields

from .bipoly import BiPoly
from .coefficients import RatFunc, is_unit_in


@dataclass(frozen=True)
class Auto:
    f1: BiPoly
    f2: BiPoly

    def __post_init__(self):
        if self.f1.p != self.f2.p:
            raise ValueError("components over different characteristics")

    @property
    def p(self) -> int:
        return self.f1.p

    @property
    def ring(self) -> str:
        return "K" if "K" in (self.f1.ring, self.f2.ring) else "R"

    @classmethod
    def identity(cls, p: int, ring: str = "K") -> "Auto":
        return cls(BiPoly.x(p, ring), BiPoly.y(p, ring))

    @classmethod
    def swap(cls, p: int, ring: str = "K") -> "Auto":
        return cls(BiPoly.y(p, ring), BiPoly.x(p, ring))

    def is_identity(self) -> bool:
        return self.f1 == BiPoly.x(self.p) and self.f2 == BiPoly.y(self.p)

    def apply(self, f: BiPoly) -> BiPoly:
        """f(f1, f2): the image of f under this endomorphism."""
        return f.substitute(self.f1, self.f2)

    def to_ring(self, ring: str) -> "Auto":
        return Auto(self.f1.to_ring(ring), self.f2.to_ring(ring))

    def is_integral(self) -> bool:
        return self.f1.is_integral() and self.f2.is_integral()

    def degree(self):
        return max(self.f1.total_degree(), self.f2.total_degree())

    def __mul__(self, other: "Auto") -> "Auto":
        return compose(self, other)

    def __str__(self):
        return f"x -> {self.f1} ; y -> {self.f2}"


@dataclass(frozen=True)
class JacobianMatrix:
    """Entries ``[[df1/dx, df1/dy], [df2/dx, df2/dy]]``."""

    a11: BiPoly
    a12: BiPoly
    a21: BiPoly
    a22: BiPoly

    def rows(self) -> list[list[BiPoly]]:
        return [[self.a11, self.a12], [self.a21, self.a22]]

    def det(self) -> BiPoly:
        return self.a11 * self.a22 - self.a12 * self.a21

    def apply(self, phi: Auto) -> "JacobianMatrix":
        return JacobianMatrix(*(phi.apply(e) for e in (self.a11, self.a12, self.a21, self.a22)))

    def __matmul__(self, other: "JacobianMatrix") -> "JacobianMatrix":
        a, b = self, other
        return JacobianMatrix(
            a.a11 * b.a11 + a.a12 * b.a21,
            a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21,
            a.a21 * b.a12 + a.a22 * b.a22,
        )

    def is_constant(self) -> bool:
        return all(e.is_constant() for e in (self.a11, self.a12, self.a21, self.a22))


@dataclass(frozen=True)
class ClassFlags:
    translation: bool
    linear: bool
    affine: bool
    elementary: bool
    triangular: bool
    additive: bool
    geom_affine: bool
    diff_affine: bool

    def as_dict(self) -> dict[str, bool]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def compose(phi: Auto, psi: Auto) -> Auto:
    return Auto(phi.apply(psi.f1), phi.apply(psi.f2))


def jacobian(phi: Auto) -> JacobianMatrix:
    return JacobianMatrix(
        phi.f1.partial_derivative("x"),
        phi.f1.partial_derivative("y"),
        phi.f2.partial_derivative("x"),
        phi.f2.partial_derivative("y"),
    )


def _unit(c: RatFunc, ring: str) -> bool:
    return is_unit_in(c, ring)


def affine_parts(phi: Auto):
    """Return ((a11, a12, a21, a22), (b1, b2)) for an affine pair, else None."""
    if phi.f1.total_degree() > 1 or phi.f2.total_degree() > 1:
        return None
    f1, f2 = phi.f1, phi.f2
    return (
        (f1.coefficient(1, 0), f1.coefficient(0, 1), f2.coefficient(1, 0), f2.coefficient(0, 1)),
        (f1.constant_term(), f2.constant_term()),
    )


def is_affine(phi: Auto, ring: str | None = None) -> bool:
    parts = affine_parts(phi)
    if parts is None:
        return False
    (a11, a12, a21, a22), _ = parts
    return _unit(a11 * a22 - a12 * a21, ring or phi.ring)


def triangular_parts(phi: Auto):
    """Return (u, P, v, w) when phi = (u*x + P(y), v*y + w) with u, v nonzero."""
    f1, f2 = phi.f1, phi.f2
    if f2.uses("x") or f2.total_degree() > 1:
        return None
    if f1.degree_in("x") != 1 or any(e[0] == 1 and e[1] > 0 for e in f1.terms):
        return None
    u = f1.coefficient(1, 0)
    v = f2.coefficient(0, 1)
    if u.is_zero() or v.is_zero():
        return None
    P = BiPoly._raw({e: c for e, c in f1.terms.items() if e[0] == 0}, f1.p, f1.ring)
    return u, P, v, f2.constant_term()


def is_triangular(phi: Auto, ring: str | None = None) -> bool:
    parts = triangular_parts(phi)
    if parts is None:
        return False
    ring = ring or phi.ring
    return _unit(parts[0], ring) and _unit(parts[2], ring)


def _is_elementary(phi: Auto, ring: str) -> bool:
    x = BiPoly.x(phi.p)
    y = BiPoly.y(phi.p)
    for fixed, other, var, fixed_gen in ((phi.f2, phi.f1, "x", y), (phi.f1, phi.f2, "y", x)):
        if fixed != fixed_gen:
            continue
        if other.degree_in(var) != 1:
            continue
        idx = 0 if var == "x" else 1
        if any(e[idx] == 1 and e[1 - idx] > 0 for e in other.terms):
            continue
        lead = other.coefficient(1, 0) if var == "x" else other.coefficient(0, 1)
        if _unit(lead, ring):
            return True
    return False


def classify(phi: Auto) -> ClassFlags:
    """Syntactic classification.  ``phi`` is presumed to be an automorphism;
    the additive and geometric flags also insist on a unit Jacobian."""
    ring = phi.ring
    affine = is_affine(phi, ring)
    x, y = BiPoly.x(phi.p), BiPoly.y(phi.p)
    translation = affine and (phi.f1 - x).is_constant() and (phi.f2 - y).is_constant()
    linear = affine and phi.f1.constant_term().is_zero() and phi.f2.constant_term().is_zero()
    triangular = is_triangular(phi, ring)
    elementary = _is_elementary(phi, ring)

    jac = jacobian(phi)
    det = jac.det()
    det_unit = det.is_constant() and _unit(det.constant_term(), ring)
    additive = det_unit and phi.f1.is_additive() and phi.f2.is_additive()
    geom_affine = det_unit and phi.f1.without_constant().is_additive() and phi.f2.without_constant().is_additive()
    diff_affine = det_unit and jac.is_constant()
    return ClassFlags(translation, linear, affine, elementary, triangular, additive, geom_affine, diff_affine)


def invert_affine(phi: Auto) -> Auto:
    parts = affine_parts(phi)
    if parts is None:
        raise ValueError("affine automorphism required")
    (a11, a12, a21, a22), (b1, b2) = parts
    det = a11 * a22 - a12 * a21
    if det.is_zero():
        raise ValueError("singular linear part")
    inv = det.inverse()
    p = phi.p
    X = BiPoly.x(p) - BiPoly.const(b1, p)
    Y = BiPoly.y(p) - BiPoly.const(b2, p)
    g1 = (X.scale(a22) - Y.scale(a12)).scale(inv)
    g2 = (Y.scale(a11) - X.scale(a21)).scale(inv)
    return Auto(g1, g2)


def invert_triangular(phi: Auto) -> Auto:
    parts = triangular_parts(phi)
    if parts is None:
        raise ValueError("triangular automorphism required")
    u, P, v, w = parts
    p = phi.p
    g2 = (BiPoly.y(p) - BiPoly.const(w, p)).scale(v.inverse())
    g1 = (BiPoly.x(p) - P.substitute(BiPoly.x(p), g2)).scale(u.inverse())
    return Auto(g1, g2)


def _tidy_ring(result: Auto, ring: str) -> Auto:
    if ring == "R" and result.is_integral():
        return result.to_ring("R")
    return Auto(result.f1.to_ring("K"), result.f2.to_ring("K"))


def invert(phi: Auto) -> Auto:
    """Inverse through the decomposition engine.  Over R the result is tagged
    R when it has integral coefficients (so phi is an R-automorphism)."""
    if is_affine(phi, "K"):
        return _tidy_ring(invert_affine(phi), phi.ring)
    if is_triangular(phi, "K"):
        return _tidy_ring(invert_triangular(phi), phi.ring)
    from .vdk import decompose

    word = decompose(phi)
    return _tidy_ring(word.inverse().evaluate(), phi.ring)


def is_automorphism_over_R(phi: Auto) -> bool:
    from .vdk import NotAutomorphism

    if not phi.is_integral():
        return False
    try:
        return invert(phi).is_integral()
    except NotAutomorphism:
        return False
