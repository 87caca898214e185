"""Sparse polynomials in x, y over R = F_p[t] or K = F_p(t).

Coefficients are always stored as :class:`RatFunc`; the ``ring`` tag records
whether the polynomial is meant to live over R or over K.  Equality and
hashing ignore the tag, so the same polynomial viewed over R or K compares
equal.
"""
from __future__ import annotations

from typing import Callable, Iterable, Mapping

from .coefficients import NEG_INFINITY, RatFunc, TPoly, check_char, to_ratfunc

Exponent = tuple[int, int]


def _is_p_power(n: int, p: int) -> bool:
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


class BiPoly:
    __slots__ = ("terms", "p", "ring", "_hash", "_key")

    def __init__(self, terms: Mapping[Exponent, object] | Iterable = (), p: int = 2, ring: str = "K"):
        check_char(p)
        if ring not in ("R", "K"):
            raise ValueError(f"ring must be 'R' or 'K', got {ring!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, RatFunc] = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            c = to_ratfunc(c, p)
            key = (int(i), int(j))
            if key in acc:
                acc[key] = acc[key] + c
            else:
                acc[key] = c
        self.terms = {k: v for k, v in acc.items() if not v.is_zero()}
        self.p = p
        self.ring = ring
        self._hash = None
        self._key = None

    @classmethod
    def _raw(cls, terms: dict, p: int, ring: str) -> "BiPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.p = p
        obj.ring = ring
        obj._hash = None
        obj._key = None
        return obj

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, p: int, ring: str = "K") -> "BiPoly":
        return cls._raw({}, check_char(p), ring)

    @classmethod
    def const(cls, c, p: int, ring: str = "K") -> "BiPoly":
        return cls({(0, 0): c}, p, ring)

    @classmethod
    def x(cls, p: int, ring: str = "K") -> "BiPoly":
        return cls({(1, 0): 1}, p, ring)

    @classmethod
    def y(cls, p: int, ring: str = "K") -> "BiPoly":
        return cls({(0, 1): 1}, p, ring)

    @classmethod
    def monomial(cls, i: int, j: int, c=1, p: int = 2, ring: str = "K") -> "BiPoly":
        return cls({(i, j): c}, p, ring)

    @classmethod
    def univariate(cls, coeffs: Iterable, var: str = "y", p: int = 2, ring: str = "K") -> "BiPoly":
        """Polynomial in a single variable from a coefficient list (lowest first)."""
        if var == "y":
            return cls({(0, k): c for k, c in enumerate(coeffs)}, p, ring)
        return cls({(k, 0): c for k, c in enumerate(coeffs)}, p, ring)

    # -- basic structure -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self):
        if not self.terms:
            return NEG_INFINITY
        return max(i + j for i, j in self.terms)

    def degree_in(self, var: str):
        if not self.terms:
            return NEG_INFINITY
        idx = 0 if var == "x" else 1
        return max(e[idx] for e in self.terms)

    def coefficient(self, i: int, j: int) -> RatFunc:
        return self.terms.get((i, j), RatFunc.zero(self.p))

    def constant_term(self) -> RatFunc:
        return self.coefficient(0, 0)

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self.terms)

    def homogeneous_part(self, d: int) -> "BiPoly":
        return BiPoly._raw({e: c for e, c in self.terms.items() if e[0] + e[1] == d}, self.p, self.ring)

    def leading_form(self) -> "BiPoly":
        if not self.terms:
            return self
        return self.homogeneous_part(self.total_degree())

    def without_constant(self) -> "BiPoly":
        return BiPoly._raw({e: c for e, c in self.terms.items() if e != (0, 0)}, self.p, self.ring)

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.terms.values())

    def uses(self, var: str) -> bool:
        idx = 0 if var == "x" else 1
        return any(e[idx] for e in self.terms)

    def y_coefficients(self) -> dict[int, RatFunc]:
        """Exponent -> coefficient map for a polynomial in y alone."""
        if self.uses("x"):
            raise ValueError("polynomial involves x")
        return {j: c for (_, j), c in self.terms.items()}

    def to_ring(self, ring: str) -> "BiPoly":
        if ring == "R" and not self.is_integral():
            raise ValueError("coefficients are not in F_p[t]")
        return BiPoly._raw(self.terms, self.p, ring)

    def map_coefficients(self, fn: Callable[[RatFunc], RatFunc], ring: str | None = None) -> "BiPoly":
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                out[e] = v
        return BiPoly._raw(out, self.p, ring or self.ring)

    def swap(self) -> "BiPoly":
        return BiPoly._raw({(j, i): c for (i, j), c in self.terms.items()}, self.p, self.ring)

    # -- arithmetic ------------------------------------------------------

    def _ring_with(self, other: "BiPoly") -> str:
        return "K" if "K" in (self.ring, other.ring) else "R"

    def _coerce(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            if other.p != self.p:
                raise ValueError("characteristic mismatch")
            return other
        try:
            c = to_ratfunc(other, self.p)
        except TypeError:
            return NotImplemented
        ring = "R" if c.is_integral() else "K"
        return BiPoly._raw({(0, 0): c} if c else {}, self.p, ring)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return BiPoly._raw(out, self.p, self._ring_with(other))

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({e: -c for e, c in self.terms.items()}, self.p, self.ring)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "BiPoly":
        c = to_ratfunc(c, self.p)
        if c.is_zero():
            return BiPoly._raw({}, self.p, self.ring)
        ring = self.ring if c.is_integral() else "K"
        return BiPoly._raw({e: v * c for e, v in self.terms.items()}, self.p, ring)

    def __mul__(self, other):
        if isinstance(other, (int, TPoly, RatFunc)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exponent, RatFunc] = {}
        for (i1, j1), c1 in b.items():
            for (i2, j2), c2 in a.items():
                e = (i1 + i2, j1 + j2)
                v = c1 * c2
                if e in out:
                    out[e] = out[e] + v
                else:
                    out[e] = v
        out = {e: c for e, c in out.items() if not c.is_zero()}
        return BiPoly._raw(out, self.p, self._ring_with(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = BiPoly.const(1, self.p, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def partial_derivative(self, var: str) -> "BiPoly":
        if var not in ("x", "y"):
            raise ValueError(f"unknown variable {var!r}")
        idx = 0 if var == "x" else 1
        out = {}
        for e, c in self.terms.items():
            k = e[idx]
            if not k:
                continue
            v = c * k
            if v.is_zero():
                continue
            ne = (e[0] - 1, e[1]) if idx == 0 else (e[0], e[1] - 1)
            out[ne] = v
        return BiPoly._raw(out, self.p, self.ring)

    def substitute(self, g1: "BiPoly", g2: "BiPoly") -> "BiPoly":
        """Replace x by g1 and y by g2."""
        p = self.p
        ring = self.ring
        for g in (g1, g2):
            if g.p != p:
                raise ValueError("characteristic mismatch")
            if g.ring == "K":
                ring = "K"
        if not self.terms:
            return BiPoly._raw({}, p, ring)
        one = BiPoly.const(1, p, ring)
        xpow = {0: one}
        ypow = {0: one}

        def power(cache, g, n):
            if n not in cache:
                # build from the largest cached power below n
                k = max(m for m in cache if m <= n)
                acc = cache[k]
                while k < n:
                    acc = acc * g
                    k += 1
                    cache[k] = acc
            return cache[n]

        # group terms by x-exponent: sum_i g1^i * (sum_j c_ij g2^j)
        by_x: dict[int, list] = {}
        for (i, j), c in self.terms.items():
            by_x.setdefault(i, []).append((j, c))
        result = BiPoly._raw({}, p, ring)
        for i in sorted(by_x):
            inner = BiPoly._raw({}, p, ring)
            for j, c in by_x[i]:
                inner = inner + power(ypow, g2, j).scale(c)
            result = result + power(xpow, g1, i) * inner
        return BiPoly._raw(result.terms, p, ring)

    __call__ = substitute

    # -- structural tests ------------------------------------------------

    def is_additive(self) -> bool:
        if self.p == 0:
            return all(i + j == 1 for i, j in self.terms)
        for i, j in self.terms:
            if i and j:
                return False
            if not _is_p_power(i + j, self.p):
                return False
        return True

    def in_frobenius_subring(self) -> bool:
        if self.p == 0:
            return self.is_constant()
        p = self.p
        return all(i % p == 0 and j % p == 0 for i, j in self.terms)

    # -- comparison / display -------------------------------------------

    def sort_key_terms(self) -> list[tuple[Exponent, RatFunc]]:
        return sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.p == other.p and self.terms == other.terms
        if isinstance(other, (int, TPoly, RatFunc)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in self.sort_key_terms():
            mono = []
            if i:
                mono.append("x" if i == 1 else f"x^{i}")
            if j:
                mono.append("y" if j == 1 else f"y^{j}")
            cs = str(c)
            simple = c.is_integral() and len(c.num.terms_str()) == 1 and not cs.startswith("-")
            if not mono:
                parts.append(cs if simple else f"({cs})")
            elif c.is_one():
                parts.append("*".join(mono))
            else:
                parts.append("*".join([cs if simple else f"({cs})"] + mono))
        return "+".join(parts)

    def __repr__(self):
        return f"BiPoly({str(self)!r}, p={self.p}, ring={self.ring!r})"


def total_degree(f: BiPoly):
    return f.total_degree()


def partial_derivative(f: BiPoly, v: str) -> BiPoly:
    return f.partial_derivative(v)


def substitute(f: BiPoly, g1: BiPoly, g2: BiPoly) -> BiPoly:
    return f.substitute(g1, g2)


def is_additive(f: BiPoly) -> bool:
    return f.is_additive()


def in_frobenius_subring(f: BiPoly) -> bool:
    return f.in_frobenius_subring()
