"""Exact arithmetic in F_p, R = F_p[t] and K = F_p(t).

Characteristic ``p = 0`` is accepted with rational coefficients so that a few
sanity checks (affine = differentially affine) can run in characteristic
zero; nothing else in the package is meant to be used with it.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

NEG_INFINITY = float("-inf")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_char(p: int) -> int:
    """Validate a characteristic: 0 or a prime."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise TypeError(f"characteristic must be an int, got {p!r}")
    if p != 0 and not _is_prime(p):
        raise ValueError(f"characteristic must be 0 or a prime, got {p}")
    return p


def _scalar(c, p: int):
    if p:
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"{c} is not defined mod {p}")
            return c.numerator * pow(c.denominator, -1, p) % p
        return int(c) % p
    return Fraction(c)


def _scalar_inv(c, p: int):
    if p:
        return pow(c, -1, p)
    return 1 / c


def _strip(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


def _gcd_mod_p(a: list, b: list, p: int) -> tuple:
    """Monic gcd of two coefficient lists over F_p."""
    while b:
        # a <- a mod b, in place
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            c = a[-1] * inv % p
            shift = len(a) - 1 - db
            if c:
                for j, bj in enumerate(b):
                    a[shift + j] = (a[shift + j] - c * bj) % p
            while a and not a[-1]:
                a.pop()
        a, b = b, a
    if not a:
        return ()
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a)


class TPoly:
    """A polynomial in ``t`` with dense coefficients (lowest degree first)."""

    __slots__ = ("coeffs", "p", "_hash")

    def __init__(self, coeffs: Iterable = (), p: int = 2):
        check_char(p)
        self.coeffs = _strip([_scalar(c, p) for c in coeffs])
        self.p = p
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple, p: int) -> "TPoly":
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        obj.p = p
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c, p: int) -> "TPoly":
        return cls((c,), p)

    @classmethod
    def t(cls, p: int) -> "TPoly":
        return cls((0, 1), p)

    @classmethod
    def zero(cls, p: int) -> "TPoly":
        return cls._raw((), check_char(p))

    @classmethod
    def one(cls, p: int) -> "TPoly":
        return cls._raw((_scalar(1, p),), check_char(p))

    # -- structure -------------------------------------------------------

    @property
    def deg(self) -> int:
        """Degree with ``-1`` for zero; internal convenience."""
        return len(self.coeffs) - 1

    def degree(self):
        return self.deg if self.coeffs else NEG_INFINITY

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else _scalar(0, self.p)

    def constant_value(self):
        return self.coeffs[0] if self.coeffs else _scalar(0, self.p)

    def monic(self) -> "TPoly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        inv = _scalar_inv(self.coeffs[-1], self.p)
        return self.scale(inv)

    def scale(self, c) -> "TPoly":
        p = self.p
        c = _scalar(c, p)
        if not c:
            return TPoly._raw((), p)
        if p:
            return TPoly._raw(tuple(a * c % p for a in self.coeffs), p)
        return TPoly._raw(tuple(a * c for a in self.coeffs), p)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "TPoly":
        if isinstance(other, TPoly):
            if other.p != self.p:
                raise ValueError("characteristic mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return TPoly((other,), self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, p = self.coeffs, other.coeffs, self.p
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        if p:
            for i, c in enumerate(b):
                out[i] = (out[i] + c) % p
        else:
            for i, c in enumerate(b):
                out[i] = out[i] + c
        return TPoly._raw(_strip(out), p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        if p:
            return TPoly._raw(tuple((-c) % p for c in self.coeffs), p)
        return TPoly._raw(tuple(-c for c in self.coeffs), p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, p = self.coeffs, other.coeffs, self.p
        if not a or not b:
            return TPoly._raw((), p)
        if len(b) == 1:
            return self.scale(b[0])
        if len(a) == 1:
            return other.scale(a[0])
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        if p:
            out = [c % p for c in out]
        return TPoly._raw(_strip(out), p)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = TPoly.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        db = other.deg
        inv = _scalar_inv(other.coeffs[-1], p)
        if len(rem) - 1 < db:
            return TPoly._raw((), p), self
        quot = [0] * (len(rem) - db)
        bco = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if not c:
                continue
            if p:
                q = c * inv % p
                for j, bj in enumerate(bco):
                    rem[k + j] = (rem[k + j] - q * bj) % p
            else:
                q = c * inv
                for j, bj in enumerate(bco):
                    rem[k + j] -= q * bj
            quot[k] = q
        return TPoly._raw(_strip(quot), p), TPoly._raw(_strip(rem[:db] if db > 0 else []), p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "TPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "TPoly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def gcd(self, other: "TPoly") -> "TPoly":
        """Monic gcd (zero only when both inputs are zero)."""
        if len(self.coeffs) == 1 or len(other.coeffs) == 1:
            return TPoly.one(self.p)
        if self.p:
            return TPoly._raw(_gcd_mod_p(list(self.coeffs), list(other.coeffs), self.p), self.p)
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    # -- comparison / display -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, TPoly):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == TPoly((other,), self.p).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("TPoly", self.p, self.coeffs))
        return self._hash

    def terms_str(self) -> list[str]:
        out = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                out.append(str(c))
                continue
            mono = "t" if k == 1 else f"t^{k}"
            out.append(mono if c == 1 else f"{c}*{mono}")
        return out

    def __str__(self):
        parts = self.terms_str()
        if not parts:
            return "0"
        s = parts[0]
        for part in parts[1:]:
            s += part if part.startswith("-") else "+" + part
        return s

    def __repr__(self):
        return f"TPoly({str(self)!r}, p={self.p})"


Scalar = Union[int, Fraction, TPoly, "RatFunc"]


class RatFunc:
    """An element of F_p(t): coprime numerator and monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if not isinstance(num, TPoly):
            raise TypeError("numerator must be a TPoly")
        if den is None:
            den = TPoly.one(num.p)
        if den.p != num.p:
            raise ValueError("characteristic mismatch")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = TPoly.one(num.p)
        else:
            g = num.gcd(den)
            if not g.is_one():
                num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc()
            if lc != 1:
                inv = _scalar_inv(lc, num.p)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num: TPoly, den: TPoly) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_int(cls, c, p: int) -> "RatFunc":
        return cls._raw(TPoly.const(c, p), TPoly.one(p))

    @classmethod
    def from_tpoly(cls, a: TPoly) -> "RatFunc":
        return cls._raw(a, TPoly.one(a.p))

    @classmethod
    def zero(cls, p: int) -> "RatFunc":
        return cls._raw(TPoly.zero(p), TPoly.one(p))

    @classmethod
    def one(cls, p: int) -> "RatFunc":
        return cls._raw(TPoly.one(p), TPoly.one(p))

    @property
    def p(self) -> int:
        return self.num.p

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self):
        return bool(self.num.coeffs)

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_integral(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        """True when the value lies in the prime field."""
        return self.den.is_one() and self.num.is_constant()

    def as_tpoly(self) -> TPoly:
        if not self.den.is_one():
            raise ArithmeticError(f"{self} is not in F_p[t]")
        return self.num

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.p != self.p:
                raise ValueError("characteristic mismatch")
            return other
        if isinstance(other, TPoly):
            if other.p != self.p:
                raise ValueError("characteristic mismatch")
            return RatFunc._raw(other, TPoly.one(self.p))
        if isinstance(other, (int, Fraction)):
            return RatFunc._raw(TPoly.const(other, self.p), TPoly.one(self.p))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return RatFunc._raw(self.num + other.num, self.den)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self.den, other.den
        if d1.is_one() and d2.is_one():
            return RatFunc._raw(self.num * other.num, d1)
        n1, n2 = self.num, other.num
        if not n1.coeffs or not n2.coeffs:
            return RatFunc.zero(self.p)
        # cross-cancel so the product is already reduced
        if len(d2.coeffs) > 1:
            g1 = n1.gcd(d2)
            if not g1.is_one():
                n1, d2 = n1.exact_div(g1), d2.exact_div(g1)
        if len(d1.coeffs) > 1:
            g2 = n2.gcd(d1)
            if not g2.is_one():
                n2, d1 = n2.exact_div(g2), d1.exact_div(g2)
        return RatFunc._raw(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in F_p(t)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, TPoly)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.den.is_one():
                self._hash = hash(self.num)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        num = str(self.num)
        den = str(self.den)
        if len(self.num.terms_str()) > 1:
            num = f"({num})"
        if len(self.den.terms_str()) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatFunc({str(self)!r}, p={self.p})"


def to_ratfunc(c, p: int) -> RatFunc:
    if isinstance(c, RatFunc):
        if c.p != p:
            raise ValueError("characteristic mismatch")
        return c
    if isinstance(c, TPoly):
        if c.p != p:
            raise ValueError("characteristic mismatch")
        return RatFunc.from_tpoly(c)
    if isinstance(c, (int, Fraction)):
        if isinstance(c, Fraction) and p == 0:
            return RatFunc._raw(TPoly((c,), 0), TPoly.one(0))
        return RatFunc.from_int(c, p)
    raise TypeError(f"cannot interpret {c!r} as an element of F_p(t)")


def is_unit(r) -> bool:
    """Unit test in R = F_p[t]: the units are exactly the nonzero constants."""
    if isinstance(r, RatFunc):
        if not r.is_integral():
            return False
        r = r.num
    return len(r.coeffs) == 1


def is_unit_in(c: RatFunc, ring: str) -> bool:
    """Unit test in R ("R") or in the field K ("K")."""
    if ring == "K":
        return not c.is_zero()
    return c.is_constant() and not c.is_zero()


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    ops = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
    }
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op]()


def reduce_mod(f, a: TPoly):
    """Replace every coefficient of ``f`` (a polynomial over R) by its
    remainder modulo ``a``.  ``f`` is a :class:`~tameauto.bipoly.BiPoly`."""
    if a.is_zero():
        raise ValueError("modulus must be nonzero")
    return f.map_coefficients(lambda c: RatFunc.from_tpoly(c.as_tpoly() % a), ring="R")
