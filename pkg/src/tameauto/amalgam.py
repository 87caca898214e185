"""Words over an amalgam G = A *_C B and the membership criteria they support.

The word calculus (reduced words, ``star``, equivalence modulo the
intersection) only talks to the ambient group through a
:class:`GroupOracles` record.  The shipped instance ``AFF_BA`` takes
A = Aff_2(K) and B = BA_2(K) inside the automorphism group of K[x,y].

The coset tests used by :func:`criterion_letters` fix the integral subgroup
B = BA_2(F_p[t]) and an affine-type subgroup described by a p-stable set I.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, Optional, Sequence

from .automorphism import (
    Auto,
    compose,
    invert,
    invert_affine,
    invert_triangular,
    is_affine,
    is_triangular,
    triangular_parts,
)
from .bipoly import BiPoly
from .coefficients import RatFunc, TPoly
from .pstable import PStableSet


@dataclass(frozen=True)
class Letter:
    tag: str
    payload: Auto

    def __post_init__(self):
        if self.tag not in ("A", "B"):
            raise ValueError(f"letter tag must be 'A' or 'B', got {self.tag!r}")

    def __str__(self):
        return f"{self.tag}:({self.payload.f1}, {self.payload.f2})"


@dataclass(frozen=True)
class GroupOracles:
    in_A: Callable[[Auto], bool]
    in_B: Callable[[Auto], bool]
    mul: Callable[[Auto, Auto], Auto]
    inv: Callable[[Auto], Auto]
    identity: Callable[[int], Auto]
    # splits a letter g as (rep, eta) with g = rep * eta and eta in A n B
    intersect_factor: Callable[[Letter], tuple[Auto, Auto]]

    def in_A_and_B(self, g: Auto) -> bool:
        return self.in_A(g) and self.in_B(g)

    def tag_of(self, g: Auto) -> Optional[str]:
        if self.in_A(g):
            return "A"
        if self.in_B(g):
            return "B"
        return None


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    @property
    def tags(self) -> str:
        return "".join(l.tag for l in self.letters)

    def head(self) -> Letter:
        return self.letters[0]

    def tail(self) -> Letter:
        return self.letters[-1]

    def evaluate(self) -> Auto:
        return word_eval(self)

    def inverse(self, o: "GroupOracles | None" = None) -> "Word":
        o = o or AFF_BA
        return Word(tuple(Letter(l.tag, o.inv(l.payload)) for l in reversed(self.letters)), self.p)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters, self.p)

    def __str__(self):
        if not self.letters:
            return "empty"
        return " ; ".join(str(l) for l in self.letters)


# -- the shipped instance ------------------------------------------------------


def _in_A(g: Auto) -> bool:
    return is_affine(g, "K")


def _in_B(g: Auto) -> bool:
    return is_triangular(g, "K")


def invert_letter(g: Auto) -> Auto:
    if _in_A(g):
        return invert_affine(g)
    if _in_B(g):
        return invert_triangular(g)
    return invert(g)


def _intersect_factor(letter: Letter) -> tuple[Auto, Auto]:
    g = letter.payload
    p = g.p
    x, y = BiPoly.x(p), BiPoly.y(p)
    if _in_B(g):
        u, P, v, w = triangular_parts(g)
        b, c = P.coefficient(0, 1), P.coefficient(0, 0)
        S = (P - y.scale(b) - BiPoly.const(c, p)).scale(u.inverse())
        eta = Auto(x.scale(u) + y.scale(b) + BiPoly.const(c, p), y.scale(v) + BiPoly.const(w, p))
        return Auto(x + S, y), eta
    if not _in_A(g):
        raise ValueError("letter lies in neither factor")
    f1, f2 = g.f1, g.f2
    a11, a12 = f1.coefficient(1, 0), f1.coefficient(0, 1)
    a21, a22 = f2.coefficient(1, 0), f2.coefficient(0, 1)
    if a21.is_zero():
        return Auto.identity(p), g
    k = a22 / a21
    rep = Auto(y, x + y.scale(k))
    eta = Auto(
        x.scale(a12 - a11 * k) + y.scale(a11) + BiPoly.const(f1.constant_term(), p),
        y.scale(a21) + BiPoly.const(f2.constant_term(), p),
    )
    return rep, eta


AFF_BA = GroupOracles(
    in_A=_in_A,
    in_B=_in_B,
    mul=compose,
    inv=invert_letter,
    identity=lambda p: Auto.identity(p),
    intersect_factor=_intersect_factor,
)


# -- word operations -----------------------------------------------------------


def word_eval(w: Word, o: GroupOracles = AFF_BA) -> Auto:
    if not w.letters:
        return o.identity(w.p)
    return reduce(o.mul, (l.payload for l in w.letters))


def make_letter(g: Auto, o: GroupOracles = AFF_BA) -> Letter:
    tag = o.tag_of(g)
    if tag is None:
        raise ValueError("element lies in neither factor")
    return Letter(tag, g)


def is_reduced(w: Word, o: GroupOracles = AFF_BA) -> bool:
    if not w.letters:
        return False
    for l in w.letters:
        a, b = o.in_A(l.payload), o.in_B(l.payload)
        if a == b:
            return False
    for l1, l2 in zip(w.letters, w.letters[1:]):
        prod = o.mul(l1.payload, l2.payload)
        if o.in_A(prod) or o.in_B(prod):
            return False
    return True


def star(alpha: Word, beta: Word, o: GroupOracles = AFF_BA) -> Word:
    if not alpha.letters:
        return beta
    if not beta.letters:
        return alpha
    delta = o.mul(alpha.tail().payload, beta.head().payload)
    tag = o.tag_of(delta)
    if tag is None:
        return alpha + beta
    return Word(alpha.letters[:-1] + (Letter(tag, delta),) + beta.letters[1:], alpha.p)


def reduce_word(letters: Sequence[Letter] | Word, o: GroupOracles = AFF_BA, p: int | None = None) -> Word:
    """Merge neighbours whose product stays in A or B until none do.

    The result is reduced unless the whole word collapses to one element of
    the intersection, in which case that single letter is returned (tag A).
    """
    if isinstance(letters, Word):
        p = letters.p
        letters = letters.letters
    if p is None:
        p = letters[0].payload.p
    stack: list[Letter] = []
    for l in letters:
        stack.append(l)
        while len(stack) >= 2:
            prod = o.mul(stack[-2].payload, stack[-1].payload)
            tag = o.tag_of(prod)
            if tag is None:
                break
            stack[-2:] = [Letter(tag, prod)]
    if not stack:
        return Word((Letter("A", o.identity(p)),), p)
    return Word(tuple(stack), p)


def equivalent(alpha: Word, beta: Word, o: GroupOracles = AFF_BA) -> Optional[list[Auto]]:
    """Witnesses eta_1..eta_{l-1} in A n B with beta_1 = alpha_1 eta_1,
    beta_i = eta_{i-1}^-1 alpha_i eta_i and beta_l = eta_{l-1}^-1 alpha_l,
    or None when the words are not equivalent."""
    n = len(alpha)
    if n != len(beta):
        return None
    if n == 0:
        return []
    a = [l.payload for l in alpha]
    b = [l.payload for l in beta]
    if n == 1:
        return [] if a[0] == b[0] else None
    etas = []
    eta = o.mul(o.inv(a[0]), b[0])
    if not o.in_A_and_B(eta):
        return None
    etas.append(eta)
    for i in range(1, n - 1):
        eta = o.mul(o.mul(o.inv(a[i]), eta), b[i])
        if not o.in_A_and_B(eta):
            return None
        etas.append(eta)
    if o.mul(o.inv(eta), a[-1]) != b[-1]:
        return None
    return etas


# -- coset tests for B = BA_2(R) and affine-type subgroups ---------------------


def _non_I_part(P: BiPoly, I: PStableSet) -> BiPoly:
    return BiPoly._raw({e: c for e, c in P.terms.items() if e[1] >= 2 and e[1] not in I}, P.p, "K")


def _common_denominator(P: BiPoly) -> TPoly:
    d = TPoly.one(P.p)
    for c in P.terms.values():
        d = (d * c.den).exact_div(d.gcd(c.den))
    return d


@dataclass(frozen=True)
class CosetResult:
    """Outcome of a double-coset test.  On success ``factors`` multiplies
    back to the tested element."""

    passed: bool
    factors: Optional[tuple[Auto, ...]] = None
    reason: str = ""


def in_B_times_H(theta: Auto, I: PStableSet) -> CosetResult:
    """theta in BA_2(R) * (BA_2(K) n A^I)?"""
    parts = triangular_parts(theta)
    if parts is None:
        raise ValueError("triangular element required")
    u, P, v, w = parts
    p = theta.p
    S = _non_I_part(P, I).scale(u.inverse())
    bad = [e[1] for e, c in S.terms.items() if not c.is_integral()]
    if bad:
        return CosetResult(False, reason=f"coefficient of y^{min(bad)} is not in F_p[t]")
    x, y = BiPoly.x(p), BiPoly.y(p)
    b = Auto((x + S).to_ring("R"), y.to_ring("R"))
    rho = Auto(x.scale(u) + P - S.scale(u), y.scale(v) + BiPoly.const(w, p))
    return CosetResult(True, (b, rho))


def in_H_times_B(theta: Auto, I: PStableSet) -> CosetResult:
    res = in_B_times_H(invert_triangular(theta), I)
    if not res.passed:
        return res
    b, rho = res.factors
    return CosetResult(True, (invert_triangular(rho), invert_triangular(b)))


def in_H_B_H(theta: Auto, I: PStableSet) -> CosetResult:
    """theta in (BA_2(K) n A^I) * BA_2(R) * (BA_2(K) n A^I); always true."""
    parts = triangular_parts(theta)
    if parts is None:
        raise ValueError("triangular element required")
    u, P, v, w = parts
    p = theta.p
    N = _non_I_part(P, I)
    d = _common_denominator(N)
    x, y = BiPoly.x(p), BiPoly.y(p)
    rho1 = Auto(x.scale(u * d), y)
    b = Auto((x + N.scale(d)).to_ring("R"), y.to_ring("R"))
    rho2 = Auto(x.scale(RatFunc.from_tpoly(d).inverse()) + P - N, y.scale(v) + BiPoly.const(w, p))
    return CosetResult(True, (rho1, b, rho2))


@dataclass(frozen=True)
class LetterVerdict:
    index: int
    tag: str
    position: str
    passed: bool
    detail: str = ""


def _position(i: int, m: int) -> str:
    if m == 1:
        return "only"
    if i == 0:
        return "first"
    if i == m - 1:
        return "last"
    return "interior"


def criterion_letters(h_word: Word, o: GroupOracles, sub: PStableSet) -> list[LetterVerdict]:
    """Necessary conditions for pi(h_word) to lie in <H, T>.  Any failed
    letter proves that the element is outside."""
    out = []
    m = len(h_word)
    for i, letter in enumerate(h_word.letters):
        pos = _position(i, m)
        if letter.tag == "A" or not o.in_B(letter.payload):
            # A lies inside every affine-type subgroup, so the mirrored
            # conditions hold trivially.
            out.append(LetterVerdict(i, letter.tag, pos, True, "affine letter"))
            continue
        theta = letter.payload
        checks = []
        if pos in ("first", "only"):
            checks.append(("B(B n H)", in_B_times_H(theta, sub)))
        if pos in ("last", "only"):
            checks.append(("(B n H)B", in_H_times_B(theta, sub)))
        if pos == "interior":
            checks.append(("(B n H)B(B n H)", in_H_B_H(theta, sub)))
        failed = [(name, r) for name, r in checks if not r.passed]
        if failed:
            name, r = failed[0]
            out.append(LetterVerdict(i, letter.tag, pos, False, f"not in {name}: {r.reason}"))
        else:
            out.append(LetterVerdict(i, letter.tag, pos, True, " and ".join(n for n, _ in checks)))
    return out


def length3_membership(h: Auto, o: GroupOracles, sub: PStableSet) -> bool:
    """For h of length 3 in B A B: h in <H, T> iff h in B H B."""
    from .vdk import decompose

    word = decompose(h)
    if len(word) != 3 or word.tags != "BAB":
        raise ValueError("length-3 BAB form required")
    return in_B_times_H(word[0].payload, sub).passed and in_H_times_B(word[2].payload, sub).passed


# -- assembling reduced words from (H,T)-words ---------------------------------


@dataclass
class Block:
    """One factor of an (H,T)-word together with a reduced decomposition."""

    kind: str  # "H" or "T"
    word: Word


def _shift_once(blocks: list[Block], o: GroupOracles) -> bool:
    for i in range(len(blocks) - 1):
        left, right = blocks[i], blocks[i + 1]
        if len(left.word) == 0 or len(right.word) == 0:
            continue
        delta = o.mul(left.word.tail().payload, right.word.head().payload)
        if not o.in_A_and_B(delta):
            continue
        if left.kind == "T" and len(left.word) > 1:
            # move the tail of the T-block into its H-neighbour
            left.word = Word(left.word.letters[:-1], left.word.p)
            right.word = reduce_word((Letter("A", delta),) + right.word.letters[1:], o, right.word.p)
            return True
        if right.kind == "T" and len(right.word) > 1:
            left.word = reduce_word(left.word.letters[:-1] + (Letter("A", delta),), o, left.word.p)
            right.word = Word(right.word.letters[1:], right.word.p)
            return True
    return False


def minimize_blocks(blocks: Sequence[Block], o: GroupOracles = AFF_BA, max_rounds: int = 1000) -> list[Block]:
    """Greedily shift intersection factors across block boundaries while this
    shortens an H-block.  Each shift removes a letter, so the loop stops."""
    blocks = [Block(b.kind, b.word) for b in blocks]
    for _ in range(max_rounds):
        if not _shift_once(blocks, o):
            break
    return blocks


def assemble(blocks: Sequence[Block], o: GroupOracles = AFF_BA) -> Word:
    """D_1 * ... * D_n for the blocks' decompositions."""
    return reduce(lambda a, b: star(a, b.word, o), blocks[1:], blocks[0].word)
