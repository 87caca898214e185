import random

import pytest

from tameauto.amalgam import (
    AFF_BA,
    Block,
    Letter,
    Word,
    assemble,
    criterion_letters,
    equivalent,
    in_B_times_H,
    in_H_B_H,
    in_H_times_B,
    invert_letter,
    is_reduced,
    length3_membership,
    minimize_blocks,
    reduce_word,
    star,
    word_eval,
)
from tameauto.automorphism import Auto, compose
from tameauto.bipoly import BiPoly
from tameauto.coefficients import RatFunc, TPoly
from tameauto.generators import random_intersection, random_tame, random_triangular
from tameauto.nagata import SigmaParams, make_sigma, random_sigma_params, sigma_in_HT, sigma_is_tame
from tameauto.pstable import PStableSet
from tameauto.vdk import decompose, length_of

from conftest import ring_vars


def W(p, *pairs):
    return Word(tuple(Letter(tag, g) for tag, g in pairs), p)


def sigma_t2(p):
    x, y, t = ring_vars(p, "R")
    return SigmaParams(TPoly([0, 0, 1], p), y + t * y ** 2, y - t * y ** 2)


def test_single_affine_letter_is_reduced():
    assert is_reduced(W(3, ("A", Auto.swap(3))))


def test_adjacent_triangular_letters_not_reduced():
    x, y, t = ring_vars(3)
    assert not is_reduced(W(3, ("B", Auto(x + y ** 2, y)), ("B", Auto(x + y ** 3, y))))


def test_bab_word_is_reduced():
    x, y, t = ring_vars(3)
    b = Auto(x + y ** 2, y)
    w = W(3, ("B", b), ("A", Auto.swap(3)), ("B", b))
    # both adjacent products leave A and B
    for g in (compose(b, Auto.swap(3)), compose(Auto.swap(3), b)):
        assert AFF_BA.tag_of(g) is None
    assert is_reduced(w)


def test_empty_and_intersection_words_not_reduced():
    x, y, t = ring_vars(3)
    assert not is_reduced(Word((), 3))
    assert not is_reduced(W(3, ("A", Auto(x + y, y))))


def test_star_concatenates():
    x, y, t = ring_vars(3)
    a, b = W(3, ("B", Auto(x + y ** 2, y))), W(3, ("A", Auto.swap(3)))
    assert star(a, b).letters == a.letters + b.letters


def test_star_merges_boundary():
    tau = W(3, ("A", Auto.swap(3)))
    out = star(tau, tau)
    assert len(out) == 1 and out[0].payload == Auto.identity(3)


def test_star_with_empty():
    tau = W(3, ("A", Auto.swap(3)))
    assert star(Word((), 3), tau) == tau
    assert star(tau, Word((), 3)) == tau


def random_reduced(rng, p, max_degree=6):
    while True:
        phi, _ = random_tame(rng, p, max_degree=max_degree)
        w = decompose(phi)
        if is_reduced(w):
            return w


@pytest.mark.parametrize("p", [2, 3, 5])
def test_star_length_and_head_tail(p):
    rng = random.Random(50 + p)
    checked = 0
    while checked < 34:
        a, b = random_reduced(rng, p, 4), random_reduced(rng, p, 4)
        delta = compose(a.tail().payload, b.head().payload)
        if AFF_BA.in_A_and_B(delta):
            continue
        checked += 1
        s = star(a, b)
        assert len(s) >= len(a) + len(b) - 1
        assert is_reduced(s)
        assert word_eval(s) == compose(word_eval(a), word_eval(b))
        if len(a) >= 2:
            assert s.head() == a.head()
        if len(b) >= 2:
            assert s.tail() == b.tail()


def test_equivalent_reflexive():
    rng = random.Random(5)
    w = random_reduced(rng, 3)
    etas = equivalent(w, w)
    assert etas is not None
    assert all(e == Auto.identity(3) for e in etas)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_equivalent_recovers_pushed_factor(p):
    rng = random.Random(60 + p)
    for _ in range(10):
        alpha = random_reduced(rng, p)
        if len(alpha) < 2:
            continue
        eta = random_intersection(rng, p)
        letters = list(alpha.letters)
        letters[0] = Letter(letters[0].tag, compose(letters[0].payload, eta))
        letters[1] = Letter(letters[1].tag, compose(invert_letter(eta), letters[1].payload))
        beta = Word(tuple(letters), p)
        etas = equivalent(alpha, beta)
        assert etas is not None and etas[0] == eta
        assert is_reduced(beta)
        assert word_eval(alpha) == word_eval(beta)


def test_equivalent_length_mismatch():
    x, y, t = ring_vars(3)
    a = W(3, ("A", Auto.swap(3)))
    b = W(3, ("A", Auto.swap(3)), ("B", Auto(x + y ** 2, y)))
    assert equivalent(a, b) is None


def test_not_equivalent_different_elements():
    x, y, t = ring_vars(3)
    a = W(3, ("B", Auto(x + y ** 2, y)), ("A", Auto.swap(3)))
    b = W(3, ("B", Auto(x + y ** 3, y)), ("A", Auto.swap(3)))
    assert equivalent(a, b) is None


def test_word_eval_examples():
    x, y, t = ring_vars(3)
    assert word_eval(Word((), 3)) == Auto.identity(3)
    b = Auto(x + y ** 2, y)
    assert word_eval(W(3, ("B", b))) == b
    sigma, word = make_sigma(sigma_t2(3))
    assert word_eval(word) == sigma


@pytest.mark.parametrize("p", [2, 3, 5])
def test_intersect_factor_round_trip(p):
    rng = random.Random(70 + p)
    for _ in range(20):
        g = random_triangular(rng, p, rng.randint(1, 4))
        rep, eta = AFF_BA.intersect_factor(Letter("B", g))
        assert AFF_BA.in_A_and_B(eta)
        assert compose(rep, eta) == g
        phi, letters = random_tame(rng, p, max_letters=1)
        for l in letters:
            rep, eta = AFF_BA.intersect_factor(l)
            assert AFF_BA.in_A_and_B(eta)
            assert compose(rep, eta) == l.payload


def test_oracle_intersection_consistent():
    rng = random.Random(8)
    for _ in range(30):
        phi, letters = random_tame(rng, 3, max_letters=2)
        for g in [phi] + [l.payload for l in letters]:
            assert AFF_BA.in_A_and_B(g) == (AFF_BA.in_A(g) and AFF_BA.in_B(g))


def test_coset_factorizations_multiply_back():
    p = 3
    x, y, t = ring_vars(p)
    inv_t = RatFunc.from_tpoly(TPoly.t(p)).inverse()
    theta = Auto(t ** 2 * x + y + t * y ** 3 + (y ** 4).scale(inv_t), 2 * y + t)
    I = PStableSet.pmult(p)
    assert not in_B_times_H(theta, I).passed
    res = in_H_B_H(theta, I)
    assert res.passed
    rho1, b, rho2 = res.factors
    assert b.is_integral()
    assert compose(compose(rho1, b), rho2) == theta
    theta2 = Auto(t ** 2 * x + y + t ** 3 * y ** 4 + (y ** 3).scale(inv_t), 2 * y + t)
    res = in_B_times_H(theta2, I)
    assert res.passed
    b, rho = res.factors
    assert b.is_integral() and compose(b, rho) == theta2
    res = in_H_times_B(theta2, I)
    rho, b = res.factors
    assert b.is_integral() and compose(rho, b) == theta2


def test_criterion_vacuous_on_swap():
    w = W(3, ("A", Auto.swap(3)))
    verdicts = criterion_letters(w, AFF_BA, PStableSet.empty(3))
    assert all(v.passed for v in verdicts)


def test_criterion_first_letter_of_sigma_fails():
    sigma, word = make_sigma(sigma_t2(3))
    verdicts = criterion_letters(word, AFF_BA, PStableSet.pmult(3))
    assert not verdicts[0].passed
    assert verdicts[1].passed


@pytest.mark.parametrize("p", [2, 3])
def test_criterion_passes_on_tame_elements(p):
    rng = random.Random(90 + p)
    for sub in (PStableSet.empty(p), PStableSet.pmult(p), PStableSet.all(p)):
        for _ in range(8):
            phi, _ = random_tame(rng, p, max_degree=6, ring="R")
            word = decompose(phi.to_ring("K"))
            if not is_reduced(word):
                continue
            assert all(v.passed for v in criterion_letters(word, AFF_BA, sub))


def test_length3_membership_examples():
    sigma, _ = make_sigma(sigma_t2(2))
    assert length3_membership(sigma.to_ring("K"), AFF_BA, PStableSet.pmult(2))
    sigma, _ = make_sigma(sigma_t2(3))
    assert not length3_membership(sigma.to_ring("K"), AFF_BA, PStableSet.pmult(3))


def test_length3_requires_bab():
    with pytest.raises(ValueError, match="length-3 BAB form required"):
        length3_membership(Auto.swap(3), AFF_BA, PStableSet.pmult(3))


@pytest.mark.parametrize("p", [2, 3])
def test_length3_with_affine_subgroup_matches_tame_criterion(p):
    rng = random.Random(110 + p)
    seen = 0
    for _ in range(40):
        s = random_sigma_params(rng, p)
        sigma, _ = make_sigma(s)
        if length_of(sigma.to_ring("K")) != 3:
            continue
        seen += 1
        assert length3_membership(sigma.to_ring("K"), AFF_BA, PStableSet.empty(p)) == sigma_is_tame(s)
        assert length3_membership(sigma.to_ring("K"), AFF_BA, PStableSet.pmult(p)) == sigma_in_HT(s)
    assert seen >= 10


def test_reduce_word_merges_same_factor():
    x, y, t = ring_vars(3)
    w = reduce_word(W(3, ("B", Auto(x + y ** 2, y)), ("B", Auto(x + y ** 3, y)), ("A", Auto.swap(3))))
    assert w.tags == "BA"
    assert is_reduced(w)


def diff_affine_sigma_words(rng, p, count):
    out = []
    while len(out) < count:
        s = random_sigma_params(rng, p)
        if sigma_is_tame(s) or not sigma_in_HT(s):
            continue
        sigma, _ = make_sigma(s)
        out.append(decompose(sigma.to_ring("K")))
    return out


@pytest.mark.parametrize("p", [2, 3])
def test_assembled_blocks_are_reduced(p):
    rng = random.Random(120 + p)
    x, y, t = ring_vars(p)
    tame_blocks = [W(p, ("A", Auto.swap(p))), W(p, ("B", Auto(x + t * y ** 3, y))),
                   W(p, ("A", Auto(y + 1, x))), W(p, ("A", Auto.swap(p)), ("B", Auto(x + y ** 2 + 1, y)))]
    for _ in range(6):
        hs = diff_affine_sigma_words(rng, p, 2)
        blocks = [Block("H", hs[0]), Block("T", rng.choice(tame_blocks)), Block("H", hs[1]),
                  Block("T", rng.choice(tame_blocks))]
        target = word_eval(Word(sum((b.word.letters for b in blocks), ()), p))
        minimal = minimize_blocks(blocks)
        word = assemble(minimal)
        assert word_eval(word) == target
        assert is_reduced(word)
