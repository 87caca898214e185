"""Independent reference computations shared by the test modules."""
from itertools import combinations

from tameauto.automorphism import Auto, compose
from tameauto.bipoly import BiPoly
from tameauto.generators import random_intersection, random_y_poly
from tameauto.pstable import PStableSet, triangular_in_AI


def pascal_mod_p(n_max, p):
    """Rows 0..n_max of Pascal's triangle reduced mod p, built by addition."""
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append([1] + [(prev[k - 1] + prev[k]) % p for k in range(1, n)] + [1])
    return rows


def support_by_expansion(n, p):
    """Exponents of (y+1)^n over F_p by repeated multiplication."""
    coeffs = [1]
    for _ in range(n):
        coeffs = [((coeffs[k] if k < len(coeffs) else 0) + (coeffs[k - 1] if k else 0)) % p
                  for k in range(len(coeffs) + 1)]
    return {k for k, c in enumerate(coeffs) if c}


def subsets_2_to_8():
    base = range(2, 9)
    for r in range(1, 8):
        yield from combinations(base, r)


def direct_stability(I, p):
    return all(support_by_expansion(n, p) - {0, 1} <= set(I) for n in I)


def random_power_part(rng, p, I):
    """Random (x + S(y), y) with S supported on the finite set I."""
    x, y = BiPoly.x(p), BiPoly.y(p)
    exps = [n for n in sorted(I) if rng.random() < 0.7] or [max(I)]
    return Auto(x + random_y_poly(rng, p, exps), y)


def coset_property_holds(rng, p, I, trials=10):
    """alpha*beta lies in B^I (A n B) for random alpha in A n B, beta in B^I."""
    pset = PStableSet.finite(I, p)
    for _ in range(trials):
        alpha = random_intersection(rng, p)
        beta = random_power_part(rng, p, I)
        gamma = compose(alpha, beta)
        ok, fac = triangular_in_AI(gamma, pset)
        if not ok or compose(fac.power_part, fac.affine_part) != gamma:
            return False
    return True


def coset_counterexample(p, I, pair):
    """The translation y -> y+1 followed by x -> x + y^n leaves B^I (A n B)."""
    n, _ = pair
    x, y = BiPoly.x(p), BiPoly.y(p)
    alpha = Auto(x, y + 1)
    beta = Auto(x + y ** n, y)
    ok, _ = triangular_in_AI(compose(alpha, beta), PStableSet.finite(I, p))
    return alpha, beta, not ok
