"""Polynomial factorization over finite fields and over Z.

factor_fq runs squarefree decomposition, then distinct-degree splitting,
then randomized equal-degree splitting (Cantor-Zassenhaus; the quadratic
residue trick for odd q, the trace map for q = 2^k). The random source is
a `random.Random` seeded with DEFAULT_SEED unless a caller overrides it,
so repeated runs produce factors in identical order.

factor_int_poly is Zassenhaus: make the squarefree parts monic by the
x -> x/lc substitution, factor modulo a good prime, lift the factors with
linear Hensel steps past twice a Landau-Mignotte-style coefficient bound,
and recombine subsets with symmetric representatives. The product of the
returned factors (times content) is checked against the input before
returning; a mismatch is a bug, not a condition the caller handles.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .finitefield import FiniteField, FqElem, FqPoly
from .modular import primes_below
from .polynomial import QPoly

__all__ = [
    "DEFAULT_SEED",
    "factor_fq",
    "factor_int_poly",
    "is_irreducible_fq",
    "NoGoodPrime",
]

DEFAULT_SEED = 0x5E1F

# primes tried when reducing an integer polynomial; exhausting the range
# without finding a good one is a hard error, not a retry
GOOD_PRIME_BOUND = 10_000


class NoGoodPrime(Exception):
    """No reduction prime kept the polynomial squarefree (practically unreachable)."""


# ---------------------------------------------------------------------------
# factorization over F_q
# ---------------------------------------------------------------------------


def _squarefree_decomposition(f: FqPoly) -> list[tuple[FqPoly, int]]:
    """Monic squarefree decomposition in characteristic p, handling p-th powers."""
    field = f.field
    p = field.char
    out: dict[FqPoly, int] = {}

    def add(poly: FqPoly, mult: int) -> None:
        if poly.degree > 0:
            out[poly] = out.get(poly, 0) + mult

    def sff(g: FqPoly, outer: int) -> None:
        d = g.derivative()
        if d.is_zero:
            add_pth_root(g, outer)
            return
        c = g.gcd(d)
        w = g // c
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            fac = w // y
            add(fac, outer * i)
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            add_pth_root(c, outer)

    def add_pth_root(g: FqPoly, outer: int) -> None:
        # g = h(x^p); h coeffs are p-th roots, i.e. a^(q/p)
        root_exp = field.order // p
        coeffs = [g.coeff(i) ** root_exp for i in range(0, g.degree + 1, p)]
        sff(FqPoly(field, coeffs), outer * p)

    sff(f.monic(), 1)
    return sorted(out.items(), key=lambda t: (t[0].degree, t[1], _poly_key(t[0])))


def _poly_key(f: FqPoly) -> tuple:
    return tuple(c.coords for c in f.coeffs)


def _distinct_degree(f: FqPoly) -> list[tuple[FqPoly, int]]:
    """Split monic squarefree f into (product of irreducibles of degree d, d)."""
    field = f.field
    q = field.order
    out = []
    h = FqPoly.x(field)
    v = f
    d = 0
    while v.degree > 2 * (d + 1) - 1 and v.degree > 0:
        d += 1
        h = h.pow_mod(q, v)
        g = v.gcd(h - FqPoly.x(field))
        if g.degree > 0:
            out.append((g, d))
            v = v // g
            h = h % v if v.degree > 0 else h
    if v.degree > 0:
        out.append((v, v.degree))
    return out


def _equal_degree(f: FqPoly, d: int, rng: random.Random) -> list[FqPoly]:
    """Split monic squarefree f = product of irreducibles of degree d."""
    field = f.field
    if f.degree == d:
        return [f]
    q = field.order
    while True:
        r = _random_poly(f, rng)
        if r.degree < 1:
            continue
        g = f.gcd(r)
        if 0 < g.degree < f.degree:
            pass  # lucky gcd split
        elif field.char == 2:
            # trace map over F_2: T(r) = r + r^2 + ... + r^(2^(kd-1)) mod f
            k = field.degree
            t = r
            acc = r
            for _ in range(k * d - 1):
                t = (t * t) % f
                acc = acc + t
            g = f.gcd(acc)
        else:
            s = r.pow_mod((q**d - 1) // 2, f)
            g = f.gcd(s - FqPoly(field, (1,)))
        if 0 < g.degree < f.degree:
            return sorted(
                _equal_degree(g.monic(), d, rng) + _equal_degree((f // g).monic(), d, rng),
                key=lambda t2: (t2.degree, _poly_key(t2)),
            )


def _random_poly(f: FqPoly, rng: random.Random) -> FqPoly:
    field = f.field
    deg = f.degree - 1 if f.degree > 1 else 1
    coeffs = []
    for _ in range(deg + 1):
        coeffs.append([rng.randrange(field.char) for _ in range(field.degree)])
    return FqPoly(field, [field.element(c) for c in coeffs])


def factor_fq(f: FqPoly, seed: int = DEFAULT_SEED) -> tuple[FqElem, list[tuple[FqPoly, int]]]:
    """Factor nonzero f over its field into monic irreducibles.

    Returns (leading unit, [(monic irreducible, multiplicity)]), the list
    sorted by (degree, coefficients) so output order is deterministic. The
    exact reconstruction unit * prod(factor^mult) == f is asserted.
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    unit = f.leading
    if f.degree == 0:
        return unit, []
    rng = random.Random(seed)
    factors: list[tuple[FqPoly, int]] = []
    for squarefree, mult in _squarefree_decomposition(f):
        for same_degree, d in _distinct_degree(squarefree):
            for irreducible in _equal_degree(same_degree, d, rng):
                factors.append((irreducible, mult))
    factors.sort(key=lambda t: (t[0].degree, _poly_key(t[0])))
    check = FqPoly(f.field, (1,)) * unit
    for poly, mult in factors:
        for _ in range(mult):
            check = check * poly
    if check != f:
        raise AssertionError("factor_fq reconstruction failed; this is a bug")
    return unit, factors


def is_irreducible_fq(f: FqPoly) -> bool:
    """Independent irreducibility check used by the test suite.

    Degree <= 3 reduces to root-freeness (plus degree-2 content for cubics
    handled by the same root test); higher degrees use the
    distinct-degree signature: x^(q^d) fixes f only at d = deg f.
    """
    if f.degree <= 0:
        return False
    if f.degree == 1:
        return True
    if f.degree <= 3:
        return not f.roots() and (f.degree == 2 or not _has_quadratic_factor(f))
    q = f.field.order
    x = FqPoly.x(f.field)
    h = x
    for d in range(1, f.degree // 2 + 1):
        h = h.pow_mod(q, f)
        if f.gcd(h - x).degree > 0:
            return False
    return True


def _has_quadratic_factor(f: FqPoly) -> bool:
    # only reached for cubics; a cubic with no roots has a quadratic factor
    # iff it is reducible iff it has a root, so this is always False
    return False


# ---------------------------------------------------------------------------
# factorization over Z
# ---------------------------------------------------------------------------


def _landau_mignotte(g: QPoly) -> int:
    """Coefficient bound for any monic divisor of monic g in Z[x]; deliberately generous."""
    n = g.degree
    height = max(abs(int(c)) for c in g.coeffs)
    return (1 << n) * (math.isqrt(n + 1) + 1) * height


def _good_prime(g: QPoly) -> int:
    lead = abs(int(g.leading))
    for l in primes_below(GOOD_PRIME_BOUND):
        if l == 2 or lead % l == 0:
            continue
        field = FiniteField(l)
        gl = FqPoly(field, [int(c) % l for c in g.coeffs])
        if gl.degree == g.degree and gl.gcd(gl.derivative()).degree == 0:
            return l
    raise NoGoodPrime(f"no good reduction prime below {GOOD_PRIME_BOUND} for {g!r}")


def _hensel_lift_factors(g: QPoly, l: int, target: int, seed: int) -> tuple[int, list[list[int]]]:
    """Lift the mod-l factorization of monic g to factors mod l^k > target.

    Returns (l^k, list of monic integer coefficient vectors mod l^k).
    Linear lifting with the Bezout elements of the residue factorization,
    which stay valid at every step because corrections vanish mod l.
    """
    field = FiniteField(l)
    gl = FqPoly(field, [int(c) % l for c in g.coeffs])
    _, residue_factors = factor_fq(gl, seed)
    hbars = [f for f, _ in residue_factors]
    if len(hbars) == 1:
        return l, [[int(c) % l for c in g.coeffs]]

    # Bezout: t_i = (prod_{j != i} hbar_j)^(-1) mod hbar_i
    ts = []
    for i, hi in enumerate(hbars):
        prod_others = FqPoly(field, (1,))
        for j, hj in enumerate(hbars):
            if j != i:
                prod_others = (prod_others * hj) % hi
        ts.append(_fq_inverse_mod(prod_others, hi))

    modulus = l
    lifted = [[c.lift() for c in h.coeffs] for h in hbars]
    g_int = [int(c) for c in g.coeffs]
    while modulus <= target:
        # error e = (g - prod lifted) / modulus mod l
        prod = [1]
        for h in lifted:
            prod = _int_poly_mul(prod, h, modulus * l)
        e = [(a - b) % (modulus * l) for a, b in _zip_pad(g_int, prod)]
        e_over = [(c // modulus) % l for c in e]
        for i, h in enumerate(lifted):
            # delta_i = e * t_i mod hbar_i (all mod l)
            delta = _fq_mulmod(e_over, [c.lift() for c in ts[i].coeffs], [c.lift() for c in hbars[i].coeffs], l)
            for k_idx, d in enumerate(delta):
                if d:
                    h[k_idx] = (h[k_idx] + modulus * d) % (modulus * l)
        modulus *= l
    return modulus, lifted


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)


def _int_poly_mul(a: list[int], b: list[int], mod: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % mod
    return out


def _fq_mulmod(a: list[int], b: list[int], mod_poly: list[int], l: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else [0]
    for i, ca in enumerate(a):
        ca %= l
        if ca:
            for j, cb in enumerate(b):
                prod[i + j] = (prod[i + j] + ca * cb) % l
    # reduce mod mod_poly (monic of degree len-1)
    dm = len(mod_poly) - 1
    for i in range(len(prod) - 1, dm - 1, -1):
        c = prod[i]
        if c:
            for j, mc in enumerate(mod_poly):
                prod[i - dm + j] = (prod[i - dm + j] - c * mc) % l
    return prod[:dm]


def _fq_inverse_mod(a: FqPoly, mod: FqPoly) -> FqPoly:
    """Inverse of a mod `mod` over a prime field, by extended Euclid."""
    field = a.field
    r0, r1 = mod, a % mod
    s0, s1 = FqPoly(field), FqPoly(field, (1,))
    while not r1.is_zero:
        q, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ValueError("element not invertible modulo the given polynomial")
    return s0 * r0.leading.inverse()


def _symmetric(c: int, mod: int) -> int:
    c %= mod
    return c - mod if c > mod // 2 else c


def factor_int_poly(f: QPoly, seed: int = DEFAULT_SEED) -> tuple[Fraction, list[tuple[QPoly, int]]]:
    """Factor nonzero f with rational coefficients into irreducibles over Q.

    Returns (content, [(primitive integer irreducible with positive leading
    coefficient, multiplicity)]) with f == content * prod(factor^mult),
    asserted exactly before returning.
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    content = f.content() if f.leading > 0 else -f.content()
    prim = f * (1 / content)
    factors: list[tuple[QPoly, int]] = []
    for squarefree, mult in prim.yun_squarefree():
        # pull out x itself to keep the constant coefficient nonzero
        k = 0
        while squarefree.coeff(0) == 0 and squarefree.degree > 0:
            squarefree = squarefree // QPoly.x()
            k += 1
        if k:
            factors.append((QPoly.x(), k * mult))
        for irr in _factor_squarefree(squarefree.primitive(), seed):
            factors.append((irr, mult))
    factors.sort(key=lambda t: (t[0].degree, tuple(t[0].coeffs)))
    # fold the primitive-part units of the factors back into the content
    check = QPoly.constant(1)
    for poly, mult in factors:
        check = check * poly**mult
    if check.degree != prim.degree:
        raise AssertionError("factor_int_poly lost degree; this is a bug")
    unit = prim.leading / check.leading
    content = content * unit
    if QPoly([c * unit for c in check.coeffs]) != prim:
        raise AssertionError("factor_int_poly reconstruction failed; this is a bug")
    return content, factors


def _factor_squarefree(g: QPoly, seed: int) -> list[QPoly]:
    """Irreducible factors of a primitive squarefree integer polynomial."""
    if g.degree <= 0:
        return []
    if g.degree == 1:
        return [g.primitive()]
    lead = int(g.leading)
    if abs(lead) != 1:
        # monicize: G(x) = lead^(n-1) * g(x/lead) is monic with integer coeffs
        n = g.degree
        G = QPoly([c * Fraction(lead) ** (n - 1 - i) for i, c in enumerate(g.coeffs)])
        assert G.is_integral and G.leading == 1
        factors = []
        for H in _factor_squarefree(G, seed):
            factors.append(H.compose_linear(Fraction(lead), 0).primitive())
        return factors

    if lead == -1:
        g = -g
    modulus_prime = _good_prime(g)
    bound = 2 * _landau_mignotte(g) + 1
    modulus, lifted = _hensel_lift_factors(g, modulus_prime, bound, seed)
    if len(lifted) == 1:
        return [g]

    remaining = list(range(len(lifted)))
    current = g
    out: list[QPoly] = []
    size = 1
    while 2 * size <= len(remaining):
        found = _try_subsets(current, lifted, remaining, size, modulus)
        if found is None:
            size += 1
            continue
        subset, factor = found
        out.append(factor)
        current = current // factor
        remaining = [i for i in remaining if i not in subset]
    if current.degree > 0:
        out.append(current.primitive())
    return out


def _try_subsets(current, lifted, remaining, size, modulus):
    from itertools import combinations

    for subset in combinations(remaining, size):
        prod = [1]
        for i in subset:
            prod = _int_poly_mul(prod, lifted[i], modulus)
        candidate = QPoly([_symmetric(c, modulus) for c in prod])
        if candidate.degree < 1:
            continue
        if candidate.divides(current):
            return set(subset), candidate.primitive()
    return None
