"""Weierstrass models: invariants, coordinate changes, reduction, point counts.

A model is the quintuple [a1, a2, a3, a4, a6] with rational entries and
nonzero discriminant.  The b- and c-invariants are computed once at
construction and double-checked against the identities
4*b8 = b2*b6 - b4^2 and 1728*Delta = c4^3 - c6^2, so a silent formula
slip cannot survive the constructor.

The group law is written against duck-typed field elements (anything
with +, -, *, / and ==): the same code path serves exact rational
points and reductions mod ell.  Division polynomials use the standard
f/g bisection ladder so the y-variable is eliminated once and for all;
odd n gives a univariate polynomial of degree (n^2-1)/2 with leading
coefficient n whose roots are the x-coordinates of the nonzero
n-torsion.
"""

from __future__ import annotations

from fractions import Fraction

from .finitefield import FiniteField, FqElem, is_square
from .polynomial import QPoly

__all__ = [
    "WeierstrassModel",
    "point_neg",
    "point_add",
    "scalar_mul",
    "count_points",
    "trace_of_frobenius",
    "COUNT_LIMIT",
]

COUNT_LIMIT = 10**6


class WeierstrassModel:
    """Immutable Weierstrass equation y^2 + a1xy + a3y = x^3 + a2x^2 + a4x + a6."""

    __slots__ = ("a1", "a2", "a3", "a4", "a6", "b2", "b4", "b6", "b8",
                 "c4", "c6", "discriminant")

    def __init__(self, a1, a2, a3, a4, a6):
        a1, a2, a3, a4, a6 = (Fraction(v) for v in (a1, a2, a3, a4, a6))
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
        disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if 4 * b8 != b2 * b6 - b4 * b4:
            raise AssertionError("b-invariant identity failed; formula bug")
        if 1728 * disc != c4**3 - c6 * c6:
            raise AssertionError("c-invariant identity failed; formula bug")
        if disc == 0:
            raise ValueError("singular model: discriminant is zero")
        for name, val in (("a1", a1), ("a2", a2), ("a3", a3), ("a4", a4),
                          ("a6", a6), ("b2", b2), ("b4", b4), ("b6", b6),
                          ("b8", b8), ("c4", c4), ("c6", c6),
                          ("discriminant", disc)):
            object.__setattr__(self, name, val)

    def __setattr__(self, name, value):
        raise AttributeError("WeierstrassModel is immutable")

    @classmethod
    def from_list(cls, ainvs) -> "WeierstrassModel":
        vals = list(ainvs)
        if len(vals) != 5:
            raise ValueError("expected [a1, a2, a3, a4, a6]")
        return cls(*vals)

    @property
    def a_invariants(self) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def j_invariant(self) -> Fraction:
        return self.c4**3 / self.discriminant

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.a_invariants)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeierstrassModel) and other.a_invariants == self.a_invariants

    def __hash__(self) -> int:
        return hash(self.a_invariants)

    def __repr__(self) -> str:
        body = ", ".join(str(v) for v in self.a_invariants)
        return f"WeierstrassModel([{body}])"

    # -- coordinate changes -------------------------------------------------

    def change_model(self, u, r, s, t) -> "WeierstrassModel":
        """Transform by x = u^2 x' + r, y = u^3 y' + s u^2 x' + t; u != 0.

        Scales the discriminant by u^-12 and c4 by u^-4.
        """
        u, r, s, t = (Fraction(v) for v in (u, r, s, t))
        if u == 0:
            raise ValueError("u must be nonzero")
        a1, a2, a3, a4, a6 = self.a_invariants
        na1 = (a1 + 2 * s) / u
        na2 = (a2 - s * a1 + 3 * r - s * s) / u**2
        na3 = (a3 + r * a1 + 2 * t) / u**3
        na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4
        na6 = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6
        return WeierstrassModel(na1, na2, na3, na4, na6)

    def integral_model(self) -> "WeierstrassModel":
        """Rescale by u = 1/m, m the lcm of coefficient denominators."""
        if self.is_integral:
            return self
        m = 1
        for v in self.a_invariants:
            m = m * v.denominator // _gcd(m, v.denominator)
        return self.change_model(Fraction(1, m), 0, 0, 0)

    # -- reduction ----------------------------------------------------------

    def reduction(self, field: FiniteField) -> tuple[FqElem, ...]:
        """a-invariants mapped into the field; model must be integral."""
        if not self.is_integral:
            raise ValueError("reduce an integral model")
        return tuple(field.element(int(v)) for v in self.a_invariants)

    # -- division polynomials -------------------------------------------------

    def two_torsion_polynomial(self) -> QPoly:
        """4x^3 + b2 x^2 + 2 b4 x + b6, the square of the 2-division value."""
        return QPoly([self.b6, 2 * self.b4, self.b2, 4])

    def division_polynomial(self, n: int) -> QPoly:
        """Univariate n-division polynomial for odd 3 <= n <= 13.

        Integral models only, so the output has integer coefficients.
        """
        if n % 2 == 0 or not 3 <= n <= 13:
            raise ValueError("implemented for odd n between 3 and 13")
        if not self.is_integral:
            raise ValueError("division polynomials expect an integral model")
        get_f, _ = self._division_ladder()
        poly = get_f(n)
        expected_deg = (n * n - 1) // 2
        assert poly.degree == expected_deg and poly.leading == n, (
            "division polynomial shape check failed")
        return poly

    def x_multiple_fraction(self, k: int) -> tuple[QPoly, QPoly]:
        """x([k]P) = num(x)/den(x) as an x-only rational map, 2 <= k <= 13.

        Uses psi_{k-1} psi_{k+1} / psi_k^2 = x - x([k]P); the y-carrying
        factor psi_2 appears squared throughout, so everything collapses
        to the univariate ladder.
        """
        if not 2 <= k <= 13:
            raise ValueError("k out of the supported ladder range")
        get_f, get_g = self._division_ladder()
        F = self.two_torsion_polynomial()
        if k % 2:
            den = get_f(k) ** 2
            num = QPoly.x() * den - F * get_g(k - 1) * get_g(k + 1)
        else:
            den = F * get_g(k) ** 2
            num = QPoly.x() * den - get_f(k - 1) * get_f(k + 1)
        return num, den

    def _division_ladder(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        F = QPoly([b6, 2 * b4, b2, 4])
        f: dict[int, QPoly] = {
            1: QPoly.one(),
            3: QPoly([b8, 3 * b6, 3 * b4, b2, 3]),
        }
        g: dict[int, QPoly] = {
            0: QPoly.zero(),
            2: QPoly.one(),
            4: QPoly([b4 * b8 - b6 * b6, b2 * b8 - b4 * b6,
                      10 * b8, 10 * b6, 5 * b4, b2, 2]),
        }
        F2 = F * F

        def get_f(k: int) -> QPoly:
            if k not in f:
                m = (k - 1) // 2
                if m % 2 == 0:
                    f[k] = F2 * get_g(m + 2) * get_g(m) ** 3 - get_f(m - 1) * get_f(m + 1) ** 3
                else:
                    f[k] = get_f(m + 2) * get_f(m) ** 3 - F2 * get_g(m - 1) * get_g(m + 1) ** 3
            return f[k]

        def get_g(k: int) -> QPoly:
            if k not in g:
                m = k // 2
                if m % 2 == 0:
                    g[k] = get_g(m) * (get_g(m + 2) * get_f(m - 1) ** 2
                                       - get_g(m - 2) * get_f(m + 1) ** 2)
                else:
                    g[k] = get_f(m) * (get_f(m + 2) * get_g(m - 1) ** 2
                                       - get_f(m - 2) * get_g(m + 1) ** 2)
            return g[k]

        return get_f, get_g


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Group law over an arbitrary field, duck typed
# ---------------------------------------------------------------------------

Point = tuple | None  # affine (x, y) or None for the point at infinity


def point_neg(ainvs, P: Point) -> Point:
    if P is None:
        return None
    a1, _, a3, _, _ = ainvs
    x, y = P
    return (x, -y - a1 * x - a3)


def point_add(ainvs, P: Point, Q: Point) -> Point:
    """Chord-tangent addition with the full a1..a6 formulas."""
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, a6 = ainvs
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y2 == -y1 - a1 * x2 - a3:
            return None
        # tangent line; the denominator vanishes exactly on 2-torsion,
        # which the branch above already caught
        den = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
        nu = (-(x1**3) + a4 * x1 + 2 * a6 - a3 * y1) / den
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return (x3, y3)


def scalar_mul(ainvs, n: int, P: Point) -> Point:
    if n < 0:
        return scalar_mul(ainvs, -n, point_neg(ainvs, P))
    acc: Point = None
    base = P
    while n:
        if n & 1:
            acc = point_add(ainvs, acc, base)
        base = point_add(ainvs, base, base)
        n >>= 1
    return acc


def is_on_curve(ainvs, P: Point) -> bool:
    if P is None:
        return True
    a1, a2, a3, a4, a6 = ainvs
    x, y = P
    return y * y + a1 * x * y + a3 * y == x**3 + a2 * x * x + a4 * x + a6


# ---------------------------------------------------------------------------
# Point counting over small finite fields
# ---------------------------------------------------------------------------


def count_points(model: WeierstrassModel, field: FiniteField) -> int:
    """#E(F_q) including the point at infinity, by direct character sums.

    Odd q: each x contributes 1 + chi(D(x)) points, D the completed-square
    discriminant of the y-quadratic.  q = 2^f: the y-equation is Artin-
    Schreier and the fiber size is decided by a trace.  Guarded to
    q <= 10^6 and to nonsingular reductions.
    """
    if field.order > COUNT_LIMIT:
        raise ValueError(f"field order {field.order} exceeds counting limit {COUNT_LIMIT}")
    a1, a2, a3, a4, a6 = model.reduction(field)
    if field.element(int(model.discriminant)) == field.zero():
        raise ValueError("singular reduction: count on the minimal model at a good prime")
    q = field.order
    total = 1  # infinity
    if field.char != 2:
        four = field.element(4)
        for x in field.elements():
            g = x**3 + a2 * x * x + a4 * x + a6
            h = a1 * x + a3
            d = h * h + four * g
            if d == field.zero():
                total += 1
            elif is_square(d):
                total += 2
        return total
    # characteristic 2
    zero = field.zero()
    for x in field.elements():
        g = x**3 + a2 * x * x + a4 * x + a6
        h = a1 * x + a3
        if h == zero:
            total += 1  # y -> y^2 is a bijection
        else:
            w = g / (h * h)
            if w.trace() == zero:
                total += 2
    return total


def trace_of_frobenius(model: WeierstrassModel, ell: int) -> int:
    """a_ell = ell + 1 - #E(F_ell) for a prime ell of good reduction.

    The model must be integral with ell not dividing the discriminant;
    such a model is automatically minimal at ell.
    """
    if not model.is_integral:
        raise ValueError("pass an integral model")
    if int(model.discriminant) % ell == 0:
        raise ValueError(f"{ell} divides the discriminant; minimize and check reduction first")
    n = count_points(model, FiniteField(ell, 1))
    a = ell + 1 - n
    assert a * a <= 4 * ell, "Hasse bound violated; counting bug"
    return a
