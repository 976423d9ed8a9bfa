"""Arithmetic in the totally ramified extension Q_p(pi), pi = zeta_p - 1.

The minimal polynomial of pi is g(x) = ((1+x)^p - 1)/x, an Eisenstein
polynomial of degree p - 1.  Elements are stored by their coordinates
in the power basis 1, pi, ..., pi^(p-2) with PadicNumber entries.  The
pi-adic valuation of sum(c_i pi^i) is min over i of (p-1) v_p(c_i) + i;
the minimum is attained at a single index because the candidate values
are pairwise distinct mod p - 1, so the formula is exact, not a bound.

eisenstein_roots mirrors the Z_p root search one level up: residue
enumeration in O/pi = F_p, Newton lifting where the derivative is a
unit, and substitution x -> r + pi*x with content stripping where it is
not, under the same depth budget and with the same honest inconclusive
markers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .modular import valuation
from .padic import DEFAULT_PRECISION, DEPTH_BUDGET, PadicNumber
from .polynomial import QPoly

__all__ = [
    "EisensteinElement",
    "EisensteinRoots",
    "eisenstein_minimal_poly",
    "eisenstein_roots",
    "PrecisionError",
]


class PrecisionError(Exception):
    """Raised when the working precision cannot support a requested step."""


def eisenstein_minimal_poly(p: int) -> QPoly:
    """g(x) = ((1+x)^p - 1)/x, the minimal polynomial of zeta_p - 1."""
    return QPoly([comb(p, j + 1) for j in range(p)])


class EisensteinElement:
    """Element of Q_p(pi) as coordinates over the power basis of pi."""

    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords: tuple[PadicNumber, ...]):
        if len(coords) != p - 1:
            raise ValueError(f"need {p - 1} coordinates, got {len(coords)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, name, value):
        raise AttributeError("EisensteinElement is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, n: int, p: int, absprec: int = DEFAULT_PRECISION) -> "EisensteinElement":
        zero = PadicNumber.zero(p, absprec)
        return cls(p, (PadicNumber.from_int(n, p, absprec),) + (zero,) * (p - 2))

    @classmethod
    def zero(cls, p: int, absprec: int = DEFAULT_PRECISION) -> "EisensteinElement":
        return cls(p, (PadicNumber.zero(p, absprec),) * (p - 1))

    @classmethod
    def pi(cls, p: int, absprec: int = DEFAULT_PRECISION) -> "EisensteinElement":
        zero = PadicNumber.zero(p, absprec)
        one = PadicNumber.from_int(1, p, absprec)
        coords = [zero] * (p - 1)
        coords[1] = one
        return cls(p, tuple(coords))

    @classmethod
    def from_digits(cls, digits: list[int], p: int, absprec: int = DEFAULT_PRECISION) -> "EisensteinElement":
        """sum(digits[i] * pi^i) for 0 <= i < p-1, digits arbitrary ints."""
        if len(digits) > p - 1:
            raise ValueError("too many digits for the power basis")
        padded = list(digits) + [0] * (p - 1 - len(digits))
        return cls(p, tuple(PadicNumber.from_int(d, p, absprec) for d in padded))

    # -- valuation ---------------------------------------------------------

    def valuation_lower_bound(self) -> int:
        """Largest n such that v_pi(self) >= n is certified."""
        bound = None
        for i, c in enumerate(self.coords):
            contrib = (self.p - 1) * (c.absprec if c.unit == 0 else c.val) + i
            bound = contrib if bound is None else min(bound, contrib)
        return bound

    def valuation(self) -> int:
        """Exact v_pi, or PrecisionError if a zero-certified coordinate
        could hide a smaller term."""
        best = None
        for i, c in enumerate(self.coords):
            if c.unit == 0:
                continue
            v = (self.p - 1) * c.val + i
            best = v if best is None else min(best, v)
        if best is None:
            raise PrecisionError("element is zero to working precision")
        for i, c in enumerate(self.coords):
            if c.unit == 0 and (self.p - 1) * c.absprec + i <= best:
                raise PrecisionError("valuation not separated at this precision")
        return best

    def valuation_at_least(self, n: int) -> bool:
        return self.valuation_lower_bound() >= n

    @property
    def is_zero_to_precision(self) -> bool:
        return all(c.unit == 0 for c in self.coords)

    def residue(self) -> int:
        """Image in O/pi = F_p.  Requires v_pi >= 0 certified."""
        if self.valuation_lower_bound() < 0:
            raise PrecisionError("residue needs a pi-integral element")
        c0 = self.coords[0]
        if c0.unit == 0 or c0.val >= 1:
            return 0
        return c0.unit % self.p

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "EisensteinElement":
        if isinstance(other, EisensteinElement):
            if other.p != self.p:
                raise TypeError("mixed primes")
            return other
        if isinstance(other, int):
            prec = max(c.absprec for c in self.coords)
            return EisensteinElement.from_int(other, self.p, prec)
        raise TypeError(f"cannot coerce {type(other).__name__}")

    def __add__(self, other) -> "EisensteinElement":
        o = self._coerce(other)
        return EisensteinElement(self.p, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> "EisensteinElement":
        return EisensteinElement(self.p, tuple(-c for c in self.coords))

    def __sub__(self, other) -> "EisensteinElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "EisensteinElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "EisensteinElement":
        if isinstance(other, int):
            return EisensteinElement(self.p, tuple(c * other for c in self.coords))
        o = self._coerce(other)
        p = self.p
        n = p - 1
        prod: list[PadicNumber | None] = [None] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            for j, b in enumerate(o.coords):
                term = a * b
                prod[i + j] = term if prod[i + j] is None else prod[i + j] + term
        # reduce with pi^(p-1) = -sum_{j<p-1} C(p, j+1) pi^j
        gtail = [comb(p, j + 1) for j in range(n)]
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c is None:
                continue
            prod[k] = None
            for j in range(n):
                term = c * (-gtail[j])
                idx = k - n + j
                prod[idx] = term if prod[idx] is None else prod[idx] + term
        # a structurally absent coefficient is exactly zero, so give it a
        # precision that never becomes the binding constraint
        zprec = max(c.absprec for c in self.coords) + max(c.absprec for c in o.coords)
        filled = tuple(
            c if c is not None else PadicNumber.zero(p, zprec) for c in prod[:n]
        )
        return EisensteinElement(p, filled)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "EisensteinElement":
        if e < 0:
            return self.inverse() ** (-e)
        prec = max(c.absprec for c in self.coords)
        acc = EisensteinElement.from_int(1, self.p, prec)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def inverse(self) -> "EisensteinElement":
        """Solve self * y = 1 by Gaussian elimination on the multiplication
        matrix, pivoting on the entry of smallest valuation."""
        p = self.p
        n = p - 1
        cols = []
        piel = EisensteinElement.pi(p, max(c.absprec for c in self.coords))
        power = EisensteinElement.from_int(1, p, max(c.absprec for c in self.coords))
        for _ in range(n):
            cols.append((self * power).coords)
            power = power * piel
        # rows of the system: sum_j M[i][j] y_j = e0[i]
        M = [[cols[j][i] for j in range(n)] for i in range(n)]
        prec = max(c.absprec for c in self.coords)
        rhs: list[PadicNumber] = [PadicNumber.from_int(1, p, prec)] + [
            PadicNumber.zero(p, prec) for _ in range(n - 1)
        ]
        for col in range(n):
            pivot_row, pivot_val = None, None
            for r in range(col, n):
                entry = M[r][col]
                if entry.unit == 0:
                    continue
                v = entry.val
                if pivot_val is None or v < pivot_val:
                    pivot_row, pivot_val = r, v
            if pivot_row is None:
                raise PrecisionError("singular to working precision; raise precision")
            M[col], M[pivot_row] = M[pivot_row], M[col]
            rhs[col], rhs[pivot_row] = rhs[pivot_row], rhs[col]
            inv_piv = M[col][col].inverse()
            for r in range(n):
                if r == col or M[r][col].unit == 0:
                    continue
                factor = M[r][col] * inv_piv
                M[r] = [a - factor * b for a, b in zip(M[r], M[col])]
                rhs[r] = rhs[r] - factor * rhs[col]
        ys = [rhs[i] * M[i][i].inverse() for i in range(n)]
        return EisensteinElement(p, tuple(ys))

    def __truediv__(self, other) -> "EisensteinElement":
        return self * self._coerce(other).inverse()

    def agrees_with(self, other: "EisensteinElement") -> bool:
        return all(a.agrees_with(b) for a, b in zip(self.coords, self._coerce(other).coords))

    def __repr__(self) -> str:
        parts = []
        for i, c in enumerate(self.coords):
            if c.unit == 0:
                continue
            parts.append(f"({c})*pi^{i}" if i else f"({c})")
        return " + ".join(parts) if parts else f"O(pi-adic zero, p={self.p})"


# ---------------------------------------------------------------------------
# Root search over O = Z_p[pi]
# ---------------------------------------------------------------------------


def _epoly_eval(coeffs: list[EisensteinElement], x: EisensteinElement) -> EisensteinElement:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _epoly_deriv(coeffs: list[EisensteinElement]) -> list[EisensteinElement]:
    return [c * i for i, c in enumerate(coeffs)][1:]


def _epoly_shift_scale(
    coeffs: list[EisensteinElement], r: int, p: int, prec: int
) -> list[EisensteinElement]:
    """coefficients of f(r + pi*x) from those of f(x)."""
    # Taylor shift by the integer r via repeated synthetic division
    shifted = list(coeffs)
    n = len(shifted)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            shifted[j] = shifted[j] + shifted[j + 1] * r
    piel = EisensteinElement.pi(p, prec)
    power = EisensteinElement.from_int(1, p, prec)
    out = []
    for c in shifted:
        out.append(c * power)
        power = power * piel
    return out


@dataclass(frozen=True)
class EisensteinRoots:
    """Roots in Z_p[pi]; same completeness semantics as PadicRoots."""

    certified: tuple[EisensteinElement, ...]
    inconclusive: tuple[str, ...]

    @property
    def complete(self) -> bool:
        return not self.inconclusive


def eisenstein_roots(
    f: QPoly,
    p: int,
    absprec: int | None = None,
    depth_budget: int = DEPTH_BUDGET,
) -> EisensteinRoots:
    """All roots of the integer polynomial f in the valuation ring Z_p[pi].

    absprec is the target pi-adic precision; the default is (p-1) times
    the default p-adic working precision.  Every certified root r comes
    with the guarantee v_pi(f(r)) >= absprec.
    """
    if f.is_zero:
        raise ValueError("zero polynomial has every element as root")
    work = f.squarefree_part().primitive()
    if work.degree == 0:
        return EisensteinRoots((), ())
    if absprec is None:
        absprec = (p - 1) * DEFAULT_PRECISION
    # enough p-adic digits per coordinate to certify absprec pi-adic digits,
    # with slack for Newton division losses
    pad_prec = absprec // (p - 1) + 8

    base_coeffs = [
        EisensteinElement.from_int(c, p, pad_prec) for c in work.int_coeffs()
    ]

    certified: list[EisensteinElement] = []
    inconclusive: list[str] = []

    def newton(coeffs: list[EisensteinElement], seed: EisensteinElement, target: int) -> EisensteinElement | None:
        dcoeffs = _epoly_deriv(coeffs)
        r = seed
        for _ in range(target.bit_length() + 40):
            fr = _epoly_eval(coeffs, r)
            if fr.valuation_at_least(target):
                return r
            dfr = _epoly_eval(dcoeffs, r)
            try:
                if dfr.valuation_lower_bound() != 0:
                    return None
                r = r - fr * dfr.inverse()
            except PrecisionError:
                return None
        return None

    def search(coeffs: list[EisensteinElement], depth: int, base: EisensteinElement, scale: int) -> None:
        dcoeffs = _epoly_deriv(coeffs)
        for rbar in range(p):
            seed = EisensteinElement.from_int(rbar, p, pad_prec)
            fr = _epoly_eval(coeffs, seed)
            # nonzero coordinates give exact contributions, and zero-certified
            # ones bound from below by at least p-1, so < 1 means a genuine
            # unit value, not a precision artifact
            if fr.valuation_lower_bound() < 1:
                continue
            target = absprec - scale
            label = f"pi-adic branch at depth {scale}, residue {rbar}"
            if target <= 0:
                inconclusive.append(f"{label}: precision exhausted")
                continue
            dfr = _epoly_eval(dcoeffs, seed)
            if dfr.valuation_lower_bound() == 0:
                # unit derivative: the class holds exactly one root
                root = newton(coeffs, seed, target)
                if root is None:
                    inconclusive.append(f"{label}: Newton failed to converge")
                    continue
                certified.append(base + root * EisensteinElement.pi(p, pad_prec) ** scale)
                continue
            if depth >= depth_budget:
                inconclusive.append(f"{label}: depth budget exhausted")
                continue
            shifted = _epoly_shift_scale(coeffs, rbar, p, pad_prec)
            if all(c.is_zero_to_precision for c in shifted):
                inconclusive.append(f"{label}: vanishing to precision, cannot strip")
                continue
            e = min(c.valuation_lower_bound() for c in shifted)
            if e > 0:
                pi_inv_e = EisensteinElement.pi(p, pad_prec).inverse() ** e
                shifted = [c * pi_inv_e for c in shifted]
            new_base = base + seed * EisensteinElement.pi(p, pad_prec) ** scale
            search(shifted, depth + 1, new_base, scale + 1)

    zero = EisensteinElement.zero(p, pad_prec)
    search(base_coeffs, 0, zero, 0)
    return EisensteinRoots(tuple(certified), tuple(inconclusive))
