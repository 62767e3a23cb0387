"""Small-degree polynomial and rational-function arithmetic over F_p.

Coefficient vectors are ascending (index i holds the X^i coefficient),
stored as plain Python ints reduced mod p.  Degrees stay desk-scale, so
everything here is straightforward O(deg^2) arithmetic.
"""

from __future__ import annotations

import numpy as np

from .field import PrimeField

__all__ = [
    "normalize",
    "degree",
    "poly_eval",
    "poly_eval_all",
    "poly_gcd",
    "derivative",
    "squarefree_odd_part",
    "is_square_times_unit",
    "root_multiplicity",
    "RationalFunction",
]

Coeffs = tuple[int, ...]


def normalize(coeffs, p: int) -> Coeffs:
    """Reduce mod p and strip trailing zeros; () is the zero polynomial."""
    c = [int(x) % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(coeffs: Coeffs) -> int:
    """Degree, with deg 0 = -1 by convention."""
    return len(coeffs) - 1


def poly_eval(coeffs: Coeffs, x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def poly_eval_all(coeffs: Coeffs, p: int) -> np.ndarray:
    """Horner evaluation at every x in F_p at once (int64, exact for p < 2^31)."""
    x = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _monic(coeffs: Coeffs, p: int) -> Coeffs:
    if not coeffs:
        return coeffs
    lead_inv = pow(coeffs[-1], p - 2, p)
    return tuple(c * lead_inv % p for c in coeffs)


def _poly_mod(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    """Remainder of a by b (b nonzero)."""
    a = list(a)
    db, lead_inv = degree(b), pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] * lead_inv % p
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - q * c) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_divmod(a: Coeffs, b: Coeffs, p: int) -> tuple[Coeffs, Coeffs]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, lead_inv = degree(b), pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return normalize(q, p), tuple(a)


def poly_gcd(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    """Monic gcd by the Euclidean algorithm."""
    a, b = normalize(a, p), normalize(b, p)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return _monic(a, p)


def _poly_mul(a: Coeffs, b: Coeffs, p: int) -> Coeffs:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] = (out[i + j] + ca * cb) % p
    return normalize(out, p)


def derivative(coeffs: Coeffs, p: int) -> Coeffs:
    return normalize([i * c % p for i, c in enumerate(coeffs)][1:], p)


def squarefree_odd_part(coeffs: Coeffs, p: int) -> Coeffs:
    """The monic product of irreducible factors of odd multiplicity.

    Writing f = c * s * g^2 with s monic squarefree, returns s.  f is a
    unit times a perfect square exactly when s is constant.  Multiplicity
    parity is preserved under the char-p wrinkle f' = 0 (then f = h(X)^p
    with p odd, so recurse on h).
    """
    f = _monic(normalize(coeffs, p), p)
    if degree(f) <= 0:
        return (1,) if f else ()
    d = derivative(f, p)
    if not d:
        # f = h(X^p) = h(X)^p in F_p[X]; odd p preserves parity.
        h = f[::p]
        return squarefree_odd_part(h, p)
    g = poly_gcd(f, d, p)
    radical, rem = poly_divmod(f, g, p)
    assert not rem
    # A factor of multiplicity e appears in g with multiplicity e-1 when
    # p does not divide e (so its parity flips between f and g), and with
    # multiplicity e when p | e (it then misses the radical entirely).
    sg = squarefree_odd_part(g, p)
    common = poly_gcd(radical, sg, p)
    in_radical, rem = poly_divmod(radical, common, p)
    assert not rem
    off_radical, rem = poly_divmod(sg, common, p)
    assert not rem
    prod = _poly_mul(in_radical, off_radical, p)
    return _monic(prod, p)


def is_square_times_unit(coeffs: Coeffs, p: int) -> bool:
    """True when f mod p is a nonzero constant times a perfect square."""
    f = normalize(coeffs, p)
    if not f:
        return False  # the zero polynomial is treated separately by callers
    return degree(squarefree_odd_part(f, p)) == 0


def root_multiplicity(coeffs: Coeffs, r: int, p: int) -> int:
    """Multiplicity of X - r in f (0 when f(r) != 0)."""
    f = normalize(coeffs, p)
    if not f:
        raise ValueError("zero polynomial has no well-defined multiplicity")
    lin = normalize((-r, 1), p)
    m = 0
    while True:
        q, rem = poly_divmod(f, lin, p)
        if rem:
            return m
        f, m = q, m + 1


class RationalFunction:
    """f = num/den over F_p, reduced to lowest terms.

    Evaluation is vectorized over all of F_p; poles are reported rather
    than evaluated.
    """

    def __init__(self, num, den, field: PrimeField):
        p = field.p
        self.field = field
        num, den = normalize(num, p), normalize(den, p)
        if not den:
            raise ZeroDivisionError("denominator is identically zero")
        g = poly_gcd(num, den, p) if num else (1,)
        if degree(g) > 0:
            num, _ = poly_divmod(num, g, p)
            den, _ = poly_divmod(den, g, p)
        self.num: Coeffs = num
        self.den: Coeffs = den

    @property
    def is_zero(self) -> bool:
        return not self.num

    def poles(self) -> dict[int, int]:
        """Affine poles mapped to their orders."""
        p = self.field.p
        if degree(self.den) == 0:
            return {}
        den_vals = poly_eval_all(self.den, p)
        return {
            int(r): root_multiplicity(self.den, int(r), p)
            for r in np.nonzero(den_vals == 0)[0]
        }

    def pole_order_at_infinity(self) -> int:
        return max(0, degree(self.num) - degree(self.den))

    def eval_all(self) -> tuple[np.ndarray, np.ndarray]:
        """(values, defined) with values[x] = f(x) where defined."""
        p = self.field.p
        num_vals = poly_eval_all(self.num, p)
        den_vals = poly_eval_all(self.den, p)
        defined = den_vals != 0
        inv = self.field.inverse_values
        vals = num_vals * inv[den_vals] % p
        vals[~defined] = 0
        return vals, defined
