"""Generators for the algebraic trace-function families over F_p.

Each generator returns a :class:`TraceTable`: the length-p vector of
complex values together with a :class:`FamilyDescriptor` carrying the
family's declared invariants (rank, singular set, Swan data, conductor).
Conductors follow the rule

    conductor = rank + sum over singular points (incl. infinity) of
                max(1, swan at the point),

with the per-family rank/Swan data declared as metadata rather than
derived: the families are defined here by their closed-form values.

Families:

* ``legendre_poly_trace``  -- x -> (f(x)/p), the Legendre symbol of a
  squarefree-up-to-units polynomial.
* ``inverse_phase_trace``  -- x -> e(inv(x)/p), 0 at x = 0.
* ``kloosterman_trace``    -- x -> S(x,1;p)/sqrt(p), the normalized
  Kloosterman sums, with value -1/sqrt(p) at x = 0.
* ``legendre_curve_trace`` -- x -> (p - N(x))/sqrt(p) for the affine
  point counts N(x) of v^2 = u(u-1)(u-x), value 1/sqrt(p) at x in {0,1}.
* ``mixed_ask_trace``      -- x -> e(f1(x)/p) * chi(f2(x)) on its domain.
* ``fourier_trace``        -- the normalized finite-field Fourier
  transform t -> -(1/sqrt(p)) sum_x v(x) e(tx/p).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Mapping

import numpy as np

from .field import PrimeField
from . import polys
from .polys import RationalFunction

__all__ = [
    "INFINITY",
    "FamilyDescriptor",
    "TraceTable",
    "MultiplicativeCharacter",
    "legendre_poly_trace",
    "inverse_phase_trace",
    "kloosterman_trace",
    "legendre_curve_trace",
    "legendre_curve_integers",
    "mixed_ask_trace",
    "fourier_trace",
    "exceptional_set",
    "conductor_bound_xi",
]

#: Key used for the point at infinity in Swan-conductor maps.
INFINITY = "inf"

_POINTWISE_SLACK = 1e-12


@dataclass(frozen=True)
class FamilyDescriptor:
    """Identity and declared sheaf-style metadata of a trace family.

    ``swan`` maps every singular point (affine ints, plus ``INFINITY``)
    to its Swan conductor; tame points carry 0 but still count toward
    the conductor.  ``rank = 0`` marks an untracked family (Fourier
    transforms), whose conductor is reported as 0.
    """

    family: str
    label: str
    rank: int
    swan: Mapping[int | str, int]
    conductor: int = dataclass_field(init=False)
    singular_set: frozenset[int] = dataclass_field(init=False)

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        for pt, s in self.swan.items():
            if s < 0:
                raise ValueError(f"negative Swan conductor at {pt}")
        cond = self.rank + sum(max(1, s) for s in self.swan.values()) if self.rank else 0
        object.__setattr__(self, "conductor", cond)
        object.__setattr__(
            self,
            "singular_set",
            frozenset(pt for pt in self.swan if pt != INFINITY),
        )


@dataclass(frozen=True)
class TraceTable:
    """A trace function sampled on all of F_p, with its family metadata."""

    field: PrimeField
    values: np.ndarray
    descriptor: FamilyDescriptor

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (self.field.p,):
            raise ValueError(f"values must have shape ({self.field.p},)")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        r = self.descriptor.rank
        if r >= 1:
            peak = float(np.abs(v).max())
            if peak > r + _POINTWISE_SLACK:
                raise ValueError(
                    f"pointwise bound violated: max |value| = {peak} > rank = {r}"
                )

    @property
    def p(self) -> int:
        return self.field.p


class MultiplicativeCharacter:
    """chi with chi(g^k) = e(m*k/(p-1)) for the primitive root g; chi(0) = 0."""

    def __init__(self, field: PrimeField, index: int):
        self.field = field
        self.index = index % (field.p - 1)

    @property
    def order(self) -> int:
        import math

        return (self.field.p - 1) // math.gcd(self.index, self.field.p - 1)

    @property
    def is_trivial(self) -> bool:
        return self.index == 0

    def values(self) -> np.ndarray:
        """chi(x) for all x in F_p, walking the powers of g (no dlogs needed)."""
        p, g, m = self.field.p, self.field.primitive_root, self.index
        n = p - 1
        unit = np.exp(2j * np.pi * (np.arange(n, dtype=np.int64) * m % n) / n)
        out = np.zeros(p, dtype=np.complex128)
        x = 1
        for k in range(n):
            out[x] = unit[k]
            x = x * g % p
        return out

    def __call__(self, x: int) -> complex:
        x %= self.field.p
        if x == 0:
            return 0j
        k = int(self.field.dlog_table[x])
        n = self.field.p - 1
        return complex(np.exp(2j * np.pi * (self.index * k % n) / n))


# -- family generators -----------------------------------------------------


def legendre_poly_trace(f_coeffs, field: PrimeField) -> TraceTable:
    """x -> (f(x)/p) for integer f of degree >= 1.

    Rejects reductions where f mod p is a unit times a perfect square
    (including constants and the zero polynomial): the character sum is
    degenerate there.  Affine singularities are the roots of f in F_p,
    found by exhaustive evaluation; the family is tame with the point at
    infinity always counted.
    """
    p = field.p
    f = polys.normalize(f_coeffs, p)
    if not f or polys.degree(f) < 1 or polys.is_square_times_unit(f, p):
        raise ValueError(
            "square-degenerate reduction: f mod p is a unit times a perfect square"
        )
    f_vals = polys.poly_eval_all(f, p)
    values = field.legendre_table[f_vals].astype(np.complex128)
    roots = [int(r) for r in np.nonzero(f_vals == 0)[0]]
    swan = {r: 0 for r in roots}
    swan[INFINITY] = 0
    desc = FamilyDescriptor(
        family="legendre_poly",
        label="legendre_poly(" + ",".join(str(c) for c in f) + ")",
        rank=1,
        swan=swan,
    )
    return TraceTable(field, values, desc)


def inverse_phase_trace(field: PrimeField) -> TraceTable:
    """x -> e(inv(x)/p) for x != 0, and 0 at x = 0."""
    p = field.p
    values = np.zeros(p, dtype=np.complex128)
    inv = field.inverse_values
    values[1:] = field.char_table[inv[1:]]
    desc = FamilyDescriptor(
        family="inverse_phase",
        label="inverse_phase",
        rank=1,
        swan={0: 1, INFINITY: 0},
    )
    return TraceTable(field, values, desc)


def kloosterman_trace(field: PrimeField, method: str = "transform") -> TraceTable:
    """x -> S(x,1;p)/sqrt(p) with S(x,1;p) = sum_{y!=0} e((xy + inv(y))/p).

    ``direct`` evaluates the double sum in O(p^2); ``transform`` obtains
    all p values from one DFT of y -> e(inv(y)/p) in O(p log p).  The
    value at x = 0 is -1/sqrt(p) (which the complete sum also gives).
    """
    p = field.p
    sqrt_p = np.sqrt(p)
    if method == "transform":
        w = inverse_phase_trace(field).values
        # S(x,1;p) = sum_y w(y) e(+xy/p) = p * dft(w)[-x mod p]
        hat = field.dft(w)
        values = (p * hat)[(-np.arange(p)) % p] / sqrt_p
    elif method == "direct":
        values = np.empty(p, dtype=np.complex128)
        y = np.arange(1, p, dtype=np.int64)
        inv_y = field.inverse_values[1:]
        chunk = max(1, (1 << 21) // p)
        for start in range(0, p, chunk):
            x = np.arange(start, min(start + chunk, p), dtype=np.int64)
            exponents = (x[:, None] * y[None, :] + inv_y[None, :]) % p
            values[start : start + len(x)] = field.char_table[exponents].sum(axis=1) / sqrt_p
    else:
        raise ValueError(f"unknown method {method!r}; use 'direct' or 'transform'")
    values[0] = -1.0 / sqrt_p
    desc = FamilyDescriptor(
        family="kloosterman",
        label="kloosterman",
        rank=2,
        swan={0: 0, INFINITY: 1},
    )
    return TraceTable(field, values, desc)


def legendre_curve_integers(field: PrimeField, method: str = "point_count") -> np.ndarray:
    """The integers p - N(x), N(x) = |{(u,v): v^2 = u(u-1)(u-x)}|, for all x.

    ``point_count`` counts affine solutions through 1 + (c/p) fiber
    sizes; ``char_sum`` evaluates -sum_u ((u(u-1)(u-x))/p).  Both return
    the same integer array (entries at x in {0, 1} use the same formulas
    even though the trace table overrides them).
    """
    p = field.p
    leg = field.legendre_table
    x = np.arange(p, dtype=np.int64)
    counts = np.zeros(p, dtype=np.int64)
    chunk = max(1, (1 << 21) // p)
    for start in range(0, p, chunk):
        u = np.arange(start, min(start + chunk, p), dtype=np.int64)
        cubic = (u * ((u - 1) % p))[:, None] % p
        cubic = cubic * ((u[:, None] - x[None, :]) % p) % p
        if method == "point_count":
            counts += (1 + leg[cubic]).sum(axis=0)
        elif method == "char_sum":
            counts -= leg[cubic].sum(axis=0)
        else:
            raise ValueError(f"unknown method {method!r}; use 'point_count' or 'char_sum'")
    if method == "point_count":
        return p - counts
    return counts


def legendre_curve_trace(field: PrimeField, method: str = "point_count") -> TraceTable:
    """x -> (p - N(x))/sqrt(p) off {0, 1}; both cells there are 1/sqrt(p)."""
    p = field.p
    if p < 5:
        raise ValueError("legendre_curve requires p >= 5")
    integers = legendre_curve_integers(field, method)
    values = integers.astype(np.complex128) / np.sqrt(p)
    values[0] = values[1] = 1.0 / np.sqrt(p)
    desc = FamilyDescriptor(
        family="legendre_curve",
        label="legendre_curve",
        rank=2,
        swan={0: 0, 1: 0, INFINITY: 0},
    )
    return TraceTable(field, values, desc)


def _as_rational(f, field: PrimeField) -> RationalFunction:
    if isinstance(f, RationalFunction):
        return f
    num, den = f
    return RationalFunction(num, den, field)


def mixed_ask_trace(f1, f2, chi: MultiplicativeCharacter, field: PrimeField) -> TraceTable:
    """x -> e(f1(x)/p) * chi(f2(x)) on the domain U, 0 outside.

    U excludes poles of f1 and f2 and zeros of f2.  Swan conductors sit
    at the poles of f1 with the pole order as the declared value; every
    other point of the complement of U (and the point at infinity) is
    tame.  f1 and f2 may be RationalFunction or (num, den) coefficient
    pairs.
    """
    p = field.p
    f1 = _as_rational(f1, field)
    f2 = _as_rational(f2, field)
    if f2.is_zero:
        raise ValueError("f2 is identically zero")

    f1_vals, f1_def = f1.eval_all()
    f2_vals, f2_def = f2.eval_all()
    domain = f1_def & f2_def & (f2_vals != 0)

    chi_vals = chi.values()
    values = np.where(domain, field.char_table[f1_vals] * chi_vals[f2_vals], 0j)

    poles = f1.poles()
    swan: dict[int | str, int] = {
        int(x): poles.get(int(x), 0) for x in np.nonzero(~domain)[0]
    }
    swan[INFINITY] = f1.pole_order_at_infinity()

    def fmt(r: RationalFunction) -> str:
        num = ",".join(str(c) for c in r.num) or "0"
        den = ",".join(str(c) for c in r.den)
        return num if r.den == (1,) else f"({num})/({den})"

    desc = FamilyDescriptor(
        family="mixed_ask",
        label=f"mixed_ask(f1={fmt(f1)};f2={fmt(f2)};chi={chi.index})",
        rank=1,
        swan=swan,
    )
    return TraceTable(field, values, desc)


def fourier_trace(table: TraceTable) -> TraceTable:
    """t -> -(1/sqrt(p)) sum_x v(x) e(tx/p); metadata untracked.

    Applying the transform twice returns the reflection x -> v(-x)
    exactly (the 1/sqrt(p) normalization makes it an involution up to
    reflection).
    """
    field = table.field
    out = -field.idft(table.values) / np.sqrt(field.p)
    desc = FamilyDescriptor(
        family="fourier_of",
        label=f"fourier_of({table.descriptor.label})",
        rank=0,
        swan={},
    )
    return TraceTable(field, out, desc)


def exceptional_set(points, p: int) -> set[int]:
    """Nonzero pairwise differences of a singular set S.

    These are the shifts h for which S meets S - h, i.e. where the
    difference construction degrades; |E| <= |S| (|S| - 1).
    """
    pts = [int(s) % p for s in points]
    return {(a - b) % p for a in pts for b in pts if (a - b) % p != 0}


def conductor_bound_xi(c: int) -> int:
    """Conductor bound 5*c^2 for the multiplicative difference of a sheaf."""
    if c < 1:
        raise ValueError("conductor must be >= 1")
    return 5 * c * c
