"""Three independent engines for the Gowers uniformity pnorm U_d.

``U_d(phi)`` denotes the 2^d-th power of the d-th Gowers norm of
phi : F_p -> C (the "pnorm"), so all engines return

    U_d(phi) = (1/p^(d+1)) * sum over x, h_1, ..., h_d of
               prod over omega in {0,1}^d of C^|omega| phi(x + omega.h),

where C is complex conjugation.  The three routes are:

* ``gowers_oracle``      -- the unrolled cube sum above, the ground
  truth; cost p^(d+1), refused beyond a work cap.
* ``gowers_recursive``   -- the inductive definition
  U_{d+1} = (1/p) sum_h U_d(xi_h(phi)) down to the U_1 base, where
  xi_h(phi)(x) = phi(x+h) * conj(phi(x)); cost O(p^d * p).
* ``gowers_accelerated`` -- the same recursion with the d = 2 base
  replaced by the Fourier identity U_2 = sum_t |phi_hat(t)|^4;
  cost O(p^(d-2) * p log p) with batched prime-length DFTs.

Values are real up to rounding; engines check the imaginary part where
one exists and clamp tiny negative results to zero.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import numpy as np

from .field import PrimeField, prime_field
from .traces import TraceTable

__all__ = [
    "WorkCapExceeded",
    "DEFAULT_WORK_CAP",
    "xi",
    "u1",
    "gowers_oracle",
    "gowers_recursive",
    "u2_accelerated",
    "gowers_accelerated",
    "gowers_norm",
    "NormRequest",
    "NormResult",
    "evaluate",
]

DEFAULT_WORK_CAP = 10**9

# Imag/negativity tolerance; relaxed once accumulations grow past ~1e6 terms.
_TOL_TIGHT = 1e-9
_TOL_RELAXED = 1e-8


class WorkCapExceeded(RuntimeError):
    """A requested computation exceeds the configured work cap."""


def _tolerance(p: int, d: int) -> float:
    return _TOL_TIGHT if p ** (d + 1) <= 10**6 or (p <= 1009 and d <= 3) else _TOL_RELAXED


def _finalize(value: float, tol: float) -> float:
    if value < 0:
        if value < -_TOL_TIGHT:
            raise ArithmeticError(f"engine produced negative pnorm {value}")
        return 0.0
    return float(value)


def xi(values: np.ndarray, h: int) -> np.ndarray:
    """Multiplicative difference: x -> phi(x+h) * conj(phi(x))."""
    return np.roll(values, -h) * np.conj(values)


def u1(values: np.ndarray) -> float:
    """U_1(phi) = |mean(phi)|^2 (the squared average; a seminorm)."""
    m = np.mean(values)
    return float(m.real * m.real + m.imag * m.imag)


def gowers_oracle(values: np.ndarray, d: int, work_cap: int = DEFAULT_WORK_CAP) -> float:
    """Ground-truth U_d by the unrolled cube sum over (x, h_1, ..., h_d)."""
    values = np.asarray(values, dtype=np.complex128)
    p = len(values)
    if d < 1:
        raise ValueError("d must be >= 1")
    terms = p ** (d + 1)
    if terms > work_cap:
        raise WorkCapExceeded(
            f"oracle requires p^(d+1) = {terms} elementary terms, "
            f"over the work cap {work_cap}"
        )
    if p <= 2048:
        idx = (np.arange(p)[:, None] + np.arange(p)[None, :]) % p
        shifted = values[idx]  # shifted[s, x] = phi((x + s) mod p)
    else:
        shifted = None
    x = np.arange(p, dtype=np.int64)
    corners = list(itertools.product((0, 1), repeat=d))
    powers = p ** np.arange(d, dtype=np.int64)
    total = 0.0 + 0.0j
    block = max(1, (1 << 22) // p)
    n_tuples = p**d
    for start in range(0, n_tuples, block):
        ks = np.arange(start, min(start + block, n_tuples), dtype=np.int64)
        h = (ks[:, None] // powers[None, :]) % p  # base-p digits: the h-tuples
        prod = np.ones((len(h), p), dtype=np.complex128)
        for omega in corners:
            shift = (h @ np.asarray(omega, dtype=np.int64)) % p
            if shifted is not None:
                rows = shifted[shift]
            else:
                rows = values[(shift[:, None] + x[None, :]) % p]
            prod *= np.conj(rows) if sum(omega) % 2 else rows
        total += prod.sum()
    total /= p ** (d + 1)
    tol = _tolerance(p, d)
    if abs(total.imag) > tol:
        raise ArithmeticError(f"cube sum has imaginary part {total.imag}")
    return _finalize(total.real, tol)


def _u1_rows(matrix: np.ndarray) -> np.ndarray:
    m = matrix.mean(axis=1)
    return m.real * m.real + m.imag * m.imag


def gowers_recursive(values: np.ndarray, d: int) -> float:
    """U_d by the inductive definition, recursing on d down to U_1."""
    values = np.asarray(values, dtype=np.complex128)
    p = len(values)
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        return _finalize(u1(values), _tolerance(p, d))
    if d == 2:
        # (1/p) sum_h U_1(xi_h(phi)), all h at once in row-chunks.
        acc = np.empty(p)
        chunk = max(1, (1 << 21) // p)
        x = np.arange(p, dtype=np.int64)
        for start in range(0, p, chunk):
            h = np.arange(start, min(start + chunk, p), dtype=np.int64)
            rows = values[(h[:, None] + x[None, :]) % p] * np.conj(values)[None, :]
            acc[start : start + len(h)] = _u1_rows(rows)
        return _finalize(float(acc.mean()), _tolerance(p, d))
    per_h = np.empty(p)
    for h in range(p):
        per_h[h] = gowers_recursive(xi(values, h), d - 1)
    return _finalize(float(per_h.mean()), _tolerance(p, d))


def u2_accelerated(values: np.ndarray, field: PrimeField | None = None) -> float:
    """U_2 = sum_t |phi_hat(t)|^4 with phi_hat(t) = (1/p) sum phi(x) e(-xt/p)."""
    values = np.asarray(values, dtype=np.complex128)
    field = field or prime_field(len(values))
    hat = field.dft(values)
    power = hat.real * hat.real + hat.imag * hat.imag
    return _finalize(float((power * power).sum()), _tolerance(field.p, 2))


def gowers_accelerated(
    values: np.ndarray,
    d: int,
    field: PrimeField | None = None,
    work_cap: int = DEFAULT_WORK_CAP,
    allow_deep: bool = False,
) -> float:
    """U_d by the recursion with the Fourier-accelerated d = 2 base.

    Refuses d > 4 at p > 256 unless ``allow_deep``, and any request whose
    estimated cost p^(d-1) log2(p) exceeds ``work_cap``.
    """
    values = np.asarray(values, dtype=np.complex128)
    p = len(values)
    if d < 2:
        raise ValueError("accelerated engine requires d >= 2 (use u1 for d = 1)")
    field = field or prime_field(p)
    if d > 4 and p > 256 and not allow_deep:
        raise WorkCapExceeded(
            f"accelerated engine refuses d = {d} at p = {p} > 256 "
            "(pass allow_deep=True to override)"
        )
    est = p ** (d - 1) * max(1.0, np.log2(p))
    if est > work_cap:
        raise WorkCapExceeded(
            f"estimated cost p^(d-1) log2 p = {est:.3g} exceeds work cap {work_cap}"
        )
    if d == 2:
        return u2_accelerated(values, field)
    if d == 3:
        # Batch all p multiplicative differences through one chunked DFT.
        acc = np.empty(p)
        chunk = max(1, (1 << 21) // p)
        x = np.arange(p, dtype=np.int64)
        for start in range(0, p, chunk):
            h = np.arange(start, min(start + chunk, p), dtype=np.int64)
            rows = values[(h[:, None] + x[None, :]) % p] * np.conj(values)[None, :]
            hat = field.dft(rows)
            power = hat.real * hat.real + hat.imag * hat.imag
            acc[start : start + len(h)] = (power * power).sum(axis=1)
        return _finalize(float(acc.mean()), _tolerance(p, d))
    per_h = np.empty(p)
    for h in range(p):
        per_h[h] = gowers_accelerated(xi(values, h), d - 1, field, work_cap, allow_deep)
    return _finalize(float(per_h.mean()), _tolerance(p, d))


def gowers_norm(values: np.ndarray, d: int, field: PrimeField | None = None) -> float:
    """The norm itself, U_d^(1/2^d), via the best engine for (p, d)."""
    values = np.asarray(values, dtype=np.complex128)
    if d == 1:
        pnorm = u1(values)
    else:
        pnorm = gowers_accelerated(values, d, field)
    return float(pnorm ** (1.0 / 2**d))


# -- request/result contract -------------------------------------------------

ENGINES = ("oracle", "recursive", "accelerated")


@dataclass(frozen=True)
class NormRequest:
    """One norm computation: a table (or raw values) and the engine choice."""

    values: np.ndarray
    d: int
    engine: str = "accelerated"
    work_cap: int = DEFAULT_WORK_CAP
    table: TraceTable | None = None

    @classmethod
    def from_table(cls, table: TraceTable, d: int, engine: str = "accelerated",
                   work_cap: int = DEFAULT_WORK_CAP) -> "NormRequest":
        return cls(values=table.values, d=d, engine=engine, work_cap=work_cap, table=table)


@dataclass(frozen=True)
class NormResult:
    """U_d plus derived quantities and timing for one engine run."""

    p: int
    d: int
    engine: str
    u_d: float
    norm: float
    u_d_times_p: float
    elapsed: float


def evaluate(request: NormRequest) -> NormResult:
    """Run the requested engine and package the result.

    When the request carries a family table with tracked rank, the
    trivial bound U_d <= rank^(2^d) is asserted on the way out.
    """
    values = np.asarray(request.values, dtype=np.complex128)
    p = len(values)
    d = request.d
    if d < 1:
        raise ValueError("d must be >= 1")
    start = time.perf_counter()
    if request.engine == "oracle":
        u_d = gowers_oracle(values, d, request.work_cap)
    elif request.engine == "recursive":
        u_d = gowers_recursive(values, d)
    elif request.engine == "accelerated":
        u_d = u1(values) if d == 1 else gowers_accelerated(values, d, work_cap=request.work_cap)
    else:
        raise ValueError(f"unknown engine {request.engine!r}; choose from {ENGINES}")
    elapsed = time.perf_counter() - start
    if request.table is not None and request.table.descriptor.rank >= 1:
        ceiling = request.table.descriptor.rank ** (2**d) + 1e-6
        if u_d > ceiling:
            raise ArithmeticError(
                f"trivial bound violated: U_{d} = {u_d} > rank^(2^d) = {ceiling}"
            )
    return NormResult(
        p=p,
        d=d,
        engine=request.engine,
        u_d=u_d,
        norm=float(u_d ** (1.0 / 2**d)),
        u_d_times_p=u_d * p,
        elapsed=elapsed,
    )
