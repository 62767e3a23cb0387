"""Exact arithmetic in F_p and the numeric primitives built on it.

A :class:`PrimeField` owns the per-prime precomputed data that the rest of
the library consumes: the table of additive character values e(a/p), the
quadratic-residue table, optional inverse/discrete-log tables for small p,
and the chirp kernel of the prime-length discrete Fourier transform.  All
of it is immutable after construction, so instances are safe to share
across threads; every function in this module is pure.

The DFT convention used throughout is

    dft(v)[t] = (1/p) * sum_x v[x] * e(-x*t/p),

so a pure phase e(c*x/p) transforms to the indicator of t = c.  Prime
lengths are handled by Bluestein's chirp embedding into a power-of-two
transform (see :meth:`PrimeField.dft`); a direct O(p^2) reference
transform is kept for testing.
"""

from __future__ import annotations

import functools

import numpy as np

__all__ = [
    "is_prime",
    "PrimeField",
    "prime_field",
    "mod_inverse",
    "legendre_symbol",
    "additive_character",
    "dft",
    "dft_direct",
    "idft",
]

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3 * 10^24
# (covers every 64-bit input).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Largest modulus for which int64 intermediate products x*y stay exact.
_MAX_P = 1 << 31

# Default ceiling on p for the optional inverse / discrete-log tables.
_DEFAULT_TABLE_CAP = 1 << 20


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for 64-bit integers."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factor(n: int) -> list[int]:
    """Distinct prime factors by trial division (desk-scale n only)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


class PrimeField:
    """The field F_p = Z/pZ for an odd prime p, with precomputed tables.

    The additive character table is built once per field so that every
    module reads bit-identical floats for e(a/p).  It is constructed to be
    exactly conjugate-symmetric: char_table[p - a] == conj(char_table[a]).

    Parameters
    ----------
    p : odd prime modulus (3 <= p < 2^31).
    table_cap : build inverse and discrete-log tables only when p <= cap.
    """

    def __init__(self, p: int, table_cap: int = _DEFAULT_TABLE_CAP):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if p == 2:
            raise ValueError("p = 2 is not supported; p must be odd")
        if p >= _MAX_P:
            raise ValueError(f"p = {p} exceeds the supported range (< 2^31)")
        self.p = int(p)
        self.table_cap = int(table_cap)

        half = p // 2
        table = np.empty(p, dtype=np.complex128)
        table[: half + 1] = np.exp(2j * np.pi * np.arange(half + 1) / p)
        table[half + 1 :] = np.conj(table[1 : half + 1][::-1])
        table.setflags(write=False)
        #: e(a/p) for 0 <= a < p; single source of character values.
        self.char_table = table

        if p <= table_cap:
            inv = np.zeros(p, dtype=np.int64)
            inv[1] = 1
            for i in range(2, p):
                inv[i] = (-(p // i) * inv[p % i]) % p
            inv.setflags(write=False)
            self.inverse_table: np.ndarray | None = inv
        else:
            self.inverse_table = None

    # -- basic arithmetic ------------------------------------------------

    def inverse(self, a: int) -> int:
        """Multiplicative inverse of a mod p; a must be nonzero mod p."""
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.inverse_table is not None:
            return int(self.inverse_table[a])
        return pow(a, self.p - 2, self.p)

    @functools.cached_property
    def primitive_root(self) -> int:
        """Smallest generator g of the cyclic group F_p^x."""
        p = self.p
        factors = _factor(p - 1)
        for g in range(2, p):
            if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
                return g
        raise AssertionError("no primitive root found")  # unreachable for prime p

    @functools.cached_property
    def dlog_table(self) -> np.ndarray:
        """dlog[g^k] = k for the primitive root g; dlog[0] = -1."""
        if self.p > self.table_cap:
            raise ValueError(f"discrete logs not tabulated for p > {self.table_cap}")
        g = self.primitive_root
        dlog = np.full(self.p, -1, dtype=np.int64)
        x = 1
        for k in range(self.p - 1):
            dlog[x] = k
            x = x * g % self.p
        dlog.setflags(write=False)
        return dlog

    @functools.cached_property
    def legendre_table(self) -> np.ndarray:
        """(a/p) for 0 <= a < p, built by enumerating the squares mod p."""
        t = np.full(self.p, -1, dtype=np.int64)
        t[0] = 0
        sq = np.arange(1, self.p, dtype=np.int64)
        t[(sq * sq) % self.p] = 1
        t.setflags(write=False)
        return t

    @functools.cached_property
    def inverse_values(self) -> np.ndarray:
        """x^-1 for all x (0 mapped to 0), for bulk table generation."""
        if self.inverse_table is not None:
            return self.inverse_table
        inv = np.zeros(self.p, dtype=np.int64)
        inv[1] = 1
        for i in range(2, self.p):
            inv[i] = (-(self.p // i) * inv[self.p % i]) % self.p
        inv.setflags(write=False)
        return inv

    @functools.cached_property
    def shift_index(self) -> np.ndarray:
        """(h, x) -> (x + h) mod p index matrix, cached for small p."""
        if self.p > 4096:
            raise ValueError("shift index matrix restricted to p <= 4096")
        idx = (np.arange(self.p)[:, None] + np.arange(self.p)[None, :]) % self.p
        idx.setflags(write=False)
        return idx

    # -- Bluestein DFT ---------------------------------------------------

    @functools.cached_property
    def _bluestein_plan(self) -> tuple[int, np.ndarray, np.ndarray]:
        """Chirp and padded-kernel FFT for the prime-length transform.

        Bluestein's identity x*t = (x^2 + t^2 - (t-x)^2) / 2 rewrites the
        length-p DFT as one linear convolution with the chirp
        w[n] = exp(-i*pi*n^2/p), which is evaluated by power-of-two FFTs
        of size M >= 2p - 1.  Angles are reduced with n^2 taken mod 2p so
        the chirp loses no precision at large n.
        """
        p = self.p
        m = 1 << (2 * p - 1).bit_length()
        n = np.arange(p, dtype=np.int64)
        w = np.exp(-1j * np.pi * ((n * n) % (2 * p)) / p)
        kernel = np.zeros(m, dtype=np.complex128)
        kernel[:p] = np.conj(w)
        kernel[m - p + 1 :] = np.conj(w[1:])[::-1]
        kernel_fft = np.fft.fft(kernel)
        w.setflags(write=False)
        kernel_fft.setflags(write=False)
        return m, w, kernel_fft

    def dft(self, v: np.ndarray) -> np.ndarray:
        """Normalized DFT along the last axis: (1/p) sum_x v[x] e(-xt/p).

        O(p log p) for any p via the chirp embedding; accepts batched
        input of shape (..., p).
        """
        v = np.asarray(v, dtype=np.complex128)
        if v.shape[-1] != self.p:
            raise ValueError(f"vector length {v.shape[-1]} != p = {self.p}")
        m, w, kernel_fft = self._bluestein_plan
        a = np.fft.fft(v * w, n=m, axis=-1)
        c = np.fft.ifft(a * kernel_fft, axis=-1)
        return c[..., : self.p] * w / self.p

    def idft(self, v: np.ndarray) -> np.ndarray:
        """Inverse of :meth:`dft`: sum_t v[t] e(+xt/p) (normalization p)."""
        return self.p * np.conj(self.dft(np.conj(v)))

    def dft_direct(self, v: np.ndarray) -> np.ndarray:
        """O(p^2) reference DFT from the character table (testing only)."""
        v = np.asarray(v, dtype=np.complex128)
        if v.shape[-1] != self.p:
            raise ValueError(f"vector length {v.shape[-1]} != p = {self.p}")
        t = np.arange(self.p, dtype=np.int64)
        kernel = np.conj(self.char_table[np.outer(t, t) % self.p])
        return v @ kernel.T / self.p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


@functools.lru_cache(maxsize=64)
def prime_field(p: int) -> PrimeField:
    """Shared, cached PrimeField instance for p (fields are immutable)."""
    return PrimeField(p)


# -- module-level operation forms ----------------------------------------


def mod_inverse(a: int, field: PrimeField) -> int:
    """Return b with a*b = 1 (mod p); raises on a = 0 mod p."""
    return field.inverse(a)


def legendre_symbol(a: int, field: PrimeField) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1} by quadratic-reciprocity iteration.

    O(log p) Jacobi-style ladder; the Euler criterion a^((p-1)/2) is kept
    out of the hot path and used as the test oracle.
    """
    a %= field.p
    n = field.p
    if a == 0:
        return 0
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result


def additive_character(a: int, field: PrimeField) -> complex:
    """e(a/p) read from the per-field table (bit-identical across calls)."""
    return complex(field.char_table[a % field.p])


def dft(v: np.ndarray, field: PrimeField) -> np.ndarray:
    """Normalized prime-length DFT (see :meth:`PrimeField.dft`)."""
    return field.dft(v)


def dft_direct(v: np.ndarray, field: PrimeField) -> np.ndarray:
    """Direct O(p^2) reference transform."""
    return field.dft_direct(v)


def idft(v: np.ndarray, field: PrimeField) -> np.ndarray:
    """Conjugate transform with normalization p; inverts :func:`dft`."""
    return field.idft(v)
