"""Exact arithmetic in Z[w][1/2], w = exp(i pi/4).

A value is ``(c0 + c1 w + c2 w^2 + c3 w^3) / 2^k`` with integer ``c``.
Since ``sqrt(2) = w - w^3`` lives in the ring, every amplitude that shows up
for T-type gates (powers of w, powers of 1/sqrt(2)) is represented exactly,
and equality is a comparison of canonical integer tuples.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

OMEGA = cmath.exp(1j * cmath.pi / 4)
_BASIS = np.array([1, OMEGA, 1j, 1j * OMEGA])


def _mul4(x, y):
    """Negacyclic convolution of coefficient 4-tuples (w^4 = -1)."""
    out = [0, 0, 0, 0]
    for i in range(4):
        if not x[i]:
            continue
        for j in range(4):
            t = x[i] * y[j]
            if i + j < 4:
                out[i + j] += t
            else:
                out[i + j - 4] -= t
    return out


@dataclass(frozen=True)
class ZOmega:
    coeffs: tuple[int, int, int, int] = (0, 0, 0, 0)
    k: int = 0

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        k = self.k
        if not any(c):
            k = 0
        while k > 0 and all(x % 2 == 0 for x in c):
            c = [x // 2 for x in c]
            k -= 1
        while k < 0:
            c = [2 * x for x in c]
            k += 1
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "k", k)

    @classmethod
    def integer(cls, value: int) -> ZOmega:
        return cls((value, 0, 0, 0))

    @classmethod
    def omega(cls, power: int) -> ZOmega:
        p = power % 8
        c = [0, 0, 0, 0]
        c[p % 4] = 1 if p < 4 else -1
        return cls(tuple(c))

    @classmethod
    def sqrt2_power(cls, power: int) -> ZOmega:
        """``sqrt(2)^power`` for any integer power."""
        half, odd = divmod(power, 2)
        base = cls((0, 1, 0, -1)) if odd else cls.integer(1)
        # sqrt2^(2h+1) = 2^h * sqrt2
        if half >= 0:
            return ZOmega(tuple(x * (1 << half) for x in base.coeffs))
        return ZOmega(base.coeffs, -half)

    def __add__(self, other):
        other = _coerce(other)
        k = max(self.k, other.k)
        a = [x << (k - self.k) for x in self.coeffs]
        b = [x << (k - other.k) for x in other.coeffs]
        return ZOmega(tuple(x + y for x, y in zip(a, b)), k)

    __radd__ = __add__

    def __neg__(self):
        return ZOmega(tuple(-x for x in self.coeffs), self.k)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return ZOmega(tuple(_mul4(self.coeffs, other.coeffs)), self.k + other.k)

    __rmul__ = __mul__

    def conj(self) -> ZOmega:
        # conj(w^j) = w^{-j} = -w^{4-j}
        c0, c1, c2, c3 = self.coeffs
        return ZOmega((c0, -c3, -c2, -c1), self.k)

    def abs2(self) -> ZOmega:
        return self * self.conj()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __complex__(self) -> complex:
        return complex(np.dot(self.coeffs, _BASIS)) / (2 ** self.k)

    def omega_exponent(self) -> int | None:
        """``e`` when the value equals ``w^e`` exactly, else None."""
        for e in range(8):
            if self == ZOmega.omega(e):
                return e
        return None

    def __repr__(self) -> str:
        return f"ZOmega({self.coeffs}, k={self.k})"


def _coerce(x) -> ZOmega:
    if isinstance(x, ZOmega):
        return x
    if isinstance(x, (int, np.integer)):
        return ZOmega.integer(int(x))
    raise TypeError(f"cannot use {type(x).__name__} in exact arithmetic")


class ZOmegaArray:
    """Array over Z[w][1/2]: ``int64`` coefficients of shape ``(4, *shape)`` over ``2^k``."""

    def __init__(self, coeffs, k: int = 0):
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if coeffs.shape[0] != 4:
            raise ValueError("leading axis must hold the four coefficients")
        self.coeffs = coeffs
        self.k = int(k)
        self._normalize()

    def _normalize(self):
        while self.k > 0 and not np.any(self.coeffs & 1):
            self.coeffs = self.coeffs >> 1
            self.k -= 1
        if not np.any(self.coeffs):
            self.k = 0

    @property
    def shape(self):
        return self.coeffs.shape[1:]

    @classmethod
    def zeros(cls, shape) -> ZOmegaArray:
        return cls(np.zeros((4, *np.atleast_1d(shape)), dtype=np.int64))

    @classmethod
    def from_omega_powers(cls, powers, mask=None) -> ZOmegaArray:
        """Entries ``w^powers`` (and zero where ``mask`` is False)."""
        p = np.asarray(powers, dtype=np.int64) % 8
        c = np.zeros((4, *p.shape), dtype=np.int64)
        sign = np.where(p < 4, 1, -1)
        if mask is not None:
            sign = sign * np.asarray(mask, dtype=np.int64)
        for j in range(4):
            c[j] = np.where(p % 4 == j, sign, 0)
        return cls(c)

    @classmethod
    def from_scalar(cls, z: ZOmega, shape=()) -> ZOmegaArray:
        c = np.zeros((4, *shape), dtype=np.int64)
        for j in range(4):
            c[j] = z.coeffs[j]
        return cls(c, z.k)

    def _aligned(self, other: ZOmegaArray):
        k = max(self.k, other.k)
        return self.coeffs << (k - self.k), other.coeffs << (k - other.k), k

    def __add__(self, other: ZOmegaArray) -> ZOmegaArray:
        a, b, k = self._aligned(other)
        return ZOmegaArray(a + b, k)

    def __sub__(self, other: ZOmegaArray) -> ZOmegaArray:
        a, b, k = self._aligned(other)
        return ZOmegaArray(a - b, k)

    def __neg__(self) -> ZOmegaArray:
        return ZOmegaArray(-self.coeffs, self.k)

    def scale(self, z: ZOmega) -> ZOmegaArray:
        out = np.zeros_like(self.coeffs)
        for i in range(4):
            for j in range(4):
                t = z.coeffs[j] * self.coeffs[i]
                if i + j < 4:
                    out[i + j] += t
                else:
                    out[i + j - 4] -= t
        return ZOmegaArray(out, self.k + z.k)

    def _combine(self, other: ZOmegaArray, op) -> ZOmegaArray:
        out = None
        for i in range(4):
            for j in range(4):
                t = op(self.coeffs[i], other.coeffs[j])
                if out is None:
                    out = np.zeros((4, *t.shape), dtype=np.int64)
                if i + j < 4:
                    out[i + j] += t
                else:
                    out[i + j - 4] -= t
        return ZOmegaArray(out, self.k + other.k)

    def __mul__(self, other: ZOmegaArray) -> ZOmegaArray:
        return self._combine(other, np.multiply)

    def __matmul__(self, other: ZOmegaArray) -> ZOmegaArray:
        return self._combine(other, np.matmul)

    def rotate(self, powers) -> ZOmegaArray:
        """Elementwise multiplication by ``w^powers``."""
        p = np.asarray(powers, dtype=np.int64) % 8
        out = np.zeros_like(self.coeffs)
        for j in range(4):
            for s in range(8):
                sel = p == s
                if not np.any(sel):
                    continue
                dst = (j + s) % 8
                val = self.coeffs[j] if dst < 4 else -self.coeffs[j]
                out[dst % 4] = np.where(sel, val, out[dst % 4])
        return ZOmegaArray(out, self.k)

    def conj(self) -> ZOmegaArray:
        c = self.coeffs
        return ZOmegaArray(np.stack([c[0], -c[3], -c[2], -c[1]]), self.k)

    @property
    def T(self) -> ZOmegaArray:
        return ZOmegaArray(np.swapaxes(self.coeffs, -1, -2), self.k)

    def dagger(self) -> ZOmegaArray:
        return self.conj().T

    def kron(self, other: ZOmegaArray) -> ZOmegaArray:
        return self._combine(other, np.kron)

    def trace(self) -> ZOmega:
        t = np.trace(self.coeffs, axis1=-2, axis2=-1)
        return ZOmega(tuple(int(x) for x in t), self.k)

    def __getitem__(self, idx) -> ZOmega | ZOmegaArray:
        if not isinstance(idx, tuple):
            idx = (idx,)
        sub = self.coeffs[(slice(None), *idx)]
        if sub.ndim == 1:
            return ZOmega(tuple(int(x) for x in sub), self.k)
        return ZOmegaArray(sub, self.k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZOmegaArray):
            return NotImplemented
        return (self.k == other.k and self.coeffs.shape == other.coeffs.shape
                and bool(np.array_equal(self.coeffs, other.coeffs)))

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def to_complex(self) -> np.ndarray:
        c = self.coeffs.astype(np.complex128)
        return np.tensordot(_BASIS, c, axes=(0, 0)) / (2.0 ** self.k)

    def __repr__(self) -> str:
        return f"ZOmegaArray(shape={self.shape}, k={self.k})"
