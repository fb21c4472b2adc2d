"""Laurent polynomials in Z^-1 and square polynomial matrices.

A polynomial is stored densely: ``coeffs[i]`` is the coefficient of
``Z**-(offset + i)``, so ``offset`` may be negative for anticausal terms.
Leading and trailing zero taps are always trimmed, which makes ``==``
structural.  A :class:`PolyMatrix` keeps all ``M x M`` entries on one shared
tap grid with array shape ``(M, M, L, d)``.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import KindMismatch, NonConstantDiagonal, SizeMismatch
from .rings import DEFAULT_TOL, INT64_SAFE, Ring, Scalar, maxabs, promote

__all__ = [
    "ZPoly",
    "PolyMatrix",
    "poly_mul",
    "matrix_mul",
    "tilde",
    "delay_matrix",
    "regular_delays",
    "is_paraunitary",
    "coords_of",
]

# direct tap loop when the sparser operand has at most this many nonzero taps
_DIRECT_TAPS = 48


def coords_of(values: Sequence[Scalar], ring: Ring | None = None) -> tuple[Ring, np.ndarray]:
    """Stack scalars into a coordinate array of shape ``(len(values), d)``."""
    if ring is None:
        if not values:
            raise ValueError("cannot infer the ring of an empty sequence")
        ring = values[0].ring
    for v in values:
        if not isinstance(v, Scalar):
            raise TypeError(f"expected Scalar, got {type(v).__name__}")
        if v.ring != ring:
            raise KindMismatch(f"{v.ring.name} value in a {ring.name} sequence")
    if not values:
        return ring, ring.zeros(0)
    rows = [v.coords for v in values]
    if ring.exact and any(abs(c) >= INT64_SAFE for r in rows for c in r):
        return ring, np.array(rows, dtype=object)
    return ring, np.array(rows, dtype=ring.dtype)


def _trim(coeffs: np.ndarray, offset: int, tap_axis: int) -> tuple[np.ndarray, int]:
    other = tuple(i for i in range(coeffs.ndim) if i != tap_axis)
    live = np.flatnonzero(np.any(coeffs != 0, axis=other))
    if live.size == 0:
        shape = list(coeffs.shape)
        shape[tap_axis] = 0
        return np.zeros(shape, dtype=coeffs.dtype), 0
    lo, hi = int(live[0]), int(live[-1]) + 1
    if lo == 0 and hi == coeffs.shape[tap_axis]:
        return coeffs, offset
    index = [slice(None)] * coeffs.ndim
    index[tap_axis] = slice(lo, hi)
    return coeffs[tuple(index)], offset + lo


def _live_taps(X: np.ndarray) -> np.ndarray:
    return np.flatnonzero(np.any(X != 0, axis=(0, 1, 3)))


def _l2_max(X: np.ndarray) -> float:
    return float(np.sqrt((np.abs(X.astype(np.float64)) ** 2).sum(axis=2)).max())


def _conv_mat(A: np.ndarray, B: np.ndarray, ring: Ring) -> np.ndarray:
    """Product of polynomial matrices given as coordinate arrays.

    ``A`` has shape ``(M, N, La, d)``, ``B`` shape ``(N, P, Lb, d)``; the result
    has shape ``(M, P, La + Lb - 1, d)`` and tap ``t`` at exponent
    ``offset_a + offset_b + t``.
    """
    M, N, La, d = A.shape
    P, Lb = B.shape[1], B.shape[2]
    if La == 0 or Lb == 0:
        return ring.zeros((M, P, 0))
    taps_a, taps_b = _live_taps(A), _live_taps(B)
    nnz = min(len(taps_a), len(taps_b))
    table = ring.table
    if ring.exact:
        bound = maxabs(A) * maxabs(B) * N * max(nnz, 1) * ring.table_weight
        A, B = promote(A, B, bound)
    if nnz > _DIRECT_TAPS:
        out = _conv_fft(A, B, ring)
        if out is not None:
            return out
    dtype = A.dtype if A.dtype == object or B.dtype == object else np.result_type(A, B)
    out = np.zeros((M, P, La + Lb - 1, d), dtype=dtype)
    table = table.astype(dtype)
    if len(taps_b) <= len(taps_a):
        for t in taps_b:
            # (N, P, d) x table -> (N, P, p, r); contract with A over j and p
            bt = np.einsum("jlq,pqr->jlpr", B[:, :, t], table)
            out[:, :, t:t + La] += np.tensordot(A, bt, axes=([1, 3], [0, 2])).transpose(0, 2, 1, 3)
    else:
        for t in taps_a:
            at = np.einsum("ijp,pqr->ijqr", A[:, :, t], table)
            # contract at (i, j, q, r) with B (j, l, n, q)
            out[:, :, t:t + Lb] += np.einsum("ijqr,jlnq->ilnr", at, B)
    return out


def _conv_fft(A: np.ndarray, B: np.ndarray, ring: Ring) -> np.ndarray | None:
    """FFT route; for integer rings only when rounding is provably safe."""
    if A.dtype == object or B.dtype == object:
        return None
    M, N, La, d = A.shape
    P, Lb = B.shape[1], B.shape[2]
    L = La + Lb - 1
    F = 1 << max(1, math.ceil(math.log2(L)))
    if ring.exact:
        scale = N * d * d * ring.table_weight * _l2_max(A) * _l2_max(B)
        err = scale * 20.0 * math.log2(F) * 2.0 ** -53
        if err >= 0.2 or scale >= 2.0 ** 51:
            return None
    FA = np.fft.fft(A, F, axis=2)  # (M, N, F, d)
    FB = np.fft.fft(B, F, axis=2)  # (N, P, F, d)
    FBt = np.einsum("jlfq,pqr->fjplr", FB, ring.table.astype(np.complex128))
    FA2 = FA.transpose(2, 0, 1, 3).reshape(F, M, N * d)
    prod = np.matmul(FA2, FBt.reshape(F, N * d, P * d)).reshape(F, M, P, d)
    res = np.fft.ifft(prod, axis=0)[:L].transpose(1, 2, 0, 3)
    if not ring.exact:
        return np.ascontiguousarray(res)
    return np.rint(res.real).astype(np.int64)


# --------------------------------------------------------------------------

class ZPoly:
    """Laurent polynomial ``sum_k c(k) Z**-k`` with coefficients in one ring."""

    __slots__ = ("ring", "coeffs", "offset")

    def __init__(self, ring: Ring, coeffs, offset: int = 0):
        coeffs = ring.asarray(coeffs)
        if coeffs.ndim != 2:
            raise ValueError("ZPoly coefficients must have shape (L, d)")
        self.ring = ring
        self.coeffs, self.offset = _trim(coeffs, int(offset), 0)

    @classmethod
    def from_scalars(cls, values: Sequence[Scalar], offset: int = 0,
                     ring: Ring | None = None) -> "ZPoly":
        ring, arr = coords_of(list(values), ring)
        return cls(ring, arr, offset)

    @classmethod
    def from_dict(cls, ring: Ring, terms: dict[int, Scalar]) -> "ZPoly":
        if not terms:
            return cls.zero(ring)
        lo, hi = min(terms), max(terms)
        arr = ring.zeros(hi - lo + 1).astype(object if ring.exact else ring.dtype)
        for k, v in terms.items():
            if v.ring != ring:
                raise KindMismatch(f"{v.ring.name} term in {ring.name} polynomial")
            arr[k - lo] = v.coords
        if ring.exact and maxabs(arr) < INT64_SAFE:
            arr = arr.astype(np.int64)
        return cls(ring, arr, lo)

    @classmethod
    def zero(cls, ring: Ring) -> "ZPoly":
        return cls(ring, ring.zeros(0))

    @classmethod
    def monomial(cls, value: Scalar, k: int = 0) -> "ZPoly":
        """``value * Z**-k``."""
        return cls.from_scalars([value], offset=k)

    # ---- structure -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    @property
    def min_exp(self) -> int | None:
        return None if self.is_zero() else self.offset

    @property
    def max_exp(self) -> int | None:
        return None if self.is_zero() else self.offset + self.coeffs.shape[0] - 1

    def __getitem__(self, k: int) -> Scalar:
        i = k - self.offset
        if self.is_zero() or not 0 <= i < self.coeffs.shape[0]:
            return self.ring.zero()
        return self._scalar(self.coeffs[i])

    def _scalar(self, row) -> Scalar:
        if self.ring.exact:
            return Scalar(self.ring, tuple(int(c) for c in row))
        return Scalar(self.ring, (complex(row[0]),))

    def items(self) -> Iterable[tuple[int, Scalar]]:
        """Nonzero terms as ``(exponent, coefficient)`` pairs, ascending."""
        for i in np.flatnonzero(self.ring.nonzero_mask(self.coeffs)):
            yield self.offset + int(i), self._scalar(self.coeffs[i])

    def to_sequence(self, length: int | None = None) -> list[Scalar]:
        """Inverse Z-transform ``x(0..length-1)``; requires a causal polynomial."""
        if self.min_exp is not None and self.min_exp < 0:
            from .errors import AnticausalInput
            raise AnticausalInput("polynomial has negative exponents")
        n = (self.max_exp + 1 if self.max_exp is not None else 0) if length is None else length
        return [self[k] for k in range(n)]

    def to_complex(self) -> tuple[int, np.ndarray]:
        return self.offset, self.ring.embed(self.coeffs)

    # ---- algebra -----------------------------------------------------------
    def _check(self, other: "ZPoly"):
        if not isinstance(other, ZPoly):
            raise TypeError(f"expected ZPoly, got {type(other).__name__}")
        if other.ring != self.ring:
            raise KindMismatch(f"{self.ring.name} vs {other.ring.name}")

    def __add__(self, other: "ZPoly") -> "ZPoly":
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.max_exp, other.max_exp)
        dtype = object if object in (self.coeffs.dtype, other.coeffs.dtype) else self.ring.dtype
        out = self.ring.zeros(hi - lo + 1).astype(dtype)
        out[self.offset - lo: self.offset - lo + self.coeffs.shape[0]] += self.coeffs
        out[other.offset - lo: other.offset - lo + other.coeffs.shape[0]] += other.coeffs
        return ZPoly(self.ring, out, lo)

    def __neg__(self) -> "ZPoly":
        return ZPoly(self.ring, -self.coeffs, self.offset)

    def __sub__(self, other: "ZPoly") -> "ZPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            other = ZPoly.monomial(other)
        self._check(other)
        out = _conv_mat(self.coeffs[None, None], other.coeffs[None, None], self.ring)
        return ZPoly(self.ring, out[0, 0], self.offset + other.offset)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZPoly):
            return NotImplemented
        return (self.ring == other.ring and self.offset == other.offset
                and self.coeffs.shape == other.coeffs.shape
                and bool(np.all(self.coeffs == other.coeffs)))

    __hash__ = None

    def shift(self, k: int) -> "ZPoly":
        """Multiply by ``Z**-k``."""
        return ZPoly(self.ring, self.coeffs, self.offset + k)

    def paraconj(self) -> "ZPoly":
        """``p*(Z)``: conjugate coefficients and negate exponents."""
        if self.is_zero():
            return self
        return ZPoly(self.ring, self.ring.conj(self.coeffs[::-1]), -self.max_exp)

    def __repr__(self) -> str:
        terms = " + ".join(f"({v!r})Z^{-k}" for k, v in self.items())
        return f"ZPoly[{self.ring.name}]({terms or '0'})"


def poly_mul(a: ZPoly, b: ZPoly) -> ZPoly:
    return a * b


# --------------------------------------------------------------------------

class PolyMatrix:
    """Square ``M x M`` matrix of Laurent polynomials over one ring."""

    __slots__ = ("ring", "coeffs", "offset")

    def __init__(self, ring: Ring, coeffs, offset: int = 0):
        coeffs = ring.asarray(coeffs)
        if coeffs.ndim != 4 or coeffs.shape[0] != coeffs.shape[1]:
            raise SizeMismatch(f"expected shape (M, M, L, d), got {coeffs.shape}")
        self.ring = ring
        self.coeffs, self.offset = _trim(coeffs, int(offset), 2)

    # ---- constructors ----------------------------------------------------
    @classmethod
    def identity(cls, ring: Ring, m: int) -> "PolyMatrix":
        c = ring.zeros((m, m, 1))
        for i in range(m):
            c[i, i, 0, 0] = 1
        return cls(ring, c)

    @classmethod
    def constant(cls, rows: Sequence[Sequence[Scalar]], ring: Ring | None = None) -> "PolyMatrix":
        m = len(rows)
        if any(len(r) != m for r in rows):
            raise SizeMismatch("constant matrix must be square")
        flat = [v for r in rows for v in r]
        ring, arr = coords_of(flat, ring)
        return cls(ring, arr.reshape(m, m, 1, ring.dim))

    @classmethod
    def from_entries(cls, grid: Sequence[Sequence[ZPoly]]) -> "PolyMatrix":
        m = len(grid)
        if m == 0 or any(len(r) != m for r in grid):
            raise SizeMismatch("entry grid must be square and non-empty")
        ring = grid[0][0].ring
        live = [p for r in grid for p in r if not p.is_zero()]
        for p in (q for r in grid for q in r):
            if p.ring != ring:
                raise KindMismatch("entries of different rings")
        if not live:
            return cls(ring, ring.zeros((m, m, 0)))
        lo = min(p.min_exp for p in live)
        hi = max(p.max_exp for p in live)
        dtype = object if any(p.coeffs.dtype == object for p in live) else ring.dtype
        c = ring.zeros((m, m, hi - lo + 1)).astype(dtype)
        for i, row in enumerate(grid):
            for j, p in enumerate(row):
                if not p.is_zero():
                    c[i, j, p.offset - lo: p.offset - lo + p.coeffs.shape[0]] = p.coeffs
        return cls(ring, c, lo)

    @classmethod
    def diagonal(cls, polys: Sequence[ZPoly]) -> "PolyMatrix":
        m = len(polys)
        ring = polys[0].ring
        zero = ZPoly.zero(ring)
        return cls.from_entries([[polys[i] if i == j else zero for j in range(m)]
                                 for i in range(m)])

    # ---- structure -------------------------------------------------------
    @property
    def size(self) -> int:
        return self.coeffs.shape[0]

    def is_zero(self) -> bool:
        return self.coeffs.shape[2] == 0

    @property
    def min_exp(self) -> int | None:
        return None if self.is_zero() else self.offset

    @property
    def max_exp(self) -> int | None:
        return None if self.is_zero() else self.offset + self.coeffs.shape[2] - 1

    def is_constant(self) -> bool:
        return self.is_zero() or (self.offset == 0 and self.coeffs.shape[2] == 1)

    def entry(self, i: int, j: int) -> ZPoly:
        return ZPoly(self.ring, self.coeffs[i, j], self.offset)

    def __getitem__(self, ij: tuple[int, int]) -> ZPoly:
        return self.entry(*ij)

    def tap(self, k: int) -> np.ndarray:
        """Coordinates ``(M, M, d)`` of the coefficient matrix of ``Z**-k``."""
        i = k - self.offset
        if self.is_zero() or not 0 <= i < self.coeffs.shape[2]:
            return self.ring.zeros((self.size, self.size))
        return self.coeffs[:, :, i]

    def constant_rows(self) -> list[list[Scalar]]:
        """Entries of a constant matrix as nested lists of scalars."""
        if not self.is_constant():
            raise ValueError("matrix is not constant")
        return [[self.entry(i, j)[0] for j in range(self.size)] for i in range(self.size)]

    def to_complex(self) -> tuple[int, np.ndarray]:
        """``(offset, array)`` with array shape ``(M, M, L)``."""
        return self.offset, self.ring.embed(self.coeffs)

    # ---- algebra -----------------------------------------------------------
    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return matrix_mul(self, other)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        _check_pair(self, other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.max_exp, other.max_exp)
        dtype = object if object in (self.coeffs.dtype, other.coeffs.dtype) else self.ring.dtype
        m = self.size
        out = self.ring.zeros((m, m, hi - lo + 1)).astype(dtype)
        out[:, :, self.offset - lo: self.offset - lo + self.coeffs.shape[2]] += self.coeffs
        out[:, :, other.offset - lo: other.offset - lo + other.coeffs.shape[2]] += other.coeffs
        return PolyMatrix(self.ring, out, lo)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, -self.coeffs, self.offset)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.offset == other.offset
                and self.coeffs.shape == other.coeffs.shape
                and bool(np.all(self.coeffs == other.coeffs)))

    __hash__ = None

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.coeffs.transpose(1, 0, 2, 3), self.offset)

    def tilde(self) -> "PolyMatrix":
        """Paraconjugate: transpose, conjugate coefficients, ``Z -> Z**-1``."""
        if self.is_zero():
            return self
        c = self.ring.conj(self.coeffs[:, :, ::-1]).transpose(1, 0, 2, 3)
        return PolyMatrix(self.ring, c, -self.max_exp)

    def conj_transpose(self) -> "PolyMatrix":
        """Hermitian transpose of the coefficients, exponents unchanged."""
        return PolyMatrix(self.ring, self.ring.conj(self.coeffs).transpose(1, 0, 2, 3),
                          self.offset)

    def shift(self, k: int) -> "PolyMatrix":
        """Multiply by ``Z**-k``."""
        return PolyMatrix(self.ring, self.coeffs, self.offset + k)

    def scale(self, value: Scalar) -> "PolyMatrix":
        if value.ring != self.ring:
            raise KindMismatch(f"{value.ring.name} vs {self.ring.name}")
        c = self.ring.mul(self.coeffs, self.ring.asarray(np.array(value.coords)))
        return PolyMatrix(self.ring, c, self.offset)

    def convert(self, ring: Ring) -> "PolyMatrix":
        """Explicit conversion of every coefficient into ``ring``."""
        return PolyMatrix(ring, self.ring.convert_array(self.coeffs, ring), self.offset)

    def __repr__(self) -> str:
        if self.is_zero():
            return f"PolyMatrix[{self.ring.name}](0, size={self.size})"
        return (f"PolyMatrix[{self.ring.name}](size={self.size}, "
                f"exponents {self.min_exp}..{self.max_exp})")


def _check_pair(a: PolyMatrix, b: PolyMatrix):
    if not isinstance(a, PolyMatrix) or not isinstance(b, PolyMatrix):
        raise TypeError("expected PolyMatrix operands")
    if a.ring != b.ring:
        raise KindMismatch(f"{a.ring.name} vs {b.ring.name}")
    if a.size != b.size:
        raise SizeMismatch(f"{a.size}x{a.size} vs {b.size}x{b.size}")


def matrix_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    _check_pair(a, b)
    return PolyMatrix(a.ring, _conv_mat(a.coeffs, b.coeffs, a.ring), a.offset + b.offset)


def tilde(a: PolyMatrix) -> PolyMatrix:
    return a.tilde()


def regular_delays(m: int, d: int) -> tuple[int, ...]:
    """Delays ``(0, d, 2d, ..., (m-1) d)``."""
    if d < 0:
        raise ValueError(f"delay step must be nonnegative, got {d}")
    return tuple(i * d for i in range(m))


def delay_matrix(delays: Sequence[int], ring: Ring) -> PolyMatrix:
    """``diag(Z**-D_0, ..., Z**-D_{M-1})``."""
    delays = [int(x) for x in delays]
    if any(x < 0 for x in delays):
        raise ValueError(f"delays must be nonnegative: {delays}")
    m = len(delays)
    c = ring.zeros((m, m, max(delays) + 1))
    for i, x in enumerate(delays):
        c[i, i, x, 0] = 1
    return PolyMatrix(ring, c)


def is_paraunitary(a: PolyMatrix, tol: float = DEFAULT_TOL) -> tuple[bool, Scalar | None]:
    """Test ``A . tilde(A) == C I`` with ``C`` a positive real constant.

    Returns ``(True, C)`` or ``(False, None)``.  Raises NonConstantDiagonal
    when the off-diagonal part vanishes but the diagonal is not one constant.
    ``tol`` applies to complex-float matrices only.
    """
    ring, m = a.ring, a.size
    prod = a @ a.tilde()
    if prod.is_zero():
        return False, None
    vals = ring.embed(prod.coeffs) if not ring.exact else None
    off = ~np.eye(m, dtype=bool)
    if ring.exact:
        if np.any(prod.coeffs[off] != 0):
            return False, None
    elif np.abs(vals[off]).max(initial=0.0) > tol:
        return False, None
    diag = np.arange(m)
    zero_idx = -prod.offset
    centre = prod.tap(0)[diag, diag]  # (m, d)
    rest = prod.coeffs[diag, diag].copy()
    if 0 <= zero_idx < rest.shape[1]:
        rest[:, zero_idx] = 0
    if ring.exact:
        if np.any(rest != 0) or np.any(centre != centre[0]):
            raise NonConstantDiagonal("A.tilde(A) has a non-constant or unequal diagonal")
        c = Scalar(ring, tuple(int(x) for x in centre[0]))
        if any(c.coords[1:]) or c.coords[0] <= 0:
            return False, None
        return True, c
    cvals = centre[:, 0]
    if np.abs(ring.embed(rest)).max(initial=0.0) > tol or np.abs(cvals - cvals[0]).max() > tol:
        raise NonConstantDiagonal("A.tilde(A) has a non-constant or unequal diagonal")
    c0 = complex(cvals[0])
    if abs(c0.imag) > tol or c0.real <= tol:
        return False, None
    return True, Scalar.complex(c0.real, 0.0)
