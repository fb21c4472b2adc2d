"""Scalar rings for sequence symbols.

Four kinds are supported: complex floats, Gaussian integers ``a + b i``,
Eisenstein integers ``a + b w`` with ``w = exp(2 pi i / 3)``, and cyclotomic
integers of order ``N``.

Every exact value is an integer coordinate vector over a fixed basis:

* Gaussian: ``(1, i)``
* Eisenstein: ``(1, w)``
* cyclotomic ``N``: ``(1, z, ..., z**(phi(N)-1))`` with ``z = exp(2 pi i / N)``

Products of basis elements are tabulated once per ring (``Ring.table``), so
the same code drives single :class:`Scalar` values and whole numpy arrays of
coordinates (last axis = coordinate axis).  Complex floats use a one-element
coordinate vector of dtype ``complex128``.

Integer arrays are int64 while an a-priori magnitude bound stays below
``2**62``; beyond that they are promoted to Python ints (``dtype=object``).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import KindMismatch

DEFAULT_TOL = 1e-9
INT64_SAFE = 2**62

__all__ = [
    "DEFAULT_TOL",
    "CyclotomicBasis",
    "Ring",
    "Scalar",
    "COMPLEX",
    "GAUSS",
    "EISENSTEIN",
    "cyclotomic",
    "cyclotomic_basis",
    "embed_complex",
    "ring_from_name",
]


# --------------------------------------------------------------------------
# cyclotomic polynomials

def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials (ascending coefficients, monic den)."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j, dj in enumerate(den):
                num[i - dn + j] -= c * dj
    return quot, num[:dn] or [0]


@dataclass(frozen=True)
class CyclotomicBasis:
    order: int
    phi: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.phi) - 1


@lru_cache(maxsize=None)
def cyclotomic_basis(n: int) -> CyclotomicBasis:
    """The ``n``-th cyclotomic polynomial, by dividing ``x**n - 1`` by the
    cyclotomic polynomials of all proper divisors of ``n``."""
    if n < 1:
        raise ValueError(f"cyclotomic order must be >= 1, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_basis(d).phi))
            if any(rem):
                raise ArithmeticError(f"non-exact division computing Phi_{n}")
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return CyclotomicBasis(n, tuple(num))


def _reduce(coeffs: list[int], n: int) -> list[int]:
    """Reduce ``sum c[k] z**k`` (any length) to cyclotomic coordinates."""
    folded = [0] * n
    for k, c in enumerate(coeffs):
        folded[k % n] += c
    basis = cyclotomic_basis(n)
    _, rem = _poly_divmod(folded, list(basis.phi))
    rem = list(rem) + [0] * (basis.degree - len(rem))
    return rem[: basis.degree]


# --------------------------------------------------------------------------
# rings

_KINDS = ("complex", "gauss", "eisenstein", "cyclo")


@dataclass(frozen=True)
class Ring:
    """Descriptor of a scalar kind.  Compare rings with ``==``."""

    kind: str
    order: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown scalar kind {self.kind!r}")
        if self.kind == "cyclo" and self.order < 1:
            raise ValueError("cyclotomic ring needs order >= 1")

    @property
    def name(self) -> str:
        return f"cyclo{self.order}" if self.kind == "cyclo" else self.kind

    def __repr__(self) -> str:
        return f"Ring({self.name})"

    @property
    def exact(self) -> bool:
        return self.kind != "complex"

    @property
    def cyclo_order(self) -> int:
        """Order of the root of unity generating the ring (0 for floats)."""
        return {"gauss": 4, "eisenstein": 3, "cyclo": self.order}.get(self.kind, 0)

    @cached_property
    def dim(self) -> int:
        if self.kind == "complex":
            return 1
        return cyclotomic_basis(self.cyclo_order).degree

    @property
    def dtype(self):
        return np.complex128 if self.kind == "complex" else np.int64

    @cached_property
    def _powers(self) -> list[list[int]]:
        # coordinates of z**k for k = 0 .. max(N, 2d) - 1
        n = self.cyclo_order
        return [_reduce([0] * k + [1], n) for k in range(max(n, 2 * self.dim))]

    @cached_property
    def _sparse_table(self) -> list[list[list[tuple[int, int]]]]:
        d = self.dim
        if not self.exact:
            return [[[(0, 1)]]]
        return [
            [[(r, c) for r, c in enumerate(self._powers[p + q]) if c] for q in range(d)]
            for p in range(d)
        ]

    @cached_property
    def table(self) -> np.ndarray:
        """``table[p, q, r]``: coordinate ``r`` of ``basis[p] * basis[q]``."""
        d = self.dim
        t = np.zeros((d, d, d), dtype=np.int64)
        for p in range(d):
            for q in range(d):
                for r, c in self._sparse_table[p][q]:
                    t[p, q, r] = c
        return t

    @cached_property
    def table_weight(self) -> int:
        return int(np.abs(self.table).sum(axis=(0, 1)).max())

    @cached_property
    def conj_matrix(self) -> np.ndarray:
        """Row ``p`` holds the coordinates of ``conj(basis[p])``."""
        if not self.exact:
            return np.ones((1, 1), dtype=np.int64)
        n = self.cyclo_order
        return np.array([self._powers[(n - p) % n] for p in range(self.dim)], dtype=np.int64)

    @cached_property
    def basis_values(self) -> np.ndarray:
        if not self.exact:
            return np.ones(1, dtype=np.complex128)
        n = self.cyclo_order
        return np.array([cmath.exp(2j * math.pi * p / n) for p in range(self.dim)])

    # ---- scalar constructors -------------------------------------------
    def zero(self) -> "Scalar":
        return Scalar(self, (0j,) if not self.exact else (0,) * self.dim)

    def one(self) -> "Scalar":
        return self.from_int(1)

    def from_int(self, k: int) -> "Scalar":
        if not self.exact:
            return Scalar(self, (complex(k),))
        return Scalar(self, (int(k),) + (0,) * (self.dim - 1))

    def root_of_unity(self, e: int) -> "Scalar":
        """``z**e`` for the generating root of unity of this ring."""
        if not self.exact:
            raise KindMismatch("complex ring has no distinguished root of unity")
        n = self.cyclo_order
        return Scalar(self, tuple(self._powers[e % n]))

    # ---- array operations ------------------------------------------------
    def zeros(self, shape) -> np.ndarray:
        if isinstance(shape, int):
            shape = (shape,)
        return np.zeros(tuple(shape) + (self.dim,), dtype=self.dtype)

    def asarray(self, a) -> np.ndarray:
        a = np.asarray(a)
        if self.exact:
            if a.dtype != object and a.dtype != np.int64:
                if not np.issubdtype(a.dtype, np.integer):
                    raise KindMismatch(f"{self.name} coordinates must be integers")
                a = a.astype(np.int64)
        else:
            a = a.astype(np.complex128)
        if a.shape[-1:] != (self.dim,):
            raise ValueError(f"last axis must have length {self.dim}, got shape {a.shape}")
        return a

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise ring product of coordinate arrays (broadcasting)."""
        if not self.exact:
            return a * b
        bound = maxabs(a) * maxabs(b) * self.table_weight
        a, b = promote(a, b, bound)
        return np.einsum("...p,...q,pqr->...r", a, b, self.table.astype(a.dtype))

    def conj(self, a: np.ndarray) -> np.ndarray:
        if not self.exact:
            return np.conj(a)
        if self.kind == "cyclo" and self.order <= 2:
            return a.copy()
        return a @ self.conj_matrix.astype(a.dtype)

    def embed(self, a: np.ndarray) -> np.ndarray:
        """Complex values of a coordinate array (drops the last axis)."""
        if not self.exact:
            return a[..., 0]
        return np.asarray(a, dtype=np.complex128) @ self.basis_values

    def nonzero_mask(self, a: np.ndarray) -> np.ndarray:
        return np.any(a != 0, axis=-1)

    def convert_array(self, a: np.ndarray, target: "Ring") -> np.ndarray:
        """Explicit conversion of coordinates into ``target``.

        Allowed when the source root of unity lives in the target ring
        (e.g. Gaussian -> cyclo4, cyclo3 -> Eisenstein, cyclo2 -> anything
        exact via integers) or when the target is the complex ring.
        """
        if target == self:
            return a
        if not target.exact:
            return self.embed(a)[..., None]
        if not self.exact:
            raise KindMismatch("cannot convert complex floats to an exact ring")
        n, m = self.cyclo_order, target.cyclo_order
        if m % n == 0:
            step = m // n
            mapping = np.array([target._powers[(p * step) % m] for p in range(self.dim)],
                               dtype=np.int64)
            return a @ mapping.astype(a.dtype)
        if self.dim == 1 or not np.any(a[..., 1:]):
            out = target.zeros(a.shape[:-1]).astype(a.dtype)
            out[..., 0] = a[..., 0]
            return out
        raise KindMismatch(f"no exact embedding of {self.name} into {target.name}")


def maxabs(a: np.ndarray) -> int | float:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(v) for v in a.flat)
    if np.iscomplexobj(a):
        return float(np.abs(a).max())
    return int(np.abs(a).max())


def promote(a: np.ndarray, b: np.ndarray, bound) -> tuple[np.ndarray, np.ndarray]:
    """Switch integer arrays to Python ints when ``bound`` may overflow int64."""
    if a.dtype == object or b.dtype == object or bound >= INT64_SAFE:
        if np.iscomplexobj(a) or np.iscomplexobj(b):
            return a, b
        return a.astype(object), b.astype(object)
    return a, b


COMPLEX = Ring("complex")
GAUSS = Ring("gauss")
EISENSTEIN = Ring("eisenstein")


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Ring:
    return Ring("cyclo", n)


def ring_from_name(name: str) -> Ring:
    """Parse ``complex``, ``gauss``, ``eisenstein`` or ``cycloN``."""
    if name in ("complex", "gauss", "eisenstein"):
        return Ring(name)
    if name.startswith("cyclo") and name[5:].isdigit():
        return cyclotomic(int(name[5:]))
    raise ValueError(f"unknown scalar kind {name!r}")


# --------------------------------------------------------------------------
# scalars

@dataclass(frozen=True)
class Scalar:
    """An immutable ring element.  Mixed-ring arithmetic raises KindMismatch;
    plain Python ints are accepted as integer constants."""

    ring: Ring
    coords: tuple

    # constructors
    @classmethod
    def complex(cls, re: float, im: float = 0.0) -> "Scalar":
        return cls(COMPLEX, (complex(re, im),))

    @classmethod
    def gauss(cls, a: int, b: int = 0) -> "Scalar":
        return cls(GAUSS, (int(a), int(b)))

    @classmethod
    def eisenstein(cls, a: int, b: int = 0) -> "Scalar":
        return cls(EISENSTEIN, (int(a), int(b)))

    @classmethod
    def cyclo(cls, n: int, coeffs) -> "Scalar":
        """``sum coeffs[k] * z**k`` with ``z = exp(2 pi i / n)``, reduced."""
        return cls(cyclotomic(n), tuple(_reduce([int(c) for c in coeffs], n)))

    # arithmetic
    def _other(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise KindMismatch(f"{self.ring.name} vs {other.ring.name}")
            return other
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return self.ring.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ring, tuple(x + y for x, y in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ring, tuple(-x for x in self.coords))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if not self.ring.exact:
            return Scalar(self.ring, (self.coords[0] * other.coords[0],))
        out = [0] * self.ring.dim
        table = self.ring._sparse_table
        for p, x in enumerate(self.coords):
            if x:
                for q, y in enumerate(other.coords):
                    if y:
                        for r, c in table[p][q]:
                            out[r] += c * x * y
        return Scalar(self.ring, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not ring operations")
        result, base = self.ring.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "Scalar":
        if not self.ring.exact:
            return Scalar(self.ring, (self.coords[0].conjugate(),))
        out = [0] * self.ring.dim
        for x, row in zip(self.coords, self.ring.conj_matrix.tolist()):
            if x:
                for r, c in enumerate(row):
                    out[r] += c * x
        return Scalar(self.ring, tuple(out))

    def msq(self) -> "Scalar":
        """``a * conj(a)``, in the same ring."""
        return self * self.conj()

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def to_complex(self) -> complex:
        if not self.ring.exact:
            return self.coords[0]
        return complex(sum(c * v for c, v in zip(self.coords, self.ring.basis_values)))

    def as_int(self) -> int:
        """Value of an integer-valued exact scalar."""
        if not self.ring.exact or any(self.coords[1:]):
            raise ValueError(f"{self!r} is not an integer")
        return self.coords[0]

    def isclose(self, other: "Scalar", tol: float = DEFAULT_TOL) -> bool:
        other = self._other(other)
        if self.ring.exact:
            return self == other
        return abs(self.coords[0] - other.coords[0]) <= tol

    def to_ring(self, target: Ring) -> "Scalar":
        """Explicit conversion (see :meth:`Ring.convert_array`)."""
        src = np.array(self.coords, dtype=object if self.ring.exact else np.complex128)
        arr = self.ring.convert_array(src, target)
        vals = arr.tolist()
        return Scalar(target, tuple(complex(v) if not target.exact else int(v) for v in vals))

    # serialisation
    def to_json(self) -> dict:
        kind = self.ring.kind
        if kind == "complex":
            z = self.coords[0]
            return {"kind": "complex", "re": z.real, "im": z.imag}
        if kind in ("gauss", "eisenstein"):
            return {"kind": kind, "a": self.coords[0], "b": self.coords[1]}
        n = self.ring.order
        return {"kind": "cyclo", "n": n, "c": list(self.coords) + [0] * (n - self.ring.dim)}

    @classmethod
    def from_json(cls, obj: dict) -> "Scalar":
        kind = obj.get("kind")
        if kind == "complex":
            keys = {"kind", "re", "im"}
        elif kind in ("gauss", "eisenstein"):
            keys = {"kind", "a", "b"}
        elif kind == "cyclo":
            keys = {"kind", "n", "c"}
        else:
            raise ValueError(f"unknown scalar kind {kind!r}")
        if set(obj) != keys:
            raise ValueError(f"scalar object {obj!r} must have exactly keys {sorted(keys)}")
        if kind == "complex":
            return cls.complex(float(obj["re"]), float(obj["im"]))
        if kind in ("gauss", "eisenstein"):
            a, b = obj["a"], obj["b"]
            if not (isinstance(a, int) and isinstance(b, int)):
                raise ValueError(f"non-integer coordinates in {obj!r}")
            return cls(Ring(kind), (a, b))
        if not isinstance(obj["n"], int) or not all(isinstance(c, int) for c in obj["c"]):
            raise ValueError(f"non-integer cyclotomic data in {obj!r}")
        return cls.cyclo(obj["n"], obj["c"])

    def __repr__(self) -> str:
        c = self.coords
        if self.ring.kind == "complex":
            return f"Scalar.complex({c[0].real!r}, {c[0].imag!r})"
        if self.ring.kind == "gauss":
            return f"{c[0]}{c[1]:+d}i"
        if self.ring.kind == "eisenstein":
            return f"{c[0]}{c[1]:+d}w"
        return f"cyclo{self.ring.order}{list(c)}"


def embed_complex(a: Scalar) -> Scalar:
    """Numeric image of ``a`` as a complex-float scalar."""
    return Scalar.complex(a.to_complex().real, a.to_complex().imag)
