"""Generating matrices for complementary sets and complete complementary codes.

Ordering convention: the generating matrix is

    Mgen(Z) = U0 . D0(Z) . U1 . D1(Z) . ... . D_{K-1}(Z) . UK

with ``K + 1`` constant unitary matrices and ``K`` diagonal delay matrices.
Complementary set ``r`` is row ``r`` of ``Mgen``; sequence ``s`` of that set
is entry ``(r, s)``.  Columns form another family (the transposed generating
matrix) and are available with ``axis="column"``.

Standard delays put ``m * M**pi[k]`` on port ``m`` of stage ``k``.  For those
plans the element of set ``r``, sequence ``s`` at time ``n`` is the product

    U0[r, e0] * U1[e0, e1] * ... * UK[e_{K-1}, s],   e_k = digit pi[k] of n

which :func:`rmg_element` evaluates without any polynomial algebra.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .errors import (AnticausalInput, InvalidPermutation, InvalidSpec, KindMismatch, NonConstantDiagonal,
                     NotStandard, OutOfRange, SizeMismatch)
from .rings import DEFAULT_TOL, Ring, Scalar
from .zpoly import PolyMatrix, ZPoly, delay_matrix, is_paraunitary, regular_delays

__all__ = [
    "StandardPlan",
    "ExplicitPlan",
    "GeneratorSpec",
    "SequenceSet",
    "digits",
    "standard_delays",
    "build_generating_matrix",
    "transpose_generator",
    "recursive_generate",
    "extract_set",
    "rmg_element",
    "rmg_matrix",
    "rmg_generating_matrix",
    "generate_set",
]


def digits(n: int, m: int, k: int) -> tuple[int, ...]:
    """Radix-``m`` digits of ``n``, least significant first, ``k`` of them."""
    if m < 1 or k < 0:
        raise ValueError(f"bad radix/width m={m}, k={k}")
    if not 0 <= n < m ** k:
        raise OutOfRange(f"n={n} outside [0, {m}**{k})")
    out = []
    for _ in range(k):
        n, d = divmod(n, m)
        out.append(d)
    return tuple(out)


def _check_permutation(pi: Sequence[int], k: int) -> tuple[int, ...]:
    pi = tuple(int(p) for p in pi)
    if len(pi) != k or sorted(pi) != list(range(k)):
        raise InvalidPermutation(f"invalid permutation {list(pi)} of 0..{k - 1}")
    return pi


def standard_delays(m: int, k: int, pi: Sequence[int]) -> list[tuple[int, ...]]:
    """Stage delay vectors ``regular_delays(m, m**pi[j])`` for ``j < k``."""
    pi = _check_permutation(pi, k)
    return [regular_delays(m, m ** p) for p in pi]


@dataclass(frozen=True)
class StandardPlan:
    pi: tuple[int, ...]


@dataclass(frozen=True)
class ExplicitPlan:
    delays: tuple[tuple[int, ...], ...]


DelayPlan = Union[StandardPlan, ExplicitPlan]


@dataclass(frozen=True, eq=False)
class GeneratorSpec:
    """Unitary matrices ``U0..UK`` plus a delay plan.

    ``unitaries`` may be given as constant :class:`PolyMatrix` objects or as
    nested lists of scalars.  Validation checks that every matrix is constant,
    square, of one ring and size, and unitary with a positive constant.
    """

    unitaries: tuple[PolyMatrix, ...]
    plan: DelayPlan
    tol: float = DEFAULT_TOL
    constants: tuple[Scalar, ...] = field(init=False)

    def __post_init__(self):
        mats = []
        for u in self.unitaries:
            if not isinstance(u, PolyMatrix):
                u = PolyMatrix.constant(u)
            mats.append(u)
        if not mats:
            raise InvalidSpec("at least one unitary matrix is required")
        ring, m = mats[0].ring, mats[0].size
        consts = []
        for idx, u in enumerate(mats):
            if u.ring != ring:
                raise KindMismatch(f"U{idx} is {u.ring.name}, expected {ring.name}")
            if u.size != m:
                raise SizeMismatch(f"U{idx} is {u.size}x{u.size}, expected {m}x{m}")
            if not u.is_constant():
                raise InvalidSpec(f"U{idx} is not a constant matrix")
            try:
                ok, c = is_paraunitary(u, self.tol)
            except NonConstantDiagonal:
                ok, c = False, None
            if not ok:
                raise InvalidSpec(f"U{idx} is not unitary")
            consts.append(c)
        k = len(mats) - 1
        plan = self.plan
        if isinstance(plan, StandardPlan):
            plan = StandardPlan(_check_permutation(plan.pi, k))
        elif isinstance(plan, ExplicitPlan):
            delays = tuple(tuple(int(x) for x in d) for d in plan.delays)
            if len(delays) != k:
                raise InvalidSpec(f"{len(delays)} delay vectors for {k} stages")
            for d in delays:
                if len(d) != m or any(x < 0 for x in d):
                    raise InvalidSpec(f"bad delay vector {list(d)} for M={m}")
            plan = ExplicitPlan(delays)
        else:
            raise InvalidSpec(f"unknown delay plan {plan!r}")
        object.__setattr__(self, "unitaries", tuple(mats))
        object.__setattr__(self, "plan", plan)
        object.__setattr__(self, "constants", tuple(consts))

    @classmethod
    def standard(cls, unitaries, pi: Sequence[int] | None = None, **kw) -> "GeneratorSpec":
        k = len(unitaries) - 1
        return cls(tuple(unitaries), StandardPlan(tuple(range(k)) if pi is None else tuple(pi)),
                   **kw)

    @classmethod
    def explicit(cls, unitaries, delays, **kw) -> "GeneratorSpec":
        return cls(tuple(unitaries), ExplicitPlan(tuple(tuple(d) for d in delays)), **kw)

    @property
    def ring(self) -> Ring:
        return self.unitaries[0].ring

    @property
    def m(self) -> int:
        return self.unitaries[0].size

    @property
    def k(self) -> int:
        return len(self.unitaries) - 1

    @property
    def is_standard(self) -> bool:
        return isinstance(self.plan, StandardPlan)

    @cached_property
    def stage_delays(self) -> list[tuple[int, ...]]:
        if isinstance(self.plan, StandardPlan):
            return standard_delays(self.m, self.k, self.plan.pi)
        return [tuple(d) for d in self.plan.delays]

    @property
    def length(self) -> int:
        """Sequence length ``1 + sum_k max_m D_m^(k)``."""
        return 1 + sum(max(d) for d in self.stage_delays)

    @cached_property
    def constant(self) -> Scalar:
        """Product of the stage constants: the complementarity constant."""
        c = self.constants[0]
        for x in self.constants[1:]:
            c = c * x
        return c

    def to_dict(self) -> dict:
        """Canonical JSON-ready description (inline matrices)."""
        mats = [[[v.to_json() for v in row] for row in u.constant_rows()]
                for u in self.unitaries]
        if isinstance(self.plan, StandardPlan):
            delays = {"standard": {"pi": list(self.plan.pi)}}
        else:
            delays = {"explicit": [list(d) for d in self.plan.delays]}
        return {"m": self.m, "k": self.k, "kind": self.ring.name,
                "unitaries": mats, "delays": delays}

    @cached_property
    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(eq=False)
class SequenceSet:
    """``M`` sequences of common length ``L``; ``coords`` has shape ``(M, L, d)``."""

    ring: Ring
    coords: np.ndarray
    set_index: int | None = None
    generator: str | None = None
    axis: str = "row"

    def __post_init__(self):
        self.coords = self.ring.asarray(self.coords)
        if self.coords.ndim != 3:
            raise ValueError(f"expected shape (M, L, d), got {self.coords.shape}")

    @classmethod
    def from_sequences(cls, seqs: Sequence[Sequence[Scalar]], **kw) -> "SequenceSet":
        if not seqs or not seqs[0]:
            raise ValueError("empty sequence set")
        ring = seqs[0][0].ring
        L = len(seqs[0])
        if any(len(s) != L for s in seqs):
            raise ValueError("sequences have different lengths")
        rows = []
        for s in seqs:
            for v in s:
                if v.ring != ring:
                    raise KindMismatch(f"{v.ring.name} element in a {ring.name} set")
            rows.append([v.coords for v in s])
        arr = np.array(rows, dtype=object if ring.exact else np.complex128)
        if ring.exact:
            try:
                arr = arr.astype(np.int64)
            except OverflowError:
                pass
        return cls(ring, arr, **kw)

    def __len__(self) -> int:
        return self.coords.shape[0]

    @property
    def length(self) -> int:
        return self.coords.shape[1]

    def sequence(self, m: int) -> list[Scalar]:
        return ZPoly(self.ring, self.coords[m]).to_sequence(self.length)

    @property
    def sequences(self) -> list[list[Scalar]]:
        return [self.sequence(m) for m in range(len(self))]

    def polys(self) -> list[ZPoly]:
        return [ZPoly(self.ring, self.coords[m]) for m in range(len(self))]

    def to_complex(self) -> np.ndarray:
        return self.ring.embed(self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SequenceSet):
            return NotImplemented
        return (self.ring == other.ring and self.coords.shape == other.coords.shape
                and bool(np.all(self.coords == other.coords)))

    __hash__ = None


# --------------------------------------------------------------------------

def build_generating_matrix(g: GeneratorSpec) -> PolyMatrix:
    """``U0 . D0 . U1 . ... . D_{K-1} . UK`` as a polynomial-matrix product."""
    result = g.unitaries[0]
    for delays, u in zip(g.stage_delays, g.unitaries[1:]):
        result = result @ delay_matrix(delays, g.ring) @ u
    return result


def transpose_generator(g: GeneratorSpec) -> GeneratorSpec:
    """Generator whose generating matrix is the transpose of ``g``'s:
    stages reversed, every unitary transposed.  Its row sets are the
    column sets of ``g``."""
    mats = [u.transpose() for u in reversed(g.unitaries)]
    if g.is_standard:
        return GeneratorSpec.standard(mats, tuple(reversed(g.plan.pi)), tol=g.tol)
    return GeneratorSpec.explicit(mats, list(reversed(g.plan.delays)), tol=g.tol)


def recursive_generate(g: GeneratorSpec, r: int) -> SequenceSet:
    """Set ``r`` by the stage recursion: start from row ``r`` of ``U0``, then
    per stage delay each port and mix with the next unitary."""
    if not 0 <= r < g.m:
        raise OutOfRange(f"set index {r} outside [0, {g.m})")
    ring, m = g.ring, g.m
    rows0 = g.unitaries[0].constant_rows()
    vec = [ZPoly.monomial(rows0[r][j]) for j in range(m)]
    for delays, u in zip(g.stage_delays, g.unitaries[1:]):
        vec = [p.shift(dl) for p, dl in zip(vec, delays)]
        rows = u.constant_rows()
        nxt = []
        for s in range(m):
            acc = ZPoly.zero(ring)
            for j in range(m):
                if not rows[j][s].is_zero() and not vec[j].is_zero():
                    acc = acc + vec[j] * rows[j][s]
            nxt.append(acc)
        vec = nxt
    L = g.length
    arr = ring.zeros((m, L))
    if any(p.coeffs.dtype == object for p in vec):
        arr = arr.astype(object)
    for s, p in enumerate(vec):
        if not p.is_zero():
            arr[s, p.offset:p.offset + p.coeffs.shape[0]] = p.coeffs
    return SequenceSet(ring, arr, set_index=r, generator=g.digest)


def extract_set(mgen: PolyMatrix, r: int, axis: str = "row",
                length: int | None = None) -> SequenceSet:
    """Set ``r`` (row or column ``r``) as time-domain sequences padded to a
    common length (``max exponent + 1`` of the whole matrix by default)."""
    if not 0 <= r < mgen.size:
        raise OutOfRange(f"set index {r} outside [0, {mgen.size})")
    if axis not in ("row", "column"):
        raise ValueError(f"axis must be 'row' or 'column', got {axis!r}")
    if mgen.min_exp is not None and mgen.min_exp < 0:
        raise AnticausalInput("generating matrix has negative exponents")
    L = (mgen.max_exp + 1 if mgen.max_exp is not None else 1) if length is None else length
    block = mgen.coeffs[r] if axis == "row" else mgen.coeffs[:, r]
    arr = mgen.ring.zeros((mgen.size, L)).astype(block.dtype)
    n = min(block.shape[1], L - mgen.offset) if block.shape[1] else 0
    if n > 0:
        arr[:, mgen.offset:mgen.offset + n] = block[:, :n]
    return SequenceSet(mgen.ring, arr, set_index=r, axis=axis)


# --------------------------------------------------------------------------
# direct (radix-M) evaluation

def _require_standard(g: GeneratorSpec):
    if not g.is_standard:
        raise NotStandard("radix-M evaluation needs a standard delay plan")


def rmg_element(g: GeneratorSpec, r: int, s: int, n: int) -> Scalar:
    """Element ``n`` of sequence ``s`` of standard set ``r``: a product of
    ``K + 1`` unitary entries indexed by the permuted digits of ``n``."""
    _require_standard(g)
    m, k = g.m, g.k
    if not (0 <= r < m and 0 <= s < m):
        raise OutOfRange(f"(r, s) = ({r}, {s}) outside [0, {m})")
    dig = digits(n, m, k)
    rows = [u.constant_rows() for u in g.unitaries]
    prev = r
    value = None
    for j, p in enumerate(g.plan.pi):
        cur = dig[p]
        value = rows[j][prev][cur] if value is None else value * rows[j][prev][cur]
        prev = cur
    last = rows[k][prev][s]
    return last if value is None else value * last


def rmg_matrix(g: GeneratorSpec, n: int) -> PolyMatrix:
    """Time-domain generating matrix at ``n``:
    ``U0 . diag(v_{e0}) . U1 . ... . diag(v_{e_{K-1}}) . UK``."""
    _require_standard(g)
    dig = digits(n, g.m, g.k)
    ring, m = g.ring, g.m
    result = g.unitaries[0]
    for p, u in zip(g.plan.pi, g.unitaries[1:]):
        sel = ring.zeros((m, m, 1))
        sel[dig[p], dig[p], 0, 0] = 1
        result = result @ PolyMatrix(ring, sel) @ u
    return result


def rmg_generating_matrix(g: GeneratorSpec) -> PolyMatrix:
    """All elements of all sets by the radix-M product, vectorised over
    ``(r, s, n)``, packed back into a polynomial matrix."""
    _require_standard(g)
    ring, m, k = g.ring, g.m, g.k
    L = m ** k
    n = np.arange(L)
    dig = [(n // m ** p) % m for p in range(k)]
    path = [dig[p] for p in g.plan.pi]  # digit selected after stage j
    mats = [u.coeffs[:, :, 0] for u in g.unitaries]  # (m, m, d)
    rr = np.arange(m)[:, None, None]
    ss = np.arange(m)[None, :, None]
    if k == 0:
        acc = np.broadcast_to(mats[0][:, :, None], (m, m, 1, ring.dim))
        return PolyMatrix(ring, np.array(acc))
    acc = mats[0][rr, path[0][None, None, :]]  # (m, 1, L, d)
    for j in range(1, k):
        acc = ring.mul(acc, mats[j][path[j - 1], path[j]][None, None])
    acc = ring.mul(np.broadcast_to(acc, (m, m, L, ring.dim)),
                   mats[k][path[k - 1][None, None, :], ss])
    return PolyMatrix(ring, acc)


def generate_set(g: GeneratorSpec, r: int, method: str = "pu", axis: str = "row") -> SequenceSet:
    """Set ``r`` via ``method`` in {'pu', 'rmg', 'recursive'}."""
    if method == "recursive":
        if axis != "row":
            raise ValueError("the recursion produces row sets only")
        return recursive_generate(g, r)
    if method == "pu":
        mgen = build_generating_matrix(g)
    elif method == "rmg":
        mgen = rmg_generating_matrix(g)
    else:
        raise ValueError(f"unknown method {method!r}")
    out = extract_set(mgen, r, axis, length=g.length)
    out.generator = g.digest
    return out
