"""Efficient MIMO matched filter for generated sets.

The matched filter of a generating matrix ``Mgen`` is the causal filter

    Phi(Z) = Z**-(L-1) . tilde(Mgen)
           = UK^H . Q_{K-1} . U_{K-1}^H . ... . Q_0 . U0^H

where ``Q_k = diag(Z**-(max D^(k) - D_m^(k)))`` absorbs the anticausal
part of each stage.  Feeding a signal into port ``r`` yields at output ``m``
its cross-correlation with sequence ``m`` of set ``r``, delayed by ``L - 1``.
Per input sample the cascade costs ``(K + 1) M**2`` multiplications,
independent of ``L``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend
from .errors import KindMismatch, OutOfRange
from .generator import GeneratorSpec, SequenceSet
from .rings import COMPLEX, INT64_SAFE, Ring, Scalar, maxabs
from .zpoly import PolyMatrix, delay_matrix

__all__ = [
    "MatchedFilterSpec",
    "StreamState",
    "OpCount",
    "build_matched_filter",
    "correlate_stream",
    "op_count",
]


@dataclass(frozen=True, eq=False)
class MatchedFilterSpec:
    """Stage cascade in signal-flow order: ``matrices[0]`` (= U0^H) acts
    first, then ``delays[0]``, then ``matrices[1]``, and so on."""

    generator: GeneratorSpec
    matrices: tuple[PolyMatrix, ...]
    delays: tuple[tuple[int, ...], ...]
    total_delay: int
    constant: Scalar

    @property
    def ring(self) -> Ring:
        return self.generator.ring

    @property
    def m(self) -> int:
        return self.generator.m

    @property
    def k(self) -> int:
        return len(self.delays)

    def expand(self) -> PolyMatrix:
        """The cascade multiplied out into one polynomial matrix."""
        result = self.matrices[-1]
        for k in range(self.k - 1, -1, -1):
            result = result @ delay_matrix(self.delays[k], self.ring) @ self.matrices[k]
        return result

    def convert(self, ring: Ring) -> "MatchedFilterSpec":
        """Same cascade with coefficients converted into ``ring``."""
        g = GeneratorSpec(tuple(u.convert(ring) for u in self.generator.unitaries),
                          self.generator.plan, self.generator.tol)
        return build_matched_filter(g)


def build_matched_filter(g: GeneratorSpec) -> MatchedFilterSpec:
    mats = tuple(u.conj_transpose() for u in g.unitaries)
    delays = tuple(tuple(max(d) - x for x in d) for d in g.stage_delays)
    return MatchedFilterSpec(g, mats, delays, g.length - 1, g.constant)


@dataclass(frozen=True)
class OpCount:
    """Multiplications per input sample vector."""

    cascade: int
    direct: int
    m: int
    k: int
    length: int

    @property
    def ratio(self) -> float:
        return self.direct / self.cascade


def op_count(f: MatchedFilterSpec) -> OpCount:
    """Cascade ``(K + 1) M**2`` versus ``M L`` for a bank of ``M`` direct
    correlators of length ``L``."""
    m, k, L = f.m, f.k, f.total_delay + 1
    return OpCount(cascade=(k + 1) * m * m, direct=m * L, m=m, k=k, length=L)


# --------------------------------------------------------------------------

class StreamState:
    """Mutable delay-line state of one stream through a matched filter.

    Not thread-safe; give each concurrent stream its own state.
    """

    def __init__(self, f: MatchedFilterSpec, backend: str | None = None):
        self.filter = f
        self.time = 0
        ring, m = f.ring, f.m
        self._complex = not ring.exact
        coeffs = [u.coeffs[:, :, 0] for u in f.matrices]  # (m, m, d) each
        if self._complex:
            self._mats = np.ascontiguousarray(np.stack(coeffs)[..., 0])
        else:
            self._mats = np.ascontiguousarray(np.stack(coeffs))
        self._delays = np.array(f.delays, dtype=np.int64).reshape(f.k, m)
        sizes = self._delays.ravel()
        offsets = np.zeros(sizes.size, dtype=np.int64)
        offsets[1:] = np.cumsum(sizes)[:-1]
        self._offsets = offsets.reshape(f.k, m)
        self._heads = np.zeros((f.k, m), dtype=np.int64)
        total = int(sizes.sum())
        self._buf = ring.zeros(total) if not self._complex else np.zeros(total, np.complex128)
        self._backend = backend
        # per-stage growth factor for the int64 overflow bound
        if not self._complex:
            self._gain = 1
            for c in coeffs:
                self._gain *= max(1, m * maxabs(c) * ring.table_weight)
        self._peak_in = 0

    @property
    def line_lengths(self) -> tuple[tuple[int, ...], ...]:
        """Delay-line length per stage and port (the causal stage delays)."""
        return tuple(tuple(int(v) for v in row) for row in self._delays)

    @property
    def exact_fallback(self) -> bool:
        """True once the state switched to Python integers to avoid overflow."""
        return self._buf.dtype == object

    def _kernels(self, dtype):
        if dtype == object:
            return _backend.python_kernels
        return _backend.get(self._backend)

    def process(self, block: np.ndarray) -> np.ndarray:
        """Push ``T`` input vectors ``(T, M, d)`` (or ``(T, M)`` complex);
        returns the ``T`` output vectors in the same layout."""
        ring = self.filter.ring
        if self._complex:
            x = np.ascontiguousarray(block, dtype=np.complex128)
            out = np.empty_like(x)
            self._kernels(None).cascade_complex(self._mats, self._delays, self._offsets,
                                                self._heads, self._buf, x, out)
        else:
            x = ring.asarray(block)
            self._peak_in = max(self._peak_in, maxabs(x))
            if x.dtype != object and self._peak_in * self._gain >= INT64_SAFE:
                x = x.astype(object)
            if x.dtype == object and self._buf.dtype != object:
                self._buf = self._buf.astype(object)
            if self._buf.dtype == object:
                x = x.astype(object)
            x = np.ascontiguousarray(x)
            out = np.empty_like(x)
            kern = self._kernels(x.dtype)
            mats = self._mats if x.dtype != object else self._mats.astype(object)
            kern.cascade_int(mats, ring.table, self._delays, self._offsets,
                             self._heads, self._buf, x, out)
        self.time += x.shape[0]
        return out

    def push(self, sample: Sequence[Scalar | None] | Scalar, port: int | None = None) -> list[Scalar]:
        """One input time step; ``sample`` is either a per-port vector
        (``None`` = 0) or a single scalar for ``port``."""
        m, ring = self.filter.m, self.filter.ring
        if port is not None:
            if not 0 <= port < m:
                raise OutOfRange(f"port {port} outside [0, {m})")
            vec = [None] * m
            vec[port] = sample
        else:
            vec = list(sample)
        x = ring.zeros((1, m)).astype(object)
        for i, v in enumerate(vec):
            if v is not None:
                if v.ring != ring:
                    raise KindMismatch(f"{v.ring.name} sample into a {ring.name} filter")
                x[0, i] = v.coords
        if maxabs(x) < INT64_SAFE:
            x = x.astype(ring.dtype)
        y = self.process(x if not self._complex else x[..., 0])
        if self._complex:
            return [Scalar(ring, (complex(v),)) for v in y[0]]
        return [Scalar(ring, tuple(int(c) for c in row)) for row in y[0]]

    def flush(self) -> np.ndarray:
        """Feed ``L - 1`` zero vectors, returning the tail outputs."""
        m, n = self.filter.m, self.filter.total_delay
        zeros = np.zeros((n, m), np.complex128) if self._complex \
            else self.filter.ring.zeros((n, m)).astype(self._buf.dtype)
        return self.process(zeros)


def _samples_array(samples, ring: Ring) -> np.ndarray:
    if isinstance(samples, np.ndarray) and samples.dtype != object:
        if not ring.exact and samples.ndim == 1:
            return samples.astype(np.complex128)[:, None]
        return ring.asarray(samples)
    samples = list(samples)
    for v in samples:
        if not isinstance(v, Scalar):
            raise TypeError(f"expected Scalar samples, got {type(v).__name__}")
        if v.ring != ring:
            raise KindMismatch(f"{v.ring.name} samples into a {ring.name} filter")
    if not samples:
        return ring.zeros(0)
    arr = np.array([v.coords for v in samples], dtype=object if ring.exact else np.complex128)
    if ring.exact and maxabs(arr) < INT64_SAFE:
        arr = arr.astype(np.int64)
    return arr


def correlate_stream(f: MatchedFilterSpec, port: int, samples, normalize: bool = False,
                     backend: str | None = None) -> SequenceSet:
    """Stream ``samples`` into input ``port`` (other inputs zero) and collect
    all ``M`` outputs, including the ``L - 1`` flush tail.

    Output ``m`` at time ``t`` equals ``C_{x_m, s}(t - (L - 1))`` where
    ``x_m`` is sequence ``m`` of set ``port``.  With ``normalize`` the
    outputs are divided by the constant ``C`` in complex floats.
    """
    ring, m = f.ring, f.m
    if not 0 <= port < m:
        raise OutOfRange(f"port {port} outside [0, {m})")
    s = _samples_array(samples, ring)
    T = s.shape[0]
    n = T + f.total_delay
    x = ring.zeros((n, m)).astype(s.dtype)
    x[:T, port] = s
    state = StreamState(f, backend)
    if ring.exact:
        y = state.process(x)  # (n, m, d)
    else:
        y = state.process(x[..., 0])[..., None]
    out = SequenceSet(ring, y.transpose(1, 0, 2), set_index=port, generator=f.generator.digest)
    if normalize:
        c = f.constant.to_complex().real
        return SequenceSet(COMPLEX, (ring.embed(out.coords) / c)[..., None], set_index=port,
                           generator=out.generator)
    return out
