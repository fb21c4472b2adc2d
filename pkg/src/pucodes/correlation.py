"""Aperiodic correlations and complementarity / CCC verification.

Shift convention: the profile value at shift ``k`` is

    C_{x,y}(k) = sum_n conj(x(n)) * y(n + k),

i.e. the coefficient of ``Z**-k`` in ``x*(Z) . y(Z**-1)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import KindMismatch, ShapeMismatch
from .generator import SequenceSet
from .rings import DEFAULT_TOL, Ring, Scalar
from .zpoly import ZPoly, _conv_mat

__all__ = [
    "CorrelationProfile",
    "VerificationReport",
    "cross_correlation",
    "auto_correlation",
    "brute_force_profile",
    "complementarity_check",
    "ccc_check",
]


@dataclass(eq=False)
class CorrelationProfile:
    """Correlation values indexed by shift; absent shifts are zero."""

    poly: ZPoly
    length: int

    @property
    def ring(self) -> Ring:
        return self.poly.ring

    def __getitem__(self, k: int) -> Scalar:
        return self.poly[k]

    def as_dict(self) -> dict[int, Scalar]:
        """Nonzero values only."""
        return dict(self.poly.items())

    def shifts(self) -> range:
        return range(-self.length + 1, self.length)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CorrelationProfile):
            return NotImplemented
        return self.poly == other.poly

    __hash__ = None


def _as_poly(x) -> tuple[ZPoly, int]:
    if isinstance(x, ZPoly):
        return x, (x.max_exp + 1 if x.max_exp is not None else 0)
    x = list(x)
    return ZPoly.from_scalars(x), len(x)


def cross_correlation(x, y) -> CorrelationProfile:
    """Aperiodic cross-correlation via ``x*(Z) . y(Z**-1)``."""
    px, lx = _as_poly(x)
    py, ly = _as_poly(y)
    if px.ring != py.ring:
        raise KindMismatch(f"{px.ring.name} vs {py.ring.name}")
    return CorrelationProfile(px.paraconj() * py, max(lx, ly))


def auto_correlation(x) -> CorrelationProfile:
    return cross_correlation(x, x)


def brute_force_profile(x: Sequence[Scalar], y: Sequence[Scalar]) -> CorrelationProfile:
    """Reference double loop over scalars; no polynomial algebra."""
    x, y = list(x), list(y)
    if not x or not y:
        raise ValueError("empty sequence")
    ring = x[0].ring
    for v in x + y:
        if v.ring != ring:
            raise KindMismatch(f"{ring.name} vs {v.ring.name}")
    if ring.exact:
        xc, yv, zero = [v.conj() for v in x], y, ring.zero()
    else:  # plain Python complex numbers, same loop
        xc, yv, zero = [v.coords[0].conjugate() for v in x], [v.coords[0] for v in y], 0j
    terms = {}
    for k in range(-len(x) + 1, len(y)):
        acc = zero
        for n in range(max(0, -k), min(len(x), len(y) - k)):
            acc = acc + xc[n] * yv[n + k]
        if ring.exact:
            if not acc.is_zero():
                terms[k] = acc
        elif acc != 0:
            terms[k] = Scalar(ring, (acc,))
    return CorrelationProfile(ZPoly.from_dict(ring, terms), max(len(x), len(y)))


# --------------------------------------------------------------------------

@dataclass
class VerificationReport:
    passed: bool
    check: str
    constant: Scalar | None = None
    worst_violation: float = 0.0
    worst_shift: int | None = None
    worst_pair: tuple[int, int] | None = None
    tol: float = 0.0
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "passed": self.passed,
            "constant": None if self.constant is None else self.constant.to_json(),
            "worst_violation": self.worst_violation,
            "worst_shift": self.worst_shift,
            "worst_pair": None if self.worst_pair is None else list(self.worst_pair),
            "tol": self.tol,
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        parts = [f"{self.check}: {status}"]
        if self.constant is not None:
            c = self.constant
            parts.append(f"C={c.as_int() if c.ring.exact and not any(c.coords[1:]) else c.to_complex()}")
        if not self.passed:
            where = f"shift {self.worst_shift}"
            if self.worst_pair is not None:
                where = f"sets {self.worst_pair}, " + where
            parts.append(f"worst violation {self.worst_violation:.6g} at {where}")
        return ", ".join(parts)


def _gram(sets: Sequence[SequenceSet]) -> tuple[np.ndarray, int]:
    """Summed correlation matrix ``G[p, q, t]``: sum over sequence index of
    the correlation of set ``p`` with set ``q``; tap ``t`` is shift ``t - L + 1``."""
    ring = sets[0].ring
    X = np.stack([s.coords for s in sets])  # (P, M, L, d)
    L = X.shape[2]
    A = ring.conj(X[:, :, ::-1])  # paraconjugate rows, exponent offset -(L-1)
    B = X.transpose(1, 0, 2, 3)  # (M, P, L, d)
    return _conv_mat(A, B, ring), L


def _tolerance(ring: Ring, tol: float | None, scale: bool, sets: Sequence[SequenceSet]) -> float:
    if ring.exact:
        return 0.0
    tol = DEFAULT_TOL if tol is None else tol
    if scale:
        peak = max(float(np.abs(s.to_complex()).max(initial=0.0)) for s in sets)
        tol *= sets[0].length * max(peak, 1.0) ** 2
    return tol


def _check_sets(sets: Sequence[SequenceSet]):
    if not sets:
        raise ShapeMismatch("no sets given")
    first = sets[0]
    for s in sets[1:]:
        if s.ring != first.ring:
            raise ShapeMismatch(f"mixed kinds {first.ring.name} / {s.ring.name}")
        if s.coords.shape != first.coords.shape:
            raise ShapeMismatch(f"set shapes {first.coords.shape[:2]} vs {s.coords.shape[:2]}")


def _evaluate(G: np.ndarray, L: int, ring: Ring, tol: float, pairs, check: str):
    """Scan the Gram taps.  Diagonal blocks must vanish off shift 0; off-diagonal
    blocks (``pairs``) must vanish everywhere."""
    P = G.shape[0]
    mags = np.abs(ring.embed(G))  # (P, P, T)
    worst, where = 0.0, (None, None)
    nonzero = ring.nonzero_mask(G) if ring.exact else mags > tol
    for p in range(P):
        for q in range(P):
            if p != q and (p, q) not in pairs:
                continue
            bad = nonzero[p, q].copy()
            if p == q:
                bad[L - 1] = False
            idx = np.flatnonzero(bad)
            if idx.size:
                t = idx[np.argmax(mags[p, q, idx])]
                if mags[p, q, t] > worst or where[0] is None:
                    worst, where = float(mags[p, q, t]), ((p, q), int(t) - L + 1)
    return worst, where


def _constant(G: np.ndarray, p: int, L: int, ring: Ring) -> Scalar:
    row = G[p, p, L - 1]
    if ring.exact:
        return Scalar(ring, tuple(int(v) for v in row))
    return Scalar(ring, (complex(row[0]),))


def complementarity_check(s: SequenceSet, tol: float | None = None,
                          scale: bool = False) -> VerificationReport:
    """Sum of autocorrelations must vanish at every nonzero shift."""
    ring = s.ring
    tol_ = _tolerance(ring, tol, scale, [s])
    G, L = _gram([s])
    worst, (pair, shift) = _evaluate(G, L, ring, tol_, set(), "complementarity")
    c = _constant(G, 0, L, ring)
    return VerificationReport(passed=pair is None, check="complementarity", constant=c,
                              worst_violation=worst, worst_shift=shift, tol=tol_)


def ccc_check(sets: Sequence[SequenceSet], tol: float | None = None,
              scale: bool = False) -> VerificationReport:
    """Every set complementary, and every pair of distinct sets with summed
    cross-correlation identically zero (all shifts, including 0)."""
    sets = list(sets)
    _check_sets(sets)
    ring = sets[0].ring
    tol_ = _tolerance(ring, tol, scale, sets)
    G, L = _gram(sets)
    P = len(sets)
    pairs = {(p, q) for p in range(P) for q in range(P) if p != q}
    worst, (pair, shift) = _evaluate(G, L, ring, tol_, pairs, "ccc")
    consts = [_constant(G, p, L, ring) for p in range(P)]
    notes = []
    if ring.exact:
        equal = all(c == consts[0] for c in consts)
    else:
        equal = all(abs(c.to_complex() - consts[0].to_complex()) <= tol_ for c in consts)
    if not equal:
        notes.append("sets have different complementarity constants")
    return VerificationReport(passed=pair is None, check="ccc",
                              constant=consts[0] if equal else None,
                              worst_violation=worst, worst_shift=shift, worst_pair=pair,
                              tol=tol_, notes=notes)
