"""Random unitary matrices and generator specs for tests and benchmarks.

Exact matrices are random equivalence transforms (permutations and
root-of-unity phases) of catalog matrices, so they stay inside the ring.
Complex-float matrices are Haar-like unitaries from a QR factorisation.
"""
from __future__ import annotations

import math

import numpy as np

from .constellations import (dft_matrix, equivalence_transform, hadamard_sylvester,
                             paper_eisenstein_matrix, paper_qam_matrix)
from .generator import GeneratorSpec
from .rings import COMPLEX, EISENSTEIN, GAUSS, Ring, Scalar, cyclotomic
from .zpoly import PolyMatrix

__all__ = ["ring_choices", "random_unitary", "random_generator", "random_samples"]


def ring_choices(m: int) -> list[Ring]:
    """Rings in which an ``m x m`` catalog unitary is available exactly."""
    rings = [cyclotomic(m if m > 1 else 2), cyclotomic(2 * m), COMPLEX]
    if 4 % m == 0 or m == 3:  # DFT/Hadamard, or the 3x3 QAM matrix
        rings.append(GAUSS)
    if 3 % m == 0:
        rings.append(EISENSTEIN)
    return rings


def _bases(m: int, ring: Ring) -> list[PolyMatrix]:
    out = []
    if ring.exact and ring.cyclo_order % m == 0:
        out.append(dft_matrix(m).matrix.convert(ring))
    if m & (m - 1) == 0 and ring.exact:
        out.append(hadamard_sylvester(m.bit_length() - 1).matrix.convert(ring))
    if m == 3 and ring == GAUSS:
        out.append(paper_qam_matrix().matrix)
    if m == 3 and ring == EISENSTEIN:
        out.append(paper_eisenstein_matrix().matrix)
    if not out:
        raise ValueError(f"no exact {m}x{m} unitary known in {ring.name}")
    return out


def _haar(rng: np.random.Generator, m: int) -> PolyMatrix:
    z = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    scale = math.sqrt(float(rng.integers(1, 5)))
    return PolyMatrix(COMPLEX, (q * scale)[:, :, None, None])


def random_unitary(rng: np.random.Generator, m: int, ring: Ring) -> PolyMatrix:
    if not ring.exact:
        return _haar(rng, m)
    bases = _bases(m, ring)
    base = bases[int(rng.integers(len(bases)))]
    n = ring.cyclo_order
    roots = [ring.root_of_unity(e) for e in range(n)]
    roots += [-z for z in roots]

    def phases():
        return [roots[int(rng.integers(len(roots)))] for _ in range(m)]

    return equivalence_transform(base, rng.permutation(m).tolist(), rng.permutation(m).tolist(),
                                 phases(), phases()).matrix


def random_generator(rng: np.random.Generator, m: int, k: int, ring: Ring | None = None,
                     standard: bool = True, max_delay: int = 6) -> GeneratorSpec:
    """Random spec with ``k`` delay stages; explicit plans draw each port
    delay from ``[0, max_delay]``."""
    if ring is None:
        choices = ring_choices(m)
        ring = choices[int(rng.integers(len(choices)))]
    mats = [random_unitary(rng, m, ring) for _ in range(k + 1)]
    if standard:
        return GeneratorSpec.standard(mats, rng.permutation(k).tolist())
    delays = [rng.integers(0, max_delay + 1, size=m).tolist() for _ in range(k)]
    return GeneratorSpec.explicit(mats, delays)


def random_samples(rng: np.random.Generator, ring: Ring, n: int, bound: int = 3) -> list[Scalar]:
    """``n`` random small-coordinate scalars of ``ring``."""
    if not ring.exact:
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        return [Scalar.complex(v.real, v.imag) for v in z]
    coords = rng.integers(-bound, bound + 1, size=(n, ring.dim))
    return [Scalar(ring, tuple(int(c) for c in row)) for row in coords]
