"""Catalog of unitary matrices and their equivalence transforms.

Every catalog entry is validated with :func:`is_paraunitary` when it is
built, so a stored constant ``C`` is always one the oracle agrees with.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidSpec, KindMismatch, NonUnitPhase, OutOfRange
from .rings import DEFAULT_TOL, EISENSTEIN, GAUSS, Ring, Scalar, cyclotomic
from .zpoly import PolyMatrix, is_paraunitary

__all__ = [
    "UnitaryCatalogEntry",
    "CATALOG_NAMES",
    "dft_matrix",
    "hadamard_sylvester",
    "paper_qam_matrix",
    "paper_eisenstein_matrix",
    "equivalence_transform",
    "catalog_lookup",
    "is_unit_phase",
]


@dataclass(frozen=True, eq=False)
class UnitaryCatalogEntry:
    """A constant unitary matrix with ``U . U^H = C I``."""

    name: str
    m: int
    ring: Ring
    matrix: PolyMatrix
    constant: Scalar

    @classmethod
    def validated(cls, name: str, matrix: PolyMatrix, tol: float = DEFAULT_TOL) -> "UnitaryCatalogEntry":
        if not matrix.is_constant():
            raise InvalidSpec(f"{name}: catalog matrices must be constant")
        ok, c = is_paraunitary(matrix, tol)
        if not ok:
            raise InvalidSpec(f"{name}: matrix is not unitary")
        return cls(name, matrix.size, matrix.ring, matrix, c)

    def rows(self) -> list[list[Scalar]]:
        return self.matrix.constant_rows()


def dft_matrix(m: int) -> UnitaryCatalogEntry:
    """``F[p, q] = z**(p q)`` with ``z`` a primitive ``m``-th root of unity,
    stored exactly in the cyclotomic ring of order ``m``; ``C = m``."""
    if m < 1:
        raise OutOfRange(f"DFT size must be >= 1, got {m}")
    ring = cyclotomic(m)
    rows = [[ring.root_of_unity(p * q) for q in range(m)] for p in range(m)]
    return UnitaryCatalogEntry.validated(f"dft{m}", PolyMatrix.constant(rows, ring))


def hadamard_sylvester(m: int, ring: Ring | None = None) -> UnitaryCatalogEntry:
    """Sylvester–Hadamard matrix of size ``2**m`` (``H_2n = H_2 (x) H_n``).

    Entries are +-1 in ``ring`` (default: cyclotomic order 2, i.e. the
    integers); ``C = 2**m``.
    """
    if m < 0:
        raise OutOfRange(f"Hadamard order must be >= 0, got {m}")
    ring = ring or cyclotomic(2)
    h = [[1]]
    for _ in range(m):
        h = [row + row for row in h] + [row + [-v for v in row] for row in h]
    rows = [[ring.from_int(v) for v in row] for row in h]
    return UnitaryCatalogEntry.validated(f"hadamard{2**m}", PolyMatrix.constant(rows, ring))


def paper_qam_matrix() -> UnitaryCatalogEntry:
    """3x3 unitary matrix over Gaussian integers (QAM alphabet), ``C = 16``."""
    g = Scalar.gauss
    rows = [[g(2, 2), g(2), g(2)],
            [g(2), g(-1, 3), g(-1, -1)],
            [g(2), g(-1, -1), g(-1, 3)]]
    return UnitaryCatalogEntry.validated("qam3-paper", PolyMatrix.constant(rows, GAUSS))


def paper_eisenstein_matrix() -> UnitaryCatalogEntry:
    """3x3 unitary matrix over Eisenstein integers (hexagonal alphabet), ``C = 12``."""
    e = Scalar.eisenstein
    rows = [[e(2), e(2), e(2)],
            [e(2), e(-2, 1), e(0, -1)],
            [e(2), e(0, -1), e(-2, 1)]]
    return UnitaryCatalogEntry.validated("eisenstein3-paper", PolyMatrix.constant(rows, EISENSTEIN))


# --------------------------------------------------------------------------

def is_unit_phase(p: Scalar, tol: float = DEFAULT_TOL) -> bool:
    """Exact kinds: ``p`` must be a root of unity of the ring (``+-z**e``).
    Complex floats: ``| |p| - 1 | <= tol``."""
    ring = p.ring
    if not ring.exact:
        return abs(abs(p.to_complex()) - 1.0) <= tol
    if p.msq() != ring.one():
        return False
    n = ring.cyclo_order
    for e in range(n):
        z = ring.root_of_unity(e)
        if p == z or p == -z:
            return True
    return False


def _perm(p: Sequence[int] | None, m: int, what: str) -> list[int]:
    if p is None:
        return list(range(m))
    p = [int(x) for x in p]
    if sorted(p) != list(range(m)):
        raise InvalidSpec(f"{what} {p} is not a permutation of 0..{m - 1}")
    return p


def _phases(ph: Sequence[Scalar] | None, m: int, ring: Ring, tol: float, what: str) -> list[Scalar]:
    if ph is None:
        return [ring.one()] * m
    ph = list(ph)
    if len(ph) != m:
        raise InvalidSpec(f"{len(ph)} {what} for size {m}")
    for v in ph:
        if v.ring != ring:
            raise KindMismatch(f"{v.ring.name} phase for a {ring.name} matrix")
        if not is_unit_phase(v, tol):
            raise NonUnitPhase(f"{v!r} is not a unit phase in {ring.name}")
    return ph


def equivalence_transform(u: UnitaryCatalogEntry | PolyMatrix,
                          row_perm: Sequence[int] | None = None,
                          col_perm: Sequence[int] | None = None,
                          row_phases: Sequence[Scalar] | None = None,
                          col_phases: Sequence[Scalar] | None = None,
                          tol: float = DEFAULT_TOL) -> UnitaryCatalogEntry:
    """Permute and phase-shift rows and columns.

    The result is ``V[i, j] = row_phases[i] . U[row_perm[i], col_perm[j]] . col_phases[j]``.
    ``None`` means the identity for that component.
    """
    if isinstance(u, PolyMatrix):
        u = UnitaryCatalogEntry.validated("matrix", u, tol)
    ring, m = u.ring, u.m
    rp = _perm(row_perm, m, "row permutation")
    cp = _perm(col_perm, m, "column permutation")
    rph = _phases(row_phases, m, ring, tol, "row phases")
    cph = _phases(col_phases, m, ring, tol, "column phases")
    src = u.rows()
    rows = [[rph[i] * src[rp[i]][cp[j]] * cph[j] for j in range(m)] for i in range(m)]
    return UnitaryCatalogEntry.validated(f"{u.name}~", PolyMatrix.constant(rows, ring), tol)


CATALOG_NAMES = ("dft", "hadamard", "qam3-paper", "eisenstein3-paper")


def catalog_lookup(name: str, m: int | None = None) -> UnitaryCatalogEntry:
    """Catalog entry by name; ``dft`` and ``hadamard`` need the size ``m``
    (a power of two for ``hadamard``)."""
    if name == "dft":
        if m is None:
            raise InvalidSpec("'dft' needs a matrix size")
        return dft_matrix(m)
    if name == "hadamard":
        if m is None or m < 1 or m & (m - 1):
            raise InvalidSpec(f"'hadamard' needs a power-of-two size, got {m}")
        return hadamard_sylvester(m.bit_length() - 1)
    if name == "qam3-paper":
        entry = paper_qam_matrix()
    elif name == "eisenstein3-paper":
        entry = paper_eisenstein_matrix()
    else:
        raise InvalidSpec(f"unknown catalog matrix {name!r}; known: {', '.join(CATALOG_NAMES)}")
    if m is not None and m != entry.m:
        raise InvalidSpec(f"{name!r} is {entry.m}x{entry.m}, spec asks for M={m}")
    return entry
