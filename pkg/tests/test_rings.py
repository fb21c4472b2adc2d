import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pucodes.errors import KindMismatch
from pucodes.rings import (COMPLEX, EISENSTEIN, GAUSS, INT64_SAFE, Ring, Scalar, _reduce,
                           cyclotomic, cyclotomic_basis, embed_complex, ring_from_name)

EXACT_RINGS = [GAUSS, EISENSTEIN] + [cyclotomic(n) for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15)]

small = st.integers(-50, 50)


@st.composite
def exact_scalars(draw, ring):
    return Scalar(ring, tuple(draw(small) for _ in range(ring.dim)))


@st.composite
def triples(draw):
    ring = draw(st.sampled_from(EXACT_RINGS))
    return ring, draw(exact_scalars(ring)), draw(exact_scalars(ring)), draw(exact_scalars(ring))


# ---- worked examples --------------------------------------------------------

def test_add_examples():
    assert Scalar.gauss(2, 2) + Scalar.gauss(-1, -1) == Scalar.gauss(1, 1)
    c3 = cyclotomic(3)
    total = c3.root_of_unity(0) + c3.root_of_unity(1) + c3.root_of_unity(2)
    assert total.is_zero()
    assert Scalar.complex(0.5) + Scalar.complex(0.5) == Scalar.complex(1.0)


def test_mul_examples():
    assert Scalar.gauss(2, 2) * Scalar.gauss(-1, -1) == Scalar.gauss(0, -4)
    w = Scalar.eisenstein(0, 1)
    assert w * w == Scalar.eisenstein(-1, -1)
    z = cyclotomic(4).root_of_unity(1)
    assert z * z == cyclotomic(4).from_int(-1)


def test_conj_examples():
    assert Scalar.gauss(-1, 3).conj() == Scalar.gauss(-1, -3)
    assert Scalar.eisenstein(0, 1).conj() == Scalar.eisenstein(-1, -1)
    assert Scalar.cyclo(3, [0, 1]).conj() == Scalar.cyclo(3, [-1, -1])
    # general Eisenstein rule a + b w -> (a - b) - b w
    assert Scalar.eisenstein(5, 3).conj() == Scalar.eisenstein(2, -3)


def test_msq_examples():
    assert Scalar.gauss(-1, 3).msq() == Scalar.gauss(10)
    assert Scalar.eisenstein(-2, 1).msq() == Scalar.eisenstein(7)
    assert Scalar.complex(0, 1).msq() == Scalar.complex(1)
    # cross-check the hand values through the numeric embedding
    assert abs(Scalar.eisenstein(-2, 1).to_complex()) ** 2 == pytest.approx(7)


@pytest.mark.parametrize("n, phi", [
    (1, (-1, 1)),
    (2, (1, 1)),
    (3, (1, 1, 1)),
    (4, (1, 0, 1)),
    (6, (1, -1, 1)),
    (12, (1, 0, -1, 0, 1)),
])
def test_cyclotomic_polynomials(n, phi):
    assert cyclotomic_basis(n).phi == phi


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_basis_divides(n):
    """phi_N is monic, has degree Euler-phi(N) and divides x^N - 1: its
    roots are exactly the primitive N-th roots of unity."""
    phi = cyclotomic_basis(n).phi
    assert phi[-1] == 1
    assert len(phi) - 1 == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
    roots = np.roots(phi[::-1]) if len(phi) > 1 else []
    for r in roots:
        assert abs(r ** n - 1) < 1e-8
        k = round(cmath.phase(r) / (2 * math.pi) * n) % n
        assert math.gcd(k, n) == 1


def test_embed_examples():
    assert embed_complex(Scalar.gauss(1, 1)) == Scalar.complex(1.0, 1.0)
    w = embed_complex(Scalar.eisenstein(0, 1)).to_complex()
    assert w == pytest.approx(complex(-0.5, math.sqrt(3) / 2))
    z = embed_complex(cyclotomic(4).root_of_unity(1)).to_complex()
    assert z == pytest.approx(1j)


def test_kind_mismatch():
    with pytest.raises(KindMismatch):
        Scalar.gauss(1, 1) + Scalar.eisenstein(1, 1)
    with pytest.raises(KindMismatch):
        Scalar.cyclo(3, [1]) * Scalar.cyclo(6, [1])
    with pytest.raises(KindMismatch):
        Scalar.gauss(1) * Scalar.complex(1.0)


def test_explicit_conversion():
    # Gauss -> cyclo4 and Eisenstein -> cyclo3 are allowed, not implicit
    assert Scalar.gauss(2, -3).to_ring(cyclotomic(4)) == Scalar.cyclo(4, [2, -3])
    assert Scalar.eisenstein(1, 2).to_ring(cyclotomic(3)) == Scalar.cyclo(3, [1, 2])
    assert Scalar.cyclo(3, [0, 1]).to_ring(cyclotomic(6)) == cyclotomic(6).root_of_unity(2)
    with pytest.raises(KindMismatch):
        Scalar.gauss(0, 1).to_ring(EISENSTEIN)
    assert Scalar.gauss(0, 1).to_ring(COMPLEX).to_complex() == pytest.approx(1j)


def test_integer_constants():
    a = Scalar.gauss(1, 2)
    assert a * 3 == Scalar.gauss(3, 6) == 3 * a
    assert a - 1 == Scalar.gauss(0, 2)
    assert (a ** 0) == GAUSS.one()
    assert a ** 3 == a * a * a


@pytest.mark.parametrize("obj", [
    {"kind": "gauss", "a": 2, "b": 2},
    {"kind": "eisenstein", "a": -2, "b": 1},
    {"kind": "cyclo", "n": 3, "c": [0, 1, 0]},
    {"kind": "complex", "re": 1.0, "im": 0.0},
    {"kind": "gauss", "a": 2**80 + 1, "b": -(2**70)},
])
def test_json_round_trip(obj):
    s = Scalar.from_json(obj)
    assert s.to_json() == obj


def test_json_rejects_extra_keys():
    with pytest.raises(ValueError):
        Scalar.from_json({"kind": "gauss", "a": 1, "b": 2, "c": 3})
    with pytest.raises(ValueError):
        Scalar.from_json({"kind": "gauss", "a": 1.5, "b": 2})


def test_ring_names():
    for ring in EXACT_RINGS + [COMPLEX]:
        assert ring_from_name(ring.name) == ring
    with pytest.raises(ValueError):
        ring_from_name("quaternion")


def test_big_integers_promote():
    ring = GAUSS
    a = ring.asarray(np.array([[INT64_SAFE, 1]], dtype=object))
    b = ring.asarray(np.array([[INT64_SAFE, -1]], dtype=object))
    prod = ring.mul(a, b)
    expect = Scalar.gauss(INT64_SAFE, 1) * Scalar.gauss(INT64_SAFE, -1)
    assert tuple(int(v) for v in prod[0]) == expect.coords
    assert expect.coords == (INT64_SAFE ** 2 + 1, 0)


# ---- properties -------------------------------------------------------------

@given(triples())
def test_ring_axioms(t):
    _, a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a


@given(triples())
def test_conj_involution_and_homomorphism(t):
    _, a, b, _ = t
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()


@given(triples())
def test_msq_zero_iff_zero(t):
    ring, a, _, _ = t
    assert a.msq().is_zero() == a.is_zero()
    if not a.is_zero():
        assert a.msq().to_complex().real > 0


@given(triples())
def test_embedding_is_homomorphism(t):
    _, a, b, _ = t
    lhs = (a * b).to_complex()
    rhs = a.to_complex() * b.to_complex()
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


@given(st.integers(1, 30), st.lists(st.integers(-20, 20), min_size=0, max_size=40))
def test_reduction_idempotent(n, coeffs):
    once = _reduce(coeffs, n)
    assert _reduce(once, n) == once
    assert len(once) == cyclotomic_basis(n).degree
    # reduction does not change the value
    z = cmath.exp(2j * math.pi / n)
    direct = sum(c * z ** k for k, c in enumerate(coeffs))
    assert abs(Scalar.cyclo(n, coeffs).to_complex() - direct) < 1e-9 * max(1, len(coeffs)) * 20


@given(st.integers(1, 24), st.integers(-50, 50), st.integers(-50, 50))
def test_root_of_unity_powers(n, e, f):
    ring = cyclotomic(n)
    assert ring.root_of_unity(e) * ring.root_of_unity(f) == ring.root_of_unity(e + f)
    assert ring.root_of_unity(e).conj() == ring.root_of_unity(-e)
