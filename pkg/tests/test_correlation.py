import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pucodes.constellations import dft_matrix, hadamard_sylvester
from pucodes.correlation import (auto_correlation, brute_force_profile, ccc_check,
                                 complementarity_check, cross_correlation)
from pucodes.errors import KindMismatch, ShapeMismatch
from pucodes.generator import (GeneratorSpec, SequenceSet, build_generating_matrix, extract_set,
                               generate_set)
from pucodes.randomspec import random_generator, random_unitary
from pucodes.rings import COMPLEX, EISENSTEIN, GAUSS, Scalar, cyclotomic

C2, C3 = cyclotomic(2), cyclotomic(3)
EXACT = [GAUSS, EISENSTEIN, C3, cyclotomic(8)]


def ints(vals, ring=C2):
    return [ring.from_int(v) for v in vals]


def profile_ints(p):
    return {k: v.as_int() for k, v in p.as_dict().items()}


def example_set(r):
    f = dft_matrix(3).matrix
    return generate_set(GeneratorSpec.standard([f, f, f]), r)


@st.composite
def seqs(draw, ring, min_len=1, max_len=10):
    n = draw(st.integers(min_len, max_len))
    return [Scalar(ring, tuple(draw(st.integers(-5, 5)) for _ in range(ring.dim)))
            for _ in range(n)]


# ---- worked examples --------------------------------------------------------

def test_cross_correlation_examples():
    # value at shift k = sum_n conj(x(n)) y(n + k)
    p = cross_correlation(ints([1, 1]), ints([1, -1]))
    assert profile_ints(p) == {-1: 1, 1: -1}
    assert p[0].is_zero()
    assert profile_ints(cross_correlation(ints([1, 1]), ints([1, 1]))) == {-1: 1, 0: 2, 1: 1}
    assert profile_ints(cross_correlation(ints([1]), ints([1]))) == {0: 1}


def test_mirrored_reading_of_listed_values():
    """The listed values {-1: -1, +1: 1} and {-1: i, +1: -i} are the same
    profiles read at -k."""
    p = cross_correlation(ints([1, 1]), ints([1, -1]))
    assert p[1].as_int() == -1 and p[-1].as_int() == 1
    g = [GAUSS.one(), Scalar.gauss(0, 1)]
    q = cross_correlation(g, g)
    assert q[-1] == Scalar.gauss(0, -1) and q[1] == Scalar.gauss(0, 1)


def test_auto_correlation_examples():
    assert profile_ints(auto_correlation(ints([1, -1]))) == {-1: -1, 0: 2, 1: -1}
    w = C3.root_of_unity(1)
    chirp = [C3.one(), w, w * w]
    p = auto_correlation(chirp)
    assert p[0] == C3.from_int(3)
    for k in (1, 2):
        assert p[-k] == p[k].conj()
        assert not p[k].is_zero()
    assert p == brute_force_profile(chirp, chirp)
    assert auto_correlation([w]).as_dict() == {0: C3.one()}


def test_brute_force_examples():
    g = [GAUSS.one(), Scalar.gauss(0, 1)]
    p = brute_force_profile(g, g)
    assert p.as_dict() == {-1: Scalar.gauss(0, -1), 0: Scalar.gauss(2), 1: Scalar.gauss(0, 1)}
    assert p[2].is_zero() and p[-5].is_zero()
    assert list(p.shifts()) == [-1, 0, 1]


def test_brute_force_matches_floats(rng):
    worst = 0.0
    for _ in range(1000):
        lx, ly = rng.integers(1, 65, size=2)
        x = [Scalar.complex(*v) for v in rng.standard_normal((lx, 2))]
        y = [Scalar.complex(*v) for v in rng.standard_normal((ly, 2))]
        a, b = cross_correlation(x, y), brute_force_profile(x, y)
        for k in range(-lx + 1, ly):
            worst = max(worst, abs(a[k].to_complex() - b[k].to_complex()))
    assert worst <= 1e-12


def test_kind_mismatch():
    with pytest.raises(KindMismatch):
        cross_correlation(ints([1]), [GAUSS.one()])
    with pytest.raises(KindMismatch):
        brute_force_profile(ints([1]), [GAUSS.one()])


def test_complementarity_examples():
    rep = complementarity_check(SequenceSet.from_sequences([ints([1, 1]), ints([1, -1])]))
    assert rep.passed and rep.constant.as_int() == 4 and rep.worst_violation == 0
    rep = complementarity_check(example_set(0))
    assert rep.passed and rep.constant.as_int() == 27
    rep = complementarity_check(SequenceSet.from_sequences([ints([1, 1]), ints([1, 1])]))
    assert not rep.passed
    assert rep.worst_violation == 2 and abs(rep.worst_shift) == 1
    assert "FAIL" in rep.summary()


def test_ccc_examples():
    rep = ccc_check([example_set(r) for r in range(3)])
    assert rep.passed and rep.constant.as_int() == 27
    golay = build_generating_matrix(GeneratorSpec.standard([hadamard_sylvester(1).matrix] * 2))
    cols = [extract_set(golay, r, axis="column") for r in range(2)]
    assert ccc_check(cols).passed
    dup = ccc_check([cols[0], cols[0]])
    assert not dup.passed
    assert dup.worst_pair in {(0, 1), (1, 0)} and dup.worst_shift == 0
    assert dup.worst_violation == 4


def test_ccc_brute_force_pairs():
    """Cross-check the Gram-based check against the scalar oracle."""
    sets = [example_set(r) for r in range(3)]
    for p in range(3):
        for q in range(3):
            total = {}
            for m in range(3):
                prof = brute_force_profile(sets[p].sequence(m), sets[q].sequence(m))
                for k, v in prof.as_dict().items():
                    total[k] = total.get(k, C3.zero()) + v
            nonzero = {k: v for k, v in total.items() if not v.is_zero()}
            assert nonzero == ({0: C3.from_int(27)} if p == q else {})


def test_ccc_shape_mismatch():
    a = SequenceSet.from_sequences([ints([1, 1]), ints([1, -1])])
    b = SequenceSet.from_sequences([ints([1, 1, 1]), ints([1, -1, 1])])
    with pytest.raises(ShapeMismatch):
        ccc_check([a, b])
    with pytest.raises(ShapeMismatch):
        ccc_check([])


def test_float_tolerance_report():
    f = dft_matrix(4).matrix.convert(COMPLEX)
    s = generate_set(GeneratorSpec.standard([f, f, f]), 1)
    noisy = SequenceSet(COMPLEX, s.coords + 1e-7)
    rep = complementarity_check(noisy)
    assert not rep.passed and rep.worst_violation > 1e-9
    assert complementarity_check(noisy, tol=1e-3).passed
    # the relative form scales by L * peak^2
    assert complementarity_check(noisy, tol=1e-7, scale=True).passed
    d = rep.to_dict()
    assert d["passed"] is False and d["worst_shift"] == rep.worst_shift


# ---- properties -------------------------------------------------------------

@given(st.sampled_from(EXACT).flatmap(lambda r: st.tuples(seqs(r), seqs(r))))
def test_oracle_equivalence(xy):
    x, y = xy
    assert cross_correlation(x, y) == brute_force_profile(x, y)


@given(st.sampled_from(EXACT).flatmap(seqs))
def test_autocorrelation_symmetry_and_energy(x):
    p = auto_correlation(x)
    for k in range(-len(x) + 1, len(x)):
        assert p[-k] == p[k].conj()
    energy = sum((v.msq() for v in x), x[0].ring.zero())
    assert p[0] == energy


@pytest.mark.parametrize("case", range(25))
def test_generated_sets_complementary(rng, case):
    m = int(rng.integers(2, 5))
    g = random_generator(rng, m, int(rng.integers(1, 4)), standard=bool(case % 2))
    mgen = build_generating_matrix(g)
    c = g.constant.to_complex()
    for axis in ("row", "column"):
        sets = [extract_set(mgen, r, axis=axis, length=g.length) for r in range(m)]
        for s in sets:
            rep = complementarity_check(s, scale=True)
            assert rep.passed
            assert abs(rep.constant.to_complex() - c) <= 1e-9 * abs(c)
        assert ccc_check(sets, scale=True).passed


@pytest.mark.parametrize("case", range(15))
def test_shift_invariance(rng, case):
    """Delaying one sequence (zeros in front, others padded at the end)
    keeps the set complementary with the same constant."""
    m = int(rng.integers(2, 5))
    ring = [GAUSS, C3, cyclotomic(2 * m)][case % 3]
    try:
        g = random_generator(rng, m, int(rng.integers(1, 3)), ring=ring)
    except ValueError:
        g = random_generator(rng, m, int(rng.integers(1, 3)), ring=cyclotomic(m))
    s = generate_set(g, 0)
    j, delay = int(rng.integers(m)), int(rng.integers(1, 6))
    coords = s.ring.zeros((m, s.length + delay)).astype(s.coords.dtype)
    coords[:, :s.length] = s.coords
    coords[j] = 0
    coords[j, delay:] = s.coords[j]
    rep = complementarity_check(SequenceSet(s.ring, coords))
    assert rep.passed and rep.constant == g.constant


@pytest.mark.parametrize("case", range(15))
def test_unitary_invariance(rng, case):
    m = int(rng.integers(2, 5))
    g = random_generator(rng, m, 2)
    s = generate_set(g, int(rng.integers(m)))
    v = random_unitary(rng, m, g.ring)
    vm = v.coeffs[:, :, 0]
    mixed = g.ring.mul(vm[:, :, None, :], s.coords[None]).sum(axis=1)
    rep = complementarity_check(SequenceSet(g.ring, mixed), scale=True)
    assert rep.passed
    from pucodes.zpoly import is_paraunitary
    cv = is_paraunitary(v)[1].to_complex()
    assert abs(rep.constant.to_complex() - cv * g.constant.to_complex()) <= 1e-9 * abs(cv) * 1e3
