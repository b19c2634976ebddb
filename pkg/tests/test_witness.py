import math
import random
from fractions import Fraction

import numpy as np
import pytest

from ghzsep.exactmath import random_unit_rationals
from ghzsep.oracle import dense_witness
from ghzsep.witness import (
    canonical_witness,
    gamma_diagonal,
    ghz_witness_value,
    m_matrix_L2,
    necessary_threshold,
    sep_max,
    witness_sum,
)


def random_bloch(rng, count):
    out = []
    for _ in range(count):
        v = rng.standard_normal(3)
        v /= np.linalg.norm(v)
        out.append(tuple(v))
    return out


def contracted_block(n, L, bloch):
    """Oracle: contract the dense witness onto the L-qubit block."""
    q = np.array([[float(v) for v in row] for row in dense_witness(n, L)], dtype=complex)
    qt = q.reshape(1 << (n - L), 1 << L, 1 << (n - L), 1 << L)
    kets = []
    for x, y, z in bloch:
        theta = np.arccos(np.clip(float(z), -1, 1))
        phi = np.arctan2(float(y), float(x))
        kets.append(np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)]))
    s = kets[0]
    for k in kets[1:]:
        s = np.kron(s, k)
    return np.einsum("i,iajb,j->ab", s.conj(), qt, s)


class TestCanonicalWitness:
    def test_five_qubits(self):
        assert canonical_witness(5, 2).m == (Fraction(-1, 3), Fraction(1))

    def test_six_qubits_big_block(self):
        assert canonical_witness(6, 4).m == (-1, 1, 3)

    def test_four_qubits(self):
        assert canonical_witness(4, 2).m == (0, 2)

    def test_block_range_enforced(self):
        with pytest.raises(ValueError):
            canonical_witness(4, 1)
        with pytest.raises(ValueError):
            canonical_witness(4, 4)


class TestWitnessSum:
    def test_examples(self):
        assert witness_sum(canonical_witness(5, 2)) == Fraction(5, 3)
        assert witness_sum(canonical_witness(6, 4)) == 3
        assert witness_sum(canonical_witness(4, 2)) == 2

    def test_closed_form_everywhere(self):
        for n in range(3, 31):
            for L in range(2, n):
                assert witness_sum(canonical_witness(n, L)) == Fraction(n, n - L)


class TestGhzValue:
    def test_three_qubit_threshold_saturates(self):
        w = canonical_witness(3, 2)
        assert ghz_witness_value(w, Fraction(3, 7)) == 3 == sep_max(3, 2)

    def test_zero_weight(self):
        assert ghz_witness_value(canonical_witness(5, 2), 0) == 0

    def test_six_qubit_threshold_saturates(self):
        w = canonical_witness(6, 4)
        assert ghz_witness_value(w, Fraction(3, 35)) == 3 == sep_max(6, 4)


class TestBounds:
    def test_sep_max_values(self):
        assert sep_max(3, 2) == 3
        assert sep_max(6, 4) == 3
        assert sep_max(12, 2) == Fraction(6, 5)

    def test_necessary_threshold_values(self):
        assert necessary_threshold(3, 2) == Fraction(3, 7)
        assert necessary_threshold(6, 4) == Fraction(3, 35)
        assert necessary_threshold(5, 4) == Fraction(5, 21)

    def test_threshold_closed_form(self):
        for n in range(3, 16):
            for L in range(2, n):
                want = Fraction(1, 1 + Fraction(n - L, n) * 2 ** (n - 1))
                assert necessary_threshold(n, L) == want


class TestTwoQubitBlockForm:
    def test_equatorial_configuration(self):
        n = 6
        bloch = [(1.0, 0.0, 0.0)] * (n - 2)
        params = m_matrix_L2(n, bloch)
        assert params.a0 == 0
        assert params.a1 == Fraction(4 - n, n - 2)
        assert params.b == 0
        assert params.c == pytest.approx(1.0)
        assert params.d == pytest.approx(0.0)
        assert max(params.closed_form_eigenvalues()) == pytest.approx(float(sep_max(n, 2)))

    def test_polar_configuration_stays_bounded(self):
        for n in (4, 5, 6, 7):
            params = m_matrix_L2(n, [(0.0, 0.0, 1.0)] * (n - 2))
            assert params.c == pytest.approx(0.0) and params.d == pytest.approx(0.0)
            assert max(params.closed_form_eigenvalues()) <= float(sep_max(n, 2)) + 1e-12

    def test_closed_form_matches_dense_eigensolver(self):
        rng = np.random.default_rng(20240502)
        for _ in range(1000):
            n = int(rng.integers(3, 9))
            params = m_matrix_L2(n, random_bloch(rng, n - 2))
            closed = np.sort(params.closed_form_eigenvalues())
            dense = np.sort(np.linalg.eigvalsh(params.dense()))
            assert np.max(np.abs(closed - dense)) < 1e-12

    def test_matches_block_contraction(self):
        rng = np.random.default_rng(11)
        for n in (4, 5, 6):
            bloch = random_bloch(rng, n - 2)
            params = m_matrix_L2(n, bloch)
            assert np.allclose(contracted_block(n, 2, bloch), params.dense(), atol=1e-9)

    def test_unit_norm_enforced(self):
        with pytest.raises(ValueError):
            m_matrix_L2(4, [(1.0, 0.0, 0.0), (0.5, 0.5, 0.5)])
        with pytest.raises(ValueError):
            m_matrix_L2(4, [(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))] * 2)

    def test_exact_rational_sphere_point_accepted(self):
        params = m_matrix_L2(4, [(Fraction(3, 5), 0, Fraction(4, 5))] * 2)
        assert isinstance(params.a0, Fraction)


class TestSectorDiagonal:
    def test_zero_z_values(self):
        for n, L in [(5, 3), (6, 4), (7, 4), (8, 5)]:
            g = gamma_diagonal(n, L, (Fraction(0),) * (n - L))
            s = sep_max(n, L)
            assert g.gamma[1] == s - Fraction(2 ** (L - 1), n - L)
            assert all(g.gamma[l] == s for l in range(2, L - 1))

    def test_aligned_z_values(self):
        n, L = 7, 4
        g = gamma_diagonal(n, L, (1, 1, 1))
        s = sep_max(n, L)
        assert g.gamma[1] == s - Fraction(2 ** (L - 1) * 2 ** (n - L), n - L)
        assert g.gamma[L - 1] == s  # the opposite edge sees prod(1 - z) = 0

    def test_reduces_to_two_qubit_form(self):
        rng = random.Random(99)
        for n in (4, 5, 6, 7):
            z = random_unit_rationals(rng, n - 2)
            g = gamma_diagonal(n, 2, z)
            bloch = []
            for zz in z:
                r = math.sqrt(max(0.0, 1 - float(zz) ** 2))
                bloch.append((r, 0.0, zz))
            params = m_matrix_L2(n, bloch)
            assert g.gamma[1] == params.a0 - params.a1
            assert g.gamma[0] == params.a0 + params.a1 + 2 * params.b
            assert g.gamma[2] == params.a0 + params.a1 - 2 * params.b

    def test_edge_sector_product_forms(self):
        rng = random.Random(4)
        for n, L in [(5, 3), (6, 4), (7, 5), (8, 4)]:
            z = random_unit_rationals(rng, n - L)
            g = gamma_diagonal(n, L, z)
            s = sep_max(n, L)
            scale = Fraction(2 ** (L - 1), n - L)
            plus = math.prod((1 + x for x in z), start=Fraction(1))
            minus = math.prod((1 - x for x in z), start=Fraction(1))
            assert g.gamma[1] == s - scale * plus
            assert g.gamma[L - 1] == s - scale * minus
            assert g.gamma[0] == s + 2 ** (L - 1) * (g.corner_a + g.corner_b)
            assert g.gamma[L] == s + 2 ** (L - 1) * (g.corner_a - g.corner_b)

    def test_matches_dense_contraction(self):
        rng = np.random.default_rng(12)
        for n, L in [(4, 2), (5, 3), (6, 3), (6, 4), (7, 4)]:
            z = [Fraction(int(rng.integers(-8, 9)), 8) for _ in range(n - L)]
            bloch = []
            for zz in z:
                phi = float(rng.uniform(0, 2 * np.pi))
                r = math.sqrt(1 - float(zz) ** 2)
                bloch.append((r * math.cos(phi), r * math.sin(phi), float(zz)))
            m = contracted_block(n, L, bloch)
            g = gamma_diagonal(n, L, z)
            diag = np.real(np.diag(m))
            expected = np.array(
                [float(g.gamma[bin(i).count('1')]) for i in range(1 << L)]
            )
            assert np.allclose(diag, expected, atol=1e-9)
            corner = m[0, (1 << L) - 1]
            assert abs(corner) ** 2 <= float(g.corner_abs2_max) + 1e-9

    def test_bound_sweep(self):
        rng = random.Random(77)
        for _ in range(300):
            n = rng.randint(4, 9)
            L = rng.randint(2, n - 1)
            z = random_unit_rationals(rng, n - L)
            g = gamma_diagonal(n, L, z)
            s = sep_max(n, L)
            assert all(x <= s for x in g.gamma)
            assert g.max_eig_at_most(s)

    def test_equality_attained_at_zero(self):
        for n, L in [(4, 2), (5, 3), (6, 4)]:
            g = gamma_diagonal(n, L, (Fraction(0),) * (n - L))
            assert g.corner_reaches(sep_max(n, L))

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            gamma_diagonal(5, 3, (Fraction(3, 2), Fraction(0)))
        with pytest.raises(ValueError):
            gamma_diagonal(5, 3, (Fraction(0),))

    def test_serialization(self):
        d = gamma_diagonal(5, 3, (Fraction(0), Fraction(1, 2))).as_dict()
        assert d["n"] == 5 and d["L"] == 3
        assert isinstance(d["gamma"], list) and len(d["gamma"]) == 4
        d2 = m_matrix_L2(4, [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0)]).as_dict()
        assert d2["a0"] == pytest.approx(0.0) and isinstance(d2["c"], float)
