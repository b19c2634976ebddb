"""The stabilizer witness family and its restriction to one party.

The witness Q is a weighted sum of GHZ stabilizer elements whose
coefficients depend only on how many Z-pair generators appear; grouping
pairs of counts into a single coefficient M_i leaves one free vector
M_1..M_{floor(n/2)}.  For product states that keep a distinguished block
of L qubits intact, tr(rho Q) is a quadratic form in the block state; this
module computes that form's parameters and the resulting separability
bounds, entirely through characteristic-function sums (Q is never
materialized here; the oracle module builds it densely as a cross-check).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactmath import binomial, elem_sym, w_coeff

_UNIT_TOL = 1e-9


@dataclass(frozen=True)
class WitnessSpec:
    """Coefficient vector M_1..M_{floor(n/2)} for a block of size L."""

    n: int
    L: int
    m: tuple


def canonical_witness(n: int, L: int) -> WitnessSpec:
    """The choice M_i = (4i - n)/(n - L) that makes the block bound tight."""
    if not 2 <= L <= n - 1:
        raise ValueError(f"need 2 <= L <= n - 1, got n={n}, L={L}")
    return WitnessSpec(n, L, tuple(Fraction(4 * i - n, n - L) for i in range(1, n // 2 + 1)))


def witness_sum(w: WitnessSpec) -> Fraction:
    """sum_i M_i C(n, 2i); equals n/(n - L) for the canonical witness."""
    return sum(
        (w.m[i - 1] * binomial(w.n, 2 * i) for i in range(1, w.n // 2 + 1)),
        start=Fraction(0),
    )


def ghz_witness_value(w: WitnessSpec, p) -> Fraction:
    """tr(rho Q) on the noisy GHZ state with GHZ weight p."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"need 0 <= p <= 1, got {p}")
    return p * (witness_sum(w) + 2 ** (w.n - 1))


def sep_max(n: int, L: int) -> Fraction:
    """Maximum of tr(rho Q) over states separable for the partition with
    n - L single qubits and one L-qubit party: n/(n - L)."""
    if not 2 <= L <= n - 1:
        raise ValueError(f"need 2 <= L <= n - 1, got n={n}, L={L}")
    return Fraction(n, n - L)


def necessary_threshold(n: int, L: int) -> Fraction:
    """Largest p compatible with separability for the 1^(n-L)|L partition."""
    w = canonical_witness(n, L)
    return sep_max(n, L) / (witness_sum(w) + 2 ** (n - 1))


@dataclass(frozen=True, eq=False)
class MMatrixParams:
    """Parameters of the witness quadratic form on the distinguished block.

    For a two-qubit block the full operator is
    a0*II + a1*ZZ + b*(IZ + ZI) + c*(XX - YY) - d*(XY + YX), and the
    eigenvalues are a0 + a1 +- 2 sqrt(b^2 + c^2 + d^2) and a0 - a1 (twice).
    For a general block only the longitudinal data is captured: the
    diagonal gamma_0..gamma_L by sector weight, the corner parameters
    (corner_a, corner_b), and the largest squared corner magnitude
    compatible with the given z components.
    """

    n: int
    L: int
    a0: object = None
    a1: object = None
    b: object = None
    c: float = None
    d: float = None
    gamma: tuple = None
    corner_a: Fraction = None
    corner_b: Fraction = None
    corner_abs2_max: Fraction = None

    def closed_form_eigenvalues(self) -> tuple:
        if self.a0 is None:
            raise ValueError("closed-form eigenvalues need the two-qubit data")
        a0, a1, b = float(self.a0), float(self.a1), float(self.b)
        r = math.sqrt(b * b + self.c * self.c + self.d * self.d)
        return (a0 + a1 + 2 * r, a0 + a1 - 2 * r, a0 - a1, a0 - a1)

    def dense(self) -> np.ndarray:
        """Explicit 4x4 matrix of the two-qubit quadratic form."""
        if self.a0 is None:
            raise ValueError("dense form needs the two-qubit data")
        I2 = np.eye(2, dtype=complex)
        X = np.array([[0, 1], [1, 0]], dtype=complex)
        Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
        Z = np.array([[1, 0], [0, -1]], dtype=complex)
        kron = np.kron
        return (
            float(self.a0) * kron(I2, I2)
            + float(self.a1) * kron(Z, Z)
            + float(self.b) * (kron(I2, Z) + kron(Z, I2))
            + self.c * (kron(X, X) - kron(Y, Y))
            - self.d * (kron(X, Y) + kron(Y, X))
        )

    def max_eig_at_most(self, bound) -> bool:
        """Exact check that no block eigenvalue can exceed ``bound``.

        Diagonal sectors are compared directly; the corner 2x2 block has
        max eigenvalue <= bound iff both diagonal entries do and
        (bound - gamma_0)(bound - gamma_L) >= |corner|^2 at the largest
        corner magnitude allowed by the z components.
        """
        if self.gamma is None:
            raise ValueError("sector diagonal not available")
        bound = Fraction(bound)
        if any(g > bound for g in self.gamma):
            return False
        g0, gL = self.gamma[0], self.gamma[-1]
        return (bound - g0) * (bound - gL) >= self.corner_abs2_max

    def corner_reaches(self, bound) -> bool:
        """Exact check that the corner block attains ``bound`` at the
        largest allowed corner magnitude."""
        bound = Fraction(bound)
        g0, gL = self.gamma[0], self.gamma[-1]
        return (
            g0 <= bound
            and gL <= bound
            and (bound - g0) * (bound - gL) == self.corner_abs2_max
        )

    def as_dict(self) -> dict:
        from .exactmath import rat_str

        def render(v):
            if v is None:
                return None
            if isinstance(v, float):
                return v
            return rat_str(v) if isinstance(v, (int, Fraction)) else float(v)

        return {
            "n": self.n,
            "L": self.L,
            "a0": render(self.a0),
            "a1": render(self.a1),
            "b": render(self.b),
            "c": self.c,
            "d": self.d,
            "gamma": None if self.gamma is None else [render(g) for g in self.gamma],
            "corner_a": render(self.corner_a),
            "corner_b": render(self.corner_b),
            "corner_abs2_max": render(self.corner_abs2_max),
        }


def _check_unit(triple):
    x, y, z = triple
    if all(isinstance(v, (int, Fraction)) for v in triple):
        if Fraction(x) ** 2 + Fraction(y) ** 2 + Fraction(z) ** 2 != 1:
            raise ValueError(f"Bloch triple {triple!r} is not unit norm")
    else:
        norm = float(x) ** 2 + float(y) ** 2 + float(z) ** 2
        if abs(norm - 1.0) > _UNIT_TOL:
            raise ValueError(f"Bloch triple {triple!r} is not unit norm")


def m_matrix_L2(n: int, bloch) -> MMatrixParams:
    """Witness quadratic form on a two-qubit block, given the Bloch
    vectors of the n - 2 single qubits.

    a0, a1, b come out of the M-weighted symmetric sums over the
    longitudinal components; c + i d is the product of the transverse
    components x_i + i y_i.  Exact in the z data when the input is
    rational; c and d are floats.
    """
    bloch = list(bloch)
    if len(bloch) != n - 2:
        raise ValueError(f"need {n - 2} Bloch triples, got {len(bloch)}")
    for triple in bloch:
        _check_unit(triple)
    spec = canonical_witness(n, 2)

    def m_at(i):
        return Fraction(0) if i == 0 else spec.m[i - 1]

    z1 = bloch[0][2]
    rest = [t[2] for t in bloch[1:]]
    e = elem_sym(rest)
    a0 = sum(e[m] * z1 ** (m % 2) * m_at((m + 1) // 2) for m in range(len(e)))
    a1 = sum(e[m] * z1 ** (m % 2) * m_at((m + 1) // 2 + 1) for m in range(len(e)))
    b = sum(e[m] * z1 ** (1 - m % 2) * m_at((m + 2) // 2) for m in range(len(e)))
    trans = complex(1, 0)
    for x, y, _ in bloch:
        trans *= complex(float(x), float(y))
    return MMatrixParams(
        n=n,
        L=2,
        a0=a0,
        a1=a1,
        b=b,
        c=trans.real,
        d=trans.imag,
        gamma=(a0 + a1 + 2 * b, a0 - a1, a0 + a1 - 2 * b),
    )


def gamma_diagonal(n: int, L: int, z) -> MMatrixParams:
    """Sector diagonal of the witness quadratic form on an L-qubit block.

    ``z`` holds the longitudinal components of the n - L single qubits.
    The diagonal entry for block states of Hamming weight l is gamma_l,
    obtained by pushing the block's weight-l sector through the
    alternating coefficients w(L, ., l) and the symmetric sums of the z
    components.  gamma_0 and gamma_L sit in the corner block together with
    a transverse corner entry whose squared magnitude is at most
    4^(L-1) prod(1 - z_m^2).
    """
    if not 2 <= L <= n - 1:
        raise ValueError(f"need 2 <= L <= n - 1, got n={n}, L={L}")
    zs = tuple(Fraction(x) for x in z)
    if len(zs) != n - L:
        raise ValueError(f"need {n - L} components, got {len(zs)}")
    if any(x < -1 or x > 1 for x in zs):
        raise ValueError("every component must lie in [-1, 1]")
    spec = canonical_witness(n, L)
    s = elem_sym(zs)
    free = n - L

    def m_at(i):
        return Fraction(0) if i == 0 else spec.m[i - 1]

    gamma = []
    for l in range(L + 1):
        total = sum(
            (m_at(i) * w_coeff(L, 2 * i, l) for i in range(1, L // 2 + 1)),
            start=Fraction(0),
        )
        for m in range(1, (free + 1) // 2 + 1):
            inner = sum(
                (m_at(i + m - 1) * w_coeff(L, 2 * i - 1, l) for i in range(1, (L + 1) // 2 + 1)),
                start=Fraction(0),
            )
            total += s[2 * m - 1] * inner
        for m in range(1, free // 2 + 1):
            inner = sum(
                (m_at(i + m) * w_coeff(L, 2 * i, l) for i in range(0, L // 2 + 1)),
                start=Fraction(0),
            )
            total += s[2 * m] * inner
        gamma.append(total)
    corner_a = (
        sum(
            (Fraction(4 * m - free, free) * s[2 * m] for m in range(1, free // 2 + 1)),
            start=Fraction(0),
        )
        - 1
    )
    corner_b = sum(
        (
            Fraction(4 * m - 2 - free, free) * s[2 * m - 1]
            for m in range(1, (free + 1) // 2 + 1)
        ),
        start=Fraction(0),
    )
    abs2 = Fraction(4) ** (L - 1) * math.prod(
        (1 - x**2 for x in zs), start=Fraction(1)
    )
    return MMatrixParams(
        n=n,
        L=L,
        gamma=tuple(gamma),
        corner_a=corner_a,
        corner_b=corner_b,
        corner_abs2_max=abs2,
    )
