"""Exact combinatorics underneath the separability thresholds.

Everything in this module is exact: binomial coefficients on big integers,
elementary symmetric polynomials over the rationals, the alternating
coefficients that couple a witness block to the Hamming-weight sectors,
and sweep verifiers for the identities and inequalities the threshold
constructions rely on.  No floating point anywhere.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

#: Exact rational scalar.  ``fractions.Fraction`` already guarantees the
#: invariants we need: lowest terms, positive denominator, arbitrary
#: precision integer arithmetic that never rounds.
Rat = Fraction

#: Elementary symmetric polynomial values (S_0, ..., S_m) with S_0 = 1.
SymPolyVector = tuple


def binomial(n: int, k: int) -> int:
    """C(n, k) with the convention C(n, k) = 0 for k < 0 or k > n.

    The zero convention lets alternating binomial sums be written without
    explicit summation bounds.
    """
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def elem_sym(z: Sequence) -> SymPolyVector:
    """Elementary symmetric polynomials (S_0, ..., S_m) of the inputs.

    S_i is the sum over all i-element subsets of the product of the chosen
    values.  Exact whenever the inputs are rational.
    """
    s = [Fraction(1)] + [Fraction(0)] * len(z)
    seen = 0
    for value in z:
        seen += 1
        for i in range(seen, 0, -1):
            s[i] = s[i] + value * s[i - 1]
    return tuple(s)


def w_coeff(L: int, n: int, l: int) -> int:
    """Alternating convolution sum_j (-1)^j C(L-l, n-j) C(l, j).

    Equivalently the coefficient of x^n in (1+x)^(L-l) (1-x)^l.  It weighs
    how the Hamming-weight-l sector of an L-qubit block enters the witness
    sums; the implicit summation bounds come from the binomial zero
    convention.
    """
    if not 0 <= n <= L:
        raise ValueError(f"need 0 <= n <= L, got n={n}, L={L}")
    if not 0 <= l <= L:
        raise ValueError(f"need 0 <= l <= L, got l={l}, L={L}")
    return sum(
        (-1) ** j * binomial(L - l, n - j) * binomial(l, j)
        for j in range(min(n, l) + 1)
    )


@dataclass(frozen=True)
class CheckRecord:
    """One verified identity instance; failures are data, not exceptions."""

    identity: str
    params: dict
    passed: bool
    lhs: object
    rhs: object

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": dict(self.params),
            "pass": self.passed,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }


@dataclass(frozen=True)
class SweepReport:
    """Outcome of an exhaustive exact sweep."""

    checked: int
    violations: tuple

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_w_identities(L: int) -> list:
    """Check the parity-sum and first-moment identities of w_coeff.

    For every sector 0 < l < L the even and odd coefficient sums vanish,
    and the first moments vanish except at the edge sectors l = 1 and
    l = L - 1 where they equal -(or +)2^(L-3).  The two edge contributions
    add when L = 2 and the sectors coincide.
    """
    if L < 2:
        raise ValueError(f"need L >= 2, got L={L}")
    records = []
    edge = Fraction(2) ** (L - 3)
    for l in range(1, L):
        even = [w_coeff(L, 2 * i, l) for i in range(L // 2 + 1)]
        odd = [w_coeff(L, 2 * i - 1, l) for i in range(1, (L + 1) // 2 + 1)]
        checks = [
            ("even-coefficient-sum", sum(even), Fraction(0)),
            ("odd-coefficient-sum", sum(odd), Fraction(0)),
            (
                "even-first-moment",
                sum(i * even[i] for i in range(len(even))),
                -(int(l == 1) + int(l == L - 1)) * edge,
            ),
            (
                "odd-first-moment",
                sum(i * odd[i - 1] for i in range(1, len(odd) + 1)),
                (int(l == L - 1) - int(l == 1)) * edge,
            ),
        ]
        for name, lhs, rhs in checks:
            records.append(
                CheckRecord(name, {"L": L, "l": l}, Fraction(lhs) == rhs, lhs, rhs)
            )
    return records


def verify_appendix_inequality(n_max: int, l_max: int) -> SweepReport:
    """Exact sweep of (C(n,i) + C(n,i-l))/n <= C(n+l,i)/(n+l).

    Ranges: 2 <= l <= l_max, l <= i <= n <= n_max.  This bound is the
    inductive step that lets a single-qubit party absorb one extra party
    of size l while preserving the per-sector padding bound.
    """
    if n_max < 4:
        raise ValueError(f"need n_max >= 4, got {n_max}")
    if l_max < 2:
        raise ValueError(f"need l_max >= 2, got {l_max}")
    checked = 0
    violations = []
    for l in range(2, l_max + 1):
        for n in range(l, n_max + 1):
            for i in range(l, n + 1):
                checked += 1
                lhs_num = (n + l) * (math.comb(n, i) + math.comb(n, i - l))
                rhs_num = n * math.comb(n + l, i)
                if lhs_num > rhs_num:
                    violations.append(
                        CheckRecord(
                            "padding-binomial-bound",
                            {"n": n, "l": l, "i": i},
                            False,
                            Fraction(math.comb(n, i) + math.comb(n, i - l), n),
                            Fraction(math.comb(n + l, i), n + l),
                        )
                    )
    return SweepReport(checked, tuple(violations))


@dataclass(frozen=True)
class Lemma1Quantities:
    """The four scalars behind the eigenvalue bound of the two-qubit block.

    a and b are the symmetric-polynomial sums, u and v the averaged sign
    flip products.  They satisfy a = -(u+v)/2 and b = -(u-v)/2 exactly,
    which is asserted on construction.
    """

    a: Fraction
    b: Fraction
    u: Fraction
    v: Fraction


def lemma1_quantities(z: Sequence, n: int) -> Lemma1Quantities:
    """Compute a, b, u, v for longitudinal components z of n - 2 qubits."""
    if n < 3:
        raise ValueError(f"need n >= 3, got n={n}")
    if len(z) != n - 2:
        raise ValueError(f"need {n - 2} components, got {len(z)}")
    zs = tuple(Fraction(x) for x in z)
    if any(x < -1 or x > 1 for x in zs):
        raise ValueError("every component must lie in [-1, 1]")
    m = n - 2
    s = elem_sym(zs)
    a = sum(
        (Fraction(4 * i + 2 - n, m) * s[2 * i] for i in range(1, m // 2 + 1)),
        start=Fraction(0),
    ) - 1
    b = sum(
        (Fraction(4 * i - n, m) * s[2 * i - 1] for i in range(1, (m + 1) // 2 + 1)),
        start=Fraction(0),
    )
    u = (
        sum(
            math.prod((1 - x) if t == j else (1 + x) for t, x in enumerate(zs))
            for j in range(m)
        )
        / Fraction(m)
    )
    v = (
        sum(
            math.prod((1 + x) if t == j else (1 - x) for t, x in enumerate(zs))
            for j in range(m)
        )
        / Fraction(m)
    )
    if a != -(u + v) / 2 or b != -(u - v) / 2:
        raise ArithmeticError("internal identity between (a, b) and (u, v) violated")
    return Lemma1Quantities(a, b, u, v)


@dataclass(frozen=True)
class Lemma1Check:
    """Exact check that a <= 0 and a^2 - b^2 dominates the transverse bound."""

    passed: bool
    a_nonpositive: bool
    square_bound_ok: bool
    tight: bool
    a: Fraction
    b: Fraction
    transverse_bound: Fraction


def verify_lemma1_inequality(z: Sequence, n: int) -> Lemma1Check:
    """Check a <= 0 and a^2 - b^2 >= prod(1 - z_i^2), all exactly.

    The right-hand side is the largest possible squared transverse
    magnitude c^2 + d^2 when every Bloch vector has unit norm, so this is
    the statement that the two-qubit block eigenvalue never exceeds the
    symmetric-state value.
    """
    q = lemma1_quantities(z, n)
    bound = math.prod((1 - Fraction(x) ** 2 for x in z), start=Fraction(1))
    a_ok = q.a <= 0
    lhs = q.a**2 - q.b**2
    sq_ok = lhs >= bound
    return Lemma1Check(a_ok and sq_ok, a_ok, sq_ok, lhs == bound, q.a, q.b, bound)


def random_unit_rationals(rng: random.Random, length: int, max_den: int = 64) -> tuple:
    """Seeded random exact rationals in [-1, 1] with denominators <= max_den."""
    out = []
    for _ in range(length):
        den = rng.randint(1, max_den)
        out.append(Fraction(rng.randint(-den, den), den))
    return tuple(out)


def rat_str(q) -> str:
    """Render a rational as ``num/den`` (or just ``num`` for integers)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rat_decimal(q, digits: int = 12) -> str:
    """Decimal rendering of a rational with the given significant digits."""
    q = Fraction(q)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))
