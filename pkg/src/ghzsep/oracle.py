"""Independent brute-force verification of the symmetric-state machinery.

The constructions elsewhere in the package use closed forms (profiles,
characteristic-function sums).  This module rebuilds the same objects the
expensive way, with no shared code path: dense matrices, explicit phase
and permutation averaging, explicit Pauli traces, and direct numerical
maximization over product states.

Phase averages are exact.  Every matrix entry of the pre-average state is
a Fourier polynomial of degree between -2 and 2 in each free phase, and a
four-point average over the fourth roots of unity annihilates every
nonzero degree of magnitude at most 3, so averaging each phase over
{1, i, -1, -i} reproduces the continuous average exactly.  The arithmetic
runs over the Gaussian rationals so nothing is ever rounded.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .partitions import PartitionType
from .symstate import SymState, noisy_ghz, to_dense
from .witness import canonical_witness, ghz_witness_value


@dataclass(frozen=True)
class GaussRat:
    """Exact Gaussian rational re + im*i."""

    re: Fraction
    im: Fraction

    @classmethod
    def of(cls, re, im=0) -> "GaussRat":
        return cls(Fraction(re), Fraction(im))

    @classmethod
    def unit(cls, power: int) -> "GaussRat":
        """i raised to the given integer power."""
        return _UNITS[power % 4]

    def __add__(self, other):
        return GaussRat(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussRat(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return GaussRat(self.re * other, self.im * other)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0


_UNITS = (
    GaussRat(Fraction(1), Fraction(0)),
    GaussRat(Fraction(0), Fraction(1)),
    GaussRat(Fraction(-1), Fraction(0)),
    GaussRat(Fraction(0), Fraction(-1)),
)


@dataclass(frozen=True)
class OracleRecord:
    """One oracle check outcome."""

    check: str
    params: dict
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "params": dict(self.params),
            "pass": self.passed,
            "detail": self.detail,
        }


def _phase_average_support(part: PartitionType):
    """Exact phase average of the block product state, unnormalized.

    Returns (diag_val, off_entries) over block configurations: the value
    attached to configuration pair (cx, cy) is 2^k 4^(k-1) times the
    averaged matrix entry.  Each free phase is averaged literally over the
    four fourth roots of unity in Gaussian-rational arithmetic.
    """
    k = part.k
    cfg_count = 1 << k
    four_point = {}
    for deg in range(-2, 3):
        total = GaussRat.of(0)
        for t in range(4):
            total = total + GaussRat.unit(t * deg)
        if not total.is_real or total.re.denominator != 1:
            raise ArithmeticError("root-of-unity average must be a plain integer")
        four_point[deg] = int(total.re)
    diag_val = [0] * cfg_count
    off_entries = []
    for cx in range(cfg_count):
        for cy in range(cfg_count):
            delta_last = ((cx >> (k - 1)) & 1) - ((cy >> (k - 1)) & 1)
            val = 1
            for j in range(k - 1):
                deg = ((cx >> j) & 1) - ((cy >> j) & 1) - delta_last
                val *= four_point[deg]
                if val == 0:
                    break
            if val == 0:
                continue
            if cx == cy:
                diag_val[cx] = val
            else:
                off_entries.append((cx, cy, val))
    return diag_val, off_entries


def _permutation_chunks(n: int, chunk: int = 8192):
    perms = itertools.permutations(range(n))
    while True:
        batch = list(itertools.islice(perms, chunk))
        if not batch:
            return
        yield np.array(batch, dtype=np.int64)


def phase_average_oracle(part: PartitionType) -> SymState:
    """Rebuild the partition's separable state by explicit averaging.

    One free phase per party (the last party carries minus their sum);
    each phase is averaged over the fourth roots of unity exactly, then
    the resulting sparse matrix is pushed through every one of the n!
    qubit relabelings and averaged.  The result must be permutation
    symmetric (a non-symmetric residue is a hard internal fault) and is
    returned in symmetric-state form.
    """
    n = part.n
    if n > 10:
        raise ValueError(f"phase averaging limited to n <= 10, got n={n}")
    k = part.k
    cfg_count = 1 << k
    dim = 1 << n

    diag_val, off_entries = _phase_average_support(part)

    part_bits = np.zeros((k, n), dtype=np.int64)
    start = 0
    for j, size in enumerate(part.parts):
        part_bits[j, start : start + size] = 1
        start += size
    cfg_bits = ((np.arange(cfg_count, dtype=np.int64)[:, None] >> np.arange(k)) & 1)

    acc = np.zeros(dim, dtype=np.int64)
    off_acc = np.zeros(dim * dim, dtype=np.int64)
    seen = 0
    for batch in _permutation_chunks(n):
        seen += batch.shape[0]
        place = np.int64(1) << batch  # 2^(sigma(b)) per permutation and qubit
        part_imgs = part_bits @ place.T  # parts are disjoint, so sums are unions
        imgs = cfg_bits @ part_imgs
        for c in range(cfg_count):
            v = diag_val[c]
            if v:
                acc += v * np.bincount(imgs[c], minlength=dim)
        for cx, cy, v in off_entries:
            keys = imgs[cx] * dim + imgs[cy]
            off_acc += v * np.bincount(keys, minlength=dim * dim)
    if seen != math.factorial(n):
        raise ArithmeticError("permutation enumeration incomplete")

    total = math.factorial(n) * (2**k) * (4 ** (k - 1))
    by_weight = {}
    for x in range(dim):
        by_weight.setdefault(x.bit_count(), set()).add(int(acc[x]))
    for w, vals in by_weight.items():
        if len(vals) != 1:
            raise ArithmeticError(
                f"permutation averaging left a non-symmetric residue at weight {w}"
            )
    d = tuple(
        Fraction(next(iter(by_weight[w])), total) for w in range(n + 1)
    )
    full = dim - 1
    nonzero_off = np.nonzero(off_acc)[0]
    corner_keys = {0 * dim + full, full * dim + 0}
    if not set(int(i) for i in nonzero_off) <= corner_keys:
        raise ArithmeticError("phase averaging left off-diagonal weight off the corners")
    lo, hi = int(off_acc[full]), int(off_acc[full * dim])
    if lo != hi:
        raise ArithmeticError("phase averaging broke Hermiticity of the corners")
    return SymState(n, Fraction(lo, total), d)


@dataclass(frozen=True)
class CharacteristicReport:
    """All Pauli-string expectation values of a dense noisy GHZ state."""

    n: int
    p: Fraction
    values: dict
    nonzero_count: int
    records: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)


def _expected_correlation(idx, p: Fraction) -> Fraction:
    """Stabilizer sign pattern: even all-Z strings give p (identity gives
    1), all-X/Y strings with 2j Y factors give (-1)^j p, everything else
    vanishes."""
    if all(i in (0, 3) for i in idx):
        z = idx.count(3)
        if z == 0:
            return Fraction(1)
        return p if z % 2 == 0 else Fraction(0)
    if all(i in (1, 2) for i in idx):
        y = idx.count(2)
        return (-1) ** (y // 2) * p if y % 2 == 0 else Fraction(0)
    return Fraction(0)


def characteristic_check(n: int, p) -> CharacteristicReport:
    """Evaluate every Pauli-string expectation of the dense noisy GHZ state.

    Builds the 2^n x 2^n matrix explicitly and takes every trace in exact
    arithmetic (Pauli strings are monomial matrices, so each trace is a
    single sweep over basis states).  Mismatches against the stabilizer
    pattern become report entries, never exceptions.
    """
    if n > 8:
        raise ValueError(f"characteristic sweep limited to n <= 8, got n={n}")
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"need 0 <= p <= 1, got {p}")
    dim = 1 << n
    full = dim - 1
    noise = (1 - p) / 2**n
    rho = [[Fraction(0)] * dim for _ in range(dim)]
    for x in range(dim):
        rho[x][x] = noise
    rho[0][0] += p / 2
    rho[full][full] += p / 2
    rho[0][full] += p / 2
    rho[full][0] += p / 2

    values = {}
    mismatch = None
    nonzero = 0
    for idx in itertools.product(range(4), repeat=n):
        xmask = 0
        zmask = 0
        ycount = 0
        for q, s in enumerate(idx):
            if s in (1, 2):
                xmask |= 1 << q
            if s in (2, 3):
                zmask |= 1 << q
            if s == 2:
                ycount += 1
        re = Fraction(0)
        im = Fraction(0)
        for y in range(dim):
            amp = rho[y ^ xmask][y]
            if amp:
                power = (ycount + 2 * (y & zmask).bit_count()) % 4
                if power == 0:
                    re += amp
                elif power == 1:
                    im += amp
                elif power == 2:
                    re -= amp
                else:
                    im -= amp
        if im != 0:
            mismatch = mismatch or (idx, "non-real correlation")
        values[idx] = re
        if re != 0:
            nonzero += 1
        if mismatch is None and re != _expected_correlation(idx, p):
            mismatch = (idx, f"got {re}, expected {_expected_correlation(idx, p)}")

    expected_count = 2**n if p != 0 else 1
    records = (
        OracleRecord(
            "correlation-pattern",
            {"n": n, "p": str(p)},
            mismatch is None,
            "" if mismatch is None else f"first mismatch at {mismatch[0]}: {mismatch[1]}",
        ),
        OracleRecord(
            "nonzero-count",
            {"n": n, "p": str(p)},
            nonzero == expected_count,
            f"nonzero={nonzero}, expected={expected_count}",
        ),
    )
    return CharacteristicReport(n, p, values, nonzero, records)


def dense_witness(n: int, L: int):
    """Materialize the witness Q as a dense exact matrix.

    Q is assembled generator by generator: each term is an all-X flip (or
    not) times a Z string, acting monomially on the computational basis.
    The construction is validated against the characteristic-function
    value of tr(rho Q) on noisy GHZ states before being returned.
    """
    if n > 8:
        raise ValueError(f"dense witness limited to n <= 8, got n={n}")
    spec = canonical_witness(n, L)
    dim = 1 << n
    full = dim - 1
    q = [[Fraction(0)] * dim for _ in range(dim)]
    for kvec in range(1 << (n - 1)):
        weight = kvec.bit_count()
        zmask = (weight & 1) | (kvec << 1)
        if weight:  # the X-free identity term carries coefficient zero
            coeff = spec.m[(weight + 1) // 2 - 1]
            for x in range(dim):
                if (zmask & x).bit_count() & 1:
                    q[x][x] -= coeff
                else:
                    q[x][x] += coeff
        for x in range(dim):
            if (zmask & x).bit_count() & 1:
                q[x ^ full][x] -= 1
            else:
                q[x ^ full][x] += 1
    for p in (Fraction(0), Fraction(1)):
        rho = to_dense(noisy_ghz(n, p))
        tr = sum(
            (rho[x][y] * q[y][x] for x in range(dim) for y in range(dim)),
            start=Fraction(0),
        )
        if tr != ghz_witness_value(spec, p):
            raise ArithmeticError("dense witness disagrees with the closed-form trace")
    return q


def _dense_witness_float(n: int, L: int) -> np.ndarray:
    return np.array([[float(v) for v in row] for row in dense_witness(n, L)])


def _random_unit(rng, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def _env_operator(qt: np.ndarray, vecs, j: int) -> np.ndarray:
    """Contract all parties except j against their current pure states."""
    k = len(vecs)
    operands = [qt, list(range(2 * k))]
    for l, v in enumerate(vecs):
        if l == j:
            continue
        operands.extend([np.conj(v), [l], v, [k + l]])
    return np.einsum(*operands, [j, k + j])


def _maximize_partition(q: np.ndarray, part: PartitionType, restarts, seed,
                        tol=1e-12, max_sweeps=500) -> float:
    """Multistart alternating eigenvector ascent over product states.

    With every party but one frozen, the value is a quadratic form in the
    remaining party, so the optimal update is the top eigenvector of the
    contracted operator; sweeping the parties gives monotone convergence.
    """
    dims = [1 << s for s in part.parts]
    k = len(dims)
    qt = q.reshape(dims + dims)
    rng = np.random.default_rng(seed)
    best = None
    converged_any = False
    for _ in range(restarts):
        vecs = [_random_unit(rng, d) for d in dims]
        prev = None
        value = None
        ok = False
        for _ in range(max_sweeps):
            for j in range(k):
                env = _env_operator(qt, vecs, j)
                env = (env + env.conj().T) / 2
                eigvals, eigvecs = np.linalg.eigh(env)
                vecs[j] = eigvecs[:, -1]
                value = float(eigvals[-1])
            if prev is not None and abs(value - prev) <= tol * max(1.0, abs(value)):
                ok = True
                break
            prev = value
        if ok:
            converged_any = True
            if best is None or value > best:
                best = value
    if not converged_any:
        raise RuntimeError("product-state ascent did not converge in any restart")
    return best


def _block_partition(n: int, L: int) -> PartitionType:
    return PartitionType.from_sizes([L] + [1] * (n - L))


def maximize_over_product_states(n: int, L: int, restarts: int = 64,
                                 seed: int = 42) -> float:
    """Best tr(rho Q) found over pure product states of the partition with
    one L-qubit party and n - L singles."""
    if n > 8:
        raise ValueError(f"product-state search limited to n <= 8, got n={n}")
    q = _dense_witness_float(n, L)
    return _maximize_partition(q, _block_partition(n, L), restarts, seed)


def max_sampled_product_value(n: int, L: int, samples: int = 10000,
                              seed: int = 42) -> float:
    """Largest tr(rho Q) over Haar-random product states of the
    1^(n-L)|L partition; a soundness probe for the separability bound."""
    if n > 8:
        raise ValueError(f"product-state sampling limited to n <= 8, got n={n}")
    q = _dense_witness_float(n, L)
    part = _block_partition(n, L)
    rng = np.random.default_rng(seed)
    best = -np.inf
    chunk = 2048
    left = samples
    while left > 0:
        count = min(chunk, left)
        left -= count
        psi = np.ones((count, 1), dtype=complex)
        for size in part.parts:
            d = 1 << size
            g = rng.standard_normal((count, d)) + 1j * rng.standard_normal((count, d))
            g /= np.linalg.norm(g, axis=1, keepdims=True)
            psi = np.einsum("si,sj->sij", psi, g).reshape(count, -1)
        vals = np.einsum("si,si->s", psi.conj() @ q, psi).real
        best = max(best, float(vals.max()))
    return best


def split_monotonicity_check(n: int, L: int, finer: PartitionType,
                             restarts: int = 16, seed: int = 42,
                             slack: float = 1e-9) -> bool:
    """Splitting the L-qubit party into parties of size >= 2 cannot raise
    the product-state maximum of tr(rho Q)."""
    if finer.n != n:
        raise ValueError("refinement must cover the same qubits")
    singles = sum(1 for s in finer.parts if s == 1)
    if singles != n - L:
        raise ValueError("refinement must keep exactly the original single-qubit parties")
    if sum(s for s in finer.parts if s >= 2) != L:
        raise ValueError("refined block parties must cover the L-qubit party")
    q = _dense_witness_float(n, L)
    coarse = _maximize_partition(q, _block_partition(n, L), restarts, seed)
    fine = _maximize_partition(q, finer, restarts, seed)
    return fine <= coarse + slack
