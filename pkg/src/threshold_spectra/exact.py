"""Exact rational linear algebra over :class:`fractions.Fraction`.

Polynomials are tuples of Fractions in degree-descending order.  Every matrix
handled here is similar to a real symmetric matrix, so all characteristic
roots are real; the sign counts below rely on that.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from math import prod
from typing import Sequence

from .threshold_model import (
    BlockForm,
    ThresholdString,
    block_form,
    build_graph,
    vertex_degrees,
)

Rational = Fraction
Matrix = list[list[Fraction]]


class NonSquare(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense polynomial helpers (degree-descending coefficient tuples)
# ---------------------------------------------------------------------------

def _trim(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return tuple(Fraction(c) for c in p[i:]) or (Fraction(0),)


def poly_mul(p, q) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_divmod(p, q) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    p, q = list(_trim(p)), _trim(q)
    if q == (0,):
        raise ZeroDivisionError("polynomial division by zero")
    dq = len(q) - 1
    if len(p) - 1 < dq:
        return (Fraction(0),), tuple(p)
    quot = []
    for i in range(len(p) - dq):
        c = p[i] / q[0]
        quot.append(c)
        if c:
            for j in range(1, dq + 1):
                p[i + j] -= c * q[j]
    rem = p[len(p) - dq:] if dq else [Fraction(0)]
    return _trim(quot), _trim(rem)


def poly_deriv(p) -> tuple[Fraction, ...]:
    d = len(p) - 1
    if d == 0:
        return (Fraction(0),)
    return _trim([c * (d - i) for i, c in enumerate(p[:-1])])


def poly_monic(p) -> tuple[Fraction, ...]:
    p = _trim(p)
    return tuple(c / p[0] for c in p)


def poly_gcd(p, q) -> tuple[Fraction, ...]:
    p, q = _trim(p), _trim(q)
    while q != (0,):
        p, q = q, poly_divmod(p, q)[1]
    return poly_monic(p) if p != (0,) else p


def poly_eval(p, x):
    acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
    for c in p:
        acc = acc * x + c
    return acc


def _sign_changes(coeffs) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(a != b for a, b in zip(signs, signs[1:]))


# ---------------------------------------------------------------------------
# characteristic polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharPoly:
    """Monic polynomial with exact rational coefficients, highest degree first."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] != 1:
            raise ValueError("characteristic polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        return poly_eval(self.coefficients, x)

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        return CharPoly(poly_mul(self.coefficients, other.coefficients))

    @classmethod
    def from_roots(cls, roots) -> "CharPoly":
        p: tuple[Fraction, ...] = (Fraction(1),)
        for r in roots:
            p = poly_mul(p, (Fraction(1), -Fraction(r)))
        return cls(p)

    def serialize(self) -> list[str]:
        return [str(c) for c in self.coefficients]

    @classmethod
    def deserialize(cls, coeffs: Sequence[str]) -> "CharPoly":
        return cls(tuple(Fraction(c) for c in coeffs))

    def fingerprint(self) -> str:
        """Canonical text form; equal iff the polynomials are equal."""
        return ",".join(self.serialize())

    def fingerprint_hash(self) -> str:
        return hashlib.sha256(self.fingerprint().encode()).hexdigest()[:16]

    def zero_multiplicity(self) -> int:
        """Order of vanishing at ``x = 0``."""
        m = 0
        for c in reversed(self.coefficients):
            if c != 0:
                break
            m += 1
        return m

    def root_multiplicity(self, r) -> int:
        r = Fraction(r)
        p = self.coefficients
        m = 0
        while len(p) > 1:
            q, rem = poly_divmod(p, (Fraction(1), -r))
            if rem != (0,):
                break
            p, m = q, m + 1
        return m

    def squarefree(self) -> "CharPoly":
        g = poly_gcd(self.coefficients, poly_deriv(self.coefficients))
        return CharPoly(poly_monic(poly_divmod(self.coefficients, g)[0]))

    def sign_counts(self) -> tuple[int, int, int]:
        """``(negative, zero, positive)`` root counts with multiplicity.

        Exact by Descartes' rule because every root is real.
        """
        z = self.zero_multiplicity()
        core = self.coefficients[: len(self.coefficients) - z]
        pos = _sign_changes(core)
        d = len(core) - 1
        neg = _sign_changes([c * (-1) ** (d - i) for i, c in enumerate(core)])
        return neg, z, pos


def _as_fraction_matrix(M) -> Matrix:
    M = [[Fraction(x) for x in row] for row in M]
    if any(len(row) != len(M) for row in M):
        raise NonSquare(f"matrix is {len(M)}x{len(M[0]) if M else 0}")
    return M


def char_poly(M) -> CharPoly:
    """Exact ``det(xI - M)``.

    Reduces to upper Hessenberg form by rational similarity transforms, then
    expands with the standard Hessenberg recurrence.
    """
    H = _as_fraction_matrix(M)
    n = len(H)
    for col in range(n - 2):
        piv = next((r for r in range(col + 1, n) if H[r][col] != 0), None)
        if piv is None:
            continue
        if piv != col + 1:
            r = col + 1
            H[piv], H[r] = H[r], H[piv]
            for row in H:
                row[piv], row[r] = row[r], row[piv]
        p = H[col + 1][col]
        for r in range(col + 2, n):
            f = H[r][col] / p
            if f == 0:
                continue
            # row_r -= f * row_{col+1}; col_{col+1} += f * col_r
            Hr, Hp = H[r], H[col + 1]
            for c in range(n):
                if Hp[c]:
                    Hr[c] -= f * Hp[c]
            for row in H:
                if row[r]:
                    row[col + 1] += f * row[r]
    # polys[m] = char poly of leading m x m block
    polys: list[tuple[Fraction, ...]] = [(Fraction(1),)]
    for m in range(1, n + 1):
        acc = poly_mul((Fraction(1), -H[m - 1][m - 1]), polys[m - 1])
        beta = Fraction(1)
        for i in range(m - 1, 0, -1):
            beta *= H[i][i - 1]
            if beta == 0:
                break
            term = tuple(-beta * H[i - 1][m - 1] * c for c in polys[i - 1])
            acc = _poly_add(acc, term)
        polys.append(acc)
    return CharPoly(_pad(polys[n], n))


def _poly_add(p, q):
    if len(p) < len(q):
        p, q = q, p
    off = len(p) - len(q)
    out = list(p)
    for i, c in enumerate(q):
        out[off + i] += c
    return tuple(out)


def _pad(p, n):
    return tuple([Fraction(0)] * (n + 1 - len(p)) + list(p))


def determinant(M) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    A = _as_fraction_matrix(M)
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                for j in range(c, n):
                    A[r][j] -= f * A[c][j]
    return det


def mat_mul(A, B) -> Matrix:
    return [[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in zip(*B)] for row in A]


# ---------------------------------------------------------------------------
# threshold-graph specific exact objects
# ---------------------------------------------------------------------------

def normalized_adjacency_exact(ts: ThresholdString) -> Matrix:
    """``D^{-1} A`` as a dense Fraction matrix."""
    g = build_graph(ts)
    degs = g.degrees
    return [
        [Fraction(1, degs[i]) if j in g.neighbors[i] else Fraction(0) for j in range(g.n)]
        for i in range(g.n)
    ]


def direct_roots(bf: BlockForm) -> list[tuple[Fraction, int]]:
    """Eigenvalues read straight off the string, with multiplicities."""
    out = []
    if bf.s > bf.k:
        out.append((Fraction(0), bf.s - bf.k))
    for ti, Si in zip(bf.t_blocks, bf.S):
        if ti > 1:
            out.append((Fraction(-1, bf.t + Si - 1), ti - 1))
    return out


def quotient_char_poly(bf: BlockForm) -> CharPoly:
    from .quotient import build_quotient

    return char_poly(build_quotient(bf).calB_pi)


def full_char_poly(ts: ThresholdString) -> CharPoly:
    """Characteristic polynomial of ``D^{-1}A`` assembled structurally.

    Product of the quotient polynomial with one linear factor per eigenvalue
    taken directly from the string.
    """
    bf = block_form(ts)
    p = quotient_char_poly(bf)
    roots = [r for r, m in direct_roots(bf) for _ in range(m)]
    return p * CharPoly.from_roots(roots)


def full_char_poly_direct(ts: ThresholdString) -> CharPoly:
    """Same polynomial computed from the full ``n x n`` matrix."""
    return char_poly(normalized_adjacency_exact(ts))


@dataclass(frozen=True)
class Inertia:
    n_minus: int
    n_zero: int
    n_plus: int

    @property
    def n(self) -> int:
        return self.n_minus + self.n_zero + self.n_plus

    def as_tuple(self) -> tuple[int, int, int]:
        return self.n_minus, self.n_zero, self.n_plus


def inertia_formula(bf: BlockForm) -> Inertia:
    return Inertia(bf.t, bf.s - bf.k, bf.k)


def exact_inertia(p: CharPoly) -> Inertia:
    return Inertia(*p.sign_counts())


def det_A_formula(bf: BlockForm) -> Fraction:
    if any(si > 1 for si in bf.s_blocks):
        return Fraction(0)
    return Fraction((-1) ** bf.t * prod(bf.t_blocks), prod(vertex_degrees(bf)))


def det_Bpi_formula(bf: BlockForm) -> int:
    return (-1) ** bf.k * prod(si * ti for si, ti in zip(bf.s_blocks, bf.t_blocks))


def det_calBpi_formula(bf: BlockForm) -> Fraction:
    from .quotient import build_quotient

    return (-1) ** bf.k * prod(build_quotient(bf).r, start=Fraction(1))


def distinct_count(p: CharPoly | Sequence) -> int:
    """Number of distinct roots: ``deg p - deg gcd(p, p')``."""
    coeffs = p.coefficients if isinstance(p, CharPoly) else _trim(p)
    g = poly_gcd(coeffs, poly_deriv(coeffs))
    return (len(coeffs) - 1) - (len(g) - 1)


def distinct_positive_count(p: CharPoly) -> int:
    return p.squarefree().sign_counts()[2]


def is_squarefree(p: CharPoly) -> bool:
    return distinct_count(p) == p.degree


def spectra_equal(ts1: ThresholdString, ts2: ThresholdString) -> bool:
    if ts1.n != ts2.n:
        raise LengthMismatch(f"orders differ: {ts1.n} vs {ts2.n}")
    return full_char_poly(ts1) == full_char_poly(ts2)


def rational_roots_near(p: CharPoly, values, max_den: int = 10**6) -> dict[int, Fraction]:
    """Match float approximations of roots to exact rational roots.

    Returns ``{index: root}`` for those ``values[index]`` whose nearest small-
    denominator fraction is an exact root of ``p``.  Display aid only.
    """
    found = {}
    for i, v in enumerate(values):
        c = Fraction(v).limit_denominator(max_den)
        if p(c) == 0:
            found[i] = c
    return found


def multiplicities(values: Sequence[Fraction]) -> list[tuple[Fraction, int]]:
    return [(v, len(list(g))) for v, g in groupby(sorted(values))]
