"""Normalized adjacency spectra: structural assembly and a full-matrix oracle."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .exact import CharPoly, char_poly, direct_roots, rational_roots_near
from .quotient import QuotientSystem, build_quotient, symmetrized_quotient
from .threshold_model import BlockForm, Graph, ThresholdString, block_form, build_graph, vertex_degrees

DIRECT = "direct-string"
QUOTIENT = "quotient"
ORACLE = "oracle"
PROVENANCES = (DIRECT, QUOTIENT, ORACLE)

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

Value = Union[float, Fraction]


class NotSymmetric(ValueError):
    pass


class NoConvergence(RuntimeError):
    pass


class NoDirectEigenvectors(ValueError):
    pass


@dataclass(frozen=True)
class SpectrumEntry:
    value: Value
    multiplicity: int
    provenance: str

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @property
    def is_exact(self) -> bool:
        return isinstance(self.value, (int, Fraction))

    def to_json_dict(self, precision: int = 4, exact_only: bool = False) -> dict:
        d: dict = {}
        if self.is_exact:
            d["exact"] = str(Fraction(self.value))
        if not exact_only:
            d["value"] = f"{float(self.value):.{precision}f}"
        d["multiplicity"] = self.multiplicity
        d["provenance"] = self.provenance
        return d


@dataclass(frozen=True)
class Spectrum:
    entries: tuple[SpectrumEntry, ...]
    # squarefree polynomial whose roots include every inexact entry
    quotient_poly: CharPoly | None = None

    @property
    def n(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def values(self) -> list[float]:
        """All eigenvalues with repetition, ascending."""
        return sorted(float(e.value) for e in self.entries for _ in range(e.multiplicity))

    def sorted_entries(self) -> list[SpectrumEntry]:
        return sorted(self.entries, key=lambda e: (float(e.value), e.provenance))

    def collapsed(self) -> list[tuple[Value, int]]:
        """Merge entries whose values coincide exactly (rationals) or as floats."""
        merged: dict = {}
        for e in self.entries:
            key = Fraction(e.value) if e.is_exact else float(e.value)
            merged[key] = merged.get(key, 0) + e.multiplicity
        return sorted(merged.items(), key=lambda kv: float(kv[0]))

    def to_json_dict(self, precision: int = 4, exact_only: bool = False) -> list[dict]:
        out = []
        roots = None
        if exact_only and self.quotient_poly is not None:
            # the quotient polynomial is squarefree: its ascending real roots
            # are exactly the quotient entries
            qvals = sorted(float(e.value) for e in self.entries if e.provenance == QUOTIENT)
            roots = {v: i for i, v in enumerate(qvals)}
        for e in self.sorted_entries():
            d = e.to_json_dict(precision, exact_only)
            if exact_only and not e.is_exact:
                if roots is None:
                    raise ValueError("no exact representation available for an irrational eigenvalue")
                d = {
                    "root_of": self.quotient_poly.serialize(),
                    "root_index": roots[float(e.value)],
                    "multiplicity": e.multiplicity,
                    "provenance": e.provenance,
                }
            out.append(d)
        return out

    def to_json(self, precision: int = 4, exact_only: bool = False) -> str:
        return json.dumps(self.to_json_dict(precision, exact_only))

    @classmethod
    def from_json(cls, text: str) -> "Spectrum":
        entries = []
        for d in json.loads(text):
            if "exact" in d:
                v: Value = Fraction(d["exact"])
            else:
                v = float(d["value"])
            entries.append(SpectrumEntry(v, int(d["multiplicity"]), d["provenance"]))
        return cls(tuple(entries))

    def to_csv(self, precision: int = 4, exact_only: bool = False) -> str:
        lines = ["value,multiplicity"]
        for v, m in self.collapsed():
            if isinstance(v, Fraction) and (exact_only or v.denominator == 1):
                lines.append(f"{v},{m}")
            else:
                lines.append(f"{float(v):.{precision}f},{m}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DirectEigenSet:
    entries: tuple[tuple[Fraction, int], ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)


def direct_eigenvalues(bf: BlockForm) -> DirectEigenSet:
    return DirectEigenSet(tuple(direct_roots(bf)))


def _twin_vectors(cell: range, n: int) -> list[list[int]]:
    vecs = []
    for j in range(2, len(cell) + 1):
        f = [0] * n
        for pos in range(j - 1):
            f[cell[pos]] = 1
        f[cell[j - 1]] = -(j - 1)
        vecs.append(f)
    return vecs


def direct_eigenvectors(bf: BlockForm) -> list[tuple[Fraction, list[int]]]:
    """Eigenvectors supported on a single cell of twin vertices.

    The ``j``-th vector of a cell has ones on the first ``j - 1`` cell
    positions and ``-(j - 1)`` on position ``j``.  One-blocks give eigenvalue
    ``-1/(t + S_i - 1)``, zero-blocks give ``0``.
    """
    if bf.s == bf.k and bf.t == bf.k:
        raise NoDirectEigenvectors("every block has length one")
    qs = build_quotient(bf)
    n = bf.n
    out = []
    for i in range(bf.k):
        zcell, ocell = qs.cells[2 * i], qs.cells[2 * i + 1]
        out += [(Fraction(0), f) for f in _twin_vectors(zcell, n)]
        lam = Fraction(-1, bf.t + bf.S[i] - 1)
        out += [(lam, f) for f in _twin_vectors(ocell, n)]
    return out


def degree_inner(bf: BlockForm, u: Sequence, v: Sequence):
    degs = vertex_degrees(bf)
    return sum(d * a * b for d, a, b in zip(degs, u, v))


def jacobi_eigh(M, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi eigen-decomposition of a real symmetric matrix.

    Returns ``(values, vectors)`` with eigenvalues ascending and eigenvectors
    in the matching columns.  Iterates until the off-diagonal Frobenius norm
    drops below ``tol``.
    """
    A = np.array(M, dtype=float, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSymmetric(f"matrix shape {A.shape} is not square")
    if A.size and np.max(np.abs(A - A.T)) > 1e-12:
        raise NotSymmetric(f"asymmetry {np.max(np.abs(A - A.T)):.3g} exceeds 1e-12")
    A = (A + A.T) / 2
    n = A.shape[0]
    V = np.eye(n)

    mask = ~np.eye(n, dtype=bool)

    def off(a):
        return math.sqrt(float(np.sum(a[mask] ** 2)))

    sweeps = 0
    while off(A) >= tol:
        if sweeps >= max_sweeps:
            raise NoConvergence(f"off-diagonal norm {off(A):.3g} after {sweeps} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J on rows/cols p, q
                Ap, Aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * Ap - s * Aq
                A[:, q] = s * Ap + c * Aq
                Ap, Aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * Ap - s * Aq
                A[q, :] = s * Ap + c * Aq
                A[p, q] = A[q, p] = 0.0
                Vp, Vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * Vp - s * Vq
                V[:, q] = s * Vp + c * Vq
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def jacobi_eigenvalues(M, tol: float = JACOBI_TOL) -> list[float]:
    return [float(x) for x in jacobi_eigh(M, tol)[0]]


def quotient_spectrum(qs: QuotientSystem) -> list[float]:
    return jacobi_eigenvalues(symmetrized_quotient(qs))


def full_spectrum(ts: ThresholdString) -> Spectrum:
    """Quotient eigenvalues united (as a multiset) with the direct ones.

    A quotient eigenvalue is stored exactly when it matches a rational root of
    the quotient polynomial; this is how coincidences with direct values
    (e.g. ``-1/t`` when ``s_1 = 1``) show up with a shared exact value.
    """
    bf = block_form(ts)
    qs = build_quotient(bf)
    qvals = quotient_spectrum(qs)
    qpoly = char_poly(qs.calB_pi)
    candidates = {Fraction(1)} | {v for v, _ in direct_roots(bf)} | {Fraction(-1, bf.t)}
    exact: dict[int, Fraction] = rational_roots_near(qpoly, qvals)
    for i, v in enumerate(qvals):
        for c in candidates:
            if i not in exact and abs(v - float(c)) < 1e-9 and qpoly(c) == 0:
                exact[i] = c
    entries = [
        SpectrumEntry(exact.get(i, v), 1, QUOTIENT) for i, v in enumerate(qvals)
    ]
    entries += [SpectrumEntry(v, m, DIRECT) for v, m in direct_roots(bf)]
    return Spectrum(tuple(entries), qpoly)


def randic_matrix(g: Graph) -> np.ndarray:
    d = np.array(g.degrees, dtype=float)
    A = np.array(g.adjacency_matrix(), dtype=float)
    inv = 1.0 / np.sqrt(d)
    return inv[:, None] * A * inv[None, :]


def oracle_spectrum(g: Graph) -> Spectrum:
    if min(g.degrees, default=0) < 1:
        raise ValueError("oracle needs every vertex to have positive degree")
    vals = jacobi_eigenvalues(randic_matrix(g))
    return Spectrum(tuple(SpectrumEntry(v, 1, ORACLE) for v in vals))


def to_normalized_laplacian(sp: Spectrum) -> Spectrum:
    entries = []
    for e in sp.entries:
        v = 1 - e.value if e.is_exact else 1.0 - float(e.value)
        entries.append(SpectrumEntry(v, e.multiplicity, e.provenance))
    return Spectrum(tuple(entries))


def spectra_close(a: Iterable[float], b: Iterable[float], atol: float = 1e-9) -> bool:
    """Sort-then-pair comparison of two float spectra."""
    a, b = sorted(a), sorted(b)
    return len(a) == len(b) and all(abs(x - y) <= atol for x, y in zip(a, b))
