"""Equitable partition of a threshold graph into its ``2k`` string blocks.

Cells are ``C_1 = V_{s_1}, C_2 = V_{t_1}, ..., C_{2k} = V_{t_k}``.  Matrices are
indexed ``0..2k-1`` so that even Python indices are zero-blocks and odd
indices are one-blocks.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .threshold_model import BlockForm, cell_degrees


@dataclass(frozen=True)
class QuotientSystem:
    block: BlockForm
    cells: tuple[range, ...]
    B_pi: tuple[tuple[int, ...], ...]
    D_pi: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.cells)

    @property
    def cell_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    @property
    def calB_pi(self) -> list[list[Fraction]]:
        """Row-stochastic ``D_pi^{-1} B_pi``."""
        return [[Fraction(b, d) for b in row] for row, d in zip(self.B_pi, self.D_pi)]

    @property
    def A_pi(self) -> list[list[Fraction]]:
        """Symmetric core with ``B_pi = A_pi C_pi``."""
        sizes = self.cell_sizes
        return [[Fraction(b, sizes[j]) for j, b in enumerate(row)] for row in self.B_pi]

    @property
    def r(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, d) for c, d in zip(self.cell_sizes, self.D_pi))

    @property
    def beta(self) -> tuple[Fraction, ...]:
        return tuple(1 - Fraction(1, ti) for ti in self.block.t_blocks)

    def to_json_dict(self) -> dict:
        return {
            "cells": [[c.start + 1, c.stop] for c in self.cells],
            "B_pi": [list(row) for row in self.B_pi],
            "D_pi": list(self.D_pi),
            "calB_pi": [[str(x) for x in row] for row in self.calB_pi],
            "r": [str(x) for x in self.r],
            "beta": [str(x) for x in self.beta],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def _adjacent_cells(i: int, j: int) -> bool:
    # a later one-block dominates everything before it
    return i != j and max(i, j) % 2 == 1


def build_quotient(bf: BlockForm) -> QuotientSystem:
    sizes = []
    for si, ti in zip(bf.s_blocks, bf.t_blocks):
        sizes += [si, ti]
    cells, start = [], 0
    for c in sizes:
        cells.append(range(start, start + c))
        start += c
    m = len(sizes)
    B = []
    for i in range(m):
        row = []
        for j in range(m):
            if i == j:
                row.append(sizes[i] - 1 if i % 2 == 1 else 0)
            else:
                row.append(sizes[j] if _adjacent_cells(i, j) else 0)
        B.append(tuple(row))
    return QuotientSystem(bf, tuple(cells), tuple(B), tuple(cell_degrees(bf)))


def characteristic_matrix(qs: QuotientSystem, n: int) -> list[list[int]]:
    """``n x 2k`` cell-membership matrix."""
    P = [[0] * qs.size for _ in range(n)]
    for i, cell in enumerate(qs.cells):
        for v in cell:
            P[v][i] = 1
    return P


def symmetrized_quotient(qs: QuotientSystem) -> np.ndarray:
    """``X^{1/2} A_pi X^{1/2}`` with ``X = diag(r_i)``.

    Entry ``(i, j)`` is ``a_ij * sqrt(r_i r_j)``; computing the product of the
    ``r`` values exactly before the square root keeps the result bitwise
    symmetric.
    """
    A, r = qs.A_pi, qs.r
    m = qs.size
    M = np.zeros((m, m))
    for i in range(m):
        for j in range(m):
            if A[i][j]:
                M[i, j] = float(A[i][j]) * math.sqrt(r[i] * r[j])
    return M


def symmetrized_quotient_squares(qs: QuotientSystem) -> list[list[Fraction]]:
    """Exact signed squares ``sign(m_ij) m_ij^2`` of the symmetrized matrix."""
    A, r = qs.A_pi, qs.r
    return [[A[i][j] * abs(A[i][j]) * r[i] * r[j] for j in range(qs.size)] for i in range(qs.size)]


def conjugated_quotient_squares(qs: QuotientSystem) -> list[list[Fraction]]:
    """Exact signed squares of ``G^{-1} calB_pi G`` with ``G = (C_pi D_pi)^{-1/2}``.

    Equal to :func:`symmetrized_quotient_squares` iff the diagonal conjugation
    symmetrizes the quotient matrix.
    """
    cB = qs.calB_pi
    w = [c * d for c, d in zip(qs.cell_sizes, qs.D_pi)]
    return [
        [cB[i][j] * abs(cB[i][j]) * Fraction(w[i], w[j]) for j in range(qs.size)]
        for i in range(qs.size)
    ]
