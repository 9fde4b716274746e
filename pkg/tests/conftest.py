import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy

from threshold_spectra.threshold_model import parse_string


def strings_of_order(n):
    return ["0" + "".join(mid) + "1" for mid in itertools.product("01", repeat=n - 2)]


def all_strings(n_max, n_min=2):
    return [s for n in range(n_min, n_max + 1) for s in strings_of_order(n)]


def brute_adjacency(text):
    """Adjacency built independently of the package: bit 1 joins all earlier vertices."""
    n = len(text)
    A = [[0] * n for _ in range(n)]
    for i, c in enumerate(text):
        if c == "1":
            for j in range(i):
                A[i][j] = A[j][i] = 1
    return A


def sympy_char_poly(text):
    A = brute_adjacency(text)
    n = len(A)
    M = sympy.Matrix(n, n, lambda i, j: sympy.Rational(A[i][j], sum(A[i])))
    x = sympy.Symbol("x")
    return [Fraction(int(c.p), int(c.q)) for c in sympy.Poly(M.charpoly(x), x).all_coeffs()]


def numpy_spectrum(text):
    A = np.array(brute_adjacency(text), dtype=float)
    d = A.sum(axis=1)
    return np.linalg.eigvalsh(A / np.sqrt(np.outer(d, d)))


@pytest.fixture
def example():
    return parse_string("0011100011")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
