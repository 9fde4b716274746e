"""Threshold graphs built from binary creation strings.

A connected threshold graph on ``n`` vertices is encoded by a word
``b_1 ... b_n`` over ``{0, 1}`` with ``b_1 = 0`` and ``b_n = 1``.  Vertex ``i``
is added either isolated (``0``) or dominating (``1``).  Vertices are numbered
``1..n`` in string order; internally index ``i`` stands for vertex ``i + 1``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator


class InvalidThresholdString(ValueError):
    """Base class for creation strings that violate a rule."""

    rule = "invalid threshold string"

    def __init__(self, text: str, detail: str = ""):
        self.text = text
        msg = f"{self.rule}: {text!r}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class EmptyString(InvalidThresholdString):
    rule = "string must contain at least two symbols"


class IllegalCharacter(InvalidThresholdString):
    rule = "string may only contain the characters '0' and '1'"


class FirstBitNotZero(InvalidThresholdString):
    rule = "first symbol must be '0'"


class LastBitNotOne(InvalidThresholdString):
    rule = "last symbol must be '1' (graph must be connected)"


@dataclass(frozen=True)
class ThresholdString:
    bits: tuple[int, ...]

    def __post_init__(self):
        # bypassing parse_string still has to respect the invariants
        _validate(self.bits, "".join(map(str, self.bits)))

    @property
    def n(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class BlockForm:
    """Maximal-run decomposition ``0^{s_1} 1^{t_1} ... 0^{s_k} 1^{t_k}``."""

    s_blocks: tuple[int, ...]
    t_blocks: tuple[int, ...]

    def __post_init__(self):
        if len(self.s_blocks) != len(self.t_blocks) or not self.s_blocks:
            raise ValueError("s_blocks and t_blocks must be non-empty and of equal length")
        if min(self.s_blocks + self.t_blocks) < 1:
            raise ValueError("block lengths must be positive")

    @property
    def k(self) -> int:
        return len(self.s_blocks)

    @property
    def s(self) -> int:
        return sum(self.s_blocks)

    @property
    def t(self) -> int:
        return sum(self.t_blocks)

    @property
    def n(self) -> int:
        return self.s + self.t

    @property
    def S(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate(self.s_blocks))

    @property
    def T(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate(self.t_blocks))

    def to_string(self) -> ThresholdString:
        bits: list[int] = []
        for si, ti in zip(self.s_blocks, self.t_blocks):
            bits += [0] * si + [1] * ti
        return ThresholdString(tuple(bits))

    def as_dict(self) -> dict:
        return {
            "s_blocks": list(self.s_blocks),
            "t_blocks": list(self.t_blocks),
            "k": self.k,
            "s": self.s,
            "t": self.t,
            "n": self.n,
            "S": list(self.S),
            "T": list(self.T),
        }


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1`` (labelled ``1..n``)."""

    n: int
    neighbors: tuple[frozenset[int], ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nb) for nb in self.neighbors)

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, nb in enumerate(self.neighbors):
            for j in sorted(nb):
                if i < j:
                    yield i, j

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def adjacency_matrix(self) -> list[list[int]]:
        return [[int(j in self.neighbors[i]) for j in range(self.n)] for i in range(self.n)]

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            for j in self.neighbors[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self.n


def _validate(bits, text: str) -> None:
    if len(bits) < 2:
        raise EmptyString(text, f"length {len(bits)}")
    for pos, b in enumerate(bits):
        if b not in (0, 1):
            raise IllegalCharacter(text, f"position {pos + 1}")
    if bits[0] != 0:
        raise FirstBitNotZero(text)
    if bits[-1] != 1:
        raise LastBitNotOne(text)


def parse_string(text: str) -> ThresholdString:
    """Validate ``text`` and return the corresponding :class:`ThresholdString`.

    >>> str(parse_string("0011100011"))
    '0011100011'
    """
    text = text.strip()
    if len(text) < 2:
        raise EmptyString(text, f"length {len(text)}")
    for pos, ch in enumerate(text):
        if ch not in "01":
            raise IllegalCharacter(text, f"character {ch!r} at position {pos + 1}")
    return ThresholdString(tuple(int(ch) for ch in text))


def block_form(ts: ThresholdString) -> BlockForm:
    runs = [len(m.group()) for m in re.finditer(r"0+|1+", str(ts))]
    return BlockForm(tuple(runs[0::2]), tuple(runs[1::2]))


def build_graph(ts: ThresholdString) -> Graph:
    nbrs: list[set[int]] = [set() for _ in range(ts.n)]
    for i, b in enumerate(ts.bits):
        if b == 1:
            for j in range(i):
                nbrs[i].add(j)
                nbrs[j].add(i)
    return Graph(ts.n, tuple(frozenset(nb) for nb in nbrs))


def cell_degrees(bf: BlockForm) -> list[int]:
    """Common degree of each cell ``V_{s_1}, V_{t_1}, ..., V_{t_k}`` in order."""
    t = bf.t
    T_prev = (0,) + bf.T[:-1]
    out = []
    for Tp, Si in zip(T_prev, bf.S):
        out += [t - Tp, t + Si - 1]
    return out


def degree_sequence(bf: BlockForm) -> list[tuple[str, int, int]]:
    """Closed-form degrees as ``(cell, degree, count)`` triples.

    Cells are named ``"s1"``, ``"t1"``, ``"s2"``, ... after the block they come
    from.
    """
    degs = cell_degrees(bf)
    out = []
    for i in range(bf.k):
        out.append((f"s{i + 1}", degs[2 * i], bf.s_blocks[i]))
        out.append((f"t{i + 1}", degs[2 * i + 1], bf.t_blocks[i]))
    return out


def vertex_degrees(bf: BlockForm) -> list[int]:
    """Closed-form degree of every vertex, in string order."""
    return [d for _, d, c in degree_sequence(bf) for _ in range(c)]


def to_dot(g: Graph, name: str = "threshold") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {i + 1};" for i in range(g.n)]
    lines += [f"  {i + 1} -- {j + 1};" for i, j in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
