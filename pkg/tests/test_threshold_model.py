import itertools

import pytest
from hypothesis import given, strategies as st

from threshold_spectra.threshold_model import (
    BlockForm,
    EmptyString,
    FirstBitNotZero,
    IllegalCharacter,
    LastBitNotOne,
    block_form,
    build_graph,
    degree_sequence,
    parse_string,
    to_dot,
    vertex_degrees,
)

from conftest import all_strings, brute_adjacency, strings_of_order

threshold_strings = st.integers(0, 10).flatmap(
    lambda m: st.text("01", min_size=m, max_size=m).map(lambda mid: "0" + mid + "1")
)


def test_parse_smallest():
    ts = parse_string("01")
    assert ts.bits == (0, 1)
    assert ts.n == 2


def test_parse_example():
    assert parse_string("0011100011").n == 10


@pytest.mark.parametrize(
    "text, exc",
    [
        ("", EmptyString),
        ("0", EmptyString),
        ("10", FirstBitNotZero),
        ("0110", LastBitNotOne),
        ("0121", IllegalCharacter),
        ("0 1", IllegalCharacter),
    ],
)
def test_parse_rejects(text, exc):
    with pytest.raises(exc) as info:
        parse_string(text)
    assert exc.rule in str(info.value)


def test_block_form_example():
    bf = block_form(parse_string("0011100011"))
    assert bf.s_blocks == (2, 3) and bf.t_blocks == (3, 2)
    assert (bf.k, bf.s, bf.t, bf.n) == (2, 5, 5, 10)
    assert bf.S == (2, 5) and bf.T == (3, 5)


def test_block_form_small():
    assert block_form(parse_string("01")) == BlockForm((1,), (1,))
    bf = block_form(parse_string("0101"))
    assert bf.k == 2 and set(bf.s_blocks + bf.t_blocks) == {1}


@given(threshold_strings)
def test_block_form_round_trip(text):
    ts = parse_string(text)
    bf = block_form(ts)
    assert bf.to_string() == ts
    assert block_form(bf.to_string()) == bf
    assert bf.s == bf.S[-1] and bf.t == bf.T[-1] and bf.n == bf.s + bf.t


def test_build_graph_small():
    g = build_graph(parse_string("01"))
    assert g.degrees == (1, 1) and g.edge_count == 1
    k4 = build_graph(parse_string("0111"))
    assert k4.degrees == (3, 3, 3, 3)


def test_build_graph_example_edges():
    # oracle: count pairs in an independently built adjacency
    A = brute_adjacency("0011100011")
    pairs = sum(A[i][j] for i in range(10) for j in range(i + 1, 10))
    assert pairs == 26
    assert build_graph(parse_string("0011100011")).edge_count == 26


def test_degree_sequence_example():
    assert degree_sequence(block_form(parse_string("0011100011"))) == [
        ("s1", 5, 2),
        ("t1", 6, 3),
        ("s2", 2, 3),
        ("t2", 9, 2),
    ]


@pytest.mark.parametrize("n", [3, 5, 8])
def test_degree_sequence_star_and_complete(n):
    star = block_form(parse_string("0" * (n - 1) + "1"))
    assert degree_sequence(star) == [("s1", 1, n - 1), ("t1", n - 1, 1)]
    complete = block_form(parse_string("0" + "1" * (n - 1)))
    assert sorted(vertex_degrees(complete)) == [n - 1] * n


@pytest.mark.parametrize("text", all_strings(12))
def test_degree_formula_matches_graph(text):
    ts = parse_string(text)
    g = build_graph(ts)
    assert vertex_degrees(block_form(ts)) == list(g.degrees)
    assert g.degrees == tuple(sum(r) for r in brute_adjacency(text))
    assert sum(g.degrees) % 2 == 0
    assert g.is_connected()
    assert all(i not in nb for i, nb in enumerate(g.neighbors))


@pytest.mark.parametrize("n", range(2, 13))
def test_string_count(n):
    strings = strings_of_order(n)
    assert len({str(parse_string(s)) for s in strings}) == 2 ** (n - 2)


def _induced_forbidden(g):
    for quad in itertools.combinations(range(g.n), 4):
        es = [(a, b) for a, b in itertools.combinations(quad, 2) if b in g.neighbors[a]]
        degs = sorted(sum(v in e for e in es) for v in quad)
        # C4: 4 edges, all degree 2; P4: 3 edges, degrees 1,1,2,2; 2K2: 2 disjoint edges
        if (len(es), degs) in [(4, [2, 2, 2, 2]), (3, [1, 1, 2, 2]), (2, [1, 1, 1, 1])]:
            return quad
    return None


@pytest.mark.parametrize("text", all_strings(8))
def test_no_forbidden_induced_subgraphs(text):
    assert _induced_forbidden(build_graph(parse_string(text))) is None


@pytest.mark.slow
@pytest.mark.parametrize("text", strings_of_order(9) + strings_of_order(10))
def test_no_forbidden_induced_subgraphs_large(text):
    assert _induced_forbidden(build_graph(parse_string(text))) is None


def test_dot_export():
    dot = to_dot(build_graph(parse_string("001")))
    assert dot.startswith("graph threshold {")
    assert "1 -- 3;" in dot and "2 -- 3;" in dot and "1 -- 2;" not in dot
    assert dot.count("--") == 2
