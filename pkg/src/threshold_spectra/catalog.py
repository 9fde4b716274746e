"""Exhaustive enumeration, batch verification and the cospectral-mate search."""

from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import analysis, exact, quotient, spectral
from .threshold_model import ThresholdString, block_form, build_graph, parse_string, vertex_degrees


class OrderTooSmall(ValueError):
    pass


@dataclass
class SearchReport:
    n: int
    strings_examined: int
    fingerprint_groups: dict[str, list[str]] = field(default_factory=dict)
    cospectral_pairs: list[tuple[str, str]] = field(default_factory=list)
    theorem_violations: list[tuple[str, str, str]] = field(default_factory=list)
    records: list[dict] = field(default_factory=list, repr=False)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "strings_examined": self.strings_examined,
            "fingerprint_groups": dict(sorted(self.fingerprint_groups.items())),
            "cospectral_pairs": [list(p) for p in self.cospectral_pairs],
            "theorem_violations": [list(v) for v in self.theorem_violations],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["string", "fingerprint_hash", "distinct_count", "family"])
        for r in self.records:
            w.writerow([r["string"], r["fingerprint_hash"], r["distinct_count"], r["family"]])
        return buf.getvalue()


def enumerate_strings(n: int) -> Iterator[ThresholdString]:
    if n < 2:
        raise OrderTooSmall(f"order must be at least 2, got {n}")
    for mid in itertools.product((0, 1), repeat=n - 2):
        yield ThresholdString((0, *mid, 1))


def _map(fn: Callable, items: Sequence, workers: int | None):
    if not workers or workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=chunk))


# ---------------------------------------------------------------------------
# cospectral search
# ---------------------------------------------------------------------------

def _fingerprint_record(text: str) -> dict:
    ts = parse_string(text)
    p = exact.full_char_poly(ts)
    cls = analysis.classify(ts, p)
    return {
        "string": text,
        "k": block_form(ts).k,
        "fingerprint": p.fingerprint(),
        "fingerprint_hash": p.fingerprint_hash(),
        "distinct_count": cls.distinct_count,
        "family": cls.family,
    }


def search_order(n: int, workers: int | None = None) -> SearchReport:
    strings = [str(ts) for ts in enumerate_strings(n)]
    records = sorted(_map(_fingerprint_record, strings, workers), key=lambda r: r["string"])
    # strings with different k can never be cospectral (k positive eigenvalues)
    by_k: dict[int, list[dict]] = {}
    for r in records:
        by_k.setdefault(r["k"], []).append(r)
    groups: dict[str, list[str]] = {}
    for k in sorted(by_k):
        for r in by_k[k]:
            groups.setdefault(r["fingerprint"], []).append(r["string"])
    pairs = []
    for fp in sorted(groups):
        members = sorted(groups[fp])
        for a, b in itertools.combinations(members, 2):
            if not exact.spectra_equal(parse_string(a), parse_string(b)):
                raise AssertionError(f"fingerprint collision without cospectrality: {a}, {b}")
            pairs.append((a, b))
    return SearchReport(n, len(strings), groups, sorted(pairs), [], records)


def cospectral_search(n_max: int = 12, workers: int | None = None, n_min: int = 2) -> list[SearchReport]:
    if n_max < 2:
        raise OrderTooSmall(f"order must be at least 2, got {n_max}")
    return [search_order(n, workers) for n in range(max(2, n_min), n_max + 1)]


# ---------------------------------------------------------------------------
# batch verification
# ---------------------------------------------------------------------------

SPECTRUM_TOL = 1e-10
BOUND_SLACK = 1e-9


def check_string(text: str) -> list[tuple[str, str, str]]:
    """Run every identity, bound and classification claim on one string."""
    ts = parse_string(text)
    bf = block_form(ts)
    g = build_graph(ts)
    n = bf.n
    out: list[tuple[str, str, str]] = []

    def fail(name: str, detail: str):
        out.append((name, text, detail))

    if vertex_degrees(bf) != list(g.degrees):
        fail("degree-formula", f"{vertex_degrees(bf)} vs {list(g.degrees)}")

    p = exact.full_char_poly(ts)
    p_direct = exact.full_char_poly_direct(ts)
    if p != p_direct:
        fail("char-poly-routes", "structural and full-matrix polynomials differ")

    inertia = exact.inertia_formula(bf)
    actual = exact.exact_inertia(p_direct)
    if inertia != actual:
        fail("inertia", f"formula {inertia.as_tuple()} vs exact {actual.as_tuple()}")

    det = exact.det_A_formula(bf)
    const = (-1) ** n * p_direct.coefficients[-1]
    if det != const:
        fail("determinant", f"formula {det} vs char-poly {const}")

    qs = quotient.build_quotient(bf)
    qpoly = exact.char_poly(qs.calB_pi)
    if not exact.is_squarefree(qpoly):
        fail("quotient-simple", "quotient polynomial has a repeated root")
    dB = exact.determinant(qs.B_pi)
    if exact.det_Bpi_formula(bf) != dB:
        fail("quotient-determinant", f"det B_pi formula {exact.det_Bpi_formula(bf)} vs {dB}")
    dcB = exact.determinant(qs.calB_pi)
    if exact.det_calBpi_formula(bf) != dcB:
        fail("quotient-determinant", f"det calB_pi formula {exact.det_calBpi_formula(bf)} vs {dcB}")
    if quotient.symmetrized_quotient_squares(qs) != quotient.conjugated_quotient_squares(qs):
        fail("symmetrization", "diagonal conjugation does not symmetrize the quotient")

    calA = exact.normalized_adjacency_exact(ts)
    P = [[Fraction(x) for x in row] for row in quotient.characteristic_matrix(qs, n)]
    if exact.mat_mul(calA, P) != exact.mat_mul(P, qs.calB_pi):
        fail("lifting-identity", "A P != P calB_pi")

    for lam, f in spectral.direct_eigenvectors(bf) if (bf.s > bf.k or bf.t > bf.k) else []:
        Af = [sum(a * x for a, x in zip(row, f)) for row in calA]
        if Af != [lam * x for x in f]:
            fail("direct-eigenvectors", f"vector for {lam} is not an eigenvector")
        if spectral.degree_inner(bf, f, [1] * n) != 0:
            fail("direct-eigenvectors", f"vector for {lam} not degree-orthogonal to ones")

    sp = spectral.full_spectrum(ts)
    oracle = spectral.oracle_spectrum(g).values()
    if sp.n != n or not spectral.spectra_close(sp.values(), oracle, SPECTRUM_TOL):
        fail("spectrum-union", "structural spectrum differs from oracle")

    l1 = analysis.lambda1_bounds(bf)
    if not l1.contains(oracle[0], BOUND_SLACK):
        fail("lambda1-bounds", f"{oracle[0]} outside [{l1.lower}, {l1.upper}]")
    lo, hi = analysis.energy_bounds(bf)
    E = sum(abs(v) for v in oracle)
    if not (float(lo) - BOUND_SLACK <= E <= float(hi) + BOUND_SLACK):
        fail("energy-bounds", f"{E} outside [{lo}, {hi}]")

    if analysis.randic_index(bf) != analysis.randic_index_direct(ts):
        fail("randic-index", f"{analysis.randic_index(bf)} vs {analysis.randic_index_direct(ts)}")

    if exact.distinct_positive_count(p) != bf.k:
        fail("positive-count", f"{exact.distinct_positive_count(p)} distinct positive vs k = {bf.k}")

    cls = analysis.classify(ts, p)
    if not cls.consistent:
        fail("classification", f"family {cls.family} predicts {cls.predicted_count}, exact count {cls.distinct_count}")

    if bf.k == 2:
        rep = analysis.k2_multiplicity_check(bf, p)
        if not rep.part_a_holds:
            fail("k2-multiplicity-a", f"mult(-1/(n-1)) = {rep.mult_neg_inv_n1}, expected {rep.expected_neg_inv_n1}")
        if not rep.part_b_holds:
            fail(
                "k2-multiplicity-b",
                f"mult(-1/t) = {rep.mult_neg_inv_t}, t1 = {rep.t1}, condition {rep.condition}",
            )

    cf = analysis.closed_form_spectrum(ts)
    if cf is not None and not spectral.spectra_close(cf.values(), oracle, SPECTRUM_TOL):
        fail("closed-form", f"{cf.family} closed form differs from oracle")
    return out


def verify_theorems(n_max: int = 10, workers: int | None = None, n_min: int = 2) -> SearchReport:
    if n_max < 2:
        raise OrderTooSmall(f"order must be at least 2, got {n_max}")
    strings = [str(ts) for m in range(max(2, n_min), n_max + 1) for ts in enumerate_strings(m)]
    results = _map(check_string, strings, workers)
    violations = sorted(v for vs in results for v in vs)
    return SearchReport(n_max, len(strings), theorem_violations=violations)


def reports_to_json(reports: Sequence[SearchReport]) -> str:
    return json.dumps([r.to_json_dict() for r in reports], sort_keys=True, indent=1)
