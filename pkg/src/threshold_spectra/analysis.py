"""Invariants, bounds, closed forms and small-spectrum classification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import exact
from .exact import CharPoly, full_char_poly
from .quotient import build_quotient
from .spectral import Spectrum, full_spectrum
from .threshold_model import BlockForm, ThresholdString, block_form, build_graph


class NotK2(ValueError):
    pass


# ---------------------------------------------------------------------------
# Randic index R_{-1}
# ---------------------------------------------------------------------------

def randic_index(bf: BlockForm) -> Fraction:
    """``sum over edges of 1/(d_i d_j)`` from the block form alone.

    Edges leave a zero-block only towards later one-blocks, and leave a
    one-block towards later one-blocks; one-blocks are also cliques.
    """
    r = build_quotient(bf).r
    k = bf.k
    # r_t[i]: one-block i+1; r_s[i]: zero-block i+1
    r_s, r_t = r[0::2], r[1::2]
    cross = Fraction(0)
    for i in range(k):
        later = sum(r_t[i:], Fraction(0))
        cross += r_s[i] * later
        cross += r_t[i] * (later - r_t[i])
    inner = sum(
        (Fraction(comb(ti, 2), (bf.t + Si - 1) ** 2) for ti, Si in zip(bf.t_blocks, bf.S) if ti > 1),
        Fraction(0),
    )
    return cross + inner


def randic_index_direct(ts: ThresholdString) -> Fraction:
    g = build_graph(ts)
    d = g.degrees
    return sum((Fraction(1, d[i] * d[j]) for i, j in g.edges()), Fraction(0))


# ---------------------------------------------------------------------------
# energy and smallest-eigenvalue bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EnergyReport:
    energy: float
    lower_bound: Fraction
    upper_bound: Fraction

    @property
    def within(self) -> bool:
        return float(self.lower_bound) - 1e-9 <= self.energy <= float(self.upper_bound) + 1e-9


def energy(sp: Spectrum) -> float:
    return sum(abs(float(e.value)) * e.multiplicity for e in sp.entries)


def energy_bounds(bf: BlockForm) -> tuple[Fraction, Fraction]:
    n, k, t = bf.n, bf.k, bf.t
    tail = sum((Fraction(ti - 1, t + Si - 1) for ti, Si in zip(bf.t_blocks, bf.S)), Fraction(0))
    lower = 2 * (Fraction(k, t) + tail)
    upper = 2 * (Fraction(k * (n - bf.t_blocks[-1]), n - 1) + tail)
    return lower, upper


def energy_report(ts: ThresholdString, sp: Spectrum | None = None) -> EnergyReport:
    sp = sp or full_spectrum(ts)
    lo, hi = energy_bounds(block_form(ts))
    return EnergyReport(energy(sp), lo, hi)


@dataclass(frozen=True)
class Lambda1Bounds:
    lower: Fraction
    upper: Fraction

    def contains(self, value: float, slack: float = 1e-9) -> bool:
        return float(self.lower) - slack <= value <= float(self.upper) + slack


def lambda1_bounds(bf: BlockForm) -> Lambda1Bounds:
    n = bf.n
    return Lambda1Bounds(
        Fraction(-(n - bf.t_blocks[-1]), n - 1),
        Fraction(-1, bf.t + bf.s_blocks[0] - 1),
    )


# ---------------------------------------------------------------------------
# closed-form spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Surd:
    """``rational + coeff * sqrt(radicand)``."""

    rational: Fraction
    coeff: Fraction
    radicand: Fraction

    def __float__(self) -> float:
        return float(self.rational) + float(self.coeff) * math.sqrt(self.radicand)

    def __str__(self) -> str:
        sign = "+" if self.coeff > 0 else "-"
        return f"{self.rational} {sign} {abs(self.coeff)}*sqrt({self.radicand})"


@dataclass(frozen=True)
class ClosedForm:
    family: str
    entries: tuple[tuple[Fraction | Surd, int], ...]

    @property
    def n(self) -> int:
        return sum(m for _, m in self.entries)

    def values(self) -> list[float]:
        return sorted(float(v) for v, m in self.entries for _ in range(m))

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "entries": [{"value": str(v), "multiplicity": m} for v, m in self.entries],
        }


def _nonzero(entries):
    return tuple((v, m) for v, m in entries if m > 0)


def _quadratic_pair(denom: Fraction, b: Fraction, disc: Fraction) -> list[tuple[Surd, int]]:
    # roots of the form denom * (b +- sqrt(disc))
    return [(Surd(denom * b, -denom, disc), 1), (Surd(denom * b, denom, disc), 1)]


def closed_form_spectrum(ts: ThresholdString) -> ClosedForm | None:
    bf = block_form(ts)
    n, s, t = bf.n, bf.s, bf.t
    F = Fraction
    if bf.k == 1:
        if s == 1:
            return ClosedForm("complete", ((F(1), 1), (F(-1, n - 1), n - 1)))
        if t == 1:
            return ClosedForm("star", ((F(-1), 1), (F(0), n - 2), (F(1), 1)))
        return ClosedForm(
            "split-0^s1^t",
            ((F(-(n - t), n - 1), 1), (F(-1, n - 1), t - 1), (F(0), s - 1), (F(1), 1)),
        )
    if bf.k != 2 or bf.s_blocks[0] != 1:
        return None
    (_, s2), (t1, t2) = bf.s_blocks, bf.t_blocks
    if t2 == 1 and t >= 2 and n - t - 1 >= 1:
        radicand = 1 + F(4 * t * (t - 1) * (n - t - 1), n - 1)
        return ClosedForm(
            "pineapple",
            _nonzero(
                [(F(1), 1), (F(0), n - t - 2), (F(-1, t), t - 1)]
                + _quadratic_pair(F(1, 2 * t), F(-1), radicand)
            ),
        )
    b = s2 * t2 + t
    disc = F(b * b + 4 * t1 * s2 * t * (n - 1))
    return ClosedForm(
        "k2-s1=1",
        _nonzero(
            [(F(1), 1), (F(0), s - 2), (F(-1, t), t1), (F(-1, n - 1), t2 - 1)]
            + _quadratic_pair(F(1, 2 * t * (n - 1)), F(-b), disc)
        ),
    )


# ---------------------------------------------------------------------------
# k = 2 multiplicities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class K2MultiplicityReport:
    string: str
    mult_neg_inv_n1: int
    expected_neg_inv_n1: int
    mult_neg_inv_t: int
    t1: int
    condition: bool
    neg_inv_t_in_quotient: bool

    @property
    def part_a_holds(self) -> bool:
        return self.mult_neg_inv_n1 == self.expected_neg_inv_n1

    @property
    def part_b_holds(self) -> bool:
        """``mult(-1/t) == t_1`` exactly when the block condition holds."""
        return (self.mult_neg_inv_t == self.t1) == self.condition

    @property
    def quotient_condition_holds(self) -> bool:
        """``-1/t`` is a quotient eigenvalue exactly when the block condition holds."""
        return self.neg_inv_t_in_quotient == self.condition


def k2_condition(bf: BlockForm) -> bool:
    (s1, s2), (t1, _) = bf.s_blocks, bf.t_blocks
    return s1 == 1 or s1 == s2 * (bf.t * t1 - 1) + 1


def k2_multiplicity_check(bf: BlockForm, p: CharPoly | None = None) -> K2MultiplicityReport:
    if bf.k != 2:
        raise NotK2(f"string has k = {bf.k} blocks, expected 2")
    ts = bf.to_string()
    p = p or full_char_poly(ts)
    qpoly = exact.quotient_char_poly(bf)
    neg_inv_t = Fraction(-1, bf.t)
    return K2MultiplicityReport(
        string=str(ts),
        mult_neg_inv_n1=p.root_multiplicity(Fraction(-1, bf.n - 1)),
        expected_neg_inv_n1=bf.t_blocks[1] - 1,
        mult_neg_inv_t=p.root_multiplicity(neg_inv_t),
        t1=bf.t_blocks[0],
        condition=k2_condition(bf),
        neg_inv_t_in_quotient=qpoly(neg_inv_t) == 0,
    )


# ---------------------------------------------------------------------------
# classification by number of distinct eigenvalues
# ---------------------------------------------------------------------------

# family -> predicted number of distinct eigenvalues, in matching priority
FAMILIES = {
    "complete": 2,
    "star": 3,
    "split-0^s1^t": 4,
    "01^(n-3)01": 4,
    "pineapple": 5,
    "01^(n-t-2)01^t": 5,
    "0^s10^(n-s-2)1": 5,
    "balanced-k2": 5,
}
OTHER = "other"


@dataclass(frozen=True)
class ClassificationResult:
    distinct_count: int
    family: str
    witness: dict = field(default_factory=dict)
    matches: tuple[str, ...] = ()

    @property
    def predicted_count(self) -> int | None:
        return FAMILIES.get(self.family)

    @property
    def consistent(self) -> bool:
        """Pattern prediction agrees with the exact count."""
        if self.family == OTHER:
            return self.distinct_count > 5
        return self.predicted_count == self.distinct_count

    def to_json_dict(self) -> dict:
        return {"distinct_count": self.distinct_count, "family": self.family, "witness": self.witness}


def match_families(ts: ThresholdString) -> list[tuple[str, dict]]:
    """Every small-spectrum string pattern the string fits, in priority order."""
    bf = block_form(ts)
    n, k = bf.n, bf.k
    out: list[tuple[str, dict]] = []
    if k == 1:
        s = bf.s
        if s == 1:
            out.append(("complete", {"n": n}))
        if bf.t == 1 and n >= 3:
            out.append(("star", {"n": n}))
        if 1 < s < n - 1:
            out.append(("split-0^s1^t", {"s": s, "t": n - s}))
        return out
    if k != 2:
        return out
    (s1, s2), (t1, t2) = bf.s_blocks, bf.t_blocks
    t = bf.t
    if s1 == 1 and s2 == 1 and t2 == 1:
        out.append(("01^(n-3)01", {"n": n}))
    if n < 5:
        return out
    if s1 == 1 and t2 == 1:
        out.append(("pineapple", {"t": t, "pendants": s2}))
    if s1 == 1 and s2 == 1 and t2 > 1:
        out.append(("01^(n-t-2)01^t", {"t": t2}))
    if t1 == 1 and t2 == 1:
        out.append(("0^s10^(n-s-2)1", {"s": s1}))
    if t2 == 1 and s1 == s2 * (t * t - t - 1) + 1:
        out.append(("balanced-k2", {"s1": s1, "s2": s2, "t": t}))
    return out


def classify(ts: ThresholdString, p: CharPoly | None = None) -> ClassificationResult:
    p = p or full_char_poly(ts)
    d = exact.distinct_count(p)
    matches = match_families(ts)
    if not matches:
        return ClassificationResult(d, OTHER)
    family, witness = matches[0]
    return ClassificationResult(d, family, witness, tuple(f for f, _ in matches))


# ---------------------------------------------------------------------------
# whole-string report
# ---------------------------------------------------------------------------

def analyze(ts: ThresholdString, precision: int = 4, exact_only: bool = False) -> dict:
    from .reference import reference_notes

    bf = block_form(ts)
    sp = full_spectrum(ts)
    p = full_char_poly(ts)
    lo, hi = energy_bounds(bf)
    l1 = lambda1_bounds(bf)
    cls = classify(ts, p)
    inertia = exact.inertia_formula(bf)
    det = exact.det_A_formula(bf)
    E = energy(sp)
    report = {
        "string": str(ts),
        "block_form": bf.as_dict(),
        "spectrum": sp.to_json_dict(precision, exact_only),
        "inertia": {"n_minus": inertia.n_minus, "n_zero": inertia.n_zero, "n_plus": inertia.n_plus},
        "det": str(det),
        "energy_bounds": [str(lo), str(hi)],
        "lambda1_bounds": [str(l1.lower), str(l1.upper)],
        "randic_index": str(randic_index(bf)),
        "distinct_count": cls.distinct_count,
        "family": cls.family,
    }
    if not exact_only:
        report["energy"] = round(E, precision)
    notes = reference_notes(ts, sp)
    if notes:
        report["notes"] = notes
    return report
