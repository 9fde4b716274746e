"""Printed reference spectra and their disagreements with computed ones.

Reference values are 4-decimal prints.  Each is checked against the
structural spectrum; a mismatch is adjudicated by the full-matrix oracle.
"""

from __future__ import annotations

from .spectral import Spectrum, full_spectrum, oracle_spectrum
from .threshold_model import ThresholdString, build_graph

DISPLAY_TOL = 5e-4

# string -> {"quotient": [...], "direct": [(value, multiplicity), ...]}
REFERENCE_SPECTRA: dict[str, dict] = {
    "0011100011": {
        "quotient": [-0.6063, -0.3072, 0.3579, 1.0],
        "direct": [(0.0, 3), (-0.2, 2), (-0.1111, 1)],
    },
}


def reference_notes(ts: ThresholdString, sp: Spectrum | None = None) -> list[str]:
    ref = REFERENCE_SPECTRA.get(str(ts))
    if ref is None:
        return []
    sp = sp or full_spectrum(ts)
    oracle = oracle_spectrum(build_graph(ts)).values()
    computed = sp.collapsed()
    notes = []
    qvals = sorted(float(e.value) for e in sp.entries if e.provenance == "quotient")
    for want, got in zip(sorted(ref["quotient"]), qvals):
        if abs(want - got) > DISPLAY_TOL:
            notes.append(f"reference quotient eigenvalue {want} differs from computed {got:.4f}")
    for value, mult in ref["direct"]:
        found = sum(m for v, m in computed if abs(float(v) - value) <= DISPLAY_TOL)
        in_oracle = sum(1 for v in oracle if abs(v - value) <= DISPLAY_TOL)
        if found == mult and in_oracle == mult:
            continue
        # the direct value of the same multiplicity that the reference most likely meant
        direct = [(v, m) for v, m in computed if m == mult and abs(float(v) - value) > DISPLAY_TOL]
        nearest = min(direct, key=lambda vm: abs(float(vm[0]) - value), default=None)
        msg = (
            f"reference value {value} (multiplicity {mult}) is not an eigenvalue: "
            f"full-matrix oracle finds it {in_oracle} times"
        )
        if nearest is not None:
            v, m = nearest
            confirmed = sum(1 for o in oracle if abs(o - float(v)) <= 1e-10)
            msg += f"; the string gives {v} = {float(v):.4f} with multiplicity {m}, oracle confirms {confirmed}"
        notes.append(msg)
    return notes
