"""Result comparison for capacity-planning queries."""

from __future__ import annotations

from .graph import CpResult


def compare_results(candidate: CpResult, golden: CpResult) -> bool:
    """Type-aware equality between a candidate result and the golden one.

    Graphs compare by canonical digest (attribute-aware isomorphism for
    named graphs), lists by exact ordered equality, scalars strictly.
    A kind mismatch is always a failure.
    """
    if not isinstance(candidate, CpResult) or not isinstance(golden, CpResult):
        return False
    if candidate.kind != golden.kind:
        return False
    if candidate.kind == "ranked-list":
        cand = [(str(n), float(s)) for n, s in candidate.value]
        gold = [(str(n), float(s)) for n, s in golden.value]
        return cand == gold
    if candidate.kind == "name-list":
        return list(candidate.value) == list(golden.value)
    return candidate.value == golden.value
