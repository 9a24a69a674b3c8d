"""One-call checks of the structural facts about Q_n and R_n, with witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from . import families
from .ehrhart import delta_polynomial
from .eulerian import DESCENT_MAX_N, eulerian_descents, eulerian_recurrence
from .polytope import apply_map, negate, normalized_volume, pyramid
from .reflexive import dual_polytope, find_equivalence, is_self_dual


@dataclass
class ClaimResult:
    theorem: str
    n: int
    passed: bool
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "n": self.n, "pass": self.passed, "witness": self.witness}

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.theorem} n={self.n}: {self.witness}"


def volume(n: int) -> ClaimResult:
    vol = normalized_volume(families.make_Qn(n))
    return ClaimResult("volume", n, vol == factorial(n), {"volume": vol, "n_factorial": factorial(n)})


def selfdual(n: int) -> ClaimResult:
    Q = families.make_Qn(n)
    dual = dual_polytope(Q)
    m = is_self_dual(Q)
    ok = m is not None and apply_map(Q, m) == dual and dual == negate(Q)
    return ClaimResult("selfdual", n, ok, {
        "dual_is_negation": dual == negate(Q),
        "map": m.to_json() if m else None,
    })


def delta_eulerian(n: int, use_reciprocity: bool = False) -> ClaimResult:
    delta = delta_polynomial(families.make_Qn(n), use_reciprocity)
    rec = eulerian_recurrence(n).poly
    ok = delta == rec
    wit = {"delta": list(delta.coeffs), "eulerian": list(rec.coeffs)}
    if n <= DESCENT_MAX_N:
        desc = eulerian_descents(n).poly
        ok = ok and desc == rec
        wit["eulerian_descents"] = list(desc.coeffs)
    return ClaimResult("delta-eulerian", n, ok, wit)


def rntilde(n: int) -> ClaimResult:
    image = apply_map(families.make_Qn(n), families.qn_to_rntilde(n))
    target = families.make_Rn_tilde(n)
    return ClaimResult("rntilde", n, image == target, {
        "image": [list(v) for v in image.vertices],
        "rn_tilde": [list(v) for v in target.vertices],
    })


def pyramid_claim(n: int) -> ClaimResult:
    Q = families.make_Qn(n)
    pyr = pyramid(Q)
    dq, dp = delta_polynomial(Q), delta_polynomial(pyr)
    m = find_equivalence(pyr, families.make_Rn(n))
    return ClaimResult("pyramid", n, dq == dp and m is not None, {
        "delta_Qn": list(dq.coeffs),
        "delta_pyramid": list(dp.coeffs),
        "pyramid_to_Rn": m.to_json() if m else None,
    })


THEOREMS = {
    "volume": volume,
    "selfdual": selfdual,
    "delta-eulerian": delta_eulerian,
    "rntilde": rntilde,
    "pyramid": pyramid_claim,
}
