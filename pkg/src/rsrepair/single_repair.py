"""Trace repair of one erased RS symbol from n-1 sub-symbols, one per surviving node."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, IncompleteDownload, SchemeInapplicable
from .rs_code import CheckSpec, CodeParams
from .tower import Belem, Felem, Tower


def answer_demand(tower: Tower, coeff: Felem, symbol: Felem) -> Belem:
    """What a surviving node returns for demand coefficient c: Tr(c * symbol)."""
    return tower.trace_of_product(coeff, symbol)


def node_repair_trace(tower: Tower, symbol: Felem, alpha: Felem, alpha_star: Felem,
                      lam: Felem = 1) -> Belem:
    """Tr(lam * symbol / (alpha - alpha_star))."""
    if alpha == alpha_star:
        raise DomainError("a node cannot send a repair trace for its own position")
    F = tower.F
    return answer_demand(tower, F.div(lam, F.sub(alpha, alpha_star)), symbol)


def repair_coefficients(tower: Tower, u: Felem, center: Felem, points, positions) -> dict[int, Belem]:
    """Tr(u (alpha - center)) for every listed position: the B-weights of the repair traces."""
    F = tower.F
    return {i: tower.trace_of_product(u, F.sub(points[i], center)) for i in positions}


def demand_coefficients(code: CodeParams, center: Felem, positions, scale: Felem = 1) -> dict[int, Felem]:
    """scale * lambda_alpha / (alpha - center) for every listed position."""
    F = code.tower.F
    lam = code.multipliers
    return {i: F.mul(scale, F.div(lam[i], F.sub(code.points[i], center))) for i in positions}


def check_eligible(code: CodeParams):
    t = code.tower
    if not code.repair_eligible:
        raise SchemeInapplicable(
            f"n-k = {code.n - code.k} is below |B|^(t-1) = {t.Q ** (t.t - 1)}")


@dataclass(frozen=True)
class SinglePlan:
    code: CodeParams
    erased: int
    basis: tuple[Felem, ...]
    dual: tuple[Felem, ...]
    checks: tuple[CheckSpec, ...]
    demands: dict[int, Felem]
    weights: tuple[dict[int, Belem], ...]   # weights[i][alpha] = Tr(u_i (alpha - alpha*))

    @property
    def helpers(self) -> list[int]:
        return sorted(self.demands)

    @property
    def bandwidth(self) -> int:
        return len(self.demands)


def build_single_plan(code: CodeParams, erased: int) -> SinglePlan:
    if not 0 <= erased < code.n:
        raise DomainError(f"position {erased} outside 0..{code.n - 1}")
    check_eligible(code)
    tower = code.tower
    star = code.points[erased]
    helpers = [i for i in range(code.n) if i != erased]
    basis = tower.complete_basis()
    return SinglePlan(
        code=code,
        erased=erased,
        basis=basis,
        dual=tower.dual_basis(basis),
        checks=tuple(CheckSpec(u, star) for u in basis),
        demands=demand_coefficients(code, star, helpers),
        weights=tuple(repair_coefficients(tower, u, star, code.points, helpers) for u in basis),
    )


def target_trace(B, weights: dict[int, Belem], traces: dict[int, Belem]) -> Belem:
    """-sum_alpha w_alpha * trace_alpha over B."""
    acc = 0
    for i, w in weights.items():
        if w:
            acc = B.add(acc, B.mul(w, traces[i]))
    return B.neg(acc)


def recover_single(plan: SinglePlan, traces: dict[int, Belem]) -> Felem:
    missing = [i for i in plan.demands if i not in traces]
    if missing:
        raise IncompleteDownload(f"no repair trace from positions {missing}")
    tower = plan.code.tower
    targets = [target_trace(tower.B, w, traces) for w in plan.weights]
    scaled = tower.reconstruct_from_traces(targets, plan.basis, plan.dual)
    return tower.F.div(scaled, plan.code.multipliers[plan.erased])


def repair_single(plan: SinglePlan, symbols: dict[int, Felem]) -> Felem:
    """Convenience driver: query every helper through the demand protocol and recover."""
    tower = plan.code.tower
    traces = {i: answer_demand(tower, c, symbols[i]) for i, c in plan.demands.items() if i in symbols}
    return recover_single(plan, traces)
