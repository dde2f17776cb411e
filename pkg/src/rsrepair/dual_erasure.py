"""Collaborative repair of two erased RS symbols at n-1 sub-symbols per replacement node.

Two replacement nodes (RNs) rebuild positions ``idx_star`` and ``idx_bar``.
Both first download one repair trace from each of the n-2 surviving nodes,
which yields t-1 traces of their own symbol. The last trace needs one
sub-symbol from the other RN:

* ``depth1`` (t divisible by the characteristic): both RNs derive what the
  other needs from their downloads alone, so the exchange is one parallel
  round.
* ``depth2`` (any t): the star RN scales its checks by tau so that the
  bar RN's first partial trace is exactly its missing term. Star recovers
  first, then computes the bar RN's missing repair trace from the recovered
  symbol.

Traces of ``lambda_alpha f(alpha)`` are collected throughout; division by
the GRS multiplier happens after reconstruction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, IncompleteDownload, RankError, SchemeInapplicable, SequencingError
from .report import BandwidthReport
from .rs_code import CheckSpec, CodeParams, check_eval, naive_recover
from .single_repair import answer_demand, check_eligible, demand_coefficients, repair_coefficients, target_trace
from .tower import Belem, Felem

DEPTH_ONE = "depth1"
DEPTH_TWO = "depth2"
STAR, BAR = "star", "bar"


@dataclass(frozen=True)
class DualPlan:
    code: CodeParams
    scheme: str
    idx_star: int
    idx_bar: int
    U: tuple[Felem, ...]
    V: tuple[Felem, ...]
    U_full: tuple[Felem, ...]
    V_full: tuple[Felem, ...]
    p_checks: tuple[CheckSpec, ...]
    q_checks: tuple[CheckSpec, ...]
    tau: Felem
    dep_p: tuple[Belem, ...] | None
    dep_q: tuple[Belem, ...] | None
    # derived protocol data
    helpers: tuple[int, ...]
    star_demands: dict[int, Felem]
    bar_demands: dict[int, Felem]
    star_weights: tuple[dict[int, Belem], ...]   # Tr(u_i (alpha - alpha*))
    bar_weights: tuple[dict[int, Belem], ...]    # Tr(v_i (alpha - alpha_bar))
    star_cross: Belem                            # Tr(u_t (alpha_bar - alpha*)), nonzero
    bar_cross: Belem                             # Tr(v_t (alpha* - alpha_bar)), nonzero
    star_basis: tuple[Felem, ...]                # p_i(alpha*) (times tau in depth2)
    star_dual: tuple[Felem, ...]
    bar_dual: tuple[Felem, ...]

    @property
    def alpha_star(self) -> Felem:
        return self.code.points[self.idx_star]

    @property
    def alpha_bar(self) -> Felem:
        return self.code.points[self.idx_bar]

    def demands(self, role: str) -> dict[int, Felem]:
        return self.star_demands if role == STAR else self.bar_demands


def check_applicable(code: CodeParams, scheme: str):
    tower = code.tower
    if scheme not in (DEPTH_ONE, DEPTH_TWO):
        raise ValueError(f"unknown two-erasure scheme {scheme!r}")
    if tower.t < 2:
        raise SchemeInapplicable("t = 1: root spaces are trivial, use naive repair")
    check_eligible(code)
    if scheme == DEPTH_ONE and tower.t % tower.p:
        raise SchemeInapplicable(f"char {tower.p} does not divide t={tower.t}")


def build_dual_plan(code: CodeParams, idx_star: int, idx_bar: int, scheme: str = DEPTH_ONE,
                    V=None) -> DualPlan:
    """Deterministic plan; ``V`` optionally overrides the bar RN's root-space basis."""
    if idx_star == idx_bar:
        raise DomainError("the two erased positions must differ")
    for i in (idx_star, idx_bar):
        if not 0 <= i < code.n:
            raise DomainError(f"position {i} outside 0..{code.n - 1}")
    check_applicable(code, scheme)
    tower = code.tower
    F = tower.F
    a_star, a_bar = code.points[idx_star], code.points[idx_bar]

    U = tower.root_space(a_star, a_bar)
    if V is None:
        V = U
    else:
        V = tuple(V)
        if len(V) != tower.t - 1 or not tower.is_independent(V):
            raise RankError("V must be t-1 independent elements")
        delta = F.sub(a_bar, a_star)
        if any(tower.trace_of_product(v, delta) for v in V):
            raise DomainError("V is not inside the root space")
    U_full, u_t = tower.extend_basis(U)
    V_full, v_t = tower.extend_basis(V)

    p_plain = tuple(CheckSpec(u, a_star) for u in U_full)
    q_checks = tuple(CheckSpec(v, a_bar) for v in V_full)
    pt_bar = check_eval(tower, p_plain[-1], a_bar)
    if pt_bar == 0:
        raise AssertionError("u_t fell inside the root space")

    dep_p = dep_q = None
    if scheme == DEPTH_ONE:
        tau = 1
        dep_p = tower.coords_in_basis(pt_bar, V)
        dep_q = tower.coords_in_basis(check_eval(tower, q_checks[-1], a_star), U)
    else:
        tau = F.div(V_full[0], pt_bar)
    p_checks = tuple(CheckSpec(u, a_star, tau) for u in U_full)

    helpers = tuple(i for i in range(code.n) if i not in (idx_star, idx_bar))
    star_basis = tuple(F.mul(tau, u) for u in U_full)
    star_cross = tower.trace_of_product(u_t, F.sub(a_bar, a_star))
    bar_cross = tower.trace_of_product(v_t, F.sub(a_star, a_bar))
    if not (star_cross and bar_cross):
        raise AssertionError("extension element lies in the root space")
    return DualPlan(
        code=code, scheme=scheme, idx_star=idx_star, idx_bar=idx_bar,
        U=U, V=V, U_full=U_full, V_full=V_full,
        p_checks=p_checks, q_checks=q_checks, tau=tau, dep_p=dep_p, dep_q=dep_q,
        helpers=helpers,
        star_demands=demand_coefficients(code, a_star, helpers, tau),
        bar_demands=demand_coefficients(code, a_bar, helpers),
        star_weights=tuple(repair_coefficients(tower, u, a_star, code.points, helpers) for u in U_full),
        bar_weights=tuple(repair_coefficients(tower, v, a_bar, code.points, helpers) for v in V_full),
        star_cross=star_cross, bar_cross=bar_cross,
        star_basis=star_basis, star_dual=tower.dual_basis(star_basis),
        bar_dual=tower.dual_basis(V_full),
    )


# --- replacement node state -------------------------------------------------

@dataclass
class RNState:
    role: str
    downloaded: dict[int, Belem] = field(default_factory=dict)
    partial_traces: list[Belem] | None = None
    exchanged_in: list[tuple[str, Belem]] = field(default_factory=list)
    exchanged_out: list[tuple[str, Belem]] = field(default_factory=list)
    traces: list[Belem] | None = None          # all t traces once complete
    recovered: Felem | None = None

    @property
    def bandwidth(self) -> int:
        return len(self.downloaded) + len(self.exchanged_in)

    def receive(self, position: int, value: Belem):
        if self.partial_traces is not None:
            raise SequencingError("download phase already closed")
        self.downloaded[position] = value


def finish_download(plan: DualPlan, state: RNState):
    """Close the download phase: form the t-1 traces obtainable without the other erasure."""
    missing = [i for i in plan.helpers if i not in state.downloaded]
    if missing:
        raise IncompleteDownload(f"{state.role} RN lacks repair traces from {missing}")
    B = plan.code.tower.B
    weights = plan.star_weights if state.role == STAR else plan.bar_weights
    state.partial_traces = [target_trace(B, w, state.downloaded) for w in weights[:-1]]


def download_phase(plan: DualPlan, surviving_symbols: dict[int, Felem]) -> tuple[RNState, RNState]:
    tower = plan.code.tower
    states = []
    for role in (STAR, BAR):
        st = RNState(role)
        for i, c in plan.demands(role).items():
            if i not in surviving_symbols:
                raise IncompleteDownload(f"surviving position {i} has no symbol")
            st.receive(i, answer_demand(tower, c, surviving_symbols[i]))
        finish_download(plan, st)
        states.append(st)
    return states[0], states[1]


def _require_download(state: RNState):
    if state.partial_traces is None:
        raise SequencingError(f"{state.role} RN has not finished its download phase")


def _other(role: str) -> str:
    return BAR if role == STAR else STAR


def _finish(plan: DualPlan, state: RNState, incoming: Belem, cross: Belem) -> Felem:
    """Append the last trace (download sum minus cross * incoming) and reconstruct."""
    tower = plan.code.tower
    B, F = tower.B, tower.F
    if state.recovered is not None:
        raise SequencingError(f"{state.role} RN already recovered its symbol")
    state.exchanged_in.append((_other(state.role), incoming))
    weights = plan.star_weights if state.role == STAR else plan.bar_weights
    last = B.sub(target_trace(B, weights[-1], state.downloaded), B.mul(cross, incoming))
    traces = state.traces = state.partial_traces + [last]
    if state.role == STAR:
        scaled = tower.combine(traces, plan.star_dual)
        idx = plan.idx_star
    else:
        scaled = tower.combine(traces, plan.bar_dual)
        idx = plan.idx_bar
    state.recovered = F.div(scaled, plan.code.multipliers[idx])
    return state.recovered


# --- depth one --------------------------------------------------------------

def collab_message_depth_one(plan: DualPlan, state: RNState) -> Belem:
    """Repair trace for the peer, equal to a helper answer from the erased position itself.

    bar RN: Tr(lambda f(a_bar) / (a_bar - a*)) from its partial traces via dep_p;
    star RN symmetrically via dep_q.
    """
    if plan.scheme != DEPTH_ONE:
        raise SequencingError("depth-one message requested from a depth-two plan")
    _require_download(state)
    B = plan.code.tower.B
    if state.role == BAR:
        combo, cross = B.dot(plan.dep_p, state.partial_traces), plan.star_cross
    else:
        combo, cross = B.dot(plan.dep_q, state.partial_traces), plan.bar_cross
    msg = B.div(combo, cross)
    state.exchanged_out.append((_other(state.role), msg))
    return msg


def complete_depth_one(plan: DualPlan, state: RNState, incoming: Belem) -> Felem:
    _require_download(state)
    cross = plan.star_cross if state.role == STAR else plan.bar_cross
    return _finish(plan, state, incoming, cross)


def run_depth_one(plan: DualPlan, surviving_symbols: dict[int, Felem], expected=None):
    star, bar = download_phase(plan, surviving_symbols)
    to_star = collab_message_depth_one(plan, bar)
    to_bar = collab_message_depth_one(plan, star)
    f_star = complete_depth_one(plan, star, to_star)
    f_bar = complete_depth_one(plan, bar, to_bar)
    return f_star, f_bar, _report(plan, star, bar, surviving_symbols, expected)


# --- depth two --------------------------------------------------------------

def depth_two_bar_message(plan: DualPlan, bar: RNState) -> Belem:
    """Tr(v_1 lambda f(a_bar)), the bar RN's first partial trace."""
    if plan.scheme != DEPTH_TWO or bar.role != BAR:
        raise SequencingError("first depth-two message comes from the bar RN")
    _require_download(bar)
    msg = bar.partial_traces[0]
    bar.exchanged_out.append((STAR, msg))
    return msg


def depth_two_complete_star(plan: DualPlan, star: RNState, incoming: Belem) -> Felem:
    if star.role != STAR:
        raise SequencingError("only the star RN completes from the bar message")
    _require_download(star)
    # p*_t(a_bar) = v_1, so the missing term is the incoming trace itself
    return _finish(plan, star, incoming, 1)


def depth_two_star_message(plan: DualPlan, star: RNState) -> Belem:
    """Tr(lambda* f(a*) / (a* - a_bar)), computable only after star has recovered."""
    if star.recovered is None:
        raise SequencingError("star RN must recover before sending its repair trace")
    tower = plan.code.tower
    F = tower.F
    c = F.div(plan.code.multipliers[plan.idx_star], F.sub(plan.alpha_star, plan.alpha_bar))
    msg = answer_demand(tower, c, star.recovered)
    star.exchanged_out.append((BAR, msg))
    return msg


def depth_two_complete_bar(plan: DualPlan, bar: RNState, incoming: Belem) -> Felem:
    if bar.role != BAR:
        raise SequencingError("only the bar RN completes from the star message")
    _require_download(bar)
    if not bar.exchanged_out:
        raise SequencingError("bar RN must send its trace before completing")
    return _finish(plan, bar, incoming, plan.bar_cross)


def run_depth_two(plan: DualPlan, surviving_symbols: dict[int, Felem], expected=None):
    """Sequential protocol: bar -> star, star recovers, star -> bar, bar recovers."""
    if plan.scheme != DEPTH_TWO:
        raise SequencingError("run_depth_two needs a depth-two plan")
    star, bar = download_phase(plan, surviving_symbols)
    to_star = depth_two_bar_message(plan, bar)
    f_star = depth_two_complete_star(plan, star, to_star)
    to_bar = depth_two_star_message(plan, star)
    f_bar = depth_two_complete_bar(plan, bar, to_bar)
    return f_star, f_bar, _report(plan, star, bar, surviving_symbols, expected)


def run_dual(plan: DualPlan, surviving_symbols: dict[int, Felem], expected=None):
    runner = run_depth_one if plan.scheme == DEPTH_ONE else run_depth_two
    return runner(plan, surviving_symbols, expected)


def _report(plan, star, bar, surviving, expected):
    if expected is None:
        oracle = naive_recover(plan.code, surviving, (plan.idx_star, plan.idx_bar))
        expected = (oracle[plan.idx_star], oracle[plan.idx_bar])
    return BandwidthReport.build(
        plan.code, plan.scheme, (plan.idx_star + 1, plan.idx_bar + 1),
        (len(star.downloaded), len(bar.downloaded)),
        (len(star.exchanged_in), len(bar.exchanged_in)),
        (star.recovered == expected[0], bar.recovered == expected[1]),
    )
