"""Deterministic in-process storage cluster with failure injection and a message ledger.

Nodes are numbered 1..n; node i stores the symbol at code position i-1. A
replacement node (RN) takes over the id of the node it rebuilds. Every
transfer is logged with its size in sub-symbols (a whole symbol counts t);
demand coefficients are control traffic and are logged with size 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import dual_erasure as de
from .errors import DomainError, SchemeInapplicable, UnsupportedFailures
from .report import BandwidthReport
from .rs_code import CodeParams, encode_systematic, naive_recover
from .single_repair import answer_demand, build_single_plan, recover_single
from .tower import Belem, Felem

DOWNLOAD, COLLAB = "download", "collab"


@dataclass(frozen=True)
class LogRecord:
    src: int
    dst: int
    kind: str        # demand | trace | symbol
    size: int
    phase: str       # download | collab

    def to_dict(self) -> dict:
        return {"from": self.src, "to": self.dst, "kind": self.kind, "size": self.size, "phase": self.phase}


@dataclass
class Node:
    symbol: Felem | None
    alive: bool = True

    def respond(self, tower, coeff: Felem) -> Belem:
        if not self.alive:
            raise DomainError("failed node cannot answer a demand")
        return answer_demand(tower, coeff, self.symbol)


@dataclass
class Cluster:
    code: CodeParams
    nodes: list[Node]
    log: list[LogRecord] = field(default_factory=list)
    recovered_at: dict[int, int] = field(default_factory=dict)   # node id -> len(log) at recovery
    _snapshot: tuple[Felem, ...] = ()

    @classmethod
    def spawn(cls, code: CodeParams, message) -> "Cluster":
        """Store ``message`` systematically: nodes 1..k hold the k data symbols."""
        symbols = encode_systematic(code, message)
        return cls(code, [Node(s) for s in symbols], _snapshot=tuple(symbols))

    # --- state -----------------------------------------------------------

    @property
    def failed(self) -> list[int]:
        return [i + 1 for i, nd in enumerate(self.nodes) if not nd.alive]

    @property
    def symbols(self) -> list[Felem | None]:
        return [nd.symbol for nd in self.nodes]

    def intact(self) -> bool:
        return all(nd.alive for nd in self.nodes) and tuple(self.symbols) == self._snapshot

    def fail(self, indices):
        indices = sorted(set(int(i) for i in indices))
        if len(self.failed) + len(indices) > 2:
            raise UnsupportedFailures("at most two concurrent failures are supported")
        for i in indices:
            if not 1 <= i <= len(self.nodes):
                raise DomainError(f"node {i} does not exist")
            if not self.nodes[i - 1].alive:
                raise DomainError(f"node {i} already failed")
        for i in indices:
            self.nodes[i - 1] = Node(None, alive=False)

    def export_log(self) -> str:
        return "".join(json.dumps(r.to_dict()) + "\n" for r in self.log)

    # --- messaging -------------------------------------------------------

    def _send(self, src, dst, kind, size, phase):
        self.log.append(LogRecord(src, dst, kind, size, phase))

    def _query(self, rn: int, position: int, coeff: Felem) -> Belem:
        """Demand/response round trip between an RN and a surviving node."""
        node_id = position + 1
        self._send(rn, node_id, "demand", 0, DOWNLOAD)
        value = self.nodes[position].respond(self.code.tower, coeff)
        self._send(node_id, rn, "trace", 1, DOWNLOAD)
        return value

    def _restore(self, node_id: int, symbol: Felem):
        self.nodes[node_id - 1] = Node(symbol)
        self.recovered_at[node_id] = len(self.log)

    def _verdict(self, node_id):
        return self.nodes[node_id - 1].symbol == self._snapshot[node_id - 1]

    # --- repair ----------------------------------------------------------

    def repair(self, scheme: str) -> BandwidthReport:
        failed = self.failed
        need = {"gw": (1,), "depth1": (2,), "depth2": (2,), "naive": (1, 2)}
        if scheme not in need:
            raise ValueError(f"unknown scheme {scheme!r}")
        if len(failed) not in need[scheme]:
            raise SchemeInapplicable(f"{scheme} repairs {need[scheme]} failures, cluster has {len(failed)}")
        if scheme == "naive":
            return self._repair_naive(failed)
        if scheme == "gw":
            return self._repair_gw(failed[0])
        return self._repair_dual(scheme, failed[0], failed[1])

    def _repair_naive(self, failed):
        code, t = self.code, self.code.tower.t
        rn = failed[0]
        sources = [i for i in range(code.n) if self.nodes[i].alive][:code.k]
        got = {}
        for i in sources:
            self._send(rn, i + 1, "demand", 0, DOWNLOAD)
            got[i] = self.nodes[i].symbol
            self._send(i + 1, rn, "symbol", t, DOWNLOAD)
        rebuilt = naive_recover(code, got, [f - 1 for f in failed])
        self._restore(rn, rebuilt[rn - 1])
        for other in failed[1:]:
            self._send(rn, other, "symbol", t, COLLAB)
            self._restore(other, rebuilt[other - 1])
        downloaded = (code.k * t,) + (0,) * (len(failed) - 1)
        exchanged = (0,) + (t,) * (len(failed) - 1)
        return BandwidthReport.build(code, "naive", failed, downloaded, exchanged,
                                     [self._verdict(f) for f in failed])

    def _repair_gw(self, rn):
        plan = build_single_plan(self.code, rn - 1)
        traces = {i: self._query(rn, i, c) for i, c in plan.demands.items()}
        self._restore(rn, recover_single(plan, traces))
        return BandwidthReport.build(self.code, "gw", (rn,), (len(traces),), (0,), [self._verdict(rn)])

    def _repair_dual(self, scheme, star_id, bar_id):
        plan = de.build_dual_plan(self.code, star_id - 1, bar_id - 1, scheme)
        ids = {de.STAR: star_id, de.BAR: bar_id}
        star, bar = de.RNState(de.STAR), de.RNState(de.BAR)
        for i in plan.helpers:
            for st in (star, bar):
                st.receive(i, self._query(ids[st.role], i, plan.demands(st.role)[i]))
        de.finish_download(plan, star)
        de.finish_download(plan, bar)

        if scheme == de.DEPTH_ONE:
            # one parallel round: both messages exist before either RN recovers
            to_star = de.collab_message_depth_one(plan, bar)
            to_bar = de.collab_message_depth_one(plan, star)
            self._send(bar_id, star_id, "trace", 1, COLLAB)
            self._send(star_id, bar_id, "trace", 1, COLLAB)
            self._restore(star_id, de.complete_depth_one(plan, star, to_star))
            self._restore(bar_id, de.complete_depth_one(plan, bar, to_bar))
        else:
            to_star = de.depth_two_bar_message(plan, bar)
            self._send(bar_id, star_id, "trace", 1, COLLAB)
            self._restore(star_id, de.depth_two_complete_star(plan, star, to_star))
            to_bar = de.depth_two_star_message(plan, star)
            self._send(star_id, bar_id, "trace", 1, COLLAB)
            self._restore(bar_id, de.depth_two_complete_bar(plan, bar, to_bar))

        return BandwidthReport.build(
            self.code, scheme, (star_id, bar_id),
            (len(star.downloaded), len(bar.downloaded)),
            (len(star.exchanged_in), len(bar.exchanged_in)),
            (self._verdict(star_id), self._verdict(bar_id)))


def spawn(code: CodeParams, message) -> Cluster:
    return Cluster.spawn(code, message)
