from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .rs_code import CodeParams

SCHEMES = ("naive", "gw", "depth1", "depth2")


def naive_bandwidth(code: CodeParams, erasures: int) -> int:
    """One RN downloads k whole symbols, then ships each extra recovered symbol (t each)."""
    t = code.tower.t
    return code.k * t + t * (erasures - 1)


@dataclass(frozen=True)
class BandwidthReport:
    """Sub-symbol accounting for one repair; lists are indexed by replacement node."""

    scheme: str
    erased: tuple[int, ...]          # 1-based node ids
    downloaded: tuple[int, ...]
    exchanged_in: tuple[int, ...]
    total: tuple[int, ...]
    scheme_bandwidth: int
    naive_baseline: int
    naive_excess: int                # naive_baseline - scheme_bandwidth
    verdict: tuple[bool, ...]

    @classmethod
    def build(cls, code: CodeParams, scheme: str, erased, downloaded, exchanged_in, verdict):
        downloaded, exchanged_in = tuple(downloaded), tuple(exchanged_in)
        total = tuple(d + e for d, e in zip(downloaded, exchanged_in))
        naive = naive_bandwidth(code, len(erased))
        return cls(scheme, tuple(erased), downloaded, exchanged_in, total,
                   sum(total), naive, naive - sum(total), tuple(bool(v) for v in verdict))

    @property
    def passed(self) -> bool:
        return bool(self.verdict) and all(self.verdict)

    def to_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))
