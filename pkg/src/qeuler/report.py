"""Structured pass/fail record for one identity check."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class IdentityReport:
    """Outcome of a single identity check, exact or numeric.

    For exact checks `lhs`/`rhs` hold canonical serializations and equality
    means the canonical forms are structurally identical (deviation 0.0).
    For numeric checks they hold the computed values and `deviation` is the
    absolute difference.
    """

    name: str
    params: dict = field(default_factory=dict)
    lhs: str | complex | float = ""
    rhs: str | complex | float = ""
    equal: bool = False
    deviation: float = 0.0

    def as_json_dict(self) -> dict:
        return {
            "identity": self.name,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "lhs": _plain(self.lhs),
            "rhs": _plain(self.rhs),
            "equal": self.equal,
            "deviation": self.deviation,
        }


def _plain(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    return v
