"""Derivation records: how a code was produced, in replayable form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Step:
    operation: str
    params: dict = field(default_factory=dict)
    T: tuple[int, ...] | None = None
    permutation: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"operation": self.operation, "params": dict(self.params)}
        if self.T is not None:
            out["T"] = list(self.T)
        if self.permutation is not None:
            out["permutation"] = list(self.permutation)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Step:
        T = obj.get("T")
        perm = obj.get("permutation")
        return cls(obj["operation"], dict(obj.get("params", {})),
                   None if T is None else tuple(int(i) for i in T),
                   None if perm is None else tuple(int(i) for i in perm))


@dataclass(frozen=True)
class DerivationRecord:
    """A root (usually construction parameters) followed by ordered transforms."""

    root: dict | None = None
    steps: tuple[Step, ...] = ()

    def then(self, step: Step) -> DerivationRecord:
        return DerivationRecord(self.root, self.steps + (step,))

    @property
    def flags(self) -> set[str]:
        out: set[str] = set()
        for st in self.steps:
            out.update(st.params.get("flags", ()))
        return out

    def to_json(self) -> dict:
        return {"root": self.root, "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, obj: dict | None) -> DerivationRecord:
        if not obj:
            return cls()
        return cls(obj.get("root"), tuple(Step.from_json(s) for s in obj.get("steps", [])))
