from __future__ import annotations

from dataclasses import dataclass, field


class HypothesisViolation(ValueError):
    """The inputs do not satisfy the hypotheses a verifier is stated under."""


@dataclass
class Verdict:
    """Named boolean checks plus free-form diagnostics."""

    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)
    # informational flags that never fail a verdict
    flags: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self) -> bool:
        return self.ok

    def check(self, key: str, value: bool, note: str | None = None) -> bool:
        self.checks[key] = self.checks.get(key, True) and bool(value)
        if not value and note:
            self.diagnostics.append(note)
        return bool(value)

    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json_obj(self) -> dict:
        obj = {"ok": self.ok, "checks": dict(sorted(self.checks.items()))}
        if self.flags:
            obj["flags"] = dict(sorted(self.flags.items()))
        if self.diagnostics:
            obj["diagnostics"] = list(self.diagnostics)
        return obj
