"""Small result carriers returned by the check_* / verify_* families."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    """Outcome of one checked property.

    `witness` is the first falsifying instance when ok is False;
    `checked` counts the cases examined when that is informative.
    """

    ok: bool
    witness: object = None
    detail: str = ""
    checked: int | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Report:
    """Named sub-verdicts plus an overall outcome."""

    items: tuple[tuple[str, Verdict], ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(v.ok for _, v in self.items)

    def __bool__(self) -> bool:
        return self.ok

    def verdict(self, name: str) -> Verdict:
        for k, v in self.items:
            if k == name:
                return v
        raise KeyError(name)

    def failures(self) -> tuple[tuple[str, Verdict], ...]:
        return tuple((k, v) for k, v in self.items if not v.ok)
