import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from HoCat.config import HOCAT_BUDGET, HOCAT_FORMAT, HOCAT_ROUTE, default_battery_dir
from HoCat.engine.errors import UsageError
from HoCat.helpers.budget import Budget
from HoCat.helpers.functions import get_readable_bytes, get_readable_time


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    REFUSED = "refused"
    INVALID = "invalid"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "refused": 3, "invalid": 2}[self.value]


@dataclass
class RunConfig:
    """Everything one command run needs, assembled from flags with the environment as defaults."""

    command: str
    choice: Optional[str] = None
    instance: Optional[str] = None
    target_instance: Optional[str] = None
    functor: Optional[str] = None
    battery: Optional[str] = None
    battery_name: str = "default"
    budget: int = HOCAT_BUDGET
    route: str = HOCAT_ROUTE
    format: str = HOCAT_FORMAT
    output: Optional[str] = None
    witness: Optional[str] = None
    side: str = "left"

    def validate(self) -> None:
        if self.budget <= 0:
            raise UsageError(f"budget must be positive, got {self.budget}")
        for label in ("instance", "target_instance", "functor", "battery"):
            path = getattr(self, label)
            if path is not None and not Path(path).exists():
                raise UsageError(f"--{label.replace('_', '-')} {path} does not exist")

    def require(self, label: str) -> str:
        path = getattr(self, label)
        if path is None:
            raise UsageError(f"{self.command} needs --{label.replace('_', '-')}")
        return path

    @property
    def battery_dir(self) -> str:
        return self.battery or default_battery_dir()

    def new_budget(self) -> Budget:
        return Budget(self.budget)


@dataclass
class Report:
    """
    Outcome of one command. The verdict is fail as soon as one checked
    property failed, refused when a search was refused and nothing failed,
    pass otherwise.
    """

    command: str
    results: Dict[str, Any] = field(default_factory=dict)
    counterexamples: List[str] = field(default_factory=list)
    timing: Dict[str, Any] = field(default_factory=dict)
    failed: bool = False
    refused: bool = False
    invalid: bool = False
    error: Optional[str] = None

    @property
    def verdict(self) -> Verdict:
        if self.invalid:
            return Verdict.INVALID
        if self.failed:
            return Verdict.FAIL
        if self.refused:
            return Verdict.REFUSED
        return Verdict.PASS

    @property
    def exit_code(self) -> int:
        return self.verdict.exit_code

    def add(self, label: str, data: Any, ok: bool = True, counterexamples: Optional[List[str]] = None) -> None:
        self.results[label] = data
        if not ok:
            self.failed = True
        for counterexample in counterexamples or []:
            self.counterexamples.append(f"{label}: {counterexample}")

    def add_checks(self, label: str, checks) -> None:
        """Record a ValidityReport (or anything with ok, violations and to_dict)."""
        self.add(label, checks.to_dict(), ok=checks.ok, counterexamples=checks.violations)

    def to_dict(self) -> dict:
        data = {
            "command": self.command,
            "verdict": self.verdict.value,
            "exit_code": self.exit_code,
            "results": self.results,
            "counterexamples": self.counterexamples,
            "timing": self.timing,
        }
        if self.error:
            data["error"] = self.error
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False, default=str)

    def render_text(self) -> str:
        lines = [f"{self.command}: {self.verdict.value.upper()}"]
        if self.error:
            lines.append(f"  error: {self.error}")
        for label, data in self.results.items():
            lines.append(f"  {label}:")
            lines.extend(_render(data, indent=4))
        if self.counterexamples:
            lines.append("  counterexamples:")
            lines.extend(f"    - {counterexample}" for counterexample in self.counterexamples)
        if self.timing:
            lines.append(
                f"  took {get_readable_time(self.timing.get('seconds', 0))}, "
                f"memory {get_readable_bytes(self.timing.get('memory', 0))}, "
                f"{self.timing.get('nodes', 0)} search nodes"
            )
        return "\n".join(lines)


def _render(data: Any, indent: int) -> List[str]:
    pad = " " * indent
    if isinstance(data, dict):
        lines = []
        for key, value in data.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(_render(value, indent + 2))
            else:
                lines.append(f"{pad}{key}: {value}")
        return lines
    if isinstance(data, list):
        if all(not isinstance(item, (dict, list)) for item in data):
            return [f"{pad}{', '.join(str(item) for item in data)}"]
        lines = []
        for item in data:
            lines.append(f"{pad}-")
            lines.extend(_render(item, indent + 2))
        return lines
    return [f"{pad}{data}"]
