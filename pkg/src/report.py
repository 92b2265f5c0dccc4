"""
Report models and rendering.

`CheckResult` is what library check operations return: a verdict plus the
counterexample, never an exception. `Report` wraps one CLI run.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field
from rich import box
from rich.console import Console
from rich.table import Table


class CheckResult(BaseModel):
    """Verdict of one mathematical check."""
    name: str
    passed: bool
    checked: int = 0
    witness: Any = None
    details: Dict[str, Any] = Field(default_factory=dict)

    def __bool__(self):
        return self.passed


class Report(BaseModel):
    command: List[str]
    inputs_digest: str
    verdicts: Dict[str, bool] = Field(default_factory=dict)
    results: Dict[str, Any] = Field(default_factory=dict)
    witnesses: Dict[str, Any] = Field(default_factory=dict)
    timing: Optional[Dict[str, float]] = None

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> str:
        data = self.model_dump(mode="json", exclude_none=True)
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def digest_files(paths: Sequence[str]) -> str:
    """SHA-256 over the raw bytes of the given files, in order."""
    h = hashlib.sha256()
    for path in paths:
        with open(path, "rb") as fh:
            h.update(fh.read())
    return h.hexdigest()


def _cell(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    return str(value)


def render(report: Report, console: Optional[Console] = None) -> None:
    """Pretty text rendering of a report with rich tables."""
    console = console or Console()
    console.print(f"[bold]grograde {' '.join(report.command)}[/bold]")
    console.print(f"inputs: {report.inputs_digest[:16]}")

    if report.verdicts:
        table = Table(title="Verdicts", box=box.SIMPLE)
        table.add_column("check")
        table.add_column("result")
        for name, ok in sorted(report.verdicts.items()):
            table.add_row(name, "[green]true[/green]" if ok else "[red]false[/red]")
        console.print(table)

    if report.results:
        table = Table(title="Results", box=box.SIMPLE)
        table.add_column("key")
        table.add_column("value", overflow="fold")
        for key, value in sorted(report.results.items()):
            table.add_row(key, _cell(value))
        console.print(table)

    if report.witnesses:
        table = Table(title="Witnesses", box=box.SIMPLE)
        table.add_column("check")
        table.add_column("witness", overflow="fold")
        for key, value in sorted(report.witnesses.items()):
            table.add_row(key, _cell(value))
        console.print(table)

    if report.timing:
        for key, seconds in sorted(report.timing.items()):
            console.print(f"{key}: {seconds:.3f}s")
