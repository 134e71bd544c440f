"""
Verification reports: verdicts, constructed-object summaries, rendering.

A Report is a list of sections (one per catalog entry or per command),
each holding pass/fail checks and summaries of the objects it built. JSON
output keeps insertion order so the same run produces the same bytes.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from tabulate import tabulate


def _plain(value: Any) -> Any:
    """numpy scalars and arrays to JSON-ready Python values."""
    if hasattr(value, 'tolist'):
        return value.tolist()
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


@dataclass
class Check:
    name: str
    passed: bool
    detail: Optional[Dict] = None

    def to_dict(self) -> Dict:
        out: Dict[str, Any] = {'name': self.name, 'passed': bool(self.passed)}
        if self.detail:
            out['detail'] = _plain(self.detail)
        return out


@dataclass
class Section:
    title: str
    topic: str = ''
    checks: List[Check] = field(default_factory=list)
    objects: Dict[str, Any] = field(default_factory=dict)
    error: Optional[Dict] = None

    def check(self, name: str, passed: bool, detail: Optional[Dict] = None) -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def checks_from(self, prefix: str, results: Dict[str, Optional[bool]]):
        """Add one check per entry of a dict of results; None entries are recorded as skipped."""
        for key, value in results.items():
            if value is None:
                self.objects.setdefault('skipped', []).append(f"{prefix}{key}")
            else:
                self.check(f"{prefix}{key}", value)

    def add_object(self, name: str, summary: Any):
        self.objects[name] = _plain(summary)

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.checks)

    def to_dict(self) -> Dict:
        out: Dict[str, Any] = {'title': self.title}
        if self.topic:
            out['topic'] = self.topic
        out['passed'] = self.passed
        out['checks'] = [c.to_dict() for c in self.checks]
        out['objects'] = _plain(self.objects)
        if self.error is not None:
            out['error'] = _plain(self.error)
        return out


@dataclass
class Report:
    command: str
    args: List[str] = field(default_factory=list)
    sections: List[Section] = field(default_factory=list)
    timing: Optional[Dict[str, float]] = None
    budget_exceeded: bool = False

    def section(self, title: str, topic: str = '') -> Section:
        s = Section(title, topic)
        self.sections.append(s)
        return s

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.sections)

    def to_dict(self) -> Dict:
        out: Dict[str, Any] = {
            'command': self.command,
            'args': list(self.args),
            'passed': self.passed,
            'sections': [s.to_dict() for s in self.sections],
        }
        if self.timing is not None:
            out['timing'] = {k: round(v, 4) for k, v in self.timing.items()}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + '\n'

    def to_text(self) -> str:
        lines = [f"xalg {self.command} {' '.join(self.args)}".rstrip(), '=' * 60]
        for s in self.sections:
            header = f"[{'PASS' if s.passed else 'FAIL'}] {s.title}"
            if s.topic:
                header += f"  ({s.topic})"
            lines.append(header)
            if s.checks:
                rows = [[c.name, 'pass' if c.passed else 'FAIL',
                         json.dumps(_plain(c.detail)) if c.detail else ''] for c in s.checks]
                lines.append(tabulate(rows, headers=['check', 'verdict', 'detail'], tablefmt='simple'))
            if s.objects:
                rows = [[k, json.dumps(v)] for k, v in s.objects.items()]
                lines.append(tabulate(rows, headers=['object', 'summary'], tablefmt='simple'))
            if s.error is not None:
                lines.append(f"error: {s.error.get('error')}: {s.error.get('message')}")
            lines.append('-' * 60)
        total = len(self.sections)
        failed = sum(1 for s in self.sections if not s.passed)
        lines.append(f"{total - failed}/{total} sections passed")
        if self.timing is not None:
            lines.append('timing: ' + ', '.join(f"{k}={v:.3f}s" for k, v in self.timing.items()))
        return '\n'.join(lines) + '\n'

    def render(self, fmt: str = 'text') -> str:
        return self.to_json() if fmt == 'json' else self.to_text()
