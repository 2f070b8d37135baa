import csv
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, TextIO

from core.catalog import CatalogEntry
from core.config import Config
from utils.combinatorics import fraction_str

FRACTION_PATTERN = re.compile(r'^-?\d+/\d+$')

CATALOG_COLUMNS = ['n', 'class', 'pattern', 'omega', 'f', 'b', 'theta', 'morse_index', 'critical_value']


def to_plain(value: Any) -> Any:
    """JSON-ready copy: Fractions become 'num/den' strings, tuples become lists."""
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if hasattr(value, 'item') and callable(value.item):  # numpy scalars
        return value.item()
    return value


def from_plain(value: Any) -> Any:
    if isinstance(value, str) and FRACTION_PATTERN.match(value):
        return Fraction(value)
    if isinstance(value, dict):
        return {k: from_plain(v) for k, v in value.items()}
    if isinstance(value, list):
        return [from_plain(v) for v in value]
    return value


def _normalize(value: Any) -> Any:
    """Canonical in-memory form, identical to what a JSON round trip produces."""
    return from_plain(to_plain(value))


@dataclass
class Verdict:
    name: str
    passed: bool
    details: str = ''

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'passed': bool(self.passed), 'details': self.details}


@dataclass
class ReportDocument:
    """Machine-readable result of one CLI command."""

    command: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    results: Any = field(default_factory=dict)
    verdicts: List[Verdict] = field(default_factory=list)

    def __post_init__(self):
        self.parameters = _normalize(self.parameters)
        self.results = _normalize(self.results)
        self.verdicts = [v if isinstance(v, Verdict) else Verdict(**v) for v in self.verdicts]

    def add_verdict(self, name: str, passed: bool, details: str = '') -> Verdict:
        verdict = Verdict(name, bool(passed), details)
        self.verdicts.append(verdict)
        return verdict

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'parameters': to_plain(self.parameters),
            'results': to_plain(self.results),
            'verdicts': [v.to_dict() for v in self.verdicts],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=Config.REPORT_INDENT)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ReportDocument':
        return cls(
            command=data['command'],
            parameters=from_plain(data.get('parameters', {})),
            results=from_plain(data.get('results', {})),
            verdicts=[Verdict(**v) for v in data.get('verdicts', [])],
        )

    @classmethod
    def from_json(cls, text: str) -> 'ReportDocument':
        return cls.from_dict(json.loads(text))

    def write(self, path: str):
        with open(path, 'w') as handle:
            handle.write(self.to_json() + '\n')


def catalog_row(entry: CatalogEntry) -> Dict[str, Any]:
    spec = entry.spec
    return {
        'n': spec.n,
        'class': str(spec.critical_class),
        'pattern': str(spec.pattern),
        'omega': spec.omega,
        'f': spec.f,
        'b': spec.b,
        'theta': spec.theta,
        'morse_index': '' if entry.morse_index is None else entry.morse_index,
        'critical_value': entry.critical_value,
    }


def write_catalog_csv(entries: Iterable[CatalogEntry], stream: TextIO):
    writer = csv.DictWriter(stream, fieldnames=CATALOG_COLUMNS)
    writer.writeheader()
    for entry in entries:
        writer.writerow(catalog_row(entry))
