"""Op-based CRDT analysis: axioms, undo, group structure and causal simulation.

Every function takes either a path to a JSON document or the document itself
(a dict) and returns a :class:`Report`.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Any, Optional, Union

from . import _crdtlab

__all__ = ["Report", "validate", "check_axioms", "analyze", "simulate", "undo", "equiv"]

Document = Union[str, os.PathLike, dict]


@dataclass(frozen=True)
class Report:
    exit_code: int
    data: dict
    text: str

    @property
    def ok(self) -> bool:
        return self.exit_code == 0

    def __getitem__(self, key: str) -> Any:
        return self.data[key]


def _source(doc: Document, label: str = "<inline>") -> tuple[str, Optional[str]]:
    if isinstance(doc, dict):
        return label, json.dumps(doc)
    return os.fspath(doc), None


def _report(raw: tuple[int, str, str]) -> Report:
    code, data, text = raw
    return Report(code, json.loads(data), text)


def validate(spec: Document) -> Report:
    return _report(_crdtlab.validate(*_source(spec)))


def check_axioms(spec: Document, fact_depth: int = 3) -> Report:
    return _report(_crdtlab.check_axioms(*_source(spec), fact_depth=fact_depth))


def analyze(spec: Document, ball: int = 4) -> Report:
    return _report(_crdtlab.analyze(*_source(spec), ball=ball))


def simulate(scenario: Document, seed: Optional[int] = None) -> Report:
    return _report(_crdtlab.simulate(*_source(scenario), seed=seed))


def undo(spec: Document, action: str, state: str = "") -> Report:
    label, text = _source(spec)
    return _report(_crdtlab.undo(label, text, action, state))


def equiv(a: Document, b: Document) -> Report:
    return _report(_crdtlab.equiv(*_source(a, "<a>"), *_source(b, "<b>")))
