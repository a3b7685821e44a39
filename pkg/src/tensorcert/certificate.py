"""Certificate records and their JSON form.

A certificate is a verdict on a bounded claim.  It never asserts the
unbounded property: ``truncation`` records exactly which finite family of
test objects, pairs or samples was examined.  Serialization is canonical
(sorted keys, fixed separators) and the only run-dependent field is the
top-level ``timestamp``, so two runs can be compared byte for byte after
dropping it.
"""

from __future__ import annotations

import datetime as _dt
import json
from dataclasses import dataclass, field

SCHEMA = "v1"
VERDICTS = ("certified", "refuted", "inconclusive-at-bound")
EXIT_CODES = {"certified": 0, "refuted": 1, "inconclusive-at-bound": 2}


class CertificateError(ValueError):
    pass


@dataclass
class Certificate:
    claim: dict
    verdict: str
    category: dict = field(default_factory=dict)
    truncation: dict = field(default_factory=dict)
    cases: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    sections: list = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise CertificateError(f"unknown verdict {self.verdict!r}")

    @property
    def ok(self) -> bool:
        return self.verdict == "certified"

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def first_failure(self):
        return next((c for c in self.cases if not c.get("ok", True)), None)

    def to_json(self, timestamp: bool = True) -> dict:
        out = {
            "schema": SCHEMA,
            "claim": self.claim,
            "category": self.category,
            "verdict": self.verdict,
            "truncation": self.truncation,
            "cases": self.cases,
            "witnesses": self.witnesses,
        }
        if self.sections:
            out["sections"] = [s.to_json(timestamp=False) for s in self.sections]
        if timestamp:
            out["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        return out

    def dumps(self, timestamp: bool = True) -> str:
        return canonical_dumps(self.to_json(timestamp))

    @classmethod
    def from_json(cls, data: dict) -> Certificate:
        validate(data)
        return cls(claim=data["claim"], verdict=data["verdict"], category=data.get("category", {}),
                   truncation=data.get("truncation", {}), cases=data.get("cases", []),
                   witnesses=data.get("witnesses", []),
                   sections=[cls.from_json(dict(s, schema=SCHEMA)) for s in data.get("sections", [])])


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": "), ensure_ascii=True) + "\n"


def strip_timestamp(text: str) -> str:
    """Canonical text of a certificate with the timestamp field removed."""
    data = json.loads(text)
    data.pop("timestamp", None)
    return canonical_dumps(data)


def validate(data) -> None:
    if not isinstance(data, dict):
        raise CertificateError("certificate must be a JSON object")
    if data.get("schema") != SCHEMA:
        raise CertificateError(f"unsupported schema {data.get('schema')!r}")
    for key in ("claim", "verdict"):
        if key not in data:
            raise CertificateError(f"certificate is missing {key!r}")
    if data["verdict"] not in VERDICTS:
        raise CertificateError(f"unknown verdict {data['verdict']!r}")
    if not isinstance(data.get("cases", []), list):
        raise CertificateError("cases must be a list")


def combine_verdicts(verdicts) -> str:
    verdicts = list(verdicts)
    if any(v == "refuted" for v in verdicts):
        return "refuted"
    if any(v == "inconclusive-at-bound" for v in verdicts):
        return "inconclusive-at-bound"
    return "certified"
