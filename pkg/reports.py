# reports.py
"""
Report documents (JSON) and DOT export.

A document wraps one SearchReport or ClaimReport payload. Key order is fixed
by construction and nothing time-dependent is written unless asked for, so
identical runs give byte-identical files.
"""
from __future__ import annotations
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional, Union

import jsonschema

from config import SCHEMA_VERSION, TOOL_VERSION
from errors import ReportError
from graph6 import encode_graph6
from graphcore import Graph


_NULLABLE_INT = {"type": ["integer", "null"]}

SEARCH_PAYLOAD = {
    "type": "object",
    "required": ["n", "mode", "graphs_seen", "graphs_admissible", "max_pairs",
                 "bound_value", "bound_holds", "extremal_certs", "certs_total",
                 "certs_truncated", "hypothesis_max_pairs"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "mode": {"enum": ["EXHAUSTIVE", "STREAM", "ANNEAL"]},
        "graphs_seen": {"type": "integer", "minimum": 0},
        "graphs_admissible": {"type": "integer", "minimum": 0},
        "max_pairs": _NULLABLE_INT,
        "bound_value": {"type": "integer"},
        "bound_holds": {"type": "boolean"},
        "extremal_certs": {"type": "array", "items": {"type": "string"}},
        "certs_total": {"type": "integer", "minimum": 0},
        "certs_truncated": {"type": "boolean"},
        "hypothesis_max_pairs": _NULLABLE_INT,
        "hypothesis_free": {"type": "integer", "minimum": 0},
        "first_hypothesis_free": {"type": ["string", "null"]},
    },
}

CLAIM_PAYLOAD = {
    "type": "object",
    "required": ["n", "asserted_hold", "claims"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "asserted_hold": {"type": "boolean"},
        "claims": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["claim", "asserted", "graphs_tested", "violations",
                             "witnesses", "witnesses_truncated"],
                "properties": {
                    "claim": {"type": "string"},
                    "asserted": {"type": "boolean"},
                    "graphs_tested": {"type": "integer", "minimum": 0},
                    "violations": {"type": "integer", "minimum": 0},
                    "witnesses": {"type": "array", "items": {"type": "object", "required": ["graph6"]}},
                    "witnesses_truncated": {"type": "boolean"},
                },
            },
        },
    },
}

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["schema_version", "command", "parameters", "payload", "tool_version"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"enum": ["verify", "claims", "anneal"]},
        "parameters": {"type": "object"},
        "payload": {"oneOf": [SEARCH_PAYLOAD, CLAIM_PAYLOAD]},
        "tool_version": {"type": "string"},
        "timestamp": {"type": "string"},
    },
}


@dataclass
class ReportDocument:
    command: str
    parameters: Dict[str, Any]
    payload: Dict[str, Any]
    schema_version: int = SCHEMA_VERSION
    tool_version: str = TOOL_VERSION
    timestamp: Optional[str] = None

    @classmethod
    def build(cls, command: str, parameters: Dict[str, Any], payload: Dict[str, Any],
              stamp: bool = False) -> "ReportDocument":
        ts = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ") if stamp else None
        return cls(command, dict(parameters), payload, timestamp=ts)

    def to_dict(self) -> Dict[str, Any]:
        d = {
            "schema_version": self.schema_version,
            "command": self.command,
            "parameters": self.parameters,
            "payload": self.payload,
            "tool_version": self.tool_version,
        }
        if self.timestamp is not None:
            d["timestamp"] = self.timestamp
        return d


def validate_document(doc: ReportDocument) -> None:
    try:
        jsonschema.validate(instance=doc.to_dict(), schema=REPORT_SCHEMA)
    except jsonschema.ValidationError as e:
        raise ReportError(f"report does not match schema v{SCHEMA_VERSION}: {e.message}") from e


def render_report(doc: ReportDocument) -> str:
    validate_document(doc)
    return json.dumps(doc.to_dict(), indent=2, ensure_ascii=False) + "\n"


def write_report(doc: ReportDocument, path: Union[str, Path]) -> Path:
    text = render_report(doc)
    out = Path(path)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return out


def to_dot(g: Graph, name: Optional[str] = None) -> str:
    """Undirected DOT, graph named by its graph6 string, no layout hints."""
    label = (name if name is not None else encode_graph6(g)).replace("\\", "\\\\").replace('"', '\\"')
    lines = [f'graph "{label}" {{']
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {i} -- {j};" for i, j in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
