"""JSON and CSV rendering of results on stdout"""
import csv
import json
import sys
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO, Union

from pydantic import BaseModel

Payload = Union[BaseModel, Dict[str, Any], Sequence[Union[BaseModel, Dict[str, Any]]]]


def to_plain(item: Union[BaseModel, Dict[str, Any]]) -> Dict[str, Any]:
    if isinstance(item, BaseModel):
        return item.model_dump(mode="json")
    return dict(item)


def flatten(record: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    """Nested keys joined with dots; lists become space separated text"""
    flat: Dict[str, Any] = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten(value, f"{name}."))
        elif isinstance(value, list):
            flat[name] = " ".join(json.dumps(v) if isinstance(v, (dict, list)) else str(v) for v in value)
        elif value is None:
            flat[name] = ""
        else:
            flat[name] = value
    return flat


def write_csv(rows: Iterable[Dict[str, Any]], columns: Optional[List[str]] = None,
              stream: Optional[TextIO] = None):
    stream = stream or sys.stdout
    rows = [flatten(row) for row in rows]
    if columns is None:
        columns = []
        for row in rows:
            columns.extend(key for key in row if key not in columns)
    writer = csv.DictWriter(stream, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def emit(payload: Payload, fmt: str = "json", columns: Optional[List[str]] = None,
         stream: Optional[TextIO] = None):
    stream = stream or sys.stdout
    items = payload if isinstance(payload, (list, tuple)) else [payload]
    plain = [to_plain(item) for item in items]
    if fmt == "csv":
        write_csv(plain, columns, stream)
        return
    body = plain if isinstance(payload, (list, tuple)) else plain[0]
    stream.write(json.dumps(body, indent=2) + "\n")


def emit_error(error_envelope: Dict[str, Any], stream: Optional[TextIO] = None):
    stream = stream or sys.stderr
    stream.write(json.dumps(error_envelope) + "\n")
