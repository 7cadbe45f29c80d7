"""
Report Writer - Report schema and CSV/JSON emitters
Output is byte-stable for fixed input: no timestamps, no floats
"""
import csv
import io
import json
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from constants import OUTPUT_FORMATS, Certification

Cell = Union[bool, int, str, None]


class ReportDocument(BaseModel):
    command: str
    inputs: Dict[str, str] = Field(default_factory=dict)
    rows: List[Dict[str, Cell]] = Field(default_factory=list)
    certification: str = Certification.EXACT.value


def format_cell(value: Any) -> Cell:
    """
    Normalize a report value: Fractions as "a/b", enums by value,
    everything non-numeric by str()
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        raise TypeError("floating point values are not allowed in reports")
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (list, tuple)):
        return ' '.join(str(format_cell(v)) for v in value)
    return str(value)


def make_report(command: str, inputs: Dict[str, Any], rows: List[Dict[str, Any]],
                certification: Union[Certification, str] = Certification.EXACT) -> ReportDocument:
    if isinstance(certification, Certification):
        certification = certification.value
    return ReportDocument(
        command=command,
        inputs={k: str(format_cell(v)) for k, v in inputs.items()},
        rows=[{k: format_cell(v) for k, v in row.items()} for row in rows],
        certification=certification,
    )


def _columns(rows: List[Dict[str, Cell]]) -> List[str]:
    columns: List[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    return columns


def _csv_cell(value: Cell) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return str(value)


def to_json(report: ReportDocument) -> str:
    return json.dumps(report.model_dump(), indent=2, ensure_ascii=False) + '\n'


def to_csv(report: ReportDocument) -> str:
    """
    Header row, then one line per report row. The command and its
    certification lead every line so concatenated reports stay readable.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    columns = _columns(report.rows)
    writer.writerow(['command', 'certification'] + columns)
    for row in report.rows:
        writer.writerow([report.command, report.certification] + [_csv_cell(row.get(c)) for c in columns])
    return buffer.getvalue()


def render(reports: List[ReportDocument], fmt: str) -> str:
    if fmt not in OUTPUT_FORMATS:
        raise ValueError(f"unknown output format '{fmt}'")
    if fmt == 'csv':
        return ''.join(to_csv(r) for r in reports)
    if len(reports) == 1:
        return to_json(reports[0])
    return json.dumps([r.model_dump() for r in reports], indent=2, ensure_ascii=False) + '\n'


def write_reports(reports: List[ReportDocument], fmt: str, out: Optional[str] = None) -> str:
    """Render and write to out, or return the text for stdout"""
    text = render(reports, fmt)
    if out:
        Path(out).write_text(text, encoding='utf-8')
    return text
