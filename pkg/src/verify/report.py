# -*- coding: utf-8 -*-
import csv
from pathlib import Path
from typing import List

from src.common.codec import fmt_float, report_to_json
from src.common.types import VerificationReport

BASE_COLS = ['case', 'case_seed', 'violations', 'max_slack']


def clean_field(val) -> str:
    if val is None:
        return ''
    if isinstance(val, float):
        return fmt_float(val)
    # sin saltos de línea ni espacios repetidos
    return ' '.join(str(val).replace('\r', ' ').replace('\n', ' ').split())


def csv_columns(report: VerificationReport) -> List[str]:
    extra = sorted({k for row in report.rows for k in row} - set(BASE_COLS))
    return BASE_COLS + extra


def write_json(report: VerificationReport, out_path: Path) -> Path:
    out_path = Path(out_path).resolve()
    out_path.write_text(report_to_json(report) + '\n', encoding='utf-8')
    return out_path


def write_csv(report: VerificationReport, out_path: Path) -> Path:
    """Una fila por caso con las magnitudes medidas."""
    cols = csv_columns(report)
    out_path = Path(out_path).resolve()
    with out_path.open('w', encoding='utf-8', newline='') as f:
        # Delimitador ; para Excel en ES
        w = csv.DictWriter(f, fieldnames=cols, delimiter=';', quoting=csv.QUOTE_MINIMAL)
        w.writeheader()
        for row in report.rows:
            w.writerow({k: clean_field(row.get(k)) for k in cols})
    return out_path
