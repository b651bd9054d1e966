#!/usr/bin/env python3
"""
Parameter files in, CSV/JSON records out
"""

import csv
import io
import json
import logging
import sys
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence

from .errors import InvalidParams, StorageError

logger = logging.getLogger(__name__)

FORMATS = ('csv', 'json')


def load_params(file_path: str) -> Dict[str, Any]:
    """Load a JSON parameter file; the file is never written back"""
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise StorageError(f"Parameter file not found: {file_path}") from e
    except json.JSONDecodeError as e:
        raise InvalidParams(f"Invalid JSON in {file_path}: {e}") from e
    except OSError as e:
        raise StorageError(f"Cannot read {file_path}: {e}") from e

    if not isinstance(data, dict):
        raise InvalidParams(f"{file_path} must hold a JSON object, got {type(data).__name__}")
    logger.info(f"📋 Loaded {len(data)} entries from {file_path}")
    return data


def format_value(value: Any) -> str:
    """CSV cell: 17 significant digits for reals, 0/1 for booleans, empty for None"""
    if value is None:
        return ''
    if isinstance(value, bool):
        return '1' if value else '0'
    if isinstance(value, float):
        return '%.17g' % value
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


def _plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {key: _plain(v) for key, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, 'item'):
        return value.item()
    return value


def render_csv(records: Sequence[Dict[str, Any]], header: Optional[Sequence[str]] = None) -> str:
    columns = list(header) if header is not None else (list(records[0]) if records else [])
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    if columns:
        writer.writerow(columns)
    for record in records:
        writer.writerow([format_value(record.get(column)) for column in columns])
    return buffer.getvalue()


def render_json(records: Iterable[Dict[str, Any]]) -> str:
    return json.dumps([_plain(record) for record in records], indent=2, allow_nan=True) + '\n'


def emit(records: List[Dict[str, Any]], fmt: str = 'csv', destination: Optional[str] = None,
         header: Optional[Sequence[str]] = None):
    """Write records as CSV or JSON to a path, or to stdout when no path is given"""
    if fmt not in FORMATS:
        raise InvalidParams(f"Unknown format '{fmt}' (expected one of {', '.join(FORMATS)})")
    text = render_csv(records, header) if fmt == 'csv' else render_json(records)

    if destination is None or destination == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    try:
        with open(destination, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
    except OSError as e:
        raise StorageError(f"Cannot write {destination}: {e}") from e
    logger.info(f"💾 Wrote {len(records)} records to {destination}")
