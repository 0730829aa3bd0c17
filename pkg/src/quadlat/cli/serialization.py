"""
Instance-file and report serialization.

Rationals travel as "p/q" strings (integers are also accepted on input) so
no value ever passes through a float.
"""
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence
import json
import logging

from src.quadlat import __version__
from src.quadlat.core.qspace import Lattice
from src.quadlat.services.corpus import CorpusEntry
from src.quadlat.services.report_collector import ReportCollector
from src.quadlat.utils.error_handlers import InputError

logger = logging.getLogger(__name__)

INSTANCE_DIM = 4


def parse_rational(value: Any, where: str) -> Fraction:
    """
    Parses an int or a "p/q" string.

    Raises:
        InputError: For floats, booleans, malformed strings or zero denominators
    """
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(
            f"{where}: expected an integer or a 'p/q' string, got {type(value).__name__}",
            code='INVALID_RATIONAL'
        )
    try:
        if isinstance(value, str) and any(c in value for c in '.eE'):
            raise ValueError("decimal notation")
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"{where}: invalid rational {value!r} ({e})", code='INVALID_RATIONAL')


def format_rational(x: Fraction) -> str:
    return str(x)


def parse_matrix(value: Any, where: str, rows: Optional[int] = None,
                 cols: Optional[int] = None) -> List[List[Fraction]]:
    if not isinstance(value, list) or not value:
        raise InputError(f"{where}: expected a nonempty list of rows", code='INVALID_SHAPE')
    rows = len(value) if rows is None else rows
    cols = len(value) if cols is None else cols
    if len(value) != rows or any(not isinstance(r, list) or len(r) != cols for r in value):
        raise InputError(f"{where}: expected a {rows}x{cols} matrix", code='INVALID_SHAPE')
    return [
        [parse_rational(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)]
        for i, row in enumerate(value)
    ]


def parse_vector(value: Any, where: str, length: int) -> List[Fraction]:
    if not isinstance(value, list) or len(value) != length:
        raise InputError(f"{where}: expected a list of {length} rationals", code='INVALID_SHAPE')
    return [parse_rational(x, f"{where}[{i}]") for i, x in enumerate(value)]


def parse_instances(data: Any) -> List[CorpusEntry]:
    """
    Validates a decoded instance file.

    Raises:
        InputError: If a field is missing or malformed
    """
    if not isinstance(data, dict) or 'instances' not in data:
        raise InputError("instance file must be an object with an 'instances' array",
                         code='MISSING_FIELD')
    items = data['instances']
    if not isinstance(items, list):
        raise InputError("'instances' must be an array", code='INVALID_SHAPE')
    entries = []
    for k, item in enumerate(items):
        where = f"instances[{k}]"
        if not isinstance(item, dict):
            raise InputError(f"{where}: expected an object", code='INVALID_SHAPE')
        for key in ('gram', 'h'):
            if key not in item:
                raise InputError(f"{where}: missing field '{key}'", code='MISSING_FIELD')
        gram = parse_matrix(item['gram'], f"{where}.gram", INSTANCE_DIM, INSTANCE_DIM)
        h = parse_vector(item['h'], f"{where}.h", INSTANCE_DIM)
        lattice = None
        if item.get('lattice') is not None:
            rows = parse_matrix(item['lattice'], f"{where}.lattice", INSTANCE_DIM, INSTANCE_DIM)
            lattice = Lattice.from_generators(rows, dim=INSTANCE_DIM)
            if not lattice.is_full_rank():
                raise InputError(f"{where}.lattice: rows are linearly dependent",
                                 code='INVALID_SHAPE')
        entries.append(CorpusEntry(
            gram=tuple(tuple(r) for r in gram),
            h=tuple(h),
            lattice=lattice,
        ))
    return entries


def load_json(path: str) -> Any:
    """
    Raises:
        InputError: If the file cannot be read or is not JSON
    """
    try:
        with open(path, encoding='utf-8') as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}", code='FILE_ERROR')
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}",
                         code='INVALID_JSON')


def load_instances(path: str) -> List[CorpusEntry]:
    entries = parse_instances(load_json(path))
    logger.info(f"Loaded {len(entries)} instances from {path}")
    return entries


def parse_gram_text(text: str) -> List[List[Fraction]]:
    """A square Gram matrix given inline as JSON."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"--gram: invalid JSON: {e.msg}", code='INVALID_JSON')
    return parse_matrix(data, 'gram')


def instances_to_dict(entries: Sequence[CorpusEntry]) -> Dict[str, Any]:
    out = []
    for entry in entries:
        item: Dict[str, Any] = {
            'gram': [[format_rational(x) for x in row] for row in entry.gram],
            'h': [format_rational(x) for x in entry.h],
        }
        if entry.lattice is not None:
            item['lattice'] = [list(row) for row in entry.lattice.rows_as_strings()]
        out.append(item)
    return {'instances': out}


def report_to_dict(collector: ReportCollector, meta: Dict[str, Any]) -> Dict[str, Any]:
    return {
        'meta': dict(meta, version=__version__),
        'summary': collector.summary(),
        'results': [r.to_dict() for r in collector.get_reports()],
    }


def dump_json(data: Any, path: Optional[str] = None) -> str:
    """Serializes deterministically; writes to path when given."""
    text = json.dumps(data, indent=2, sort_keys=False, ensure_ascii=False) + '\n'
    if path:
        try:
            with open(path, 'w', encoding='utf-8') as fh:
                fh.write(text)
        except OSError as e:
            raise InputError(f"cannot write {path}: {e.strerror}", code='FILE_ERROR')
    return text
