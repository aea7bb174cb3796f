import base64
import csv
import dataclasses
import enum
import functools
import hashlib
import io
import logging
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from qftbell.constants import EXIT_NUMERICAL, EXIT_OK, VERSION
from qftbell.errors import QftBellError

logger = logging.getLogger(__name__)


def make_hashable(o):
    if dataclasses.is_dataclass(o) and not isinstance(o, type):
        return make_hashable(dataclasses.asdict(o))

    if isinstance(o, enum.Enum):
        return o.value

    if isinstance(o, np.generic):
        return o.item()

    if isinstance(o, np.ndarray):
        return tuple(make_hashable(e) for e in o.tolist())

    if isinstance(o, (tuple, list)):
        return tuple((make_hashable(e) for e in o))

    if isinstance(o, dict):
        return tuple(sorted((k, make_hashable(v)) for k, v in o.items()))

    if isinstance(o, (set, frozenset)):
        return tuple(sorted(make_hashable(e) for e in o))

    return o


def hash_object(o):
    hasher = hashlib.sha256()
    hasher.update(repr(make_hashable(o)).encode())
    return base64.b64encode(hasher.digest()).decode()


def get_safe_json(value):
    """
    Convert a value into plain JSON-compatible Python objects.

    Infinities become ".inf"/"-.inf", NaN becomes ".nan", enums their value and
    dataclasses dictionaries.
    """
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return get_safe_json(dataclasses.asdict(value))
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        if value == np.inf:
            return ".inf"
        elif value == -np.inf:
            return "-.inf"
        elif isinstance(value, float) and math.isnan(value):
            return ".nan"
        return value
    if isinstance(value, str) or value is None:
        return value
    if isinstance(value, dict):
        return {str(k): get_safe_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [get_safe_json(v) for v in value]
    return str(value)


def provenance_lines(command: str, seed: int, settings, config_digest: str) -> list:
    """
    Build the comment header embedded in every output file.

    No timestamps or host data go in, so equal inputs give equal bytes.
    """
    return [
        f"qftbell version: {VERSION}",
        f"command: {command}",
        f"seed: {seed}",
        f"settings: {get_safe_json(settings)}",
        f"config digest: {config_digest}",
    ]


def format_csv(
    header: Sequence[str],
    rows: Iterable[Sequence],
    comments: Sequence[str] = (),
) -> str:
    buffer = io.StringIO()
    for line in comments:
        buffer.write(f"# {line}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_cell(cell) for cell in row])
    return buffer.getvalue()


def _format_cell(cell):
    if isinstance(cell, np.generic):
        cell = cell.item()
    if isinstance(cell, bool):
        return str(cell).lower()
    if isinstance(cell, float):
        return repr(cell)
    if isinstance(cell, enum.Enum):
        return cell.value
    return cell


def write_output(text: str, out: Path = None) -> None:
    if out is None:
        print(text, end="")
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
    logger.info("Wrote %s", out)


def safe_command(f):
    """
    Run a command function, turning errors into an error response.

    The wrapped function returns dict(status=..., message=..., result=...);
    library errors become dict(status="error", message=..., exit_code=...) with
    their own exit code; anything else is reported as a numerical failure.
    """

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            response = f(*args, **kwargs)
        except QftBellError as e:
            logger.debug("Command %s failed", f.__name__, exc_info=True)
            body = dict(status="error", message=str(e), exit_code=e.exit_code)
            achieved = getattr(e, "achieved_error", None)
            if achieved is not None:
                body["achieved_error"] = achieved
            return body
        except Exception as e:
            logger.exception("Command %s raised an unexpected error", f.__name__)
            return dict(status="error", message=f"{type(e).__name__}: {e}", exit_code=EXIT_NUMERICAL)
        response.setdefault("exit_code", EXIT_OK)
        return response

    return wrapper
