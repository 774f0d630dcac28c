import concurrent.futures
import csv
import hashlib
import io
import json
import os
import re
from fractions import Fraction
from typing import Iterable, List

import networkx
import numpy
import scipy
import sympy

from boxlab import __version__
from boxlab.common.exceptions import InvalidInputError

_POWER = re.compile(r"^\s*(-?\d+)\s*\^\s*(\d+)\s*$")


def create_csv(filename, header):
    if not os.path.exists(filename):
        with open(filename, "a", encoding="UTF8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=header)
            writer.writeheader()


def write_rows(filename: str, header: List[str], rows: Iterable[dict]):
    with open(filename, "a", encoding="UTF8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=header)
        writer.writerows(rows)


def rows_to_csv_text(header: List[str], rows: Iterable[dict]) -> str:
    """Renders rows the way write_rows would, header included, as a string.

    Fields outside the header are dropped and missing ones are left empty.
    """
    buffer = io.StringIO(newline="")
    writer = csv.DictWriter(buffer, fieldnames=header, extrasaction="ignore")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def parse_rational(text) -> Fraction:
    """Parses "a/b", an integer or a power "b^e" exactly, never through float.

    Examples
    --------
    >>> parse_rational("3/2")
    Fraction(3, 2)
    >>> parse_rational("2^16")
    Fraction(65536, 1)
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    match = _POWER.match(str(text))
    if match:
        return Fraction(int(match.group(1)) ** int(match.group(2)))
    if "." in str(text) or "e" in str(text).lower():
        raise InvalidInputError(f"rationals are given as a/b, got {text!r}")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exp:
        raise InvalidInputError(f"could not parse {text!r} as a rational") from exp


class SerialExecutor(concurrent.futures.Executor):
    """Runs every submitted call immediately in the calling thread"""

    def __init__(self, max_workers: int = None):
        self.max_workers = max_workers

    def submit(self, fn, /, *args, **kwargs):
        future = concurrent.futures.Future()
        try:
            future.set_result(fn(*args, **kwargs))
        except BaseException as exp:
            future.set_exception(exp)
        return future


def to_jsonable(value):
    """Converts Fractions, numpy scalars and tuples into plain JSON values"""
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return value.item()
    if hasattr(value, "to_json"):
        return to_jsonable(value.to_json())
    return value


def canonical_json(value) -> str:
    return json.dumps(to_jsonable(value), sort_keys=True, indent=2)


def payload_sha256(payload) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def make_report(config: dict, payload, timing: dict = None) -> dict:
    """Wraps a payload in the report envelope.

    The hash covers the payload only, so equal configurations give equal
    hashes regardless of how long the run took.
    """
    return {
        "boxlab_version": __version__,
        "versions": {
            "networkx": networkx.__version__,
            "numpy": numpy.__version__,
            "scipy": scipy.__version__,
            "sympy": sympy.__version__,
        },
        "config": to_jsonable(config),
        "payload": to_jsonable(payload),
        "payload_sha256": payload_sha256(payload),
        "timing": to_jsonable(timing or {}),
    }
