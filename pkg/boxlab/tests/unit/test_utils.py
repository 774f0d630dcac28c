import json
from fractions import Fraction

import numpy as np
import pytest

from boxlab import __version__
from boxlab.common.exceptions import InvalidInputError
from boxlab.utils import (
    SerialExecutor,
    canonical_json,
    create_csv,
    make_report,
    parse_rational,
    payload_sha256,
    rows_to_csv_text,
    to_jsonable,
    write_rows,
)


def test_parse_rational():
    """Rationals are parsed exactly from a/b, integers and powers"""
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational("7") == Fraction(7)
    assert parse_rational("2^16") == Fraction(65536)
    assert parse_rational(Fraction(5, 4)) == Fraction(5, 4)


@pytest.mark.parametrize("text", ["1.5", "1e3", "x", "1/0"])
def test_parse_rational_rejects(text):
    with pytest.raises(InvalidInputError):
        parse_rational(text)


def test_serial_executor_runs_in_place():
    with SerialExecutor() as executor:
        future = executor.submit(pow, 2, 10)
        failed = executor.submit(int, "x")
    assert future.result() == 1024
    assert isinstance(failed.exception(), ValueError)


def test_to_jsonable():
    value = {1: Fraction(1, 3), "n": np.int64(4), "t": (Fraction(2), np.float64(0.5))}
    assert to_jsonable(value) == {"1": "1/3", "n": 4, "t": [2, 0.5]}


def test_canonical_json_sorts_keys():
    assert canonical_json({"b": 1, "a": 2}).index('"a"') < canonical_json({"b": 1, "a": 2}).index('"b"')


def test_payload_hash_ignores_key_order():
    assert payload_sha256({"a": 1, "b": [1, 2]}) == payload_sha256({"b": [1, 2], "a": 1})
    assert payload_sha256({"a": 1}) != payload_sha256({"a": 2})


def test_make_report_envelope():
    report = make_report({"subcommand": "count"}, {"a": Fraction(1, 2)}, {"total": 0.1})
    assert report["boxlab_version"] == __version__
    assert set(report["versions"]) == {"networkx", "numpy", "scipy", "sympy"}
    assert report["payload_sha256"] == payload_sha256({"a": Fraction(1, 2)})
    assert json.loads(canonical_json(report))["payload"] == {"a": "1/2"}


def test_csv_helpers(tmp_path):
    path = str(tmp_path / "rows.csv")
    header = ["n", "a_n"]
    create_csv(path, header)
    create_csv(path, header)
    write_rows(path, header, [{"n": 1, "a_n": 1}])
    write_rows(path, header, [{"n": 2, "a_n": 3}])
    with open(path, encoding="UTF8") as f:
        assert f.read().splitlines() == ["n,a_n", "1,1", "2,3"]
    assert rows_to_csv_text(header, [{"n": 1}]) == "n,a_n\r\n1,\r\n"


def test_csv_text_quotes_like_the_csv_module():
    """Commas and quotes inside a field are escaped, unknown fields dropped"""
    header = ["n", "provenance"]
    rows = [{"n": 1, "provenance": "oracle, quick"}, {"n": 2, "provenance": 'say "hi"', "extra": 5}]
    assert rows_to_csv_text(header, rows).splitlines() == [
        "n,provenance",
        '1,"oracle, quick"',
        '2,"say ""hi"""',
    ]
