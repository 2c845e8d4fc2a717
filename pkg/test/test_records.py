import json

import pytest

from powexp.errors import DataError
from powexp.gennormal import MomentValue
from powexp.records import (
    OutputRecord,
    dump_csv,
    format_cell,
    parse_float_list,
    parse_int_list,
    parse_moment_list,
    read_data,
)


def test_parse_moment_list():
    moments = parse_moment_list("m4=1,m5=0,m8=5")
    assert moments == [MomentValue(4, 1.0), MomentValue(5, 0.0), MomentValue(8, 5.0)]

    assert parse_moment_list(" m2 = 1.5 , ") == [MomentValue(2, 1.5)]

    with pytest.raises(ValueError):
        parse_moment_list("k4=1")

    with pytest.raises(ValueError):
        parse_moment_list("m4")

    with pytest.raises(ValueError):
        parse_moment_list("m4=one")

    with pytest.raises(ValueError):
        parse_moment_list("")


def test_parse_lists():
    assert parse_float_list("0.5,-1,2e3") == [0.5, -1.0, 2000.0]
    assert parse_int_list("2,4,6") == [2, 4, 6]

    with pytest.raises(ValueError):
        parse_int_list("2,4.5")


def test_read_data(data_file, tmp_path):
    path = data_file("# samples\n1.0 2.0\n3.0,4.0\n\n5.0  # last\n")
    assert read_data(path) == [1.0, 2.0, 3.0, 4.0, 5.0]

    assert read_data(data_file("")) == []

    with pytest.raises(DataError) as ex:
        read_data(data_file("1.0\n2.0 x7\n"))
    assert str(ex.value).endswith(":2: not a number: x7")

    with pytest.raises(DataError):
        read_data(tmp_path / "absent.txt")


def test_format_cell():
    assert format_cell(0.1) == "0.10000000000000001"
    assert format_cell(1.0) == "1"
    assert format_cell(True) == "true"
    assert format_cell(3) == "3"
    assert format_cell("pos") == "pos"


def test_output_record():
    record = OutputRecord(
        "integrate",
        {"n": 2, "sign": "neg", "from": 0.0, "to": float("inf")},
        {"value": 0.1},
        {"terms_used": 0, "converged": True},
    )

    # Keys keep their insertion order and floats their exact value
    loaded = json.loads(record.to_json())
    assert list(loaded) == ["command", "inputs", "outputs", "diagnostics"]
    assert list(loaded["inputs"]) == ["n", "sign", "from", "to"]
    assert loaded["outputs"]["value"] == 0.1
    assert loaded["inputs"]["to"] == "inf"
    assert "Infinity" not in record.to_json()

    assert record.dump("json") == record.to_json()
    assert record.dump("csv") == (
        "command,inputs.n,inputs.sign,inputs.from,inputs.to,outputs.value,"
        "diagnostics.terms_used,diagnostics.converged\n"
        "integrate,2,neg,0,inf,0.10000000000000001,0,true\n"
    )


def test_dump_csv():
    text = dump_csv(("x", "y"), [(0.5, 1.0 / 3.0), (1.0, 0.25)])
    assert text == "x,y\n0.5,0.33333333333333331\n1,0.25\n"
