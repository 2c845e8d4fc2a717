"""Output records printed by the command line front end, and the parsers for its list arguments."""
import csv
import io
import json
import math
import re

from dataclasses import dataclass, field
from typing import Any, Dict

from .errors import DataError
from .gennormal import MomentValue

moment_key = re.compile(r"^m(\d+)$")


@dataclass
class OutputRecord:
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    outputs: Dict[str, Any] = field(default_factory=dict)
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def as_dict(self):
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "diagnostics": self.diagnostics,
        }

    def to_json(self):
        return json.dumps(_plain_json(self.as_dict()), indent=2, allow_nan=False) + "\n"

    def to_csv(self):
        """One header row of section.key names and one row of values"""
        header = ["command"]
        values = [self.command]
        for section in ("inputs", "outputs", "diagnostics"):
            for key, value in getattr(self, section).items():
                header.append("{}.{}".format(section, key))
                values.append(value)
        return dump_csv(header, [values])

    def dump(self, fmt):
        return self.to_json() if fmt == "json" else self.to_csv()


def _plain_json(value):
    # Non-finite floats are written as the inf, -inf and nan tokens the CSV uses
    if isinstance(value, float) and not math.isfinite(value):
        return format_cell(value)
    if isinstance(value, dict):
        return {key: _plain_json(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain_json(item) for item in value]
    return value


def format_cell(value):
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def dump_csv(header, rows):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(value) for value in row])
    return out.getvalue()


def parse_moment_list(text):
    """Parse "m4=1,m5=0,m8=5" into MomentValues"""
    moments = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            key, value = item.split("=")
        except ValueError:
            raise ValueError("Expected m<order>=<value>, got {}".format(item))

        match = moment_key.match(key.strip())
        if match is None:
            raise ValueError("Unknown moment key: {}".format(key))
        moments.append(MomentValue(int(match.group(1)), float(value)))

    if not moments:
        raise ValueError("No moments given")
    return moments


def parse_float_list(text):
    return [float(item) for item in text.split(",") if item.strip()]


def parse_int_list(text):
    return [int(item) for item in text.split(",") if item.strip()]


def read_data(path):
    """Read samples separated by whitespace or commas; '#' starts a comment."""
    samples = []
    try:
        with open(path, "r") as data:
            for lineno, line in enumerate(data, 1):
                line = line.split("#", 1)[0]
                for tok in re.split(r"[\s,]+", line):
                    if not tok:
                        continue
                    try:
                        samples.append(float(tok))
                    except ValueError:
                        raise DataError("{}:{}: not a number: {}".format(path, lineno, tok))
    except OSError as ex:
        raise DataError("could not read {}: {}".format(path, ex.strerror or ex)) from ex
    return samples
