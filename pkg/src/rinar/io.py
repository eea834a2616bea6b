"""Series file I/O, fraction literals and run manifests."""

import hashlib
import json
import re
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ParseError

__all__ = [
    "read_series_csv",
    "write_series_csv",
    "parse_fraction",
    "RunManifest",
    "sha256_file",
]

_FRACTION_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def _normalise_token(text: str) -> str:
    # accept the unicode minus sign that spreadsheets like to emit
    return text.strip().replace("−", "-")


def read_series_csv(path) -> np.ndarray:
    """Read a series file: one integer per line, UTF-8, LF newlines.

    A single non-numeric first line is treated as a header and skipped.
    Any other non-integer token raises ParseError with its line number.
    """
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(f"{path}: empty series file")
    start = 0
    try:
        int(_normalise_token(lines[0]))
    except ValueError:
        start = 1
        if len(lines) == 1:
            raise ParseError(f"{path}: no data after header line") from None
    values = []
    for number, raw in enumerate(lines[start:], start=start + 1):
        token = _normalise_token(raw)
        try:
            values.append(int(token))
        except ValueError:
            raise ParseError(f"{path}: line {number}: not an integer: {raw!r}") from None
    return np.array(values, dtype=np.int64)


def write_series_csv(path, series) -> None:
    """Write a series: one integer per line, LF newlines, no header."""
    values = np.asarray(series)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for v in values:
            fh.write(f"{int(v)}\n")


def parse_fraction(text: str) -> Fraction:
    """Parse 'int' or 'int/posint' into a reduced Fraction.

    Rejects decimals, empty strings and zero denominators.
    """
    token = _normalise_token(str(text))
    if not _FRACTION_RE.match(token):
        raise ParseError(f"not a fraction literal: {text!r} (expected 'int' or 'int/posint')")
    if "/" in token:
        num_text, den_text = token.split("/")
        den = int(den_text)
        if den == 0:
            raise ParseError(f"zero denominator in fraction literal: {text!r}")
        return Fraction(int(num_text), den)
    return Fraction(int(token))


def sha256_file(path) -> str:
    """Hex digest of a file's bytes."""
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to re-derive one CLI run's outputs.

    options holds the full resolved option set including defaults; seeds
    repeats the seed values explicitly; input_digests maps input paths to
    sha256 digests.
    """

    subcommand: str
    options: dict
    seeds: dict = field(default_factory=dict)
    input_digests: dict = field(default_factory=dict)
    artifact_version: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
