"""Matrix CSV: one row per line, entries ``a``, ``a+bi`` or ``a-bi``."""
from __future__ import annotations

import re

import numpy as np

from an_lab.errors import SpecError

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_ENTRY = re.compile(
    rf"^\s*(?:(?P<re>{_NUM})(?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i"
    rf"|(?P<re_only>{_NUM})|(?P<im_only>{_NUM}|[+-]?)i)\s*$"
)


def _imag(text: str) -> float:
    if text in ("", "+"):
        return 1.0
    if text == "-":
        return -1.0
    return float(text)


def parse_entry(text: str) -> complex:
    m = _ENTRY.match(text)
    if not m:
        raise SpecError(f"bad matrix entry {text!r}")
    if m.group("re_only") is not None:
        return complex(float(m.group("re_only")), 0.0)
    if m.group("im_only") is not None:
        return complex(0.0, _imag(m.group("im_only")))
    return complex(float(m.group("re")), _imag(m.group("im")))


def format_entry(z: complex) -> str:
    z = complex(z)
    if z.imag == 0.0:
        return f"{z.real:.12e}"
    return f"{z.real:.12e}{z.imag:+.12e}i"


def parse_matrix(text: str) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            rows.append([parse_entry(cell) for cell in line.split(",")])
        except SpecError as exc:
            raise SpecError(f"line {lineno}: {exc}") from None
    if not rows:
        raise SpecError("matrix file is empty")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise SpecError(f"ragged matrix: row lengths {sorted(widths)}")
    a = np.array(rows, dtype=np.complex128)
    if not np.all(np.isfinite(a)):
        raise SpecError("matrix has NaN or infinite entries")
    return a


def format_matrix(a) -> str:
    a = np.atleast_2d(np.asarray(a))
    return "".join(",".join(format_entry(z) for z in row) + "\n" for row in a)


def read_matrix(path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path, a) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(a))
