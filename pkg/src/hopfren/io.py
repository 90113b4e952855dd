"""Flat-file formats: characters (JSON), graph catalogs (TSV), check reports (JSON).

All writers are deterministic and atomic (temporary file plus rename).
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .hopf import Character
from .series import LAURENT, QQ, LaurentSeries, TruncatedSeries

CATALOG_VERSION = "v1"


class CharacterFileError(ValueError):
    pass


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise CharacterFileError(f"rational must be a 'p/q' string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CharacterFileError(f"bad rational {text!r}") from exc


def atomic_write(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# -- characters --------------------------------------------------------------------

def _value_to_json(v) -> dict:
    if isinstance(v, TruncatedSeries):
        return {str(k): format_rational(c) for k, c in v.items()}
    v = Fraction(v)
    return {"0": format_rational(v)} if v else {}


def character_to_dict(chi: Character, algebra: str, truncation_order: int) -> dict:
    values = {key: _value_to_json(chi.values[key]) for key in sorted(chi.values)}
    return {"algebra": algebra, "truncation_order": truncation_order, "values": values}


def character_from_dict(data: dict):
    """Return ``(character, algebra_name, truncation_order)``.

    Values become Laurent series in ``eps`` truncated at ``truncation_order``.
    """
    try:
        algebra = data["algebra"]
        order = data["truncation_order"]
        raw = data["values"]
    except (KeyError, TypeError) as exc:
        raise CharacterFileError(f"missing field {exc}") from None
    if algebra not in ("phi3", "hdiff"):
        raise CharacterFileError(f"unknown algebra {algebra!r}")
    if not isinstance(order, int) or isinstance(order, bool):
        raise CharacterFileError("truncation_order must be an integer")
    values = {}
    for key, coeffs in raw.items():
        if not isinstance(coeffs, dict):
            raise CharacterFileError(f"value of {key!r} must be an object")
        try:
            terms = {int(e): parse_rational(c) for e, c in coeffs.items()}
        except ValueError as exc:
            raise CharacterFileError(f"bad exponent in {key!r}: {exc}") from None
        if any(e > order for e in terms):
            raise CharacterFileError(f"{key!r} has terms beyond truncation_order")
        values[key] = LaurentSeries(terms, order)
    return Character(values, LAURENT), algebra, order


def rational_character(chi: Character) -> Character:
    """Drop to a QQ-valued character; every value must be a pure constant."""
    out = {}
    for key, v in chi.values.items():
        if isinstance(v, TruncatedSeries):
            if any(k != 0 for k, _ in v.items()):
                raise CharacterFileError(f"{key!r} is not a rational constant")
            v = v.coeff(0) if (v.order is None or v.order >= 0) else 0
        out[key] = v
    return Character(out, QQ)


def write_character(path, chi: Character, algebra: str, truncation_order: int) -> Path:
    return atomic_write(path, dump_json(character_to_dict(chi, algebra, truncation_order)))


def read_character(path):
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CharacterFileError(f"{path}: {exc}") from None
    return character_from_dict(data)


# -- catalogs ----------------------------------------------------------------------

def catalog_text(entries, max_loops: int, multiplicities: bool = True) -> str:
    lines = [f"# phi3-catalog {CATALOG_VERSION} max_loops={max_loops} "
             f"generators={len(entries)} "
             f"insertion_multiplicities={'on' if multiplicities else 'off'} "
             f"subgraph_legs=symmetrized"]
    for e in sorted(entries, key=lambda e: e.key):
        lines.append(f"{e.key}\t{format_rational(e.symmetry)}\t{e.omega}")
    return "\n".join(lines) + "\n"


def parse_catalog(text: str):
    """Return ``(header_fields, [(key, symmetry, omega), ...])``."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# phi3-catalog "):
        raise ValueError("missing catalog header")
    header = dict(tok.split("=", 1) for tok in lines[0].split()[3:])
    header["version"] = lines[0].split()[2]
    rows = []
    for line in lines[1:]:
        key, sym, omega = line.split("\t")
        rows.append((key, Fraction(sym), int(omega)))
    return header, rows


# -- reports -----------------------------------------------------------------------

def write_report(path, report: dict) -> Path:
    return atomic_write(path, dump_json(report))
