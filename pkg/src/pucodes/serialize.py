"""File formats used by the command-line tool.

Sequence files
    CSV: one sequence per row, one scalar literal per cell.  An optional
    first line ``#kind=<ring>`` pins the scalar kind; other ``#`` lines are
    comments.  JSON: an array of arrays of scalar objects.

Scalar literals (CSV)
    ===================  ==========================================
    ``3``, ``-2``        integer constant (any exact kind)
    ``2+2i``, ``-i``     Gaussian integer
    ``-2+1w``, ``w``     Eisenstein integer
    ``w3^2``, ``-w5^1``  (signed) power of a primitive N-th root of unity
    ``c5[1 0 -1 2]``     cyclotomic order 5, coordinates on 1, z, z^2, ...
    ``(0.5,-1.25)``      complex float as a decimal pair
    ===================  ==========================================

Spec files
    JSON object with keys ``unitaries`` and ``delays`` (required) and
    ``m``, ``k``, ``kind``, ``set_index``, ``orientation`` (optional).  Any
    other key is an error.
"""
from __future__ import annotations

import cmath
import csv
import io
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .constellations import catalog_lookup
from .errors import InvalidPermutation, InvalidSpec, KindMismatch, PucodesError
from .generator import GeneratorSpec, SequenceSet
from .rings import Ring, Scalar, cyclotomic, ring_from_name
from .zpoly import PolyMatrix

__all__ = [
    "ParseError",
    "SpecFile",
    "format_scalar",
    "parse_scalar",
    "read_sequences",
    "write_sequences",
    "read_samples",
    "write_columns",
    "sequences_text",
    "columns_text",
    "load_spec",
    "parse_spec",
]


class ParseError(PucodesError, ValueError):
    """Malformed input file; the message carries ``path:line`` when known."""


# --------------------------------------------------------------------------
# scalar literals

_INT = r"[+-]?\d+"
_ROOT = re.compile(r"^(?P<sign>[+-]?)w(?P<n>\d+)\^(?P<e>[+-]?\d+)$")
_CYCLO = re.compile(r"^c(?P<n>\d+)\[(?P<body>[^\]]*)\]$")
_PAIR = re.compile(r"^\(\s*(?P<re>[^,()]+?)\s*,\s*(?P<im>[^,()]+?)\s*\)$")


def _two_term(sym: str) -> re.Pattern:
    # the real part must be followed by a sign or the end, so "+2i" is 0+2i
    return re.compile(rf"^(?:(?P<a>{_INT})(?=[+-]|$))?(?:(?P<b>[+-]?\d*){sym})?$")


_GAUSS = _two_term("i")
_EIS = _two_term("w")


def _coef(b: str) -> int:
    return int(b + "1") if b in ("", "+", "-") else int(b)


def _signed(v: int, sym: str, lead: bool) -> str:
    if lead:
        return f"{v}{sym}"
    return f"{v:+d}{sym}"


def format_scalar(x: Scalar) -> str:
    """CSV literal for ``x``; :func:`parse_scalar` inverts it exactly."""
    ring = x.ring
    c = x.coords
    if ring.kind == "complex":
        return f"({c[0].real!r},{c[0].imag!r})"
    if ring.kind in ("gauss", "eisenstein"):
        sym = "i" if ring.kind == "gauss" else "w"
        a, b = c
        if b == 0:
            return str(a)
        if a == 0:
            return _signed(b, sym, True)
        return f"{a}{_signed(b, sym, False)}"
    n = ring.order
    if not any(c[1:]):
        return str(c[0])
    for e in range(n):
        z = ring.root_of_unity(e)
        if x == z:
            return f"w{n}^{e}"
        if x == -z:
            return f"-w{n}^{e}"
    return f"c{n}[{' '.join(str(v) for v in c)}]"


def _root(ring: Ring, n: int, e: int, sign: int) -> Scalar:
    if n < 1:
        raise ValueError("root-of-unity order must be positive")
    if not ring.exact:
        z = cmath.exp(2j * cmath.pi * e / n)
        return Scalar.complex(sign * z.real, sign * z.imag)
    order = ring.cyclo_order
    if order % n:
        raise KindMismatch(f"w{n} is not an element of {ring.name}")
    z = ring.root_of_unity(e * (order // n))
    return z if sign > 0 else -z


def parse_scalar(text: str, ring: Ring) -> Scalar:
    """Parse one CSV literal into ``ring``; raises ValueError/KindMismatch."""
    s = text.strip()
    if not s.startswith("c"):
        s = s.replace(" ", "")
    if not s:
        raise ValueError("empty cell")
    m = _ROOT.match(s)
    if m:
        return _root(ring, int(m["n"]), int(m["e"]), -1 if m["sign"] == "-" else 1)
    m = _CYCLO.match(s)
    if m:
        n = int(m["n"])
        if ring.kind != "cyclo" or ring.order != n:
            raise KindMismatch(f"c{n}[...] literal in a {ring.name} file")
        coeffs = [int(v) for v in m["body"].split()]
        return Scalar.cyclo(n, coeffs)
    m = _PAIR.match(s)
    if m:
        if ring.exact:
            raise KindMismatch(f"complex literal {s!r} in a {ring.name} file")
        return Scalar.complex(float(m["re"]), float(m["im"]))
    if re.fullmatch(_INT, s):
        return ring.from_int(int(s))
    if ring.kind in ("gauss", "eisenstein"):
        m = (_GAUSS if ring.kind == "gauss" else _EIS).match(s)
        if m and (m["a"] is not None or m["b"] is not None):
            a = int(m["a"]) if m["a"] is not None else 0
            b = _coef(m["b"]) if m["b"] is not None else 0
            return Scalar(ring, (a, b))
    if not ring.exact:
        try:
            return Scalar.complex(float(s), 0.0)
        except ValueError:
            pass
    raise ValueError(f"cannot read {text!r} as a {ring.name} literal")


def _guess_ring(cells: Iterable[str]) -> Ring:
    """Kind of a header-less CSV file, from its literals."""
    found: set[str] = set()
    for cell in cells:
        s = cell.strip()
        if re.fullmatch(_INT, s):
            continue
        if s.startswith("("):
            found.add("complex")
        elif (m := _ROOT.match(s)) is not None:
            found.add(f"cyclo{m['n']}")
        elif (m := _CYCLO.match(s)) is not None:
            found.add(f"cyclo{m['n']}")
        elif s.endswith("i"):
            found.add("gauss")
        elif s.endswith("w"):
            found.add("eisenstein")
        else:
            found.add("complex")
    if not found:
        return cyclotomic(2)
    if len(found) == 1:
        return ring_from_name(found.pop())
    orders = {int(f[5:]) for f in found if f.startswith("cyclo")}
    if len(found) == len(orders):
        # several root orders: use their least common multiple
        n = int(np.lcm.reduce(sorted(orders)))
        return cyclotomic(n)
    raise ParseError(f"mixed scalar kinds {sorted(found)}; add a #kind= header")


# --------------------------------------------------------------------------
# sequence files

def _where(path, line) -> str:
    return f"{path}:{line}" if path is not None else f"line {line}"


_CELL = re.compile(r'\s*(?:"(?P<q>[^"]*)"|(?P<v>(?:\([^)]*\)|[^,"(])*))\s*(?P<sep>,?)')


def _split_cells(line: str) -> list[str]:
    """Comma-separated cells; a parenthesised pair may be left unquoted."""
    cells, pos = [], 0
    while True:
        m = _CELL.match(line, pos)
        cells.append(m["q"] if m["q"] is not None else m["v"].strip())
        if not m["sep"]:
            if m.end() != len(line):
                raise ValueError(f"stray character {line[m.end()]!r} at offset {m.end()}")
            return cells
        pos = m.end()


def _read_csv_rows(text: str, path=None, ring: Ring | None = None) -> tuple[Ring, list[list[Scalar]]]:
    rows: list[tuple[int, list[str]]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            key, _, value = stripped[1:].partition("=")
            if key.strip() == "kind":
                try:
                    pinned = ring_from_name(value.strip())
                except ValueError as exc:
                    raise ParseError(f"{_where(path, lineno)}: {exc}") from None
                if ring is not None and pinned != ring:
                    raise ParseError(f"{_where(path, lineno)}: file kind {pinned.name}, "
                                     f"expected {ring.name}")
                ring = pinned
            continue
        try:
            cells = _split_cells(line)
        except ValueError as exc:
            raise ParseError(f"{_where(path, lineno)}: {exc}") from None
        rows.append((lineno, cells))
    if not rows:
        raise ParseError(f"{path or 'input'}: no data rows")
    if ring is None:
        ring = _guess_ring(c for _, cells in rows for c in cells)
    out = []
    for lineno, cells in rows:
        vals = []
        for col, cell in enumerate(cells, 1):
            try:
                vals.append(parse_scalar(cell, ring))
            except (ValueError, KindMismatch) as exc:
                raise ParseError(f"{_where(path, lineno)}: column {col}: {exc}") from None
        out.append(vals)
    return ring, out


def _read_json_rows(text: str, path=None) -> tuple[Ring, list[list[Scalar]]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{_where(path, exc.lineno)}: {exc.msg}") from None
    if not isinstance(data, list) or not data:
        raise ParseError(f"{path or 'input'}: expected a non-empty JSON array")
    if not isinstance(data[0], list):
        data = [data]
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list):
            raise ParseError(f"{path or 'input'}: entry {i} is not an array")
        try:
            rows.append([Scalar.from_json(v) for v in row])
        except (ValueError, TypeError, AttributeError) as exc:
            raise ParseError(f"{path or 'input'}: row {i}: {exc}") from None
    ring = rows[0][0].ring if rows[0] else None
    for i, row in enumerate(rows):
        for v in row:
            if v.ring != ring:
                raise ParseError(f"{path or 'input'}: row {i}: mixed kinds "
                                 f"{ring.name} / {v.ring.name}")
    return ring, rows


def _is_json(path) -> bool:
    return str(path).lower().endswith(".json")


def read_sequences(path, ring: Ring | None = None) -> SequenceSet:
    """Read a rectangular sequence file (CSV or ``.json``)."""
    text = Path(path).read_text()
    if _is_json(path):
        found, rows = _read_json_rows(text, path)
        if ring is not None and found != ring:
            raise ParseError(f"{path}: kind {found.name}, expected {ring.name}")
    else:
        found, rows = _read_csv_rows(text, path, ring)
    lengths = {len(r) for r in rows}
    if len(lengths) != 1 or 0 in lengths:
        raise ParseError(f"{path}: rows must be non-empty and of equal length, "
                         f"got lengths {sorted(lengths)}")
    return SequenceSet.from_sequences(rows)


def _csv_text(rows: Sequence[Sequence[Scalar]], ring: Ring) -> str:
    buf = io.StringIO()
    buf.write(f"#kind={ring.name}\n")
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([format_scalar(v) for v in row])
    return buf.getvalue()


def _json_text(rows: Sequence[Sequence[Scalar]]) -> str:
    return json.dumps([[v.to_json() for v in row] for row in rows]) + "\n"


def sequences_text(s: SequenceSet, fmt: str = "csv") -> str:
    """One sequence per row."""
    rows = s.sequences
    return _json_text(rows) if fmt == "json" else _csv_text(rows, s.ring)


def columns_text(s: SequenceSet, fmt: str = "csv") -> str:
    """Time-major layout: one row per time step, one column per sequence."""
    rows = [list(col) for col in zip(*s.sequences)]
    return _json_text(rows) if fmt == "json" else _csv_text(rows, s.ring)


def write_sequences(path, s: SequenceSet) -> None:
    Path(path).write_text(sequences_text(s, "json" if _is_json(path) else "csv"))


def write_columns(path, s: SequenceSet) -> None:
    Path(path).write_text(columns_text(s, "json" if _is_json(path) else "csv"))


def read_samples(path, ring: Ring) -> list[Scalar]:
    """Samples in file order (CSV cells row-major, or a JSON array)."""
    text = Path(path).read_text()
    if not text.strip() or all(l.strip().startswith("#") or not l.strip()
                               for l in text.splitlines()):
        return []
    if _is_json(path):
        found, rows = _read_json_rows(text, path)
        if found is not None and found != ring:
            raise KindMismatch(f"{path}: {found.name} samples for a {ring.name} filter")
    else:
        _, rows = _read_csv_rows(text, path, ring)
    return [v for row in rows for v in row]


# --------------------------------------------------------------------------
# spec files

_SPEC_KEYS = {"m", "k", "kind", "unitaries", "delays", "set_index", "orientation"}


@dataclass(frozen=True)
class SpecFile:
    generator: GeneratorSpec
    set_index: int = 0
    orientation: str = "row"


def _matrix(entry, m: int | None, ring: Ring | None, where: str) -> PolyMatrix:
    if isinstance(entry, str):
        u = catalog_lookup(entry, m).matrix
    elif isinstance(entry, list) and entry and all(isinstance(r, list) for r in entry):
        rows = []
        for row in entry:
            vals = []
            for v in row:
                if isinstance(v, dict):
                    vals.append(Scalar.from_json(v))
                elif isinstance(v, (str, int)) and not isinstance(v, bool):
                    if ring is None:
                        raise InvalidSpec(f"{where}: literal entries need a 'kind' field")
                    vals.append(parse_scalar(str(v), ring))
                else:
                    raise InvalidSpec(f"{where}: bad matrix entry {v!r}")
            rows.append(vals)
        u = PolyMatrix.constant(rows)
    else:
        raise InvalidSpec(f"{where}: expected a catalog name or a square array")
    if ring is not None and u.ring != ring:
        u = u.convert(ring)
    return u


def parse_spec(doc: dict, where: str = "spec") -> SpecFile:
    """Build a :class:`SpecFile` from a decoded JSON document.

    A single-element ``unitaries`` list is repeated for every stage when
    ``k`` is given.
    """
    if not isinstance(doc, dict):
        raise InvalidSpec(f"{where}: top level must be a JSON object")
    unknown = set(doc) - _SPEC_KEYS
    if unknown:
        raise InvalidSpec(f"{where}: unknown field(s) {sorted(unknown)}")
    for key in ("unitaries", "delays"):
        if key not in doc:
            raise InvalidSpec(f"{where}: missing field '{key}'")
    try:
        ring = ring_from_name(doc["kind"]) if "kind" in doc else None
    except ValueError as exc:
        raise InvalidSpec(f"{where}: {exc}") from None
    m, k = doc.get("m"), doc.get("k")
    for name, v in (("m", m), ("k", k)):
        if v is not None and (not isinstance(v, int) or isinstance(v, bool) or v < 0):
            raise InvalidSpec(f"{where}: '{name}' must be a non-negative integer")
    unitaries = doc["unitaries"]
    if isinstance(unitaries, str):
        unitaries = [unitaries]
    if not isinstance(unitaries, list) or not unitaries:
        raise InvalidSpec(f"{where}: 'unitaries' must be a non-empty list")
    if len(unitaries) == 1 and k is not None:
        unitaries = unitaries * (k + 1)
    try:
        mats = [_matrix(u, m, ring, f"{where}: unitaries[{i}]") for i, u in enumerate(unitaries)]
    except (ValueError, KindMismatch) as exc:
        if isinstance(exc, InvalidSpec):
            raise
        raise InvalidSpec(f"{where}: {exc}") from None
    if m is not None and mats[0].size != m:
        raise InvalidSpec(f"{where}: m={m} but matrices are {mats[0].size}x{mats[0].size}")
    if k is not None and len(mats) != k + 1:
        raise InvalidSpec(f"{where}: k={k} needs {k + 1} unitaries, got {len(mats)}")
    delays = doc["delays"]
    if not isinstance(delays, dict) or len(delays) != 1:
        raise InvalidSpec(f"{where}: 'delays' must be {{\"standard\": ...}} or {{\"explicit\": ...}}")
    (mode, body), = delays.items()
    try:
        if mode == "standard":
            if not isinstance(body, dict) or set(body) - {"pi"}:
                raise InvalidSpec(f"{where}: standard delays take only 'pi'")
            pi = body.get("pi")
            if pi is not None and (not isinstance(pi, list)
                                   or not all(isinstance(p, int) and not isinstance(p, bool)
                                              for p in pi)):
                raise InvalidPermutation(f"invalid permutation {pi!r}")
            g = GeneratorSpec.standard(mats, pi)
        elif mode == "explicit":
            if not isinstance(body, list) or not all(isinstance(d, list) for d in body):
                raise InvalidSpec(f"{where}: explicit delays must be a list of lists")
            g = GeneratorSpec.explicit(mats, body)
        else:
            raise InvalidSpec(f"{where}: unknown delay mode {mode!r}")
    except InvalidPermutation as exc:
        raise InvalidPermutation(f"{where}: {exc}") from None
    except InvalidSpec:
        raise
    except (KindMismatch, ValueError) as exc:
        raise InvalidSpec(f"{where}: {exc}") from None
    r = doc.get("set_index", 0)
    if not isinstance(r, int) or isinstance(r, bool) or not 0 <= r < g.m:
        raise InvalidSpec(f"{where}: set_index must be in [0, {g.m})")
    orientation = doc.get("orientation", "row")
    if orientation not in ("row", "column"):
        raise InvalidSpec(f"{where}: orientation must be 'row' or 'column'")
    return SpecFile(g, r, orientation)


def load_spec(path) -> SpecFile:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}: {exc.msg}") from None
    return parse_spec(doc, str(path))
