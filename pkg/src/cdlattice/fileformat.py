"""Plain-text group files.

Two line-based ASCII formats. A table file::

    cdgroup 1
    name C2
    order 2
    0 1
    1 0

and a permutation file, one generator per line in cycle notation::

    cdperm 1
    name C3wrC3
    degree 9
    (1 2 3)
    (1 4 7)(2 5 8)(3 6 9)

``name`` is optional, ``#`` starts a comment line. Table entries may be
0- or 1-based and the identity may sit anywhere; both are normalized on load.
"""

from __future__ import annotations

from pathlib import Path

from .errors import GroupFileSyntaxError, NotAPermutation
from .group import (
    FiniteGroup,
    build_from_permutation_generators,
    build_from_table,
    parse_cycles,
)

FORMAT_VERSION = 1
TABLE_MAGIC = "cdgroup"
PERM_MAGIC = "cdperm"


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _keyword(lines, key: str, optional: bool = False):
    try:
        number, line = next(lines)
    except StopIteration:
        raise GroupFileSyntaxError(f"missing '{key}' line") from None
    word, _, rest = line.partition(" ")
    if word != key:
        if optional:
            return None, (number, line)
        raise GroupFileSyntaxError(f"expected '{key}', found {word!r}", number, 1)
    return (number, rest.strip()), None


def _int_field(item, key):
    number, value = item
    try:
        out = int(value)
    except ValueError:
        raise GroupFileSyntaxError(f"'{key}' needs an integer, got {value!r}", number,
                                   len(key) + 2) from None
    if out < 1:
        raise GroupFileSyntaxError(f"'{key}' must be positive", number, len(key) + 2)
    return out


def parse_group_file(text: str, *, cap: int | None = None) -> FiniteGroup:
    """Parse either format and return a fully validated group."""
    lines = _lines(text)
    try:
        number, header = next(lines)
    except StopIteration:
        raise GroupFileSyntaxError("empty group file") from None
    parts = header.split()
    if len(parts) != 2 or parts[0] not in (TABLE_MAGIC, PERM_MAGIC):
        raise GroupFileSyntaxError(f"expected '{TABLE_MAGIC} 1' or '{PERM_MAGIC} 1'", number, 1)
    if parts[1] != str(FORMAT_VERSION):
        raise GroupFileSyntaxError(f"unsupported format version {parts[1]!r}", number,
                                   len(parts[0]) + 2)
    kind = parts[0]
    name = None
    key = "order" if kind == TABLE_MAGIC else "degree"
    found, pending = _keyword(lines, "name", optional=True)
    if found is not None:
        name = found[1] or None
        size_item, _ = _keyword(lines, key)
    else:
        number, line = pending
        word, _, rest = line.partition(" ")
        if word != key:
            raise GroupFileSyntaxError(f"expected '{key}', found {word!r}", number, 1)
        size_item = (number, rest.strip())
    size = _int_field(size_item, key)
    body = list(lines)
    if kind == TABLE_MAGIC:
        return _parse_table(body, size, name, cap)
    return _parse_perms(body, size, name, cap)


def _parse_table(body, order, name, cap):
    if len(body) != order:
        where = body[order][0] if len(body) > order else None
        raise GroupFileSyntaxError(f"expected {order} table rows, found {len(body)}", where)
    rows = []
    for r, (number, line) in enumerate(body):
        tokens = line.split()
        if len(tokens) != order:
            raise GroupFileSyntaxError(f"row {r} has {len(tokens)} entries, expected {order}",
                                       number)
        row = []
        col = 1
        for tok in tokens:
            col = line.index(tok, col - 1) + 1
            if not tok.isdigit():
                raise GroupFileSyntaxError(f"row {r}: {tok!r} is not a decimal index", number, col)
            row.append(int(tok))
            col += len(tok)
        rows.append(row)
    lo = min(min(r) for r in rows)
    hi = max(max(r) for r in rows)
    if lo == 1 and hi == order:
        rows = [[x - 1 for x in r] for r in rows]
    return build_from_table(order, rows, name=name, cap=cap)


def _parse_perms(body, degree, name, cap):
    gens = []
    for number, line in body:
        try:
            parse_cycles(line, degree)
        except NotAPermutation as exc:
            raise GroupFileSyntaxError(str(exc), number) from None
        gens.append(line)
    return build_from_permutation_generators(degree, gens, name=name, cap=cap)


def serialize_group(g: FiniteGroup, name: str | None = None) -> str:
    """Table-format text for ``g``; parsing it back gives the same table."""
    name = name or g.name
    out = [f"{TABLE_MAGIC} {FORMAT_VERSION}"]
    if name:
        out.append(f"name {name}")
    out.append(f"order {g.order}")
    out.extend(" ".join(str(int(x)) for x in row) for row in g.table)
    return "\n".join(out) + "\n"


def serialize_permutation_group(degree: int, generators, name: str | None = None) -> str:
    out = [f"{PERM_MAGIC} {FORMAT_VERSION}"]
    if name:
        out.append(f"name {name}")
    out.append(f"degree {degree}")
    out.extend(generators)
    return "\n".join(out) + "\n"


def read_group_file(path, *, cap: int | None = None) -> FiniteGroup:
    path = Path(path)
    g = parse_group_file(path.read_text(encoding="ascii"), cap=cap)
    if g.name is None:
        g.name = path.stem
    return g


def write_group_file(path, g: FiniteGroup, name: str | None = None) -> None:
    Path(path).write_text(serialize_group(g, name), encoding="ascii", newline="\n")
