"""Pure-Python record tokenizers. ``_speedups.pyx`` implements the same contract."""

from __future__ import annotations

import re

_FIELD_CHUNK = re.compile(r'(?:[^;"]+|"(?:[^"\\]+|\\.)*")*', re.S)
_PAIR_TOKEN = re.compile(r'"(?:[^"\\]|\\.)*"|[;()]|[^;"()]+|"', re.S)
_FORM_LINE = re.compile(
    r'[ \t]*([0-9]+)[ \t]*;[ \t]*([0-9]+)[ \t]*;[ \t]*([0-9]+)[ \t]*;[ \t]*([0-9]+)[ \t]*;'
    r'[ \t]*([0-9]+)[ \t]*;[ \t]*([0-9]+)[ \t]*;[ \t]*"([^"\\]+)"[ \t]*;[ \t]*"([^"\\]*)"[ \t]*;?[ \t]*'
)


def split_fields(line: str) -> list[str]:
    """Split a record line on ``;`` outside double quotes; fields are stripped.

    A trailing empty field (the text after the final ``;``) is dropped.
    Raises ValueError on an unterminated quoted string.
    """
    if '"' not in line:
        parts = [p.strip() for p in line.split(";")]
        if not parts[-1]:
            parts.pop()
        return parts
    out = []
    pos, n = 0, len(line)
    while True:
        end = _FIELD_CHUNK.match(line, pos).end()
        if end == n:
            tail = line[pos:].strip()
            if tail:
                out.append(tail)
            return out
        if line[end] != ";":
            raise ValueError(f"unterminated quoted string at column {end + 1}")
        out.append(line[pos:end].strip())
        pos = end + 1


def split_pairs(body: str) -> list[tuple[str, str]]:
    """Split ``KEY value; KEY value;`` text into (key, value) pairs.

    Separators inside quotes or parentheses are ignored; empty segments are
    skipped. Raises ValueError on unbalanced parentheses or quotes.
    """
    segments = []
    depth = 0
    start = 0
    for m in _PAIR_TOKEN.finditer(body):
        tok = m.group()
        if tok == ";":
            if depth == 0:
                segments.append(body[start:m.start()])
                start = m.end()
        elif tok == "(":
            depth += 1
        elif tok == ")":
            if depth == 0:
                raise ValueError(f"unbalanced ')' at column {m.start() + 1}")
            depth -= 1
        elif tok == '"':
            raise ValueError(f"unterminated quoted string at column {m.start() + 1}")
    if depth:
        raise ValueError("unbalanced '(' at end of record")
    segments.append(body[start:])
    out = []
    for seg in segments:
        seg = seg.strip()
        if not seg:
            continue
        parts = seg.split(None, 1)
        out.append((parts[0], parts[1].strip() if len(parts) > 1 else ""))
    return out


def form_fields(line: str):
    """Fast path for verbal Forms lines; None when the line is not in plain shape."""
    m = _FORM_LINE.fullmatch(line)
    if m is None:
        return None
    g = m.groups()
    return (int(g[0]), int(g[1]), int(g[2]), int(g[3]), int(g[4]), int(g[5]), g[6], g[7])
