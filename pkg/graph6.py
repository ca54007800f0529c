# graph6.py
"""
graph6 codec (single-byte size form, 1 <= n <= 62).

Layout: chr(n + 63), then the upper triangle read column by column
(j = 1..n-1, i = 0..j-1), packed six bits per character, most significant bit
first, zero-padded, each group emitted as chr(value + 63).
"""
from __future__ import annotations
from pathlib import Path
from typing import Iterable, Iterator, Tuple, Union

from config import GRAPH6_MAX_N
from errors import BadChar, BadLength, BadPadding, CapExceeded, Graph6Error, UnsupportedSize
from graphcore import Graph

HEADER = ">>graph6<<"


def _body_length(n: int) -> int:
    return (n * (n - 1) // 2 + 5) // 6


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n > GRAPH6_MAX_N:
        raise CapExceeded(f"graph6 single-byte form covers n <= {GRAPH6_MAX_N}, got {n}")
    out = [chr(n + 63)]
    acc = nacc = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(acc + 63))
                acc = nacc = 0
    if nacc:
        out.append(chr((acc << (6 - nacc)) + 63))
    return "".join(out)


def decode_graph6(s: str) -> Graph:
    text = s.strip()
    if text.startswith(HEADER):
        text = text[len(HEADER):]
    if not text:
        raise BadLength("empty graph6 string")
    for pos, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise BadChar(f"character {ch!r} at position {pos} is outside 63..126")
    n = ord(text[0]) - 63
    if n == 63:
        raise UnsupportedSize(f"multi-byte graph6 sizes (n > {GRAPH6_MAX_N}) are not supported")
    if n == 0:
        raise UnsupportedSize("graph6 string describes a graph with no vertices")
    want = _body_length(n)
    if len(text) - 1 != want:
        raise BadLength(f"n={n} needs {want} data characters, got {len(text) - 1}")
    nbits = n * (n - 1) // 2
    values = [ord(ch) - 63 for ch in text[1:]]
    pad = want * 6 - nbits
    if pad and values[-1] & ((1 << pad) - 1):
        raise BadPadding("nonzero padding bits")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if values[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def iter_graph6_lines(lines: Iterable[str]) -> Iterator[Tuple[int, Graph]]:
    """(line number, graph) for every non-blank line; errors carry the line number."""
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line == HEADER:
            continue
        try:
            yield lineno, decode_graph6(line)
        except Graph6Error as e:
            raise type(e)(f"line {lineno}: {e}") from e


def iter_graph6_file(path: Union[str, Path]) -> Iterator[Tuple[int, Graph]]:
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        yield from iter_graph6_lines(fh)
