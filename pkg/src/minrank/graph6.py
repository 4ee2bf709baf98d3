"""graph6 codec for graphs with at most ten vertices.

Only the single-byte order header is needed here.  The body packs the upper
triangle column by column (``(0,1), (0,2), (1,2), (0,3), ...``) six bits per
byte, most significant bit first, each byte offset by 63.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .graph import Graph, GraphError

# the decoder accepts orders up to this bound unless told otherwise
DECODE_LIMIT = 10


class Graph6Error(GraphError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _body_len(n: int) -> int:
    return (n * (n - 1) // 2 + 5) // 6


def decode(text: str | bytes, max_order: int = DECODE_LIMIT) -> Graph:
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<") :]
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte {c!r} outside the graph6 alphabet 63..126", i)
    n = data[0] - 63
    if n == 63:
        raise Graph6Error("multi-byte order headers are not supported", 0)
    if n > max_order:
        raise Graph6Error(f"order {n} exceeds {max_order}", 0)
    need = _body_len(n)
    if len(data) - 1 != need:
        off = min(len(data), 1 + need)
        raise Graph6Error(f"expected {need} body bytes for n={n}, got {len(data) - 1}", off)
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[1 + k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    nbits = n * (n - 1) // 2
    if nbits % 6:
        last = data[-1] - 63
        if last & ((1 << (6 - nbits % 6)) - 1):
            raise Graph6Error("nonzero padding bits", len(data) - 1)
    return Graph(n, tuple(adj))


def encode(g: Graph) -> str:
    n = g.n
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(g.adj[i] >> j & 1)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = val << 1 | b
        out.append(chr(val + 63))
    return "".join(out)


def read_file(path: str | Path) -> Iterator[Graph]:
    """Graphs of a graph6 file, one per line; blank lines are skipped."""
    with open(path, "rb") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                yield decode(line)
            except Graph6Error as exc:
                raise Graph6Error(f"line {lineno}: {exc}", exc.offset) from None


def write_file(path: str | Path, graphs) -> int:
    count = 0
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(encode(g) + "\n")
            count += 1
    return count
