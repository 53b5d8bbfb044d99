"""DIMACS-style edge lists: ``p edge <n> <m>`` then ``e <u> <v>`` with 1-indexed ids."""

from __future__ import annotations

from .graph import Graph


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _ints(fields: list[str], lineno: int) -> list[int]:
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(fields)!r}") from None


def parse_graph(text: str) -> Graph:
    """Parse an edge list; duplicate edges are ignored, ``c`` lines are comments."""
    n = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError(lineno, "second header line")
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError(lineno, "header must be 'p edge <n> <m>'")
            n, _ = _ints(parts[2:], lineno)
            if n < 0:
                raise ParseError(lineno, "negative vertex count")
        elif tag == "e":
            if n is None:
                raise ParseError(lineno, "edge before header")
            if len(parts) != 3:
                raise ParseError(lineno, "edge line must be 'e <u> <v>'")
            u, v = _ints(parts[1:], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(lineno, f"vertex out of range 1..{n}")
            if u == v:
                raise ParseError(lineno, f"self-loop at vertex {u}")
            edges.add((min(u, v) - 1, max(u, v) - 1))
        else:
            raise ParseError(lineno, f"unknown line type {tag!r}")
    if n is None:
        raise ParseError(0, "missing 'p edge' header")
    return Graph.from_edges(n, sorted(edges))


def format_graph(G: Graph) -> str:
    lines = [f"p edge {G.n} {G.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"
