"""
DIMACS-style instance files.

Format (1-indexed vertices, one record per line):
    c <comment>
    p bgvd <n> <m>
    p wfvs <n> <m> <k>
    e <u> <v>          repeated lines add multiplicity (wfvs only)
    w <v> <num>/<den>  vertex weight, default 1 (wfvs only)

Internally vertices are 0-based: file vertex i is graph vertex i - 1.
Every malformed line raises InstanceFormatError naming its line number.
"""

import logging
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .exceptions import InstanceFormatError
from .graphs import MultiGraph, WeightedGraph

logger = logging.getLogger(__name__)

KINDS = ("bgvd", "wfvs")
_WEIGHT = re.compile(r"^(\d+)(?:/(\d+))?$")


@dataclass(frozen=True)
class Instance:
    """A parsed instance; `budget` comes from the wfvs header and is None for bgvd."""

    kind: str
    weighted: WeightedGraph
    budget: int | None = None
    name: str = "-"

    @property
    def graph(self) -> MultiGraph:
        return self.weighted.graph


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceFormatError(line, f"{what} must be an integer, got {token!r}") from None


def _vertex(token: str, line: int, n: int) -> int:
    v = _int(token, line, "vertex")
    if not 1 <= v <= n:
        raise InstanceFormatError(line, f"vertex {v} outside 1..{n}")
    return v - 1


def parse_instance(text: str, name: str = "-") -> Instance:
    """
    Parse an instance file.

    Raises:
        InstanceFormatError: on any malformed, out-of-range or inconsistent line
    """
    kind = None
    n = m = 0
    budget = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    weights: dict[int, Fraction] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        tag = tokens[0]
        if tag == "p":
            if kind is not None:
                raise InstanceFormatError(number, "duplicate problem line")
            if len(tokens) < 2 or tokens[1] not in KINDS:
                raise InstanceFormatError(number, f"problem kind must be one of {', '.join(KINDS)}")
            kind = tokens[1]
            expected = 5 if kind == "wfvs" else 4
            if len(tokens) != expected:
                raise InstanceFormatError(number, f"'p {kind}' takes {expected - 2} numbers")
            n = _int(tokens[2], number, "n")
            m = _int(tokens[3], number, "m")
            if n < 0 or m < 0:
                raise InstanceFormatError(number, "n and m must be non-negative")
            if kind == "wfvs":
                budget = _int(tokens[4], number, "k")
                if budget < 0:
                    raise InstanceFormatError(number, "k must be non-negative")
            header_line = number
        elif kind is None:
            raise InstanceFormatError(number, "record before the problem line")
        elif tag == "e":
            if len(tokens) != 3:
                raise InstanceFormatError(number, "edge line takes two vertices")
            u, v = _vertex(tokens[1], number, n), _vertex(tokens[2], number, n)
            if kind == "bgvd" and (u == v or (min(u, v), max(u, v)) in edges):
                raise InstanceFormatError(number, "bgvd instances must be simple graphs")
            edges.append((min(u, v), max(u, v)))
        elif tag == "w":
            if kind != "wfvs":
                raise InstanceFormatError(number, "weights are only allowed in wfvs instances")
            if len(tokens) != 3:
                raise InstanceFormatError(number, "weight line takes a vertex and a weight")
            v = _vertex(tokens[1], number, n)
            match = _WEIGHT.match(tokens[2])
            if match is None:
                raise InstanceFormatError(
                    number, f"weight must be num/den with num >= 0, got {tokens[2]!r}"
                )
            denominator = int(match.group(2) or 1)
            if denominator == 0:
                raise InstanceFormatError(number, "weight denominator must be positive")
            if v in weights:
                raise InstanceFormatError(number, f"duplicate weight for vertex {v + 1}")
            weights[v] = Fraction(int(match.group(1)), denominator)
        else:
            raise InstanceFormatError(number, f"unknown record type {tag!r}")

    if kind is None:
        raise InstanceFormatError(1, "missing problem line")
    if len(edges) != m:
        raise InstanceFormatError(header_line, f"header announces {m} edges, file has {len(edges)}")

    graph = MultiGraph.from_edges(edges, vertices=range(n))
    weight = {v: weights.get(v, Fraction(1)) for v in range(n)}
    logger.debug(f"Parsed {kind} instance {name}: n={n}, m={m}")
    weighted = WeightedGraph(graph=graph, weight=weight)
    return Instance(kind=kind, weighted=weighted, budget=budget, name=name)


def read_instance(path: str) -> Instance:
    """Read an instance from a file path, or standard input for '-'."""
    if path == "-":
        return parse_instance(sys.stdin.read(), name="stdin")
    return parse_instance(Path(path).read_text(), name=Path(path).stem)


def serialize_instance(instance: Instance, comments: tuple[str, ...] = ()) -> str:
    """Write an instance, renumbering vertices in id order to 1..n."""
    graph = instance.graph
    label = {v: i for i, v in enumerate(sorted(graph.vertices), start=1)}
    lines = [f"c {comment}" for comment in comments]
    header = f"p {instance.kind} {len(graph)} {graph.edge_count()}"
    if instance.kind == "wfvs":
        header += f" {instance.budget or 0}"
    lines.append(header)
    for u, v, m in graph.edges():
        lines.extend(f"e {label[u]} {label[v]}" for _ in range(m))
    if instance.kind == "wfvs":
        for v in sorted(graph.vertices):
            w = instance.weighted.weight[v]
            if w != 1:
                lines.append(f"w {label[v]} {w.numerator}/{w.denominator}")
    return "\n".join(lines) + "\n"
