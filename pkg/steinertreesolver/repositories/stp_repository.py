"""
StpRepository: reading and writing SteinLib `.stp` files.
"""
import io
import logging
import os
from typing import Optional, List, Dict, Tuple, TextIO

import numpy as np

from ..errors import StpParseError, InstanceError
from ..models.instance import Instance

logger = logging.getLogger(__name__)

STP_MAGIC = "33D32945 STP File, STP Format Version 1.0"


def _format_number(value: float) -> str:
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def _parse_int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise StpParseError(f"{what} must be an integer, got '{token}'", line_no) from None


def _parse_float(token: str, line_no: int, what: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise StpParseError(f"{what} must be a number, got '{token}'", line_no) from None


class _StpReader:
    """Line-by-line state machine over the sections of one file."""

    def __init__(self, name: str):
        self.name = name
        self.comment_name = ""
        self.section: Optional[str] = None
        self.section_line = 0
        self.seen_graph = False
        self.num_nodes: Optional[int] = None
        self.declared: Dict[str, Tuple[int, int]] = {}
        # undirected key -> {(i, j): w}; insertion order is edge order
        self.edges: Dict[Tuple[int, int], Dict[Tuple[int, int], float]] = {}
        self.edge_kind: Dict[Tuple[int, int], str] = {}
        self.arc_lines = 0
        self.edge_lines = 0
        self.terminals: List[int] = []
        self.prizes: Dict[int, float] = {}
        self.root: Optional[int] = None

    def vertex(self, token: str, line_no: int) -> int:
        if self.num_nodes is None:
            raise StpParseError("vertex referenced before 'Nodes' declaration", line_no)
        v = _parse_int(token, line_no, "vertex id")
        if not 1 <= v <= self.num_nodes:
            raise StpParseError(f"vertex {v} out of range 1..{self.num_nodes}", line_no)
        return v

    def feed(self, line_no: int, tokens: List[str]) -> bool:
        """Consume one non-empty line; returns False at EOF."""
        key = tokens[0].lower()
        if self.section is None:
            if key == "section":
                if len(tokens) < 2:
                    raise StpParseError("section name missing", line_no)
                self.section = tokens[1].lower()
                self.section_line = line_no
                if self.section == "graph":
                    self.seen_graph = True
            elif key == "eof":
                return False
            elif "stp file" in " ".join(tokens).lower():
                pass
            else:
                raise StpParseError(f"unexpected '{tokens[0]}' outside a section", line_no)
            return True
        if key == "end":
            self.section = None
            return True
        if self.section == "graph":
            self._graph_line(line_no, key, tokens)
        elif self.section == "terminals":
            self._terminal_line(line_no, key, tokens)
        elif self.section == "comment" and key == "name" and len(tokens) > 1:
            self.comment_name = " ".join(tokens[1:]).strip('"')
        return True

    def _graph_line(self, line_no: int, key: str, tokens: List[str]) -> None:
        if key in ("nodes", "edges", "arcs"):
            if len(tokens) != 2:
                raise StpParseError(f"'{tokens[0]}' takes one value", line_no)
            value = _parse_int(tokens[1], line_no, tokens[0])
            if value < 0:
                raise StpParseError(f"'{tokens[0]}' must be non-negative", line_no)
            if key == "nodes":
                self.num_nodes = value
            else:
                self.declared[key] = (value, line_no)
            return
        if key in ("e", "a"):
            if len(tokens) != 4:
                raise StpParseError(f"'{tokens[0]}' line needs 'i j w'", line_no)
            i = self.vertex(tokens[1], line_no)
            j = self.vertex(tokens[2], line_no)
            w = _parse_float(tokens[3], line_no, "weight")
            if i == j:
                raise StpParseError(f"self loop on vertex {i}", line_no)
            if not w > 0:
                raise StpParseError(f"weight {tokens[3]} is not positive", line_no)
            self._add(line_no, key, i, j, w)
            return
        raise StpParseError(f"unknown graph entry '{tokens[0]}'", line_no)

    def _add(self, line_no: int, key: str, i: int, j: int, w: float) -> None:
        undirected = (min(i, j), max(i, j))
        slots = self.edges.get(undirected)
        if key == "e":
            self.edge_lines += 1
            if slots is not None:
                raise StpParseError(f"duplicate edge {i} {j}", line_no)
            self.edges[undirected] = {(i, j): w, (j, i): w}
            self.edge_kind[undirected] = "e"
            return
        self.arc_lines += 1
        if slots is None:
            self.edges[undirected] = {(i, j): w}
            self.edge_kind[undirected] = "a"
        elif self.edge_kind[undirected] == "e" or (i, j) in slots:
            raise StpParseError(f"duplicate edge {i} {j}", line_no)
        else:
            slots[(i, j)] = w

    def _terminal_line(self, line_no: int, key: str, tokens: List[str]) -> None:
        if key == "terminals":
            return
        if key == "t":
            if len(tokens) != 2:
                raise StpParseError("'T' line needs one vertex", line_no)
            self.terminals.append(self.vertex(tokens[1], line_no))
        elif key == "tp":
            if len(tokens) != 3:
                raise StpParseError("'TP' line needs 'i p'", line_no)
            v = self.vertex(tokens[1], line_no)
            prize = _parse_float(tokens[2], line_no, "prize")
            if prize < 0:
                raise StpParseError(f"negative prize {tokens[2]}", line_no)
            self.prizes[v] = prize
        elif key in ("root", "rootp"):
            if len(tokens) != 2:
                raise StpParseError("'Root' line needs one vertex", line_no)
            self.root = self.vertex(tokens[1], line_no)
        else:
            raise StpParseError(f"unknown terminal entry '{tokens[0]}'", line_no)

    def build(self, last_line: int) -> Instance:
        if self.section is not None:
            raise StpParseError(f"section opened at line {self.section_line} is not closed", last_line)
        if not self.seen_graph or self.num_nodes is None:
            raise StpParseError("missing 'SECTION Graph' with a 'Nodes' line", last_line)
        if "edges" in self.declared and self.declared["edges"][0] != self.edge_lines:
            count, line_no = self.declared["edges"]
            raise StpParseError(f"'Edges {count}' declared but {self.edge_lines} E lines found", line_no)
        if "arcs" in self.declared and self.declared["arcs"][0] != self.arc_lines:
            count, line_no = self.declared["arcs"]
            raise StpParseError(f"'Arcs {count}' declared but {self.arc_lines} A lines found", line_no)

        specs = []
        for (a, b), slots in self.edges.items():
            w_ab = slots.get((a, b), slots.get((b, a)))
            w_ba = slots.get((b, a), w_ab)
            specs.append((a - 1, b - 1, w_ab, w_ba))

        prizes = np.zeros(self.num_nodes)
        for v, p in self.prizes.items():
            prizes[v - 1] = p
        if self.prizes and self.root is not None:
            kind = "RSTP"
        elif self.prizes:
            kind = "PCSPG"
        else:
            kind = "SPG"
        try:
            return Instance.from_edges(
                self.num_nodes,
                specs,
                prizes=prizes,
                root=None if self.root is None else self.root - 1,
                kind=kind,
                terminals=[t - 1 for t in self.terminals],
                external_ids=list(range(1, self.num_nodes + 1)),
                name=self.comment_name or self.name,
            )
        except InstanceError as exc:
            raise StpParseError(str(exc), last_line) from exc


def parse_stp(stream: TextIO, name: str = "") -> Instance:
    """Parse a SteinLib stream into an Instance with dense 0-based vertex ids."""
    reader = _StpReader(name)
    line_no = 0
    for line_no, raw in enumerate(stream, start=1):
        tokens = raw.split()
        if not tokens:
            continue
        if not reader.feed(line_no, tokens):
            break
    instance = reader.build(line_no)
    logger.debug("parsed %r", instance)
    return instance


def serialize_stp(instance: Instance) -> str:
    """Canonical SteinLib text for an instance (E lines when weights are symmetric)."""
    out = io.StringIO()
    out.write(f"{STP_MAGIC}\n\n")
    out.write("SECTION Comment\n")
    out.write(f'Name "{instance.name}"\n')
    out.write("END\n\n")

    tails, heads, weights = instance.tails, instance.heads, instance.weights
    symmetric = bool(np.all(weights[0::2] == weights[1::2]))
    out.write("SECTION Graph\n")
    out.write(f"Nodes {instance.num_vertices}\n")
    if symmetric:
        out.write(f"Edges {instance.num_edges}\n")
        for e in range(0, instance.num_arcs, 2):
            out.write(
                f"E {instance.external_id(tails[e])} {instance.external_id(heads[e])} {_format_number(weights[e])}\n"
            )
    else:
        out.write(f"Arcs {instance.num_arcs}\n")
        for e in range(instance.num_arcs):
            out.write(
                f"A {instance.external_id(tails[e])} {instance.external_id(heads[e])} {_format_number(weights[e])}\n"
            )
    out.write("END\n\n")

    terminals = instance.terminals()
    mask = instance.terminal_mask
    prized = [v for v in range(instance.num_vertices) if instance.prizes[v] > 0 and not mask[v]]
    out.write("SECTION Terminals\n")
    out.write(f"Terminals {len(terminals) + len(prized)}\n")
    if instance.root is not None:
        out.write(f"Root {instance.external_id(instance.root)}\n")
    for v in terminals:
        out.write(f"T {instance.external_id(v)}\n")
    for v in prized:
        out.write(f"TP {instance.external_id(v)} {_format_number(instance.prizes[v])}\n")
    out.write("END\n\nEOF\n")
    return out.getvalue()


class StpRepository:
    """File-level access to STP instances."""

    def __init__(self, encoding: str = "utf-8"):
        self.encoding = encoding

    def load(self, path: str) -> Instance:
        name = os.path.splitext(os.path.basename(path))[0]
        with open(path, "r", encoding=self.encoding) as handle:
            instance = parse_stp(handle, name=name)
        if not instance.name:
            instance.name = name
        return instance

    def save(self, instance: Instance, path: str) -> None:
        directory = os.path.dirname(path)
        if directory and not os.path.exists(directory):
            os.makedirs(directory)
        with open(path, "w", encoding=self.encoding, newline="\n") as handle:
            handle.write(serialize_stp(instance))
