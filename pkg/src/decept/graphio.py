"""Dataset loading, synthetic graph generation, report serialization.

External node labels (edge-list tokens or GML ids) are mapped to dense
integer ids through a LabelTable; everything downstream works on dense
ids. The CSV/JSON report schema is fixed: floats are rendered with 10
significant digits and rows keep the sweep's canonical order.
"""

import csv
import io
import json
import math
import os
import random
from dataclasses import dataclass
from importlib import resources

from .errors import (
    DanglingEdge,
    EmptyInput,
    InvalidParams,
    ParseError,
    SelfLoop,
)
from .graph import EdgeUpdate, Graph
from .harness import DeceptionReport

REPORT_FIELDS = (
    "dataset", "detector", "deceiver", "budget", "run", "seed",
    "mod_before", "mod_after", "saf_before", "saf_after",
    "score_before", "score_after", "updates", "duration_s", "status",
)

_INT_FIELDS = {"budget", "run", "seed"}
_FLOAT_FIELDS = {
    "mod_before", "mod_after", "saf_before", "saf_after",
    "score_before", "score_after", "duration_s",
}


class LabelTable:
    """Bijection between external labels and dense node ids, in first-seen order."""

    def __init__(self):
        self._labels = []
        self._ids = {}

    def intern(self, label: str) -> int:
        try:
            return self._ids[label]
        except KeyError:
            self._ids[label] = len(self._labels)
            self._labels.append(label)
            return len(self._labels) - 1

    def id_of(self, label: str) -> int:
        try:
            return self._ids[label]
        except KeyError:
            raise ParseError(f"unknown node label {label!r}") from None

    def label_of(self, node: int) -> str:
        return self._labels[node]

    def __len__(self):
        return len(self._labels)

    def __contains__(self, label):
        return label in self._ids


def _as_text(data) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    return data


def load_edge_list(data) -> tuple:
    """Parse "u v" lines into a graph; '#' comments and blanks are skipped.

    Duplicate and reversed pairs collapse into one undirected edge.
    """
    table = LabelTable()
    pairs = set()
    for lineno, raw in enumerate(_as_text(data).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected two labels, got {raw!r}")
        a, b = parts
        if a == b:
            raise SelfLoop(f"line {lineno}: self-loop at {a!r}")
        u, v = table.intern(a), table.intern(b)
        pairs.add((min(u, v), max(u, v)))
    graph = Graph(len(table), sorted(pairs))
    return graph, table


def _gml_tokens(text):
    """Lexer for the GML subset: brackets, keys, numbers, quoted strings."""
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise ParseError("unterminated string in GML input")
            yield ("str", text[i + 1:j])
            i = j + 1
            continue
        if ch in "[]":
            yield (ch, ch)
            i += 1
            continue
        j = i
        while j < n and text[j] not in ' \t\r\n[]"':
            j += 1
        yield ("word", text[i:j])
        i = j


def _skip_gml_value(tokens, tok):
    if tok[0] == "[":
        depth = 1
        while depth:
            try:
                nxt = next(tokens)
            except StopIteration:
                raise ParseError("unbalanced brackets in GML input") from None
            if nxt[0] == "[":
                depth += 1
            elif nxt[0] == "]":
                depth -= 1


def load_gml(data) -> tuple:
    """Parse the node/edge subset of GML; unknown keys are skipped.

    Accepts files shaped like
        graph [ node [ id 0 ] ... edge [ source 0 target 1 ] ... ]
    Node ids become external labels. Duplicate edges collapse; an edge
    naming an undeclared id is a DanglingEdge.
    """
    tokens = _gml_tokens(_as_text(data))
    node_ids = []
    edge_refs = []

    def parse_block(kind):
        tok = next(tokens, None)
        if tok is None or tok[0] != "[":
            raise ParseError(f"expected '[' after {kind!r}")
        fields = {}
        while True:
            tok = next(tokens, None)
            if tok is None:
                raise ParseError(f"unterminated {kind!r} block")
            if tok[0] == "]":
                return fields
            if tok[0] != "word":
                raise ParseError(f"unexpected token {tok[1]!r} in {kind!r} block")
            key = tok[1]
            value = next(tokens, None)
            if value is None:
                raise ParseError(f"missing value for key {key!r}")
            if key in ("id", "source", "target") and value[0] == "word":
                fields[key] = value[1]
            else:
                _skip_gml_value(tokens, value)
        # unreachable

    saw_graph = False
    for tok in tokens:
        if tok == ("word", "graph"):
            saw_graph = True
            opener = next(tokens, None)
            if opener is None or opener[0] != "[":
                raise ParseError("expected '[' after graph")
            while True:
                tok = next(tokens, None)
                if tok is None:
                    raise ParseError("unterminated graph block")
                if tok[0] == "]":
                    break
                if tok == ("word", "node"):
                    fields = parse_block("node")
                    if "id" not in fields:
                        raise ParseError("node block without id")
                    node_ids.append(fields["id"])
                elif tok == ("word", "edge"):
                    fields = parse_block("edge")
                    if "source" not in fields or "target" not in fields:
                        raise ParseError("edge block without source/target")
                    edge_refs.append((fields["source"], fields["target"]))
                elif tok[0] == "word":
                    value = next(tokens, None)
                    if value is None:
                        raise ParseError(f"missing value for key {tok[1]!r}")
                    _skip_gml_value(tokens, value)
                else:
                    raise ParseError(f"unexpected token {tok[1]!r} in graph block")
            break
    if not saw_graph:
        raise ParseError("no graph block found")

    table = LabelTable()
    for nid in node_ids:
        if nid in table:
            raise ParseError(f"duplicate node id {nid!r}")
        table.intern(nid)
    pairs = set()
    for a, b in edge_refs:
        if a not in table or b not in table:
            raise DanglingEdge(f"edge ({a}, {b}) references an undeclared node")
        if a == b:
            raise SelfLoop(f"self-loop at {a!r}")
        u, v = table.id_of(a), table.id_of(b)
        pairs.add((min(u, v), max(u, v)))
    return Graph(len(table), sorted(pairs)), table


def load_graph_file(path: str, fmt: str) -> tuple:
    with open(path, "rb") as fh:
        data = fh.read()
    if fmt == "edgelist":
        return load_edge_list(data)
    if fmt == "gml":
        return load_gml(data)
    raise InvalidParams(f"unknown graph format {fmt!r}")


def parse_community_lines(data, table: LabelTable) -> list:
    """One community per line, whitespace-separated node labels."""
    communities = []
    for raw in _as_text(data).splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        communities.append({table.id_of(tok) for tok in line.split()})
    if not communities:
        raise EmptyInput("no communities found")
    return communities


def dataset_path(name: str) -> str:
    """Resolve a dataset name to a file path.

    Looks for an existing path first, then `$DECEPT_DATA_DIR/<name>.gml`,
    then the bundled data directory.
    """
    if os.path.exists(name):
        return name
    filename = name if name.endswith(".gml") else f"{name}.gml"
    data_dir = os.environ.get("DECEPT_DATA_DIR")
    if data_dir and os.path.exists(os.path.join(data_dir, filename)):
        return os.path.join(data_dir, filename)
    bundled = resources.files("decept") / "data" / filename
    if bundled.is_file():
        return str(bundled)
    raise FileNotFoundError(f"dataset {name!r} not found (searched cwd, DECEPT_DATA_DIR, bundled data)")


@dataclass(frozen=True)
class PlantedPartitionParams:
    """Parameters of the planted-partition generator.

    Communities are equal-sized when min_size/max_size are omitted;
    otherwise sizes are drawn between the bounds. When k is None the
    number of communities follows from the size bounds, so shrinking
    max_size at fixed n yields more, smaller communities.
    """

    n: int
    k: int | None
    p_in: float
    p_out: float
    seed: int
    min_size: int | None = None
    max_size: int | None = None

    def validate(self):
        if self.n < 2:
            raise InvalidParams("need at least two nodes")
        # p_in == p_out == 0 is allowed as the degenerate edgeless case
        if not (0.0 <= self.p_out <= self.p_in <= 1.0) or (
            self.p_in > 0 and self.p_out >= self.p_in
        ):
            raise InvalidParams("need 0 <= p_out < p_in <= 1")
        if (self.min_size is None) != (self.max_size is None):
            raise InvalidParams("min_size and max_size go together")
        if self.min_size is not None:
            if self.min_size < 2 or self.max_size < self.min_size:
                raise InvalidParams("need 2 <= min_size <= max_size")
            if self.k is not None and not (self.k * self.min_size <= self.n <= self.k * self.max_size):
                raise InvalidParams("size bounds cannot reach n with k communities")
        if self.k is None:
            if self.min_size is None:
                raise InvalidParams("either k or size bounds are required")
        elif self.k < 1 or (self.min_size is None and self.n // self.k < 2):
            raise InvalidParams("each community needs at least two nodes")


def _community_sizes(params: PlantedPartitionParams, rng: random.Random) -> list:
    n, k = params.n, params.k
    lo, hi = params.min_size, params.max_size
    if lo is None:
        base = n // k
        sizes = [base + 1 if i < n % k else base for i in range(k)]
        return sizes
    if k is None:
        sizes = []
        left = n
        while left > hi:
            top = min(hi, left - lo)  # leave room for one more block of >= lo
            if top < lo:
                break
            size = rng.randint(lo, top)
            sizes.append(size)
            left -= size
        if lo <= left <= hi:
            sizes.append(left)
        elif sizes and left < lo and sizes[-1] - (lo - left) >= lo:
            sizes[-1] -= lo - left
            sizes.append(lo)
        else:
            raise InvalidParams("size bounds cannot tile n")
        return sizes
    sizes = [lo] * k
    left = n - k * lo
    weights = [rng.random() for _ in range(k)]
    while left > 0:
        room = [i for i in range(k) if sizes[i] < hi]
        pick = max(room, key=lambda i: weights[i] / (sizes[i] - lo + 1))
        sizes[pick] += 1
        left -= 1
    return sizes


def _sample_pairs(rng: random.Random, total: int, p: float):
    """Indices of a Bernoulli(p) subset of range(total), by geometric skips."""
    if p <= 0.0 or total == 0:
        return
    if p >= 1.0:
        yield from range(total)
        return
    log_q = math.log1p(-p)
    idx = -1
    while True:
        idx += 1 + int(math.log(1.0 - rng.random()) / log_q)
        if idx >= total:
            return
        yield idx


def generate_planted_partition(params: PlantedPartitionParams) -> tuple:
    """Sample a graph with planted communities; returns (graph, ground truth).

    Every intra-community pair is an edge with probability p_in, every
    inter-community pair with p_out, independently; deterministic for a
    fixed seed. The ground truth is for bookkeeping only and must never be
    fed to a detector.
    """
    params.validate()
    rng = random.Random(params.seed)
    sizes = _community_sizes(params, rng)
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    communities = [set(range(starts[i], starts[i + 1])) for i in range(len(sizes))]

    edges = []
    for ci, size in enumerate(sizes):
        base = starts[ci]
        # unrank increasing pair indices into (a, b), a < b, inside the block
        a, row, consumed = 0, size - 1, 0
        for idx in _sample_pairs(rng, size * (size - 1) // 2, params.p_in):
            while idx - consumed >= row:
                consumed += row
                row -= 1
                a += 1
            edges.append((base + a, base + a + 1 + idx - consumed))
    for ci in range(len(sizes)):
        for cj in range(ci + 1, len(sizes)):
            rows, cols = sizes[ci], sizes[cj]
            for idx in _sample_pairs(rng, rows * cols, params.p_out):
                edges.append((starts[ci] + idx // cols, starts[cj] + idx % cols))
    return Graph(params.n, edges), communities


def format_float(value) -> str:
    if value is None:
        return ""
    return f"{value:.10g}"


def _updates_str(updates, table: LabelTable | None) -> str:
    parts = []
    for upd in updates:
        if table is None:
            parts.append(f"{upd.kind.value}:{upd.u}-{upd.v}")
        else:
            parts.append(f"{upd.kind.value}:{table.label_of(upd.u)}-{table.label_of(upd.v)}")
    return ";".join(parts)


def _parse_updates(text: str) -> tuple:
    if not text:
        return ()
    updates = []
    for part in text.split(";"):
        kind, _, pair = part.partition(":")
        a, _, b = pair.partition("-")
        u, v = int(a), int(b)
        updates.append(EdgeUpdate.add(u, v) if kind == "add" else EdgeUpdate.delete(u, v))
    return tuple(updates)


def _report_row(report: DeceptionReport, table: LabelTable | None) -> dict:
    row = {}
    for field in REPORT_FIELDS:
        if field == "updates":
            row[field] = _updates_str(report.updates, table)
        elif field in _FLOAT_FIELDS:
            value = getattr(report, field)
            row[field] = None if value is None else float(format_float(value))
        else:
            row[field] = getattr(report, field)
    return row


def write_reports(reports, format: str = "csv", label_table: LabelTable | None = None) -> bytes:
    """Serialize reports to CSV or JSON with 10-significant-digit floats."""
    reports = list(reports)
    if not reports:
        raise EmptyInput("no reports to write")
    rows = [_report_row(r, label_table) for r in reports]
    if format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(REPORT_FIELDS)
        for row in rows:
            writer.writerow(
                ["" if row[f] is None else
                 (format_float(row[f]) if f in _FLOAT_FIELDS else row[f])
                 for f in REPORT_FIELDS]
            )
        return out.getvalue().encode("utf-8")
    if format == "json":
        return (json.dumps(rows, indent=2) + "\n").encode("utf-8")
    raise InvalidParams(f"unknown report format {format!r}")


def read_reports(data, format: str = "csv") -> list:
    """Inverse of write_reports for dense-id update strings."""
    text = _as_text(data)
    if format == "json":
        rows = json.loads(text)
    elif format == "csv":
        rows = list(csv.DictReader(io.StringIO(text)))
        if rows and set(rows[0]) != set(REPORT_FIELDS):
            raise ParseError("unexpected CSV header")
    else:
        raise InvalidParams(f"unknown report format {format!r}")
    reports = []
    for row in rows:
        kwargs = {}
        for field in REPORT_FIELDS:
            value = row[field]
            if field == "updates":
                kwargs[field] = _parse_updates(value)
            elif field in _INT_FIELDS:
                kwargs[field] = int(value)
            elif field in _FLOAT_FIELDS:
                kwargs[field] = None if value in ("", None) else float(value)
            else:
                kwargs[field] = value
        reports.append(DeceptionReport(**kwargs))
    return reports


def write_edge_list(graph: Graph, table: LabelTable | None = None) -> bytes:
    lines = []
    for u, v in graph.edges():
        if table is None:
            lines.append(f"{u} {v}")
        else:
            lines.append(f"{table.label_of(u)} {table.label_of(v)}")
    return ("\n".join(lines) + "\n").encode("utf-8")
