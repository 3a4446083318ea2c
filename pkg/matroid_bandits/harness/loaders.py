"""
Instance file formats.

All formats are whitespace-separated text with '#' comments and blank lines
ignored:

    edge_list_graph    "u v mean_latency" per edge
    bipartite_graph    "left right" per edge, then a "means" line followed by
                       "left value" lines
    feature_matrix     header "L d", then L rows of d integers (one column per item)
    reward_rows        header "N L", then N rows of L reals in [0, 1]
    loan_status_rows   header "N L", then N rows of L status tokens
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import structlog

from ..core.errors import InputError, InstanceParseError
from ..matroids import GraphicMatroid, LinearMatroid, Matroid, TransversalMatroid

logger = structlog.get_logger(__name__)

LOAN_STATUS_VALUES = {"paid": 1.0, "repayment": 0.7}

Line = Tuple[int, List[str]]


@dataclass
class LoadedInstance:
    """What a file provides: a matroid, environment data, or both."""

    matroid: Optional[Matroid]
    environment: Optional[Dict[str, Any]]


def _lines(text: str) -> Iterator[Line]:
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield number, content.split()


class _Parser:
    """Tokenized lines of one file, with located errors."""

    def __init__(self, path: Path):
        self.path = str(path)
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise InstanceParseError(f"cannot read file: {e.strerror}", path=self.path)
        self.lines = list(_lines(text))

    def error(self, message: str, line: Optional[int] = None) -> InstanceParseError:
        return InstanceParseError(message, line=line, path=self.path)

    def number(self, token: str, line: int, cast: Callable[[str], Any] = float) -> Any:
        try:
            return cast(token)
        except ValueError:
            kind = "an integer" if cast is int else "a number"
            raise self.error(f"expected {kind}, got '{token}'", line)

    def fields(self, line: Line, count: int) -> List[str]:
        number, tokens = line
        if len(tokens) != count:
            raise self.error(f"expected {count} fields, got {len(tokens)}", number)
        return tokens

    def header(self) -> Tuple[int, int, List[Line]]:
        if not self.lines:
            raise self.error("empty file")
        line = self.lines[0]
        first, second = (self.number(t, line[0], int) for t in self.fields(line, 2))
        if first < 1 or second < 1:
            raise self.error("header sizes must be positive", line[0])
        return first, second, self.lines[1:]

    def table(self, cast: Callable[[str, int], Any]) -> List[List[Any]]:
        """Rows announced by the "rows columns" header."""
        rows, columns, body = self.header()
        if len(body) != rows:
            last = body[-1][0] if body else self.lines[0][0]
            raise self.error(f"header announces {rows} rows, found {len(body)}", last)
        return [[cast(token, line[0]) for token in self.fields(line, columns)] for line in body]


def parse_edge_list_graph(path: Path) -> LoadedInstance:
    """Graphic matroid with a latency environment (mean latency per edge)."""
    parser = _Parser(path)
    edges: List[Tuple[int, int]] = []
    latencies: List[float] = []
    for line in parser.lines:
        u, v, latency = parser.fields(line, 3)
        u, v = parser.number(u, line[0], int), parser.number(v, line[0], int)
        if u < 0 or v < 0:
            raise parser.error("vertex indices must be non-negative", line[0])
        edges.append((u, v))
        latencies.append(parser.number(latency, line[0]))
    if not edges:
        raise parser.error("no edges")
    vertex_count = max(max(edge) for edge in edges) + 1
    environment = {"kind": "clipped_shifted_exponential", "latencies": latencies}
    return LoadedInstance(GraphicMatroid(vertex_count, edges), environment)


def parse_bipartite_graph(path: Path) -> LoadedInstance:
    """Transversal matroid on the left vertices, with Bernoulli means when given."""
    parser = _Parser(path)
    edges: List[Tuple[int, int]] = []
    means: Dict[int, float] = {}
    in_means = False
    for line in parser.lines:
        number, tokens = line
        if tokens == ["means"]:
            if in_means:
                raise parser.error("duplicate means section", number)
            in_means = True
            continue
        first, second = parser.fields(line, 2)
        left = parser.number(first, number, int)
        if left < 0:
            raise parser.error("vertex indices must be non-negative", number)
        if in_means:
            if left in means:
                raise parser.error(f"duplicate mean for left vertex {left}", number)
            value = parser.number(second, number)
            if not 0.0 <= value <= 1.0:
                raise parser.error(f"mean {value} outside [0, 1]", number)
            means[left] = value
        else:
            right = parser.number(second, number, int)
            if right < 0:
                raise parser.error("vertex indices must be non-negative", number)
            edges.append((left, right))
    lefts = [left for left, _ in edges] + list(means)
    if not lefts:
        raise parser.error("no vertices")
    left_count = max(lefts) + 1
    right_count = max((right for _, right in edges), default=-1) + 1
    adjacency: List[List[int]] = [[] for _ in range(left_count)]
    for left, right in edges:
        adjacency[left].append(right)
    environment = None
    if in_means:
        missing = [left for left in range(left_count) if left not in means]
        if missing:
            raise parser.error(f"means section lacks left vertices {missing}")
        environment = {"kind": "bernoulli", "means": [means[left] for left in range(left_count)]}
    return LoadedInstance(TransversalMatroid(right_count, adjacency), environment)


def parse_feature_matrix(path: Path) -> LoadedInstance:
    parser = _Parser(path)
    rows = parser.table(lambda token, line: parser.number(token, line, int))
    return LoadedInstance(LinearMatroid(len(rows[0]), rows), None)


def parse_reward_rows(path: Path) -> LoadedInstance:
    parser = _Parser(path)

    def reward(token: str, line: int) -> float:
        value = parser.number(token, line)
        if not 0.0 <= value <= 1.0:
            raise parser.error(f"reward {value} outside [0, 1]", line)
        return value

    return LoadedInstance(None, {"kind": "empirical_rows", "rows": parser.table(reward)})


def parse_loan_status_rows(path: Path) -> LoadedInstance:
    """Status tokens: paid is worth 1, repayment 0.7, anything else 0."""
    parser = _Parser(path)
    rows = parser.table(lambda token, line: LOAN_STATUS_VALUES.get(token.lower(), 0.0))
    return LoadedInstance(None, {"kind": "empirical_rows", "rows": rows})


FORMATS: Dict[str, Callable[[Path], LoadedInstance]] = {
    "edge_list_graph": parse_edge_list_graph,
    "bipartite_graph": parse_bipartite_graph,
    "feature_matrix": parse_feature_matrix,
    "reward_rows": parse_reward_rows,
    "loan_status_rows": parse_loan_status_rows,
}


def load_instance(path: Union[str, Path], format: str) -> LoadedInstance:
    """Parse an instance file in one of the supported formats."""
    parse = FORMATS.get(format)
    if parse is None:
        raise InputError(f"Unknown instance format '{format}'; available: {', '.join(FORMATS)}")
    try:
        loaded = parse(Path(path))
    except InstanceParseError:
        raise
    except InputError as e:
        raise InstanceParseError(str(e), path=str(path))
    logger.debug("Instance loaded", path=str(path), format=format,
                 matroid=repr(loaded.matroid) if loaded.matroid else None)
    return loaded


def _format_number(x: float) -> str:
    return format(float(x), ".12g")


def format_edge_list_graph(m: GraphicMatroid, latencies: Sequence[float]) -> str:
    lines = ["# u v mean_latency"]
    lines += [f"{u} {v} {_format_number(mu)}" for (u, v), mu in zip(m.edges, latencies)]
    return "\n".join(lines) + "\n"


def format_bipartite_graph(m: TransversalMatroid, means: Optional[Sequence[float]] = None) -> str:
    lines = ["# left right"]
    for left, rights in enumerate(m.adjacency):
        lines += [f"{left} {right}" for right in sorted(rights)]
    if means is not None:
        lines.append("means")
        lines += [f"{left} {_format_number(p)}" for left, p in enumerate(means)]
    return "\n".join(lines) + "\n"


def format_feature_matrix(m: LinearMatroid) -> str:
    lines = [f"{m.ground_set_size} {m.dimension}"]
    lines += [" ".join(str(x) for x in column) for column in m.columns]
    return "\n".join(lines) + "\n"


def format_instance(m: Matroid, environment: Optional[Dict[str, Any]] = None) -> str:
    """Native file text for a matroid, carrying the environment description where the format allows."""
    environment = environment or {}
    if isinstance(m, GraphicMatroid):
        latencies = environment.get("latencies")
        if latencies is None:
            raise InputError("edge_list_graph files need a latency environment")
        return format_edge_list_graph(m, latencies)
    if isinstance(m, TransversalMatroid):
        return format_bipartite_graph(m, environment.get("means"))
    if isinstance(m, LinearMatroid):
        return format_feature_matrix(m)
    raise InputError(f"No native file format for {m.family} matroids")
