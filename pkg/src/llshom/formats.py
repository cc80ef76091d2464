"""Text formats: graphs (.lsg), instances (.lsi), solutions (.lsm), DIMACS
CNF and PACE-style tree decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph
from .instance import Instance
from .treewidth import TreeDecomposition


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str):
    """Non-comment, non-blank lines as ``(lineno, tokens)``."""
    for i, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("c"):
            continue
        yield i, s.split()


def _ints(tokens, lineno, count=None):
    try:
        vals = [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None
    if count is not None and len(vals) != count:
        raise ParseError(f"expected {count} numbers, got {len(vals)}", lineno)
    return vals


def _edge(tokens, lineno, n, seen, what):
    u, v = _ints(tokens, lineno, 2)
    if not (0 <= u < n and 0 <= v < n):
        raise ParseError(f"{what} edge ({u}, {v}) out of range", lineno)
    key = (min(u, v), max(u, v))
    if key in seen:
        raise ParseError(f"duplicate {what} edge ({u}, {v})", lineno)
    seen.add(key)
    return key


# --------------------------------------------------------------------------
# graphs


def write_graph(g: Graph) -> str:
    out = [f"p graph {g.n} {g.m}"]
    out.extend(f"e {u} {v}" for u, v in g.edge_list())
    return "\n".join(out) + "\n"


def read_graph(text: str) -> Graph:
    it = _lines(text)
    header = next(it, None)
    if header is None or header[1][:2] != ["p", "graph"]:
        raise ParseError("missing 'p graph <n> <m>' header", header[0] if header else None)
    lineno, tok = header
    n, m = _ints(tok[2:], lineno, 2)
    seen: set = set()
    for lineno, tok in it:
        if tok[0] != "e":
            raise ParseError(f"unexpected line type {tok[0]!r}", lineno)
        _edge(tok[1:], lineno, n, seen, "graph")
    if len(seen) != m:
        raise ParseError(f"header announces {m} edges, found {len(seen)}")
    return Graph(n, seen)


# --------------------------------------------------------------------------
# instances


def write_instance(inst: Instance) -> str:
    h, g = inst.target, inst.source
    out = [f"p llshom {h.n} {h.m} {g.n} {g.m}"]
    out.extend(f"h {u} {v}" for u, v in h.edge_list())
    out.extend(f"g {u} {v}" for u, v in g.edge_list())
    for v, l in enumerate(inst.lists):
        vals = sorted(l)
        out.append(" ".join(["l", str(v), str(len(vals))] + [str(a) for a in vals]))
    return "\n".join(out) + "\n"


def read_instance(text: str) -> Instance:
    it = _lines(text)
    header = next(it, None)
    if header is None or header[1][:2] != ["p", "llshom"]:
        raise ParseError("missing 'p llshom <nH> <mH> <nG> <mG>' header")
    lineno, tok = header
    nh, mh, ng, mg = _ints(tok[2:], lineno, 4)
    hedges: set = set()
    gedges: set = set()
    lists: dict[int, frozenset] = {}
    for lineno, tok in it:
        kind = tok[0]
        if kind == "h":
            _edge(tok[1:], lineno, nh, hedges, "target")
        elif kind == "g":
            _edge(tok[1:], lineno, ng, gedges, "source")
        elif kind == "l":
            vals = _ints(tok[1:], lineno)
            if len(vals) < 2:
                raise ParseError("list line needs a vertex and a count", lineno)
            v, k, elems = vals[0], vals[1], vals[2:]
            if not 0 <= v < ng:
                raise ParseError(f"list for unknown source vertex {v}", lineno)
            if k != len(elems):
                raise ParseError(f"list announces {k} entries, found {len(elems)}", lineno)
            if v in lists:
                raise ParseError(f"second list for vertex {v}", lineno)
            for a in elems:
                if not 0 <= a < nh:
                    raise ParseError(f"list entry {a} is not a target vertex", lineno)
            lists[v] = frozenset(elems)
        else:
            raise ParseError(f"unexpected line type {kind!r}", lineno)
    if len(hedges) != mh:
        raise ParseError(f"header announces {mh} target edges, found {len(hedges)}")
    if len(gedges) != mg:
        raise ParseError(f"header announces {mg} source edges, found {len(gedges)}")
    missing = [v for v in range(ng) if v not in lists]
    if missing:
        raise ParseError(f"no list line for source vertex {missing[0]}")
    return Instance(Graph(nh, hedges), Graph(ng, gedges), tuple(lists[v] for v in range(ng)))


# --------------------------------------------------------------------------
# solutions


def write_solution(h: Sequence[int]) -> str:
    return "".join(f"m {v} {a}\n" for v, a in enumerate(h))


def read_solution(text: str, n: int | None = None) -> tuple[int, ...]:
    values: dict[int, int] = {}
    for lineno, tok in _lines(text):
        if tok[0] != "m":
            raise ParseError(f"unexpected line type {tok[0]!r}", lineno)
        v, a = _ints(tok[1:], lineno, 2)
        if v in values:
            raise ParseError(f"vertex {v} mapped twice", lineno)
        values[v] = a
    size = n if n is not None else len(values)
    missing = [v for v in range(size) if v not in values]
    if missing:
        raise ParseError(f"vertex {missing[0]} is not mapped")
    if len(values) != size:
        raise ParseError("solution maps vertices outside the source graph")
    return tuple(values[v] for v in range(size))


# --------------------------------------------------------------------------
# CNF


@dataclass(frozen=True)
class CnfFormula:
    """Variables ``1..num_vars``; clauses are triples of nonzero signed ints."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for c in clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} references no declared variable")

    def evaluate(self, assignment: Sequence[bool]) -> list[list[bool]]:
        """Literal values per clause; ``assignment[i]`` is variable ``i+1``."""
        return [[assignment[abs(l) - 1] == (l > 0) for l in c] for c in self.clauses]

    def satisfied(self, assignment) -> bool:
        return all(any(vals) for vals in self.evaluate(assignment))

    def nae_satisfied(self, assignment) -> bool:
        return all(any(vals) and not all(vals) for vals in self.evaluate(assignment))


def write_cnf(f: CnfFormula) -> str:
    out = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    out.extend(" ".join(str(l) for l in c) + " 0" for c in f.clauses)
    return "\n".join(out) + "\n"


def read_cnf(text: str) -> CnfFormula:
    header = None
    clauses = []
    current: list[int] = []
    for lineno, tok in _lines(text):
        if tok[0] == "p":
            if header is not None or len(tok) != 4 or tok[1] != "cnf":
                raise ParseError("bad 'p cnf <vars> <clauses>' header", lineno)
            header = _ints(tok[2:], lineno, 2)
            continue
        if header is None:
            raise ParseError("clause before header", lineno)
        for lit in _ints(tok, lineno):
            if lit == 0:
                if len(current) != 3:
                    raise ParseError(f"clause with {len(current)} literals (need 3)", lineno)
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > header[0]:
                    raise ParseError(f"literal {lit} exceeds variable count", lineno)
                current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise ParseError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


# --------------------------------------------------------------------------
# tree decompositions (1-based bag and vertex numbers)


def write_td(td: TreeDecomposition, n: int) -> str:
    out = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, 1):
        out.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    out.extend(f"{a + 1} {b + 1}" for a, b in td.edges)
    return "\n".join(out) + "\n"


def read_td(text: str) -> tuple[TreeDecomposition, int]:
    header = None
    bags: dict[int, frozenset] = {}
    edges = []
    for lineno, tok in _lines(text):
        if tok[0] == "s":
            if len(tok) != 5 or tok[1] != "td":
                raise ParseError("bad 's td' header", lineno)
            header = _ints(tok[2:], lineno, 3)
        elif header is None:
            raise ParseError("content before 's td' header", lineno)
        elif tok[0] == "b":
            vals = _ints(tok[1:], lineno)
            if not vals or not 1 <= vals[0] <= header[0] or vals[0] in bags:
                raise ParseError("bad bag line", lineno)
            bags[vals[0]] = frozenset(v - 1 for v in vals[1:])
        else:
            a, b = _ints(tok, lineno, 2)
            edges.append((a - 1, b - 1))
    if header is None:
        raise ParseError("missing 's td' header")
    if len(bags) != header[0]:
        raise ParseError(f"header announces {header[0]} bags, found {len(bags)}")
    td = TreeDecomposition(tuple(bags[i] for i in range(1, header[0] + 1)), tuple(edges))
    return td, header[2]


def read_file(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def write_file(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)

