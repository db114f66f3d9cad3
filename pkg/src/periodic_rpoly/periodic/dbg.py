"""The double Bruhat graph, label-weakly-increasing paths in it, and the
correspondence with semi-infinite paths."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from ..affine import AffineElem, format_element, parse_element
from ..laurent import ONE, ZERO, IntLaurentPoly, term
from ..rootsys import ReflectionOrder, RootSystem, WeylElem, all_elements, reflection
from ..rpoly import half
from .paths import REFLECTION, TRANSLATION, PathError, SIPath, make_edge

BRUHAT = "bruhat"
QUANTUM = "quantum"


@dataclass(frozen=True)
class DBGEdge:
    source: WeylElem
    target: WeylElem
    label: int
    d: int
    kind: str


def dbg_edge(x: WeylElem, beta: int) -> DBGEdge:
    rs = x.rs
    y = x * reflection(rs, beta)
    gap = y.length - x.length  # negative for quantum edges
    if y.length > x.length:
        return DBGEdge(x, y, beta, half(gap + 1, "Bruhat edge d numerator"), BRUHAT)
    d = half(gap + 2 * sum(rs.coroots[beta]) + 1, "quantum edge d numerator")
    return DBGEdge(x, y, beta, d, QUANTUM)


@lru_cache(maxsize=None)
def _dbg(rs: RootSystem) -> tuple[DBGEdge, ...]:
    return tuple(dbg_edge(x, b) for x in all_elements(rs) for b in range(rs.n_pos))


def build_dbg(rs: RootSystem) -> list[DBGEdge]:
    """One edge ``x -> x s_beta`` for every vertex and positive root."""
    return list(_dbg(rs))


def dbg_to_dot(rs: RootSystem) -> str:
    elems = all_elements(rs)
    name = {x: str(x) for x in elems}
    lines = [f'digraph "DBG_{rs.datum.name}" {{']
    for x in elems:
        lines.append(f'  "{name[x]}";')
    for e in build_dbg(rs):
        style = ", style=dashed" if e.kind == QUANTUM else ""
        lines.append(f'  "{name[e.source]}" -> "{name[e.target]}" [label="{rs.root_label(e.label)} ({e.d})"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dbg_to_json(rs: RootSystem) -> str:
    data = {
        "type": rs.datum.name,
        "vertices": [",".join(map(str, x.reduced_word)) for x in all_elements(rs)],
        "edges": [
            {
                "source": ",".join(map(str, e.source.reduced_word)),
                "target": ",".join(map(str, e.target.reduced_word)),
                "label": list(rs.roots[e.label]),
                "d": e.d,
                "kind": e.kind,
            }
            for e in build_dbg(rs)
        ],
    }
    return json.dumps(data, indent=2)


@dataclass(frozen=True)
class DBPath:
    start: AffineElem
    end: AffineElem
    edges: tuple[DBGEdge, ...]
    order: ReflectionOrder

    @property
    def vertices(self) -> list[WeylElem]:
        return [self.start.cl] + [e.target for e in self.edges]

    @property
    def quantum_sum(self) -> tuple[int, ...]:
        rs = self.start.rs
        acc = [0] * rs.rank
        for e in self.edges:
            if e.kind == QUANTUM:
                for i, c in enumerate(rs.coroots[e.label]):
                    acc[i] += c
        return tuple(acc)

    def __len__(self) -> int:
        return len(self.edges)

    def validate(self) -> None:
        cur = self.start.cl
        pos = -1
        for e in self.edges:
            if e.source != cur or dbg_edge(cur, e.label) != e:
                raise PathError("not a path in the double Bruhat graph")
            p = self.order.position[e.label]
            if p < pos:
                raise PathError("labels decrease")
            pos = p
            cur = e.target
        if cur != self.end.cl:
            raise PathError("path does not end at cl(w)")
        want = tuple(b - a for a, b in zip(self.start.wt, self.end.wt))
        if self.quantum_sum != want:
            raise PathError(f"quantum coroot sum {self.quantum_sum} differs from {want}")

    def to_json(self) -> dict:
        rs = self.start.rs
        return {
            "start": format_element(self.start),
            "end": format_element(self.end),
            "labels": [list(rs.roots[e.label]) for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict, order: ReflectionOrder) -> "DBPath":
        rs = order.rs
        start = parse_element(rs, data["start"])
        end = parse_element(rs, data["end"])
        cur = start.cl
        edges = []
        for lab in data["labels"]:
            e = dbg_edge(cur, rs.index[tuple(lab)])
            edges.append(e)
            cur = e.target
        path = cls(start, end, tuple(edges), order)
        path.validate()
        return path


def dbp_len_prime(path: DBPath) -> int:
    return len({e.label for e in path.edges})


def dbp_deg(path: DBPath) -> int:
    return sum(e.d for e in path.edges) - dbp_len_prime(path)


def enumerate_dbp(y: AffineElem, w: AffineElem, order: ReflectionOrder) -> list[DBPath]:
    """Paths ``cl(y) -> cl(w)`` with weakly increasing labels whose quantum coroots sum to ``wt(w) - wt(y)``.

    Within one label the walk alternates ``u, u s_beta``, so every second edge
    is quantum and spends ``beta^vee`` of the budget; this bounds each run.
    """
    rs = y.rs
    budget0 = tuple(b - a for a, b in zip(y.wt, w.wt))
    if any(b < 0 for b in budget0):
        return []
    seq = order.sequence
    target = w.cl
    out: list[DBPath] = []

    def dfs(u: WeylElem, budget: tuple, pos: int, edges: list):
        if u == target and not any(budget):
            out.append(DBPath(y, w, tuple(edges), order))
        for p in range(pos, len(seq)):
            e = dbg_edge(u, seq[p])
            rest = budget
            if e.kind == QUANTUM:
                rest = tuple(b - c for b, c in zip(budget, rs.coroots[seq[p]]))
                if any(b < 0 for b in rest):
                    continue
            edges.append(e)
            dfs(e.target, rest, p, edges)
            edges.pop()

    dfs(y.cl, budget0, 0, [])
    return out


def periodic_r_dbg(y: AffineElem, w: AffineElem, order: ReflectionOrder) -> IntLaurentPoly:
    total = ZERO
    for p in enumerate_dbp(y, w, order):
        total = total + term(dbp_deg(p), dbp_len_prime(p))
    return total


class DBGSums:
    """Memoized form of :func:`periodic_r_dbg` over states ``(vertex, budget, current label)``."""

    def __init__(self, order: ReflectionOrder):
        self.order = order
        self.rs = order.rs
        self._cache: dict = {}

    def total(self, y: AffineElem, w: AffineElem) -> IntLaurentPoly:
        budget = tuple(b - a for a, b in zip(y.wt, w.wt))
        if any(b < 0 for b in budget):
            return ZERO
        return self._state(y.cl, budget, -1, w.cl)

    def _state(self, u, budget, last, target):
        key = (u, budget, last, target)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        rs = self.rs
        seq = self.order.sequence
        total = ONE if (u == target and not any(budget)) else ZERO
        for p in range(max(last, 0), len(seq)):
            e = dbg_edge(u, seq[p])
            rest = budget
            if e.kind == QUANTUM:
                rest = tuple(b - c for b, c in zip(budget, rs.coroots[seq[p]]))
                if any(b < 0 for b in rest):
                    continue
            sub = self._state(e.target, rest, p, target)
            if sub.is_zero():
                continue
            # a new label contributes q^{-1}(q - 1) on top of q^d
            w = term(e.d - 1, 1) if p != last else term(e.d, 0)
            total = total + w * sub
        self._cache[key] = total
        return total


def _runs(edges):
    runs: list[list[DBGEdge]] = []
    for e in edges:
        if runs and runs[-1][0].label == e.label:
            runs[-1].append(e)
        else:
            runs.append([e])
    return runs


def dbp_to_sipath(path: DBPath, y: AffineElem | None = None) -> SIPath:
    """Collapse each maximal run of equal labels into one semi-infinite edge."""
    u = path.start if y is None else y
    if u.cl != path.start.cl:
        raise PathError("start element does not match the path's first vertex")
    out = []
    for run in _runs(path.edges):
        a = len(run)
        m = sum(1 for e in run if e.kind == QUANTUM)
        first = run[0]
        if a == 2 * m:
            kind = TRANSLATION
        elif a == 2 * m + 1 and first.kind == BRUHAT:
            kind = REFLECTION
        elif a == 2 * m - 1 and first.kind == QUANTUM:
            kind = REFLECTION
        else:
            raise PathError(f"run of {a} edges with {m} quantum edges has no semi-infinite counterpart")
        edge = make_edge(u, first.label, m, kind)
        if edge.target.cl != run[-1].target:
            raise PathError("run does not end where the collapsed edge ends")
        out.append(edge)
        u = edge.target
    return SIPath(path.start if y is None else y, tuple(out), path.order)


def sipath_to_dbp(path: SIPath) -> DBPath:
    """Expand each semi-infinite edge into its alternating run in the graph."""
    edges = []
    for e in path.edges:
        if e.kind == TRANSLATION:
            a = 2 * e.m
        elif e.cl_increases():
            a = 2 * e.m + 1
        else:
            a = 2 * e.m - 1
        x = e.source.cl
        for _ in range(a):
            g = dbg_edge(x, e.label)
            edges.append(g)
            x = g.target
        if x != e.target.cl:
            raise PathError("expanded run does not reach cl of the edge target")
    return DBPath(path.start, path.end, tuple(edges), path.order)


def format_dbpath(path: DBPath) -> str:
    rs = path.start.rs
    parts = [str(path.start.cl)]
    for e in path.edges:
        arrow = "~~>" if e.kind == QUANTUM else "-->"
        parts.append(f" {arrow}[{rs.root_label(e.label)}, d={e.d}] {e.target}")
    return "".join(parts)
