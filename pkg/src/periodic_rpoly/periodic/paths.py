"""Label-increasing paths in the semi-infinite model and the sums over them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..affine import (
    AffineElem,
    AffineError,
    format_element,
    parse_element,
    pretty_element,
    si_gap,
    si_leq,
    si_length,
)
from ..laurent import ONE, ZERO, IntLaurentPoly, term
from ..rootsys import ReflectionOrder, RootSystem, reflection
from ..rpoly import ParityError, half

TRANSLATION = "translation"
REFLECTION = "reflection"
ALL_KINDS = frozenset({TRANSLATION, REFLECTION})


class PathError(ValueError):
    pass


def coroot_multiple(rs: RootSystem, beta: int, m: int) -> tuple[int, ...]:
    return tuple(m * c for c in rs.coroots[beta])


def max_multiple(rs: RootSystem, beta: int, budget: Sequence[int]) -> int:
    """Largest ``m`` with ``budget - m beta^vee`` still coordinatewise non-negative."""
    cv = rs.coroots[beta]
    return min(b // c for b, c in zip(budget, cv) if c > 0)


@dataclass(frozen=True)
class SIEdge:
    source: AffineElem
    target: AffineElem
    label: int
    m: int
    kind: str

    def gap(self) -> int:
        return si_gap(self.source, self.target)

    def cl_increases(self) -> bool:
        return self.target.cl.length > self.source.cl.length


def make_edge(source: AffineElem, label: int, m: int, kind: str) -> SIEdge:
    rs = source.rs
    shift = coroot_multiple(rs, label, m)
    if kind == TRANSLATION:
        if m <= 0:
            raise PathError("translation edges need m > 0")
        target = source.translate(shift)
    elif kind == REFLECTION:
        if m < 0:
            raise PathError("reflection edges need m >= 0")
        target = AffineElem(source.cl * reflection(rs, label), tuple(a + b for a, b in zip(source.wt, shift)))
    else:
        raise PathError(f"unknown edge kind {kind!r}")
    return SIEdge(source, target, label, m, kind)


def edge_between(source: AffineElem, target: AffineElem, label: int, kind: str) -> SIEdge:
    """Recover ``m`` from the weight difference and validate the edge shape."""
    rs = source.rs
    diff = [b - a for a, b in zip(source.wt, target.wt)]
    cv = rs.coroots[label]
    ratios = {d // c for d, c in zip(diff, cv) if c}
    if len(ratios) != 1:
        raise PathError(f"weight difference {diff} is not a multiple of the coroot of {rs.root_label(label)}")
    m = ratios.pop()
    edge = make_edge(source, label, m, kind)
    if edge.target != target:
        raise PathError(f"{format_element(target)} is not reached from {format_element(source)} by a {kind} edge")
    return edge


def edge_d(e: SIEdge) -> int:
    gap = e.gap()
    if e.kind == TRANSLATION:
        return half(gap + 2 * e.m, "translation d numerator")
    if e.cl_increases():
        return half(gap + 1, "reflection d numerator") + e.m
    return half(gap - 1, "reflection d numerator") + e.m


def edge_is_valid(e: SIEdge, strict: bool = False) -> bool:
    if e.kind == TRANSLATION:
        return e.m > 0
    if strict:
        return e.source != e.target and si_leq(e.source, e.target)
    # a single right reflection is an order step exactly when it raises the length
    return e.gap() > 0


def si_edge_candidates(
    y: AffineElem,
    beta: int,
    budget: Sequence[int],
    kinds: Iterable[str] = ALL_KINDS,
    strict: bool = False,
) -> list[SIEdge]:
    if any(b < 0 for b in budget):
        return []
    kinds = frozenset(kinds)
    mmax = max_multiple(y.rs, beta, budget)
    out = []
    if REFLECTION in kinds:
        for m in range(0, mmax + 1):
            e = make_edge(y, beta, m, REFLECTION)
            if edge_is_valid(e, strict):
                out.append(e)
    if TRANSLATION in kinds:
        for m in range(1, mmax + 1):
            e = make_edge(y, beta, m, TRANSLATION)
            if strict and not si_leq(e.source, e.target):
                raise PathError(f"translation edge {e} is not an order step")
            out.append(e)
    return out


@dataclass(frozen=True)
class SIPath:
    start: AffineElem
    edges: tuple[SIEdge, ...]
    order: ReflectionOrder

    @property
    def end(self) -> AffineElem:
        return self.edges[-1].target if self.edges else self.start

    @property
    def vertices(self) -> list[AffineElem]:
        return [self.start] + [e.target for e in self.edges]

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(e.label for e in self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def validate(self) -> None:
        cur = self.start
        pos = -1
        budget_used = [0] * cur.rs.rank
        for e in self.edges:
            if e.source != cur:
                raise PathError("edges are not consecutive")
            p = self.order.position[e.label]
            if p <= pos:
                raise PathError("labels are not strictly increasing")
            pos = p
            if not edge_is_valid(e):
                raise PathError(f"edge with label {e.label} is not an order step")
            edge_d(e)
            for i, c in enumerate(cur.rs.coroots[e.label]):
                budget_used[i] += e.m * c
            cur = e.target
        if tuple(b - a for a, b in zip(self.start.wt, self.end.wt)) != tuple(budget_used):
            raise PathError("weight change differs from the sum of m * beta^vee")

    def to_json(self) -> dict:
        rs = self.start.rs
        return {
            "start": format_element(self.start),
            "edges": [
                {
                    "label": list(rs.roots[e.label]),
                    "m": e.m,
                    "kind": e.kind,
                    "target": format_element(e.target),
                }
                for e in self.edges
            ],
        }

    @classmethod
    def from_json(cls, data: dict, order: ReflectionOrder) -> "SIPath":
        rs = order.rs
        cur = parse_element(rs, data["start"])
        start = cur
        edges = []
        for item in data["edges"]:
            label = rs.index[tuple(item["label"])]
            e = make_edge(cur, label, int(item["m"]), item["kind"])
            if "target" in item and parse_element(rs, item["target"]) != e.target:
                raise PathError("stored target disagrees with the edge data")
            edges.append(e)
            cur = e.target
        path = cls(start, tuple(edges), order)
        path.validate()
        return path


def path_len(path: SIPath) -> int:
    return len(path.edges)


def path_deg(path: SIPath) -> int:
    return sum(edge_d(e) for e in path.edges) - len(path.edges)


def path_sets(path: SIPath) -> tuple[frozenset, frozenset, frozenset, tuple[int, ...]]:
    """``(e, r, t, T)``; ``T`` lists multiplicities in the order of the reflection order."""
    e = frozenset(x.label for x in path.edges)
    r = frozenset(x.label for x in path.edges if x.kind == REFLECTION)
    t = frozenset(x.label for x in path.edges if x.kind == TRANSLATION)
    mult = {x.label: x.m for x in path.edges}
    T = tuple(mult.get(b, 0) for b in path.order.sequence)
    return e, r, t, T


def enumerate_si_paths(
    y: AffineElem,
    w: AffineElem,
    order: ReflectionOrder,
    kinds: Iterable[str] = ALL_KINDS,
    strict: bool = False,
) -> list[SIPath]:
    """All label-increasing paths from ``y`` to ``w`` (depth first, budget pruned)."""
    if y.rs is not w.rs or order.rs is not y.rs:
        raise PathError("elements and order must share a root system")
    kinds = frozenset(kinds)
    seq = order.sequence
    top = si_length(w)
    out: list[SIPath] = []

    def dfs(cur: AffineElem, pos: int, edges: list):
        if cur == w:
            # every edge raises the semi-infinite length, so w cannot be revisited
            out.append(SIPath(y, tuple(edges), order))
            return
        budget = tuple(b - a for a, b in zip(cur.wt, w.wt))
        for p in range(pos, len(seq)):
            for e in si_edge_candidates(cur, seq[p], budget, kinds, strict):
                if si_length(e.target) > top:
                    continue
                edges.append(e)
                dfs(e.target, p + 1, edges)
                edges.pop()

    if any(b < a for a, b in zip(y.wt, w.wt)):
        return []
    dfs(y, 0, [])
    return out


def _sum_paths(paths: Iterable[SIPath], weight) -> IntLaurentPoly:
    total = ZERO
    for p in paths:
        total = total + weight(p)
    return total


def path_weight(path: SIPath) -> IntLaurentPoly:
    return term(path_deg(path), len(path))


def periodic_r_paths(y: AffineElem, w: AffineElem, order: ReflectionOrder, strict: bool = False) -> IntLaurentPoly:
    """Sum of ``q^deg (q-1)^len`` over all label-increasing paths."""
    return _sum_paths(enumerate_si_paths(y, w, order, strict=strict), path_weight)


def r_restricted(y: AffineElem, w: AffineElem, order: ReflectionOrder) -> IntLaurentPoly:
    gap = si_gap(y, w)

    def weight(p: SIPath) -> IntLaurentPoly:
        return term(half(gap - len(p), "l(y,w) - l(path)"), len(p))

    return _sum_paths(enumerate_si_paths(y, w, order, kinds=(REFLECTION,)), weight)


def t_restricted(y: AffineElem, w: AffineElem, order: ReflectionOrder) -> IntLaurentPoly:
    return _sum_paths(enumerate_si_paths(y, w, order, kinds=(TRANSLATION,)), path_weight)


def check_chain_monotone(path: SIPath) -> bool:
    """Each consecutive pair of vertices is comparable in the semi-infinite order."""
    verts = path.vertices
    return all(si_leq(a, b) and a != b for a, b in zip(verts, verts[1:]))


class PathSums:
    """Memoized path sums for one reflection order, keyed by translation class.

    Edge existence and every edge weight depend only on ``cl`` of the source
    and on weight differences, so a state is ``(cl(current), remaining budget,
    next label position)`` and results are shared across all translates.
    """

    def __init__(self, order: ReflectionOrder):
        self.order = order
        self.rs = order.rs
        self._refl = [reflection(self.rs, b) for b in order.sequence]
        self._cache: dict = {}

    def _edges(self, cl, budget, p, kinds):
        rs = self.rs
        beta = self.order.sequence[p]
        cv = rs.coroots[beta]
        ht = sum(cv)
        mmax = min(b // c for b, c in zip(budget, cv) if c > 0)
        nxt_cl = cl * self._refl[p]
        dl = nxt_cl.length - cl.length
        for m in range(0, mmax + 1):
            rest = tuple(b - m * c for b, c in zip(budget, cv))
            if REFLECTION in kinds:
                gap = dl + 2 * m * ht
                if gap > 0:
                    d = (gap + 1) // 2 + m if dl > 0 else (gap - 1) // 2 + m
                    if gap % 2 == 0:
                        raise ParityError("reflection edge with even length gap")
                    yield REFLECTION, nxt_cl, rest, gap, d
            if TRANSLATION in kinds and m > 0:
                gap = 2 * m * ht
                yield TRANSLATION, cl, rest, gap, (gap + 2 * m) // 2

    def total(self, y: AffineElem, w: AffineElem, mode: str = "R") -> IntLaurentPoly:
        """``mode`` is ``"R"`` (all paths), ``"r"`` (reflection only) or ``"t"`` (translation only)."""
        budget = tuple(b - a for a, b in zip(y.wt, w.wt))
        if any(b < 0 for b in budget):
            return ZERO
        return self._state(y.cl, budget, 0, w.cl, mode)

    def _state(self, cl, budget, pos, target, mode):
        key = (cl, budget, pos, target, mode)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        kinds = {"R": ALL_KINDS, "r": {REFLECTION}, "t": {TRANSLATION}}[mode]
        total = ONE if (cl == target and not any(budget)) else ZERO
        for p in range(pos, len(self.order.sequence)):
            for _, ncl, rest, gap, d in self._edges(cl, budget, p, kinds):
                sub = self._state(ncl, rest, p + 1, target, mode)
                if sub.is_zero():
                    continue
                # r-sums use q^{(gap - 1)/2} per edge, which telescopes to q^{(l(y,w) - len)/2}
                exp = (gap - 1) // 2 if mode == "r" else d - 1
                total = total + term(exp, 1) * sub
        self._cache[key] = total
        return total


def format_path(path: SIPath) -> str:
    rs = path.start.rs
    parts = [pretty_element(path.start)]
    for e in path.edges:
        tag = "t" if e.kind == TRANSLATION else "r"
        parts.append(f" --[{rs.root_label(e.label)}, m={e.m}, {tag}, d={edge_d(e)}]--> {pretty_element(e.target)}")
    return "".join(parts)


__all__ = [
    "ALL_KINDS",
    "REFLECTION",
    "TRANSLATION",
    "AffineError",
    "PathError",
    "PathSums",
    "SIEdge",
    "SIPath",
    "check_chain_monotone",
    "edge_between",
    "edge_d",
    "edge_is_valid",
    "enumerate_si_paths",
    "format_path",
    "make_edge",
    "path_deg",
    "path_len",
    "path_sets",
    "path_weight",
    "periodic_r_paths",
    "r_restricted",
    "si_edge_candidates",
    "t_restricted",
]
