"""s-descent sets of reflection-only paths and the splice maps Psi_L, Psi_R."""

from __future__ import annotations

from ..affine import AffineElem, left_mul_simple
from .paths import REFLECTION, PathError, SIPath, edge_between, edge_is_valid


def _require_reflection_only(path: SIPath) -> None:
    if any(e.kind != REFLECTION for e in path.edges):
        raise PathError("descent sets are defined for paths without translation edges")


def descent_set(path: SIPath, s: int) -> set[int]:
    """Positions ``i`` (1-based) with ``s u_i = u_{i-1}``."""
    _require_reflection_only(path)
    u = path.vertices
    return {i for i in range(1, len(u)) if left_mul_simple(s, u[i]) == u[i - 1]}


def descent_bounds(path: SIPath, s: int) -> tuple[int, int]:
    """``(d_lower, d_upper)``; ``(k + 1, 0)`` when the descent set is empty."""
    ds = descent_set(path, s)
    if not ds:
        return len(path.edges) + 1, 0
    return min(ds), max(ds)


def _rebuild(vertices: list[AffineElem], labels: list[int], path: SIPath) -> SIPath:
    edges = []
    for a, b, lab in zip(vertices, vertices[1:], labels):
        e = edge_between(a, b, lab, REFLECTION)
        if not edge_is_valid(e):
            raise PathError("spliced edge does not raise the semi-infinite length")
        edges.append(e)
    out = SIPath(vertices[0], tuple(edges), path.order)
    out.validate()
    return out


def apply_psi_L(path: SIPath, s: int) -> SIPath:
    """Drop the edge at the smallest descent and move the earlier vertices by ``s``."""
    ds = descent_set(path, s)
    if not ds:
        raise PathError("Psi_L needs a non-empty descent set")
    d = min(ds)
    u = path.vertices
    labels = list(path.labels)
    verts = [left_mul_simple(s, x) for x in u[:d]] + u[d + 1 :]
    return _rebuild(verts, labels[: d - 1] + labels[d:], path)


def apply_psi_R(path: SIPath, s: int) -> SIPath:
    """Drop the edge at the largest descent and move the later vertices by ``s``."""
    ds = descent_set(path, s)
    if not ds:
        raise PathError("Psi_R needs a non-empty descent set")
    d = max(ds)
    u = path.vertices
    labels = list(path.labels)
    verts = u[:d] + [left_mul_simple(s, x) for x in u[d + 1 :]]
    return _rebuild(verts, labels[: d - 1] + labels[d:], path)
