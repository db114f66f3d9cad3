"""Ordinary R-polynomials of a finite Weyl group."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .laurent import ONE, Q, ZERO, IntLaurentPoly, q_minus_one_pow
from .rootsys import ReflectionOrder, WeylElem, bruhat_leq, left_descents, reflection


class ParityError(AssertionError):
    """A half-integer exponent appeared where the theory guarantees an integer."""


def half(n: int, what: str = "value") -> int:
    if n % 2:
        raise ParityError(f"{what} {n} is odd; expected an even number")
    return n // 2


@lru_cache(maxsize=None)
def r_recursive(u: WeylElem, v: WeylElem) -> IntLaurentPoly:
    """R_{u,v} from R_{v,v} = 1, vanishing off the Bruhat order, and the left recursion.

    The pivot is always the smallest simple ``s`` with ``sv < v``.
    """
    if u == v:
        return ONE
    if not bruhat_leq(u, v):
        return ZERO
    return _r_pivot(u, v, left_descents(v)[0])


def _r_pivot(u: WeylElem, v: WeylElem, i: int) -> IntLaurentPoly:
    s = u.rs.s(i)
    su, sv = s * u, s * v
    if su.length < u.length:
        return r_recursive(su, sv)
    return Q * r_recursive(su, sv) + (Q - 1) * r_recursive(u, sv)


def r_recursive_pivot(u: WeylElem, v: WeylElem, i: int) -> IntLaurentPoly:
    """One unfolding of the recursion at a chosen left descent ``s_i`` of ``v``."""
    if i not in left_descents(v):
        raise ValueError(f"s{i} is not a left descent of {v}")
    return _r_pivot(u, v, i)


@dataclass(frozen=True)
class BruhatChain:
    elements: tuple[WeylElem, ...]
    labels: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.labels)


def enumerate_bruhat_chains(y: WeylElem, w: WeylElem, order: ReflectionOrder) -> list[BruhatChain]:
    """Chains y < y s_{b1} < ... = w with b1 < b2 < ... in ``order``."""
    if not bruhat_leq(y, w):
        return []
    rs = y.rs
    seq = order.sequence
    refl = [reflection(rs, b) for b in seq]
    out: list[BruhatChain] = []

    def dfs(cur: WeylElem, start: int, elems: list, labels: list):
        if cur == w:
            out.append(BruhatChain(tuple(elems), tuple(labels)))
        for k in range(start, len(seq)):
            nxt = cur * refl[k]
            if nxt.length > cur.length and bruhat_leq(nxt, w):
                elems.append(nxt)
                labels.append(seq[k])
                dfs(nxt, k + 1, elems, labels)
                elems.pop()
                labels.pop()

    dfs(y, 0, [y], [])
    return out


def r_dyer(y: WeylElem, w: WeylElem, order: ReflectionOrder) -> IntLaurentPoly:
    gap = w.length - y.length
    total = ZERO
    for chain in enumerate_bruhat_chains(y, w, order):
        k = len(chain)
        total = total + q_minus_one_pow(k).shift(half(gap - k, "l(y,w) - l(chain)"))
    return total
