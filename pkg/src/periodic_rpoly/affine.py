"""Affine Weyl group elements ``w = cl(w) t_wt(w)`` and the semi-infinite order."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .rootsys import RootSystem, WeylElem, reflection

DEFAULT_GUARD_LEN = 64


class AffineError(ValueError):
    pass


class GuardExceededError(AffineError):
    pass


class ElementParseError(AffineError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


def guard_length() -> int:
    raw = os.environ.get("RPOLY_GUARD_LEN")
    if raw is None or raw == "":
        return DEFAULT_GUARD_LEN
    try:
        return int(raw)
    except ValueError as exc:
        raise AffineError(f"RPOLY_GUARD_LEN must be an integer, got {raw!r}") from exc


Coweight = tuple[int, ...]


def _add(a: Sequence[int], b: Sequence[int]) -> Coweight:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> Coweight:
    return tuple(x - y for x, y in zip(a, b))


def _scale(k: int, a: Sequence[int]) -> Coweight:
    return tuple(k * x for x in a)


@dataclass(frozen=True)
class AffineElem:
    cl: WeylElem
    wt: Coweight

    def __post_init__(self):
        wt = tuple(int(x) for x in self.wt)
        if len(wt) != self.cl.rs.rank:
            raise AffineError(f"wt has {len(wt)} coordinates, rank is {self.cl.rs.rank}")
        object.__setattr__(self, "wt", wt)

    @property
    def rs(self) -> RootSystem:
        return self.cl.rs

    def __mul__(self, other: "AffineElem") -> "AffineElem":
        return aff_multiply(self, other)

    def translate(self, mu: Sequence[int]) -> "AffineElem":
        """``self * t_mu``."""
        return AffineElem(self.cl, _add(self.wt, mu))

    def __str__(self) -> str:
        return format_element(self)


@dataclass(frozen=True)
class AffineRoot:
    """The real affine root ``alpha + level * delta`` (``root`` is an index into ``rs.roots``)."""

    root: int
    level: int
    rs: RootSystem = field(repr=False)

    def is_positive(self) -> bool:
        if self.rs.is_positive(self.root):
            return self.level >= 0
        return self.level > 0

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(self.rs.neg(self.root), -self.level, self.rs)

    def abs(self) -> "AffineRoot":
        return self if self.is_positive() else -self

    def __str__(self) -> str:
        base = self.rs.root_label(self.root)
        if self.level == 0:
            return base
        sign = "+" if self.level > 0 else "-"
        n = abs(self.level)
        return f"{base} {sign} {'' if n == 1 else n}δ"


def identity(rs: RootSystem) -> AffineElem:
    return AffineElem(rs.identity, (0,) * rs.rank)


def finite(w: WeylElem) -> AffineElem:
    return AffineElem(w, (0,) * w.rs.rank)


def translation(rs: RootSystem, mu: Sequence[int]) -> AffineElem:
    return AffineElem(rs.identity, tuple(mu))


def aff_multiply(x: AffineElem, y: AffineElem) -> AffineElem:
    # (x t_lam)(y t_mu) = xy t_{y^-1(lam) + mu}
    rs = x.rs
    return AffineElem(x.cl * y.cl, _add(rs.act_coweight(y.cl.inv, x.wt), y.wt))


def aff_inverse(x: AffineElem) -> AffineElem:
    rs = x.rs
    return AffineElem(x.cl.inv, _scale(-1, rs.act_coweight(x.cl, x.wt)))


def aff_act(w: AffineElem, r: AffineRoot) -> AffineRoot:
    """``x t_lam (alpha + n delta) = x(alpha) + (n - <alpha, lam>) delta``."""
    rs = w.rs
    return AffineRoot(w.cl(r.root), r.level - rs.pair_root_coweight(r.root, w.wt), rs)


def affine_reflection(r: AffineRoot) -> AffineElem:
    """``s_{alpha + n delta} = s_alpha t_{n alpha^vee}`` (valid for either sign of alpha)."""
    rs = r.rs
    return AffineElem(reflection(rs, r.root), _scale(r.level, rs.coroots[r.root]))


def right_reflect(w: AffineElem, r: AffineRoot) -> AffineElem:
    return aff_multiply(w, affine_reflection(r))


def left_reflect(r: AffineRoot, w: AffineElem) -> AffineElem:
    return aff_multiply(affine_reflection(r), w)


def si_length(w: AffineElem) -> int:
    return w.cl.length + 2 * sum(w.wt)


def si_gap(y: AffineElem, w: AffineElem) -> int:
    """``l^{inf/2}(y, w) = l^{inf/2}(w) - l^{inf/2}(y)``."""
    return si_length(w) - si_length(y)


def affine_simple_root(rs: RootSystem, i: int) -> AffineRoot:
    """``alpha_i`` for ``i >= 1`` and ``alpha_0 = -theta + delta``."""
    if i == 0:
        return AffineRoot(rs.neg(rs.theta), 1, rs)
    return AffineRoot(rs.simple_root(i), 0, rs)


@lru_cache(maxsize=None)
def affine_simple(rs: RootSystem, i: int) -> AffineElem:
    if not 0 <= i <= rs.rank:
        raise AffineError(f"affine simple index {i} out of range 0..{rs.rank}")
    return affine_reflection(affine_simple_root(rs, i))


def left_mul_simple(s: int, w: AffineElem) -> AffineElem:
    return aff_multiply(affine_simple(w.rs, s), w)


def right_mul_simple(w: AffineElem, s: int) -> AffineElem:
    return aff_multiply(w, affine_simple(w.rs, s))


def si_increases_left(beta: AffineRoot, w: AffineElem) -> bool:
    """Whether ``l^{inf/2}(s_beta w) > l^{inf/2}(w)``, decided by the sign of ``cl(w)^-1(alpha)``."""
    if not beta.is_positive():
        raise AffineError(f"{beta} is not a positive real root")
    return w.rs.is_positive(w.cl.inv(beta.root))


def si_less_simple_left(s: int, w: AffineElem) -> bool:
    """``s w <_{inf/2} w``; left multiplication by a simple reflection is a single step."""
    return not si_increases_left(affine_simple_root(w.rs, s), w)


def aff_length(w: AffineElem) -> int:
    """Number of positive real roots sent to negative ones."""
    rs = w.rs
    shifts = [rs.pair_root_coweight(r, w.wt) for r in range(rs.n_pos)]
    bound = max((abs(c) for c in shifts), default=0) + 1
    count = 0
    for r in range(rs.n_pos):
        img = w.cl(r)
        img_pos = rs.is_positive(img)
        c = shifts[r]
        # alpha + n delta, n >= 0  ->  level n - c
        for n in range(0, bound + 1):
            lvl = n - c
            if lvl < 0 or (lvl == 0 and not img_pos):
                count += 1
        # -alpha + n delta, n > 0  ->  image -x(alpha), level n + c
        for n in range(1, bound + 1):
            lvl = n + c
            if lvl < 0 or (lvl == 0 and img_pos):
                count += 1
    return count


def _is_negative_real(r: AffineRoot) -> bool:
    return not r.is_positive()


def aff_left_descents(v: AffineElem) -> list[int]:
    rs = v.rs
    vinv = aff_inverse(v)
    return [s for s in range(rs.rank + 1) if _is_negative_real(aff_act(vinv, affine_simple_root(rs, s)))]


def aff_bruhat_leq(u: AffineElem, v: AffineElem, guard: int | None = None) -> bool:
    """Ordinary Bruhat order on the Coxeter group ``W_af``."""
    limit = guard_length() if guard is None else guard
    lv = aff_length(v)
    if lv > limit:
        raise GuardExceededError(
            f"aff_length({v}) = {lv} exceeds guard {limit}; raise RPOLY_GUARD_LEN to proceed"
        )
    return _aff_bruhat_leq(u, v)


@lru_cache(maxsize=1 << 18)
def _aff_bruhat_leq(u: AffineElem, v: AffineElem) -> bool:
    # pick s with sv < v; then u <= v iff min(u, su) <= sv
    while True:
        lu, lv = aff_length(u), aff_length(v)
        if lu > lv:
            return False
        if lu == lv:
            return u == v
        s = aff_left_descents(v)[0]
        su = left_mul_simple(s, u)
        if aff_length(su) < lu:
            u = su
        v = left_mul_simple(s, v)


# -- semi-infinite order ----------------------------------------------------


def _simple_pairings(rs: RootSystem, lam: Sequence[int]) -> list[int]:
    return [rs.pair_root_coweight(i, lam) for i in range(rs.rank)]


def shift_is_valid(y: AffineElem, w: AffineElem, lam: Sequence[int]) -> bool:
    """``lam`` in ``Q_+^vee`` moving both ``y t_lam`` and ``w t_lam`` deep into the dominant chamber."""
    rs = y.rs
    if any(c < 0 for c in lam):
        return False
    for x in (y, w):
        if any(p < 1 for p in _simple_pairings(rs, _add(x.wt, lam))):
            return False
    return True


def minimal_dominant_shift(y: AffineElem, w: AffineElem) -> Coweight:
    """Componentwise smallest ``lam >= 0`` with ``<alpha_i, wt + lam> >= 1`` for both elements.

    The feasible set is closed under componentwise minimum (off-diagonal
    Cartan entries are non-positive), so raising each coordinate to its
    current lower bound until nothing moves reaches the least point.
    """
    rs = y.rs
    n = rs.rank
    a = rs.datum.cartan_matrix
    need = [
        max(1 - p, 1 - q)
        for p, q in zip(_simple_pairings(rs, y.wt), _simple_pairings(rs, w.wt))
    ]
    lam = [0] * n
    changed = True
    while changed:
        changed = False
        for i in range(n):
            # <alpha_i, lam> = 2 lam_i + sum_{j != i} a[j][i] lam_j
            rest = sum(a[j][i] * lam[j] for j in range(n) if j != i)
            lo = -((rest - need[i]) // 2)  # ceil((need - rest) / 2)
            if lo > lam[i]:
                lam[i] = lo
                changed = True
    return tuple(lam)


def doubled_shift(y: AffineElem, w: AffineElem) -> Coweight:
    """Twice the minimal shift, pushed further by ``2 rho^vee`` if doubling left the chamber."""
    rs = y.rs
    lam = _scale(2, minimal_dominant_shift(y, w))
    two_rho_vee = tuple(sum(rs.coroots[r][i] for r in range(rs.n_pos)) for i in range(rs.rank))
    while not shift_is_valid(y, w, lam):
        lam = _add(lam, two_rho_vee)
    return lam


def si_leq(y: AffineElem, w: AffineElem, shift: Sequence[int] | None = None, guard: int | None = None) -> bool:
    """``y <=_{inf/2} w`` via ordinary Bruhat order after a deep dominant translation."""
    if shift is None:
        lam = minimal_dominant_shift(y, w)
    else:
        lam = tuple(shift)
        if not shift_is_valid(y, w, lam):
            raise AffineError(f"shift {lam} does not move both elements into the dominant chamber")
    return aff_bruhat_leq(y.translate(lam), w.translate(lam), guard=guard)


def si_less(y: AffineElem, w: AffineElem, **kw) -> bool:
    return y != w and si_leq(y, w, **kw)


def single_step_less(y: AffineElem, w: AffineElem) -> bool:
    """``y <_{inf/2} w`` for ``w = y s_gamma``: the order is generated by length-raising reflections."""
    return si_length(w) > si_length(y)


def normalize_pair(y: AffineElem, w: AffineElem) -> tuple[WeylElem, WeylElem, Coweight]:
    """Translation class of a pair: right translation by ``t_mu`` is an order automorphism."""
    return y.cl, w.cl, _sub(w.wt, y.wt)


# -- text format ------------------------------------------------------------

_INT_LIST = re.compile(r"^\s*-?\d+(\s*,\s*-?\d+)*\s*$")


def _parse_ints(text: str, offset: int, what: str) -> tuple[int, ...]:
    if text.strip() == "":
        return ()
    if not _INT_LIST.match(text):
        bad = next((i for i, ch in enumerate(text) if not (ch.isdigit() or ch in ", -")), 0)
        raise ElementParseError(f"malformed {what} {text!r}", offset + bad)
    return tuple(int(x) for x in text.split(","))


def parse_element(rs: RootSystem, text: str) -> AffineElem:
    """Parse ``cl=<word>;wt=<ints>``; a bare word means ``wt = 0``, empty means identity."""
    text = text.strip()
    if "=" not in text:
        word = _parse_ints(text, 0, "word")
        wt: tuple[int, ...] = (0,) * rs.rank
    else:
        word = ()
        wt = (0,) * rs.rank
        pos = 0
        for part in text.split(";"):
            key, sep, value = part.partition("=")
            key = key.strip()
            vpos = pos + len(key) + 1
            if not sep:
                raise ElementParseError(f"expected key=value, got {part!r}", pos)
            if key == "cl":
                word = _parse_ints(value, vpos, "word")
            elif key == "wt":
                wt = _parse_ints(value, vpos, "wt")
                if len(wt) != rs.rank:
                    raise ElementParseError(f"wt needs {rs.rank} coordinates, got {len(wt)}", vpos)
            else:
                raise ElementParseError(f"unknown key {key!r}", pos)
            pos += len(part) + 1
    for i in word:
        if not 1 <= i <= rs.rank:
            raise ElementParseError(f"simple index {i} out of range 1..{rs.rank}")
    return AffineElem(rs.from_word(word), wt)


def format_element(w: AffineElem) -> str:
    word = ",".join(str(i) for i in w.cl.reduced_word)
    wt = ",".join(str(c) for c in w.wt)
    return f"cl={word};wt={wt}"


def pretty_element(w: AffineElem) -> str:
    """Human form such as ``s1s2 t(1,1)``."""
    base = str(w.cl)
    if any(w.wt):
        return f"{base} t({','.join(str(c) for c in w.wt)})"
    return base
