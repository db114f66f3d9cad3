"""Finite crystallographic root systems and their Weyl groups.

Roots live in simple-root coordinates and coroots in simple-coroot
coordinates; every pairing goes through the Cartan matrix, so all arithmetic
is over the integers.  Cartan matrices follow the convention
``a[i][j] = <alpha_j, alpha_i^vee>`` with Bourbaki numbering.

Roots are referred to by index: ``0 .. N-1`` are the positive roots (sorted by
height, simple roots first) and ``N + i`` is the negative of root ``i``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

MAX_GROUP_ORDER = 10**6


class RootSystemError(ValueError):
    pass


class GroupTooLargeError(RootSystemError):
    pass


def standard_cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    family = family.upper()
    n = rank
    if n < 1:
        raise RootSystemError("rank must be positive")
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if family == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif family in ("B", "C"):
        if n < 2:
            raise RootSystemError(f"{family}{n} is not a valid type (rank >= 2)")
        for i in range(n - 2):
            link(i, i + 1)
        # B: alpha_n short, so <alpha_{n-1}, alpha_n^vee> = -2.
        if family == "B":
            link(n - 2, n - 1, aij=-1, aji=-2)
        else:
            link(n - 2, n - 1, aij=-2, aji=-1)
    elif family == "D":
        if n < 4:
            raise RootSystemError("D requires rank >= 4")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif family == "E":
        if n not in (6, 7, 8):
            raise RootSystemError("E requires rank 6, 7 or 8")
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif family == "F":
        if n != 4:
            raise RootSystemError("F requires rank 4")
        link(0, 1)
        link(1, 2, aij=-1, aji=-2)
        link(2, 3)
    elif family == "G":
        if n != 2:
            raise RootSystemError("G requires rank 2")
        # alpha_1 short, alpha_2 long.
        link(0, 1, aij=-3, aji=-1)
    else:
        raise RootSystemError(f"unknown family {family!r}")
    return tuple(tuple(row) for row in a)


def weyl_group_order(family: str, rank: int) -> int:
    family = family.upper()
    n = rank
    if family == "A":
        return math.factorial(n + 1)
    if family in ("B", "C"):
        return 2**n * math.factorial(n)
    if family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[(family, n)]


def _symmetrizer(a) -> list[Fraction]:
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and a[i][j] != 0:
                    # d_i a_ij = d_j a_ji
                    val = d[i] * a[i][j] / a[j][i]
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise RootSystemError("Cartan matrix is not symmetrizable")
    return d  # type: ignore[return-value]


def _is_positive_definite(m) -> bool:
    n = len(m)
    work = [[Fraction(x) for x in row] for row in m]
    for k in range(n):
        if work[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = work[i][k] / work[k][k]
            for j in range(k, n):
                work[i][j] -= f * work[k][j]
    return True


def validate_cartan_matrix(a) -> None:
    n = len(a)
    if any(len(row) != n for row in a):
        raise RootSystemError("Cartan matrix must be square")
    for i in range(n):
        if a[i][i] != 2:
            raise RootSystemError(f"diagonal entry ({i},{i}) is {a[i][i]}, expected 2")
        for j in range(n):
            if i == j:
                continue
            if a[i][j] not in (0, -1, -2, -3):
                raise RootSystemError(f"off-diagonal entry ({i},{j}) = {a[i][j]} not in {{0,-1,-2,-3}}")
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise RootSystemError(f"entries ({i},{j}) and ({j},{i}) must vanish together")
    d = _symmetrizer(a)
    sym = [[d[i] * a[i][j] for j in range(n)] for i in range(n)]
    if not _is_positive_definite(sym):
        raise RootSystemError("Cartan matrix is not of finite type (not positive definite)")


@dataclass(frozen=True)
class CartanDatum:
    family: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "family", self.family.upper())
        std = standard_cartan_matrix(self.family, self.rank)
        if not self.cartan_matrix:
            object.__setattr__(self, "cartan_matrix", std)
        else:
            mat = tuple(tuple(int(x) for x in row) for row in self.cartan_matrix)
            validate_cartan_matrix(mat)
            if mat != std:
                raise RootSystemError(
                    f"matrix is a Cartan matrix but not the standard one for {self.family}{self.rank}"
                )
            object.__setattr__(self, "cartan_matrix", mat)

    @classmethod
    def parse(cls, text: str) -> "CartanDatum":
        """``"A2"`` -> ``CartanDatum("A", 2)``."""
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise RootSystemError(f"cannot parse Cartan type {text!r}")
        return cls(text[0], int(text[1:]))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


class RootSystem:
    """Positive roots, coroots, pairing and reflection tables for one Cartan datum."""

    def __init__(self, datum: CartanDatum):
        self.datum = datum
        self.rank = datum.rank
        a = datum.cartan_matrix
        n = self.rank

        def unit(i):
            return tuple(int(j == i) for j in range(n))

        # closure of the simple roots under s_j, carrying coroots along
        found: dict[tuple[int, ...], tuple[int, ...]] = {unit(i): unit(i) for i in range(n)}
        queue = deque(found)
        while queue:
            root = queue.popleft()
            coroot = found[root]
            for j in range(n):
                if root == unit(j):
                    continue
                c = sum(root[i] * a[j][i] for i in range(n))  # <root, alpha_j^vee>
                cv = sum(coroot[i] * a[i][j] for i in range(n))  # <alpha_j, coroot>
                new = tuple(root[i] - c * (i == j) for i in range(n))
                if new not in found:
                    found[new] = tuple(coroot[i] - cv * (i == j) for i in range(n))
                    queue.append(new)

        def key(r):
            return (sum(r), tuple(-x for x in r))

        pos = sorted(found, key=key)
        self.n_pos = N = len(pos)
        self.roots: list[tuple[int, ...]] = pos + [tuple(-x for x in r) for r in pos]
        self.coroots: list[tuple[int, ...]] = [found[r] for r in pos] + [
            tuple(-x for x in found[r]) for r in pos
        ]
        self.index = {r: i for i, r in enumerate(self.roots)}
        # <beta_r, alpha_j^vee> for each root r and simple j
        self.simple_pairings = [
            tuple(sum(r[i] * a[j][i] for i in range(n)) for j in range(n)) for r in self.roots
        ]
        self.pairing_table = [
            [self.pair_root_coweight(i, self.coroots[j]) for j in range(2 * N)] for i in range(2 * N)
        ]
        self.reflection_table = [
            [self.index[self._reflect_vec(b, r)] for r in range(2 * N)] for b in range(N)
        ]
        self.heights = [sum(r) for r in self.roots]
        self.highest_root = max(
            (i for i in range(N) if all(p >= 0 for p in self.simple_pairings[i])),
            key=lambda i: self.heights[i],
        )

    def __repr__(self):
        return f"RootSystem({self.datum.name})"

    # -- roots -------------------------------------------------------------

    def neg(self, r: int) -> int:
        return (r + self.n_pos) % (2 * self.n_pos)

    def is_positive(self, r: int) -> bool:
        return r < self.n_pos

    def abs_root(self, r: int) -> int:
        return r if r < self.n_pos else r - self.n_pos

    def simple_root(self, i: int) -> int:
        """Index of alpha_i (``i`` is 1-based)."""
        if not 1 <= i <= self.rank:
            raise RootSystemError(f"simple index {i} out of range 1..{self.rank}")
        return i - 1

    def pair_root_coweight(self, r: int, coweight: Sequence[int]) -> int:
        """``<beta_r, lambda>`` for ``lambda`` in simple-coroot coordinates."""
        sp = self.simple_pairings[r]
        return sum(sp[j] * coweight[j] for j in range(self.rank))

    def pairing(self, r: int, s: int) -> int:
        """``<beta_r, beta_s^vee>``."""
        return self.pairing_table[r][s]

    def _reflect_vec(self, b: int, r: int) -> tuple[int, ...]:
        c = self.pairing_table[r][b]
        return tuple(x - c * y for x, y in zip(self.roots[r], self.roots[b]))

    def root_label(self, r: int, ascii_only: bool = False) -> str:
        sym = "a" if ascii_only else "α"
        parts = []
        for i, c in enumerate(self.roots[self.abs_root(r)], start=1):
            if c:
                parts.append(f"{'' if c == 1 else c}{sym}{i}")
        body = "+".join(parts)
        return body if self.is_positive(r) else f"-({body})"

    @property
    def positive_roots(self) -> list[tuple[int, ...]]:
        return self.roots[: self.n_pos]

    @property
    def theta(self) -> int:
        return self.highest_root

    # -- group elements ----------------------------------------------------

    @cached_property
    def identity(self) -> "WeylElem":
        return WeylElem(tuple(range(2 * self.n_pos)), self)

    def s(self, i: int) -> "WeylElem":
        """Simple reflection ``s_i`` (1-based)."""
        return reflection(self, self.simple_root(i))

    def from_word(self, word: Iterable[int]) -> "WeylElem":
        w = self.identity
        for i in word:
            w = w * self.s(i)
        return w

    @cached_property
    def longest_element(self) -> "WeylElem":
        # w0 sends every positive root to a negative one
        w = self.identity
        while True:
            for i in range(self.rank):
                if w.perm[i] < self.n_pos:
                    w = w * self.s(i + 1)
                    break
            else:
                return w

    def act_coweight(self, w: "WeylElem", vec: Sequence[int]) -> tuple[int, ...]:
        """``w(lambda)`` for ``lambda`` in simple-coroot coordinates."""
        out = [0] * self.rank
        for i, c in enumerate(vec):
            if c:
                img = self.coroots[w.perm[i]]
                for j in range(self.rank):
                    out[j] += c * img[j]
        return tuple(out)

    def act_rootvec(self, w: "WeylElem", vec: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.rank
        for i, c in enumerate(vec):
            if c:
                img = self.roots[w.perm[i]]
                for j in range(self.rank):
                    out[j] += c * img[j]
        return tuple(out)


@lru_cache(maxsize=None)
def build_root_system(datum: CartanDatum) -> RootSystem:
    return RootSystem(datum)


def root_system(name: str) -> RootSystem:
    """Convenience: ``root_system("B2")``."""
    return build_root_system(CartanDatum.parse(name))


def rho_pairing(rs: RootSystem, gamma_vee: Sequence[int]) -> int:
    """``<rho, gamma^vee>``: the coordinate sum, as ``<rho, alpha_i^vee> = 1``."""
    if len(gamma_vee) != rs.rank:
        raise RootSystemError("coroot vector has wrong length")
    return sum(gamma_vee)


@dataclass(frozen=True, eq=True)
class WeylElem:
    """An element of the finite Weyl group, stored as its permutation of all roots.

    The permutation is determined by the images of the simple roots, so
    structural equality on ``perm`` is equality in the group.
    """

    perm: tuple[int, ...]
    rs: RootSystem = field(repr=False)

    @cached_property
    def length(self) -> int:
        N = self.rs.n_pos
        return sum(1 for i in range(N) if self.perm[i] >= N)

    @property
    def root_images(self) -> tuple[int, ...]:
        return self.perm[: self.rs.rank]

    def __mul__(self, other: "WeylElem") -> "WeylElem":
        return multiply(self, other)

    def __call__(self, r: int) -> int:
        return self.perm[r]

    @cached_property
    def inv(self) -> "WeylElem":
        return inverse(self)

    def is_identity(self) -> bool:
        return self.length == 0

    @cached_property
    def reduced_word(self) -> tuple[int, ...]:
        """Lexicographically smallest reduced word."""
        word = []
        w = self
        rs = self.rs
        while w.length:
            winv = w.inv
            for i in range(rs.rank):
                if winv.perm[i] >= rs.n_pos:  # s_i w < w
                    word.append(i + 1)
                    w = rs.s(i + 1) * w
                    break
        return tuple(word)

    def __str__(self) -> str:
        word = self.reduced_word
        return "e" if not word else "".join(f"s{i}" for i in word)


def length(w: WeylElem) -> int:
    return w.length


def multiply(u: WeylElem, v: WeylElem) -> WeylElem:
    up = u.perm
    return WeylElem(tuple(up[j] for j in v.perm), u.rs)


def inverse(w: WeylElem) -> WeylElem:
    out = [0] * len(w.perm)
    for i, j in enumerate(w.perm):
        out[j] = i
    return WeylElem(tuple(out), w.rs)


def act(w: WeylElem, root: int) -> int:
    return w.perm[root]


def reflection(rs: RootSystem, beta: int) -> WeylElem:
    """The reflection ``s_beta`` for a root index (sign is irrelevant)."""
    return WeylElem(tuple(rs.reflection_table[rs.abs_root(beta)]), rs)


def all_elements(rs: RootSystem) -> list[WeylElem]:
    """Every element once, in breadth-first order from the identity."""
    order = weyl_group_order(rs.datum.family, rs.rank)
    if order > MAX_GROUP_ORDER:
        raise GroupTooLargeError(f"|W({rs.datum.name})| = {order} exceeds {MAX_GROUP_ORDER}")
    return list(_all_elements(rs))


@lru_cache(maxsize=None)
def _all_elements(rs: RootSystem) -> tuple[WeylElem, ...]:
    seen = {rs.identity}
    out = [rs.identity]
    gens = [rs.s(i) for i in range(1, rs.rank + 1)]
    queue = deque([rs.identity])
    while queue:
        w = queue.popleft()
        for s in gens:
            x = w * s
            if x not in seen:
                seen.add(x)
                out.append(x)
                queue.append(x)
    return tuple(out)


def left_descents(w: WeylElem) -> list[int]:
    winv = w.inv
    N = w.rs.n_pos
    return [i + 1 for i in range(w.rs.rank) if winv.perm[i] >= N]


@lru_cache(maxsize=1 << 18)
def bruhat_leq(u: WeylElem, v: WeylElem) -> bool:
    if u.length > v.length:
        return False
    if u.length == v.length:
        return u == v
    # first s with sv < v; then u <= v iff min(u, su) <= sv
    s = u.rs.s(left_descents(v)[0])
    su = s * u
    return bruhat_leq(su if su.length < u.length else u, s * v)


# -- reflection orders ---------------------------------------------------


@dataclass(frozen=True)
class ReflectionOrder:
    """A total order on positive roots, ``sequence[0]`` smallest."""

    sequence: tuple[int, ...]
    rs: RootSystem = field(repr=False)

    @cached_property
    def position(self) -> dict[int, int]:
        return {b: k for k, b in enumerate(self.sequence)}

    def __iter__(self):
        return iter(self.sequence)

    def __len__(self):
        return len(self.sequence)

    def less(self, a: int, b: int) -> bool:
        return self.position[a] < self.position[b]

    def describe(self) -> str:
        return " < ".join(self.rs.root_label(b) for b in self.sequence)


def _positive_combination(rs: RootSystem, a: int, b: int, c: int) -> bool:
    """Is root ``c`` equal to x*a + y*b with x, y > 0 (real)?"""
    ra, rb, rc = rs.roots[a], rs.roots[b], rs.roots[c]
    n = rs.rank
    for i in range(n):
        for j in range(i + 1, n):
            det = ra[i] * rb[j] - ra[j] * rb[i]
            if det:
                x = Fraction(rc[i] * rb[j] - rc[j] * rb[i], det)
                y = Fraction(ra[i] * rc[j] - ra[j] * rc[i], det)
                if x <= 0 or y <= 0:
                    return False
                return all(x * ra[k] + y * rb[k] == rc[k] for k in range(n))
    return False


def is_reflection_order(rs: RootSystem, sequence: Sequence[int]) -> bool:
    N = rs.n_pos
    if sorted(sequence) != list(range(N)):
        return False
    pos = {b: k for k, b in enumerate(sequence)}
    for a in range(N):
        for b in range(N):
            if pos[a] >= pos[b]:
                continue
            for c in range(N):
                if c in (a, b):
                    continue
                if _positive_combination(rs, a, b, c) and not (pos[a] < pos[c] < pos[b]):
                    return False
    return True


def reflection_order_from_reduced_word(rs: RootSystem, word: Sequence[int]) -> ReflectionOrder:
    """beta_j = s_{i_1} ... s_{i_{j-1}}(alpha_{i_j}) for a reduced word of w0."""
    word = tuple(int(i) for i in word)
    if len(word) != rs.n_pos:
        raise RootSystemError(f"word {word} has length {len(word)}, w0 has length {rs.n_pos}")
    prefix = rs.identity
    seq = []
    for i in word:
        beta = prefix(rs.simple_root(i))
        if not rs.is_positive(beta):
            raise RootSystemError(f"word {word} is not reduced")
        seq.append(beta)
        prefix = prefix * rs.s(i)
    return ReflectionOrder(tuple(seq), rs)


def reduced_words(w: WeylElem) -> list[tuple[int, ...]]:
    """All reduced words of ``w``, lexicographically sorted."""
    return list(_reduced_words(w))


@lru_cache(maxsize=None)
def _reduced_words(w: WeylElem) -> tuple[tuple[int, ...], ...]:
    if w.length == 0:
        return ((),)
    rs = w.rs
    out = []
    for i in left_descents(w):
        for tail in _reduced_words(rs.s(i) * w):
            out.append((i,) + tail)
    return tuple(sorted(out))


def all_reflection_orders(rs: RootSystem) -> list[ReflectionOrder]:
    order = weyl_group_order(rs.datum.family, rs.rank)
    if order > MAX_GROUP_ORDER:
        raise GroupTooLargeError(f"|W({rs.datum.name})| = {order} exceeds {MAX_GROUP_ORDER}")
    seen = {}
    for word in reduced_words(rs.longest_element):
        o = reflection_order_from_reduced_word(rs, word)
        seen.setdefault(o.sequence, o)
    return list(seen.values())


def default_reflection_order(rs: RootSystem) -> ReflectionOrder:
    """The order from the lexicographically smallest reduced word of w0."""
    return reflection_order_from_reduced_word(rs, rs.longest_element.reduced_word)
