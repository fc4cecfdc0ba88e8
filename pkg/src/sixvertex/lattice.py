"""Exact partition functions on the n x n domain-wall lattice: reference
configuration enumeration (DFS) and a 2^n-state transfer-matrix dynamic
program.  Rational weights give exact rational results.

Edge encoding: horizontal arrows are 0=Left / 1=Right, vertical arrows are
0=Down / 1=Up.  A vertex sees (left, right, bottom, top) incident edges; the
ice rule demands exactly two arrows in and two out.  Type assignment:

    1: in from left+bottom   2: in from right+top    (weight a)
    3: in from left+top      4: in from right+bottom (weight b)
    5: in from top+bottom    6: in from left+right   (weight c)

Domain wall boundaries: top and bottom vertical edges point into the square
(Down on top, Up on bottom), left and right horizontal edges point out
(Left on the left, Right on the right).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Tuple

from mpmath import mp

from .errors import ParameterDomainError
from .model import DEFAULT_CONTEXT, PrecisionContext, Weights

LEFT, RIGHT = 0, 1
DOWN, UP = 0, 1

_VERTEX_TYPE = {
    (RIGHT, RIGHT, UP, UP): 1,
    (LEFT, LEFT, DOWN, DOWN): 2,
    (RIGHT, RIGHT, DOWN, DOWN): 3,
    (LEFT, LEFT, UP, UP): 4,
    (LEFT, RIGHT, UP, DOWN): 5,
    (RIGHT, LEFT, DOWN, UP): 6,
}

# weight class per type: 0 -> a, 1 -> b, 2 -> c
_WEIGHT_CLASS = {1: 0, 2: 0, 3: 1, 4: 1, 5: 2, 6: 2}

MAX_ENUM_N = 7
MAX_TRANSFER_N = 14


def vertex_type(left: int, right: int, bottom: int, top: int) -> Optional[int]:
    """Vertex type 1..6 for the four incident arrows, or None if the ice rule
    is violated."""
    return _VERTEX_TYPE.get((left, right, bottom, top))


@dataclass(frozen=True)
class Configuration:
    """Full arrow assignment on an n x n DWBC lattice.

    ``h_edges[i][j]`` is the horizontal edge left of column j in row i
    (j = 0..n, row 0 at the bottom); ``v_edges[i][j]`` is the vertical edge
    below row i at column j (i = 0..n).
    """

    n: int
    h_edges: Tuple[Tuple[int, ...], ...]
    v_edges: Tuple[Tuple[int, ...], ...]

    def validate(self) -> None:
        n = self.n
        if len(self.h_edges) != n or any(len(r) != n + 1 for r in self.h_edges):
            raise ParameterDomainError("h_edges must be n rows of n+1 entries")
        if len(self.v_edges) != n + 1 or any(len(r) != n for r in self.v_edges):
            raise ParameterDomainError("v_edges must be n+1 rows of n entries")
        for i in range(n):
            if self.h_edges[i][0] != LEFT or self.h_edges[i][n] != RIGHT:
                raise ParameterDomainError(
                    "domain wall violated on a horizontal boundary edge"
                )
        for j in range(n):
            if self.v_edges[0][j] != UP or self.v_edges[n][j] != DOWN:
                raise ParameterDomainError(
                    "domain wall violated on a vertical boundary edge"
                )
        for i in range(n):
            for j in range(n):
                if self.type_at(i, j) is None:
                    raise ParameterDomainError(f"ice rule violated at vertex ({i},{j})")

    def type_at(self, i: int, j: int) -> Optional[int]:
        return vertex_type(
            self.h_edges[i][j],
            self.h_edges[i][j + 1],
            self.v_edges[i][j],
            self.v_edges[i + 1][j],
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "h_edges": [list(r) for r in self.h_edges],
            "v_edges": [list(r) for r in self.v_edges],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Configuration":
        cfg = cls(
            n=int(obj["n"]),
            h_edges=tuple(tuple(int(x) for x in r) for r in obj["h_edges"]),
            v_edges=tuple(tuple(int(x) for x in r) for r in obj["v_edges"]),
        )
        cfg.validate()
        return cfg


@dataclass(frozen=True)
class VertexCounts:
    """Per-type vertex tallies N1..N6 of one configuration."""

    n1: int
    n2: int
    n3: int
    n4: int
    n5: int
    n6: int

    def as_tuple(self) -> Tuple[int, ...]:
        return (self.n1, self.n2, self.n3, self.n4, self.n5, self.n6)

    @property
    def total(self) -> int:
        return sum(self.as_tuple())


def _check_enum_guard(n: int) -> None:
    if not 1 <= n <= MAX_ENUM_N:
        raise ParameterDomainError(
            f"enumeration supports 1 <= n <= {MAX_ENUM_N} (got {n}); "
            "use the transfer matrix for larger n"
        )


def enumerate_configurations(n: int) -> Iterator[Configuration]:
    """All DWBC configurations, DFS over vertices in row-major order."""
    _check_enum_guard(n)
    h = [[LEFT] + [None] * n for _ in range(n)]
    v = [[UP] * n] + [[None] * n for _ in range(n)]

    def rec(idx: int) -> Iterator[Configuration]:
        if idx == n * n:
            yield Configuration(
                n, tuple(tuple(r) for r in h), tuple(tuple(r) for r in v)
            )
            return
        i, j = divmod(idx, n)
        left, bottom = h[i][j], v[i][j]
        for right in (LEFT, RIGHT):
            if j == n - 1 and right != RIGHT:
                continue
            for top in (DOWN, UP):
                if i == n - 1 and top != DOWN:
                    continue
                if (left, right, bottom, top) not in _VERTEX_TYPE:
                    continue
                h[i][j + 1] = right
                v[i + 1][j] = top
                yield from rec(idx + 1)

    yield from rec(0)


def _prepare_weights(w: Weights, exact: Optional[bool], ctx: PrecisionContext):
    """Weight values in the arithmetic picked by ``exact`` (None = rational
    inputs decide)."""
    if exact is None:
        exact = w.is_rational
    if exact:
        if not w.is_rational:
            raise ParameterDomainError(
                "exact mode needs rational weights (int or Fraction)"
            )
        return Fraction(w.a), Fraction(w.b), Fraction(w.c), Fraction(0)
    a, b, c = w.as_mpf()
    return a, b, c, mp.mpf(0)


def enumerate_dfs(
    n: int,
    w: Weights,
    exact: Optional[bool] = None,
    ctx: Optional[PrecisionContext] = None,
):
    """Z_n by explicit configuration enumeration.  Returns (Z_n, count)."""
    _check_enum_guard(n)
    ctx = ctx or DEFAULT_CONTEXT
    with ctx.guardprec():
        a, b, c, zero = _prepare_weights(w, exact, ctx)
        # DFS with incremental per-class tallies; weights applied at the leaves
        # through precomputed power tables.
        pow_a = [a**k for k in range(n * n + 1)]
        pow_b = [b**k for k in range(n * n + 1)]
        pow_c = [c**k for k in range(n * n + 1)]
        h = [[LEFT] + [None] * n for _ in range(n)]
        v = [[UP] * n] + [[None] * n for _ in range(n)]
        total = zero
        count = 0
        tallies = [0, 0, 0]
        get_class = _WEIGHT_CLASS
        get_type = _VERTEX_TYPE.get

        def rec(idx: int) -> None:
            nonlocal total, count
            if idx == n * n:
                total += pow_a[tallies[0]] * pow_b[tallies[1]] * pow_c[tallies[2]]
                count += 1
                return
            i, j = divmod(idx, n)
            left, bottom = h[i][j], v[i][j]
            for right in (LEFT, RIGHT):
                if j == n - 1 and right != RIGHT:
                    continue
                for top in (DOWN, UP):
                    if i == n - 1 and top != DOWN:
                        continue
                    vt = get_type((left, right, bottom, top))
                    if vt is None:
                        continue
                    cls = get_class[vt]
                    h[i][j + 1] = right
                    v[i + 1][j] = top
                    tallies[cls] += 1
                    rec(idx + 1)
                    tallies[cls] -= 1

        rec(0)
        return total, count


def transfer_matrix_zn(
    n: int,
    w: Weights,
    exact: Optional[bool] = None,
    ctx: Optional[PrecisionContext] = None,
):
    """Z_n by a row-scanning dynamic program over 2^n vertical-edge states.

    The frontier maps (vertical-edge bitmask, carried horizontal edge) to the
    accumulated weight; bit j set means the active vertical edge in column j
    points Up.  Agrees exactly with enumerate_dfs in rational mode.
    """
    if not 1 <= n <= MAX_TRANSFER_N:
        raise ParameterDomainError(
            f"transfer matrix supports 1 <= n <= {MAX_TRANSFER_N} (got {n}): "
            "memory grows as 2^n"
        )
    ctx = ctx or DEFAULT_CONTEXT
    with ctx.guardprec():
        a, b, c, zero = _prepare_weights(w, exact, ctx)
        value = {1: a, 2: a, 3: b, 4: b, 5: c, 6: c}
        cell = {}  # (left, bottom) -> list of (right, top, weight)
        for (l, r, bo, t), vt in _VERTEX_TYPE.items():
            cell.setdefault((l, bo), []).append((r, t, value[vt]))

        one = Fraction(1) if isinstance(a, Fraction) else mp.mpf(1)
        frontier = {(1 << n) - 1: one}  # bottom boundary: all Up
        for _ in range(n):
            states = {(mask, LEFT): wt for mask, wt in frontier.items()}
            for j in range(n):
                nxt = {}
                bit = 1 << j
                for (mask, carry), wt in states.items():
                    bottom = UP if mask & bit else DOWN
                    for right, top, val in cell.get((carry, bottom), ()):
                        if j == n - 1 and right != RIGHT:
                            continue
                        nmask = mask | bit if top == UP else mask & ~bit
                        key = (nmask, right)
                        acc = nxt.get(key)
                        nxt[key] = wt * val if acc is None else acc + wt * val
                states = nxt
            frontier = {mask: wt for (mask, carry), wt in states.items()}
        return frontier.get(0, zero)  # top boundary: all Down


def vertex_counts(cfg: Configuration) -> VertexCounts:
    """Tally vertex types; rejects configurations violating the ice rule or
    the domain wall boundary."""
    cfg.validate()
    counts = [0] * 6
    for i in range(cfg.n):
        for j in range(cfg.n):
            counts[cfg.type_at(i, j) - 1] += 1
    return VertexCounts(*counts)


def configuration_weight(cfg: Configuration, w: Weights, ctx: Optional[PrecisionContext] = None):
    """Product of vertex weights of one configuration."""
    vc = vertex_counts(cfg)
    if w.is_rational:
        a, b, c = Fraction(w.a), Fraction(w.b), Fraction(w.c)
        return a ** (vc.n1 + vc.n2) * b ** (vc.n3 + vc.n4) * c ** (vc.n5 + vc.n6)
    ctx = ctx or DEFAULT_CONTEXT
    with ctx.guardprec():
        a, b, c = w.as_mpf()
        return a ** (vc.n1 + vc.n2) * b ** (vc.n3 + vc.n4) * c ** (vc.n5 + vc.n6)


def gibbs_probability(
    cfg: Configuration, w: Weights, ctx: Optional[PrecisionContext] = None
):
    """Gibbs weight w(sigma)/Z_n of one configuration; exact for rational
    weights."""
    ctx = ctx or DEFAULT_CONTEXT
    weight = configuration_weight(cfg, w, ctx)
    z = transfer_matrix_zn(cfg.n, w, ctx=ctx)
    with ctx.guardprec():
        return weight / z
