"""Type-A quivers: orientation words, Euler form, Hom/Ext and orbit codimension.

Two independent routes to the codimension of the orbit of ``V_eta`` live
here.  :func:`codim_condition` sums ``m_I m_J`` over interval pairs that
match one of three combinatorial patterns.  :func:`codim_oracle` computes
``dim Ext^1(V_eta, V_eta)`` from an exact kernel computation of the
morphism equations and the Euler form, and never looks at those patterns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .lacing import Interval, LaceClass, PermSeq, dim_vector, intervals


class DimensionMismatch(ValueError):
    pass


class NegativeExt(RuntimeError):
    """dim Hom - Euler form came out negative; signals a bug, never bad input."""


class BadOrientation(ValueError):
    pass


@dataclass(frozen=True)
class OrientationWord:
    """Arrow ``a_i`` joins vertices ``i`` and ``i+1``; ``R`` points to ``i+1``."""

    arrows: str

    def __post_init__(self):
        word = self.arrows.strip().upper()
        if any(ch not in "RL" for ch in word):
            raise BadOrientation(f"orientation must be a word in R/L, got {self.arrows!r}")
        object.__setattr__(self, "arrows", word)

    @property
    def n(self) -> int:
        return len(self.arrows) + 1

    def direction(self, i: int) -> str:
        """Direction of ``a_i`` (1-based)."""
        if not 1 <= i <= len(self.arrows):
            raise IndexError(f"no arrow a_{i} for n = {self.n}")
        return self.arrows[i - 1]

    def tail_head(self, i: int) -> tuple[int, int]:
        return (i, i + 1) if self.direction(i) == "R" else (i + 1, i)

    def arrow_list(self) -> list[tuple[int, int]]:
        return [self.tail_head(i) for i in range(1, self.n)]

    def reversed_arrows(self) -> OrientationWord:
        """The opposite quiver (every arrow flipped)."""
        return OrientationWord(self.arrows.translate(str.maketrans("RL", "LR")))

    def __str__(self) -> str:
        return self.arrows


def all_orientations(n: int) -> list[OrientationWord]:
    return [OrientationWord("".join(p)) for p in product("RL", repeat=max(n - 1, 0))]


def wq(Q: OrientationWord) -> PermSeq:
    """Permutation sequence attached to an orientation.

    ``w^(i)`` extends ``w^(i-1)`` when ``a_{i-2}`` and ``a_{i-1}`` agree, and
    extends ``w^(i-1) w_0`` (the one-line word reversed) when they disagree.
    """
    perms: list[tuple[int, ...]] = [(1,)]
    if Q.n >= 2:
        perms.append((1, 2))
    for i in range(3, Q.n + 1):
        prev = perms[-1]
        if Q.direction(i - 2) == Q.direction(i - 1):
            perms.append(prev + (i,))
        else:
            perms.append(tuple(reversed(prev)) + (i,))
    return PermSeq(tuple(perms))


def euler_form(Q: OrientationWord, d1: Sequence[int], d2: Sequence[int]) -> int:
    if len(d1) != Q.n or len(d2) != Q.n:
        raise DimensionMismatch(
            f"dimension vectors of length {len(d1)}, {len(d2)} for n = {Q.n}"
        )
    vertex = sum(x * y for x, y in zip(d1, d2))
    arrow = sum(d1[t - 1] * d2[h - 1] for t, h in Q.arrow_list())
    return vertex - arrow


def interval_dim(I: Interval, n: int) -> tuple[int, ...]:
    return tuple(1 if x in I else 0 for x in range(1, n + 1))


# -- exact linear algebra -----------------------------------------------------


def rank(rows: list[list[int]], ncols: int) -> int:
    """Rank over the rationals by Gaussian elimination with ``Fraction``."""
    mat = [[Fraction(x) for x in r] for r in rows if any(r)]
    rk = 0
    for col in range(ncols):
        pivot = next((r for r in range(rk, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rk], mat[pivot] = mat[pivot], mat[rk]
        prow = mat[rk]
        inv = 1 / prow[col]
        for r in range(rk + 1, len(mat)):
            f = mat[r][col]
            if f:
                f *= inv
                row = mat[r]
                for c in range(col, ncols):
                    if prow[c]:
                        row[c] -= f * prow[c]
        rk += 1
        if rk == len(mat):
            break
    return rk


def _basis(eta: LaceClass, x: int) -> list[tuple[Interval, int]]:
    """Basis of ``(V_eta)_x``: one vector per strand copy passing through ``x``."""
    return [(iv, c) for iv, v in eta.strands if x in iv for c in range(v)]


def hom_dim(Q: OrientationWord, eta1: LaceClass, eta2: LaceClass) -> int:
    """``dim Hom(V_eta1, V_eta2)`` as the nullity of the morphism equations.

    Unknowns are the entries of ``T_x : (V_eta1)_x -> (V_eta2)_x``; each
    arrow ``a: t -> h`` contributes ``T_h V_a - W_a T_t = 0``.  The structure
    maps send a strand's basis vector at ``t`` to the same strand's vector at
    ``h`` when the strand covers both, and to zero otherwise.
    """
    if eta1.n != Q.n or eta2.n != Q.n:
        raise DimensionMismatch("lace classes and quiver disagree on n")
    src = {x: _basis(eta1, x) for x in range(1, Q.n + 1)}
    dst = {x: _basis(eta2, x) for x in range(1, Q.n + 1)}
    var: dict[tuple[int, int, int], int] = {}
    for x in range(1, Q.n + 1):
        for r in range(len(dst[x])):
            for c in range(len(src[x])):
                var[(x, r, c)] = len(var)
    nvars = len(var)
    if nvars == 0:
        return 0
    rows: list[list[int]] = []
    for t, h in Q.arrow_list():
        # V_a[c'][c] = 1 iff source basis c at t and c' at h are the same strand copy
        v_map = {c: cp for c, b in enumerate(src[t]) for cp, bp in enumerate(src[h]) if b == bp}
        w_map = {rp: r for rp, b in enumerate(dst[t]) for r, bh in enumerate(dst[h]) if b == bh}
        for r in range(len(dst[h])):
            for c in range(len(src[t])):
                row = [0] * nvars
                if c in v_map:
                    row[var[(h, r, v_map[c])]] += 1
                for rp, r_img in w_map.items():
                    if r_img == r:
                        row[var[(t, rp, c)]] -= 1
                rows.append(row)
    return nvars - rank(rows, nvars)


def ext_dim(Q: OrientationWord, eta1: LaceClass, eta2: LaceClass) -> int:
    value = hom_dim(Q, eta1, eta2) - euler_form(Q, dim_vector(eta1), dim_vector(eta2))
    if value < 0:
        raise NegativeExt(f"negative Ext dimension {value} for {eta1} and {eta2}")
    return value


def codim_oracle(Q: OrientationWord, eta: LaceClass) -> int:
    """``dim Ext^1(V_eta, V_eta)`` via the Hom kernel and the Euler form."""
    return ext_dim(Q, eta, eta)


# -- combinatorial side ---------------------------------------------------------


def is_condition_strand(Q: OrientationWord, I: Interval, J: Interval) -> bool:
    """Whether ``(I, J)`` is one of the three codimension-contributing patterns.

    (I)   ``I = [w, x-1]``, ``J = [x, z]``.
    (II)  ``I = [w, y]``, ``J = [x, z]``, ``w < x <= y < z``, ``a_{x-1}`` and
          ``a_y`` pointing the same way.
    (III) ``I = [x, y]``, ``J = [w, z]``, ``w < x <= y < z``, ``a_{x-1}`` and
          ``a_y`` pointing opposite ways.
    """
    (i1, i2), (j1, j2) = I, J
    if i2 + 1 == j1:
        return True
    if i1 < j1 <= i2 < j2:
        return Q.direction(j1 - 1) == Q.direction(i2)
    if j1 < i1 <= i2 < j2:
        return Q.direction(i1 - 1) != Q.direction(i2)
    return False


def condition_strands(Q: OrientationWord) -> set[tuple[Interval, Interval]]:
    ivs = intervals(Q.n)
    return {(I, J) for I in ivs for J in ivs if is_condition_strand(Q, I, J)}


def box_strand_tuples(w: PermSeq, n: int | None = None):
    """``((i, j, k, l), (I, J))`` for every index tuple ``i < j <= k <= l``."""
    n = w.n if n is None else n
    out = []
    for k in range(2, n + 1):
        for l in range(k, n + 1):
            for j in range(2, k + 1):
                for i in range(1, j):
                    pair = (Interval(w(k, i), k - 1), Interval(w(k, j), l))
                    out.append(((i, j, k, l), pair))
    return out


def box_strands(w: PermSeq, n: int | None = None) -> set[tuple[Interval, Interval]]:
    return {pair for _, pair in box_strand_tuples(w, n)}


def codim_condition(Q: OrientationWord, eta: LaceClass) -> int:
    if eta.n != Q.n:
        raise DimensionMismatch("lace class and quiver disagree on n")
    total = 0
    for I, mi in eta.strands:
        for J, mj in eta.strands:
            if is_condition_strand(Q, I, J):
                total += mi * mj
    return total


def parse_orientation(text: str) -> OrientationWord:
    return OrientationWord(text)
