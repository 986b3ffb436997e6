"""Finite bounded lattices with explicit order/meet/join tables.

Elements are integers 0..n-1. The order is stored as upper-cone bitmasks,
so all comparisons are O(1) and set-level arguments stay cheap for the
sizes this package targets (capacity default: 64 elements).
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from typing import Union

from .errors import CapacityError, StructuralError

OrderInput = Union[Iterable[tuple[int, int]], Callable[[int, int], bool]]

DEFAULT_MAX_ELEMENTS = 64


def _mask_iter(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Lattice:
    """A finite lattice: reflexive/antisymmetric/transitive order with all
    binary meets and joins (hence bounded)."""

    __slots__ = ("n", "_up", "_down", "meet", "join", "top", "bottom")

    def __init__(self, n: int, up: tuple[int, ...], meet: tuple[tuple[int, ...], ...],
                 join: tuple[tuple[int, ...], ...], top: int, bottom: int):
        self.n = n
        self._up = up
        self._down = tuple(
            sum(1 << i for i in range(n) if up[i] >> j & 1) for j in range(n)
        )
        self.meet = meet
        self.join = join
        self.top = top
        self.bottom = bottom

    # -- construction ---------------------------------------------------

    @classmethod
    def from_le(
        cls, n: int, le: OrderInput, *, max_elements: int | None = DEFAULT_MAX_ELEMENTS
    ) -> "Lattice":
        """Build from an explicit order. Raises StructuralError (with the
        failing pair as witness) if the input is not a lattice order, and
        CapacityError beyond the element bound (pass None to lift it)."""
        if n < 1:
            raise StructuralError("a lattice needs at least one element", witness=n)
        if max_elements is not None and n > max_elements:
            raise CapacityError(
                f"{n} elements exceed the lattice bound {max_elements}",
                bound=max_elements, requested=n,
            )
        if callable(le):
            up = tuple(
                sum(1 << j for j in range(n) if le(i, j)) for i in range(n)
            )
        else:
            up_list = [0] * n
            for i, j in le:
                if not (0 <= i < n and 0 <= j < n):
                    raise StructuralError("order pair out of range", witness=(i, j))
                up_list[i] |= 1 << j
            up = tuple(up_list)

        for i in range(n):
            if not up[i] >> i & 1:
                raise StructuralError("order not reflexive", witness=(i, i))
        for i in range(n):
            for j in _mask_iter(up[i]):
                if i != j and up[j] >> i & 1:
                    raise StructuralError("order not antisymmetric", witness=(i, j))
                if up[j] & ~up[i]:
                    k = next(_mask_iter(up[j] & ~up[i]))
                    raise StructuralError("order not transitive", witness=(i, j, k))

        down = tuple(
            sum(1 << i for i in range(n) if up[i] >> j & 1) for j in range(n)
        )
        meet_rows = []
        join_rows = []
        for i in range(n):
            meet_row = []
            join_row = []
            for j in range(n):
                lower = down[i] & down[j]
                glb = _unique_greatest(up, lower)
                if glb is None:
                    raise StructuralError("pair has no greatest lower bound", witness=(i, j))
                meet_row.append(glb)
                upper = up[i] & up[j]
                lub = _unique_least(down, upper)
                if lub is None:
                    raise StructuralError("pair has no least upper bound", witness=(i, j))
                join_row.append(lub)
            meet_rows.append(tuple(meet_row))
            join_rows.append(tuple(join_row))

        top = 0
        bottom = 0
        for i in range(n):
            top = join_rows[top][i]
            bottom = meet_rows[bottom][i]
        return cls(n, up, tuple(meet_rows), tuple(join_rows), top, bottom)

    @classmethod
    def chain(cls, n: int) -> "Lattice":
        return cls.from_le(n, lambda i, j: i <= j)

    @classmethod
    def boolean(cls, k: int) -> "Lattice":
        """Powerset of a k-element set, ordered by inclusion."""
        return cls.from_le(1 << k, lambda i, j: i & ~j == 0)

    @classmethod
    def diamond_m3(cls) -> "Lattice":
        """0 < a,b,c < 1 with a,b,c pairwise incomparable."""
        return cls.from_le(5, lambda i, j: i == j or i == 0 or j == 4)

    @classmethod
    def pentagon_n5(cls) -> "Lattice":
        """0 < a < c < 1 and 0 < b < 1 with b incomparable to a, c."""
        pairs = {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (0, 4), (4, 3), (1, 2)}
        return cls.from_le(5, lambda i, j: i == j or (i, j) in pairs)

    @classmethod
    def product(cls, a: "Lattice", b: "Lattice") -> "Lattice":
        def le(x: int, y: int) -> bool:
            xa, xb = divmod(x, b.n)
            ya, yb = divmod(y, b.n)
            return a.leq(xa, ya) and b.leq(xb, yb)

        return cls.from_le(a.n * b.n, le)

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> "Lattice":
        """Lattice of the given bitmask family ordered by inclusion.
        The family must be closed enough to be a lattice; validated."""
        ms = tuple(masks)
        return cls.from_le(len(ms), lambda i, j: ms[i] & ~ms[j] == 0)

    # -- queries ---------------------------------------------------------

    def leq(self, i: int, j: int) -> bool:
        return bool(self._up[i] >> j & 1)

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def meet_of(self, i: int, j: int) -> int:
        return self.meet[i][j]

    def join_of(self, i: int, j: int) -> int:
        return self.join[i][j]

    def meet_all(self, items: Iterable[int]) -> int:
        acc = self.top
        for x in items:
            acc = self.meet[acc][x]
        return acc

    def join_all(self, items: Iterable[int]) -> int:
        acc = self.bottom
        for x in items:
            acc = self.join[acc][x]
        return acc

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges (i, j) with i covered by j."""
        out = []
        for i in range(self.n):
            strict = self._up[i] & ~(1 << i)
            for j in _mask_iter(strict):
                between = strict & self._down[j] & ~(1 << j)
                if between == 0:
                    out.append((i, j))
        return out

    def le_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _mask_iter(self._up[i])]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Lattice)
            and self.n == other.n
            and self._up == other._up
        )

    def __hash__(self) -> int:
        return hash((self.n, self._up))

    def __repr__(self) -> str:
        return f"Lattice(n={self.n}, covers={self.covers()})"


def _unique_greatest(up: tuple[int, ...], mask: int) -> int | None:
    for i in _mask_iter(mask):
        if all(up[k] >> i & 1 for k in _mask_iter(mask)):
            return i
    return None


def _unique_least(down: tuple[int, ...], mask: int) -> int | None:
    for i in _mask_iter(mask):
        if all(down[k] >> i & 1 for k in _mask_iter(mask)):
            return i
    return None


def is_monotone(f: tuple[int, ...], src: Lattice, dst: Lattice) -> bool:
    return all(
        dst.leq(f[i], f[j])
        for i in range(src.n)
        for j in _mask_iter(src.up_mask(i))
    )


def is_bounded_hom(f: tuple[int, ...], src: Lattice, dst: Lattice) -> tuple[bool, object]:
    """Check f preserves binary meet/join and both bounds.
    Returns (ok, witness); witness names the broken law and pair."""
    if f[src.top] != dst.top:
        return False, ("top", src.top)
    if f[src.bottom] != dst.bottom:
        return False, ("bottom", src.bottom)
    for i in range(src.n):
        for j in range(i, src.n):
            if f[src.meet[i][j]] != dst.meet[f[i]][f[j]]:
                return False, ("meet", (i, j))
            if f[src.join[i][j]] != dst.join[f[i]][f[j]]:
                return False, ("join", (i, j))
    return True, None


def is_order_iso(f: tuple[int, ...], src: Lattice, dst: Lattice) -> bool:
    """f is a bijection with i <= j iff f(i) <= f(j)."""
    if src.n != dst.n or len(set(f)) != src.n:
        return False
    return all(
        src.leq(i, j) == dst.leq(f[i], f[j])
        for i in range(src.n)
        for j in range(src.n)
    )
