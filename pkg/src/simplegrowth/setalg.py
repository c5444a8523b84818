"""Subset algebra over an :class:`IndexedGroup`.

An :class:`ElementSet` is a boolean membership vector over element indices.
The kernels here (products, conjugates, translates, powers, closures) are what
every other module calls, so they are written to be vectorised and to stop as
soon as a product covers the whole group.
"""

from __future__ import annotations

import hashlib
from typing import Iterable

import numpy as np

from .groups import IndexedGroup

# max number of pairwise products materialised at once
CHUNK = 1 << 22


class GroupMismatch(ValueError):
    pass


class ElementSet:
    """An immutable subset of a finite group."""

    __slots__ = ("group", "mask", "_idx")

    def __init__(self, group: IndexedGroup, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (group.order,):
            raise ValueError(f"mask has shape {mask.shape}, expected ({group.order},)")
        mask.setflags(write=False)
        self.group = group
        self.mask = mask
        self._idx = None

    @classmethod
    def from_indices(cls, group: IndexedGroup, indices: Iterable[int]) -> "ElementSet":
        mask = np.zeros(group.order, dtype=bool)
        idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.intp)
        if idx.size and (idx.min() < 0 or idx.max() >= group.order):
            raise IndexError("element index out of range")
        mask[idx] = True
        return cls(group, mask)

    @classmethod
    def full(cls, group: IndexedGroup) -> "ElementSet":
        return cls(group, np.ones(group.order, dtype=bool))

    @classmethod
    def identity(cls, group: IndexedGroup) -> "ElementSet":
        return cls.from_indices(group, [0])

    @property
    def indices(self) -> np.ndarray:
        if self._idx is None:
            self._idx = np.flatnonzero(self.mask)
            self._idx.setflags(write=False)
        return self._idx

    @property
    def card(self) -> int:
        return len(self.indices)

    def __len__(self) -> int:
        return self.card

    def __contains__(self, i) -> bool:
        return bool(self.mask[i])

    def __iter__(self):
        return iter(self.indices.tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.group is other.group and np.array_equal(self.mask, other.mask)

    def __hash__(self) -> int:
        return hash((id(self.group), self.mask.tobytes()))

    def __or__(self, other: "ElementSet") -> "ElementSet":
        _same(self, other)
        return ElementSet(self.group, self.mask | other.mask)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        _same(self, other)
        return ElementSet(self.group, self.mask & other.mask)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        _same(self, other)
        return ElementSet(self.group, self.mask & ~other.mask)

    def __le__(self, other: "ElementSet") -> bool:
        _same(self, other)
        return not np.any(self.mask & ~other.mask)

    def __mul__(self, other: "ElementSet") -> "ElementSet":
        return product(self, other)

    def __repr__(self) -> str:
        shown = self.indices[:8].tolist()
        more = "..." if self.card > 8 else ""
        return f"ElementSet({self.group.name}, card={self.card}, {shown}{more})"

    def to_list(self) -> list[int]:
        return self.indices.tolist()

    def digest(self) -> str:
        """Canonical hash of the set: sha256 of the packed membership bits."""
        return hashlib.sha256(np.packbits(self.mask).tobytes()).hexdigest()[:16]


def _same(*sets: ElementSet) -> None:
    g = sets[0].group
    for s in sets[1:]:
        if s.group is not g:
            raise GroupMismatch(f"sets belong to different groups ({g.name} vs {s.group.name})")


def product(A: ElementSet, B: ElementSet) -> ElementSet:
    """``{ab : a in A, b in B}``."""
    return _product(A, B, stop_when_full=True)


def _product(A: ElementSet, B: ElementSet, stop_when_full: bool) -> ElementSet:
    _same(A, B)
    G = A.group
    out = np.zeros(G.order, dtype=bool)
    a, b = A.indices, B.indices
    if len(a) == 0 or len(b) == 0:
        return ElementSet(G, out)
    # chunk over the smaller operand, keeping the larger one whole
    if len(a) <= len(b):
        step = max(1, CHUNK // len(b))
        for start in range(0, len(a), step):
            out[G.mul(a[start : start + step, None], b[None, :]).ravel()] = True
            if stop_when_full and out.all():
                break
    else:
        step = max(1, CHUNK // len(a))
        for start in range(0, len(b), step):
            out[G.mul(a[:, None], b[None, start : start + step]).ravel()] = True
            if stop_when_full and out.all():
                break
    return ElementSet(G, out)


def product_many(*sets: ElementSet) -> ElementSet:
    """Left fold of :func:`product`."""
    acc = sets[0]
    for s in sets[1:]:
        acc = product(acc, s)
    return acc


def conjugate(S: ElementSet, g: int) -> ElementSet:
    """``S^g = g^-1 S g``."""
    G = S.group
    return ElementSet.from_indices(G, G.conj(S.indices, int(g)))


def translate(S: ElementSet, g: int, side: str = "right") -> ElementSet:
    """``Sg`` (``side="right"``) or ``gS`` (``side="left"``)."""
    G = S.group
    if side == "right":
        idx = G.mul(S.indices, int(g))
    elif side == "left":
        idx = G.mul(int(g), S.indices)
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return ElementSet.from_indices(G, idx)


def inverse(S: ElementSet) -> ElementSet:
    G = S.group
    return ElementSet.from_indices(G, G.inv[S.indices])


def power(S: ElementSet, m: int) -> ElementSet:
    if m < 1:
        raise ValueError("power requires m >= 1")
    acc = S
    for _ in range(m - 1):
        if acc.card == S.group.order:
            break
        acc = product(acc, S)
    return acc


def closure(S: ElementSet) -> ElementSet:
    """The subgroup generated by ``S`` (breadth-first over right multiplication)."""
    G = S.group
    seen = np.zeros(G.order, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    gens = S.indices
    if len(gens) == 0:
        return ElementSet(G, seen)
    while len(frontier):
        nxt = np.unique(G.mul(frontier[:, None], gens[None, :]).ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return ElementSet(G, seen)


def generates(S: ElementSet) -> bool:
    return closure(S).card == S.group.order


def is_full(S: ElementSet) -> bool:
    return S.card == S.group.order


def cube_is_full(S: ElementSet) -> bool:
    if S.card == 0:
        return False
    return is_full(product(product(S, S), S))


def is_normal(S: ElementSet) -> bool:
    """Invariant under conjugation by every generator of the group."""
    return all(conjugate(S, g) == S for g in S.group.generator_indices)


def middle_product_sizes(S: ElementSet, middles, right: ElementSet | None = None) -> np.ndarray:
    """``|S h R|`` for every ``h`` in ``middles`` (``R`` defaults to ``S``).

    Note ``|S S^g| = |S g^-1 S|``, so conjugate-growth scans reduce to this.
    """
    G = S.group
    R = S if right is None else right
    _same(S, R)
    s, r = S.indices, R.indices
    middles = np.asarray(middles, dtype=np.intp)
    out = np.empty(len(middles), dtype=np.int64)
    if len(s) == 0 or len(r) == 0:
        out[:] = 0
        return out
    per = len(s) * len(r)
    step = max(1, min(CHUNK // per, CHUNK // G.order))
    rows = np.arange(step)[:, None]
    scratch = np.zeros((step, G.order), dtype=bool)
    for start in range(0, len(middles), step):
        h = middles[start : start + step]
        sh = G.mul(s[None, :], h[:, None])  # (len(h), |S|)
        vals = G.mul(sh[:, :, None], r[None, None, :]).reshape(len(h), per)
        scratch[: len(h)] = False
        scratch[rows[: len(h)], vals] = True
        out[start : start + len(h)] = scratch[: len(h)].sum(axis=1)
    return out


def conjugate_growth_sizes(S: ElementSet, conjugators=None) -> np.ndarray:
    """``|S S^g|`` for each ``g`` (default: every element, in index order)."""
    G = S.group
    g = np.arange(G.order) if conjugators is None else np.asarray(conjugators, dtype=np.intp)
    return middle_product_sizes(S, G.inv[g])
