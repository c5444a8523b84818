"""Permutation models of small finite simple groups, enumerated and indexed.

Every group is realised as a permutation group on a small natural action
(points ``0..d-1``) and enumerated by breadth-first closure from a fixed
generating set, so that element ``i`` has the same meaning on every run.

Products follow the right-action convention: ``(ab)[x] = b[a[x]]``, i.e. the
image of a point under ``ab`` is obtained by applying ``a`` first. With this
convention ``S^g = g^-1 S g`` and ``(S^h)^g = S^(hg)``.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product as iproduct
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .fields import field as gf, prime_power

DEFAULT_ORDER_CAP = 20000
# dense multiplication table up to this order (int16 -> 32 MB at the limit)
TABLE_LIMIT = 4096


class GroupError(ValueError):
    """Invalid group specification."""


class CapacityError(GroupError):
    """The requested group is larger than ``order_cap``."""


class InvariantViolation(AssertionError):
    """A proven fact about the group failed; the construction is wrong."""


class Family(str, enum.Enum):
    ALT = "Alt"
    PSL2 = "PSL2"
    PSL3 = "PSL3"
    CYCLIC = "Cyclic"


@dataclass(frozen=True)
class GroupSpec:
    family: Family
    param: int
    order_cap: int = DEFAULT_ORDER_CAP

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        fam, n = self.family, self.param
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise GroupError(f"parameter must be a positive integer, got {n!r}")
        if fam is Family.ALT and n < 3:
            raise GroupError(f"Alt({n}) is not supported (need n >= 3)")
        if fam in (Family.PSL2, Family.PSL3):
            if prime_power(n) is None:
                raise GroupError(f"{fam.value}({n}): {n} is not a prime power")
            if fam is Family.PSL2 and n in (2, 3):
                raise GroupError(f"PSL2({n}) is not simple and is rejected")

    @property
    def rank(self) -> int | None:
        return {Family.PSL2: 1, Family.PSL3: 2}.get(self.family)

    @property
    def q(self) -> int | None:
        return self.param if self.family in (Family.PSL2, Family.PSL3) else None

    @property
    def is_abelian(self) -> bool:
        return self.family is Family.CYCLIC or (self.family is Family.ALT and self.param == 3)

    @property
    def is_simple(self) -> bool:
        if self.family is Family.ALT:
            return self.param >= 5
        return self.family in (Family.PSL2, Family.PSL3)

    @property
    def expected_order(self) -> int:
        n = self.param
        if self.family is Family.ALT:
            return math.factorial(n) // 2
        if self.family is Family.PSL2:
            return n * (n * n - 1) // math.gcd(2, n - 1)
        if self.family is Family.PSL3:
            return n**3 * (n**3 - 1) * (n * n - 1) // math.gcd(3, n - 1)
        return n

    @property
    def name(self) -> str:
        return f"{self.family.value}({self.param})"

    def __str__(self) -> str:
        return self.name

    def to_dict(self) -> dict:
        return {"family": self.family.value, "param": int(self.param), "order_cap": self.order_cap}

    @classmethod
    def from_dict(cls, d: dict) -> "GroupSpec":
        return cls(Family(d["family"]), int(d["param"]), int(d.get("order_cap", DEFAULT_ORDER_CAP)))


_SPEC_PATTERNS = [
    (re.compile(r"^(?:alt|a)\(?(\d+)\)?$"), Family.ALT),
    (re.compile(r"^(?:psl2|psl\(2,|l2)\(?(\d+)\)?$"), Family.PSL2),
    (re.compile(r"^(?:psl3|psl\(3,|l3)\(?(\d+)\)?$"), Family.PSL3),
    (re.compile(r"^(?:cyclic|c|z)\(?(\d+)\)?$"), Family.CYCLIC),
]


def parse_spec(text: str | GroupSpec, order_cap: int = DEFAULT_ORDER_CAP) -> GroupSpec:
    """Parse ``Alt(5)``, ``A5``, ``PSL2(7)``, ``PSL(2,7)``, ``PSL3(2)``, ``Cyclic(12)``, ``C12``."""
    if isinstance(text, GroupSpec):
        return text
    key = text.strip().lower().replace(" ", "").replace("_", "")
    for pattern, fam in _SPEC_PATTERNS:
        m = pattern.match(key)
        if m:
            return GroupSpec(fam, int(m.group(1)), order_cap)
    raise GroupError(f"cannot parse group spec {text!r}")


# -- generators ---------------------------------------------------------------


def _cycle(degree: int, cycle: Sequence[int]) -> np.ndarray:
    images = np.arange(degree)
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        images[a] = b
    return images


def _projective_line_maps(q: int) -> list[np.ndarray]:
    F = gf(q)
    inf = q
    translate = np.array([F.add[x][1] for x in range(q)] + [inf])
    # x -> -1/x, with 0 <-> inf
    invert = np.array([inf] + [F.neg[F.inv[x]] for x in range(1, q)] + [0])
    gens = [translate, invert]
    if F.k > 1:
        # prime-field maps only reach PSL2(p); a square scaling spans the field
        w2 = F.mul[F.primitive][F.primitive]
        gens.append(np.array([F.mul[w2][x] for x in range(q)] + [inf]))
    return gens


def projective_plane_points(q: int) -> list[tuple[int, int, int]]:
    """Points of PG(2,q) as normalised triples (last nonzero coordinate 1), sorted."""
    pts = []
    for v in iproduct(range(q), repeat=3):
        nz = [c for c in v if c != 0]
        if nz and nz[-1] == 1:
            pts.append(v)
    return sorted(pts)


def _projective_plane_maps(q: int) -> list[np.ndarray]:
    F = gf(q)
    pts = projective_plane_points(q)
    where = {p: i for i, p in enumerate(pts)}

    def act(matrix):
        images = []
        for v in pts:
            w = [0, 0, 0]
            for j in range(3):
                acc = 0
                for i in range(3):
                    acc = F.add[acc][F.mul[v[i]][matrix[i][j]]]
                w[j] = acc
            last = next(c for c in reversed(w) if c != 0)
            li = F.inv[last]
            images.append(where[tuple(F.mul[c][li] for c in w)])
        return np.array(images)

    transvection = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    cyclic = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    mats = [transvection, cyclic]
    if F.k > 1:
        w = F.primitive
        mats.append([[w, 0, 0], [0, F.inv[w], 0], [0, 0, 1]])
    return [act(m) for m in mats]


def standard_generators(spec: GroupSpec) -> list[np.ndarray]:
    """The fixed generating set used to enumerate ``spec``.

    Alt(n): ``(0 1 2)`` and ``(0 1 ... n-1)`` (n odd) or ``(1 2 ... n-1)`` (n even).
    PSL2(q): ``x -> x+1`` and ``x -> -1/x`` on the projective line with infinity
    as the last point, plus ``x -> w^2 x`` when q is not prime.
    PSL3(q): the transvection ``I + E12`` and the cyclic coordinate shift acting
    on sorted normalised points of PG(2,q), plus ``diag(w, 1/w, 1)`` when q is
    not prime.
    Cyclic(n): the n-cycle (identity for n = 1).
    """
    fam, n = spec.family, spec.param
    if fam is Family.ALT:
        long = list(range(n)) if n % 2 else list(range(1, n))
        return [_cycle(n, [0, 1, 2]), _cycle(n, long)]
    if fam is Family.PSL2:
        return _projective_line_maps(n)
    if fam is Family.PSL3:
        return _projective_plane_maps(n)
    return [_cycle(n, list(range(n))) if n > 1 else np.arange(1)]


# -- indexed group ------------------------------------------------------------


def _choose_base(perms: np.ndarray) -> np.ndarray:
    """Smallest prefix of points whose images determine each element."""
    order, degree = perms.shape
    for k in range(1, degree + 1):
        codes = _encode(perms[:, :k], degree)
        if len(np.unique(codes)) == order:
            return np.arange(k)
    raise InvariantViolation("duplicate permutations in enumeration")


def _encode(images: np.ndarray, degree: int) -> np.ndarray:
    if degree ** images.shape[-1] >= 2**62:
        raise GroupError("degree too large for base encoding")
    weights = degree ** np.arange(images.shape[-1], dtype=np.int64)
    return images.astype(np.int64) @ weights


class IndexedGroup:
    """A finite permutation group with every element numbered.

    ``perms[i]`` is the image array of element ``i``; element 0 is the identity.
    Products and inverses are exposed as index operations (:meth:`mul`,
    :attr:`inv`). For orders up to :data:`TABLE_LIMIT` a dense multiplication
    table is built on first use.
    """

    def __init__(self, spec: GroupSpec, perms: np.ndarray, generators: list[np.ndarray]):
        self.spec = spec
        self.perms = perms
        self.perms.setflags(write=False)
        self.order, self.degree = perms.shape
        self.generators = generators
        self._base = _choose_base(perms)
        codes = _encode(perms[:, self._base], self.degree)
        self._sorter = np.argsort(codes, kind="stable")
        self._sorted_codes = codes[self._sorter]
        self.generator_indices = [self.index_of(g) for g in generators]
        identity = np.arange(self.degree)
        if not np.array_equal(perms[0], identity):
            raise InvariantViolation("element 0 is not the identity")
        inverse_perms = np.empty_like(perms)
        np.put_along_axis(inverse_perms, perms, np.broadcast_to(identity, perms.shape), axis=1)
        self.inv = self._lookup(inverse_perms[:, self._base])
        self.inv.setflags(write=False)

    def __repr__(self) -> str:
        return f"IndexedGroup({self.spec.name}, order={self.order}, degree={self.degree})"

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def identity(self) -> int:
        return 0

    def _lookup(self, base_images: np.ndarray) -> np.ndarray:
        codes = _encode(base_images, self.degree)
        pos = np.searchsorted(self._sorted_codes, codes)
        return self._sorter[pos]

    def index_of(self, perm) -> int:
        perm = np.asarray(perm)
        i = int(self._lookup(perm[self._base][None, :])[0])
        if not np.array_equal(self.perms[i], perm):
            raise KeyError("permutation is not an element of this group")
        return i

    @cached_property
    def table(self) -> np.ndarray | None:
        if self.order > TABLE_LIMIT:
            return None
        dtype = np.int16 if self.order < 2**15 else np.int32
        out = np.empty((self.order, self.order), dtype=dtype)
        base_imgs = self.perms[:, self._base]
        for b in range(self.order):
            # (a b)[x] = b[a[x]] on base points, for every a
            out[:, b] = self._lookup(self.perms[b][base_imgs])
        out.setflags(write=False)
        return out

    def mul(self, a, b) -> np.ndarray:
        """Elementwise product of index arrays ``a`` and ``b`` (broadcasting)."""
        a = np.asarray(a)
        b = np.asarray(b)
        table = self.table
        if table is not None:
            return table[a, b].astype(np.intp, copy=False)
        a, b = np.broadcast_arrays(a, b)
        base_imgs = self.perms[a][..., self._base]
        imgs = np.take_along_axis(self.perms[b], base_imgs, axis=-1)
        return self._lookup(imgs)

    def mul_slow(self, a: int, b: int) -> int:
        """Product by direct permutation composition; independent of the table."""
        return self.index_of(self.perms[b][self.perms[a]])

    def conj(self, s, g) -> np.ndarray:
        """``g^-1 s g`` elementwise."""
        g = np.asarray(g)
        return self.mul(self.mul(self.inv[g], s), g)

    def element_order(self, i: int) -> int:
        n, x = 1, i
        while x != 0:
            x = int(self.mul(x, i))
            n += 1
        return n

    @cached_property
    def classes(self) -> "ClassPartition":
        return conjugacy_classes(self)

    def write_cache(self, path: str | Path) -> None:
        """One line per element in index order: the image array, space separated."""
        lines = [" ".join(map(str, p)) for p in self.perms.tolist()]
        Path(path).write_text("\n".join(lines) + "\n")


def read_cache(spec: GroupSpec, path: str | Path) -> IndexedGroup:
    rows = [list(map(int, line.split())) for line in Path(path).read_text().splitlines() if line.strip()]
    perms = np.array(rows, dtype=np.int16 if len(rows[0]) < 2**15 else np.int32)
    if len(perms) != spec.expected_order:
        raise GroupError(f"cache holds {len(perms)} elements, {spec.name} has {spec.expected_order}")
    return IndexedGroup(spec, perms, standard_generators(spec))


def _bfs_closure(gens: list[np.ndarray], degree: int, cap: int, name: str) -> np.ndarray:
    identity = tuple(range(degree))
    seen = {identity: 0}
    elements = [identity]
    head = 0
    gen_lists = [g.tolist() for g in gens]
    while head < len(elements):
        e = elements[head]
        head += 1
        for g in gen_lists:
            prod = tuple(g[x] for x in e)
            if prod not in seen:
                seen[prod] = len(elements)
                elements.append(prod)
                if len(elements) > cap:
                    raise CapacityError(f"{name}: order exceeds order_cap={cap} (at least {len(elements)} elements)")
    return np.array(elements, dtype=np.int16)


def build_group(spec: GroupSpec | str) -> IndexedGroup:
    """Enumerate ``spec`` by breadth-first closure from :func:`standard_generators`."""
    spec = parse_spec(spec)
    expected = spec.expected_order
    if expected > spec.order_cap:
        raise CapacityError(f"{spec.name} has order {expected} > order_cap={spec.order_cap}")
    gens = standard_generators(spec)
    degree = len(gens[0])
    perms = _bfs_closure(gens, degree, spec.order_cap, spec.name)
    if len(perms) != expected:
        raise InvariantViolation(f"{spec.name}: enumerated {len(perms)} elements, expected {expected}")
    return IndexedGroup(spec, perms, gens)


@lru_cache(maxsize=32)
def get_group(spec: GroupSpec | str) -> IndexedGroup:
    """Cached :func:`build_group`; groups are immutable and shareable."""
    return build_group(parse_spec(spec))


# -- conjugacy classes --------------------------------------------------------


@dataclass(frozen=True)
class ClassPartition:
    class_of: np.ndarray
    class_sizes: np.ndarray
    class_reps: np.ndarray

    @property
    def count(self) -> int:
        return len(self.class_sizes)

    def members(self, cid: int) -> np.ndarray:
        return np.flatnonzero(self.class_of == cid)

    @property
    def minclass(self) -> int:
        return int(self.class_sizes[1:].min()) if self.count > 1 else 0


def conjugacy_classes(G: IndexedGroup) -> ClassPartition:
    """Orbits of conjugation by the generators, numbered by smallest member."""
    n = G.order
    idx = np.arange(n)
    rows, cols = [], []
    for g in G.generator_indices:
        rows.append(idx)
        cols.append(G.conj(idx, g))
    graph = coo_matrix((np.ones(n * len(rows)), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    # relabel so that class ids follow the smallest element index
    first = np.full(labels.max() + 1, n)
    np.minimum.at(first, labels, idx)
    order = np.argsort(first)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    class_of = relabel[labels]
    sizes = np.bincount(class_of)
    reps = np.sort(first)
    for arr in (class_of, sizes, reps):
        arr.setflags(write=False)
    return ClassPartition(class_of, sizes, reps)


# -- invariants ---------------------------------------------------------------


def mindeg_lower_bound(spec: GroupSpec) -> int | None:
    """Lower bound on the smallest nontrivial projective degree; PSL2 only."""
    if spec.family is not Family.PSL2:
        return None
    q = spec.param
    if q == 4:
        return 2
    if q == 9:
        return 3
    return (q - 1) // math.gcd(2, q - 1)


@dataclass(frozen=True)
class GroupInvariants:
    order: int
    minclass: int
    mindeg_lb: int | None
    rank: int | None
    q: int | None
    class_sizes: tuple[int, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "minclass": self.minclass,
            "mindeg_lb": self.mindeg_lb,
            "rank": self.rank,
            "q": self.q,
            "class_sizes": list(self.class_sizes),
        }


def invariants(G: IndexedGroup) -> GroupInvariants:
    """Order, minclass and (for PSL2) the mindeg lower bound, with the known bounds asserted.

    For PSL2(q), ``q^r <= minclass < |G| <= q^(8 r^2)`` and ``|G| < k^(8 r^2)``
    are theorems; a failure raises :class:`InvariantViolation`.
    """
    spec = G.spec
    cp = G.classes
    inv = GroupInvariants(
        order=G.order,
        minclass=cp.minclass,
        mindeg_lb=mindeg_lower_bound(spec),
        rank=spec.rank,
        q=spec.q,
        class_sizes=tuple(int(s) for s in cp.class_sizes),
    )
    if spec.family is Family.PSL2:
        q, r, k = spec.q, spec.rank, inv.mindeg_lb
        if not (q**r <= inv.minclass < G.order <= q ** (8 * r * r)):
            raise InvariantViolation(f"{spec.name}: minclass/order bounds fail ({inv})")
        if not G.order < k ** (8 * r * r):
            raise InvariantViolation(f"{spec.name}: |G| < k^8 fails with k={k}")
    return inv
