"""Finite groups of unimodular integer matrices.

A :class:`MatrixGroup` is the closure of a generating set of integer
matrices with determinant +1 or -1.  Elements are kept sorted
lexicographically by their rows; every deterministic iteration order in
the package (conjugacy classes, class representatives, report layouts)
derives from that single convention.

The module also provides subgroups tied to a parent group, generic orbit
and stabilizer computations for group actions on finite sets, and the
conjugation-transpose "dual" homomorphism that matches a group acting on
a lattice with the induced group acting on the dual lattice.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from .algebra.classfun import ClassFun
from .errors import CapExceeded, NonInvertible, NotAnAction, SubgroupMismatch
from .geometry.intlinalg import IntMatrix, det

GROUP_CAP_DEFAULT = 10080


def inverse_unimodular(matrix: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +1 or -1."""
    d = det(matrix)
    if d not in (1, -1):
        raise NonInvertible(f"matrix has determinant {d}, not +-1")
    n = matrix.nrows
    if n == 0:
        return matrix
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = IntMatrix(
                tuple(
                    tuple(matrix.rows[r][c] for c in range(n) if c != j)
                    for r in range(n)
                    if r != i
                )
            )
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return IntMatrix(adj).scale(d)


def generate_group(
    generators: Sequence[IntMatrix],
    cap: int = GROUP_CAP_DEFAULT,
    rank: int | None = None,
) -> "MatrixGroup":
    """Close a generating set under multiplication.

    An empty generating set yields the trivial group (of the given
    ``rank``, defaulting to 1, since nothing else pins the rank down).
    Raises :class:`NonInvertible` for a generator whose determinant is not
    +-1, and :class:`CapExceeded` as soon as the closure grows past ``cap``
    elements.
    """
    gens = [g if isinstance(g, IntMatrix) else IntMatrix(g) for g in generators]
    if not gens:
        return MatrixGroup([IntMatrix.identity(rank if rank else 1)])
    n = gens[0].nrows
    if rank is not None and rank != n:
        raise ValueError(f"generators have rank {n}, not the requested {rank}")
    for g in gens:
        if not g.is_square() or g.nrows != n:
            raise ValueError("generators must be square matrices of equal size")
        if det(g) not in (1, -1):
            raise NonInvertible(f"generator {g!r} has determinant {det(g)}")
    identity = IntMatrix.identity(n)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a @ g
                if b not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded(
                            f"group closure exceeded the cap of {cap} elements"
                        )
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return MatrixGroup(seen)


class MatrixGroup:
    """A finite group of unimodular integer matrices, given by its full element set."""

    def __init__(self, elements: Iterable[IntMatrix]):
        els = sorted(set(elements))
        if not els:
            raise ValueError("a group needs at least the identity")
        self.elements: Tuple[IntMatrix, ...] = tuple(els)
        self.dim = els[0].nrows
        self.index_of: Dict[IntMatrix, int] = {g: i for i, g in enumerate(els)}
        identity = IntMatrix.identity(self.dim)
        if identity not in self.index_of:
            raise ValueError("element set does not contain the identity")
        self._inverse: List[int] = [-1] * len(els)
        for i, g in enumerate(els):
            if self._inverse[i] >= 0:
                continue
            gi = inverse_unimodular(g)
            j = self.index_of.get(gi)
            if j is None:
                raise ValueError("element set is not closed under inversion")
            self._inverse[i] = j
            self._inverse[j] = i
        self._build_classes()

    # -- structure ----------------------------------------------------------

    def _build_classes(self) -> None:
        n = len(self.elements)
        assigned = [-1] * n
        classes: List[Tuple[int, ...]] = []
        for i in range(n):
            if assigned[i] >= 0:
                continue
            k = len(classes)
            members = set()
            g = self.elements[i]
            for x_idx, x in enumerate(self.elements):
                y = inverse_of(self, x) @ g @ x
                members.add(self.index_of[y])
            for m in members:
                assigned[m] = k
            classes.append(tuple(sorted(members)))
        self.classes: Tuple[Tuple[int, ...], ...] = tuple(classes)
        self.class_reps: Tuple[int, ...] = tuple(c[0] for c in classes)
        self.class_sizes: Tuple[int, ...] = tuple(len(c) for c in classes)
        self._class_of_index: Tuple[int, ...] = tuple(assigned)

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, element: IntMatrix) -> bool:
        return element in self.index_of

    def mul(self, a: IntMatrix, b: IntMatrix) -> IntMatrix:
        return a @ b

    def inv(self, a: IntMatrix) -> IntMatrix:
        return self.elements[self._inverse[self.index_of[a]]]

    def class_index_of_element(self, element: IntMatrix) -> int:
        idx = self.index_of.get(element)
        if idx is None:
            raise SubgroupMismatch(f"{element!r} is not in this group")
        return self._class_of_index[idx]

    def class_rep_elements(self) -> Tuple[IntMatrix, ...]:
        return tuple(self.elements[i] for i in self.class_reps)

    def __repr__(self) -> str:
        return f"MatrixGroup(order={self.order}, dim={self.dim})"

    # -- standard class functions ------------------------------------------------

    def trivial_character(self) -> ClassFun:
        return ClassFun(self, tuple(Fraction(1) for _ in self.classes))

    def det_character(self) -> ClassFun:
        return ClassFun(
            self, tuple(Fraction(det(self.elements[i])) for i in self.class_reps)
        )

    # -- dual action ----------------------------------------------------------------

    def dual_element(self, g: IntMatrix) -> IntMatrix:
        """Inverse-transpose, the induced action on the dual lattice."""
        return self.inv(g).transpose()

    def dual_group(self) -> "MatrixGroup":
        return MatrixGroup(self.dual_element(g) for g in self.elements)


def inverse_of(group: MatrixGroup, x: IntMatrix) -> IntMatrix:
    return group.elements[group._inverse[group.index_of[x]]]


class Subgroup:
    """A subgroup presented as a subset of a parent group's elements.

    ``self.group`` is a full :class:`MatrixGroup` over the same matrices, so
    class functions on the subgroup use the standard machinery; ``indices``
    locates each subgroup element inside the parent.
    """

    def __init__(self, parent: MatrixGroup, elements: Iterable[IntMatrix], name: str = ""):
        els = sorted(set(elements))
        for g in els:
            if not parent.contains(g):
                raise SubgroupMismatch(f"{g!r} is not an element of the parent group")
        self.parent = parent
        self.group = MatrixGroup(els)
        self.indices: Tuple[int, ...] = tuple(parent.index_of[g] for g in self.group.elements)
        self.name = name

    @classmethod
    def generated(
        cls, parent: MatrixGroup, generators: Sequence[IntMatrix], name: str = ""
    ) -> "Subgroup":
        sub = generate_group(generators, cap=parent.order)
        return cls(parent, sub.elements, name=name)

    @property
    def order(self) -> int:
        return self.group.order

    def __repr__(self) -> str:
        label = self.name or f"order {self.order}"
        return f"Subgroup({label} <= order {self.parent.order})"


def orbits(
    group: MatrixGroup,
    items: Sequence,
    act: Callable[[IntMatrix, object], object],
) -> List[Tuple]:
    """Orbits of a group action on a finite set of hashable items.

    ``act(g, item)`` must land back inside ``items`` for every ``g``;
    anything else raises :class:`NotAnAction`.  Orbits are returned sorted
    by their smallest member's position in ``items``.
    """
    index = {item: i for i, item in enumerate(items)}
    if len(index) != len(items):
        raise NotAnAction("duplicate items in the action set")
    seen = set()
    out: List[Tuple] = []
    for start, item in enumerate(items):
        if start in seen:
            continue
        orbit = set()
        frontier = [item]
        orbit.add(start)
        while frontier:
            cur = frontier.pop()
            for g in group.elements:
                img = act(g, cur)
                j = index.get(img)
                if j is None:
                    raise NotAnAction(f"action image {img!r} left the item set")
                if j not in orbit:
                    orbit.add(j)
                    frontier.append(items[j])
        seen |= orbit
        out.append(tuple(items[j] for j in sorted(orbit)))
    return out


def stabilizer(
    group: MatrixGroup,
    item,
    act: Callable[[IntMatrix, object], object],
) -> Subgroup:
    """Subgroup of elements fixing ``item`` under ``act``."""
    fixing = [g for g in group.elements if act(g, item) == item]
    return Subgroup(group, fixing)


# -- permutation input ------------------------------------------------------------


def parse_cycles(word: str) -> Dict[int, int]:
    """Parse disjoint-cycle notation like ``"(12)(34)"`` into a 1-based map.

    Only single-digit points are supported, which covers permutation
    degrees up to 9.
    """
    word = word.replace(" ", "")
    if not word:
        return {}
    perm: Dict[int, int] = {}
    i = 0
    while i < len(word):
        if word[i] != "(":
            raise ValueError(f"expected '(' at position {i} in {word!r}")
        j = word.index(")", i)
        cycle = [int(ch) for ch in word[i + 1 : j]]
        if len(set(cycle)) != len(cycle) or not cycle:
            raise ValueError(f"bad cycle {word[i:j+1]!r}")
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            if a in perm:
                raise ValueError(f"point {a} appears in two cycles of {word!r}")
            perm[a] = b
        i = j + 1
    return perm


def permutation_matrix(perm: Dict[int, int], n: int) -> IntMatrix:
    """The ``n x n`` matrix sending basis vector ``e_k`` to ``e_perm(k)``."""
    rows = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        rows[perm.get(k, k) - 1][k - 1] = 1
    return IntMatrix(rows)
