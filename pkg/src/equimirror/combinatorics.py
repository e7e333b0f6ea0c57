"""Equivariant face-count polynomials and their recursions.

For a group element fixing a face, the fixed lattice points of the
dilated face slices have a rational generating function whose numerator
``phi`` is the equivariant analogue of the Ehrhart numerator.  On top of
``phi`` sit three recursively defined families: the ``h``/``g`` pair of
local polynomials of a cone (computed on abstract poset intervals so the
same recursion serves faces, quotients and dual faces), and the
``stilde`` polynomial mixing ``phi`` with ``g`` of relative dual faces.

Everything is evaluated one group element at a time with exact integer
or rational arithmetic, memoised per (cone, element).  Class-function
views over a face's stabilizer are provided on each table, together with
an independent induction-based assembly of the top polynomial used to
cross-check the per-element sums.

``verify_identities`` re-derives the tables' defining identities from
scratch — reciprocity against independently counted interior points,
palindromy, the convolution that characterises ``g``, and the
reconstruction of ``phi`` from lower faces — and reports any offending
(face, class) pair instead of silently trusting the pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .algebra.classfun import ClassFun, ClassPoly
from .algebra.unipoly import UniPoly, series_ratio, truncate_tau
from .errors import NotInvariant, PhiNotPolynomial
from .geometry.cones import (
    AbstractCone,
    ConeComplex,
    abstract_dual_face,
    abstract_primal,
    abstract_quotient,
)

ONE = UniPoly.one()


class PhiTable:
    """Ehrhart numerators of faces at the elements fixing them."""

    def __init__(self, complex: ConeComplex):
        self.complex = complex
        self._polys: Dict[Tuple[int, int], UniPoly] = {}

    def poly(self, f: int, e: int) -> UniPoly:
        key = (f, e)
        hit = self._polys.get(key)
        if hit is not None:
            return hit
        cx = self.complex
        if not cx.is_invariant(f, e):
            raise NotInvariant(f"face {f} is not fixed by element {e}")
        k = cx.faces[f].dim
        if k == 0:
            value = ONE
        else:
            counts = UniPoly([cx.count_fixed(f, e, m) for m in range(k + 1)])
            value = (counts * cx.char_series(f, e)).truncate(k)
            if value.coefficient(k):
                raise PhiNotPolynomial(
                    f"face {f}, element {e}: numerator does not terminate "
                    f"by degree {k - 1}"
                )
            value = value.truncate(k - 1)
        self._polys[key] = value
        return value

    def class_poly(self, f: Optional[int] = None) -> ClassPoly:
        """Class function over the stabilizer of face ``f`` (default: the
        full cone, whose stabilizer is the whole group)."""
        return _stabilizer_class_poly(self.complex, f, self.poly)

    def override(self, f: int, e: int, poly: UniPoly) -> "PhiTable":
        """A copy with one entry replaced — the fault-injection hook used
        by the self-test's negative control."""
        table = PhiTable(self.complex)
        table._polys = dict(self._polys)
        table._polys[(f, e)] = poly
        return table


def phi(complex: ConeComplex) -> PhiTable:
    """Lazy table of equivariant Ehrhart numerators for the complex."""
    return PhiTable(complex)


class HGTable:
    """The local ``h``/``g`` polynomials of abstract cones.

    ``h`` of a k-dimensional cone at a fixing element is monic of degree
    k - 1, assembled from the proper faces; ``g`` is the truncation of
    ``(1 - t) h`` to degrees at most ``(k - 1) / 2``.  The zero cone has
    ``h = g = 1``.
    """

    def __init__(self, complex: ConeComplex):
        self.complex = complex
        self._h: Dict[tuple, UniPoly] = {}
        self._g: Dict[tuple, UniPoly] = {}

    def h(self, cone: AbstractCone, e: int) -> UniPoly:
        key = cone.key + (e,)
        hit = self._h.get(key)
        if hit is not None:
            return hit
        k = cone.dim
        if k == 0:
            value = ONE
        else:
            top = cone.top_element
            if not cone.element_invariant(top, e):
                raise NotInvariant(f"cone {cone.key} is not fixed by element {e}")
            char_top = cone.element_charpoly(top, e)
            t_minus_one = UniPoly([-1, 1])
            value = UniPoly.zero()
            for h_elt in cone.elements():
                if h_elt == top or not cone.element_invariant(h_elt, e):
                    continue
                ratio = char_top.exact_div(
                    t_minus_one * cone.element_charpoly(h_elt, e)
                )
                value = value + ratio * self.g(cone.subcone(h_elt), e)
        self._h[key] = value
        return value

    def g(self, cone: AbstractCone, e: int) -> UniPoly:
        key = cone.key + (e,)
        hit = self._g.get(key)
        if hit is not None:
            return hit
        k = cone.dim
        if k == 0:
            value = ONE
        else:
            one_minus_t = UniPoly([1, -1])
            value = truncate_tau(one_minus_t * self.h(cone, e), Fraction(k - 1, 2))
        self._g[key] = value
        return value

    def h_face(self, f: int, e: int) -> UniPoly:
        return self.h(abstract_primal(self.complex, f), e)

    def g_face(self, f: int, e: int) -> UniPoly:
        return self.g(abstract_primal(self.complex, f), e)

    def h_class_poly(self, f: Optional[int] = None) -> ClassPoly:
        return _stabilizer_class_poly(self.complex, f, self.h_face)

    def g_class_poly(self, f: Optional[int] = None) -> ClassPoly:
        return _stabilizer_class_poly(self.complex, f, self.g_face)


def hg(complex: ConeComplex) -> HGTable:
    """Lazy ``h``/``g`` table for the complex's abstract cones."""
    return HGTable(complex)


class StildeTable:
    """The mixed polynomials combining ``phi`` with dual-face ``g``."""

    def __init__(self, complex: ConeComplex, phi_table: PhiTable, hg_table: HGTable):
        self.complex = complex
        self.phi = phi_table
        self.hg = hg_table
        self._polys: Dict[Tuple[int, int], UniPoly] = {}

    def poly(self, f: int, e: int) -> UniPoly:
        key = (f, e)
        hit = self._polys.get(key)
        if hit is not None:
            return hit
        cx = self.complex
        if not cx.is_invariant(f, e):
            raise NotInvariant(f"face {f} is not fixed by element {e}")
        top_dim = cx.faces[f].dim
        value = UniPoly.zero()
        for sub in cx.faces_below(f):
            if not cx.is_invariant(sub, e):
                continue
            sign = -1 if (top_dim - cx.faces[sub].dim) % 2 else 1
            term = (
                self.phi.poly(sub, e)
                * self.hg.g(abstract_dual_face(cx, sub, f), e)
                * (sign * cx.detsign(sub, e))
            )
            value = value + term
        self._polys[key] = value
        return value

    def class_poly(self, f: Optional[int] = None) -> ClassPoly:
        return _stabilizer_class_poly(self.complex, f, self.poly)

    def class_poly_by_induction(self, f: Optional[int] = None) -> ClassPoly:
        """The same class function assembled orbit by orbit.

        Each stabilizer contributes its term as a class function which is
        then induced up to the full group; summing over face orbits must
        reproduce the element-wise sums of :meth:`class_poly`.  Used as an
        independent cross-check of the per-element evaluation.
        """
        cx = self.complex
        if f is None:
            f = cx.top_index
        if any(not cx.is_invariant(f, e) for e in range(cx.group.order)):
            raise NotInvariant("induction form needs a face fixed by the whole group")
        top_dim = cx.faces[f].dim
        total = ClassFun(cx.group, tuple(UniPoly.zero() for _ in cx.group.classes))
        seen = set()
        for sub in cx.faces_below(f):
            if sub in seen:
                continue
            orbit = {cx.face_image(e, sub) for e in range(cx.group.order)}
            seen |= orbit
            stab = cx.face_stabilizer(sub)
            sign = -1 if (top_dim - cx.faces[sub].dim) % 2 else 1
            values = []
            for rep in stab.group.class_rep_elements():
                e = cx.group.index_of[rep]
                values.append(
                    self.phi.poly(sub, e)
                    * self.hg.g(abstract_dual_face(cx, sub, f), e)
                    * (sign * cx.detsign(sub, e))
                )
            total = total + ClassFun(stab.group, tuple(values)).induce(cx.group)
        return total


def stilde(complex: ConeComplex, phi_table: Optional[PhiTable] = None,
           hg_table: Optional[HGTable] = None) -> StildeTable:
    """Lazy table of the mixed polynomials, sharing the given sub-tables."""
    return StildeTable(
        complex,
        phi_table if phi_table is not None else phi(complex),
        hg_table if hg_table is not None else hg(complex),
    )


def _stabilizer_class_poly(
    complex: ConeComplex, f: Optional[int], fn: Callable[[int, int], UniPoly]
) -> ClassPoly:
    if f is None:
        f = complex.top_index
    stab = complex.face_stabilizer(f)
    values = tuple(
        fn(f, complex.group.index_of[rep]) for rep in stab.group.class_rep_elements()
    )
    return ClassPoly(stab.group, values)


def mobius_gamma(complex: ConeComplex, lower: int, upper: int, e: int) -> int:
    """Moebius function of the subposet of faces fixed by element ``e``.

    Both endpoints must be fixed; faces in between that are not fixed
    simply drop out of the poset.
    """
    for f in (lower, upper):
        if not complex.is_invariant(f, e):
            raise NotInvariant(f"face {f} is not fixed by element {e}")
    if not complex.leq(lower, upper):
        return 0
    chain = [
        f for f in complex.interval(lower, upper) if complex.is_invariant(f, e)
    ]
    chain.sort(key=lambda f: complex.faces[f].dim)
    mu: Dict[int, int] = {}
    for f in chain:
        if f == lower:
            mu[f] = 1
            continue
        mu[f] = -sum(
            mu[g] for g in chain if g != f and complex.leq(g, f) and complex.leq(lower, g)
        )
    return mu[upper]


# -- identity verification ----------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    failures: Tuple[Tuple[int, int, str], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class IdentityReport:
    checks: Tuple[IdentityCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            status = "ok" if c.ok else f"FAILED x{len(c.failures)}"
            lines.append(f"{c.name}: {status}")
            for f, k, msg in c.failures[:3]:
                lines.append(f"  face {f}, class {k}: {msg}")
        return "\n".join(lines)


def verify_identities(
    complex: ConeComplex,
    phi_table: Optional[PhiTable] = None,
    depth: int = 3,
) -> IdentityReport:
    """Re-derive the defining identities of all tables, per conjugacy class.

    ``phi_table`` may be a doctored table (see :meth:`PhiTable.override`);
    the reciprocity and reconstruction checks will then point at the
    corrupted face and class.  ``depth`` is how many extra dilation steps
    beyond the face dimension the reciprocity comparison counts.
    """
    cx = complex
    phi_t = phi_table if phi_table is not None else phi(cx)
    hg_t = hg(cx)
    st_t = stilde(cx, phi_t, hg_t)
    reps = [(k, cx.group.class_reps[k]) for k in range(len(cx.group.classes))]

    reciprocity: List[Tuple[int, int, str]] = []
    h_palin: List[Tuple[int, int, str]] = []
    s_palin: List[Tuple[int, int, str]] = []
    convolution: List[Tuple[int, int, str]] = []
    reconstruction: List[Tuple[int, int, str]] = []

    for k, e in reps:
        invariant = [f for f in range(cx.face_count) if cx.is_invariant(f, e)]
        for f in invariant:
            dim = cx.faces[f].dim
            if dim > 0:
                order = dim + depth
                expected = series_ratio(
                    phi_t.poly(f, e).reverse(dim), cx.char_series(f, e), order
                )
                got = [
                    Fraction(cx.count_fixed(f, e, m, interior=True))
                    for m in range(order + 1)
                ]
                if list(expected) != got:
                    reciprocity.append(
                        (f, k, f"interior counts {got} != series {list(expected)}")
                    )

                h_poly = hg_t.h_face(f, e)
                if h_poly != h_poly.reverse(dim - 1):
                    h_palin.append((f, k, f"h = {h_poly} is not palindromic"))

                total = UniPoly.zero()
                for sub in cx.faces_below(f):
                    if not cx.is_invariant(sub, e):
                        continue
                    sign = -1 if cx.faces[sub].dim % 2 else 1
                    total = total + (
                        hg_t.g(abstract_quotient(cx, sub, f), e)
                        * hg_t.g(abstract_dual_face(cx, cx.apex_index, sub), e)
                        * (sign * cx.detsign(sub, e))
                    )
                if total:
                    convolution.append((f, k, f"convolution sums to {total}"))

            s_poly = st_t.poly(f, e)
            if s_poly != s_poly.reverse(dim):
                s_palin.append((f, k, f"stilde = {s_poly} is not palindromic"))

            rebuilt = UniPoly.zero()
            for sub in cx.faces_below(f):
                if not cx.is_invariant(sub, e):
                    continue
                ratio = cx.char_series(f, e).exact_div(cx.char_series(sub, e))
                rebuilt = rebuilt + phi_t.poly(sub, e).reverse(
                    cx.faces[sub].dim
                ) * ratio
            if rebuilt != phi_t.poly(f, e):
                reconstruction.append(
                    (f, k, f"rebuilt {rebuilt} != table {phi_t.poly(f, e)}")
                )

    return IdentityReport(
        (
            IdentityCheck("reciprocity", tuple(reciprocity)),
            IdentityCheck("h-palindromy", tuple(h_palin)),
            IdentityCheck("stilde-palindromy", tuple(s_palin)),
            IdentityCheck("g-convolution", tuple(convolution)),
            IdentityCheck("phi-reconstruction", tuple(reconstruction)),
        )
    )
