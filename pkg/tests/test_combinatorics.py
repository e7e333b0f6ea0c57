"""Face-count polynomial tables: oracles and defining identities."""

from __future__ import annotations

import random

import pytest

from equimirror.algebra import UniPoly
from equimirror.cli.models import build_cross, build_cube, build_fermat
from equimirror.combinatorics import (
    hg,
    mobius_gamma,
    phi,
    stilde,
    verify_identities,
)
from equimirror.errors import NotInvariant
from equimirror.geometry.cones import ConeComplex
from equimirror.geometry.intlinalg import IntMatrix
from equimirror.groups import generate_group


def trivial(polytope):
    return ConeComplex(polytope, generate_group([], rank=polytope.dim))


def base_class(cx, matrix):
    """Class index of a base-lattice matrix (classes align with the cone's)."""
    return cx.base_group.class_index_of_element(matrix)


def ident_class(cx):
    return base_class(cx, IntMatrix.identity(cx.dim))


# -- phi ------------------------------------------------------------------------


def test_phi_oracles(cube4, cubic_curve, quintic_a5):
    assert phi(cube4).class_poly().value_at_class(ident_class(cube4)) == UniPoly(
        (1, 76, 230, 76, 1)
    )
    assert phi(cubic_curve).class_poly().value_at_class(0) == UniPoly((1, 7, 1))
    quintic_phi = phi(quintic_a5).class_poly()
    assert quintic_phi.value_at_class(ident_class(quintic_a5)) == UniPoly(
        (1, 121, 381, 121, 1)
    )


def test_phi_small_faces(cube3):
    table = phi(cube3)
    assert table.poly(cube3.apex_index, 0) == UniPoly.one()
    vertex = next(f.index for f in cube3.faces if f.dim == 1)
    assert table.poly(vertex, 0) == UniPoly.one()
    edge = next(f.index for f in cube3.faces if f.dim == 2)
    # an edge of the cube has 2m+1 points per dilate: numerator 1 + t
    assert table.poly(edge, 0) == UniPoly((1, 1))


def test_phi_central_involution(cube4_central):
    cp = phi(cube4_central).class_poly()
    minus = base_class(cube4_central, IntMatrix.identity(4).scale(-1))
    assert cp.value_at_class(minus) == UniPoly((1, 4, 6, 4, 1))
    assert cp.value_at_class(ident_class(cube4_central)) == UniPoly((1, 76, 230, 76, 1))


def test_phi_palindromic_iff_reflexive(cube3, cross3, simplex3, quintic_a5):
    for cx in (cube3, cross3, quintic_a5):
        top = phi(cx).class_poly()
        for k in range(len(top.group.classes)):
            assert top.value_at_class(k).is_palindromic(cx.dim)
    not_reflexive = phi(simplex3).class_poly().value_at_class(0)
    assert not not_reflexive.is_palindromic(simplex3.dim)


def test_phi_requires_invariance(sym3_cube3):
    cx = sym3_cube3
    table = phi(cx)
    e = next(
        e for e in range(cx.group.order)
        if cx.invariant_faces(e) != tuple(range(cx.face_count))
    )
    moved = next(f for f in range(cx.face_count) if not cx.is_invariant(f, e))
    with pytest.raises(NotInvariant):
        table.poly(moved, e)


# -- h and g ----------------------------------------------------------------------


def test_hg_oracles(cube4, simplex3):
    table = hg(cube4)
    k = ident_class(cube4)
    assert table.h_class_poly().value_at_class(k) == UniPoly((1, 12, 14, 12, 1))
    assert table.g_class_poly().value_at_class(k) == UniPoly((1, 11, 2))
    cross4 = trivial(build_cross(4))
    assert hg(cross4).g_class_poly().value_at_class(0) == UniPoly((1, 3, 2))
    simplex_h = hg(simplex3).h_class_poly().value_at_class(0)
    assert simplex_h == UniPoly((1, 1, 1, 1))
    assert hg(simplex3).g_class_poly().value_at_class(0) == UniPoly.one()


def test_hg_by_trace_on_permuted_cube(sym3_cube3):
    cx = sym3_cube3
    h_cp = hg(cx).h_class_poly()
    g_cp = hg(cx).g_class_poly()
    h_by_trace = {
        rep.trace(): h_cp.value_at_class(k)
        for k, rep in zip(range(len(cx.base_group.classes)),
                          cx.base_group.class_rep_elements())
    }
    assert h_by_trace == {
        3: UniPoly((1, 5, 5, 1)),
        1: UniPoly((1, 3, 3, 1)),
        0: UniPoly((1, 2, 2, 1)),
    }
    g_by_trace = {
        rep.trace(): g_cp.value_at_class(k)
        for k, rep in zip(range(len(cx.base_group.classes)),
                          cx.base_group.class_rep_elements())
    }
    assert g_by_trace == {
        3: UniPoly((1, 4)),
        1: UniPoly((1, 2)),
        0: UniPoly((1, 1)),
    }


def test_h_monic_palindromic_everywhere(cube3_central, sym3_cube3, cross3):
    for cx in (cube3_central, sym3_cube3, cross3):
        table = hg(cx)
        top_dim = cx.cdim
        cp = table.h_class_poly()
        for k in range(len(cp.group.classes)):
            value = cp.value_at_class(k)
            assert value.degree == top_dim - 1
            assert value.leading() == 1
            assert value.is_palindromic(top_dim - 1)
            g_val = table.g_class_poly().value_at_class(k)
            assert 2 * g_val.degree <= top_dim - 1


# -- stilde ----------------------------------------------------------------------


def test_stilde_oracles(cube4, square, cubic_curve, quintic_a5):
    assert stilde(cube4).class_poly().value_at_class(
        ident_class(cube4)
    ) == UniPoly((0, 1, 68, 68, 1))
    assert stilde(square).class_poly().value_at_class(0) == UniPoly((0, 1, 1))
    assert stilde(cubic_curve).class_poly().value_at_class(0) == UniPoly((0, 1, 1))
    quintic = stilde(quintic_a5).class_poly()
    assert quintic.value_at_class(ident_class(quintic_a5)) == UniPoly(
        (0, 1, 101, 101, 1)
    )
    cross4 = trivial(build_cross(4))
    assert stilde(cross4).class_poly().value_at_class(0) == UniPoly((0, 1, 4, 4, 1))


def test_stilde_vanishes_on_simplicial_proper_faces():
    cross4 = trivial(build_cross(4))
    table = stilde(cross4)
    for face in cross4.faces:
        if 0 < face.dim < cross4.cdim:
            assert table.poly(face.index, 0) == UniPoly.zero()


def test_stilde_palindromic_on_reflexive(cube4_central, quintic_a5):
    for cx in (cube4_central, quintic_a5):
        cp = stilde(cx).class_poly()
        for k in range(len(cp.group.classes)):
            assert cp.value_at_class(k).is_palindromic(cx.cdim)


def test_stilde_induction_crosscheck(sym3_cube3, cube4_central, quintic_a5):
    for cx in (sym3_cube3, cube4_central, quintic_a5):
        table = stilde(cx)
        assert table.class_poly() == table.class_poly_by_induction()


# -- Moebius function --------------------------------------------------------------


def test_mobius_basics(cube3):
    apex, top = cube3.apex_index, cube3.top_index
    assert mobius_gamma(cube3, apex, apex, 0) == 1
    assert mobius_gamma(cube3, apex, top, 0) == (-1) ** cube3.cdim
    v1, v2 = [f.index for f in cube3.faces if f.dim == 1][:2]
    assert mobius_gamma(cube3, v1, v2, 0) == 0


def test_mobius_closed_form(sym3_cube3, cube4_central, quintic_a5):
    """On the fixed subposet the Moebius function factors through the
    determinant signs of the endpoint restrictions."""
    rng = random.Random(1405)
    for cx in (sym3_cube3, cube4_central, quintic_a5):
        for e in (cx.group.index_of[g] for g in cx.group.class_rep_elements()):
            fixed = cx.invariant_faces(e)
            for _ in range(12):
                lo = rng.choice(fixed)
                hi = rng.choice(fixed)
                if not cx.leq(lo, hi):
                    continue
                gap = cx.faces[hi].dim - cx.faces[lo].dim
                expected = (
                    (-1) ** gap * cx.detsign(lo, e) * cx.detsign(hi, e)
                )
                assert mobius_gamma(cx, lo, hi, e) == expected


# -- the identity suite --------------------------------------------------------------


def test_verify_identities_names(segment):
    report = verify_identities(segment)
    assert [c.name for c in report.checks] == [
        "reciprocity",
        "h-palindromy",
        "stilde-palindromy",
        "g-convolution",
        "phi-reconstruction",
    ]
    assert report.ok
    assert "reciprocity: ok" in report.summary()


def test_verify_identities_spread(
    square, cube3_central, sym3_cube3, cross3, simplex3, cubic_curve, quintic_a5
):
    for cx in (square, cube3_central, sym3_cube3, cross3, simplex3,
               cubic_curve, quintic_a5):
        assert verify_identities(cx).ok


def test_verify_identities_catches_fault(cube3):
    table = phi(cube3)
    top = cube3.top_index
    doctored = table.override(top, 0, table.poly(top, 0) + UniPoly.t())
    report = verify_identities(cube3, phi_table=doctored)
    assert not report.ok
    reciprocity = next(c for c in report.checks if c.name == "reciprocity")
    assert any(f == top for f, _k, _msg in reciprocity.failures)
