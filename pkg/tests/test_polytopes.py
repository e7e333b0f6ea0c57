"""Polytopes, face lattices of their cones, duality, group actions."""

from __future__ import annotations

import random
from collections import Counter

import pytest

from equimirror.cli.models import build_cross, build_cube, build_fermat, build_simplex
from equimirror.errors import NotInvariant, NotReflexive, SubgroupMismatch
from equimirror.geometry.cones import ConeComplex
from equimirror.geometry.intlinalg import IntMatrix
from equimirror.geometry.polytope import LatticePolytope
from equimirror.groups import generate_group, parse_cycles, permutation_matrix


def f_vector(cx: ConeComplex) -> Counter:
    return Counter(face.dim for face in cx.faces)


def trivial(polytope):
    return ConeComplex(polytope, generate_group([], rank=polytope.dim))


def test_polytope_construction_and_facet_search():
    tri = LatticePolytope(((0, 0), (1, 0), (0, 1)))
    assert tri.dim == 2
    assert len(tri.facets) == 3
    assert tri.contains((0, 0))
    assert not tri.contains((1, 1))
    assert tri.tight_facets((1, 0)) != ()
    # explicit facets must agree with the hull
    with pytest.raises(ValueError):
        LatticePolytope(((0, 0), (1, 0), (0, 1)), facets=(((1, 1), 2),))


def test_polytope_guards():
    with pytest.raises(ValueError):
        LatticePolytope(((0, 0), (1, 1)))  # not full-dimensional
    with pytest.raises(ValueError):
        LatticePolytope(())


def test_translate():
    square = build_cube(2)
    moved = square.translate((5, 5))
    assert sorted(moved.vertices) == sorted(
        tuple(x + 5 for x in v) for v in square.vertices
    )
    assert moved.contains((5, 5))
    assert not moved.contains((0, 0))


def test_reflexive_predicates():
    assert build_cube(3).is_reflexive()
    assert build_cross(3).is_reflexive()
    assert build_fermat(4).is_reflexive()
    assert not build_simplex(3).is_reflexive()
    with pytest.raises(NotReflexive):
        build_simplex(3).dual_reflexive()


def test_reflexive_duality_involution():
    for p in (build_cube(3), build_cross(4), build_fermat(3)):
        dual = p.dual_reflexive()
        assert dual.is_reflexive()
        assert dual.dual_reflexive() == p
    assert sorted(build_cube(3).dual_reflexive().vertices) == sorted(
        build_cross(3).vertices
    )


def test_face_counts():
    assert f_vector(trivial(build_cube(3))) == Counter({0: 1, 1: 8, 2: 12, 3: 6, 4: 1})
    counts4 = f_vector(trivial(build_cube(4)))
    assert counts4 == Counter({0: 1, 1: 16, 2: 32, 3: 24, 4: 8, 5: 1})
    assert sum(counts4.values()) == 82
    # boolean lattice for simplices
    for d in (1, 2, 3):
        assert trivial(build_simplex(d)).face_count == 2 ** (d + 1)
    quintic = trivial(build_fermat(4))
    assert quintic.face_count == 32


def test_poset_structure(cube3):
    apex, top = cube3.apex_index, cube3.top_index
    assert cube3.faces[apex].dim == 0
    assert cube3.faces[top].dim == cube3.cdim
    for f in range(cube3.face_count):
        assert cube3.leq(apex, f)
        assert cube3.leq(f, top)
        assert apex in cube3.faces_below(f)
        assert f in cube3.faces_below(f)
    # an edge of the cube: interval to top is a chain of length complements
    edge = next(f.index for f in cube3.faces if f.dim == 2)
    assert len(cube3.interval(edge, top)) == 1 + 2 + 1  # edge, 2 squares, top


def test_intervals_are_eulerian(cube3, cross3, simplex3):
    """Every proper interval has as many even faces as odd ones."""
    rng = random.Random(7)
    for cx in (cube3, cross3, simplex3):
        for _ in range(40):
            i = rng.randrange(cx.face_count)
            j = rng.randrange(cx.face_count)
            if not cx.leq(i, j):
                continue
            window = cx.interval(i, j)
            balance = sum((-1) ** cx.faces[g].dim for g in window)
            assert balance == (0 if i != j else (-1) ** cx.faces[i].dim)


def test_face_span_dimensions(cube4):
    for face in cube4.faces:
        assert face.span.nrows == face.dim
        if face.dim:
            # the span contains each cone generator of the face
            from equimirror.geometry.intlinalg import solve_in_row_basis

            for vid in face.vertex_ids:
                point = cube4.polytope.vertices[vid] + (1,)
                solve_in_row_basis(face.span, point)


def test_group_must_preserve_polytope():
    asym = LatticePolytope(((0, 0), (3, 0), (0, 1)))
    swap = IntMatrix([[0, 1], [1, 0]])
    with pytest.raises(NotInvariant):
        ConeComplex(asym, generate_group([swap]))
    with pytest.raises(SubgroupMismatch):
        ConeComplex(build_cube(3), generate_group([swap]))


def test_homogenized_group_alignment(sym3_cube3):
    cx = sym3_cube3
    assert cx.group.order == cx.base_group.order == 6
    assert cx.group.classes == cx.base_group.classes
    for e, g in enumerate(cx.group.elements):
        assert g.rows[-1] == (0, 0, 0, 1)
        assert IntMatrix(tuple(r[:-1] for r in g.rows[:-1])) == cx.base_element(e)


def test_invariant_faces_and_orbits(sym3_cube3):
    cx = sym3_cube3
    ident = cx.group.index_of[IntMatrix.identity(4)]
    assert cx.invariant_faces(ident) == tuple(range(cx.face_count))
    orbs = cx.face_orbits()
    assert sum(len(o) for o in orbs) == cx.face_count
    # orbit-stabilizer on every face
    for orb in orbs:
        stab = cx.face_stabilizer(orb[0])
        assert len(orb) * stab.order == cx.group.order
    # coordinate permutations fix the two diagonal vertices of the cube
    vertex_faces = [f.index for f in cx.faces if f.dim == 1]
    fixed_vertices = [
        f for f in vertex_faces
        if all(cx.is_invariant(f, e) for e in range(cx.group.order))
    ]
    assert len(fixed_vertices) == 2


def test_quintic_face_orbits(quintic_a5):
    orbs = quintic_a5.face_orbits()
    by_dim = Counter()
    for orb in orbs:
        by_dim[quintic_a5.faces[orb[0]].dim] += 1
    # apex and top are alone; each proper dimension forms a single orbit
    assert by_dim == Counter({0: 1, 1: 1, 2: 1, 3: 1, 4: 1, 5: 1})


def test_rho_and_charpoly(sym3_cube3):
    cx = sym3_cube3
    swap = permutation_matrix(parse_cycles("(12)"), 3)
    e = next(
        i for i, g in enumerate(cx.group.elements)
        if IntMatrix(tuple(r[:-1] for r in g.rows[:-1])) == swap
    )
    top = cx.top_index
    assert cx.rho(top, e).nrows == cx.cdim
    assert cx.detsign(top, e) == -1
    assert cx.charpoly(top, e).degree == cx.cdim
    assert cx.char_series(top, e) == cx.charpoly(top, e).reverse(cx.cdim)
    # apex restriction is the empty matrix with charpoly 1
    assert cx.charpoly(cx.apex_index, e).degree == 0
    moved = next(
        f.index for f in cx.faces if f.dim == 1 and not cx.is_invariant(f.index, e)
    )
    with pytest.raises(NotInvariant):
        cx.rho(moved, e)


def test_count_fixed_matches_polytope_counts(cube3_central):
    cx = cube3_central
    top = cx.top_index
    minus = cx.base_group.index_of[IntMatrix.identity(3).scale(-1)]
    ident = cx.base_group.index_of[IntMatrix.identity(3)]
    for m in range(3):
        assert cx.count_fixed(top, ident, m) == (2 * m + 1) ** 3
        assert cx.count_fixed(top, minus, m) == 1
    assert cx.count_fixed(cx.apex_index, ident, 0) == 1
    assert cx.count_fixed(cx.apex_index, ident, 1) == 0


def test_dual_complex(cube3):
    dual = cube3.dual()
    assert dual.polytope == build_cross(3)
    assert dual.face_count == cube3.face_count
    seen = set()
    for f in range(cube3.face_count):
        j = cube3.dual_face_index(f)
        assert dual.faces[j].dim == cube3.cdim - cube3.faces[f].dim
        seen.add(j)
    assert len(seen) == cube3.face_count
    # order-reversing
    for f in range(cube3.face_count):
        for g in range(cube3.face_count):
            if cube3.leq(f, g):
                assert dual.leq(cube3.dual_face_index(g), cube3.dual_face_index(f))


def test_dual_element_index(cube4_central):
    cx = cube4_central
    minus = cx.base_group.index_of[IntMatrix.identity(4).scale(-1)]
    # -I is its own contragredient
    assert cx.dual_element_index(minus) == cx.dual().base_group.index_of[
        IntMatrix.identity(4).scale(-1)
    ]
