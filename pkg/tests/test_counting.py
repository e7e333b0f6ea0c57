"""Lattice point counts on cone slices, plain and fixed."""

from __future__ import annotations

import random
from math import comb

from equimirror.cli.models import build_cube, build_cross, build_fermat, build_simplex
from equimirror.cli.models import fermat_permutation
from equimirror.geometry.counting import (
    cache_size,
    fixed_slice_count,
    fixed_slice_points,
    homogenize,
)
from equimirror.geometry.intlinalg import IntMatrix


def count_polytope(polytope, m, matrix=None, interior=False):
    rows = homogenize(polytope.facets)
    g = matrix if matrix is not None else IntMatrix.identity(polytope.dim + 1)
    return fixed_slice_count(rows, (), g, m, interior)


def homog(matrix):
    """Extend a d x d matrix to act on the cone coordinates."""
    n = matrix.nrows
    rows = [list(r) + [0] for r in matrix.rows]
    rows.append([0] * n + [1])
    return IntMatrix(rows)


def test_cube_counts():
    cube = build_cube(3)
    for m in range(5):
        assert count_polytope(cube, m) == (2 * m + 1) ** 3
        if m:
            assert count_polytope(cube, m, interior=True) == (2 * m - 1) ** 3
    assert count_polytope(cube, 0, interior=True) == 0
    assert count_polytope(cube, -1) == 0


def test_simplex_counts():
    for d in range(1, 5):
        simplex = build_simplex(d)
        for m in range(5):
            assert count_polytope(simplex, m) == comb(m + d, d)


def test_cross_counts():
    cross = build_cross(3)
    # octahedron: known Ehrhart values
    assert [count_polytope(cross, m) for m in range(4)] == [1, 7, 25, 63]


def test_fermat_counts():
    quintic = build_fermat(4)
    for m in (0, 1, 2, 5, 6):
        assert count_polytope(quintic, m) == comb(5 * m + 4, 4)
    assert count_polytope(quintic, 5) == 23751
    assert count_polytope(quintic, 6) == 46376


def test_interior_reciprocity():
    """interior(m) equals (-1)^d * L(-m) for the closed-form counters."""
    cube = build_cube(4)
    for m in range(1, 4):
        assert count_polytope(cube, m, interior=True) == (2 * m - 1) ** 4
    simplex = build_simplex(3)
    for m in range(1, 6):
        # (-1)^3 C(-m + 3, 3) = C(m - 1, 3)
        assert count_polytope(simplex, m, interior=True) == comb(m - 1, 3)


def test_fixed_counts_under_symmetry():
    cube = build_cube(3)
    rows = homogenize(cube.facets)
    minus = homog(IntMatrix.identity(3).scale(-1))
    # the only point of the m-dilate fixed by -I is the origin
    assert [fixed_slice_count(rows, (), minus, m) for m in range(4)] == [1, 1, 1, 1]
    assert fixed_slice_count(rows, (), minus, 1, interior=True) == 1
    swap = homog(IntMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]))
    # fixed points have x = y: (2m+1)^2 of them in the m-dilate
    for m in range(4):
        assert fixed_slice_count(rows, (), swap, m) == (2 * m + 1) ** 2


def test_fixed_counts_fermat_permutation():
    quintic = build_fermat(4)
    rows = homogenize(quintic.facets)
    g = homog(fermat_permutation("(12)(34)", 4))
    counts = [fixed_slice_count(rows, (), g, m) for m in range(4)]
    # the fixed subcone is 3-dimensional, so growth is cubic in m
    assert counts[0] == 1
    diffs3 = [counts[i + 3] - 3 * counts[i + 2] + 3 * counts[i + 1] - counts[i] for i in range(1)]
    assert all(d == counts[3] - 3 * counts[2] + 3 * counts[1] - counts[0] for d in diffs3)


def test_tight_facets_select_faces():
    cube = build_cube(3)
    rows = homogenize(cube.facets)
    ident = IntMatrix.identity(4)
    # one tight facet: a square face, (2m+1)^2 points per dilate
    for m in range(3):
        assert fixed_slice_count(rows, (0,), ident, m) == (2 * m + 1) ** 2
    # all facets tight at once: empty except height 0
    all_tight = tuple(range(len(cube.facets)))
    assert fixed_slice_count(rows, all_tight, ident, 0) == 1
    assert fixed_slice_count(rows, all_tight, ident, 1) == 0


def test_points_match_counts():
    rng = random.Random(505)
    square = build_cube(2)
    rows = homogenize(square.facets)
    mats = [
        IntMatrix.identity(3),
        homog(IntMatrix([[0, 1], [1, 0]])),
        homog(IntMatrix.identity(2).scale(-1)),
    ]
    for _ in range(30):
        m = rng.randint(0, 4)
        g = rng.choice(mats)
        interior = rng.random() < 0.5
        pts = fixed_slice_points(rows, (), g, m, interior)
        assert len(pts) == fixed_slice_count(rows, (), g, m, interior)
        for p in pts:
            assert p[-1] == m
            assert g.apply(p) == p
            for row in rows:
                s = sum(c * x for c, x in zip(row, p))
                assert s < 0 if interior else s <= 0
    assert fixed_slice_points(rows, (), mats[0], -1) == ()


def test_cache_grows_and_clears():
    from equimirror.geometry import counting

    counting.clear_cache()
    assert cache_size() == 0
    cube = build_cube(2)
    count_polytope(cube, 1)
    assert cache_size() == 1
    count_polytope(cube, 1)
    assert cache_size() == 1
    counting.clear_cache()
