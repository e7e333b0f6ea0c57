"""Acceptance gate: every shipped guarantee, exact, with one line per criterion.

Each test covers one numbered criterion and prints a single
``criterion N (...): PASS/FAIL [elapsed]`` line (visible with ``-rA``/``-s``;
under plain ``pytest -v`` the test verdict itself is the per-criterion line).
All comparisons are exact — there is no tolerance anywhere.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from fractions import Fraction
from io import StringIO

from equimirror.algebra.bilaurent import BiLaurent
from equimirror.algebra.unipoly import UniPoly
from equimirror.cli.main import selftest
from equimirror.cli.models import ModelConfig, build_model
from equimirror.cli.report import element_order
from equimirror.combinatorics import verify_identities
from equimirror.geometry.cones import ConeComplex
from equimirror.geometry.intlinalg import IntMatrix
from equimirror.invariants import (
    cs_closed_forms,
    e_stringy_reflexive,
    euler_characteristics,
    hodge_diamond,
    hypersurface_checks,
    mirror_check,
    tables_for,
)

POSET_CHECKS = [
    "reciprocity",
    "h-palindromy",
    "stilde-palindromy",
    "g-convolution",
    "phi-reconstruction",
]
AFFINE_CHECKS = ["affine high-degree torus agreement", "affine v=1 specialization"]
STRINGY_CHECKS = ["stringy self-duality", "stringy strata agreement"]


def complex_for(builtin, d, words=()):
    polytope, group, _ = build_model(
        ModelConfig(builtin=builtin, d=d, group=tuple(words))
    )
    return ConeComplex(polytope, group)


@contextmanager
def criterion(num: int, label: str, budget: float):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        elapsed = time.perf_counter() - started
        print(f"criterion {num} ({label}): FAIL [{elapsed:.1f}s]")
        raise
    elapsed = time.perf_counter() - started
    if elapsed >= budget:
        print(f"criterion {num} ({label}): FAIL [{elapsed:.1f}s]")
        raise AssertionError(
            f"criterion {num} finished correct but took {elapsed:.1f}s"
            f" (budget {budget:.0f}s)"
        )
    print(f"criterion {num} ({label}): PASS [{elapsed:.1f}s]")


def test_criterion_1_cube4_trivial_group():
    with criterion(1, "4-cube, trivial group", 10.0):
        cx = complex_for("cube", 4)
        tables = tables_for(cx)
        top = cx.top_index
        assert tables.phi.poly(top, 0) == UniPoly((1, 76, 230, 76, 1))
        assert tables.hg.h_face(top, 0) == UniPoly((1, 12, 14, 12, 1))
        assert tables.hg.g_face(top, 0) == UniPoly((1, 11, 2))
        assert tables.stilde.poly(top, 0) == UniPoly((0, 1, 68, 68, 1))

        dual = cx.dual()
        dual_tables = tables_for(dual)
        assert dual_tables.phi.poly(dual.top_index, 0) == UniPoly((1, 4, 6, 4, 1))
        assert dual_tables.hg.g_face(dual.top_index, 0) == UniPoly((1, 3, 2))
        assert dual_tables.stilde.poly(dual.top_index, 0) == UniPoly((0, 1, 4, 4, 1))
        for f in range(dual.face_count):
            if 0 < dual.faces[f].dim < dual.cdim:
                assert dual_tables.stilde.poly(f, 0) == UniPoly.zero()

        primal = hodge_diamond(e_stringy_reflexive(cx))
        partner = hodge_diamond(e_stringy_reflexive(dual))
        assert (primal.invariant_entry(1, 1), primal.invariant_entry(2, 1)) == (4, 68)
        assert (partner.invariant_entry(1, 1), partner.invariant_entry(2, 1)) == (68, 4)
        assert euler_characteristics(e_stringy_reflexive(cx)).quotient == -128
        assert euler_characteristics(e_stringy_reflexive(dual)).quotient == 128


def test_criterion_2_cube4_central_quotient():
    with criterion(2, "4-cube with the central involution", 20.0):
        cx = complex_for("cube", 4, ("central",))
        tables = tables_for(cx)
        eps = cx.base_group.index_of[IntMatrix.identity(4).scale(-1)]
        top = cx.top_index
        assert tables.hg.h_face(top, eps) == UniPoly((1, 4, 6, 4, 1))
        assert tables.phi.poly(top, eps) == UniPoly((1, 4, 6, 4, 1))

        stringy = e_stringy_reflexive(cx)
        alpha4 = UniPoly((1, 4, 4, 1))
        closed_form = BiLaurent.from_unipoly(alpha4, 1, 1) - BiLaurent.monomial(
            3, 0
        ) * BiLaurent.from_unipoly(alpha4, -1, 1)
        assert cs_closed_forms(4).alpha == alpha4
        assert stringy.value_of_element(eps) == closed_form
        assert stringy.value_of_element(eps).at_one() == 0

        diamond = hodge_diamond(stringy)
        assert (diamond.invariant_entry(1, 1), diamond.invariant_entry(2, 1)) == (4, 36)
        partner = hodge_diamond(e_stringy_reflexive(cx.dual()))
        assert (partner.invariant_entry(1, 1), partner.invariant_entry(2, 1)) == (36, 4)
        assert euler_characteristics(stringy).quotient == -64
        assert euler_characteristics(e_stringy_reflexive(cx.dual())).quotient == 64
        assert mirror_check(cx).verdict is True


def mu_signature(cx, diamond):
    """Map (class size, element order) -> integer h^{2,1} character value."""
    out = {}
    for k, rep_idx in enumerate(cx.group.class_reps):
        rep = cx.group.elements[rep_idx]
        key = (cx.group.class_sizes[k], element_order(cx.group, rep))
        out[key] = int(diamond.hodge(2, 1).values[k])
    return out


# The quotient h^{2,1} values this table claims do not match the invariant
# dimensions the subgroup characters actually produce (only Z5 agrees); the
# assertion at the end of criterion 3 fails on the first six entries and is
# left failing deliberately.  The computed dimensions are 53, 29, 37, 21,
# 13, 21, 13 in the same order.
CLAIMED_QUOTIENT_H21 = {
    ("(12)(34)",): 59,  # Z2
    ("(12)(34)", "(13)(24)"): 41,  # Z2 x Z2
    ("(123)",): 49,  # Z3
    ("(12345)",): 21,  # Z5
    ("(12)(34)", "(123)"): 29,  # A4
    ("(12)(45)", "(23)(45)"): 33,  # Sym3
    ("(12)(35)", "(12345)"): 19,  # D5
}


def test_criterion_3_quintic_symmetries():
    with criterion(3, "quintic threefold under Sym5 and A5", 120.0):
        a5 = complex_for("fermat", 4, ("(12)(34)", "(123)", "(12345)"))
        assert a5.group.order == 60
        diamond = hodge_diamond(e_stringy_reflexive(a5))
        assert all(v == 1 for v in diamond.hodge(1, 1).values)
        assert mu_signature(a5, diamond) == {
            (1, 1): 101,
            (15, 2): 5,
            (20, 3): 5,
            (12, 5): 1,
        }
        assert sorted(int(v) for v in diamond.hodge(2, 1).values) == [1, 1, 5, 5, 101]
        partner = hodge_diamond(e_stringy_reflexive(a5.dual()))
        assert all(v == 1 for v in partner.hodge(2, 1).values)
        assert sorted(int(v) for v in partner.hodge(1, 1).values) == [1, 1, 5, 5, 101]
        assert (diamond.invariant_entry(1, 1), diamond.invariant_entry(2, 1)) == (1, 5)
        assert (partner.invariant_entry(1, 1), partner.invariant_entry(2, 1)) == (5, 1)

        sym5 = complex_for("fermat", 4, ("(12)", "(12345)"))
        assert sym5.group.order == 120
        sym5_diamond = hodge_diamond(e_stringy_reflexive(sym5))
        assert all(v == 1 for v in sym5_diamond.hodge(1, 1).values)
        even = {(1, 1): 101, (15, 2): 5, (20, 3): 5, (24, 5): 1}
        got = mu_signature(sym5, sym5_diamond)
        assert all(got[key] == value for key, value in even.items())
        assert mirror_check(sym5).verdict is True

        quotients = {}
        for words in CLAIMED_QUOTIENT_H21:
            sub = complex_for("fermat", 4, words)
            assert mirror_check(sub).verdict is True, words
            quotients[words] = hodge_diamond(
                e_stringy_reflexive(sub)
            ).invariant_entry(2, 1)
        assert mirror_check(a5).verdict is True

        assert quotients == CLAIMED_QUOTIENT_H21, (
            "claimed quotient h^{2,1} table does not match the computed"
            f" invariant dimensions: computed={quotients}"
            f" claimed={CLAIMED_QUOTIENT_H21}"
        )


def test_criterion_4_dimension_three_models():
    with criterion(4, "surface models and simplex sanity", 20.0):
        enriques = complex_for("cube", 3, ("central",))
        diamond = hodge_diamond(e_stringy_reflexive(enriques))
        assert diamond.invariant_entry(1, 1) == 10
        assert diamond.invariant_entry(2, 0) == 0
        assert diamond.invariant_entry(0, 2) == 0
        assert diamond.invariant == ((1, 0, 0), (0, 10, 0), (0, 0, 1))

        for d in range(1, 6):
            cx = complex_for("simplex", d)
            tables = tables_for(cx)
            assert tables.hg.h_face(cx.top_index, 0) == UniPoly((1,) * (d + 1))
            assert tables.hg.g_face(cx.top_index, 0) == UniPoly.one()


def test_criterion_5_identity_property_suites():
    with criterion(5, "identity suites over builtins and groups", 60.0):
        models = [
            ("cube", 2, ()),
            ("cube", 3, ("central", "(123)")),
            ("cube", 4, ()),
            ("cross", 3, ("central",)),
            ("simplex", 3, ("(12)",)),
            ("fermat", 3, ("(1234)",)),
            ("fermat", 4, ("(12345)",)),
        ]
        for name, d, words in models:
            cx = complex_for(name, d, words)
            poset = verify_identities(cx)
            surface = hypersurface_checks(cx)
            assert [c.name for c in poset.checks] == POSET_CHECKS, (name, d)
            expected = AFFINE_CHECKS + (
                STRINGY_CHECKS if cx.polytope.is_reflexive() else []
            )
            assert [c.name for c in surface.checks] == expected, (name, d)
            for check in poset.checks + surface.checks:
                assert check.ok, (name, d, words, check.name, check.failures[:3])


def test_criterion_6_selftest_determinism(tmp_path):
    with criterion(6, "byte-identical selftest reports", 120.0):
        blobs = []
        for attempt, threads in enumerate((1, 2)):
            json_path = tmp_path / f"selftest-{attempt}.json"
            code = selftest(threads=threads, json_path=json_path, out=StringIO())
            assert code == 0
            blobs.append(json_path.read_bytes())
        assert blobs[0] == blobs[1]
        document = json.loads(blobs[0])
        assert document["schema"] == 1
        assert len(document["selftest"]) == 10
        assert all(case["ok"] for case in document["selftest"])
