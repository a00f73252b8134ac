"""Tests for the ideal/idempotent layer.

The heavy exhaustive sweeps (every ladder relation on every block, the
full rank-432 decomposition) run at (2,3).  Misprint adjudications whose
printed and corrected variants coincide at small parameters are re-run
at the smallest parameter pairs where they separate: (3,4) for the
index misprints and (3,5) for the normalizer sign.
"""

import pytest

from qpair.algebra import Algebra
from qpair.cyclo import Params
from qpair.ideals import BlockLabel, BlockSystem, NamedElement
from qpair.modules import phi

A23 = Algebra.for_pair(2, 3)
B23 = BlockSystem(A23)


def test_block_labels_and_kinds():
    labels = B23.block_labels()
    assert len(labels) == 6
    kinds = {tuple(lab): B23.block_kind(lab) for lab in labels}
    assert kinds == {
        (1, 1): "interior",
        (1, 3): "edge-1",
        (2, 1): "edge-2",
        (2, 2): "edge-2",
        (2, 3): "corner-plus",
        (0, 3): "corner-minus",
    }
    with pytest.raises(ValueError):
        B23.block_kind(BlockLabel(0, 1))


def test_idempotent_catalog_counts():
    # six primitive idempotents per block, 36 in total
    for lab in B23.block_labels():
        assert len(B23.primitive_idempotent_catalog(lab)) == 6
    assert len(B23.primitive_idempotent_catalog()) == 36


def test_averager_is_right_k_eigenvector():
    v = B23.weight_averager(1, 2, 3, 1, 1)
    assert len(v.terms) == 12
    K = A23.generator("K")
    ratio = B23.averager_ratio(1, 2, 3, 1, 1)
    assert v * K == v * ratio.inverse()
    # and the projection normalization: v * v = 2 p1 p2 v
    assert v * v == v * 12


def test_label_validation():
    with pytest.raises(ValueError):
        B23.weight_averager(2, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        B23.weight_averager(1, 3, 1, 1, 1)
    with pytest.raises(ValueError):
        B23.weight_averager(1, 2, 3, 3, 1)  # s1 > r1
    with pytest.raises(ValueError):
        B23.build_named_element("L", "down", 1, 1, 3, 1, 1)  # edge has no L
    with pytest.raises(ValueError):
        B23.build_named_element("B", "left", 1, 2, 3, 1, 1)  # corner: down only
    with pytest.raises(ValueError):
        B23.build_named_element("B", "down", 1, 1, 1, 1, 1, idx1=1)
    with pytest.raises(ValueError):
        B23.primitive_idempotent("X-type", 1, 1, 3, 1, 1)
    with pytest.raises(ValueError):
        B23.primitive_idempotent("P-boundary", 1, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        B23.primitive_idempotent("P-interior", 1, 2, 3, 1, 1)


def test_named_element_fields_and_memoization():
    el = B23.build_named_element("T", "up", 1, 1, 1, 1, 1)
    assert isinstance(el, NamedElement)
    assert (el.family, el.arrow, el.alpha) == ("T", "up", 1)
    assert el.value == B23.build_named_element("T", "up", 1, 1, 1, 1, 1).value
    assert el is B23.build_named_element("T", "up", 1, 1, 1, 1, 1)


def test_scalar_constants_values():
    consts = B23.scalar_constants(1, 2, 3)
    # 2 p1 p2 times the product of the interior ladder coefficients
    P = Params(2, 3)
    expected = P.rational(12)
    for i1 in range(1, 2):
        expected = expected * phi(P, 1, 1, i1, 2, 3)
    for i2 in range(1, 3):
        expected = expected * phi(P, 2, 1, i2, 2, 3)
    assert consts.Phi == expected
    assert consts.gamma == () and consts.delta == ()


def test_scalar_constants_reflection_symmetry():
    # Phi and the Psi sums are invariant under the sign/width reflection
    B25 = BlockSystem(Algebra.for_pair(2, 5))
    for alpha in (1, -1):
        for r2 in (1, 2, 3, 4):
            a = B25.scalar_constants(alpha, 1, r2)
            b = B25.scalar_constants(-alpha, 1, 5 - r2)
            assert (a.Phi, a.Psi1, a.Psi2) == (b.Phi, b.Psi1, b.Psi2)


def test_idempotents_square():
    for kind, alpha, r1, r2, s1, s2 in (
        ("X-type", 1, 2, 3, 2, 3),
        ("X-type", -1, 2, 3, 1, 1),
        ("P-boundary", 1, 1, 3, 1, 2),
        ("P-boundary", -1, 2, 1, 2, 1),
        ("P-interior", 1, 1, 1, 1, 1),
        ("P-interior", -1, 1, 2, 1, 1),
    ):
        e = B23.primitive_idempotent(kind, alpha, r1, r2, s1, s2)
        assert not e.is_zero()
        assert e * e == e


def test_boundary_top_exit_relation_spot():
    # lowering the top family at its bottom rung crosses into the left family
    up = B23.build_named_element("B", "up", 1, 1, 3, 1, 1, 0, 1)
    left = B23.build_named_element("B", "left", 1, 1, 3, 1, 1, 0, 1)
    assert A23.e(1) * up.value == left.value
    assert up.value != left.value


def test_ideal_basis_sizes():
    assert len(B23.ideal_basis("X-type", 1, 2, 3, 1, 1)) == 6
    assert len(B23.ideal_basis("P-boundary", 1, 1, 3, 1, 1)) == 12
    assert len(B23.ideal_basis("P-interior", 1, 1, 1, 1, 1)) == 24


def test_ladder_relations_all_blocks():
    for lab in B23.block_labels():
        checks = B23.verify_ladder_relations(lab)
        bad = [c for c in checks if not c.passed]
        assert not bad, [c.row() for c in bad]


def test_block_decomposition_report():
    checks = B23.verify_block_decomposition()
    bad = [c for c in checks if not c.passed]
    assert not bad, [c.row() for c in bad]
    ids = {c.check_id for c in checks}
    assert "blocks.total-rank" in ids
    assert "blocks.resolution-of-identity" in ids


def test_interior_sweep_at_2_5():
    # one interior ideal with a second-copy ladder deeper than one rung
    B25 = BlockSystem(Algebra.for_pair(2, 5))
    tally = B25._Tally()
    B25._sweep_one_ideal(tally, "P-interior", 1, 1, 2, 1, 1)
    checks = tally.checks("ladder[1,2]", anchor="ladder-relations")
    bad = [c for c in checks if not c.passed]
    assert not bad, [c.row() for c in bad]


def test_misprint_adjudications_where_separable():
    # the printed index/sign variants only differ from the corrected ones
    # at parameters with enough rungs; these are the smallest such pairs
    B34 = BlockSystem(Algebra.for_pair(3, 4))
    c = B34._adjudicate_top_extra_summand(1, 1, 2, 1, 1, BlockLabel(1, 2))
    assert c.passed and "printed index refuted" in c.detail
    c = B34._adjudicate_left_lowering_coefficient(1, 1, 2, BlockLabel(1, 2))
    assert "disagrees on 1" in c.detail

    B35 = BlockSystem(Algebra.for_pair(3, 5))
    c = B35._adjudicate_left_normalizer_sign(1, 1, 1, 1, 1, BlockLabel(1, 1))
    assert c.passed and "breaks it" in c.detail
