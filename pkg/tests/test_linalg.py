"""Tests for the exact linear algebra layer.

The span tracker is the backbone of the rank and matrix-coefficient
computations later on, so its coordinate solve is validated by direct
re-expansion against randomly generated exact field elements.
"""

import random
from fractions import Fraction

import pytest

from qpair.cyclo import CycloField
from qpair.linalg import IncrementalSpan, Matrix, nullspace, rank_of

FIELD = CycloField(24)


def _random_scalar(rng):
    out = FIELD.zero
    for _ in range(3):
        out = out + FIELD.zeta(rng.randrange(24)) * FIELD.from_rational(
            Fraction(rng.randint(-4, 4)))
    return out


def _random_vector(rng, dim, support=None):
    vec = {}
    for i in range(dim) if support is None else support:
        c = _random_scalar(rng)
        if not c.is_zero():
            vec[i] = c
    return vec


def test_span_rank_saturates():
    rng = random.Random(11)
    span = IncrementalSpan(FIELD)
    added = [span.add(_random_vector(rng, 5)) for _ in range(8)]
    assert span.rank == 5
    assert added[:5] == [True] * 5 and added[5:] == [False] * 3


def test_span_contains():
    one = FIELD.one
    span = IncrementalSpan(FIELD)
    span.add({0: one, 1: one})
    span.add({1: one})
    assert span.contains({0: one})
    assert not span.contains({2: one})
    assert span.contains({})


def test_coordinates_re_expand_exactly():
    rng = random.Random(23)
    inputs = [_random_vector(rng, 6) for _ in range(6)]
    span = IncrementalSpan(FIELD, track=True)
    for v in inputs:
        span.add(v)
    coeffs = [_random_scalar(rng) for _ in inputs]
    target = {}
    for c, v in zip(coeffs, inputs):
        for i, x in v.items():
            target[i] = target.get(i, FIELD.zero) + c * x
    target = {i: c for i, c in target.items() if not c.is_zero()}
    coords = span.coordinates(target)
    assert coords is not None
    rebuilt = {}
    for pos, c in coords.items():
        for i, x in inputs[pos].items():
            rebuilt[i] = rebuilt.get(i, FIELD.zero) + c * x
    rebuilt = {i: c for i, c in rebuilt.items() if not c.is_zero()}
    assert rebuilt == target


def test_coordinates_outside_span_and_untracked():
    span = IncrementalSpan(FIELD, track=True)
    span.add({0: FIELD.one})
    assert span.coordinates({1: FIELD.one}) is None
    bare = IncrementalSpan(FIELD)
    bare.add({0: FIELD.one})
    with pytest.raises(ValueError):
        bare.coordinates({0: FIELD.one})


def test_coordinates_on_dependent_inputs():
    # the third input is the sum of the first two; coordinates may use any
    # valid combination, so only re-expansion is asserted
    one = FIELD.one
    a = {0: one, 1: one}
    b = {1: one, 2: one}
    c = {0: one, 1: one + one, 2: one}
    span = IncrementalSpan(FIELD, track=True)
    for v in (a, b, c):
        span.add(v)
    assert span.rank == 2
    coords = span.coordinates(c)
    rebuilt = {}
    for pos, coeff in coords.items():
        for i, x in (a, b, c)[pos].items():
            rebuilt[i] = rebuilt.get(i, FIELD.zero) + coeff * x
    assert {i: v for i, v in rebuilt.items() if not v.is_zero()} == c


def test_rank_of_helper():
    one = FIELD.one
    assert rank_of(FIELD, [{0: one}, {0: one + one}, {1: one}]) == 2


def test_nullspace_small_system():
    one = FIELD.one
    # x0 + x1 = 0 over 3 unknowns -> two free directions
    basis = nullspace(FIELD, [{0: one, 1: one}], 3)
    assert len(basis) == 2
    for vec in basis:
        s = vec.get(0, FIELD.zero) + vec.get(1, FIELD.zero)
        assert s.is_zero()


def test_nullspace_full_rank_is_trivial():
    one = FIELD.one
    eqs = [{0: one}, {1: one}, {2: one}]
    assert nullspace(FIELD, eqs, 3) == []


def test_matrix_arithmetic_round_trip():
    one = FIELD.one
    m = Matrix.zeros(FIELD, 2, 2)
    ident = Matrix.identity(FIELD, 2)
    assert (m + ident) == ident
    assert (ident * 3 - ident * 2) == ident
    two = ident * 2
    assert (two ** 3).scalar_of_identity() == FIELD.from_rational(8)
    assert ident.scalar_of_identity() == one
    assert (ident * FIELD.zeta(1)).scalar_of_identity() == FIELD.zeta(1)
    assert m.scalar_of_identity() == FIELD.zero  # zero matrix is 0 * identity
    assert Matrix.diagonal(FIELD, [one, one]) == ident
    offdiag = Matrix(FIELD, [[FIELD.zero, one], [FIELD.zero, FIELD.zero]])
    assert offdiag.scalar_of_identity() is None


def test_matrix_apply_and_trace():
    one = FIELD.one
    rows = [[FIELD.zero, one], [one, FIELD.zero]]
    swap = Matrix(FIELD, rows)
    assert swap.trace().is_zero()
    assert swap.apply([one, FIELD.zero]) == [FIELD.zero, one]
    assert (swap * swap) == Matrix.identity(FIELD, 2)
    assert swap.transpose() == swap
