"""

First Order Pairings
====================

Check the Casimir constants, the excluded weights of first order and the
coefficients of the invariant pairings against well-known formulas.

"""
import pytest
import symbolic

from errors import OutOfScope
from errors import TotallyDegenerate
from firstorder import casimir_constant
from firstorder import casimir_records
from firstorder import classify_first_order
from firstorder import first_order_excluded
from firstorder import mult_one_coefficients
from fractions import Fraction
from pmodule import PModuleSpec
from pmodule import parse_spec
from pmodule import weight_of_labels
from rootdata import LWeight
from rootdata import alpha


RANKS = range(2, 9)

v = symbolic.symbol('v')
w = symbolic.symbol('w')


def functions(n, weight=w):
    return PModuleSpec(n, weight, (0, ) * (n - 1))


def vector_fields(n, weight=v):
    return PModuleSpec(n, symbolic.add(1, weight), (0, ) * (n - 2) + (1, ))


def one_forms(n, weight=v):
    return PModuleSpec(
        n, symbolic.add(weight, -2), (1, ) + (0, ) * (n - 2))


def same(a, b):
    return symbolic.is_zero(symbolic.subtract(a, b))


def proportional(first, second):
    """ True if the two pairs agree up to a non-zero scale. """

    a, b = map(symbolic.to_sympy, first)
    c, d = map(symbolic.to_sympy, second)

    return not same(a, 0) and same(a * d, b * c)


def record_for(records, labels):
    record, = (r for r in records if r.component == labels)
    return record


@pytest.mark.parametrize('n', RANKS)
def test_casimir_constants(n):
    """ c = 0 for functions and c = n - 1 for vector fields with the
    trivial component.

    """

    trivial = LWeight.zero(n)
    assert casimir_constant(trivial, alpha(n), n) == 0

    vectors = weight_of_labels((0, ) * (n - 2) + (1, ))
    assert casimir_constant(vectors, trivial, n) == n - 1


@pytest.mark.parametrize('n', RANKS)
def test_vector_field_differences(n):
    """ omega - c over both components of g_1 (x) TM(v). """

    records = casimir_records(vector_fields(n))
    scale = Fraction(-n, n + 1)

    trivial = record_for(records, (0, ) * (n - 1))
    assert same(trivial.difference, scale * (n + 1 + v))

    if n > 2:
        adjoint = record_for(records, (1, ) + (0, ) * (n - 3) + (1, ))
    else:
        adjoint = record_for(records, (2, ))

    assert same(adjoint.difference, scale * (v + 1))

    # Checked at a few integer points as well
    for value in range(-2, 3):
        assert symbolic.evaluate(adjoint.difference, v=value) \
            == scale * (value + 1)


@pytest.mark.parametrize('n', RANKS)
def test_first_order_exclusions(n):
    """ Vector fields are excluded for v = -1 and v = -(n+1). """

    conditions = {r.condition for r in first_order_excluded(vector_fields(n))}
    assert conditions == {'v = -1', f'v = {-(n + 1)}'}

    # Concrete weights either hit a record or not
    excluded = first_order_excluded(vector_fields(n, -1))
    assert sum(r.excluded for r in excluded) == 1

    excluded = first_order_excluded(vector_fields(n, 0))
    assert not any(r.excluded for r in excluded)


@pytest.mark.parametrize('n', RANKS)
def test_functions_and_vector_fields(n):
    """ (n+v+1) X(f) - w div(X) f, the Lie derivative family. """

    families = classify_first_order(functions(n), vector_fields(n))
    family, = (f for f in families if f.target.labels == (0, ) * (n - 1))

    assert family.dimension == 1
    assert same(family.normalized[0], n + v + 1)
    assert same(family.normalized[1], -w)

    # The target has weight v + w
    assert same(family.target.crossed, v + w)


@pytest.mark.parametrize('n', RANKS)
def test_one_forms_and_functions(n):
    """ (v-2) s(df) - w (ds) f up to a global scale. """

    target = (2, ) + (0, ) * (n - 2)
    a, b = mult_one_coefficients(one_forms(n), functions(n), target)

    # a scales the derivative of the one-form, b the one of the function
    assert proportional((a, b), (-w, v - 2))


@pytest.mark.parametrize('n', RANKS)
def test_projective_pairing(n):
    """ Symmetric 2-vectors with one-forms onto functions, with constants
    (n+3) for the derivative of the form and 2 for the other one.

    """

    vectors = PModuleSpec(n, 2, (0, ) * (n - 2) + (2, ))
    forms = PModuleSpec(n, -2, (1, ) + (0, ) * (n - 2))

    families = classify_first_order(vectors, forms)
    family, = (f for f in families if f.target.labels == (0, ) * (n - 1))

    assert family.dimension == 1
    assert family.target.crossed == 0

    a, b = family.coefficients
    assert a * (n + 3) == b * 2


def test_cp4_golden():
    """ TM(v) with two-forms on CP_4: four targets, one of them twice. """

    V = parse_spec('x[1+v] o0 o0 o1')
    W = parse_spec('x[w-3] o0 o1 o0')

    families = {str(f.target): f for f in classify_first_order(V, W)}

    assert {k: f.dimension for k, f in families.items()} == {
        'x[v+w-4] o2 o0 o0': 1,
        'x[v+w-3] o0 o0 o2': 1,
        'x[v+w-4] o1 o1 o1': 1,
        'x[v+w-3] o0 o1 o0': 2,
    }

    # Two-parameter families have no explicit coefficients
    doubled = families['x[v+w-3] o0 o1 o0']
    assert doubled.coefficients is None
    assert 'explicit coefficients out of scope' in doubled.notes

    with pytest.raises(OutOfScope):
        mult_one_coefficients(V, W, (0, 1, 0))


def test_totally_degenerate():
    """ Functions of weight 0 with vector fields of weight -(n+1): both
    sides are excluded and two independent pairings remain.

    """

    n = 3
    V, W = functions(n, 0), vector_fields(n, -(n + 1))

    family, = (
        f for f in classify_first_order(V, W)
        if f.target.labels == (0, 0))

    assert family.degenerate

    with pytest.raises(TotallyDegenerate) as error:
        mult_one_coefficients(V, W, (0, 0))

    assert len(error.value.pairings) == 2


def test_missing_target():
    """ Targets outside of g_1 (x) V (x) W are out of scope. """

    with pytest.raises(OutOfScope):
        mult_one_coefficients(functions(3), functions(3), (0, 2))
