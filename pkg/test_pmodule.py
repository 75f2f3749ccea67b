"""

Bundle Specs
============

Parse and render bundle specs, and convert between Dynkin labels, (a|b)
tuples and geometric weights.

"""
import pytest
import symbolic

from errors import NotDominant
from errors import NotHomogeneousBundle
from errors import SpecParseError
from fractions import Fraction
from pmodule import GModuleSpec
from pmodule import PModuleSpec
from pmodule import from_bcoords
from pmodule import geometric_weight
from pmodule import labels_from_weight_and_gweight
from pmodule import parse_bundle
from pmodule import parse_gspec
from pmodule import parse_spec
from pmodule import to_bcoords
from rootdata import GlTuple


def test_parse_plain_spec():
    """ A spec with an integer crossed entry. """

    p = parse_spec('x-2 o1 o0 o0')

    assert p == PModuleSpec(rank=4, crossed=-2, labels=(1, 0, 0))
    assert str(p) == 'x-2 o1 o0 o0'


def test_parse_symbolic_spec():
    """ Bracketed crossed entries are affine expressions in symbols. """

    p = parse_spec('x[1+v] o0 o0 o1')

    assert p.is_symbolic
    assert str(p) == 'x[v+1] o0 o0 o1'
    assert symbolic.evaluate(p.crossed, v=3) == 4

    # Expressions without symbols become plain integers
    assert parse_spec('x[2-5] o1').crossed == -3


def test_parse_ellipsis():
    """ A single '...' expands to as many o0 nodes as the rank needs. """

    p = parse_spec('x[v] o0 ... o0 o2', rank=6)
    assert p.labels == (0, 0, 0, 0, 2)

    with pytest.raises(SpecParseError) as error:
        parse_spec('x[v] o0 ... o2')

    assert 'rank' in error.value.message


@pytest.mark.parametrize('text, position', (
    ('y1 o0', 0),
    ('x1 o0 o-1', 6),
    ('x1 o0 p1', 6),
    ('x[1+q] o0', 2),
    ('x[v*v] o0', 2),
    ('x[v/2] o0', 2),
    ('x1', 0),
    ('x[v] o0 ... ...', 12),
    ('x[v] ... o1 o0 ...', 15),
))
def test_parse_errors(text, position):
    """ Malformed specs are rejected with the position of the problem. """

    with pytest.raises(SpecParseError) as error:
        parse_spec(text)

    assert error.value.position == position


def test_parse_rank_mismatch():
    """ The rank, if given, must match the number of nodes. """

    with pytest.raises(SpecParseError):
        parse_spec('x1 o0 o0', rank=4)


def test_parse_gmodules():
    """ Specs without a crossed node describe g-modules. """

    g = parse_bundle('o1 o0 o1 o0')

    assert g == GModuleSpec(rank=4, labels=(1, 0, 1, 0))
    assert g.order == 1
    assert g.base == (0, 1, 0)
    assert str(g) == 'o1 o0 o1 o0'

    assert parse_gspec('o2 ... o1', rank=3).labels == (2, 0, 1)
    assert isinstance(parse_bundle('x0 o0 o0'), PModuleSpec)


def test_bcoords():
    """ (a|b) tuples hold the partial sums of the labels. """

    g = GModuleSpec(4, (1, 0, 1, 0))

    assert to_bcoords(g) == GlTuple((0, 1, 1, 2, 2))
    assert to_bcoords(g, twist=3) == GlTuple((-3, 1, 1, 2, 2))

    # The crossed entry is b_0 - a, the labels are the differences
    assert from_bcoords(GlTuple((0, 1, 1, 2, 2))) == PModuleSpec(
        4, 1, (0, 1, 0))

    assert from_bcoords(GlTuple((2, 0, 1, 1, 2))) == PModuleSpec(
        4, -2, (1, 0, 1))

    with pytest.raises(NotDominant):
        from_bcoords(GlTuple((0, 2, 1, 1)))


@pytest.mark.parametrize('n', range(2, 9))
def test_geometric_weights(n):
    """ Weights of functions and vector fields with symbolic weights. """

    v, w = symbolic.symbol('v'), symbolic.symbol('w')
    zeros = (0, ) * (n - 1)

    functions = PModuleSpec(n, w, zeros)
    vectors = PModuleSpec(n, 1 + v, zeros[1:] + (1, ))

    assert symbolic.is_zero(symbolic.subtract(
        geometric_weight(functions), -w * Fraction(n, n + 1)))

    expected = -(n * v + n + 1) / symbolic.to_sympy(n + 1)
    assert symbolic.is_zero(
        symbolic.subtract(geometric_weight(vectors), expected))

    # One-forms of weight zero have geometric weight 1
    assert geometric_weight(PModuleSpec(n, -2, (1, ) + zeros[1:])) == 1


@pytest.mark.parametrize('n', range(2, 7))
def test_labels_from_geometric_weight(n):
    """ The geometric weight pins the crossed entry, if it is integral. """

    labels = (1, ) + (0, ) * (n - 2)

    for crossed in range(-4, 5):
        p = PModuleSpec(n, crossed, labels)
        assert labels_from_weight_and_gweight(labels, geometric_weight(p)) == p

    # Shifting the weight by 1/(n+1) shifts the crossed entry by -1/n
    shifted = geometric_weight(PModuleSpec(n, 0, labels)) + Fraction(1, n + 1)

    with pytest.raises(NotHomogeneousBundle):
        labels_from_weight_and_gweight(labels, shifted)


def test_invalid_modules():
    """ Labels must be non-negative integers, one per uncrossed node. """

    with pytest.raises(NotDominant):
        PModuleSpec(3, 0, (1, -1))

    with pytest.raises(ValueError):
        PModuleSpec(3, 0, (1, ))

    with pytest.raises(NotHomogeneousBundle):
        PModuleSpec(3, Fraction(1, 2), (0, 0))
