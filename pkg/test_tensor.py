"""

Tensor Products
===============

Check the Pieri and Littlewood-Richardson rules, the Weyl dimension
formula and the interlacing rule against each other and against brute
force character computations.

"""
import pytest
import symbolic

from collections import Counter
from itertools import product
from oracle import lr_tensor_by_characters
from oracle import schur_character
from pmodule import GModuleSpec
from pmodule import PModuleSpec
from tensor import Decomposition
from tensor import gmodule_dimension
from tensor import interlacing_slot
from tensor import jet_filtration
from tensor import labels_to_partition
from tensor import lr_tensor
from tensor import partition_to_labels
from tensor import pieri_sym
from tensor import slot_count
from tensor import symbol_space
from tensor import tensor_decompositions
from tensor import weyl_dimension


def all_labels(n, largest):
    return product(range(largest + 1), repeat=n - 1)


def test_partitions():
    """ Labels are the differences of the rows of a partition. """

    assert labels_to_partition((1, 0, 2)) == (3, 2, 2, 0)
    assert partition_to_labels((3, 2, 2, 0), 4) == (1, 0, 2)

    # Full columns drop out
    assert partition_to_labels((4, 3, 3, 1), 4) == (1, 0, 2)

    with pytest.raises(ValueError):
        partition_to_labels((1, 1, 1, 1, 1), 4)


@pytest.mark.parametrize('labels, n, dimension', (
    ((1, ), 2, 2),
    ((1, 1), 3, 8),
    ((0, 1, 0), 4, 6),
    ((1, 0, 0, 1), 5, 24),
    ((2, 0, 0), 4, 10),
    ((0, 0, 0), 4, 1),
))
def test_weyl_dimension(labels, n, dimension):
    """ Dimensions of well-known modules. """

    assert weyl_dimension(labels, n) == dimension

    # The character has as many weights, counted with multiplicity
    assert sum(schur_character(labels, n).values()) == dimension


def test_lr_examples():
    """ The standard representation times its dual is adjoint plus trivial.
    """

    assert lr_tensor((1, 0), (0, 1)) == Decomposition(3, (
        ((1, 1), 1),
        ((0, 0), 1),
    ))

    assert str(lr_tensor((1, 1), (1, 1))) \
        == '(0,0) + (0,3) + 2x(1,1) + (2,2) + (3,0)'


@pytest.mark.parametrize('n', range(2, 6))
def test_lr_dimensions(n):
    """ Dimensions add up for every product of small modules. """

    for E, F in product(all_labels(n, 1), repeat=2):
        result = lr_tensor(E, F, n)
        assert result.dimension() == weyl_dimension(E, n) * weyl_dimension(
            F, n)


@pytest.mark.parametrize('n, largest', ((2, 3), (3, 2), (4, 2)))
def test_lr_against_characters(n, largest, with_oracle):
    """ The Littlewood-Richardson rule agrees with character peeling. The
    oracle fixture additionally checks every product made on the way.

    """

    for E, F in product(all_labels(n, largest), repeat=2):
        assert lr_tensor(E, F, n) == lr_tensor_by_characters(E, F, n)


@pytest.mark.parametrize('n', range(2, 6))
def test_pieri_is_multiplicity_free(n):
    """ Symmetric powers of g_1 times E are multiplicity free and agree
    with the Littlewood-Richardson rule.

    """

    for labels in all_labels(n, 2):
        for l in range(4):
            result = pieri_sym(labels, l, n)

            assert all(m == 1 for _, m in result)

            row = (l, ) + (0, ) * (n - 2)
            assert result == lr_tensor(row, labels, n)


def test_pieri_vector_fields():
    """ g_1 times vector fields is the adjoint plus the trivial module. """

    for n in range(3, 7):
        vectors = (0, ) * (n - 2) + (1, )
        adjoint = (1, ) + (0, ) * (n - 3) + (1, )

        assert pieri_sym(vectors, 1, n).labels() == tuple(sorted((
            (0, ) * (n - 1),
            adjoint,
        )))


def test_tensor_decompositions():
    """ Products distribute over direct sums, with multiplicities. """

    first = Decomposition(3, (((1, 0), 2), ((0, 0), 1)))
    second = Decomposition.irreducible((0, 1))

    result = tensor_decompositions(first, second)

    assert result.as_counter() == Counter({
        (1, 1): 2,
        (0, 0): 2,
        (0, 1): 1,
    })


@pytest.mark.parametrize('n', range(2, 6))
def test_interlacing_dimensions(n):
    """ The slots of a g-module add up to its dimension. """

    for base in all_labels(n, 1):
        for M in range(3):
            g = GModuleSpec(n, (M, *base))

            total = sum(
                weyl_dimension(p.labels, n)
                for l in range(slot_count(g))
                for p in interlacing_slot(g, 0, l))

            assert total == gmodule_dimension(g)


def test_interlacing_example():
    """ The adjoint of sl(3) in its three slots. """

    g = GModuleSpec(2, (1, 1))

    assert interlacing_slot(g, 0, 0) == (PModuleSpec(2, 1, (1, )), )
    assert set(interlacing_slot(g, 0, 1)) == {
        PModuleSpec(2, -1, (2, )),
        PModuleSpec(2, 0, (0, )),
    }
    assert interlacing_slot(g, 0, 2) == (PModuleSpec(2, -2, (1, )), )


def test_symbol_space_second_order():
    """ Functions times vector fields at order two: the target
    (1,0,...,0) occurs once in each pure piece and twice in the mixed one.

    """

    v, w = symbolic.symbol('v'), symbolic.symbol('w')

    for n in range(2, 7):
        zeros = (0, ) * (n - 1)
        functions = PModuleSpec(n, w, zeros)
        vectors = PModuleSpec(n, 1 + v, zeros[1:] + (1, ))
        target = (1, ) + zeros[1:]

        space = symbol_space(functions, vectors, 2)

        assert [p.multiplicity(target) for p in space.pieces] == [1, 2, 1]
        assert space.multiplicity(target) == 4

        # Crossed entry v + w - 2
        crossed = space.target(target).crossed
        assert symbolic.evaluate(crossed, v=3, w=5) == 6


def test_jet_filtration():
    """ The jets of order up to M have one graded piece per order. """

    n = 3
    functions = PModuleSpec(n, 0, (0, 0))
    pieces = jet_filtration(functions, functions, 2)

    assert [p.order for p in pieces] == [0, 1, 2]

    # Order m pairs the symmetric powers of g_1 with l + (m - l) = m
    assert [len(p.pieces) for p in pieces] == [1, 2, 3]

    # Each order raises the weight by one
    assert pieces[2].weight - pieces[1].weight == 1
