""" Brute-force cross-checks for the combinatorial engine.

Tensor products are recomputed from formal characters: both characters are
expanded over the weight lattice, multiplied, and the result is peeled into
irreducibles by repeatedly removing the character of the highest remaining
weight. Characters are built from Gelfand-Tsetlin patterns, i.e. by
iterating the interlacing branching rule from gl(n) down to gl(1).

"""
from collections import Counter
from events import OBS
from events import violation
from functools import lru_cache
from itertools import permutations
from tensor import Decomposition
from tensor import labels_to_partition
from tensor import partition_to_labels
from tensor import weyl_dimension
from types import SimpleNamespace

# Whether the handler is subscribed
STATE = SimpleNamespace(enabled=False)


@lru_cache(maxsize=None)
def partition_character(partition):
    """ The character of the gl(n)-module with the given partition (n parts)
    as a tuple of (exponent vector, multiplicity).

    """

    partition = tuple(partition)

    if len(partition) == 1:
        return ((partition, 1), )

    total = sum(partition)
    character = Counter()

    def branches(i, chosen):
        if i == len(partition) - 1:
            yield tuple(chosen)
            return

        for part in range(partition[i + 1], partition[i] + 1):
            yield from branches(i + 1, chosen + [part])

    for smaller in branches(0, []):
        last = total - sum(smaller)

        for weight, multiplicity in partition_character(smaller):
            character[(*weight, last)] += multiplicity

    return tuple(sorted(character.items()))


def schur_character(labels, n=None):
    labels = tuple(labels)
    n = n or len(labels) + 1

    return Counter(dict(partition_character(labels_to_partition(labels))))


def multiply(first, second):
    product = Counter()

    for w1, m1 in first.items():
        for w2, m2 in second.items():
            product[tuple(a + b for a, b in zip(w1, w2))] += m1 * m2

    return product


def peel(character, n):
    """ Splits a character into irreducibles, highest weights first. """

    character = Counter({w: m for w, m in character.items() if m})
    constituents = Counter()

    while character:
        top = max(character)
        multiplicity = character[top]

        if multiplicity < 0 or list(top) != sorted(top, reverse=True):
            raise violation(
                f"Character does not peel at {top}", diff=dict(character))

        constituents[top] += multiplicity

        for weight, m in partition_character(top):
            character[weight] -= multiplicity * m

            if not character[weight]:
                del character[weight]

    return Decomposition.from_counter(n, Counter({
        partition_to_labels(p, n): m for p, m in constituents.items()
    }))


def lr_tensor_by_characters(E_labels, F_labels, n=None):
    E_labels, F_labels = tuple(E_labels), tuple(F_labels)
    n = n or len(E_labels) + 1

    result = peel(
        multiply(schur_character(E_labels, n), schur_character(F_labels, n)),
        n)

    expected = weyl_dimension(E_labels, n) * weyl_dimension(F_labels, n)

    if result.dimension() != expected:
        raise violation(
            f"Peeled {E_labels} x {F_labels} has dimension "
            f"{result.dimension()} instead of {expected}")

    return result


def affine_equivalent_by_permutations(t1, t2):
    """ Searches all of S_{n+1} for w with w(t1 + rho) - rho = t2. """

    shifted = t1.shifted()
    target = t2.shifted()

    return any(
        tuple(shifted[i] for i in p) == target
        for p in permutations(range(len(shifted))))


def check_lr_result(args, exception, result, took):
    """ Handler for 'tensor.lr.after' comparing against the characters. """

    if exception is not None:
        return

    n = getattr(args, 'n', None)
    expected = lr_tensor_by_characters(args.E_labels, args.F_labels, n)

    if expected != result:
        raise violation(
            f"Littlewood-Richardson mismatch for {args.E_labels} x "
            f"{args.F_labels}", diff={
                'engine': str(result),
                'characters': str(expected),
            })


def enabled():
    return STATE.enabled


def enable():
    """ Cross-checks every tensor product from now on. Enabling twice has
    no further effect.

    """

    if not STATE.enabled:
        OBS.on('tensor.lr.after', check_lr_result)
        STATE.enabled = True


def disable():
    if STATE.enabled:
        OBS.off('tensor.lr.after', check_lr_result)
        STATE.enabled = False
