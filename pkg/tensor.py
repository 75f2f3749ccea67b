""" Tensor products of sl(n)-modules given by Dynkin labels.

Labels (a_1, ..., a_{n-1}) correspond to the partition of their suffix sums,
so the standard representation (1, 0, ..., 0) is the single box. In this
picture g_1 is the standard representation and symmetric powers of g_1 are
rows, which is why the Pieri rule adds horizontal strips.

"""
import symbolic

from collections import Counter
from dataclasses import dataclass
from errors import RankMismatch
from events import violation
from events import with_trigger
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pmodule import from_bcoords
from pmodule import geometric_weight
from pmodule import labels_from_weight_and_gweight
from pmodule import to_bcoords
from rootdata import GlTuple
from util import in_parallel


def labels_to_partition(labels):
    """ (a_1, ..., a_{n-1}) -> (a_1+...+a_{n-1}, ..., a_{n-1}, 0). """

    labels = tuple(labels)
    return tuple(sum(labels[i:]) for i in range(len(labels) + 1))


def partition_to_labels(partition, n):
    """ The labels of a partition with at most n rows. Full columns of
    height n are the determinant and drop out.

    """

    partition = tuple(partition) + (0, ) * (n - len(partition))

    if len(partition) > n or any(partition[n:]):
        raise ValueError(f"{partition} has more than {n} rows")

    return tuple(partition[i] - partition[i + 1] for i in range(n - 1))


def weyl_dimension(labels, n=None):
    """ Dimension of the irreducible sl(n)-module with the given labels:

        prod_{i<j} (lambda_i - lambda_j + j - i) / (j - i)

    """

    labels = tuple(labels)
    n = n or len(labels) + 1

    if len(labels) != n - 1:
        raise ValueError(f"sl({n}) takes {n - 1} labels, got {labels}")

    partition = labels_to_partition(labels)
    dimension = Fraction(1)

    for i in range(n):
        for j in range(i + 1, n):
            dimension *= Fraction(
                partition[i] - partition[j] + j - i, j - i)

    assert dimension.denominator == 1
    return dimension.numerator


@dataclass(frozen=True)
class Decomposition:
    """ A direct sum of irreducible sl(n)-modules, as (labels, multiplicity)
    terms sorted by labels.

    """

    rank: int
    terms: tuple

    def __post_init__(self):
        terms = tuple(sorted((tuple(k), m) for k, m in self.terms))
        keys = [k for k, _ in terms]

        if len(set(keys)) != len(keys):
            raise ValueError(f"Duplicate labels in {terms}")

        for labels, multiplicity in terms:
            if multiplicity < 1:
                raise ValueError(f"Multiplicity {multiplicity} of {labels}")

            if len(labels) != self.rank - 1:
                raise ValueError(f"{labels} is not a label of sl({self.rank})")

        object.__setattr__(self, 'terms', terms)

    @classmethod
    def from_counter(cls, rank, counter):
        return cls(rank, tuple((k, m) for k, m in counter.items() if m))

    @classmethod
    def irreducible(cls, labels):
        labels = tuple(labels)
        return cls(len(labels) + 1, ((labels, 1), ))

    def as_counter(self):
        return Counter(dict(self.terms))

    def multiplicity(self, labels):
        return dict(self.terms).get(tuple(labels), 0)

    def labels(self):
        return tuple(k for k, _ in self.terms)

    def total(self):
        return sum(m for _, m in self.terms)

    def dimension(self):
        return sum(m * weyl_dimension(k, self.rank) for k, m in self.terms)

    def __add__(self, other):
        assert self.rank == other.rank
        return Decomposition.from_counter(
            self.rank, self.as_counter() + other.as_counter())

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return ' + '.join(
            (f'{m}x' if m > 1 else '') + '(' + ','.join(map(str, k)) + ')'
            for k, m in self.terms)


def horizontal_strips(shape, size, rows, previous=None):
    """ Yields (new shape, boxes added per row) for every horizontal strip of
    the given size added to the shape, with at most `rows` rows.

    If `previous` holds the boxes added per row by the preceding letter of a
    Littlewood-Richardson filling, only strips that keep the reading word a
    lattice word are produced.

    """

    shape = tuple(shape) + (0, ) * (rows - len(shape))

    def fill(row, remaining, added, placed, before):
        if row == rows:
            if remaining == 0:
                yield tuple(shape[r] + added[r] for r in range(rows)), added
            return

        room = remaining if row == 0 else shape[row - 1] - shape[row]
        room = min(room, remaining)

        for count in range(room, -1, -1):

            # The letter's boxes so far may not outnumber the previous
            # letter's boxes in the rows above
            if previous is not None and placed + count > before:
                continue

            yield from fill(
                row + 1,
                remaining - count,
                added + (count, ),
                placed + count,
                before + (previous[row] if previous is not None else 0),
            )

    yield from fill(0, size, (), 0, 0)


def pieri_partitions(partition, l, rows):
    return tuple(shape for shape, _ in horizontal_strips(partition, l, rows))


def pieri_sym(E_labels, l, n=None):
    """ Decomposition of the l-th symmetric power of g_1 tensored with E. """

    E_labels = tuple(E_labels)
    n = n or len(E_labels) + 1

    if l < 0:
        raise ValueError(f"Negative symmetric power {l}")

    counter = Counter(
        partition_to_labels(shape, n)
        for shape in pieri_partitions(labels_to_partition(E_labels), l, n))

    repeated = {k: m for k, m in counter.items() if m > 1}

    if repeated:
        raise violation(
            f"Symmetric power {l} of g_1 with {E_labels} is not "
            "multiplicity free", diff=repeated)

    return Decomposition.from_counter(n, counter)


@lru_cache(maxsize=None)
def littlewood_richardson(lam, mu, rows):
    """ Counts the Littlewood-Richardson fillings of skew shapes nu/lam with
    content mu, for all nu with at most `rows` rows.

    """

    mu = tuple(m for m in mu if m)
    results = Counter()

    def place(shape, letter, previous):
        if letter > len(mu):
            results[shape] += 1
            return

        for new_shape, added in horizontal_strips(
                shape, mu[letter - 1], rows, previous):
            place(new_shape, letter + 1, added)

    place(tuple(lam) + (0, ) * (rows - len(lam)), 1, None)

    return results


@with_trigger('tensor.lr')
def lr_tensor(E_labels, F_labels, n=None):
    """ Decomposition of E (x) F with Littlewood-Richardson multiplicities.

    """

    E_labels, F_labels = tuple(E_labels), tuple(F_labels)
    n = n or len(E_labels) + 1

    if len(E_labels) != n - 1 or len(F_labels) != n - 1:
        raise ValueError(f"sl({n}) cannot tensor {E_labels} and {F_labels}")

    fillings = littlewood_richardson(
        labels_to_partition(E_labels), labels_to_partition(F_labels), n)

    counter = Counter()
    for shape, count in fillings.items():
        counter[partition_to_labels(shape, n)] += count

    return Decomposition.from_counter(n, counter)


def tensor_decompositions(first, second):
    """ Distributes the tensor product over two direct sums. """

    assert first.rank == second.rank

    pairs = tuple(product(first, second))
    products = in_parallel(
        lr_tensor, ((a, b, first.rank) for (a, _), (b, _) in pairs))

    counter = Counter()

    for ((_, m1), (_, m2)), decomposition in zip(pairs, products):
        for labels, m in decomposition:
            counter[labels] += m1 * m2 * m

    return Decomposition.from_counter(first.rank, counter)


def interlacing_tuples(g, twist, l):
    """ Yields the tuples (-twist+l | b~) with

        0 <= b~_0 <= b_0 <= b~_1 <= b_1 <= ... <= b~_{n-1} <= b_{n-1}

    whose entries sum to l less than the b's.

    """

    b = to_bcoords(g).tail
    head = symbolic.add(symbolic.negate(twist), l)

    def lower(j, remaining, chosen):
        if j < 0:
            if remaining == 0:
                yield GlTuple((head, *reversed(chosen)))
            return

        floor = b[j - 1] if j else 0

        # The remaining positions cannot absorb more than this
        capacity = sum(b[i] - (b[i - 1] if i else 0) for i in range(j))

        for amount in range(0, min(remaining, b[j] - floor) + 1):
            if remaining - amount > capacity:
                continue

            yield from lower(
                j - 1, remaining - amount, chosen + (b[j] - amount, ))

    yield from lower(len(b) - 1, l, ())


def interlacing_slot(g, twist, l):
    """ The p-module factors of the g-module tensored with O(twist) in the
    slot with offset l.

    """

    if l < 0:
        raise ValueError(f"Negative slot {l}")

    return tuple(sorted(
        (from_bcoords(t) for t in interlacing_tuples(g, twist, l)),
        key=lambda p: p.sort_key()))


def slot_count(g):
    """ Number of slots N+1 with N = M + a_1 + ... + a_{n-1}. """

    return sum(g.labels) + 1


@dataclass(frozen=True)
class SymbolSpace:
    """ The graded symbol space of M-th order bilinear operators: piece l is
    the l-th symmetric power of g_1 with V times the (M-l)-th with W.

    """

    order: int
    weight: object
    pieces: tuple

    @property
    def rank(self):
        return self.pieces[0].rank + 1

    def total(self):
        total = self.pieces[0]

        for piece in self.pieces[1:]:
            total = total + piece

        return total

    def multiplicity(self, labels):
        return sum(piece.multiplicity(labels) for piece in self.pieces)

    def target(self, labels):
        """ The bundle with the given labels at the weight of the space. """

        return labels_from_weight_and_gweight(labels, self.weight)


def symbol_space(V, W, M):
    if M < 0:
        raise ValueError(f"Negative order {M}")

    if V.rank != W.rank:
        raise RankMismatch(f"{V} and {W} live on different spaces")

    n = V.rank
    pieces = tuple(
        tensor_decompositions(
            pieri_sym(V.labels, l, n), pieri_sym(W.labels, M - l, n))
        for l in range(M + 1))

    weight = symbolic.add(geometric_weight(V), geometric_weight(W), M)

    return SymbolSpace(order=M, weight=weight, pieces=pieces)


def jet_filtration(V, W, M):
    """ The graded pieces of the bilinear jets up to order M. """

    return tuple(symbol_space(V, W, m) for m in range(M + 1))


def gmodule_dimension(g):
    return weyl_dimension(g.labels, g.rank + 1)
