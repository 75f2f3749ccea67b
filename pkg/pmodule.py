""" Irreducible p-modules and g-modules in Dynkin notation.

A homogeneous bundle on CP_n is written with the crossed node first, e.g.
"x2 o0 o1 o0" for rank 4. The numbers over the uncrossed nodes are the
Dynkin labels of the dual of the inducing representation, so every
conversion to an actual highest weight goes through `highest_weight`.

"""
import re
import symbolic

from constants import CROSSED_NODE
from constants import ELLIPSIS
from constants import UNCROSSED_NODE
from dataclasses import dataclass
from dataclasses import replace
from errors import NotDominant
from errors import NotHomogeneousBundle
from errors import SpecParseError
from rootdata import GlTuple
from rootdata import LWeight


def check_labels(labels, count):
    labels = tuple(labels)

    if len(labels) != count:
        raise ValueError(f"Expected {count} labels, got {len(labels)}")

    for label in labels:
        if not isinstance(label, int) or label < 0:
            raise NotDominant(f"Label {label} is not a non-negative integer")

    return labels


@dataclass(frozen=True)
class PModuleSpec:
    """ An irreducible p-module: the rank n of CP_n, the crossed entry k and
    the labels (a_1, ..., a_{n-1}) over the uncrossed nodes.

    The crossed entry is an integer or an affine expression in symbols.

    """

    rank: int
    crossed: object
    labels: tuple

    def __post_init__(self):
        if self.rank < 2:
            raise ValueError(f"CP_{self.rank} is not supported")

        object.__setattr__(
            self, 'labels', check_labels(self.labels, self.rank - 1))

        if not symbolic.is_integral(self.crossed):
            raise NotHomogeneousBundle(
                f"Crossed entry {self.crossed} is not an integer")

        object.__setattr__(self, 'crossed', symbolic.exact(self.crossed))

    @property
    def is_symbolic(self):
        return symbolic.is_symbolic(self.crossed)

    def twisted(self, twist):
        """ The module tensored with O(twist). """

        return replace(self, crossed=symbolic.add(self.crossed, twist))

    def sort_key(self):
        return (self.labels, symbolic.render(self.crossed))

    def __str__(self):
        return render_spec(self)


@dataclass(frozen=True)
class GModuleSpec:
    """ An irreducible sl(n+1)-module with labels (M, a_1, ..., a_{n-1}). """

    rank: int
    labels: tuple

    def __post_init__(self):
        if self.rank < 2:
            raise ValueError(f"CP_{self.rank} is not supported")

        object.__setattr__(
            self, 'labels', check_labels(self.labels, self.rank))

    @property
    def order(self):
        return self.labels[0]

    @property
    def base(self):
        return self.labels[1:]

    def sort_key(self):
        return self.labels

    def __str__(self):
        return ' '.join(f'o{a}' for a in self.labels)


def to_bcoords(g, twist=0):
    """ The tuple (-twist | M, M+a_1, ..., M+a_1+...+a_{n-1}). """

    b = []
    total = 0

    for label in g.labels:
        total += label
        b.append(total)

    return GlTuple((symbolic.negate(twist), *b))


def from_bcoords(t):
    """ Reads a p-module off an (a|b) tuple: the crossed entry is b_0 - a,
    the labels are the differences of consecutive b's.

    """

    tail = t.tail
    labels = tuple(tail[j] - tail[j - 1] for j in range(1, len(tail)))

    if any(label < 0 for label in labels):
        raise NotDominant(f"{t} is not p-dominant")

    return PModuleSpec(
        rank=t.rank,
        crossed=symbolic.subtract(tail[0], t.head),
        labels=labels,
    )


def label_weight(labels):
    """ Sums over the labels that give the weight coefficient at L_m. """

    return sum((len(labels) - i) * a for i, a in enumerate(labels))


def geometric_weight(p):
    """ The eigenvalue of the grading element on the module:

        -(n k + sum (n-i) a_i) / (n+1)

    """

    n = p.rank
    return symbolic.divide(
        symbolic.add(symbolic.scale(p.crossed, n), label_weight(p.labels)),
        -(n + 1))


def weight_of_labels(labels):
    """ The highest weight lambda of the sl(n)-module, with
    lambda_m = a_1 + ... + a_{n-m} and lambda_n = 0.

    """

    labels = tuple(labels)
    n = len(labels) + 1

    return LWeight(n, tuple(sum(labels[:n - m]) for m in range(1, n + 1)))


def highest_weight(p):
    return weight_of_labels(p.labels)


def labels_from_weight_and_gweight(hw_labels, gw):
    """ The p-module with the given labels whose geometric weight is `gw`.

    """

    hw_labels = tuple(hw_labels)
    n = len(hw_labels) + 1

    crossed = symbolic.divide(
        symbolic.add(symbolic.scale(gw, n + 1), label_weight(hw_labels)), -n)

    if not symbolic.is_integral(crossed):
        raise NotHomogeneousBundle(
            f"No such homogeneous bundle: labels {hw_labels} with geometric "
            f"weight {symbolic.render(gw)} need crossed entry "
            f"{symbolic.render(crossed)}")

    return PModuleSpec(rank=n, crossed=crossed, labels=hw_labels)


def tokenize(text, rank=None):
    """ Splits spec text into (node, position) pairs, expanding a single
    "..." into as many "o0" nodes as the rank requires.

    """

    tokens = [(m.group(), m.start()) for m in re.finditer(r'\S+', text)]

    if not tokens:
        raise SpecParseError("Empty bundle spec", 0)

    ellipses = [i for i, (node, _) in enumerate(tokens) if node == ELLIPSIS]

    if len(ellipses) > 1:
        raise SpecParseError(
            "Only one '...' is allowed", tokens[ellipses[1]][1])

    if ellipses:
        index = ellipses[0]
        position = tokens[index][1]

        if rank is None:
            raise SpecParseError("'...' requires a rank", position)

        missing = rank - len(tokens) + 1

        if missing < 0:
            raise SpecParseError(
                f"Spec has more than {rank} nodes", position)

        tokens[index:index + 1] = [('o0', position)] * missing

    if rank is not None and len(tokens) != rank:
        raise SpecParseError(
            f"Expected {rank} nodes, got {len(tokens)}", tokens[0][1])

    if len(tokens) < 2:
        raise SpecParseError("At least two nodes are required", 0)

    return tokens


def parse_uncrossed(node, position):
    match = UNCROSSED_NODE.match(node)

    if not match:
        raise SpecParseError(f"Expected an uncrossed node, got '{node}'",
                             position)

    return int(match.group('number'))


def parse_spec(text, rank=None):
    """ Parses "x<int> o<uint> ..." into a p-module. The crossed entry may
    be a bracketed expression like "x[1+v]".

    """

    tokens = tokenize(text, rank)
    node, position = tokens[0]
    match = CROSSED_NODE.match(node)

    if not match:
        raise SpecParseError(f"Expected a crossed node, got '{node}'",
                             position)

    if match.group('number') is not None:
        crossed = int(match.group('number'))
    else:
        crossed = symbolic.parse_weight(match.group('expr'), position + 2)

    labels = tuple(parse_uncrossed(n, p) for n, p in tokens[1:])

    return PModuleSpec(rank=len(tokens), crossed=crossed, labels=labels)


def parse_gspec(text, rank=None):
    """ Parses "o<uint> o<uint> ..." into a g-module. """

    tokens = tokenize(text, rank)
    labels = tuple(parse_uncrossed(n, p) for n, p in tokens)

    return GModuleSpec(rank=len(tokens), labels=labels)


def parse_bundle(text, rank=None):
    """ Parses either kind of spec, telling them apart by the first node. """

    if text.strip().startswith('x'):
        return parse_spec(text, rank)

    return parse_gspec(text, rank)


def render_spec(p):
    if p.is_symbolic:
        head = f'x[{symbolic.render(p.crossed)}]'
    else:
        head = f'x{p.crossed}'

    return ' '.join((head, *(f'o{a}' for a in p.labels)))
