""" M-modules and their composition series.

The M-module V_M(E) is the irreducible sl(n+1)-module with labels
(M, a_1, ..., a_{n-1}). As a p-module it is filtered by the eigenvalues of
the grading element. The slots of that filtration are read off from the
interlacing rule, and the first M+1 of them are the symmetric powers of g_1
tensored with E.

Series are stored untwisted. The twist by O(t) is a tag that is only applied
when factors are queried or rendered.

"""
import symbolic

from collections import Counter
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from errors import RankMismatch
from events import violation
from events import with_trigger
from pmodule import GModuleSpec
from pmodule import PModuleSpec
from pmodule import check_labels
from pmodule import geometric_weight
from pmodule import labels_from_weight_and_gweight
from tensor import Decomposition
from tensor import gmodule_dimension
from tensor import interlacing_slot
from tensor import lr_tensor
from tensor import pieri_sym
from tensor import slot_count
from tensor import tensor_decompositions


@dataclass(frozen=True)
class MModule:
    """ V_M(E) tensored with O(twist). """

    base: tuple
    order: int
    twist: object = 0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"Order {self.order} is not at least 1")

        object.__setattr__(
            self, 'base', check_labels(self.base, len(tuple(self.base))))

        if not self.base:
            raise ValueError("An M-module needs at least one base label")

        object.__setattr__(self, 'twist', symbolic.exact(self.twist))

    @classmethod
    def of(cls, p, M):
        """ The M-module whose top factor is the given p-module. """

        return cls(base=p.labels, order=M, twist=symbolic.add(p.crossed, -M))

    @property
    def rank(self):
        return len(self.base) + 1

    @property
    def gmodule(self):
        return GModuleSpec(self.rank, (self.order, *self.base))

    @property
    def top(self):
        return PModuleSpec(
            self.rank, symbolic.add(self.order, self.twist), self.base)

    def twisted(self, twist):
        return replace(self, twist=symbolic.add(self.twist, twist))

    def dimension(self):
        return gmodule_dimension(self.gmodule)

    def __str__(self):
        text = f'V{self.order}<{" ".join(f"o{a}" for a in self.base)}>'

        if symbolic.is_zero(self.twist):
            return text

        return f'{text}({symbolic.render(self.twist)})'


@dataclass(frozen=True)
class Factor:
    """ A p-module in a slot, untwisted, with its multiplicity and the
    g-summand it came from, if known.

    """

    spec: PModuleSpec
    multiplicity: int = 1
    source: GModuleSpec = None

    def sort_key(self):
        return (
            self.spec.sort_key(),
            self.source.sort_key() if self.source else (),
        )


@dataclass(frozen=True)
class CompositionSeries:
    """ Slots of factors, slot j having the geometric weight of slot 0
    plus j.

    """

    rank: int
    slots: tuple
    twist: object = 0
    origin: str = ''
    weight: object = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'slots', tuple(
            tuple(sorted(slot, key=lambda f: f.sort_key()))
            for slot in self.slots))

    def __len__(self):
        return len(self.slots)

    def factors(self, j):
        """ The twisted factors of slot j with their multiplicities. """

        return tuple(
            (f.spec.twisted(self.twist), f.multiplicity)
            for f in self.slots[j])

    def sourced(self, j):
        """ The twisted factors of slot j with their multiplicities and the
        g-summands they came from.

        """

        return tuple(
            (f.spec.twisted(self.twist), f.multiplicity, f.source)
            for f in self.slots[j])

    def counter(self, j):
        """ Untwisted factors of slot j, ignoring their sources. """

        counter = Counter()

        for f in self.slots[j]:
            counter[f.spec] += f.multiplicity

        return counter

    def decomposition(self, j):
        """ Slot j as a sum of sl(n)-modules. """

        counter = Counter()

        for f in self.slots[j]:
            counter[f.spec.labels] += f.multiplicity

        return Decomposition.from_counter(self.rank, counter)

    def merged(self):
        """ The same series with factors of equal type combined. """

        return replace(self, slots=tuple(
            tuple(Factor(spec, m) for spec, m in self.counter(j).items())
            for j in range(len(self))))

    def top(self):
        return self.factors(0)[0][0]

    def dimension(self):
        return sum(self.decomposition(j).dimension() for j in range(len(self)))


def gmodule_series(g, twist=0, origin=''):
    """ The composition series of any g-module (M may be 0) from the
    interlacing rule.

    """

    slots = tuple(
        tuple(Factor(p, 1, g) for p in interlacing_slot(g, 0, l))
        for l in range(slot_count(g)))

    weight = geometric_weight(slots[0][0].spec)

    for j, slot in enumerate(slots):
        for f in slot:
            if geometric_weight(f.spec) != weight + j:
                raise violation(
                    f"{f.spec} sits in slot {j} of {g} but has geometric "
                    f"weight {geometric_weight(f.spec)}")

    return CompositionSeries(
        rank=g.rank,
        slots=slots,
        twist=twist,
        origin=origin or str(g),
        weight=weight,
    )


@with_trigger('series.build')
def series(m):
    """ The composition series of an M-module. The first M+1 slots are
    checked against the Pieri rule.

    """

    result = gmodule_series(m.gmodule, twist=m.twist, origin=str(m))

    for j in range(min(m.order + 1, len(result))):
        expected = pieri_sym(m.base, j, m.rank)

        if result.decomposition(j) != expected:
            raise violation(
                f"Slot {j} of {m} is not the symmetric power of g_1 with "
                "its base", diff={
                    'interlacing': str(result.decomposition(j)),
                    'pieri': str(expected),
                })

    return result


def check_rank(v, w):
    if v.rank != w.rank:
        raise RankMismatch(f"{v} and {w} live on different spaces")


@with_trigger('series.tensor')
def tensor_series(v, w):
    """ The slotwise tensor product of the two series: slot s collects the
    products of slot i of v with slot j of w for i + j = s.

    """

    check_rank(v, w)

    first, second = series(v), series(w)
    weight = first.weight + second.weight
    slots = []

    for s in range(len(first) + len(second) - 1):
        total = None

        lowest = max(0, s - len(second) + 1)
        highest = min(s, len(first) - 1)

        for i in range(lowest, highest + 1):
            product = tensor_decompositions(
                first.decomposition(i), second.decomposition(s - i))

            total = product if total is None else total + product

        slots.append(tuple(
            Factor(labels_from_weight_and_gweight(labels, weight + s), m)
            for labels, m in total))

    return CompositionSeries(
        rank=v.rank,
        slots=tuple(slots),
        twist=symbolic.add(v.twist, w.twist),
        origin=f'{v} x {w}',
        weight=weight,
    )


def g_split(v, w):
    """ The sl(n+1)-decomposition of the product of the two g-modules. """

    check_rank(v, w)

    decomposition = lr_tensor(
        v.gmodule.labels, w.gmodule.labels, v.rank + 1)

    return tuple(
        (GModuleSpec(v.rank, labels), multiplicity)
        for labels, multiplicity in decomposition)


def split_offset(g, weight):
    """ The slot in which the top factor of the summand g lands, given the
    geometric weight of slot 0 of the product.

    """

    offset = geometric_weight(PModuleSpec(g.rank, g.order, g.base)) - weight

    if offset.denominator != 1 or offset < 0:
        raise violation(f"{g} cannot start at slot {offset}")

    return int(offset)


def split_series(v, w):
    """ The product series assembled from the series of the summands of
    g_split, each factor remembering its summand.

    """

    weight = geometric_weight(PModuleSpec(v.rank, v.order, v.base)) \
        + geometric_weight(PModuleSpec(w.rank, w.order, w.base))

    count = slot_count(v.gmodule) + slot_count(w.gmodule) - 1
    slots = [[] for _ in range(count)]

    for g, multiplicity in g_split(v, w):
        offset = split_offset(g, weight)
        summand = gmodule_series(g)

        for j, slot in enumerate(summand.slots):
            if offset + j >= len(slots):
                raise violation(f"{g} runs past the last slot of {v} x {w}")

            slots[offset + j].extend(
                replace(f, multiplicity=f.multiplicity * multiplicity)
                for f in slot)

    return CompositionSeries(
        rank=v.rank,
        slots=tuple(tuple(slot) for slot in slots),
        twist=symbolic.add(v.twist, w.twist),
        origin=f'{v} x {w} by summands',
        weight=weight,
    )


@dataclass(frozen=True)
class SlotDiff:
    slot: int
    missing: tuple
    extra: tuple

    def __str__(self):
        missing = ', '.join(f'{m}x {p}' for p, m in self.missing)
        extra = ', '.join(f'{m}x {p}' for p, m in self.extra)
        return f'slot {self.slot}: missing [{missing}] extra [{extra}]'


@dataclass(frozen=True)
class SlotReport:
    slots: int
    summands: tuple
    diffs: tuple = ()
    by_summand: CompositionSeries = field(default=None, compare=False)

    @property
    def ok(self):
        return not self.diffs


def compare_slots(expected, actual):
    """ Compares two lists of slot counters, returning the differing slots.
    """

    diffs = []

    for j in range(max(len(expected), len(actual))):
        e = expected[j] if j < len(expected) else Counter()
        a = actual[j] if j < len(actual) else Counter()

        missing, extra = e - a, a - e

        if missing or extra:
            diffs.append(SlotDiff(
                slot=j,
                missing=tuple(sorted(
                    missing.items(), key=lambda i: i[0].sort_key())),
                extra=tuple(sorted(
                    extra.items(), key=lambda i: i[0].sort_key())),
            ))

    return tuple(diffs)


@with_trigger('split.check')
def verify_slot_consistency(v, w):
    """ The series of the product must be the union of the series of its
    g-summands, aligned by slot.

    """

    expected = tensor_series(v, w)
    actual = split_series(v, w)

    diffs = compare_slots(
        [expected.counter(j) for j in range(len(expected))],
        [actual.counter(j) for j in range(len(actual))],
    )

    report = SlotReport(
        slots=len(expected),
        summands=g_split(v, w),
        diffs=diffs,
        by_summand=actual,
    )

    if not report.ok:
        raise violation(
            f"Slots of {v} x {w} do not match its summands",
            diff=[str(d) for d in diffs])

    return report


def predictable_depth(component, slot, M):
    """ The crossed entry of an untwisted factor in the given slot of the
    product of two order-M modules, which is at least 2(M - slot).

    """

    if symbolic.is_symbolic(component.crossed):
        raise ValueError(f"{component} must be untwisted")

    if component.crossed < 2 * (M - slot):
        raise violation(
            f"{component} in slot {slot} has crossed entry below "
            f"{2 * (M - slot)}")

    return component.crossed
