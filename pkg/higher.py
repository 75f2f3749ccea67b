""" Pairings of arbitrary order M.

An M-th order pairing V x W -> H is the projection of the product of the
two M-modules onto the summand whose top factor is H. The product splits
as needed unless the weight of V (or W) is excluded: then a factor deeper
in the series of V_M shares the central character of its top, and an
invariant linear operator of order l emanates from V.

For labels (a_1, ..., a_{n-1}) the excluded crossed entries are

    k = l - 1                                  (j = 0, l <= M)
    k = -(a_1 + ... + a_j + j - l + 1)          (1 <= j, l <= a_j)

"""
import symbolic

from dataclasses import dataclass
from errors import InvalidRecord
from errors import RankMismatch
from events import violation
from events import with_trigger
from pmodule import GModuleSpec
from pmodule import PModuleSpec
from pmodule import from_bcoords
from pmodule import geometric_weight
from pmodule import labels_from_weight_and_gweight
from pmodule import to_bcoords
from rootdata import GlTuple
from rootdata import affine_equivalent
from rootdata import rho_norm
from tensor import Decomposition
from tensor import interlacing_tuples
from tensor import pieri_sym
from tensor import symbol_space
from tensor import tensor_decompositions


@dataclass(frozen=True)
class ExclusionRecord:
    """ The crossed entry k for which an operator of order l leaves the
    bundle, lowering node j.

    """

    k: int
    l: int
    j: int
    operator_target: PModuleSpec

    def sort_key(self):
        return (self.l, self.j)

    def __str__(self):
        return f'k={self.k} (order {self.l}, node {self.j})'


@dataclass(frozen=True)
class Diagnostic:
    """ An exclusion record that is hit by one of the inputs. For symbolic
    inputs, `condition` says when.

    """

    side: str
    source: PModuleSpec
    record: ExclusionRecord
    condition: str = None

    def __str__(self):
        when = self.condition or f'k={self.record.k}'
        return (
            f'{self.side}={self.source} excluded for {when}: order '
            f'{self.record.l} operator onto {self.record.operator_target}')


@dataclass(frozen=True)
class HigherFamily:
    target: PModuleSpec
    dimension: int
    order: int
    sources: tuple
    notes: tuple = ()
    min_function_order: int = None


@dataclass(frozen=True)
class PairingReport:
    families: tuple
    diagnostics: tuple = ()
    hypothesis_satisfied: bool = True
    order: int = 1

    @property
    def pairing_count(self):
        return sum(f.dimension for f in self.families)

    def family(self, labels):
        for family in self.families:
            if family.target.labels == tuple(labels):
                return family

        return None


def canonical_bcoords(p):
    """ (0 | k, k+a_1, ..., k+a_1+...+a_{n-1}), the tuple of p with a = 0.
    """

    if p.is_symbolic:
        raise ValueError(f"{p} must have an integer crossed entry")

    return GlTuple((
        0, *(p.crossed + sum(p.labels[:j]) for j in range(p.rank))))


def same_central_character(p1, p2):
    """ True if the two p-modules induce generalized Verma modules with the
    same central character.

    Both are written as (a|b) tuples. Tuples that describe the same weight
    of sl(n+1) may differ by a constant, which is fixed by equating sums.

    """

    t1 = p1 if isinstance(p1, GlTuple) else canonical_bcoords(p1)
    t2 = p2 if isinstance(p2, GlTuple) else canonical_bcoords(p2)

    if t1.rank != t2.rank:
        raise RankMismatch(f"Cannot compare {t1} with {t2}")

    shift, remainder = divmod(sum(t1.entries) - sum(t2.entries), t1.rank + 1)

    if remainder:
        return False

    return affine_equivalent(t1, GlTuple(tuple(e + shift for e in t2.entries)))


def check_order(M):
    if M < 1:
        raise ValueError(f"Order {M} is not at least 1")


def operator_target(labels, k, l, j):
    """ The target of the order l operator from the bundle with crossed
    entry k that lowers node j of the interlacing tuple by l.

    """

    labels = tuple(labels)
    n = len(labels) + 1

    if not 0 <= j < n or l < 1:
        raise InvalidRecord(f"No node {j} or order {l} in rank {n}")

    if j == 0 and k != l - 1:
        raise InvalidRecord(f"k={k} is not excluded at node 0, order {l}")

    if j > 0 and (labels[j - 1] < l or k != -(sum(labels[:j]) + j - l + 1)):
        raise InvalidRecord(f"k={k} is not excluded at node {j}, order {l}")

    # Any order M >= l gives the same target
    g = GModuleSpec(n, (l, *labels))
    top = to_bcoords(g, twist=k - l)

    lowered = list(top.entries)
    lowered[0] += l
    lowered[j + 1] -= l

    return from_bcoords(GlTuple(tuple(lowered)))


def closed_form_records(labels, M):
    labels = tuple(labels)
    records = []

    for l in range(1, M + 1):
        records.append((l - 1, l, 0))

        for j in range(1, len(labels) + 1):
            if labels[j - 1] >= l:
                records.append((-(sum(labels[:j]) + j - l + 1), l, j))

    return records


@with_trigger('exclude.weights')
def excluded_weights(labels, M):
    """ All excluded weights up to order M, ordered by (l, j). """

    check_order(M)

    return tuple(sorted(
        (ExclusionRecord(k, l, j, operator_target(labels, k, l, j))
         for k, l, j in closed_form_records(labels, M)),
        key=lambda r: r.sort_key()))


def merge_difference(first, second):
    """ Entries of the strictly increasing `first` missing in `second`. """

    missing = []
    i = 0

    for entry in first:
        while i < len(second) and second[i] < entry:
            i += 1

        if i == len(second) or second[i] != entry:
            missing.append(entry)

    return missing


def central_character_clashes(labels, M, levels):
    """ Scans the given slots of V_M(E) for factors that share the central
    character of the top factor, for an unknown crossed entry k.

    The head of the top tuple is x = M - k, the one of slot l is x + l. After
    removing the rho-shifted b's the two tuples share, the multisets must
    satisfy {x} + D1 = {x + l} + D2, which pins x if and only if both
    differences are single entries d1, d2 with d1 - d2 = l.

    """

    labels = tuple(labels)
    g = GModuleSpec(len(labels) + 1, (M, *labels))
    top = to_bcoords(g)
    shift = range(2, g.rank + 2)

    b = tuple(e + r for e, r in zip(top.tail, shift))
    records = []

    for l in levels:
        for t in interlacing_tuples(g, 0, l):
            lowered = tuple(e + r for e, r in zip(t.tail, shift))

            d1 = merge_difference(b, lowered)
            d2 = merge_difference(lowered, b)

            if len(d1) != 1 or len(d2) != 1 or d1[0] - d2[0] != l:
                continue

            # x + 1 = d2, rho shifts the head by 1
            k = M + 1 - d2[0]

            positions = [
                j for j, (old, new) in enumerate(zip(top.tail, t.tail))
                if old != new
            ]

            if len(positions) != 1:
                raise violation(
                    f"Clash in slot {l} of {g} lowers nodes {positions}")

            j = positions[0]
            records.append(
                ExclusionRecord(k, l, j, operator_target(labels, k, l, j)))

    return tuple(sorted(records, key=lambda r: r.sort_key()))


def excluded_weights_via_characters(labels, M):
    """ The excluded weights found by comparing central characters slot by
    slot. They must agree with the closed form.

    """

    check_order(M)

    records = central_character_clashes(labels, M, range(1, M + 1))
    expected = excluded_weights(labels, M)

    if records != expected:
        raise violation(
            f"Central characters of {labels} up to order {M} disagree with "
            "the closed form", diff={
                'characters': [str(r) for r in records],
                'closed form': [str(r) for r in expected],
            })

    return records


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    offenders: tuple = ()


def splitting_admissible(m, k):
    """ Whether the top factor of V_M(E)(k - M) splits off, i.e. whether no
    deeper factor shares its central character.

    """

    top = to_bcoords(m.gmodule, twist=k - m.order)
    top_norm = rho_norm(top)
    offenders = []

    for l in range(1, sum(m.gmodule.labels) + 1):
        for t in interlacing_tuples(m.gmodule, k - m.order, l):

            norm = rho_norm(t)

            # Other weights of a g-module are shorter than its highest one
            if k == m.order and norm >= top_norm:
                raise violation(f"{t} is not shorter than the top {top}")

            # Permutations preserve the norm
            if norm == top_norm and affine_equivalent(top, t):
                offenders.append((l, from_bcoords(t)))

    if k == m.order and offenders:
        raise violation(f"The top of {m} clashes at k = M", diff=offenders)

    return AdmissibilityReport(
        admissible=not offenders, offenders=tuple(offenders))


def check_pair(V, W, M):
    check_order(M)

    if V.rank != W.rank:
        raise RankMismatch(f"{V} and {W} live on different spaces")


def diagnostics_for(side, p, M):
    """ Exclusion records up to order M hit by the crossed entry of p. """

    found = []

    for record in excluded_weights(p.labels, M):
        difference = symbolic.subtract(p.crossed, record.k)

        if symbolic.is_symbolic(difference):
            found.append(Diagnostic(
                side, p, record, symbolic.condition(difference)))

        elif difference == 0:
            found.append(Diagnostic(side, p, record))

    return tuple(found)


def hypothesis(V, W, M):
    return M >= max(V.labels + W.labels)


@with_trigger('classify.pairings')
def classify_pairings(V, W, M):
    """ One family per component H of the M-th symmetric power of g_1 with
    E (x) F, of dimension r equal to the multiplicity of H.

    """

    check_pair(V, W, M)

    n = V.rank
    weight = symbolic.add(geometric_weight(V), geometric_weight(W), M)

    components = tensor_decompositions(
        pieri_sym(V.labels, M, n), Decomposition.irreducible(W.labels))

    satisfied = hypothesis(V, W, M)
    notes = () if satisfied else ("hypothesis not satisfied", )

    families = tuple(
        HigherFamily(
            target=labels_from_weight_and_gweight(labels, weight),
            dimension=r,
            order=M,
            sources=(V, W),
            notes=notes,
        )
        for labels, r in components)

    return PairingReport(
        families=families,
        diagnostics=diagnostics_for('V', V, M) + diagnostics_for('W', W, M),
        hypothesis_satisfied=satisfied,
        order=M,
    )


def function_order(w, M):
    """ The order l at which the weight w of the function is excluded, if
    any: w = l - 1 with 1 <= l <= M.

    """

    if symbolic.is_symbolic(w) or not 0 <= w <= M - 1:
        return None

    return w + 1


@with_trigger('classify.functions')
def function_pairings(V, M, w=None):
    """ Pairings of V with functions of weight w (symbolic by default): one
    family onto every component of the M-th symmetric power of g_1 with E.

    """

    n = V.rank
    w = symbolic.symbol('w') if w is None else w
    functions = PModuleSpec(n, w, (0, ) * (n - 1))

    check_pair(V, functions, M)

    concrete = tuple(d for d in diagnostics_for('V', V, M) if not d.condition)
    conditions = tuple(d for d in diagnostics_for('V', V, M) if d.condition)

    if concrete:
        return PairingReport(
            families=(),
            diagnostics=concrete,
            hypothesis_satisfied=hypothesis(V, functions, M),
            order=M,
        )

    l = function_order(w, M)
    notes = []

    if l is not None:
        notes.append(f"no derivatives of f of order smaller than {l}")

    if not hypothesis(V, functions, M):
        notes.append("hypothesis not satisfied")

    weight = symbolic.add(geometric_weight(V), geometric_weight(functions), M)
    families = tuple(
        HigherFamily(
            target=labels_from_weight_and_gweight(labels, weight),
            dimension=r,
            order=M,
            sources=(V, functions),
            notes=tuple(notes),
            min_function_order=l,
        )
        for labels, r in pieri_sym(V.labels, M, n))

    return PairingReport(
        families=families,
        diagnostics=conditions,
        hypothesis_satisfied=hypothesis(V, functions, M),
        order=M,
    )


def second_order_budget(V, W, E):
    """ Counts the unknown coefficients and the obstruction terms of second
    order pairings onto E: the two second jets contribute one unknown each
    per copy of E, the mixed first jets one, and every copy of E in the
    mixed term gives two obstructions.

    """

    E = tuple(getattr(E, 'labels', E))
    pieces = symbol_space(V, W, 2).pieces
    mixed = pieces[1].multiplicity(E)
    pure = pieces[0].multiplicity(E) + pieces[2].multiplicity(E)

    return pure + mixed, 2 * mixed


def clashes_beyond(labels, M, extra=3):
    """ The slots beyond M that must not clash when M covers all labels. """

    return central_character_clashes(labels, M, range(M + 1, M + extra + 1))
