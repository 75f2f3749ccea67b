""" First order invariant bilinear pairings.

A first order pairing V x W -> E is built from the two first jets. Whether
the derivative of a section of V can be combined invariantly depends on the
constants c of the Casimir operator on the components tau of g_1 (x) V:
if the geometric weight of V equals such a constant, the first jet splits
into an invariant operator V -> V(tau) instead.

"""
import symbolic

from dataclasses import dataclass
from errors import OutOfScope
from errors import RankMismatch
from errors import TotallyDegenerate
from events import violation
from events import with_trigger
from fractions import Fraction
from pmodule import geometric_weight
from pmodule import labels_from_weight_and_gweight
from pmodule import weight_of_labels
from rootdata import alpha
from rootdata import casimir_value
from tensor import lr_tensor
from tensor import pieri_sym
from util import in_parallel


def casimir_constant(gamma, delta, n):
    """ -1/2 [(delta, delta+2rho) - (gamma, gamma+2rho) - (alpha, alpha+2rho)]
    """

    assert gamma.rank == delta.rank == n

    return -Fraction(1, 2) * (
        casimir_value(delta) - casimir_value(gamma) - casimir_value(alpha(n)))


@dataclass(frozen=True)
class CasimirRecord:
    """ The constant c for one component of g_1 (x) source. """

    source: object
    component: tuple
    constant: Fraction

    @property
    def difference(self):
        """ omega - c, which vanishes exactly for excluded weights. """

        return symbolic.subtract(geometric_weight(self.source), self.constant)

    @property
    def excluded(self):
        return symbolic.is_zero(self.difference)

    @property
    def condition(self):
        """ For symbolic weights, the condition under which this record is
        excluded, e.g. "v = -1".

        """

        return symbolic.condition(self.difference)

    @property
    def operator_target(self):
        """ The target of the first order operator the jet splits into. """

        return labels_from_weight_and_gweight(
            self.component,
            symbolic.add(geometric_weight(self.source), 1))


def casimir_records(source):
    n = source.rank
    gamma = weight_of_labels(source.labels)

    return tuple(
        CasimirRecord(
            source=source,
            component=labels,
            constant=casimir_constant(gamma, weight_of_labels(labels), n),
        )
        for labels, _ in pieri_sym(source.labels, 1, n))


def first_order_excluded(V):
    """ One record per component of g_1 (x) V, each knowing whether the
    weight of V is excluded for it.

    """

    return casimir_records(V)


@dataclass(frozen=True)
class FirstOrderFamily:
    target: object
    dimension: int
    coefficients: tuple = None
    normalized: tuple = None
    diagnostics: tuple = ()
    degenerate: bool = False
    notes: tuple = ()


@dataclass(frozen=True)
class FirstOrderTerms:
    """ Everything known about one target E: the components tau of
    g_1 (x) V with E in V(tau) (x) W, the components sigma of g_1 (x) W with E
    in V (x) W(sigma), and how often E occurs in each.

    """

    V: object
    W: object
    target: object
    taus: tuple
    sigmas: tuple

    @property
    def dimension(self):
        return sum(m for _, m in self.taus)

    @property
    def v_excluded(self):
        return any(r.excluded for r, _ in self.taus)

    @property
    def w_excluded(self):
        return any(r.excluded for r, _ in self.sigmas)

    def coefficients(self):
        """ (a, b) with a scaling the term that differentiates V and b the
        term that differentiates W.

        """

        (tau, _), = self.taus
        (sigma, _), = self.sigmas

        return sigma.difference, symbolic.negate(tau.difference)


def first_order_terms(V, W):
    if V.rank != W.rank:
        raise RankMismatch(f"{V} and {W} live on different spaces")

    n = V.rank
    taus = casimir_records(V)
    sigmas = casimir_records(W)

    # Both sides are products over the components of a first jet
    tau_products = in_parallel(
        lr_tensor, ((r.component, W.labels, n) for r in taus))
    sigma_products = in_parallel(
        lr_tensor, ((V.labels, r.component, n) for r in sigmas))

    targets = sorted(
        {labels for d in tau_products + sigma_products for labels, _ in d})

    weight = symbolic.add(geometric_weight(V), geometric_weight(W), 1)
    terms = []

    for labels in targets:
        by_tau = tuple(
            (r, d.multiplicity(labels))
            for r, d in zip(taus, tau_products) if d.multiplicity(labels))
        by_sigma = tuple(
            (r, d.multiplicity(labels))
            for r, d in zip(sigmas, sigma_products) if d.multiplicity(labels))

        count_tau = sum(m for _, m in by_tau)
        count_sigma = sum(m for _, m in by_sigma)

        if count_tau != count_sigma:
            raise violation(
                f"{labels} occurs {count_tau} times through g_1 (x) {V} but "
                f"{count_sigma} times through g_1 (x) {W}")

        terms.append(FirstOrderTerms(
            V=V,
            W=W,
            target=labels_from_weight_and_gweight(labels, weight),
            taus=by_tau,
            sigmas=by_sigma,
        ))

    return tuple(terms)


def normalize(coefficients, n):
    """ Scales by -(n+1)/n, which clears the denominators of the geometric
    weights in the common cases.

    """

    factor = Fraction(-(n + 1), n)
    return tuple(symbolic.scale(c, factor) for c in coefficients)


def family_of(terms):
    n = terms.V.rank
    diagnostics = tuple(r for r, _ in terms.taus + terms.sigmas)
    degenerate = terms.v_excluded and terms.w_excluded
    notes = []

    coefficients = normalized = None

    if terms.dimension == 1 and not (terms.v_excluded or terms.w_excluded):
        coefficients = terms.coefficients()
        normalized = normalize(coefficients, n)

    if terms.dimension > 1:
        notes.append("explicit coefficients out of scope")

    if degenerate:
        notes.append("totally degenerate: two independent pairings")

    for record in diagnostics:
        if record.excluded:
            notes.append(
                f"{record.source} is excluded: invariant operator onto "
                f"{record.operator_target}")

        elif record.condition:
            notes.append(f"excluded for {record.condition}")

    return FirstOrderFamily(
        target=terms.target,
        dimension=terms.dimension,
        coefficients=coefficients,
        normalized=normalized,
        diagnostics=diagnostics,
        degenerate=degenerate,
        notes=tuple(notes),
    )


@with_trigger('classify.first-order')
def classify_first_order(V, W):
    """ One family per irreducible component E of g_1 (x) V (x) W, its
    dimension being the multiplicity of E.

    """

    return tuple(family_of(terms) for terms in first_order_terms(V, W))


def mult_one_coefficients(V, W, E):
    """ The coefficients (a, b) of the pairing onto E, defined up to scale.

    """

    E = tuple(getattr(E, 'labels', E))

    for terms in first_order_terms(V, W):
        if terms.target.labels != E:
            continue

        if terms.dimension != 1:
            raise OutOfScope(
                f"Explicit coefficients out of scope: {terms.target} occurs "
                f"{terms.dimension} times")

        if terms.v_excluded and terms.w_excluded:
            (tau, _), = terms.taus
            (sigma, _), = terms.sigmas

            raise TotallyDegenerate(
                f"Both {V} and {W} are excluded for {terms.target}",
                pairings=(
                    f"{tau.operator_target} x {W} -> {terms.target}",
                    f"{V} x {sigma.operator_target} -> {terms.target}",
                ))

        return terms.coefficients()

    raise OutOfScope(f"{E} does not occur in g_1 (x) {V} (x) {W}")
