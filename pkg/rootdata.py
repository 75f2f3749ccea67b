""" Weights of sl(n) in L-coordinates, (a|b) tuples of gl(n+1) and the
invariant form on them.

The Levi factor of the parabolic that gives CP_n is gl(n), so most weights
here live in sl(n) with the L-coordinates L_1, ..., L_n, defined up to the
sum L_1 + ... + L_n. The normalized invariant form is

    (L_i, L_j) = n/(n+1) * (delta_ij - 1/n)

which is the Killing form of sl(n+1) scaled so that the grading element has
length one.

"""
from collections import Counter
from dataclasses import dataclass
from errors import RankMismatch
from fractions import Fraction


@dataclass(frozen=True)
class LWeight:
    """ A weight of sl(n), stored with its last coordinate shifted to 0. """

    rank: int
    coords: tuple

    def __post_init__(self):
        if self.rank < 1 or len(self.coords) != self.rank:
            raise ValueError(
                f"Expected {self.rank} coordinates, got {len(self.coords)}")

        last = Fraction(self.coords[-1])
        object.__setattr__(
            self, 'coords', tuple(Fraction(c) - last for c in self.coords))

    @classmethod
    def zero(cls, rank):
        return cls(rank, (0, ) * rank)

    @classmethod
    def basis(cls, rank, i):
        """ The weight L_i, counting from 1. """

        if not 1 <= i <= rank:
            raise ValueError(f"L_{i} does not exist in rank {rank}")

        return cls(rank, tuple(int(j == i) for j in range(1, rank + 1)))

    def check_rank(self, other):
        if self.rank != other.rank:
            raise RankMismatch(
                f"Weights of rank {self.rank} and {other.rank} do not mix")

    def __add__(self, other):
        self.check_rank(other)
        return LWeight(
            self.rank, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self * -1

    def __mul__(self, factor):
        return LWeight(self.rank, tuple(c * factor for c in self.coords))

    __rmul__ = __mul__

    def __str__(self):
        return '(' + ','.join(str(c) for c in self.coords) + ')'


@dataclass(frozen=True)
class GlTuple:
    """ The tuple (a|b_0,...,b_{n-1}) of gl(n+1), on which the Weyl group
    acts by permutation.

    """

    entries: tuple

    def __post_init__(self):
        if len(self.entries) < 3:
            raise ValueError("A (a|b) tuple needs at least three entries")

        object.__setattr__(self, 'entries', tuple(self.entries))

    @property
    def rank(self):
        return len(self.entries) - 1

    @property
    def head(self):
        return self.entries[0]

    @property
    def tail(self):
        return self.entries[1:]

    def shifted(self):
        """ The tuple plus rho_g. """

        return tuple(e + r for e, r in zip(self.entries, rho_g(self.rank)))

    def __str__(self):
        return f'({self.head}|' + ','.join(str(b) for b in self.tail) + ')'


def inner_product(mu, nu):
    """ The normalized invariant form. It does not depend on the chosen
    representatives since both sums of coordinates enter symmetrically:

        (mu, nu) = (n * sum(mu_i nu_i) - sum(mu) sum(nu)) / (n+1)

    """

    mu.check_rank(nu)
    n = mu.rank

    diagonal = sum(a * b for a, b in zip(mu.coords, nu.coords))
    traces = sum(mu.coords) * sum(nu.coords)

    return (n * diagonal - traces) / Fraction(n + 1)


def norm(mu):
    return inner_product(mu, mu)


def rho_levi(n):
    """ Half the sum of the positive roots of sl(n). """

    if n < 2:
        raise ValueError(f"Rank {n} is too small")

    return LWeight(n, tuple(n - i for i in range(1, n + 1)))


def alpha(n):
    """ The highest weight -L_n of g_1. """

    return -LWeight.basis(n, n)


def casimir_value(mu):
    """ The value (mu, mu + 2 rho) by which the Casimir of sl(n) acts on the
    irreducible module with highest weight mu, up to normalization.

    """

    return inner_product(mu, mu + 2 * rho_levi(mu.rank))


def rho_g(n):
    if n < 2:
        raise ValueError(f"Rank {n} is too small")

    return tuple(range(1, n + 2))


def affine_equivalent(t1, t2):
    """ True if the two tuples are related by the affine action of the Weyl
    group, that is, if their rho-shifted entries agree as multisets.

    """

    if t1.rank != t2.rank:
        raise RankMismatch(f"Cannot compare {t1} with {t2}")

    return Counter(t1.shifted()) == Counter(t2.shifted())


def rho_norm(t):
    """ Squared Euclidean length of the rho-shifted tuple. Permutations are
    isometries, so equal central characters need equal norms.

    """

    return sum(e * e for e in t.shifted())
