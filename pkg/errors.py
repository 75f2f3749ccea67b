class PairingException(Exception):
    """ Generic exception base class for error conditions in the pairing
    engine.

    """


class SpecParseError(PairingException):
    """ Bundle spec text or a weight expression could not be parsed.

    """

    def __init__(self, message, position=None):
        self.message = message
        self.position = position

        if position is not None:
            message = f'{message} (at position {position})'

        super().__init__(message)


class RankMismatch(PairingException):
    """ Two operands of an operation do not share the same rank.

    """


class NotDominant(PairingException):
    """ An (a|b) tuple whose uncrossed differences are negative does not
    describe an irreducible p-module.

    """


class NotHomogeneousBundle(PairingException):
    """ A geometric weight does not pin an integral crossed entry.

    """


class OutOfScope(PairingException):
    """ The requested computation is outside what the engine computes, for
    example explicit coefficients of families with dimension above one.

    """


class TotallyDegenerate(PairingException):
    """ Both weights of a first order pairing are excluded. Instead of a
    single family there are two independent pairings, each made from an
    invariant operator followed by a projection.

    """

    def __init__(self, message, pairings):
        self.pairings = pairings
        super().__init__(message)


class InvalidRecord(PairingException):
    """ A (k, l, j) triple that does not describe an excluded weight.

    """


class InvariantViolation(PairingException):
    """ An internal consistency check failed. This points to a bug in the
    engine rather than to a user error.

    """

    def __init__(self, message, diff=None):
        self.diff = diff
        super().__init__(message)
