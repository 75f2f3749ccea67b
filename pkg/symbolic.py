""" Exact weights that are either rational numbers or affine expressions in
integer symbols, as in "x[v+w-3]".

Plain values are kept as int or Fraction. Only values that involve a symbol
are sympy expressions, so the common case never touches sympy.

"""
import re
import sympy

from constants import SYMBOLS
from errors import SpecParseError
from fractions import Fraction
from sympy.parsing.sympy_parser import parse_expr
from sympy.parsing.sympy_parser import standard_transformations

# Weight symbols always denote integers
NAMESPACE = {name: sympy.Symbol(name, integer=True) for name in SYMBOLS}

# Characters that may appear in a weight expression
EXPRESSION = re.compile(r'^[0-9a-z+\-* ()]+$')


def symbol(name):
    return NAMESPACE[name]


def parse_weight(text, position=None):
    """ Parses an affine integer expression like "1+v" or "v+w-3".

    Returns an int if the expression has no symbols.

    """

    if not EXPRESSION.match(text):
        raise SpecParseError(f"Invalid weight expression '{text}'", position)

    try:
        expr = parse_expr(
            text,
            local_dict=dict(NAMESPACE),
            transformations=standard_transformations,
        )
    except Exception:
        raise SpecParseError(f"Invalid weight expression '{text}'", position)

    if not isinstance(expr, sympy.Expr):
        raise SpecParseError(f"Invalid weight expression '{text}'", position)

    unknown = expr.free_symbols - set(NAMESPACE.values())
    if unknown:
        names = ', '.join(sorted(str(s) for s in unknown))
        raise SpecParseError(f"Unknown weight symbol {names}", position)

    if not is_affine_integral(expr):
        raise SpecParseError(
            f"Weight '{text}' is not affine with integer coefficients",
            position)

    return exact(expr)


def is_affine_integral(expr):
    expr = sympy.expand(expr)

    if not expr.free_symbols:
        return expr.is_Integer

    try:
        poly = sympy.Poly(expr, *sorted(expr.free_symbols, key=str))
    except sympy.PolynomialError:
        return False

    if poly.total_degree() > 1:
        return False

    return all(c.is_Integer for c in poly.coeffs())


def is_symbolic(value):
    return isinstance(value, sympy.Basic) and bool(value.free_symbols)


def to_sympy(value):
    if isinstance(value, sympy.Basic):
        return value

    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def exact(value):
    """ Turns symbol-free sympy numbers back into int or Fraction. """

    if not isinstance(value, sympy.Basic):
        value = Fraction(value)
        return value.numerator if value.denominator == 1 else value

    value = sympy.expand(value)

    if value.free_symbols:
        return value

    value = Fraction(int(value.p), int(value.q))
    return value.numerator if value.denominator == 1 else value


def rational(value):
    return Fraction(exact(value))


def add(*values):
    if any(is_symbolic(v) for v in values):
        return exact(sum((to_sympy(v) for v in values), sympy.Integer(0)))

    return exact(sum((rational(v) for v in values), Fraction(0)))


def subtract(a, b):
    return add(a, negate(b))


def negate(value):
    return scale(value, -1)


def scale(value, factor):
    if is_symbolic(value):
        return exact(to_sympy(value) * to_sympy(factor))

    return exact(rational(value) * rational(factor))


def divide(value, divisor):
    return scale(value, Fraction(1) / rational(divisor))


def is_zero(value):
    if is_symbolic(value):
        return sympy.expand(value) == 0

    return value == 0


def is_integral(value):
    if is_symbolic(value):
        return is_affine_integral(value)

    return rational(value).denominator == 1


def evaluate(value, **assignment):
    """ Substitutes integers for the symbols of the given value. """

    if not is_symbolic(value):
        return exact(value)

    substitutions = {NAMESPACE[k]: v for k, v in assignment.items()}
    return exact(value.subs(substitutions))


def render(value):
    """ Renders a weight without spaces, e.g. "v+w-3", "-2/5" or "4". """

    if is_symbolic(value):
        return str(sympy.expand(value)).replace(' ', '')

    return str(exact(value))


def condition(value):
    """ Renders the condition under which the given affine expression
    vanishes, solved for its alphabetically first symbol ("v = -2").

    Returns None for plain values, which either vanish or not.

    """

    if not is_symbolic(value):
        return None

    expr = sympy.expand(value)
    unknown = sorted(expr.free_symbols, key=str)[0]
    solution = sympy.solve(sympy.Eq(expr, 0), unknown)[0]

    return f'{unknown} = {render(solution)}'
