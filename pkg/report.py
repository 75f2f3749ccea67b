""" Renders engine results as versioned JSON or as plain text.

JSON documents always carry the schema version and are dumped with sorted
keys, so re-running a command yields byte-identical output. The text
rendering of composition series follows the usual slot layout: slots are
separated by "+" and the direct summands of a slot are stacked.

"""
import json
import symbolic

from constants import SCHEMA_VERSION
from tabulate import tabulate
from tensor import weyl_dimension


def weight(value):
    """ Integers stay integers in JSON, everything else is rendered. """

    if not symbolic.is_symbolic(value) and isinstance(
            symbolic.exact(value), int):
        return symbolic.exact(value)

    return symbolic.render(value)


def spec_json(p):
    return {
        'spec': str(p),
        'rank': p.rank,
        'crossed': weight(p.crossed),
        'labels': list(p.labels),
    }


def gspec_json(g):
    return {
        'spec': str(g),
        'rank': g.rank,
        'labels': list(g.labels),
    }


def decomposition_json(d):
    return [
        {
            'labels': list(labels),
            'multiplicity': m,
            'dimension': weyl_dimension(labels, d.rank),
        }
        for labels, m in d
    ]


def series_json(s):
    return {
        'origin': s.origin,
        'twist': weight(s.twist),
        'slots': [
            [
                {'spec': spec_json(p), 'multiplicity': m}
                for p, m in s.factors(j)
            ]
            for j in range(len(s))
        ],
    }


def exclusion_json(r):
    return {
        'k': r.k,
        'order': r.l,
        'node': r.j,
        'operator_target': spec_json(r.operator_target),
    }


def diagnostic_json(d):
    return {
        'side': d.side,
        'source': spec_json(d.source),
        'record': exclusion_json(d.record),
        'condition': d.condition,
    }


def higher_family_json(f):
    return {
        'target': spec_json(f.target),
        'dimension': f.dimension,
        'order': f.order,
        'notes': list(f.notes),
        'min_function_order': f.min_function_order,
    }


def pairing_report_json(report):
    return {
        'order': report.order,
        'hypothesis_satisfied': report.hypothesis_satisfied,
        'pairings': report.pairing_count,
        'families': [higher_family_json(f) for f in report.families],
        'diagnostics': [diagnostic_json(d) for d in report.diagnostics],
    }


def coefficients_json(coefficients):
    if coefficients is None:
        return None

    return [weight(c) for c in coefficients]


def casimir_json(record):
    return {
        'component': list(record.component),
        'constant': weight(record.constant),
        'excluded': record.excluded,
        'condition': record.condition,
        'operator_target': spec_json(record.operator_target),
    }


def first_order_family_json(f):
    return {
        'target': spec_json(f.target),
        'dimension': f.dimension,
        'coefficients': coefficients_json(f.coefficients),
        'normalized': coefficients_json(f.normalized),
        'degenerate': f.degenerate,
        'diagnostics': [casimir_json(r) for r in f.diagnostics],
        'notes': list(f.notes),
    }


def slot_report_json(report):
    return {
        'ok': report.ok,
        'slots': report.slots,
        'summands': [
            {'gmodule': gspec_json(g), 'multiplicity': m}
            for g, m in report.summands
        ],
        'diffs': [str(d) for d in report.diffs],
        **by_summand_json(report.by_summand),
    }


def by_summand_json(s):
    """ Both presentations of a product series assembled from its
    summands: factors of equal type combined, and factor by summand.

    """

    if s is None:
        return {}

    return {
        'series': series_json(s.merged()),
        'by_summand': [
            [
                {
                    'spec': spec_json(p),
                    'multiplicity': m,
                    'summand': gspec_json(g),
                }
                for p, m, g in s.sourced(j)
            ]
            for j in range(len(s))
        ],
    }


def symbol_space_json(space):
    return {
        'order': space.order,
        'weight': weight(space.weight),
        'pieces': [decomposition_json(piece) for piece in space.pieces],
        'targets': [
            {
                'target': spec_json(space.target(labels)),
                'multiplicity': m,
            }
            for labels, m in space.total()
        ],
    }


def dumps(command, payload):
    document = {'schema': SCHEMA_VERSION, 'command': command, **payload}
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False)


def multiplicity_prefix(m):
    return f'{m}x ' if m > 1 else ''


def render_series(s):
    """ Renders the slots side by side:

        x1 o0 o0 o1 + x-1 o1 o0 o1 + ...
                      x0 o0 o0 o0

    """

    columns = [
        [f'{multiplicity_prefix(m)}{p}' for p, m in s.factors(j)]
        for j in range(len(s))
    ]

    widths = [max(len(entry) for entry in column) for column in columns]
    height = max(len(column) for column in columns)
    lines = []

    for row in range(height):
        cells = [
            (column[row] if row < len(column) else '').ljust(width)
            for column, width in zip(columns, widths)
        ]

        lines.append((' + ' if row == 0 else '   ').join(cells).rstrip())

    return '\n'.join(lines)


def render_exclusions(records):
    if not records:
        return 'no excluded weights'

    return tabulate(
        [(r.k, r.l, r.j, str(r.operator_target)) for r in records],
        headers=('k', 'order', 'node', 'operator target'),
    )


def render_diagnostics(diagnostics):
    return '\n'.join(str(d) for d in diagnostics)


def render_pairing_report(report):
    rows = [
        (str(f.target), f.dimension, '; '.join(f.notes))
        for f in report.families
    ]

    text = tabulate(rows, headers=('target', 'r', 'notes'))
    text = f'{text}\n\n{len(report.families)} families, ' \
        f'{report.pairing_count} pairings of order {report.order}'

    if report.diagnostics:
        text = f'{text}\n\n{render_diagnostics(report.diagnostics)}'

    return text


def render_coefficients(coefficients):
    if coefficients is None:
        return '-'

    return ', '.join(symbolic.render(c) for c in coefficients)


def render_first_order(families):
    rows = [
        (
            str(f.target),
            f.dimension,
            render_coefficients(f.coefficients),
            render_coefficients(f.normalized),
            '; '.join(f.notes),
        )
        for f in families
    ]

    return tabulate(
        rows, headers=('target', 'r', 'a, b', 'normalized', 'notes'))


def render_gspec(g):
    return f'<{",".join(map(str, g.labels))}>'


def render_summands(summands):
    return ' + '.join(
        f'{multiplicity_prefix(m)}{render_gspec(g)}' for g, m in summands)


def render_by_summand(s):
    rows = [
        (j, render_gspec(g), f'{multiplicity_prefix(m)}{p}')
        for j in range(len(s))
        for p, m, g in s.sourced(j)
    ]

    return tabulate(rows, headers=('slot', 'summand', 'factor'))


def render_slot_report(report):
    parts = [render_summands(report.summands)]

    if report.by_summand is not None:
        parts.append(render_by_summand(report.by_summand))

    status = 'consistent' if report.ok else 'inconsistent'
    parts.append(f'{report.slots} slots, {status}')

    return '\n\n'.join(parts)


def render_symbol_space(space):
    rows = [
        (str(space.target(labels)), m) for labels, m in space.total()
    ]

    return tabulate(rows, headers=('target', 'multiplicity'))


def render_parse_error(text, error):
    """ Points at the offending position of the spec text, if known. """

    if error.position is None:
        return f'{text}\n{error.message}'

    return f'{text}\n{" " * error.position}^ {error.message}'
