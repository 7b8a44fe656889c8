"""Exact Gaussian elimination over the coefficient field.

Rows are sparse dicts mapping hashable column keys to scalars; everything
is field-exact, no pivoting heuristics beyond sparsity.
"""

from __future__ import annotations


def _eliminate(ctx, row, pivot, prow):
    factor = row.get(pivot)
    if not factor:
        return
    for c, v in prow.items():
        nv = row.get(c, ctx.zero) - factor * v
        if nv:
            row[c] = nv
        else:
            row.pop(c, None)


def row_reduce(ctx, rows):
    """Reduced row-echelon form of a list of sparse rows: returns a list of
    (pivot_col, row) with pivot entry 1, rows mutually reduced (each stored
    row is zero in every other row's pivot column)."""
    reduced = []        # list of (pivot_col, row_dict with pivot 1)
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        for pivot, prow in reduced:
            _eliminate(ctx, row, pivot, prow)
        if not row:
            continue
        pivot = next(iter(row))
        inv = ctx.one / row[pivot]
        row = {c: inv * v for c, v in row.items()}
        # keep the stored rows mutually reduced, so one elimination pass
        # per incoming row stays sound
        for _, prow in reduced:
            _eliminate(ctx, prow, pivot, row)
        reduced.append((pivot, row))
    return reduced


def rank(ctx, rows) -> int:
    return len(row_reduce(ctx, rows))


def nullity(ctx, rows, columns) -> int:
    """Dimension of the solution space of rows . x = 0 over the given
    column set."""
    return len(columns) - rank(ctx, rows)


def in_row_space(ctx, rows, candidate) -> bool:
    """Whether candidate is a linear combination of rows."""
    reduced = row_reduce(ctx, rows)
    row = {c: v for c, v in candidate.items() if v}
    for pivot, prow in reduced:
        factor = row.get(pivot)
        if factor:
            for c, v in prow.items():
                nv = row.get(c, ctx.zero) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return not row
