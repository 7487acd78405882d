"""Dense exact linear algebra over a FieldContext (small systems only)."""

from __future__ import annotations

__all__ = ["rref", "solve_in_span", "rank"]


def rref(rows, field):
    """Reduced row echelon form.  Returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field) -> int:
    return len(rref(rows, field)[1])


def solve_in_span(vectors, target, field):
    """Coefficients x with sum x_k vectors[k] = target, or None."""
    n = len(vectors)
    if n == 0:
        return [] if not any(target) else None
    # augmented columns: vectors as columns, target last
    dim = len(target)
    rows = [[vectors[k][r] for k in range(n)] + [target[r]] for r in range(dim)]
    red, piv = rref(rows, field)
    if n in piv:
        return None
    x = [field.zero] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return x
