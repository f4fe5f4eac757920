"""Exact Gaussian elimination over Q(q) on sparse vectors keyed by hashable labels.

Pivots are chosen deterministically by a caller-supplied key order (term order
of words in practice), so every reduction, rank and nullspace computation is
reproducible bit for bit.
"""

from __future__ import annotations

from .scalars import QRat

Vec = dict  # key -> QRat, zero coefficients never stored


def vec_add(a: Vec, b: Vec, scale: QRat | None = None) -> Vec:
    out = dict(a)
    for k, v in b.items():
        w = v if scale is None else v * scale
        nv = out.get(k)
        nv = w if nv is None else nv + w
        if nv.is_zero:
            out.pop(k, None)
        else:
            out[k] = nv
    return out


def vec_scale(a: Vec, c: QRat) -> Vec:
    if c.is_zero:
        return {}
    return {k: v * c for k, v in a.items()}


def _pivot(v: Vec, key_order):
    return max(v, key=key_order)


class RowSpace:
    """Reduced row space built incrementally; rows normalized to pivot 1.

    key_order maps a vector key to a sortable value; the pivot of a row is its
    largest key under that order.
    """

    def __init__(self, key_order):
        self.key_order = key_order
        self.rows: list[Vec] = []        # reduced, pivot coefficient 1
        self.pivots: list = []

    def reduce(self, v: Vec) -> tuple[list[QRat], Vec]:
        """Return coordinates against current rows and the remainder."""
        coords = [QRat(0)] * len(self.rows)
        v = dict(v)
        changed = True
        while changed and v:
            changed = False
            for i, (p, row) in enumerate(zip(self.pivots, self.rows)):
                c = v.get(p)
                if c is not None and not c.is_zero:
                    coords[i] = coords[i] + c
                    v = vec_add(v, row, -c)
                    changed = True
        return coords, v

    def insert(self, v: Vec) -> bool:
        """Reduce v and insert the remainder if nonzero; returns True if inserted."""
        _, rem = self.reduce(v)
        if not rem:
            return False
        p = _pivot(rem, self.key_order)
        c = rem[p]
        rem = vec_scale(rem, QRat(1) / c)
        # keep earlier rows fully reduced against the new one
        for i, row in enumerate(self.rows):
            d = row.get(p)
            if d is not None and not d.is_zero:
                self.rows[i] = vec_add(row, rem, -d)
        self.rows.append(rem)
        self.pivots.append(p)
        return True

    def coordinates(self, v: Vec) -> list[QRat] | None:
        """Coordinates of v in the span, or None if v is outside it."""
        coords, rem = self.reduce(v)
        if rem:
            return None
        return coords

    def contains(self, v: Vec) -> bool:
        return self.coordinates(v) is not None

    def sorted_rows(self) -> list[Vec]:
        order = sorted(range(len(self.rows)),
                       key=lambda i: self.key_order(self.pivots[i]))
        return [self.rows[i] for i in order]

    @property
    def dim(self) -> int:
        return len(self.rows)


def echelon_with_carry(pairs, key_order):
    """Echelonize (vector, payload) pairs, applying the same row operations to
    the payloads.  payload must support +, scalar * via a pair of callables.

    pairs: list of (Vec, payload); returns (rows, pivots, payloads) with rows
    reduced and pivot coefficient 1.
    """
    rows: list[Vec] = []
    pivots: list = []
    payloads: list = []
    for v, load in pairs:
        v = dict(v)
        for p, row, pl in zip(pivots, rows, payloads):
            c = v.get(p)
            if c is not None and not c.is_zero:
                v = vec_add(v, row, -c)
                load = load + pl * (-c)
        if not v:
            continue
        p = _pivot(v, key_order)
        c = v[p]
        inv = QRat(1) / c
        v = vec_scale(v, inv)
        load = load * inv
        for i in range(len(rows)):
            d = rows[i].get(p)
            if d is not None and not d.is_zero:
                rows[i] = vec_add(rows[i], v, -d)
                payloads[i] = payloads[i] + load * (-d)
        rows.append(v)
        pivots.append(p)
        payloads.append(load)
    return rows, pivots, payloads


def independent_subset(vectors: list[Vec], key_order):
    """Scan vectors in order; return (kept indices, expansions) where for every
    dropped index j, expansions[j] gives coordinates of vectors[j] over the
    kept vectors preceding it (zero vectors expand to all-zero coordinates)."""
    kept: list[int] = []
    space = RowSpace(key_order)
    basis_rows: list[Vec] = []
    expansions: dict[int, list[QRat]] = {}
    for j, v in enumerate(vectors):
        if space.insert(v):
            kept.append(j)
            basis_rows.append(v)
        else:
            coords = _solve_coords(v, [vectors[i] for i in kept], key_order)
            expansions[j] = coords
    return kept, expansions


def _solve_coords(v: Vec, basis: list[Vec], key_order) -> list[QRat]:
    """Solve v = sum c_i basis_i exactly (basis independent, v in span)."""
    rows, pivots, payloads = echelon_with_carry(
        [(b, _UnitRow(i, len(basis))) for i, b in enumerate(basis)], key_order)
    coords_on_rows, rem = _reduce_against(v, rows, pivots)
    if rem:
        raise ArithmeticError("vector not in span")
    out = [QRat(0)] * len(basis)
    for c, load in zip(coords_on_rows, payloads):
        if not c.is_zero:
            for i, w in enumerate(load.coeffs):
                out[i] = out[i] + c * w
    return out


def _reduce_against(v: Vec, rows: list[Vec], pivots: list):
    coords = [QRat(0)] * len(rows)
    v = dict(v)
    changed = True
    while changed and v:
        changed = False
        for i, (p, row) in enumerate(zip(pivots, rows)):
            c = v.get(p)
            if c is not None and not c.is_zero:
                coords[i] = coords[i] + c
                v = vec_add(v, row, -c)
                changed = True
    return coords, v


class _UnitRow:
    """Payload tracking row operations as coefficient lists."""

    __slots__ = ("coeffs",)

    def __init__(self, i=None, n=0, coeffs=None):
        if coeffs is not None:
            self.coeffs = coeffs
        else:
            self.coeffs = [QRat(0)] * n
            if i is not None:
                self.coeffs[i] = QRat(1)

    def __add__(self, other):
        return _UnitRow(coeffs=[a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, c):
        return _UnitRow(coeffs=[a * c for a in self.coeffs])


def nullspace(columns: list[Vec], key_order) -> list[list[QRat]]:
    """Solutions x with sum_j x_j * columns[j] = 0.

    Returns a deterministic basis of coefficient lists, echelonized so that
    each solution has leading 1 at its largest free index.
    """
    n = len(columns)
    constraint_keys = sorted({k for col in columns for k in col}, key=key_order)
    key_index = {k: i for i, k in enumerate(constraint_keys)}
    # rows of the constraint matrix, as dense lists over column index
    m = len(constraint_keys)
    rows = [[QRat(0)] * n for _ in range(m)]
    for j, col in enumerate(columns):
        for k, c in col.items():
            rows[key_index[k]][j] = c
    # forward elimination with column order 0..n-1
    pivot_rows: list[int] = []
    pivot_cols: list[int] = []
    r = 0
    for cidx in range(n):
        sel = None
        for i in range(r, m):
            if not rows[i][cidx].is_zero:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = QRat(1) / rows[r][cidx]
        rows[r] = [c * inv for c in rows[r]]
        for i in range(m):
            if i != r and not rows[i][cidx].is_zero:
                f = rows[i][cidx]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_rows.append(r)
        pivot_cols.append(cidx)
        r += 1
        if r == m:
            break
    pivot_set = set(pivot_cols)
    free_cols = [j for j in range(n) if j not in pivot_set]
    sols = []
    for f in free_cols:
        x = [QRat(0)] * n
        x[f] = QRat(1)
        for pr, pc in zip(pivot_rows, pivot_cols):
            x[pc] = -rows[pr][f]
        sols.append(x)
    return sols


def invert_scalar_matrix(mat: list[list[QRat]]) -> list[list[QRat]] | None:
    """Exact inverse of a square matrix over Q(q), or None if singular."""
    n = len(mat)
    aug = [[QRat(m) for m in row] + [QRat(1) if i == j else QRat(0) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        sel = None
        for i in range(col, n):
            if not aug[i][col].is_zero:
                sel = i
                break
        if sel is None:
            return None
        aug[col], aug[sel] = aug[sel], aug[col]
        inv = QRat(1) / aug[col][col]
        aug[col] = [c * inv for c in aug[col]]
        for i in range(n):
            if i != col and not aug[i][col].is_zero:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]
