"""Exact linear algebra over GF(p) for degreewise computations.

Rows are sparse ``{column: residue}`` dicts.  Large ranks go to FLINT's
``nmod_mat`` when python-flint is importable; the sparse elimination below
is the fallback and the reference the tests compare against.
"""

from .arith import inverse_mod

try:
    import flint
except ImportError:  # pragma: no cover
    flint = None

# below this many nonzeros the pure Python path is faster than building a flint matrix
FLINT_THRESHOLD = 4000
# dense flint matrices beyond this many entries exhaust memory; stay sparse
DENSE_LIMIT = 40_000_000
# sparse elimination wins on the very sparse matrices of multiplication maps
MIN_DENSITY = 0.05


def row_reduce(rows, ncols, p):
    """Reduced echelon basis of the row space (list of sparse dicts)."""
    pivots = {}          # pivot column -> row (monic at pivot)
    order = []
    for row in rows:
        r = {j: c % p for j, c in row.items() if c % p}
        r = _reduce_by(r, pivots, p)
        if not r:
            continue
        j = min(r)
        inv = inverse_mod(r[j], p)
        r = {k: v * inv % p for k, v in r.items()}
        for k, other in pivots.items():
            c = other.get(j)
            if c:
                for kk, vv in r.items():
                    nv = (other.get(kk, 0) - c * vv) % p
                    if nv:
                        other[kk] = nv
                    else:
                        other.pop(kk, None)
        pivots[j] = r
        order.append(j)
    return [pivots[j] for j in sorted(pivots)]


def _reduce_by(r, pivots, p):
    changed = True
    while changed and r:
        changed = False
        for j in sorted(r):
            if j in pivots and r.get(j):
                c = r[j]
                for k, v in pivots[j].items():
                    nv = (r.get(k, 0) - c * v) % p
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
                changed = True
                break
    return r


def sparse_rank(rows, p):
    """Rank by sparse elimination with pivot rows kept unreduced."""
    pivots = {}
    rank = 0
    for row in rows:
        r = {j: c % p for j, c in row.items() if c % p}
        while r:
            j = min(r)
            piv = pivots.get(j)
            if piv is None:
                inv = inverse_mod(r[j], p)
                pivots[j] = {k: v * inv % p for k, v in r.items()}
                rank += 1
                break
            c = r[j]
            for k, v in piv.items():
                nv = (r.get(k, 0) - c * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return rank


def rank(rows, ncols, p):
    """Rank of a sparse matrix given by rows."""
    rows = [r for r in rows if r]
    if not rows or not ncols:
        return 0
    nnz = sum(len(r) for r in rows)
    size = len(rows) * ncols
    if flint is None or nnz < FLINT_THRESHOLD or size > DENSE_LIMIT or nnz < MIN_DENSITY * size:
        return sparse_rank(rows, p)
    nr = len(rows)
    if nr > ncols:
        # flint rank is faster on wide matrices
        cols = [dict() for _ in range(ncols)]
        for i, r in enumerate(rows):
            for j, c in r.items():
                cols[j][i] = c
        rows, nr, ncols = [c for c in cols if c], ncols, nr
        nr = len(rows)
    M = flint.nmod_mat(nr, ncols, p)
    for i, r in enumerate(rows):
        for j, c in r.items():
            M[i, j] = c % p
    return M.rank()


def nullspace(rows, ncols, p):
    """Basis of ``{x : A x = 0}`` for the sparse matrix ``A`` (rows)."""
    basis = row_reduce(rows, ncols, p)
    pivot_cols = [min(r) for r in basis]
    free = [j for j in range(ncols) if j not in set(pivot_cols)]
    out = []
    for f in free:
        v = {f: 1}
        for r, pc in zip(basis, pivot_cols):
            c = r.get(f)
            if c:
                v[pc] = (-c) % p
        out.append(v)
    return out
