"""Graded free resolutions, Betti tables and the invariants read off them.

The resolution of S/I is built as a Schreyer frame: level 1 is a grevlex
Groebner basis of I, and level k+1 consists of the S-pair syzygies of level
k under the order induced by level k, with only the minimal lead-term pairs
kept.  The frame is usually far from minimal; :func:`minimize` prunes unit
entries with exact row/column operations.
"""

import heapq
from collections import defaultdict
from dataclasses import dataclass, field

from .arith import inverse_mod
from .linalg import rank as matrix_rank
from .poly import FIELD_BITS, GREVLEX


class ResolutionError(ValueError):
    pass


# -- module terms ---------------------------------------------------------------
#
# A module term m*e_c is packed as ``m | (c << comp_shift)``.  Each free module
# carries an additive key: key(m e_c) = key_S(m) * scale + comp_key[c].


class FreeModule:
    """Graded free module ``sum S(-degrees[c])`` with a monomial order on its terms."""

    def __init__(self, ring, degrees, scale=1, comp_keys=None):
        self.ring = ring
        self.degrees = list(degrees)
        self.scale = scale
        if comp_keys is None:
            # term over position, lower index wins ties
            n = len(self.degrees)
            self.scale = max(n, 1)
            comp_keys = [n - 1 - c for c in range(n)]
        self.comp_keys = list(comp_keys)
        self.shift = FIELD_BITS * ring.nvars
        self.mono_mask = (1 << self.shift) - 1

    @property
    def rank(self):
        return len(self.degrees)

    def key(self, packed):
        return self.ring.key(packed & self.mono_mask) * self.scale + self.comp_keys[packed >> self.shift]

    def element(self, components):
        """Module element from ``{component: Polynomial}``."""
        return ModuleElement(self, components)


@dataclass
class ModuleElement:
    """Element of a free module as ``{component index: Polynomial}``."""

    module: FreeModule
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        self.components = {c: f for c, f in self.components.items() if f.terms}

    def is_zero(self):
        return not self.components

    def degree(self):
        """Common value of ``deg(f_c) + twist_c``; None if not homogeneous."""
        degs = set()
        for c, f in self.components.items():
            d = f.homogeneous_degree()
            if d is None:
                return None
            degs.add(d + self.module.degrees[c])
        if len(degs) > 1:
            return None
        return degs.pop() if degs else None

    def is_homogeneous(self):
        return self.is_zero() or self.degree() is not None

    def terms(self):
        """Sorted packed term list in the module's order."""
        F = self.module
        out = []
        for c, f in self.components.items():
            base = F.comp_keys[c]
            for k, m, co in f.terms:
                out.append((k * F.scale + base, m | (c << F.shift), co))
        out.sort(reverse=True)
        return out

    def __add__(self, other):
        comps = dict(self.components)
        for c, f in other.components.items():
            comps[c] = comps[c] + f if c in comps else f
        return ModuleElement(self.module, comps)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return ModuleElement(self.module, {k: f.scale(c) for k, f in self.components.items()})

    def __rmul__(self, g):
        return ModuleElement(self.module, {k: g * f for k, f in self.components.items()})


def _element_from_terms(F, terms):
    ring = F.ring
    comps = defaultdict(dict)
    for _, M, c in terms:
        comps[M >> F.shift][M & F.mono_mask] = c
    return ModuleElement(F, {c: ring.from_mono_dict(d) for c, d in comps.items()})


def _reduce_module(terms, leads, F, p, record=False):
    """Reduce a term list of F by ``leads[comp] = [(lead mono, lead key, elem terms, idx)]``.

    Reducer elements are monic.  Returns ``(remainder, quotients)`` where
    quotients are ``(idx, mono, key_delta, coeff)``.
    """
    shift = F.shift
    mask = F.mono_mask
    guard = F.ring.guard
    acc = {}
    heap = []
    for k, M, c in terms:
        acc[k] = [M, c]
        heap.append(-k)
    heapq.heapify(heap)
    rem = []
    quots = []
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        k = -pop(heap)
        M, c = acc.pop(k)
        if not c:
            continue
        mono = M & mask
        for lm, lk, elem, idx in leads.get(M >> shift, ()):
            if ((mono | guard) - lm) & guard == guard:
                break
        else:
            rem.append((k, M, c))
            continue
        q = mono - lm
        qk = k - lk
        if record:
            quots.append((idx, q, qk, c))
        mc = p - c
        for k2, M2, c2 in elem[1:]:
            kk = k2 + qk
            e = acc.get(kk)
            if e is None:
                acc[kk] = [M2 + q, mc * c2 % p]
                push(heap, -kk)
            else:
                e[1] = (e[1] + mc * c2) % p
    return rem, quots


# -- Schreyer frame -------------------------------------------------------------

class _Level:
    """Level k of the frame: elements of F_{k-1} generating the kernel of the previous map."""

    def __init__(self, source, elements, degrees):
        self.source = source          # FreeModule F_{k-1} the elements live in
        self.elements = elements      # list of sorted term lists (monic)
        self.degrees = degrees        # twists of F_k


def _build_level_module(level, ring):
    F = level.source
    n = len(level.elements)
    scale = F.scale * max(n, 1)
    keys = [el[0][0] * n + (n - 1 - i) for i, el in enumerate(level.elements)]
    return FreeModule(ring, level.degrees, scale, keys)


def _leads(level):
    F = level.source
    leads = defaultdict(list)
    for i, el in enumerate(level.elements):
        k, M, _ = el[0]
        leads[M >> F.shift].append((M & F.mono_mask, k, el, i))
    return leads


def _next_level(level, ring, p, stats=None):
    """Syzygies of ``level`` (a Groebner basis under the induced order)."""
    F = level.source
    target = _build_level_module(level, ring)
    leads = _leads(level)
    by_comp = defaultdict(list)
    for i, el in enumerate(level.elements):
        by_comp[el[0][1] >> F.shift].append(i)
    mask = F.mono_mask
    divides = ring.divides
    new = []
    for comp, idxs in by_comp.items():
        for pos, i in enumerate(idxs):
            mi = level.elements[i][0][1] & mask
            cands = {}
            for j in idxs[pos + 1:]:
                mj = level.elements[j][0][1] & mask
                q = ring.lcm(mi, mj) - mi
                cands.setdefault(q, j)
            qs = sorted(cands, key=ring.mono_degree)
            minimal = []
            for q in qs:
                if not any(divides(r, q) for r in minimal):
                    minimal.append(q)
            for q in minimal:
                j = cands[q]
                new.append(_syzygy(level, i, j, q, target, leads, ring, p))
    if stats is not None:
        stats.append(len(new))
    if not new:
        return None
    new.sort(key=lambda el: _frame_sort_key(el, target, ring))
    degrees = [ring.mono_degree(el[0][1] & target.mono_mask) + target.degrees[el[0][1] >> target.shift]
               for el in new]
    # re-key is unnecessary: keys live in `target`, which is fixed by `level`
    return _Level(target, new, degrees)


def _frame_sort_key(el, F, ring):
    # lex-descending lead monomials inside each component keep the frame length <= nvars
    M = el[0][1]
    return (M >> F.shift, tuple(-e for e in ring.unpack(M & F.mono_mask)))


def _scaled_terms(terms, q, qk, coeff, p):
    return [(k + qk, M + q, c * coeff % p) for k, M, c in terms]


def _merge_terms(a, b, p):
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i][0] > b[j][0]:
            out.append(a[i])
            i += 1
        elif b[j][0] > a[i][0]:
            out.append(b[j])
            j += 1
        else:
            c = (a[i][2] + b[j][2]) % p
            if c:
                out.append((a[i][0], a[i][1], c))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def _syzygy(level, i, j, q, target, leads, ring, p):
    F = level.source
    vi = level.elements[i]
    vj = level.elements[j]
    mask = F.mono_mask
    mi = vi[0][1] & mask
    mj = vj[0][1] & mask
    lcm = mi + q
    qj = lcm - mj
    qi_key = ring.key(q) * F.scale
    qj_key = ring.key(qj) * F.scale
    vec = _merge_terms(_scaled_terms(vi, q, qi_key, 1, p), _scaled_terms(vj, qj, qj_key, p - 1, p), p)
    rem, quots = _reduce_module(vec, leads, F, p, record=True)
    if rem:
        raise ResolutionError("S-pair syzygy did not reduce to zero")
    tscale = target.scale
    acc = {}
    shift = target.shift

    def add(idx, mono, coeff):
        M = mono | (idx << shift)
        k = ring.key(mono) * tscale + target.comp_keys[idx]
        e = acc.get(k)
        if e is None:
            acc[k] = [M, coeff % p]
        else:
            e[1] = (e[1] + coeff) % p

    add(i, q, 1)
    add(j, qj, p - 1)
    for idx, mono, _, c in quots:
        add(idx, mono, p - c)
    terms = [(k, M, c) for k, (M, c) in acc.items() if c]
    terms.sort(reverse=True)
    return terms


def schreyer_frame(I, max_length=None, stats=None):
    """Levels of the Schreyer frame of S/I (non-minimal free resolution)."""
    ring = I.ring
    if any(w != 1 for w in ring.grading):
        raise ResolutionError("resolutions need the standard grading")
    if ring.order != GREVLEX:
        ring = ring.with_order(GREVLEX)
    gb = I.groebner(GREVLEX)
    p = ring.p
    F0 = FreeModule(ring, [0], 1, [0])
    elems = [list(g.terms) for g in gb.elements]
    elems.sort(key=lambda t: _frame_sort_key(t, F0, ring))
    level = _Level(F0, elems, [ring.mono_degree(t[0][1]) for t in elems])
    levels = [level] if elems else []
    limit = max_length or ring.nvars + 1
    while levels:
        nxt = _next_level(levels[-1], ring, p, stats)
        if nxt is None:
            break
        if len(levels) >= limit:
            raise ResolutionError(f"frame longer than {limit}")
        levels.append(nxt)
    return ring, levels


# -- matrices --------------------------------------------------------------------

def _level_matrix(level, ring):
    """Columns ``{row: Polynomial}`` of the map F_k -> F_{k-1}."""
    F = level.source
    cols = []
    for el in level.elements:
        comps = defaultdict(dict)
        for _, M, c in el:
            comps[M >> F.shift][M & F.mono_mask] = c
        cols.append({r: ring.from_mono_dict(d) for r, d in comps.items()})
    return cols


class FreeResolution:
    """Graded free resolution of S/I.

    ``twists[i]`` lists generator degrees of F_i (F_0 = S), ``maps[i]`` for
    i >= 1 is the matrix of F_i -> F_{i-1} as a list of columns
    ``{row index: Polynomial}``; ``maps[0]`` is None.
    """

    def __init__(self, ring, twists, maps, minimal=False):
        self.ring = ring
        self.twists = twists
        self.maps = maps
        self.minimal = minimal

    @property
    def length(self):
        return max((i for i, t in enumerate(self.twists) if t), default=0)

    def ranks(self):
        return [len(t) for t in self.twists]

    def check_complex(self):
        """True when consecutive maps compose to zero (checked exactly)."""
        for i in range(2, len(self.maps)):
            A, B = self.maps[i - 1], self.maps[i]
            for col in B:
                acc = {}
                for r, g in col.items():
                    for rr, f in A[r].items():
                        acc[rr] = acc[rr] + f * g if rr in acc else f * g
                if any(v.terms for v in acc.values()):
                    return False
        return True

    def check_homogeneous(self):
        for i in range(1, len(self.maps)):
            for j, col in enumerate(self.maps[i]):
                for r, f in col.items():
                    d = f.homogeneous_degree()
                    if d is None or d != self.twists[i][j] - self.twists[i - 1][r]:
                        return False
        return True

    def entries_in_maximal_ideal(self):
        return all(f.lm != 0 for M in self.maps[1:] for col in M for f in col.values())

    def betti_table(self):
        return betti_table(self)

    def ideal_generators(self):
        return [self.maps[1][j].get(0, self.ring.zero()) for j in range(len(self.twists[1]))] if len(self.maps) > 1 else []


def _constant_rank(cols, col_degrees, row_degrees, degree, p):
    rows = []
    for j, col in enumerate(cols):
        if col_degrees[j] != degree:
            continue
        r = {}
        for i, f in col.items():
            if row_degrees[i] == degree and f.terms and f.terms[-1][1] == 0:
                r[i] = f.terms[-1][2]
        if r:
            rows.append(r)
    return matrix_rank(rows, len(row_degrees), p) if rows else 0


def frame_resolution(I, stats=None):
    """The (non-minimal) Schreyer frame as a :class:`FreeResolution`."""
    ring, levels = schreyer_frame(I, stats=stats)
    twists = [[0]] + [lv.degrees for lv in levels]
    maps = [None] + [_level_matrix(lv, ring) for lv in levels]
    return FreeResolution(ring, twists, maps, minimal=False)


def betti_from_frame(R):
    """Minimal Betti numbers of any graded free resolution via constant-part ranks."""
    p = R.ring.p
    table = {}
    n = len(R.twists)
    for i in range(n):
        for d in sorted(set(R.twists[i])):
            count = R.twists[i].count(d)
            out_rank = _constant_rank(R.maps[i], R.twists[i], R.twists[i - 1], d, p) if i >= 1 else 0
            in_rank = _constant_rank(R.maps[i + 1], R.twists[i + 1], R.twists[i], d, p) if i + 1 < n else 0
            b = count - out_rank - in_rank
            if b:
                table[(i, d - i)] = b
    return BettiTable(table, R.ring.nvars - 1)


def minimize(R):
    """Minimal resolution obtained by pruning unit entries of every map."""
    ring = R.ring
    p = ring.p
    twists = [list(t) for t in R.twists]
    maps = [None] + [[dict(col) for col in M] for M in R.maps[1:]]
    alive = [list(range(len(t))) for t in twists]
    alive_set = [set(a) for a in alive]
    for i in range(1, len(maps)):
        M = maps[i]
        while True:
            pivot = _find_unit(M, alive_set[i], alive_set[i - 1])
            if pivot is None:
                break
            r, c, u = pivot
            _eliminate_pivot(M, r, c, u, alive_set[i], p)
            alive_set[i].discard(c)
            alive_set[i - 1].discard(r)
            # row c of the next map and column r of the previous map are dropped implicitly
            if i + 1 < len(maps):
                for col in maps[i + 1]:
                    col.pop(c, None)
            if i - 1 >= 1:
                maps[i - 1][r] = {}
    new_twists = []
    index_maps = []
    for i, t in enumerate(twists):
        keep = sorted(alive_set[i], key=lambda j: (t[j], j))
        index_maps.append({old: new for new, old in enumerate(keep)})
        new_twists.append([t[j] for j in keep])
    new_maps = [None]
    for i in range(1, len(maps)):
        cols = []
        for old in sorted(alive_set[i], key=lambda j: (twists[i][j], j)):
            col = maps[i][old]
            cols.append({index_maps[i - 1][r]: f for r, f in col.items()
                         if r in index_maps[i - 1] and f.terms})
        new_maps.append(cols)
    while len(new_twists) > 1 and not new_twists[-1]:
        new_twists.pop()
        new_maps.pop()
    return FreeResolution(ring, new_twists, new_maps, minimal=True)


def _find_unit(M, cols, rows):
    for c in sorted(cols):
        for r, f in M[c].items():
            if r in rows and f.terms and f.lm == 0:
                return r, c, f.lc
    return None


def _eliminate_pivot(M, r, c, u, cols, p):
    """Column operations clearing row ``r`` with the unit at ``(r, c)``."""
    pivot_col = M[c]
    inv = inverse_mod(u, p)
    for j in cols:
        if j == c:
            continue
        col = M[j]
        f = col.get(r)
        if f is None or not f.terms:
            continue
        factor = f.scale(inv)
        for rr, g in pivot_col.items():
            upd = factor * g
            if rr in col:
                val = col[rr] - upd
                if val.terms:
                    col[rr] = val
                else:
                    del col[rr]
            else:
                col[rr] = -upd
        col.pop(r, None)
    M[c] = {}


def minimal_free_resolution(I):
    """Minimal graded free resolution of S/I."""
    if I.is_unit():
        raise ResolutionError("the unit ideal has no nontrivial quotient")
    return minimize(frame_resolution(I))


# -- Betti tables ---------------------------------------------------------------

class BettiTable:
    """Graded Betti numbers ``beta[(i, j)]`` of S/I at homological degree i and internal degree i+j."""

    def __init__(self, entries, r):
        self.entries = {k: v for k, v in entries.items() if v}
        self.r = r

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def __eq__(self, other):
        if isinstance(other, BettiTable):
            return self.entries == other.entries
        if isinstance(other, dict):
            return self.entries == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __repr__(self):
        return f"BettiTable({self.entries})"

    def is_empty(self):
        return not self.entries

    @property
    def projective_dimension(self):
        return max(i for i, _ in self.entries)

    @property
    def regularity(self):
        """reg(S/I): largest row index j with a nonzero entry."""
        return max(j for _, j in self.entries)

    def row(self, j, start=1, stop=None):
        stop = stop if stop is not None else max(self.projective_dimension, self.r + 1)
        return tuple(self[(i, j)] for i in range(start, stop + 1))

    def column(self, i):
        return {j: v for (ii, j), v in self.entries.items() if ii == i}

    def total(self, i):
        return sum(v for (ii, _), v in self.entries.items() if ii == i)

    def to_grid(self, columns=None):
        """Row-major text grid: rows j ascending, columns i ascending."""
        if not self.entries:
            return ""
        imax = columns or self.projective_dimension
        jmin = min(j for _, j in self.entries)
        jmax = self.regularity
        width = max(len(str(v)) for v in self.entries.values())
        width = max(width, len(str(imax)))
        lines = ["    " + " ".join(str(i).rjust(width) for i in range(imax + 1))]
        for j in range(jmin, jmax + 1):
            cells = " ".join((str(self[(i, j)]) if self[(i, j)] else "-").rjust(width) for i in range(imax + 1))
            lines.append(f"{j:>2}: {cells}")
        return "\n".join(lines)

    def triples(self):
        return sorted((i, j, v) for (i, j), v in self.entries.items())

    def to_dict(self):
        return {"r": self.r, "betti": [list(t) for t in self.triples()]}

    @classmethod
    def from_dict(cls, d):
        return cls({(i, j): v for i, j, v in d["betti"]}, d["r"])

    @classmethod
    def from_rows(cls, rows, r, include_unit=True):
        """Build from ``{j: (beta_1j, beta_2j, ...)}`` as printed in tables."""
        entries = {(0, 0): 1} if include_unit else {}
        for j, row in rows.items():
            for i, v in enumerate(row, start=1):
                if v:
                    entries[(i, j)] = v
        return cls(entries, r)


def betti_table(R):
    """Betti table read off a minimal resolution."""
    if not R.minimal:
        raise ResolutionError("resolution is not minimal; call minimize() first")
    entries = defaultdict(int)
    for i, t in enumerate(R.twists):
        for d in t:
            entries[(i, d - i)] += 1
    return BettiTable(dict(entries), R.ring.nvars - 1)


def reg_depth_from_betti(B):
    """``(reg(X), pd, depth)`` for the quotient S/I_X; reg(X) = reg(S/I_X) + 1."""
    if B.is_empty():
        raise ResolutionError("empty Betti table")
    pd = B.projective_dimension
    return B.regularity + 1, pd, B.r + 1 - pd


def is_N2p(B, p):
    """Property N_{2,p}: beta_{i,j} = 0 whenever 1 <= i <= p and j != 1."""
    return all(v == 0 or j == 1 for (i, j), v in B.entries.items() if 1 <= i <= p)


def syzygies(gens):
    """Generators of the first syzygy module of homogeneous module elements.

    Uses a Groebner basis of ``(g_i, e_i)`` in ``F + S^m`` under a
    position-over-term order in which every F-component dominates; elements
    with vanishing F-part carry the syzygies.
    """
    gens = list(gens)
    if not gens:
        return []
    F = gens[0].module
    ring = F.ring
    p = ring.p
    m = len(gens)
    n = F.rank
    total = n + m
    # POT: component order first, then grevlex on monomials
    span = _key_span(gens, ring) + 1
    comp_keys = [(total - c) * span for c in range(total)]
    big = FreeModule(ring, F.degrees + [gens[i].degree() or 0 for i in range(m)], 1, comp_keys)
    elems = []
    for idx, g in enumerate(gens):
        comps = dict(g.components)
        comps[n + idx] = ring.one()
        elems.append(ModuleElement(big, comps).terms())
    basis = _module_buchberger(elems, big, p)
    target = FreeModule(ring, [g.degree() or 0 for g in gens])
    out = []
    for el in basis:
        if el and (el[0][1] >> big.shift) >= n:
            comps = defaultdict(dict)
            for _, M, c in el:
                comps[(M >> big.shift) - n][M & big.mono_mask] = c
            out.append(ModuleElement(target, {c: ring.from_mono_dict(d) for c, d in comps.items()}))
    return _prune_syzygies(out, ring)


def _key_span(gens, ring):
    top = 0
    for g in gens:
        for f in g.components.values():
            top = max(top, abs(f.terms[0][0]))
    # syzygy degrees can exceed input degrees; leave generous room
    return (top + 1) * (1 << (FIELD_BITS * 4))


def _module_buchberger(elems, F, p):
    """Module Groebner basis (no coprime criterion); term lists in F."""
    ring = F.ring
    shift = F.shift
    mask = F.mono_mask
    basis = []
    for e in elems:
        if e:
            inv = inverse_mod(e[0][2], p)
            basis.append([(k, M, c * inv % p) for k, M, c in e])

    def leads():
        d = defaultdict(list)
        for i, el in enumerate(basis):
            if el:
                d[el[0][1] >> shift].append((el[0][1] & mask, el[0][0], el, i))
        return d

    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    while pairs:
        i, j = pairs.pop()
        a, b = basis[i], basis[j]
        if not a or not b or (a[0][1] >> shift) != (b[0][1] >> shift):
            continue
        ma, mb = a[0][1] & mask, b[0][1] & mask
        lcm = ring.lcm(ma, mb)
        qa, qb = lcm - ma, lcm - mb
        vec = _merge_terms(_scaled_terms(a, qa, ring.key(qa) * F.scale, 1, p),
                           _scaled_terms(b, qb, ring.key(qb) * F.scale, p - 1, p), p)
        rem, _ = _reduce_module(vec, leads(), F, p)
        if rem:
            inv = inverse_mod(rem[0][2], p)
            basis.append([(k, M, c * inv % p) for k, M, c in rem])
            new = len(basis) - 1
            pairs.extend((new, k) for k in range(new))
    return [el for el in basis if el]


def _prune_syzygies(syz, ring):
    """Drop syzygies that are redundant modulo the others (degree by degree)."""
    syz = sorted(syz, key=lambda s: s.degree() or 0)
    kept = []
    for s in syz:
        if kept and _in_submodule(s, kept):
            continue
        kept.append(s)
    return kept


def _in_submodule(v, gens):
    F = v.module
    ring = F.ring
    p = ring.p
    basis = _module_buchberger([g.terms() for g in gens], F, p)
    shift, mask = F.shift, F.mono_mask
    leads = defaultdict(list)
    for i, el in enumerate(basis):
        leads[el[0][1] >> shift].append((el[0][1] & mask, el[0][0], el, i))
    rem, _ = _reduce_module(v.terms(), leads, F, p)
    return not rem


# -- graded local cohomology via duality ------------------------------------------
#
# h^i(S/I)_n = dim Ext^{r+1-i}(S/I, S(-r-1))_{-n}, computed as homology of the
# dual of a minimal resolution, one graded piece at a time.

INCONCLUSIVE = "window inconclusive"


def _dual_piece(R, k, m):
    """Monomial basis of Hom(F_k, S(-r-1))_m as ``[(component, monomial)]``."""
    ring = R.ring
    if k < 0 or k >= len(R.twists):
        return []
    shift = -ring.nvars
    out = []
    for c, t in enumerate(R.twists[k]):
        for mono in ring.monomials_of_degree(m + t + shift):
            out.append((c, mono))
    return out


def _dual_rank(R, k, m, source, target):
    """Rank of the dual map Hom(F_{k-1}) -> Hom(F_k) in degree m."""
    if not source or not target or k < 1 or k >= len(R.maps):
        return 0
    index = {b: i for i, b in enumerate(target)}
    # row r of phi_k, as {column: polynomial}
    rows_of = defaultdict(dict)
    for c, col in enumerate(R.maps[k]):
        for r, f in col.items():
            rows_of[r][c] = f
    rows = []
    for r, mono in source:
        row = {}
        for c, f in rows_of.get(r, {}).items():
            for _, m2, co in f.terms:
                j = index[(c, m2 + mono)]
                row[j] = (row.get(j, 0) + co) % R.ring.p
        row = {j: v for j, v in row.items() if v}
        if row:
            rows.append(row)
    return matrix_rank(rows, len(target), R.ring.p)


def local_cohomology_dim(R, i, n):
    """dim H^i_m(S/I)_n from a free resolution R of S/I."""
    r = R.ring.nvars - 1
    k = r + 1 - i
    m = -n
    here = _dual_piece(R, k, m)
    if not here:
        return 0
    before = _dual_piece(R, k - 1, m)
    after = _dual_piece(R, k + 1, m)
    return len(here) - _dual_rank(R, k, m, before, here) - _dual_rank(R, k + 1, m, here, after)


class CohomologyTable:
    """Dimensions ``h^i(S/I)_n`` over a window of degrees.

    ``index_of_normality`` is the largest n with h^1 != 0 (None stands for
    minus infinity); ``stable_h2`` is the common value at n = -1, -2, the
    string :data:`INCONCLUSIVE` when those differ, or None if h^2 was not requested.
    """

    def __init__(self, entries, window, dimension, regularity):
        self.entries = dict(entries)
        self.window = window
        self.dimension = dimension
        self.regularity = regularity
        self.index_of_normality = None
        self.stable_h2 = None
        self.h1_conclusive = True

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def values(self, i):
        lo, hi = self.window
        return [self[(i, n)] for n in range(lo, hi + 1)]

    def vanishes(self, i):
        return not any(self.values(i))

    def to_dict(self):
        lo, hi = self.window
        return {
            "window": [lo, hi],
            "h": {str(i): self.values(i) for i in sorted({i for i, _ in self.entries})},
            "N": "-inf" if self.index_of_normality is None else self.index_of_normality,
            "N_conclusive": self.h1_conclusive,
            "e": self.stable_h2,
        }


def graded_cohomology_dims(I, indices=None, window=(-2, 8), resolution=None):
    """Graded cohomology dimensions of S/I over ``window`` (inclusive).

    h^i(S/I)_n vanishes for n > reg(S/I) - i, so a window ending below that
    bound cannot certify N(X); the table records this.
    """
    R = resolution if resolution is not None else minimal_free_resolution(I)
    B = betti_table(R) if R.minimal else betti_from_frame(R)
    reg = B.regularity
    from .hilbert import hilbert_series
    dim = hilbert_series(I).dimension
    if indices is None:
        indices = range(1, dim + 1)
    lo, hi = window
    entries = {}
    for i in indices:
        for n in range(lo, hi + 1):
            entries[(i, n)] = local_cohomology_dim(R, i, n)
    T = CohomologyTable(entries, (lo, hi), dim, reg)
    if 1 in indices:
        nz = [n for n in range(lo, hi + 1) if entries[(1, n)]]
        T.index_of_normality = max(nz) if nz else None
        # trailing zeros above reg - 1 are guaranteed; below lo nothing is known
        T.h1_conclusive = hi >= reg - 1 and (bool(nz) or lo <= 0)
    if 2 in indices:
        h2 = [entries[(2, n)] if (2, n) in entries else local_cohomology_dim(R, 2, n) for n in (-2, -1)]
        T.stable_h2 = h2[0] if h2[0] == h2[1] else INCONCLUSIVE
    return T
