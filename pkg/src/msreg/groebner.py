"""Buchberger's algorithm and the ideal toolbox built on it."""

import heapq
import threading

from .arith import inverse_mod
from .poly import (
    FIELD_BITS,
    FIELD_MASK,
    GREVLEX,
    Polynomial,
    PolynomialRing,
    TermOrder,
    block_order,
)


class IdealError(ValueError):
    pass


# -- reduction kernels --------------------------------------------------------

def _find_reducer(m, lead, guard):
    for lm, g in lead:
        if ((m | guard) - lm) & guard == guard:
            return lm, g
    return None


def reduce_terms(terms, lead, ring, full=True):
    """Reduce a term list by ``lead = [(lm, monic poly), ...]``.

    Returns the remainder term list.  With ``full=False`` only the leading
    term is reduced until it is irreducible.
    """
    if not terms:
        return []
    p = ring.p
    guard = ring.guard
    acc = {}
    heap = []
    for k, m, c in terms:
        acc[k] = [m, c]
        heap.append(-k)
    heapq.heapify(heap)
    rem = []
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        k = -pop(heap)
        entry = acc.pop(k)
        m, c = entry
        if not c:
            continue
        hit = _find_reducer(m, lead, guard)
        if hit is None:
            rem.append((k, m, c))
            if not full:
                break
            continue
        lm, g = hit
        gt = g.terms
        q = m - lm
        qk = k - gt[0][0]
        mc = p - c
        for k2, m2, c2 in gt[1:]:
            kk = k2 + qk
            e = acc.get(kk)
            if e is None:
                acc[kk] = [m2 + q, mc * c2 % p]
                push(heap, -kk)
            else:
                e[1] = (e[1] + mc * c2) % p
    if not full and heap:
        rest = [(k, e[0], e[1]) for k, e in acc.items() if e[1]]
        rest.sort(reverse=True)
        rem.extend(rest)
    return rem


def divide(f, divisors):
    """Multivariate division: ``f = sum(q_i * g_i) + r``; returns ``(qs, r)``.

    Divisors need not be monic.  No term of ``r`` is divisible by any
    leading monomial of the divisors.
    """
    ring = f.ring
    p = ring.p
    guard = ring.guard
    lead = [(g.lm, i) for i, g in enumerate(divisors) if g.terms]
    invs = {i: inverse_mod(divisors[i].lc, p) for _, i in lead}
    quot = [dict() for _ in divisors]
    acc = {}
    heap = []
    for k, m, c in f.terms:
        acc[k] = [m, c]
        heap.append(-k)
    heapq.heapify(heap)
    rem = []
    while heap:
        k = -heapq.heappop(heap)
        m, c = acc.pop(k)
        if not c:
            continue
        for lm, i in lead:
            if ((m | guard) - lm) & guard == guard:
                break
        else:
            rem.append((k, m, c))
            continue
        gt = divisors[i].terms
        q = m - lm
        qk = k - gt[0][0]
        qc = c * invs[i] % p
        quot[i][q] = (quot[i].get(q, 0) + qc) % p
        mc = p - qc
        for k2, m2, c2 in gt[1:]:
            kk = k2 + qk
            e = acc.get(kk)
            if e is None:
                acc[kk] = [m2 + q, mc * c2 % p]
                heapq.heappush(heap, -kk)
            else:
                e[1] = (e[1] + mc * c2) % p
    qs = [ring.from_mono_dict(d) for d in quot]
    return qs, Polynomial(ring, rem)


def divide_exact(f, g):
    (q,), r = divide(f, [g])
    if r:
        raise IdealError("division is not exact")
    return q


def spoly_terms(f, g, ring):
    """S-polynomial of two monic polynomials as a term list."""
    lcm = ring.lcm(f.lm, g.lm)
    lk = ring.key(lcm)
    a = f.mul_term(lcm - f.lm, 1, lk - f.terms[0][0])
    b = g.mul_term(lcm - g.lm, 1, lk - g.terms[0][0])
    return (a - b).terms


# -- Buchberger --------------------------------------------------------------

class GroebnerBasis:
    """Reduced, monic Groebner basis; ``elements`` sorted by ascending leading monomial."""

    def __init__(self, ring, elements, reduced=True):
        self.ring = ring
        self.order = ring.order
        self.elements = sorted(elements, key=lambda g: g.terms[0][0])
        self.reduced = reduced
        self._lead = [(g.lm, g) for g in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def leading_monomials(self):
        return [g.lm for g in self.elements]

    def normal_form(self, f):
        if f.ring != self.ring:
            f = f.to_ring(self.ring)
        return Polynomial(self.ring, reduce_terms(f.terms, self._lead, self.ring))

    def contains(self, f):
        return not self.normal_form(f)

    def is_unit_ideal(self):
        return any(g.lm == 0 for g in self.elements)

    def check_spolys(self):
        """True when every S-polynomial reduces to zero."""
        G = self.elements
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                s = spoly_terms(G[i], G[j], self.ring)
                if reduce_terms(s, self._lead, self.ring):
                    return False
        return True

    def is_reduced(self):
        ring = self.ring
        for g in self.elements:
            if g.lc != 1:
                return False
            for lm, h in self._lead:
                if h is g:
                    continue
                if any(ring.divides(lm, m) for _, m, _ in g.terms):
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and [g.as_dict() for g in self.elements] == [g.as_dict() for g in other.elements])

    def __repr__(self):
        return f"GroebnerBasis({len(self.elements)} elements, {self.order.kind})"


def buchberger(polys, ring=None, stats=None):
    """Reduced Groebner basis of the ideal generated by ``polys``.

    Pairs are chosen by the normal strategy (smallest degree of the lcm, in
    the ring's grading) and pruned with the Gebauer-Moeller criteria and the
    coprime-leading-monomial criterion.
    """
    if ring is None:
        ring = polys[0].ring
    polys = [f if f.ring == ring else f.to_ring(ring) for f in polys]
    gens = [f.monic() for f in polys if f.terms]
    if not gens:
        return GroebnerBasis(ring, [])
    deg = ring.mono_degree
    lcm = ring.lcm
    divides = ring.divides
    basis = []          # all polynomials ever added
    active = []         # indices of non-redundant basis elements
    pairs = []          # heap of (degree, lcm key, i, j, lcm)
    pair_lcm = {}       # (i, j) -> lcm for live pairs
    counters = {"pairs": 0, "zero": 0, "gm_pruned": 0}

    def lead_list():
        return [(basis[i].lm, basis[i]) for i in active]

    def update(h_idx):
        nonlocal active
        h = basis[h_idx]
        hm = h.lm
        cand = [(g, lcm(basis[g].lm, hm)) for g in active]
        kept = []
        pending = list(cand)
        while pending:
            g1, l1 = pending.pop()
            coprime = l1 == basis[g1].lm + hm
            if coprime or (not any(divides(l2, l1) for _, l2 in pending)
                           and not any(divides(l2, l1) for _, l2 in kept)):
                kept.append((g1, l1))
            else:
                counters["gm_pruned"] += 1
        for key in list(pair_lcm):
            l12 = pair_lcm[key]
            i, j = key
            if divides(hm, l12) and lcm(basis[i].lm, hm) != l12 and lcm(basis[j].lm, hm) != l12:
                del pair_lcm[key]
                counters["gm_pruned"] += 1
        for g1, l1 in kept:
            if l1 == basis[g1].lm + hm:
                continue
            pair_lcm[(g1, h_idx)] = l1
            heapq.heappush(pairs, (deg(l1), ring.key(l1), g1, h_idx))
        active = [g for g in active if not divides(hm, basis[g].lm)] + [h_idx]

    gens.sort(key=lambda f: (f.degree(), f.terms[0][0]))
    pending_gens = []
    for f in gens:
        heapq.heappush(pending_gens, (f.degree(), f.terms[0][0], len(pending_gens), f))

    def add(terms):
        h = Polynomial(ring, terms).monic()
        basis.append(h)
        update(len(basis) - 1)

    while pairs or pending_gens:
        next_pair = pairs[0][0] if pairs else None
        next_gen = pending_gens[0][0] if pending_gens else None
        if next_gen is not None and (next_pair is None or next_gen <= next_pair):
            _, _, _, f = heapq.heappop(pending_gens)
            r = reduce_terms(f.terms, lead_list(), ring)
            if r:
                add(r)
            continue
        _, _, i, j = heapq.heappop(pairs)
        if pair_lcm.pop((i, j), None) is None:
            continue
        counters["pairs"] += 1
        s = spoly_terms(basis[i], basis[j], ring)
        r = reduce_terms(s, lead_list(), ring)
        if r:
            add(r)
        else:
            counters["zero"] += 1
    G = [basis[i] for i in active]
    if stats is not None:
        stats.update(counters)
    return GroebnerBasis(ring, interreduce(G, ring))


def interreduce(G, ring):
    """Minimal generators by leading monomial, tails fully reduced, monic."""
    G = sorted(G, key=lambda g: g.terms[0][0])
    minimal = []
    for g in G:
        if not any(ring.divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    out = []
    for g in minimal:
        others = [(h.lm, h) for h in minimal if h is not g]
        tail = reduce_terms(g.terms[1:], others, ring)
        out.append(Polynomial(ring, [g.terms[0]] + tail).monic())
    return out


# -- ideals ---------------------------------------------------------------------

class GradedIdeal:
    """Ideal generated by homogeneous polynomials, with a Groebner basis cache.

    Homogeneity is with respect to the ring's grading.
    """

    def __init__(self, ring, generators=(), check=True):
        self.ring = ring
        gens = []
        for f in generators:
            if isinstance(f, str):
                f = ring.parse(f)
            elif f.ring != ring:
                f = f.to_ring(ring)
            if check and not f.is_homogeneous():
                raise IdealError(f"generator {f} is not homogeneous")
            if f.terms:
                gens.append(f)
        self.generators = gens
        self._cache = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"GradedIdeal({len(self.generators)} generators in {self.ring})"

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def groebner(self, order=None):
        order = order or self.ring.order
        with self._lock:
            gb = self._cache.get(order)
        if gb is None:
            ring = self.ring if order == self.ring.order else self.ring.with_order(order)
            gb = buchberger(self.generators, ring) if self.generators else GroebnerBasis(ring, [])
            with self._lock:
                self._cache.setdefault(order, gb)
        return gb

    def contains(self, f):
        if isinstance(f, GradedIdeal):
            return all(self.contains(g) for g in f.generators)
        return self.groebner().contains(f)

    def __eq__(self, other):
        if not isinstance(other, GradedIdeal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = [other]
        gens = other.generators if isinstance(other, GradedIdeal) else list(other)
        return GradedIdeal(self.ring, self.generators + [g.to_ring(self.ring) if g.ring != self.ring else g
                                                          for g in gens])

    def __mul__(self, other):
        return GradedIdeal(self.ring, [f * g for f in self.generators for g in other.generators])

    def is_zero(self):
        return not self.generators

    def is_unit(self):
        return self.groebner().is_unit_ideal()

    def degrees(self):
        return sorted(f.homogeneous_degree() for f in self.generators)

    def minimalize(self):
        """Drop generators lying in the ideal of the others (degree by degree)."""
        by_deg = sorted(self.generators, key=lambda f: f.homogeneous_degree())
        kept = []
        gb = None
        for f in by_deg:
            if gb is not None and gb.contains(f):
                continue
            kept.append(f)
            gb = buchberger(kept, self.ring)
        return GradedIdeal(self.ring, kept)

    def in_degree(self, n):
        """Homogeneous generators of the degree-``n`` piece I_n, as a basis."""
        from .linalg import row_reduce
        ring = self.ring
        monos = ring.monomials_of_degree(n)
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for f in self.generators:
            e = f.homogeneous_degree()
            if e is None or e > n:
                continue
            for q in ring.monomials_of_degree(n - e):
                rows.append({index[m + q]: c for _, m, c in f.terms})
        basis = row_reduce(rows, len(monos), ring.p)
        return [ring.from_mono_dict({monos[j]: c for j, c in row.items()}) for row in basis]


def ideal(ring, gens):
    return GradedIdeal(ring, gens)


def normal_form(f, G):
    return G.normal_form(f)


def _moved_ring(ring, first, order, grading=None):
    """Ring with the variables ``first`` moved to the front (stable otherwise)."""
    first = list(first)
    rest = [k for k in range(ring.nvars) if k not in first]
    perm = first + rest
    names = [ring.names[k] for k in perm]
    grading = grading or [ring.grading[k] for k in perm]
    if order.weights is not None:
        order = TermOrder(order.kind, order.block, tuple(order.weights[k] for k in perm))
    return PolynomialRing(names, ring.p, order, grading), perm


def eliminate(I, block, keep_ring=False, order_weights=None):
    """Generators of ``I`` intersected with the subring free of ``block``.

    ``block`` holds variable names or indices.  The result lives in the
    subring of remaining variables unless ``keep_ring`` is set.
    ``order_weights`` (one per variable of ``I.ring``) feed the grevlex
    comparisons inside the block order; by default the ring grading is used.
    """
    ring = I.ring
    block = sorted({ring.index(b) if isinstance(b, str) else b for b in block})
    if not block:
        return GradedIdeal(ring, I.generators, check=False) if keep_ring else I
    weights = tuple(order_weights) if order_weights else ring.grading
    order = block_order(len(block), weights)
    elim_ring, perm = _moved_ring(ring, block, order)
    gb = buchberger([f.to_ring(elim_ring) for f in I.generators], elim_ring)
    nb = len(block)
    block_mask = sum(FIELD_MASK << (FIELD_BITS * k) for k in range(nb))
    kept = [g for g in gb.elements if not any(m & block_mask for _, m, _ in g.terms)]
    rest_names = [ring.names[k] for k in range(ring.nvars) if k not in block]
    if keep_ring:
        target = ring
    else:
        rest_grading = [ring.grading[k] for k in range(ring.nvars) if k not in block]
        target = PolynomialRing(rest_names, ring.p, ring.order if ring.order.kind != "block" else GREVLEX,
                                rest_grading)
    out = GradedIdeal(target, [g.to_ring(target) for g in kept], check=False)
    return out


def _with_aux(ring, name="_t", aux_degree=0):
    names = [name] + list(ring.names)
    grading = [aux_degree] + list(ring.grading)
    return PolynomialRing(names, ring.p, block_order(1), grading)


def intersect(I, J):
    """I ∩ J via elimination of ``t`` from ``t*I + (1-t)*J``.

    ``t`` gets degree 0 so the auxiliary ideal stays graded.
    """
    if I.ring != J.ring:
        raise IdealError("ideals live in different rings")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return GradedIdeal(ring, [])
    R = _with_aux(ring)
    t = R.gen(0)
    one_minus_t = R.one() - t
    gens = [t * f.to_ring(R) for f in I.generators] + [one_minus_t * g.to_ring(R) for g in J.generators]
    gb = buchberger(gens, R)
    tmask = FIELD_MASK
    kept = [g.to_ring(ring) for g in gb.elements if not any(m & tmask for _, m, _ in g.terms)]
    return GradedIdeal(ring, kept, check=False)


def colon(I, f):
    """(I : f) for a single nonzero homogeneous ``f``."""
    if isinstance(f, GradedIdeal):
        return colon_ideal(I, f)
    if not f.terms:
        raise IdealError("colon by the zero polynomial")
    ring = I.ring
    if f.lm == 0:
        return I
    if I.is_zero():
        return GradedIdeal(ring, [])
    K = intersect(I, GradedIdeal(ring, [f]))
    return GradedIdeal(ring, [divide_exact(g, f) for g in K.generators], check=False)


def colon_ideal(I, J):
    """(I : J) as the intersection of colons by the generators of J."""
    result = None
    for g in J.generators:
        Q = colon(I, g)
        result = Q if result is None else intersect(result, Q)
    if result is None:
        return GradedIdeal(I.ring, [I.ring.one()])
    return result


def colon_by_variable_power(I, k):
    """(I : x_k^infinity) via a grevlex basis with ``x_k`` last (standard grading)."""
    ring = I.ring
    k = ring.index(k) if isinstance(k, str) else k
    if I.is_zero():
        return I
    names = [n for i, n in enumerate(ring.names) if i != k] + [ring.names[k]]
    R = PolynomialRing(names, ring.p, GREVLEX, [ring.grading[i] for i in range(ring.nvars) if i != k] + [ring.grading[k]])
    gb = buchberger([f.to_ring(R) for f in I.generators], R)
    shift = FIELD_BITS * (ring.nvars - 1)
    out = []
    for g in gb.elements:
        e = min((m >> shift) & FIELD_MASK for _, m, _ in g.terms)
        if e:
            g = Polynomial(R, [(kk - e * R.weights[-1], m - (e << shift), c) for kk, m, c in g.terms])
        out.append(g.to_ring(ring))
    return GradedIdeal(ring, out, check=False)


def irrelevant_ideal(ring):
    return GradedIdeal(ring, ring.gens())


def saturate(I, J=None, max_steps=64):
    """(I : J^infinity); ``J=None`` means the irrelevant ideal."""
    ring = I.ring
    if I.is_zero():
        return I
    if J is None or _is_irrelevant(J):
        if all(w == 1 for w in ring.grading):
            return saturate_irrelevant(I)
        J = irrelevant_ideal(ring)
    current = I
    for _ in range(max_steps):
        nxt = colon_ideal(current, J)
        if nxt.groebner() == current.groebner():
            return current
        current = nxt
    raise IdealError("saturation did not stabilize")


def _is_irrelevant(J):
    ring = J.ring
    gb = J.groebner()
    return sorted(gb.leading_monomials()) == sorted(ring.var_monos) and len(gb) == ring.nvars


def saturate_irrelevant(I):
    """I^sat as the intersection of the variable saturations (I : x_k^infinity)."""
    ring = I.ring
    result = None
    for k in range(ring.nvars):
        Q = colon_by_variable_power(I, k)
        if Q.is_unit():
            continue
        result = Q if result is None else intersect(result, Q)
        result = GradedIdeal(ring, result.groebner().elements, check=False)
    if result is None:
        return GradedIdeal(ring, [ring.one()])
    return result


def _shear(I, coeffs, sign):
    # x_last -> x_last + sign * sum c_j x_j
    from .poly import substitute
    ring = I.ring
    n = ring.nvars
    last = ring.gen(n - 1)
    for j, c in enumerate(coeffs):
        if c:
            last = last + ring.gen(j).scale(sign * c)
    images = ring.gens()[:-1] + [last]
    return GradedIdeal(ring, [substitute(g, images, ring) for g in I.generators], check=False)


def colon_by_linear_form_power(I, coeffs):
    """(I : l^infinity) for l = x_last + sum coeffs[j] x_j (j < last)."""
    moved = _shear(I, coeffs, -1)
    Q = colon_by_variable_power(moved, I.ring.nvars - 1)
    return _shear(Q, coeffs, 1)


def saturate_generic(I, seed=0):
    """I^sat as (I : l^infinity) for a seeded general linear form l.

    A general l avoids every non-irrelevant associated prime, so the colon
    is the saturation.  Two independent forms must agree; otherwise the
    exact variable-by-variable method is used.
    """
    import random
    ring = I.ring
    if I.is_zero() or any(w != 1 for w in ring.grading):
        return saturate(I)
    rng = random.Random(seed)
    results = []
    for _ in range(2):
        coeffs = [rng.randrange(ring.p) for _ in range(ring.nvars - 1)]
        Q = colon_by_linear_form_power(I, coeffs)
        results.append(GradedIdeal(ring, Q.groebner().elements, check=False))
    if results[0].groebner() == results[1].groebner():
        return results[0]
    return saturate_irrelevant(I)


def is_saturated(I):
    return saturate(I).groebner() == I.groebner()
