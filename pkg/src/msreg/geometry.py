"""Varieties from recipes: scrolls, divisors on scrolls, parametrized surfaces,
projections, hyperplane sections, and secant-line analysis.

"General" choices come from a seeded ``random.Random``; every consumer checks
the open condition it relies on and retries with the next seed, recording
the seeds it used.
"""

import random
from dataclasses import dataclass, field

from .arith import DEFAULT_PRIME
from .groebner import GradedIdeal, colon, eliminate, intersect, saturate, saturate_generic
from .hilbert import NotFiniteError, hilbert_series, scheme_length
from .linalg import nullspace, row_reduce
from .poly import PolynomialRing, substitute
from .resolution import syzygies, FreeModule, ModuleElement

MAX_RETRIES = 20


class GeometryError(ValueError):
    pass


class UnsupportedRecipe(GeometryError):
    pass


def coordinate_ring(n, p=DEFAULT_PRIME, prefix="x"):
    """Standard graded GF(p)[x0..x{n-1}]."""
    return PolynomialRing([f"{prefix}{i}" for i in range(n)], p)


# -- linear subspaces -------------------------------------------------------------

def _linear_coeffs(f):
    ring = f.ring
    vec = [0] * ring.nvars
    for _, m, c in f.terms:
        e = ring.unpack(m)
        if sum(e) != 1:
            raise GeometryError(f"{f} is not a linear form")
        vec[e.index(1)] = c
    return vec


def _form(ring, vec):
    return ring.from_dict({tuple(int(i == k) for i in range(ring.nvars)): c for k, c in enumerate(vec) if c % ring.p})


class LinearSubspace:
    """Linear subspace of P^{n-1} cut out by independent linear forms."""

    def __init__(self, ring, forms):
        self.ring = ring
        forms = [ring.parse(f) if isinstance(f, str) else f for f in forms]
        vecs = [_linear_coeffs(f) for f in forms]
        basis = row_reduce([{j: c for j, c in enumerate(v) if c} for v in vecs], ring.nvars, ring.p)
        if len(basis) != len(forms):
            raise GeometryError("defining forms are linearly dependent")
        self.forms = forms

    @classmethod
    def from_points(cls, ring, points):
        """Span of the given coordinate vectors."""
        rows = [{j: c % ring.p for j, c in enumerate(pt) if c % ring.p} for pt in points]
        ker = nullspace(rows, ring.nvars, ring.p)
        forms = [_form(ring, [v.get(j, 0) for j in range(ring.nvars)]) for v in ker]
        return cls(ring, forms)

    @property
    def codim(self):
        return len(self.forms)

    @property
    def dimension(self):
        """Projective dimension."""
        return self.ring.nvars - 1 - self.codim

    def ideal(self):
        return GradedIdeal(self.ring, self.forms)

    def points(self):
        """Coordinate vectors spanning the subspace."""
        rows = [{j: c for j, c in enumerate(_linear_coeffs(f)) if c} for f in self.forms]
        n = self.ring.nvars
        return [[v.get(j, 0) for j in range(n)] for v in nullspace(rows, n, self.ring.p)]

    def parametrization(self, names=None):
        """Images of the coordinates under ``(l_0 : ... : l_k) -> sum l_i P_i``."""
        pts = self.points()
        names = names or [f"l{i}" for i in range(len(pts))]
        P = PolynomialRing(names, self.ring.p)
        ls = P.gens()
        images = []
        for j in range(self.ring.nvars):
            img = P.zero()
            for l, pt in zip(ls, pts):
                if pt[j]:
                    img = img + l.scale(pt[j])
            images.append(img)
        return P, images

    def __repr__(self):
        return f"LinearSubspace(P^{self.dimension} in P^{self.ring.nvars - 1}: {', '.join(map(str, self.forms))})"


def random_point(rng, n, p, support=None):
    support = range(n) if support is None else support
    pt = [0] * n
    for j in support:
        pt[j] = rng.randrange(p)
    return pt


def random_subspace(ring, dim, rng, support=None):
    """Seeded random P^dim, inside the coordinate span of ``support`` if given."""
    for _ in range(MAX_RETRIES):
        pts = [random_point(rng, ring.nvars, ring.p, support) for _ in range(dim + 1)]
        try:
            L = LinearSubspace.from_points(ring, pts)
        except GeometryError:
            continue
        if L.dimension == dim:
            return L
    raise GeometryError("could not draw independent points")


def random_line(ring, rng):
    return random_subspace(ring, 1, rng)


def random_linear_form(ring, rng):
    return _form(ring, [rng.randrange(ring.p) for _ in range(ring.nvars)])


def linear_forms_in(I):
    """Basis of the degree-1 part of I."""
    return I.in_degree(1)


def contains_subspace(I, L):
    """True when the subspace L lies on V(I): every generator vanishes on L."""
    P, images = L.parametrization()
    return all(not substitute(g, images, P).terms for g in I.generators)


# -- scrolls and parametrized images ------------------------------------------------

def scroll_ideal(exponents, p=DEFAULT_PRIME, ring=None):
    """Ideal of S(a_1, ..., a_k): 2x2 minors of the concatenated Hankel blocks."""
    exps = list(exponents)
    if not exps or any(a < 0 for a in exps):
        raise GeometryError("scroll exponents must be nonnegative")
    if not any(exps):
        raise GeometryError("degenerate scroll: all exponents are zero")
    n = sum(exps) + len(exps)
    ring = ring or coordinate_ring(n, p)
    x = ring.gens()
    cols = []
    start = 0
    for a in exps:
        cols.extend((x[start + j], x[start + j + 1]) for j in range(a))
        start += a + 1
    gens = []
    for i in range(len(cols)):
        for j in range(i + 1, len(cols)):
            f = cols[i][0] * cols[j][1] - cols[j][0] * cols[i][1]
            if f.terms:
                gens.append(f)
    return GradedIdeal(ring, gens)


def scroll_forms(exponents, p=DEFAULT_PRIME):
    """Parameter ring ``K[s, t, u0, ...]`` and the forms u_i s^{a_i-j} t^j."""
    exps = list(exponents)
    P = PolynomialRing(["s", "t"] + [f"u{i}" for i in range(len(exps))], p)
    s, t = P.gen(0), P.gen(1)
    forms = []
    for i, a in enumerate(exps):
        u = P.gen(2 + i)
        forms.extend(u * s ** (a - j) * t ** j for j in range(a + 1))
    return P, forms


def _image_grading(forms, base):
    """Weights making ``x_i - form_i`` homogeneous: base variables get 1."""
    P = forms[0].ring
    base_idx = [P.index(b) for b in base]
    fiber_idx = [k for k in range(P.nvars) if k not in base_idx]
    fiber_deg = {}
    base_degs = set()
    for f in forms:
        for _, m, _ in f.terms:
            e = P.unpack(m)
            bd = sum(e[k] for k in base_idx)
            fib = [k for k in fiber_idx if e[k]]
            if not fib:
                base_degs.add(bd)
                continue
            if len(fib) != 1 or e[fib[0]] != 1:
                raise GeometryError("forms must be linear in the fiber variables")
            k = fib[0]
            if fiber_deg.setdefault(k, bd) != bd:
                raise GeometryError("forms are not bihomogeneous")
    if fiber_deg:
        top = max(fiber_deg.values())
        if base_degs:
            raise GeometryError("forms mix fiber-free and fiber terms")
        D = top + 1
    else:
        if len(base_degs) != 1:
            raise GeometryError("forms have different degrees")
        D = base_degs.pop()
    grading = [1] * P.nvars
    for k in fiber_idx:
        grading[k] = D - fiber_deg[k] if k in fiber_deg else 1
    return grading, D


def parametrized_image_ideal(forms, base=("s", "t"), names=None, standard=True):
    """Ideal of the closure of the image of the map given by ``forms``.

    Forms live in a parameter ring with base variables ``base`` and fiber
    variables occurring linearly.  The graph ideal <x_i - form_i> is graded
    by weights that make it homogeneous, then the parameters are eliminated.
    """
    forms = list(forms)
    if len(forms) < 3:
        raise GeometryError("need at least three forms")
    P = forms[0].ring
    grading, D = _image_grading(forms, base)
    names = names or [f"x{i}" for i in range(len(forms))]
    R = PolynomialRing(list(P.names) + list(names), P.p, grading=grading + [D] * len(forms))
    xs = R.gens()[P.nvars:]
    graph = GradedIdeal(R, [x - f.to_ring(R) for x, f in zip(xs, forms)])
    E = eliminate(graph, list(P.names), order_weights=grading + [D] * len(forms))
    if not standard:
        return E
    S = PolynomialRing(list(names), P.p)
    return GradedIdeal(S, [g.to_ring(S) for g in E.generators])


def is_degenerate(I):
    return bool(linear_forms_in(I))


def xf_forms(a, b, f, p=DEFAULT_PRIME):
    """Parametrization (u s^a, ..., u t^a, v s^b, v f, v t^b) of the surface X_f."""
    P = PolynomialRing(["s", "t", "u", "v"], p)
    s, t, u, v = P.gens()
    if isinstance(f, str):
        f = P.parse(f)
    else:
        f = f.to_ring(P)
    if f.homogeneous_degree() != b:
        raise GeometryError(f"f must be a form of degree {b}")
    return P, [u * s ** (a - i) * t ** i for i in range(a + 1)] + [v * s ** b, v * f, v * t ** b]


def xf_ideal(a, b, f, p=DEFAULT_PRIME):
    """Ideal of X_f in P^{a+3}."""
    _, forms = xf_forms(a, b, f, p)
    return parametrized_image_ideal(forms)


def xf_plane(ring, a):
    """The plane of the last three coordinates, as a LinearSubspace of P^{a+3}."""
    return LinearSubspace(ring, ring.gens()[: a + 1])


# -- divisors on scrolls -------------------------------------------------------------

def _binary_forms_ring(p):
    return PolynomialRing(["s", "t"], p)


def random_binary_form(P, degree, rng):
    return P.from_dict({(degree - j, j): rng.randrange(P.p) for j in range(degree + 1)})


def _kernel_syzygies(section, P):
    """Generators (h_1..h_m) with sum g_i h_i = 0 and their degrees."""
    m = len(section)
    nonzero = [i for i, g in enumerate(section) if g.terms]
    out = []
    for i in range(m):
        if i not in nonzero:
            vec = [P.zero()] * m
            vec[i] = P.one()
            out.append(vec)
    if len(nonzero) >= 2:
        F = FreeModule(P, [0])
        gens = [ModuleElement(F, {0: section[i]}) for i in nonzero]
        for s in syzygies(gens):
            vec = [P.zero()] * m
            for c, h in s.components.items():
                vec[nonzero[c]] = h
            out.append(vec)
    return out


def divisor_on_scroll_ideal(exponents, k, section=None, seed=0, p=DEFAULT_PRIME, info=None):
    """Ideal of a divisor in |H + kF| on the scroll S(a_1, ..., a_m).

    ``section`` lists binary forms g_i of degree a_i + k (strings or
    polynomials in s, t); the divisor is the zero locus of sum g_i u_i.  A
    random section is drawn from ``seed`` when none is given.  ``info``
    (a dict) receives the section and seeds used.
    """
    exps = list(exponents)
    if k < 0:
        raise UnsupportedRecipe("only classes H + kF with k >= 0 are supported")
    P = _binary_forms_ring(p)
    seeds = []
    for attempt in range(MAX_RETRIES if section is None else 1):
        if section is None:
            rng = random.Random(seed + attempt)
            seeds.append(seed + attempt)
            g = [random_binary_form(P, a + k, rng) for a in exps]
        else:
            g = [P.parse(x) if isinstance(x, str) else x.to_ring(P) for x in section]
            if len(g) != len(exps):
                raise GeometryError("section needs one form per scroll block")
            for gi, a in zip(g, exps):
                if gi.terms and gi.homogeneous_degree() != a + k:
                    raise GeometryError(f"section form {gi} must have degree {a + k}")
        if not any(gi.terms for gi in g):
            raise GeometryError("non-reduced recipe: section is identically zero")
        common = GradedIdeal(P, [gi for gi in g if gi.terms])
        if hilbert_series(common).dimension > 0:
            if section is not None:
                raise GeometryError("non-reduced recipe: section vanishes on a whole ruling")
            continue
        break
    else:
        raise GeometryError("no admissible section found")
    syz = _kernel_syzygies(g, P)
    names = ["s", "t"] + [f"l{i}" for i in range(len(syz))]
    Q = PolynomialRing(names, p)
    s, t = Q.gen(0), Q.gen(1)
    forms = []
    for i, a in enumerate(exps):
        u = Q.zero()
        for idx, vec in enumerate(syz):
            if vec[i].terms:
                u = u + Q.gen(2 + idx) * vec[i].to_ring(Q)
        forms.extend(u * s ** (a - j) * t ** j for j in range(a + 1))
    I = parametrized_image_ideal(forms)
    if info is not None:
        info.update(section=[str(x) for x in g], seeds=seeds)
    return I


# -- projections and sections --------------------------------------------------------

def project(I, center, names=None):
    """Image of V(I) under the projection from ``center`` (a LinearSubspace).

    The target coordinates are the defining forms of the center; an empty
    center (r + 1 independent forms) is just a change of coordinates.
    """
    ring = I.ring
    meet = I + center.ideal()
    if hilbert_series(meet).dimension > 0:
        raise GeometryError("center meets the variety")
    forms = center.forms
    names = names or [f"y{i}" for i in range(len(forms))]
    R = PolynomialRing(list(ring.names) + list(names), ring.p)
    ys = R.gens()[ring.nvars:]
    gens = [f.to_ring(R) for f in I.generators] + [y - l.to_ring(R) for y, l in zip(ys, forms)]
    E = eliminate(GradedIdeal(R, gens), list(ring.names))
    S = PolynomialRing(list(names), ring.p)
    return GradedIdeal(S, [g.to_ring(S) for g in E.generators])


def _restrict_to_hyperplane(I, h):
    """Substitute h = 0, eliminating the last variable occurring in h."""
    ring = I.ring
    vec = _linear_coeffs(h)
    k = max(j for j, c in enumerate(vec) if c)
    keep = [n for j, n in enumerate(ring.names) if j != k]
    S = PolynomialRing(keep, ring.p)
    inv = pow(vec[k], -1, ring.p)
    images = []
    for j in range(ring.nvars):
        if j == k:
            img = S.zero()
            for jj, c in enumerate(vec):
                if c and jj != k:
                    img = img + S.gen(ring.names[jj]).scale(-c * inv)
            images.append(img)
        else:
            images.append(S.gen(ring.names[j]))
    return S, [substitute(g, images, S) for g in I.generators]


def hyperplane_section(I, h):
    """Saturated ideal of V(I) ∩ V(h) in the coordinates of the hyperplane."""
    if I.contains(h):
        raise GeometryError("hyperplane contains the variety")
    S, gens = _restrict_to_hyperplane(I, h)
    J = GradedIdeal(S, [g for g in gens if g.terms])
    return saturate_generic(J)


def general_hyperplane_section(I, seed=0, info=None):
    """Section by a seeded general hyperplane; checks degree and dimension drop."""
    data = hilbert_series(I)
    for attempt in range(MAX_RETRIES):
        rng = random.Random(seed + attempt)
        h = random_linear_form(I.ring, rng)
        if not h.terms or I.contains(h):
            continue
        C = hyperplane_section(I, h)
        cd = hilbert_series(C)
        if cd.dimension == data.dimension - 1 and cd.degree == data.degree:
            if info is not None:
                info.update(seed=seed + attempt, hyperplane=str(h))
            return C
    raise GeometryError("no general hyperplane found")


# -- secant lines -----------------------------------------------------------------------

@dataclass
class SecantRecord:
    line: LinearSubspace
    length: int
    contained: bool
    classification: str
    parameter: tuple = None

    def to_dict(self):
        return {"line": [str(f) for f in self.line.forms], "length": self.length,
                "contained": self.contained, "class": self.classification,
                "parameter": list(self.parameter) if self.parameter else None}


def secant_length(I, line, d, r):
    """Classify ``line`` against V(I): contained, or length of the intersection."""
    if line.dimension != 1:
        raise GeometryError("expected a line")
    if contains_subspace(I, line):
        return SecantRecord(line, -1, True, "contained")
    try:
        length = scheme_length(I + line.ideal())
    except NotFiniteError:
        return SecantRecord(line, -1, True, "contained")
    target = d - r + 3
    if length == target:
        cls = "proper extremal"
    elif length < target:
        cls = "sub-extremal"
    else:
        cls = "super-extremal"
    return SecantRecord(line, length, False, cls)


@dataclass
class SecantCensusReport:
    records: list
    d: int
    r: int
    case: str = ""
    seeds: list = field(default_factory=list)

    @property
    def extremal(self):
        return [rec for rec in self.records if rec.classification == "proper extremal"]

    @property
    def count(self):
        return len(self.extremal)

    def span_dimension(self):
        """Projective dimension of the span of the proper extremal lines (-1 if none)."""
        pts = [pt for rec in self.extremal for pt in rec.line.points()]
        if not pts:
            return -1
        ring = self.records[0].line.ring
        rows = [{j: c for j, c in enumerate(pt) if c} for pt in pts]
        return len(row_reduce(rows, ring.nvars, ring.p)) - 1

    def family_dimension(self):
        """Lower bound for the dimension of the extremal line family, from line parameters."""
        params = [rec.parameter for rec in self.extremal if rec.parameter is not None]
        if not params:
            return -1
        p = self.records[0].line.ring.p
        rows = [{j: c for j, c in enumerate(v) if c % p} for v in params]
        return len(row_reduce(rows, len(params[0]), p)) - 1

    def to_dict(self):
        return {"case": self.case, "d": self.d, "r": self.r, "count": self.count,
                "span_dim": self.span_dimension(), "family_dim": self.family_dimension(),
                "seeds": self.seeds, "lines": [rec.to_dict() for rec in self.records]}


def scroll_line_section(exponents, coeffs, ring):
    """Line section of S(a_1..a_m) given by constants on the blocks with a_i = 1.

    Blocks with a_i >= 2 carry no degree-1 sections, so their coordinates vanish.
    """
    pts = ([], [])
    for a, c in zip(exponents, coeffs):
        block = [0] * (a + 1)
        if a == 1:
            pts[0].extend([c, 0])
            pts[1].extend([0, c])
        elif c:
            raise GeometryError("only blocks with a_i = 1 carry line sections")
        else:
            pts[0].extend(block)
            pts[1].extend(block)
    return LinearSubspace.from_points(ring, list(pts))


def construction_71(a, b, d, case, seed=0, p=DEFAULT_PRIME, info=None):
    """Surface X in |H + (d-r+2)F| on Z = S(1, a, b) in the regime ``case`` (B, C, D or E).

    Case B forces the line section S(1) into X by dropping the section's
    first form; the other cases use a general section.
    """
    case = case.upper()
    if a > b or d <= a + b + 3:
        raise UnsupportedRecipe("need a <= b and d > r = a + b + 3")
    if case in "BC" and a < 2:
        raise UnsupportedRecipe(f"case {case} needs a >= 2")
    if case == "D" and not (a == 1 and b >= 2):
        raise UnsupportedRecipe("case D needs a = 1, b >= 2")
    if case == "E" and not (a == b == 1):
        raise UnsupportedRecipe("case E needs a = b = 1")
    if case not in "BCDE" or len(case) != 1:
        raise UnsupportedRecipe(f"unknown case {case}")
    r = a + b + 3
    k = d - r + 2
    exps = (1, a, b)
    P = _binary_forms_ring(p)
    rng = random.Random(seed)
    g = [random_binary_form(P, e + k, rng) for e in exps]
    if case == "B":
        g[0] = P.zero()
    local = {}
    I = divisor_on_scroll_ideal(exps, k, section=g, p=p, info=local)
    if info is not None:
        info.update(local)
        info.update(scroll=exps, k=k, r=r, d=d, seed=seed)
    return I


def extremal_secant_census(I, a, b, d, case="", samples=50, controls=3, seed=0):
    """Classify the line sections of Z = S(1, a, b) (plus random control lines) against X."""
    r = a + b + 3
    ring = I.ring
    if ring.nvars != r + 1:
        raise UnsupportedRecipe("ideal does not live in the scroll's ambient space")
    exps = (1, a, b)
    rng = random.Random(seed)
    records = []
    ones = [i for i, e in enumerate(exps) if e == 1]
    if len(ones) == 1:
        params = [(1,) + (0,) * (len(exps) - 1)]
    else:
        params = []
        for _ in range(samples):
            v = [0] * len(exps)
            for i in ones:
                v[i] = rng.randrange(ring.p)
            if any(v):
                params.append(tuple(v))
    for v in params:
        L = scroll_line_section(exps, v, ring)
        rec = secant_length(I, L, d, r)
        rec.parameter = tuple(v[i] for i in ones)
        records.append(rec)
    for _ in range(controls):
        rec = secant_length(I, random_line(ring, rng), d, r)
        records.append(rec)
    return SecantCensusReport(records, d, r, case, [seed])


# -- extremal plane ---------------------------------------------------------------------

def extremal_plane(I, d, r):
    """Candidate plane F(X): linear forms of (J : f) where J = (I_{<= d-r+2}) and f in I_{d-r+3}."""
    ring = I.ring
    low = [g for g in I.generators if g.homogeneous_degree() <= d - r + 2]
    high = [g for g in I.generators if g.homogeneous_degree() == d - r + 3]
    J = GradedIdeal(ring, low)
    f = next((g for g in high if not J.contains(g)), None)
    if f is None:
        raise GeometryError("no generator of degree d-r+3 outside (I_{<=d-r+2})")
    Q = colon(J, f)
    lin = linear_forms_in(Q)
    if len(lin) < ring.nvars - 3:
        lin = linear_forms_in(saturate(Q))
    if len(lin) != ring.nvars - 3:
        raise GeometryError(f"colon ideal has {len(lin)} linear forms; no plane found")
    return LinearSubspace(ring, lin)


def plane_curve_degree(I, F):
    """Degree of the curve X ∩ F (F a plane)."""
    data = hilbert_series(I + F.ideal())
    if data.dimension != 2:
        raise GeometryError("X ∩ F is not a curve")
    return data.degree


def union_with(I, F):
    """Ideal of V(I) ∪ F."""
    return intersect(I, F.ideal())


def random_line_in(F, rng):
    """Seeded random line inside the subspace F."""
    pts = F.points()
    p = F.ring.p
    combos = []
    for _ in range(2):
        c = [rng.randrange(p) for _ in pts]
        combos.append([sum(ci * pt[j] for ci, pt in zip(c, pts)) % p for j in range(F.ring.nvars)])
    return LinearSubspace.from_points(F.ring, combos)
