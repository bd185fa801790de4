"""The two 14-dimensional symmetry algebras: structure constants, Killing form,
root data, G2 classification and the contact / structural symmetry checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction as F

from .algebra.linalg import RHS, SparseReducer, rank
from .algebra.poly import NotDivisible, Polynomial, exact_divide, var_index
from .algebra.ratfunc import rf_var
from .algebra.scalar import ONE as S_ONE
from .algebra.scalar import SQRT3
from .algebra.scalar import ZERO as S_ZERO
from .algebra.scalar import AlgebraicScalar, as_scalar
from .charts import J5
from .diffgeo import VectorField, dsym, lie_bracket, lie_derivative
from .errors import (LinearlyDependentBasis, NotClosed, NotContactSymmetry, NotEigenvector,
                     NotG2, NotInIdeal)

NAMES = ("S1", "L2", "S3", "L4", "S5", "L6", "S7", "L8", "S9", "L10", "S11", "L12", "h1", "h2")
ROOT_NAMES = NAMES[:12]
THEOREMS = ("thm-noth1", "thm-noth2", "thm-noth2-corrected")


def _vf(x=0, y=0, z=0, p=0, q=0):
    return VectorField(J5, [x, y, z, p, q])


def _euler():
    x, y, z, p, q = (rf_var(n) for n in J5.coords)
    half_w = SQRT3 / 2
    return _vf(half_w * x, half_w * y, half_w * 2 * z, half_w * p, half_w * q)


def _basis_noth1():
    x, y, z, p, q = (rf_var(n) for n in J5.coords)
    return {
        "S1": _vf(-(-3 * q * x - 6 * y**2 + F(9, 4) * p * q),
                  -(3 * z - 3 * p * x - 4 * q * y + F(9, 8) * p**2),
                  -(-8 * x * y**2 - 3 * p * q * x - 2 * q**2 * y + F(9, 4) * p**2 * q),
                  8 * y**2,
                  -(12 * p * y - q**2 - 16 * x * y)),
        "L2": _vf(-(-F(9, 2) * p * x + F(27, 16) * p**2 + F(3, 2) * z + 2 * x**2),
                  -F(1, 4) * q**2,
                  -(-F(9, 4) * p**2 * x + F(9, 8) * p**3 + F(1, 6) * q**3 + 2 * x * z),
                  -(2 * z - 2 * p * x + F(3, 4) * p**2),
                  F(3, 2) * p * q - 2 * q * x),
        "S3": _vf(-F(3, 2) * y, -F(1, 2) * q, -(2 * x * y + F(1, 4) * q**2), -2 * y,
                  F(3, 2) * p - 2 * x),
        "L4": _vf(x=F(3, 4), z=x, p=1),
        "S5": _vf(y=1),
        "L6": _vf(z=1),
        "S7": _vf(z=y, q=1),
        "L8": _vf(x=1),
        "S9": _vf(F(3, 4) * q, F(3, 4) * p, F(3, 4) * p * q + 2 * y**2, 0, 4 * y),
        "L10": _vf(F(3, 4) * q * y + F(27, 32) * p**2 - F(3, 4) * z,
                   F(3, 4) * p * y,
                   F(3, 4) * p * q * y + F(9, 16) * p**3 + F(2, 3) * y**3,
                   F(3, 4) * p**2,
                   2 * y**2),
        "S11": _vf(F(3, 8) * q**2 + F(9, 4) * p * y,
                   F(3, 4) * p * q + y**2,
                   F(3, 4) * p * q**2 + F(9, 8) * p**2 * y + 3 * y * z,
                   3 * p * y,
                   -(-3 * z + F(9, 8) * p**2 - q * y)),
        "L12": _vf(3 * z * x + F(1, 8) * q**3 - 3 * q * x * y - 2 * y**3 - F(27, 8) * p**2 * x
                   + F(27, 16) * p**3 + F(9, 4) * p * q * y,
                   3 * y * z - 3 * p * x * y + F(3, 8) * p * q**2 - 2 * q * y**2 + F(9, 8) * p**2 * y,
                   -F(9, 4) * p**3 * x - F(8, 3) * x * y**3 + 3 * z**2 + F(3, 8) * q**3 * p
                   - q**2 * y**2 + F(9, 4) * q * y * p**2 + F(81, 64) * p**4 - 3 * x * p * q * y,
                   3 * p * z - 3 * p**2 * x - F(8, 3) * y**3 + F(9, 8) * p**3,
                   -(-3 * q * z + F(9, 8) * p**2 * q - 6 * p * y**2 + q**2 * y + 8 * x * y**2)),
        "h1": _vf(-(F(9, 4) * p - F(3, 2) * x), -F(1, 2) * y, -F(9, 8) * p**2, -F(3, 2) * p,
                  F(1, 2) * q),
        "h2": _euler(),
    }


def _l12_noth2(corrected):
    x, y, z, p, q = (rf_var(n) for n in J5.coords)
    if corrected:
        zc = -(F(81, 64) * p**4 + F(9, 4) * p**3 * x + F(9, 4) * p**2 * q * y + F(3, 8) * p * q**3
               + F(1, 3) * q**3 * x - q**2 * y**2 + 3 * z**2)
    else:
        zc = -(F(9, 4) * p**3 * x - F(1, 3) * x * q**3 + 3 * z**2 + F(3, 8) * q**3 * p
               - q**2 * y**2 + F(9, 4) * q * y * p**2 + F(81, 64) * p**4 - 3 * x * p * q * y)
    return _vf(-(3 * z * x + F(1, 8) * q**3 + F(9, 4) * p * q * y - 2 * y**3 + F(27, 8) * p**2 * x
                 + F(27, 16) * p**3),
               -(3 * y * z + F(1, 2) * q**2 * x + F(3, 8) * p * q**2 - 2 * q * y**2
                 + F(9, 8) * p**2 * y),
               zc,
               -3 * p * z + 3 * p**2 * x + 3 * p * q * y + F(1, 6) * q**3 + F(9, 8) * p**3,
               -3 * q * z + 3 * p * q * x + F(9, 8) * p**2 * q - 6 * p * y**2 + q**2 * y)


def _basis_noth2(corrected=False):
    x, y, z, p, q = (rf_var(n) for n in J5.coords)
    return {
        "S1": _vf(-(F(3, 16) * q**2 + F(3, 2) * x * y + F(9, 8) * p * y),
                  -(F(3, 8) * p * q + F(1, 2) * y**2 + F(1, 2) * q * x),
                  -(F(9, 16) * p**2 * y + F(1, 4) * q**2 * x + F(3, 8) * q**2 * p + F(3, 2) * y * z),
                  F(1, 4) * q**2,
                  -F(3, 2) * z + F(3, 2) * p * x - F(1, 2) * q * y + F(9, 16) * p**2),
        "L2": _vf(-(F(9, 4) * p * x + F(27, 32) * p**2 - F(3, 4) * z + x**2 + F(3, 4) * q * y),
                  -(F(3, 4) * p * y + x * y),
                  -(F(9, 8) * p**2 * x + F(9, 16) * p**3 + x * z + F(3, 4) * p * q * y
                    + F(2, 3) * y**3),
                  -(z - p * x - q * y - F(3, 8) * p**2),
                  -2 * y**2),
        "S3": _vf(-F(3, 8) * q, -(F(3, 8) * p + F(1, 2) * x), -(F(3, 8) * p * q + y**2),
                  F(1, 2) * q, -2 * y),
        "L4": _vf(x=-F(3, 4), z=x, p=1),
        "S5": _vf(z=y, q=1),
        "L6": _vf(z=1),
        "S7": _vf(y=1),
        "L8": _vf(x=1),
        "S9": _vf(3 * y, q, F(1, 2) * q**2, 0, -3 * p),
        "L10": _vf(3 * z + F(27, 8) * p**2, F(1, 2) * q**2, F(9, 4) * p**3 + F(1, 3) * q**3,
                   -3 * p**2, -3 * p * q),
        "S11": _vf(-6 * y**2 + F(9, 4) * q * p, 3 * z + F(9, 8) * p**2 - 4 * q * y,
                   F(9, 4) * p**2 * q - 2 * y * q**2, -3 * p * q, 12 * p * y - q**2),
        "L12": _l12_noth2(corrected),
        "h1": _vf(F(9, 4) * p + F(3, 2) * x, F(1, 2) * y, F(9, 8) * p**2, -F(3, 2) * p,
                  -F(1, 2) * q),
        "h2": _euler(),
    }


@dataclass
class VectorFieldBasis:
    theorem: str
    fields: dict

    def __getitem__(self, name):
        return self.fields[name]

    def ordered(self):
        return [self.fields[n] for n in NAMES]


def basis(theorem):
    """Basis fields of a theorem; ``thm-noth2-corrected`` fixes the z-component of L12."""
    if theorem in ("1", 1, "thm-noth1"):
        return VectorFieldBasis("thm-noth1", _basis_noth1())
    if theorem in ("2", 2, "thm-noth2"):
        return VectorFieldBasis("thm-noth2", _basis_noth2())
    if theorem == "thm-noth2-corrected":
        return VectorFieldBasis(theorem, _basis_noth2(corrected=True))
    raise ValueError(f"unknown theorem {theorem!r}")


# -- structure constants ------------------------------------------------------------

def _field_key_vector(X, keymap):
    vec = {}
    for i, comp in enumerate(X.components):
        if comp.is_zero():
            continue
        if not comp.den.is_constant():
            raise ValueError("structure constants need polynomial fields")
        inv = comp.den.constant_value().inverse()
        for m, c in comp.num.terms.items():
            key = (i, m)
            col = keymap.get(key)
            if col is None:
                col = len(keymap)
                keymap[key] = col
            vec[col] = c * inv
    return vec


def _key_vector_fixed(X, keymap):
    """Key vector of X, with unknown keys collected under negative columns."""
    vec = {}
    extra = 0
    for i, comp in enumerate(X.components):
        if comp.is_zero():
            continue
        inv = comp.den.constant_value().inverse()
        for m, c in comp.num.terms.items():
            col = keymap.get((i, m))
            if col is None:
                extra += 1
                continue
            vec[col] = c * inv
    return vec, extra


class BasisSolver:
    """Expresses polynomial vector fields in a fixed basis by exact elimination."""

    TAG = 1 << 30

    def __init__(self, fields):
        self.keymap = {}
        self.n = len(fields)
        vecs = [_field_key_vector(X, self.keymap) for X in fields]
        self.red = SparseReducer()
        for k, v in enumerate(vecs):
            row = dict(v)
            row[self.TAG + k] = S_ONE
            self.red.add(row)
        key_pivots = [c for c in self.red.pivots if c < self.TAG]
        self.rank = len(key_pivots)
        if self.rank < self.n:
            raise LinearlyDependentBasis(f"basis spans only {self.rank} dimensions")

    def coordinates(self, X):
        vec, extra = _key_vector_fixed(X, self.keymap)
        if extra:
            raise NotClosed("vector field has monomials outside the span of the basis")
        rem = self.red.reduce(vec)
        if any(c < self.TAG for c in rem):
            raise NotClosed("vector field is not in the span of the basis")
        return [-rem.get(self.TAG + k, S_ZERO) for k in range(self.n)]


@dataclass
class StructureConstants:
    """c[i][j][k] with [B_i, B_j] = sum_k c[i][j][k] B_k, in the order of NAMES."""

    theorem: str
    names: tuple
    c: list
    failures: list = field(default_factory=list)

    def bracket_coords(self, i, j):
        return self.c[i][j]

    def __getitem__(self, idx):
        return self.c[idx]


def structure_constants(b, strict=True):
    """Structure constants of a basis.

    With ``strict`` a non-closing bracket raises NotClosed; otherwise the
    offending pairs are collected in ``failures`` and their rows left zero.
    """
    fields = b.ordered()
    solver = BasisSolver(fields)
    n = len(fields)
    c = [[[S_ZERO] * n for _ in range(n)] for _ in range(n)]
    failures = []
    for i in range(n):
        for j in range(i + 1, n):
            br = lie_bracket(fields[i], fields[j])
            try:
                coords = solver.coordinates(br)
            except NotClosed:
                if strict:
                    raise NotClosed(f"[{NAMES[i]}, {NAMES[j]}] is not in the span") from None
                failures.append((NAMES[i], NAMES[j]))
                continue
            c[i][j] = coords
            c[j][i] = [-v for v in coords]
    return StructureConstants(b.theorem, NAMES, c, failures)


def basis_rank(b):
    keymap = {}
    vecs = [_field_key_vector(X, keymap) for X in b.ordered()]
    red = SparseReducer()
    for v in vecs:
        red.add(v)
    return red.rank


def jacobi_check(sc):
    """Triples (i, j, k), i < j < k, violating the Jacobi identity."""
    c = sc.c
    n = len(c)
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for m in range(n):
                    tot = S_ZERO
                    for l in range(n):
                        a = c[i][j][l]
                        if not a.is_zero():
                            tot = tot + a * c[l][k][m]
                        a = c[j][k][l]
                        if not a.is_zero():
                            tot = tot + a * c[l][i][m]
                        a = c[k][i][l]
                        if not a.is_zero():
                            tot = tot + a * c[l][j][m]
                    if not tot.is_zero():
                        bad.append((sc.names[i], sc.names[j], sc.names[k]))
                        break
    return bad


def killing_form(sc):
    """K[i][j] = trace(ad B_i o ad B_j)."""
    c = sc.c
    n = len(c)
    K = [[S_ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            tot = S_ZERO
            for l in range(n):
                for m in range(n):
                    a = c[i][l][m]
                    if a.is_zero():
                        continue
                    b = c[j][m][l]
                    if not b.is_zero():
                        tot = tot + a * b
            K[i][j] = K[j][i] = tot
    return K


def killing_rank(K):
    return rank(K)


def killing_invariance_residuals(sc, K):
    """Triples where K([B_i, B_j], B_k) != K(B_i, [B_j, B_k])."""
    c = sc.c
    n = len(c)
    bad = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = S_ZERO
                rhs = S_ZERO
                for l in range(n):
                    if not c[i][j][l].is_zero():
                        lhs = lhs + c[i][j][l] * K[l][k]
                    if not c[j][k][l].is_zero():
                        rhs = rhs + c[j][k][l] * K[i][l]
                if lhs != rhs:
                    bad.append((i, j, k))
    return bad


# -- roots --------------------------------------------------------------------------

@dataclass
class RootDatum:
    label: str
    pair: tuple
    length: str
    hour: int


def _hour(label):
    return int(label[1:])


def eigenvalue_pairs(sc):
    """(alpha(h1), alpha(h2)) for each root field; raises NotEigenvector."""
    c = sc.c
    h = [NAMES.index("h1"), NAMES.index("h2")]
    out = {}
    for idx, name in enumerate(ROOT_NAMES):
        pair = []
        for ha in h:
            row = c[ha][idx]
            for m, v in enumerate(row):
                if m != idx and not v.is_zero():
                    raise NotEigenvector(f"{name} is not an eigenvector of ad {NAMES[ha]}")
            pair.append(row[idx])
        out[name] = tuple(pair)
    return out


def cartan_gram(K):
    """Inverse of the Killing form restricted to the Cartan span (dual metric)."""
    a, b = NAMES.index("h1"), NAMES.index("h2")
    m = [[K[a][a], K[a][b]], [K[b][a], K[b][b]]]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det.is_zero():
        raise NotG2("Killing form is degenerate on the Cartan span")
    inv = det.inverse()
    return [[m[1][1] * inv, -m[0][1] * inv], [-m[1][0] * inv, m[0][0] * inv]]


def inner(g, a, b):
    tot = S_ZERO
    for i in range(len(a)):
        for j in range(len(b)):
            if not g[i][j].is_zero():
                tot = tot + a[i] * g[i][j] * b[j]
    return tot


def roots(b, sc, K=None):
    """Root data for the 12 root fields, with length classes from the dual Killing metric."""
    if K is None:
        K = killing_form(sc)
    pairs = eigenvalue_pairs(sc)
    g = cartan_gram(K)
    sq = {n: inner(g, v, v) for n, v in pairs.items()}
    shortest = min(sq.values(), key=lambda s: s.to_decimal(30))
    out = []
    for n in ROOT_NAMES:
        length = "short" if sq[n] == shortest else "long"
        out.append(RootDatum(n, pairs[n], length, _hour(n)))
    return out


def clock_checks(root_data, g):
    """Rotation-invariant checks on the clock labels.

    Returns a dict of booleans: parity (odd hours short, even long),
    antipodality (hour i and i+6 negate) and adjacency (consecutive hours
    at 30 degrees, counterclockwise-consistent).
    """
    by_hour = {r.hour: r for r in root_data}
    parity = all((r.length == "short") == (r.hour % 2 == 1) for r in root_data)
    antipodal = all(
        tuple(-v for v in by_hour[h].pair) == tuple(by_hour[(h + 5) % 12 + 1].pair)
        for h in range(1, 7))
    adjacency = True
    for h in range(1, 13):
        a = by_hour[h].pair
        b = by_hour[h % 12 + 1].pair
        ab = inner(g, a, b)
        if ab.sign() <= 0 or ab * ab * 4 != inner(g, a, a) * inner(g, b, b) * 3:
            adjacency = False
    return {"parity": parity, "antipodal": antipodal, "adjacency": adjacency}


def picture_positions():
    """Label positions of the printed clock diagram, exactly."""
    half, w = F(1, 2), SQRT3
    return {
        "S3": (1, 0), "S9": (-1, 0), "L6": (0, -w), "L12": (0, w),
        "S7": (-half, -w / 2), "S1": (half, w / 2), "L8": (-F(3, 2), -w / 2),
        "L2": (F(3, 2), w / 2), "L4": (F(3, 2), -w / 2), "L10": (-F(3, 2), w / 2),
        "S5": (half, -w / 2), "S11": (-half, w / 2),
    }


def matches_picture(root_data):
    pos = picture_positions()
    return all(tuple(as_scalar(v) for v in pos[r.label]) == tuple(r.pair) for r in root_data)


@dataclass
class G2Report:
    cartan_matrix: list
    simple_roots: list
    short: int
    long: int
    ratio: AlgebraicScalar


def classify_g2(root_vectors, gram):
    """Decide whether a root system is G2 by its Cartan matrix.

    ``root_vectors`` maps labels to eigenvalue tuples; ``gram`` is the dual
    Killing metric on the Cartan span.
    """
    vecs = {k: tuple(as_scalar(x) for x in v) for k, v in root_vectors.items()}
    dim = len(next(iter(vecs.values()))) if vecs else 0
    if dim != 2 or len(vecs) != 12:
        raise NotG2(f"expected 12 roots of rank 2, got {len(vecs)} of rank {dim}")
    functional = None
    for s in (F(1, 7), F(2, 11), F(3, 13), F(5, 17)):
        vals = {k: v[0] + v[1] * s for k, v in vecs.items()}
        if all(not val.is_zero() for val in vals.values()):
            functional = vals
            break
    if functional is None:
        raise NotG2("no regular functional found")
    pos = [k for k, v in functional.items() if v.sign() > 0]
    pos_set = {vecs[k] for k in pos}
    simple = [k for k in pos
              if not any(tuple(a - b for a, b in zip(vecs[k], vecs[j])) in pos_set
                         for j in pos if j != k)]
    if len(simple) != 2:
        raise NotG2(f"found {len(simple)} simple roots")
    a, b = vecs[simple[0]], vecs[simple[1]]

    def cartan(u, v):
        return 2 * inner(gram, u, v) / inner(gram, v, v)

    A = [[cartan(a, a), cartan(a, b)], [cartan(b, a), cartan(b, b)]]
    target = [[2, -1], [-3, 2]]
    if A != target:
        A = [[A[1][1], A[1][0]], [A[0][1], A[0][0]]]
        simple = simple[::-1]
        a, b = b, a
    if A != target:
        raise NotG2(f"Cartan matrix {[[str(x) for x in r] for r in A]} is not of type G2")
    # every root must be an integer combination with coefficients of one sign
    det = a[0] * b[1] - a[1] * b[0]
    for k, v in vecs.items():
        m = (v[0] * b[1] - v[1] * b[0]) / det
        n = (a[0] * v[1] - a[1] * v[0]) / det
        if not (m.is_rational and n.is_rational):
            raise NotG2(f"root {k} is not a rational combination of simple roots")
        mf, nf = m.to_fraction(), n.to_fraction()
        if mf.denominator != 1 or nf.denominator != 1 or mf * nf < 0:
            raise NotG2(f"root {k} is not an integral combination of one sign")
    sq = [inner(gram, v, v) for v in vecs.values()]
    lo = min(sq, key=lambda s: s.to_decimal(30))
    hi = max(sq, key=lambda s: s.to_decimal(30))
    short = sum(1 for s in sq if s == lo)
    long_ = sum(1 for s in sq if s == hi)
    ratio = hi / lo
    if short != 6 or long_ != 6 or ratio != 3:
        raise NotG2(f"{short} short and {long_} long roots with ratio {ratio}")
    return G2Report([[int(x.to_fraction()) for x in r] for r in A], simple, short, long_, ratio)


# -- symmetry checks ----------------------------------------------------------------

def contact_symmetry_check(X, varpi):
    """lambda with L_X varpi = lambda * varpi; raises NotContactSymmetry."""
    L = lie_derivative(X, varpi)
    lam = L.coefficient("z") / varpi.coefficient("z")
    if not (L - varpi.scale(lam)).is_zero():
        raise NotContactSymmetry("L_X varpi is not a multiple of varpi")
    return lam


def _varpi_poly():
    return (Polynomial.var(dsym("z")) - Polynomial.var("p") * Polynomial.var(dsym("x"))
            - Polynomial.var("q") * Polynomial.var(dsym("y")))


def _mod_varpi(poly):
    """Reduce modulo varpi by dz -> p dx + q dy."""
    b = {dsym("z"): Polynomial.var("p") * Polynomial.var(dsym("x"))
         + Polynomial.var("q") * Polynomial.var(dsym("y"))}
    return poly.subs_poly(b)


def _as_poly(T):
    f = T.to_polynomial()
    if not f.den.is_constant():
        raise ValueError("tensor with non-polynomial coefficients")
    return f.num.scale(f.den.constant_value().inverse())


def _coord_degree(poly):
    coords = {var_index(n) for n in J5.coords}
    best = 0
    for m in poly.terms:
        best = max(best, sum(e for v, e in m if v in coords))
    return best


@dataclass
class UpsilonCertificate:
    f: Polynomial
    sigma: Polynomial
    degree_bound: int


def structural_symmetry_check(X, ups, varpi=None):
    """Certificate (f, sigma) with L_X ups = f ups + varpi * sigma.

    Since varpi is monic of degree one in dz, the remainder of L_X ups modulo
    varpi is unique, and it must equal f ups; f and sigma then follow by
    exact division.  Both are checked against the degree bound
    ``deg(coefficients of L_X ups)``.  Raises NotInIdeal.
    """
    L = _as_poly(lie_derivative(X, ups))
    U = _as_poly(ups)
    bound = _coord_degree(L)
    red = _mod_varpi(L)
    try:
        f = exact_divide(red, U)
    except NotDivisible:
        raise NotInIdeal("L_X Upsilon is not in the ideal (varpi, Upsilon)") from None
    wp = _varpi_poly()
    sigma = exact_divide(L - f * U, wp)
    if _coord_degree(f) > bound or _coord_degree(sigma) > bound:
        raise NotInIdeal("certificate exceeds the degree bound")
    return UpsilonCertificate(f, sigma, bound)


@dataclass
class CubicCertificate:
    alphas: list
    beta: Polynomial
    degree_bound: int


def cubic_symmetry_check(X, mu, module):
    """Certificate (alpha_j, beta) with L_X mu = varpi * beta + sum_j alpha_j g_j.

    The g_j have constant coefficients, so the linear system for the
    coefficients of the 1-forms alpha_j splits by coordinate monomial.
    Raises NotInIdeal.
    """
    L = _as_poly(lie_derivative(X, mu))
    bound = _coord_degree(L)
    red = _mod_varpi(L)
    gs = [_as_poly(g) for g in module]
    dnames = [dsym(n) for n in ("x", "y", "p", "q")]
    dvars = {var_index(n) for n in dnames}
    # split red by coordinate monomial
    blocks = {}
    for m, c in red.terms.items():
        coord = tuple((v, e) for v, e in m if v not in dvars)
        dpart = tuple((v, e) for v, e in m if v in dvars)
        blocks.setdefault(coord, {})[dpart] = c
    # products dm * g_j, as key vectors over cubic d-monomials
    prods = []
    for j, g in enumerate(gs):
        for k, dn in enumerate(dnames):
            prods.append(((j, k), (g * Polynomial.var(dn)).terms))
    alphas = [Polynomial._wrap({}) for _ in gs]
    for coord, target in blocks.items():
        red_sys = SparseReducer()
        rows = {}
        for col, (jk, terms) in enumerate(prods):
            for m, c in terms.items():
                rows.setdefault(m, {})[col] = c
        for m in set(rows) | set(target):
            row = dict(rows.get(m, {}))
            if m in target:
                row[RHS] = target[m]
            red_sys.add(row)
        if red_sys.inconsistent:
            raise NotInIdeal("L_X mu is not in the ideal (varpi, g1, g2, g3)")
        sol = red_sys.solution(range(len(prods)), S_ZERO, free_ok=True)
        for col, ((j, k), _) in enumerate(prods):
            v = sol[col]
            if not v.is_zero():
                mono = Polynomial._wrap({coord: v}) * Polynomial.var(dnames[k])
                alphas[j] = alphas[j] + mono
    rest = L
    for a, g in zip(alphas, gs):
        rest = rest - a * g
    beta = exact_divide(rest, _varpi_poly())
    return CubicCertificate(alphas, beta, bound)


# -- clock rendering ------------------------------------------------------------------

def render_clock(root_data, width=41, height=17):
    """ASCII picture of the root diagram with labels at the root tips."""
    grid = [[" "] * width for _ in range(height)]
    cx, cy = width // 2, height // 2
    sx, sy = (width // 2 - 4) / 1.5, (height // 2 - 1) / math.sqrt(3)
    grid[cy][cx] = "+"
    for r in root_data:
        x = float(r.pair[0].to_decimal(20))
        y = float(r.pair[1].to_decimal(20))
        steps = 12
        for s in range(1, steps):
            px = cx + round(x * sx * s / steps)
            py = cy - round(y * sy * s / steps)
            if grid[py][px] == " ":
                grid[py][px] = "."
        px = cx + round(x * sx)
        py = cy - round(y * sy)
        label = r.label
        start = max(0, min(width - len(label), px - len(label) // 2))
        for k, ch in enumerate(label):
            grid[py][start + k] = ch
    return "\n".join("".join(row).rstrip() for row in grid)
