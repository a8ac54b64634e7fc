"""Polynomial and rational-function arithmetic.

Four polynomial carriers:

* ``UniPoly``        dense univariate, ascending coefficients;
* ``SparsePoly``     multivariate sparse, exponent-vector keyed;
* ``FactoredUniPoly`` scale * prod (x - root_i), evaluated as the product
  (the overflow-safe form for ill-conditioned products of linear factors);
* ``FactoredSum``    sum of scaled products of factored polynomials,
  still evaluated without expansion.

Rational functions are unreduced numerator/denominator pairs: no GCD
reduction is ever applied, because the degree and term-count bookkeeping
audited elsewhere assumes plain unreduced arithmetic.  Like terms combine
by exact floating addition; a coefficient is dropped only when it is
exactly zero.

Products whose operand-pair cost is large are routed through dense
convolution (exact direct convolution where affordable, FFT beyond that)
for dimensions <= 2; the dict path is used otherwise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy.signal import fftconvolve

from .errors import BlowupError, PreconditionError
from .numcore import Interval, extended_precision

DEFAULT_TERM_CAP = 10 ** 6

# operand-pair product cost above which poly_mul switches to dense arrays
_DENSE_CUTOFF = 250_000
# dense direct convolution cost bound; beyond it, FFT convolution
_DIRECT_CONV_COST = 2 * 10 ** 8


# ---------------------------------------------------------------------------
# carriers


class UniPoly:
    """Dense univariate polynomial, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [float(c) for c in coeffs]
        while cs and cs[-1] == 0.0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def dim(self) -> int:
        return 1

    def __call__(self, x):
        # Horner; vectorizes over numpy arrays
        acc = np.zeros_like(np.asarray(x, dtype=float))
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if acc.ndim else float(acc)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)})"

    def to_sparse(self) -> "SparsePoly":
        return SparsePoly(1, {(e,): c for e, c in enumerate(self.coeffs) if c != 0.0})

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, doc: dict) -> "UniPoly":
        return cls(doc["coeffs"])


class SparsePoly:
    """Multivariate sparse polynomial: {exponent tuple: coefficient}.

    No zero coefficients are stored and exponent vectors are unique.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        self.dim = dim
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        clean = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != dim:
                raise ValueError(f"exponent vector {exps} has wrong length for dim {dim}")
            if any(e < 0 for e in exps):
                raise ValueError("exponents must be nonnegative")
            if exps in clean:
                raise ValueError(f"duplicate exponent vector {exps}")
            if c != 0:
                clean[exps] = c
        self.terms = clean

    @classmethod
    def constant(cls, dim: int, c) -> "SparsePoly":
        return cls(dim, {(0,) * dim: c} if c != 0 else {})

    @classmethod
    def variable(cls, dim: int, i: int) -> "SparsePoly":
        exps = tuple(1 if j == i else 0 for j in range(dim))
        return cls(dim, {exps: 1.0})

    @property
    def term_count(self) -> int:
        return len(self.terms)

    @property
    def degree(self):
        if not self.terms:
            return -math.inf
        return max(sum(e) for e in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, x):
        return poly_eval(self, x)

    def eval_many(self, pts: np.ndarray) -> np.ndarray:
        """Evaluate at an (N, dim) array of points."""
        pts = np.asarray(pts, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, self.dim)
        acc = np.zeros(pts.shape[0])
        for exps, c in sorted(self.terms.items()):
            mono = np.ones(pts.shape[0])
            for j, e in enumerate(exps):
                if e:
                    mono = mono * pts[:, j] ** e
            acc += float(c) * mono
        return acc

    def to_unipoly(self) -> UniPoly:
        if self.dim != 1:
            raise ValueError("only univariate polynomials convert to UniPoly")
        if not self.terms:
            return UniPoly([])
        n = max(e[0] for e in self.terms) + 1
        cs = [0.0] * n
        for (e,), c in self.terms.items():
            cs[e] = float(c)
        return UniPoly(cs)

    def __eq__(self, other):
        return (isinstance(other, SparsePoly) and self.dim == other.dim
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"SparsePoly(dim={self.dim}, terms={len(self.terms)}, degree={self.degree})"

    def to_json(self) -> list:
        return [[float(c), list(e)] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, dim: int, entries: list) -> "SparsePoly":
        return cls(dim, {tuple(e): c for c, e in entries})


class FactoredUniPoly:
    """scale * prod_i (x - root_i), evaluated as the factored product."""

    __slots__ = ("scale", "roots")

    def __init__(self, scale: float, roots):
        self.scale = float(scale)
        self.roots = tuple(float(r) for r in roots)

    @property
    def degree(self) -> int:
        return len(self.roots) if self.scale != 0.0 else -math.inf

    @property
    def dim(self) -> int:
        return 1

    def __call__(self, x):
        acc = np.full_like(np.asarray(x, dtype=float), self.scale)
        for r in self.roots:
            acc = acc * (x - r)
        return acc if acc.ndim else float(acc)

    def expand(self, bits: int = 128) -> UniPoly:
        """Multiply the linear factors out in extended precision.

        Permitted only for degree <= 64: beyond that the expanded
        coefficients are too ill-conditioned to be meaningful.
        """
        if len(self.roots) > 64:
            raise PreconditionError(
                f"refusing to expand a factored polynomial of degree {len(self.roots)} > 64")
        with extended_precision(bits):
            cs = [mpmath.mpf(self.scale)]
            for r in self.roots:
                rm = mpmath.mpf(r)
                nxt = [mpmath.mpf(0)] * (len(cs) + 1)
                for i, c in enumerate(cs):
                    nxt[i] -= c * rm
                    nxt[i + 1] += c
                cs = nxt
            return UniPoly([float(c) for c in cs])

    def __repr__(self):
        return f"FactoredUniPoly(scale={self.scale}, degree={len(self.roots)})"


class FactoredSum:
    """Sum of scaled products of factored polynomials, kept unexpanded.

    ``terms`` is a tuple of (weight, (FactoredUniPoly, ...)).  The degree
    reported is the structural upper bound (no cancellation detection).
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = tuple((float(w), tuple(fs)) for w, fs in terms)

    @property
    def degree(self) -> int:
        degs = [sum(f.degree for f in fs) for w, fs in self.terms if w != 0.0]
        return max(degs) if degs else -math.inf

    @property
    def dim(self) -> int:
        return 1

    def __call__(self, x):
        xs = np.asarray(x, dtype=float)
        acc = np.zeros_like(xs)
        for w, fs in self.terms:
            t = np.full_like(xs, w)
            for f in fs:
                t = t * f(xs)
            acc = acc + t
        return acc if acc.ndim else float(acc)

    def expand(self, bits: int = 128) -> UniPoly:
        deg = self.degree
        if deg is not -math.inf and deg > 64:
            raise PreconditionError(
                f"refusing to expand a factored combination of degree {deg} > 64")
        with extended_precision(bits):
            total = {}
            for w, fs in self.terms:
                cs = [mpmath.mpf(w)]
                for f in fs:
                    part = [mpmath.mpf(f.scale)]
                    for r in f.roots:
                        rm = mpmath.mpf(r)
                        nxt = [mpmath.mpf(0)] * (len(part) + 1)
                        for i, c in enumerate(part):
                            nxt[i] -= c * rm
                            nxt[i + 1] += c
                        part = nxt
                    cs = _mpf_conv(cs, part)
                for i, c in enumerate(cs):
                    total[i] = total.get(i, mpmath.mpf(0)) + c
            n = max(total) + 1 if total else 0
            return UniPoly([float(total.get(i, 0)) for i in range(n)])

    def __repr__(self):
        return f"FactoredSum({len(self.terms)} terms, degree<={self.degree})"


def _mpf_conv(a, b):
    out = [mpmath.mpf(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@dataclass(frozen=True)
class RationalFn:
    """num/den with the denominator strictly positive on the domain.

    ``domain`` is one Interval per input dimension.  Positivity is a
    contract checked on certification grids, not symbolically; use
    ``certify_denominator``.
    """

    num: object
    den: object
    domain: tuple

    def __post_init__(self):
        dom = self.domain
        if isinstance(dom, Interval):
            dom = (dom,)
        object.__setattr__(self, "domain", tuple(dom))
        if getattr(self.num, "dim", 1) != getattr(self.den, "dim", 1):
            raise ValueError("numerator/denominator dimension mismatch")

    @property
    def dim(self) -> int:
        return getattr(self.num, "dim", 1)

    @property
    def degree(self):
        return max(self.num.degree, self.den.degree)

    @property
    def term_count(self) -> int:
        if not isinstance(self.num, SparsePoly) or not isinstance(self.den, SparsePoly):
            raise TypeError("term_count is defined for sparse-form rationals; expand first")
        return self.num.term_count + self.den.term_count

    def __call__(self, x):
        if self.dim == 1:
            xs = np.asarray(x, dtype=float)
            nv = _eval_poly_arr(self.num, xs)
            dv = _eval_poly_arr(self.den, xs)
            out = nv / dv
            return out if out.ndim else float(out)
        pts = np.atleast_2d(np.asarray(x, dtype=float))
        out = self.num.eval_many(pts) / self.den.eval_many(pts)
        return out if np.ndim(x) > 1 else float(out[0])

    def eval_many(self, pts: np.ndarray) -> np.ndarray:
        if self.dim == 1:
            pts = np.asarray(pts, dtype=float).reshape(-1)
            return _eval_poly_arr(self.num, pts) / _eval_poly_arr(self.den, pts)
        return self.num.eval_many(pts) / self.den.eval_many(pts)

    def certify_denominator(self, n: int = 10001) -> float:
        """Minimum of the denominator over a certification grid; raises if <= 0."""
        from .numcore import sample_box
        pts, _ = sample_box(list(self.domain), n)
        dv = (_eval_poly_arr(self.den, pts[:, 0]) if self.dim == 1
              else self.den.eval_many(pts))
        m = float(dv.min())
        if m <= 0:
            i = int(np.argmin(dv))
            raise PreconditionError(
                f"denominator is not strictly positive on the domain: min {m} at {tuple(pts[i])}")
        return m

    def expand(self, bits: int = 128) -> "RationalFn":
        """Replace factored-form parts by expanded sparse coefficients."""
        def conv(p):
            if isinstance(p, SparsePoly):
                return p
            if isinstance(p, UniPoly):
                return p.to_sparse()
            return p.expand(bits).to_sparse()
        return RationalFn(conv(self.num), conv(self.den), self.domain)

    def to_json(self) -> dict:
        num = self.num if isinstance(self.num, SparsePoly) else self.num.to_sparse()
        den = self.den if isinstance(self.den, SparsePoly) else self.den.to_sparse()
        return {"dim": self.dim, "num": num.to_json(), "den": den.to_json(),
                "domain": [[iv.lo, iv.hi] for iv in self.domain]}

    @classmethod
    def from_json(cls, doc: dict) -> "RationalFn":
        dim = int(doc["dim"])
        dom = doc.get("domain") or [[-1.0, 1.0]] * dim
        return cls(SparsePoly.from_json(dim, doc["num"]),
                   SparsePoly.from_json(dim, doc["den"]),
                   tuple(Interval(lo, hi) for lo, hi in dom))


def _eval_poly_arr(p, xs: np.ndarray) -> np.ndarray:
    """Evaluate any univariate carrier on an array."""
    if isinstance(p, (UniPoly, FactoredUniPoly, FactoredSum)):
        v = p(xs)
        return np.asarray(v, dtype=float)
    if isinstance(p, SparsePoly):
        return p.eval_many(xs.reshape(-1, 1))
    raise TypeError(f"not a polynomial carrier: {type(p)!r}")


# ---------------------------------------------------------------------------
# evaluation entry point


def poly_eval(p, x):
    """Evaluate a polynomial carrier at a point (or array of points)."""
    if isinstance(p, SparsePoly):
        pt = np.asarray(x, dtype=float)
        if pt.ndim == 0:
            if p.dim != 1:
                raise ValueError(f"point dimension 1 does not match polynomial dim {p.dim}")
            return float(p.eval_many(pt.reshape(1, 1))[0])
        if pt.ndim == 1:
            if p.dim == 1:
                return p.eval_many(pt.reshape(-1, 1))
            if len(pt) != p.dim:
                raise ValueError(f"point dimension {len(pt)} does not match polynomial dim {p.dim}")
            return float(p.eval_many(pt.reshape(1, -1))[0])
        if pt.shape[1] != p.dim:
            raise ValueError(f"points dimension {pt.shape[1]} does not match polynomial dim {p.dim}")
        return p.eval_many(pt)
    return p(x)


# ---------------------------------------------------------------------------
# dense helpers (dims 1 and 2)


def _to_dense(p: SparsePoly) -> np.ndarray:
    if p.dim == 1:
        n = (max(e[0] for e in p.terms) + 1) if p.terms else 1
        arr = np.zeros(n)
        for (e,), c in p.terms.items():
            arr[e] = c
        return arr
    n0 = (max(e[0] for e in p.terms) + 1) if p.terms else 1
    n1 = (max(e[1] for e in p.terms) + 1) if p.terms else 1
    arr = np.zeros((n0, n1))
    for (e0, e1), c in p.terms.items():
        arr[e0, e1] = c
    return arr


def _from_dense(arr: np.ndarray, dim: int, total_degree_cap=None) -> SparsePoly:
    terms = {}
    if dim == 1:
        nz = np.nonzero(arr)[0]
        for e in nz:
            terms[(int(e),)] = float(arr[e])
    else:
        nz0, nz1 = np.nonzero(arr)
        for e0, e1 in zip(nz0, nz1):
            if total_degree_cap is not None and e0 + e1 > total_degree_cap:
                continue
            terms[(int(e0), int(e1))] = float(arr[e0, e1])
    return SparsePoly(dim, terms)


def _dense_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    cost = a.size * b.size
    if a.ndim == 1:
        if cost <= _DIRECT_CONV_COST:
            return np.convolve(a, b)
        return fftconvolve(a, b)
    if cost <= 4 * 10 ** 6:
        # exact small case via outer accumulation
        out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1))
        nz0, nz1 = np.nonzero(a)
        for e0, e1 in zip(nz0, nz1):
            out[e0:e0 + b.shape[0], e1:e1 + b.shape[1]] += a[e0, e1] * b
        return out
    return fftconvolve(a, b)


# ---------------------------------------------------------------------------
# arithmetic


def poly_add(p: SparsePoly, q: SparsePoly, cap: int = DEFAULT_TERM_CAP) -> SparsePoly:
    if p.dim != q.dim:
        raise ValueError("dimension mismatch in poly_add")
    terms = dict(p.terms)
    for e, c in q.terms.items():
        s = terms.get(e, 0.0) + c
        if s == 0:
            terms.pop(e, None)
        else:
            terms[e] = s
    if len(terms) > cap:
        raise BlowupError(f"poly_add produced {len(terms)} terms > cap {cap}")
    return SparsePoly(p.dim, terms)


def poly_scale(p: SparsePoly, c) -> SparsePoly:
    if c == 0:
        return SparsePoly(p.dim, {})
    return SparsePoly(p.dim, {e: c * v for e, v in p.terms.items()})


def poly_mul(p: SparsePoly, q: SparsePoly, cap: int = DEFAULT_TERM_CAP) -> SparsePoly:
    if p.dim != q.dim:
        raise ValueError("dimension mismatch in poly_mul")
    if p.is_zero() or q.is_zero():
        return SparsePoly(p.dim, {})
    cost = p.term_count * q.term_count
    float_coeffs = all(isinstance(v, float) for v in p.terms.values()) and \
        all(isinstance(v, float) for v in q.terms.values())
    if cost > _DENSE_CUTOFF and p.dim <= 2 and float_coeffs:
        arr = _dense_mul(_to_dense(p), _to_dense(q))
        out = _from_dense(arr, p.dim, total_degree_cap=p.degree + q.degree)
        if out.term_count > cap:
            raise BlowupError(f"poly_mul produced {out.term_count} terms > cap {cap}")
        return out
    terms = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = terms.get(e, 0.0) + c1 * c2
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        if len(terms) > cap:
            raise BlowupError(f"poly_mul exceeded the {cap}-term cap")
    return SparsePoly(p.dim, terms)


def poly_pow(p: SparsePoly, k: int, cap: int = DEFAULT_TERM_CAP) -> SparsePoly:
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    out = SparsePoly.constant(p.dim, 1.0)
    for _ in range(k):
        out = poly_mul(out, p, cap)
    return out


def _common_domain(f: RationalFn, g: RationalFn) -> tuple:
    if f.dim != g.dim:
        raise ValueError("rational dimension mismatch")
    if f.domain != g.domain:
        raise ValueError("rational domain mismatch")
    return f.domain


def rat_add(f: RationalFn, g: RationalFn, cap: int = DEFAULT_TERM_CAP) -> RationalFn:
    """p1 q2 + p2 q1 over q1 q2; unreduced, so degrees add."""
    dom = _common_domain(f, g)
    num = poly_add(poly_mul(f.num, g.den, cap), poly_mul(g.num, f.den, cap), cap)
    den = poly_mul(f.den, g.den, cap)
    return RationalFn(num, den, dom)


def rat_mul(f: RationalFn, g: RationalFn, cap: int = DEFAULT_TERM_CAP) -> RationalFn:
    dom = _common_domain(f, g)
    return RationalFn(poly_mul(f.num, g.num, cap), poly_mul(f.den, g.den, cap), dom)


def rat_scale(f: RationalFn, c) -> RationalFn:
    return RationalFn(poly_scale(f.num, c), f.den, f.domain)


def rat_compose_uni(R: RationalFn, f: RationalFn, cap: int = DEFAULT_TERM_CAP) -> RationalFn:
    """Compose a univariate rational R with a rational f of any dimension.

    With R = (sum_j c_j x^j)/(sum_j d_j x^j) of degree r, the result is

        sum_j c_j p_f^j q_f^(r-j)  /  sum_j d_j p_f^j q_f^(r-j),

    the fraction cleared by q_f^r, so the composed degree is at most
    deg(R) * deg(f).
    """
    if R.dim != 1:
        raise ValueError("the outer rational must be univariate")
    Rn = R.num.to_unipoly() if isinstance(R.num, SparsePoly) else R.num
    Rd = R.den.to_unipoly() if isinstance(R.den, SparsePoly) else R.den
    if not isinstance(Rn, UniPoly) or not isinstance(Rd, UniPoly):
        raise TypeError("rat_compose_uni needs R in expanded coefficient form")
    r = max(len(Rn.coeffs), len(Rd.coeffs)) - 1
    if r < 0:
        raise ValueError("outer rational is identically zero")
    p_f, q_f = f.num, f.den
    # incremental power tables
    p_pows = [SparsePoly.constant(f.dim, 1.0)]
    q_pows = [SparsePoly.constant(f.dim, 1.0)]
    for _ in range(r):
        p_pows.append(poly_mul(p_pows[-1], p_f, cap))
        q_pows.append(poly_mul(q_pows[-1], q_f, cap))
    num = SparsePoly(f.dim, {})
    den = SparsePoly(f.dim, {})
    for j in range(r + 1):
        cj = Rn.coeffs[j] if j < len(Rn.coeffs) else 0.0
        dj = Rd.coeffs[j] if j < len(Rd.coeffs) else 0.0
        if cj == 0.0 and dj == 0.0:
            continue
        basis = poly_mul(p_pows[j], q_pows[r - j], cap)
        if cj != 0.0:
            num = poly_add(num, poly_scale(basis, cj), cap)
        if dj != 0.0:
            den = poly_add(den, poly_scale(basis, dj), cap)
    return RationalFn(num, den, f.domain)


# ---------------------------------------------------------------------------
# sign analysis


def sign_changes(p: UniPoly) -> int:
    """Count sign alternations in the nonzero coefficient sequence.

    By Descartes' rule of signs this bounds the number of positive real
    roots.
    """
    signs = [1 if c > 0 else -1 for c in p.coeffs if c != 0.0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class CrossingCount:
    """Detected level crossings plus the coefficient-sign upper bound."""

    count: int
    descartes_bound: int
    locations: tuple = ()

    def __int__(self):
        return self.count


def crossings_at_level(g: RationalFn, level: float, interval: Interval,
                       grid_n: int = 2 ** 15 + 1) -> CrossingCount:
    """Count sign crossings of g - level on the interval.

    Sign changes of h = num - level*den are detected on a uniform grid and
    localized by bisection to 1e-12 separation; crossings closer than that
    merge, and tangential touches (no sign change) are not counted.  The
    Descartes bound on the same h is returned alongside.
    """
    if grid_n < 16:
        raise PreconditionError("crossing detection grid is too coarse")
    if g.dim != 1:
        raise ValueError("crossing counting is univariate")
    num = g.num.to_unipoly() if isinstance(g.num, SparsePoly) else g.num
    den = g.den.to_unipoly() if isinstance(g.den, SparsePoly) else g.den
    if isinstance(num, UniPoly) and isinstance(den, UniPoly):
        hcoef = [0.0] * max(len(num.coeffs), len(den.coeffs))
        for i, c in enumerate(num.coeffs):
            hcoef[i] += c
        for i, c in enumerate(den.coeffs):
            hcoef[i] -= level * c
        h = UniPoly(hcoef)
        bound = sign_changes(h)
        heval = h
    else:
        def heval(x):  # factored forms: evaluate without expansion
            return _eval_poly_arr(num, np.asarray(x, dtype=float)) - \
                level * _eval_poly_arr(den, np.asarray(x, dtype=float))
        bound = -1
    xs = np.linspace(interval.lo, interval.hi, grid_n)
    hv = np.asarray(heval(xs), dtype=float)
    sgn = np.sign(hv)
    locs = []
    i = 0
    while i < grid_n - 1:
        if sgn[i] == 0.0:
            i += 1
            continue
        j = i + 1
        while j < grid_n and sgn[j] == 0.0:
            j += 1
        if j == grid_n:
            break
        if sgn[i] * sgn[j] < 0:
            lo, hi = xs[i], xs[j]
            flo = hv[i]
            while hi - lo > 1e-12:
                mid = 0.5 * (lo + hi)
                fm = float(np.asarray(heval(mid)))
                if fm == 0.0 or (flo < 0) == (fm < 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            locs.append(0.5 * (lo + hi))
        i = j
    merged = []
    for x in locs:
        if not merged or x - merged[-1] > 1e-12:
            merged.append(x)
    return CrossingCount(count=len(merged),
                         descartes_bound=bound,
                         locations=tuple(merged))


# ---------------------------------------------------------------------------
# serialization helpers


def poly_to_json(p: SparsePoly) -> dict:
    return {"dim": p.dim, "terms": p.to_json()}


def poly_from_json(doc) -> SparsePoly:
    if isinstance(doc, str):
        doc = json.loads(doc)
    return SparsePoly.from_json(int(doc["dim"]), doc["terms"])
