"""ReLU network -> rational function: substitution, collapse, pipeline.

Substitution swaps every ReLU for one shared rational approximant whose
accuracy budget is split evenly across layers (eps/l per layer); the
normalization ||a||_1 + |b| <= 1 at every node is what keeps each
activation's input inside [-1, 1], so per-node budgets compose additively.
Collapse then rewrites the rational network as a single unreduced rational
function by structural induction over layers, and audits its degree
against (r m)^l.

Collapse arithmetic defaults to float64 with exact power-of-two
rescaling after every node (composition towers the coefficient magnitudes
fast enough to overflow otherwise); pass ``precision`` for the slower
extended-precision dict path on small networks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .algebra import (DEFAULT_TERM_CAP, RationalFn, SparsePoly, UniPoly,
                      poly_scale, rat_add, rat_compose_uni, rat_scale)
from .errors import BlowupError, PreconditionError, RatReluError
from .newman import newman_relu, required_degree
from .numcore import DEFAULT_CERT_N, Interval, sup_error_box
from .relunet import IDENTITY, Layer, Rational, ReluNet, check_constraints

MAX_EXPANDABLE_DEGREE = 64


class CollapseUnavailable(RatReluError):
    """Collapse cannot run (activation degree beyond the expandable cap).

    Carries the substituted rational network, which is still a valid
    eps-accurate result on its own.
    """

    def __init__(self, message, rational_net=None):
        super().__init__(message)
        self.rational_net = rational_net


class RationalNet:
    """A layered network whose hidden activations share one rational R."""

    __slots__ = ("in_dim", "layers", "r", "R", "multi_output")

    def __init__(self, in_dim: int, layers, r: int, R: RationalFn):
        self.in_dim = in_dim
        self.layers = tuple(layers)
        self.r = r
        self.R = R
        self.multi_output = self.layers[-1].out_dim != 1

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def n_activation_layers(self) -> int:
        return sum(1 for l in self.layers if l.activation != IDENTITY)

    @property
    def width(self) -> int:
        acts = [l.out_dim for l in self.layers if l.activation != IDENTITY]
        return max(acts) if acts else 1

    def __repr__(self):
        return (f"RationalNet(d={self.in_dim}, layers={self.depth}, "
                f"width={self.width}, r={self.r})")


@dataclass(frozen=True)
class DegreeAudit:
    """Collapse degree accounting: actual degree versus the (r m)^l bound.

    A trailing affine read-out over several nodes contributes one extra
    width factor on top of the per-layer induction; ``bound`` includes it
    when present, so actual <= bound holds for every collapsible network.
    """

    r: int
    m: int
    l: int
    bound: float
    actual: float

    def __post_init__(self):
        if self.actual > self.bound:
            raise ValueError(
                f"collapsed degree {self.actual} exceeds the bound {self.bound}")

    CSV_HEADER = "r,m,l,bound,actual"

    def to_csv_row(self) -> str:
        return f"{self.r},{self.m},{self.l},{self.bound:.12g},{self.actual:.12g}"


def rationalize(net: ReluNet, r: int, b: float = 1.0) -> RationalNet:
    """Replace every ReLU with the clipped degree-r rational approximant.

    Plumbing: no constraint gate and no accuracy guarantee; use
    ``substitute_activation`` for the certified path.
    """
    R = newman_relu(r, b).clipped
    layers = [Layer(l.weights, l.biases,
                    IDENTITY if l.activation == IDENTITY else Rational(R))
              for l in net.layers]
    return RationalNet(net.in_dim, layers, r, R)


def substitute_activation(net: ReluNet, eps: float) -> RationalNet:
    """Swap ReLUs for one rational R so the whole network moves by <= eps.

    Requires every node to satisfy ||a||_1 + |b| <= 1 and inputs confined
    to [-1, 1]^d; violations refuse with the per-node report, because the
    guarantee is an induction on exactly that hypothesis.  The per-layer
    budget is eps / (number of activation layers).
    """
    if not 0 < eps <= 1:
        raise PreconditionError(f"eps must lie in (0, 1], got {eps}")
    report = check_constraints(net)
    if not report.ok:
        bad = report.violations()
        raise PreconditionError(
            f"{len(bad)} node(s) violate the normalization ||a||_1 + |b| <= 1; "
            f"first: layer {bad[0][0]} node {bad[0][1]} with norm {bad[0][2]:.6g}",
            report=report)
    l = max(1, net.n_activation_layers)
    r = required_degree(eps / l, b=1.0)
    return rationalize(net, r, b=1.0)


# ---------------------------------------------------------------------------
# collapse


def _pow2_normalize(f: RationalFn) -> RationalFn:
    """Rescale num and den by a common power of two (exact in floats)."""
    m = max((abs(c) for c in f.den.terms.values()), default=0.0)
    if m == 0.0 or not math.isfinite(m):
        return f
    scale = 2.0 ** -math.frexp(m)[1]
    return RationalFn(poly_scale(f.num, scale), poly_scale(f.den, scale), f.domain)


def _expanded_R(rnet: RationalNet, precision) -> RationalFn:
    if rnet.r > MAX_EXPANDABLE_DEGREE:
        raise CollapseUnavailable(
            f"activation degree r={rnet.r} exceeds the expandable cap "
            f"{MAX_EXPANDABLE_DEGREE}; the substituted rational network is "
            f"still valid on its own", rational_net=rnet)
    bits = max(128, precision or 0)
    return rnet.R.expand(bits)


def collapse(rnet: RationalNet, cap: int = DEFAULT_TERM_CAP,
             precision: int | None = None) -> tuple[RationalFn, DegreeAudit]:
    """Collapse a rational network into a single unreduced rational function.

    Layer by layer, each node's input Sum_j a_j g_j + b is accumulated by
    unreduced rational addition and then composed with R; nodes of layer i
    therefore have degree at most (r m)^i.  Raises BlowupError with the
    layer reached if the term cap is exceeded.
    """
    d = rnet.in_dim
    dom = tuple(Interval(-1.0, 1.0) for _ in range(d))
    R = _expanded_R(rnet, precision)
    use_mpf = precision is not None
    if use_mpf:
        mpmath.mp.prec = max(precision, 64)
        Rn = R.num.to_unipoly() if isinstance(R.num, SparsePoly) else R.num
        Rd = R.den.to_unipoly() if isinstance(R.den, SparsePoly) else R.den
        R = RationalFn(
            SparsePoly(1, {(e,): mpmath.mpf(c) for e, c in enumerate(Rn.coeffs) if c != 0}),
            SparsePoly(1, {(e,): mpmath.mpf(c) for e, c in enumerate(Rd.coeffs) if c != 0}),
            R.domain)

    def scalar(v):
        return mpmath.mpf(float(v)) if use_mpf else float(v)

    one = SparsePoly.constant(d, scalar(1.0))
    current = [RationalFn(SparsePoly.variable(d, j), one, dom) for j in range(d)]
    m = rnet.width
    l = rnet.n_activation_layers
    bound = float(rnet.r * m) ** l
    layer_i = 0
    for layer in rnet.layers:
        is_act = layer.activation != IDENTITY
        if is_act:
            layer_i += 1
        nxt = []
        try:
            for node in range(layer.out_dim):
                acc = RationalFn(SparsePoly.constant(d, scalar(layer.biases[node])),
                                 one, dom)
                n_used = 0
                for j, g in enumerate(current):
                    w = layer.weights[node, j]
                    if w != 0.0:
                        acc = rat_add(acc, rat_scale(g, scalar(w)), cap)
                        n_used += 1
                if is_act:
                    acc = rat_compose_uni(R, acc, cap)
                if not use_mpf:
                    acc = _pow2_normalize(acc)
                nxt.append(acc)
            if not is_act and layer.out_dim == 1:
                # affine read-out over several rationals multiplies degrees
                n_inputs = int(np.count_nonzero(layer.weights[0]))
                if n_inputs > 1:
                    bound *= m
        except BlowupError as e:
            raise BlowupError(
                f"term cap exceeded while collapsing layer {layer_i} "
                f"of {len(rnet.layers)}: {e}", layer=layer_i) from e
        current = nxt
    if len(current) != 1:
        raise PreconditionError("collapse requires a scalar-output network")
    out = current[0]
    if use_mpf:
        out = RationalFn(
            SparsePoly(d, {e: float(c) for e, c in out.num.terms.items() if float(c) != 0.0}),
            SparsePoly(d, {e: float(c) for e, c in out.den.terms.items() if float(c) != 0.0}),
            dom)
        out = _pow2_normalize(out)
    actual = max(out.num.degree, out.den.degree)
    audit = DegreeAudit(r=rnet.r, m=m, l=l, bound=bound, actual=float(actual))
    return out, audit


def net_to_rational(net: ReluNet, eps: float, cap: int = DEFAULT_TERM_CAP,
                    precision: int | None = None, grid_n: int = DEFAULT_CERT_N,
                    ) -> tuple[RationalFn, DegreeAudit, "ErrorReport"]:
    """Full pipeline: substitute with per-layer budget, collapse, certify.

    The returned report measures sup |net - collapsed| over a grid on
    [-1, 1]^d; collapse is exact rewriting, so the measured gap is the
    substitution error plus float noise.
    """
    rnet = substitute_activation(net, eps)
    rfn, audit = collapse(rnet, cap=cap, precision=precision)
    from .relunet import as_function
    intervals = [Interval(-1.0, 1.0)] * net.in_dim
    report = sup_error_box(as_function(net), rfn.eval_many, intervals, n=grid_n)
    return rfn, audit, report
