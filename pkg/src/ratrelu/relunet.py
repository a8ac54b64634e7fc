"""Layered ReLU-network IR: construction, evaluation, exact 1-D analysis.

A network is a sequence of layers, each an affine map followed by an
activation: ``relu``, ``id`` (permitted only at the output, used for affine
read-out), or a univariate rational function.  Composition helpers keep
that invariant by folding identity affines into the following layer.

Size is reported as the total number of activation nodes (identity
read-outs are wiring, not nodes), matching the node-count convention used
by every size bound in the package.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .algebra import RationalFn
from .errors import BlowupError, PreconditionError
from .numcore import Interval

RELU = "relu"
IDENTITY = "id"


@dataclass(frozen=True)
class Rational:
    """Rational-activation tag wrapping a univariate RationalFn."""

    fn: RationalFn

    def __post_init__(self):
        if self.fn.dim != 1:
            raise ValueError("rational activations must be univariate")


class Layer:
    """Affine map plus activation; weights shape (out_dim, in_dim)."""

    __slots__ = ("weights", "biases", "activation")

    def __init__(self, weights, biases, activation=RELU):
        w = np.asarray(weights, dtype=float)
        b = np.asarray(biases, dtype=float)
        if w.ndim != 2:
            raise ValueError("weights must be a matrix")
        if b.shape != (w.shape[0],):
            raise ValueError("bias length must equal out_dim")
        if not (activation in (RELU, IDENTITY) or isinstance(activation, Rational)):
            raise ValueError(f"unknown activation {activation!r}")
        w.setflags(write=False)
        b.setflags(write=False)
        self.weights = w
        self.biases = b
        self.activation = activation

    @property
    def in_dim(self) -> int:
        return self.weights.shape[1]

    @property
    def out_dim(self) -> int:
        return self.weights.shape[0]

    def __repr__(self):
        act = self.activation if isinstance(self.activation, str) else "rational"
        return f"Layer({self.out_dim}x{self.in_dim}, {act})"


class ReluNet:
    """Immutable layered network; scalar output unless flagged multi-output."""

    __slots__ = ("in_dim", "layers", "multi_output")

    def __init__(self, in_dim: int, layers, multi_output: bool = False):
        layers = tuple(layers)
        if not layers:
            raise ValueError("a network needs at least one layer")
        prev = in_dim
        for i, layer in enumerate(layers):
            if layer.in_dim != prev:
                raise ValueError(
                    f"layer {i} expects input dim {layer.in_dim}, got {prev}")
            if layer.activation == IDENTITY and i != len(layers) - 1:
                raise ValueError("identity activation is permitted only at the output layer")
            prev = layer.out_dim
        if not multi_output and layers[-1].out_dim != 1:
            raise ValueError("scalar-output network has out_dim != 1; pass multi_output=True")
        self.in_dim = in_dim
        self.layers = layers
        self.multi_output = multi_output

    @property
    def out_dim(self) -> int:
        return self.layers[-1].out_dim

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def n_activation_layers(self) -> int:
        return sum(1 for l in self.layers if l.activation != IDENTITY)

    @property
    def width(self) -> int:
        acts = [l.out_dim for l in self.layers if l.activation != IDENTITY]
        return max(acts) if acts else max(l.out_dim for l in self.layers)

    @property
    def size(self) -> int:
        return sum(l.out_dim for l in self.layers if l.activation != IDENTITY)

    def __repr__(self):
        return (f"ReluNet(d={self.in_dim}, layers={self.depth}, "
                f"width={self.width}, size={self.size})")

    def to_json(self) -> dict:
        out = {"in_dim": self.in_dim, "layers": []}
        for l in self.layers:
            if isinstance(l.activation, Rational):
                act = {"rational": l.activation.fn.expand().to_json()}
            else:
                act = l.activation
            out["layers"].append({"w": l.weights.tolist(), "b": l.biases.tolist(),
                                  "act": act})
        return out

    @classmethod
    def from_json(cls, doc) -> "ReluNet":
        if isinstance(doc, str):
            doc = json.loads(doc)
        layers = []
        for ld in doc["layers"]:
            act = ld.get("act", RELU)
            if isinstance(act, dict):
                act = Rational(RationalFn.from_json(act["rational"]))
            layers.append(Layer(ld["w"], ld["b"], act))
        multi = layers[-1].out_dim != 1
        return cls(int(doc["in_dim"]), layers, multi_output=multi)


# ---------------------------------------------------------------------------
# evaluation


def _forward(net, X: np.ndarray) -> np.ndarray:
    Z = X
    for layer in net.layers:
        Z = Z @ layer.weights.T + layer.biases
        act = layer.activation
        if act == RELU:
            Z = np.maximum(Z, 0.0)
        elif isinstance(act, Rational):
            Z = act.fn.eval_many(Z.ravel()).reshape(Z.shape)
    return Z


def net_eval(net, x):
    """Forward evaluation at one point (scalar for 1-D input)."""
    pt = np.asarray(x, dtype=float).reshape(1, -1)
    if pt.shape[1] != net.in_dim:
        raise ValueError(f"input dimension {pt.shape[1]} does not match net dim {net.in_dim}")
    out = _forward(net, pt)
    if not np.isfinite(out).all():
        raise BlowupError(f"non-finite value during evaluation at {x!r}")
    return float(out[0, 0]) if out.shape[1] == 1 else out[0]


def net_eval_batch(net, X: np.ndarray) -> np.ndarray:
    """Forward evaluation at an (N, d) array (or (N,) for 1-D input)."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.shape[1] != net.in_dim:
        raise ValueError(f"input dimension {X.shape[1]} does not match net dim {net.in_dim}")
    out = _forward(net, X)
    return out[:, 0] if out.shape[1] == 1 else out


def as_function(net):
    """The network as a plain callable on points or batches."""
    def f(x):
        x = np.asarray(x, dtype=float)
        if x.ndim == 0:
            return net_eval(net, x.reshape(1))
        if x.ndim == 1 and net.in_dim == 1:
            return net_eval_batch(net, x)
        if x.ndim == 1:
            return net_eval(net, x)
        return net_eval_batch(net, x)
    return f


def preactivation_ranges(net, X: np.ndarray) -> list:
    """(min, max) of each activation layer's pre-activation over a batch."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    Z = X
    out = []
    for layer in net.layers:
        Z = Z @ layer.weights.T + layer.biases
        if layer.activation != IDENTITY:
            out.append((float(Z.min()), float(Z.max())))
        act = layer.activation
        if act == RELU:
            Z = np.maximum(Z, 0.0)
        elif isinstance(act, Rational):
            Z = act.fn.eval_many(Z.ravel()).reshape(Z.shape)
    return out


# ---------------------------------------------------------------------------
# constraint audit


@dataclass(frozen=True)
class ConstraintReport:
    """Per-node verdicts on the ||a||_1 + |b| <= 1 normalization."""

    entries: tuple  # (layer index, node index, norm, ok)
    ok: bool

    def violations(self):
        return [e for e in self.entries if not e[3]]


def check_constraints(net, tol: float = 1e-12) -> ConstraintReport:
    entries = []
    ok = True
    for li, layer in enumerate(net.layers):
        if layer.activation == IDENTITY:
            continue
        norms = np.abs(layer.weights).sum(axis=1) + np.abs(layer.biases)
        for ni, v in enumerate(norms):
            good = bool(v <= 1.0 + tol)
            ok = ok and good
            entries.append((li, ni, float(v), good))
    return ConstraintReport(entries=tuple(entries), ok=ok)


# ---------------------------------------------------------------------------
# composition helpers


def identity_layer(w, b) -> Layer:
    return Layer(w, b, IDENTITY)


def _split_identity(net: ReluNet):
    """Layers split into (activation part, trailing identity affine or None)."""
    if net.layers[-1].activation == IDENTITY:
        return net.layers[:-1], net.layers[-1]
    return net.layers, None


def compose(first: ReluNet, second: ReluNet) -> ReluNet:
    """Feed ``first``'s output into ``second``; identity read-outs fold away."""
    if second.in_dim != first.out_dim:
        raise ValueError("composition dimension mismatch")
    body, tail = _split_identity(first)
    layers = list(body)
    second_layers = list(second.layers)
    head = second_layers[0]
    if tail is not None:
        w = head.weights @ tail.weights
        b = head.weights @ tail.biases + head.biases
        head = Layer(w, b, head.activation)
    if not layers and head.activation == IDENTITY and len(second_layers) == 1:
        layers = [head]
    else:
        layers = layers + [head] + second_layers[1:]
    return ReluNet(first.in_dim, layers, multi_output=second.multi_output)


def _with_identity_tail(net: ReluNet) -> ReluNet:
    if net.layers[-1].activation == IDENTITY:
        return net
    n = net.out_dim
    return ReluNet(net.in_dim, list(net.layers) + [identity_layer(np.eye(n), np.zeros(n))],
                   multi_output=net.multi_output)


def pad_depth(net: ReluNet, target_act_layers: int) -> ReluNet:
    """Append exact pass-through blocks until the activation depth matches.

    Each pad carries every channel as the pair (relu(v), relu(-v)) and
    re-assembles it in the next affine, which is exact for any sign.
    """
    if net.n_activation_layers > target_act_layers:
        raise ValueError("cannot pad to a smaller depth")
    net = _with_identity_tail(net)
    while net.n_activation_layers < target_act_layers:
        body, tail = _split_identity(net)
        n = tail.out_dim
        pad = Layer(np.vstack([tail.weights, -tail.weights]),
                    np.concatenate([tail.biases, -tail.biases]), RELU)
        restore = identity_layer(np.hstack([np.eye(n), -np.eye(n)]), np.zeros(n))
        net = ReluNet(net.in_dim, list(body) + [pad, restore],
                      multi_output=net.multi_output)
    return net


def parallel(nets: list) -> ReluNet:
    """Side-by-side union over a shared input; outputs are concatenated.

    Shallower operands are pass-through padded so all branches agree on
    activation depth.
    """
    if not nets:
        raise ValueError("parallel needs at least one network")
    d = nets[0].in_dim
    if any(n.in_dim != d for n in nets):
        raise ValueError("parallel networks must share the input dimension")
    target = max(n.n_activation_layers for n in nets)
    nets = [pad_depth(n, target) for n in nets]
    n_layers = target + 1
    layers = []
    for i in range(n_layers):
        ws = [n.layers[i].weights for n in nets]
        bs = [n.layers[i].biases for n in nets]
        act = nets[0].layers[i].activation
        if i == 0:
            w = np.vstack(ws)
        else:
            rows = sum(m.shape[0] for m in ws)
            cols = sum(m.shape[1] for m in ws)
            w = np.zeros((rows, cols))
            r = c = 0
            for m in ws:
                w[r:r + m.shape[0], c:c + m.shape[1]] = m
                r += m.shape[0]
                c += m.shape[1]
        layers.append(Layer(w, np.concatenate(bs), act))
    return ReluNet(d, layers, multi_output=True)


def affine_output(net: ReluNet, weights, bias) -> ReluNet:
    """Apply a final affine read-out to a (possibly multi-output) network."""
    w = np.atleast_2d(np.asarray(weights, dtype=float))
    b = np.atleast_1d(np.asarray(bias, dtype=float))
    read = ReluNet(net.out_dim, [identity_layer(w, b)], multi_output=w.shape[0] != 1)
    return compose(net, read)


def affine_combination(nets: list, weights, bias: float = 0.0) -> ReluNet:
    """sum_i w_i * net_i(x) + bias as a single scalar-output network."""
    joined = parallel(nets)
    offsets = []
    w = np.zeros((1, joined.out_dim))
    col = 0
    for net, wi in zip(nets, weights):
        w[0, col:col + net.out_dim] = wi
        col += net.out_dim
        offsets.append(col)
    return affine_output(joined, w, [bias])


def input_wire(in_dim: int, coord: int = 0) -> ReluNet:
    """The coordinate x_coord as a depth-0 (identity-only) network."""
    w = np.zeros((1, in_dim))
    w[0, coord] = 1.0
    return ReluNet(in_dim, [identity_layer(w, np.zeros(1))])


def constant_net(c: float, in_dim: int = 1) -> ReluNet:
    return ReluNet(in_dim, [identity_layer(np.zeros((1, in_dim)), np.array([float(c)]))])


def clip01(net: ReluNet) -> ReluNet:
    """Append relu(v) - relu(v - 1): output clamped to [0, 1]."""
    return clip_range(net, 0.0, 1.0)


def clip_range(net: ReluNet, lo: float, hi: float) -> ReluNet:
    """Append the two-node clamp min(max(v, lo), hi)."""
    if net.out_dim != 1:
        raise ValueError("clipping needs a scalar output")
    if not lo < hi:
        raise ValueError("clip range must be nonempty")
    clamp = ReluNet(1, [
        Layer(np.array([[1.0], [1.0]]), np.array([-lo, -hi]), RELU),
        identity_layer(np.array([[1.0, -1.0]]), np.array([lo])),
    ])
    return compose(net, clamp)


# ---------------------------------------------------------------------------
# canonical targets


def build_triangle(k: int) -> ReluNet:
    """The k-fold tent map as 2k layers of at most 2 nodes.

    One tent is relu(2 relu(x) - 4 relu(x - 1/2)); its dyadic values are
    exact in binary floating point, so composition stays exact at
    multiples of 2^-k.
    """
    if k < 1:
        raise PreconditionError(f"triangle composition needs k >= 1, got {k}")
    layers = []
    for _ in range(k):
        layers.append(Layer(np.array([[1.0], [1.0]]), np.array([0.0, -0.5]), RELU))
        layers.append(Layer(np.array([[2.0, -4.0]]), np.array([0.0]), RELU))
    return ReluNet(1, layers)


def triangle_wave(x, k: int = 1):
    """Reference evaluation of the k-fold tent map (not a network)."""
    v = np.asarray(x, dtype=float)
    scalar = v.ndim == 0
    v = np.atleast_1d(v).copy()
    for _ in range(k):
        v = np.where((v >= 0) & (v <= 0.5), 2 * v,
                     np.where((v > 0.5) & (v <= 1.0), 2 * (1 - v), 0.0))
    return float(v[0]) if scalar else v


def build_spike():
    """The figure target: 1/x along [1/4, 1] and 0 elsewhere."""
    def spike(x):
        v = np.asarray(x, dtype=float)
        scalar = v.ndim == 0
        v = np.atleast_1d(v)
        out = np.zeros_like(v)
        m = v >= 0.25
        out[m] = 1.0 / v[m]
        return float(out[0]) if scalar else out
    return spike


# ---------------------------------------------------------------------------
# exact piecewise-linear extraction


@dataclass(frozen=True)
class PiecewiseLinear:
    """Exact piecewise-affine form of a 1-D network on an interval.

    ``breakpoints`` are the interior knots; piece i covers
    (edges[i], edges[i+1]) with value slopes[i] * x + intercepts[i].
    """

    breakpoints: np.ndarray
    slopes: np.ndarray
    intercepts: np.ndarray
    domain: Interval

    @property
    def piece_count(self) -> int:
        return len(self.slopes)

    @property
    def edges(self) -> np.ndarray:
        return np.concatenate([[self.domain.lo], self.breakpoints, [self.domain.hi]])

    def __call__(self, x):
        xs = np.asarray(x, dtype=float)
        scalar = xs.ndim == 0
        xs = np.atleast_1d(xs)
        idx = np.clip(np.searchsorted(self.breakpoints, xs, side="right"),
                      0, self.piece_count - 1)
        out = self.slopes[idx] * xs + self.intercepts[idx]
        return float(out[0]) if scalar else out

    def validate_continuity(self, tol: float = 1e-9) -> bool:
        for i, b in enumerate(self.breakpoints):
            left = self.slopes[i] * b + self.intercepts[i]
            right = self.slopes[i + 1] * b + self.intercepts[i + 1]
            if abs(left - right) > tol:
                return False
        return True

    def level_crossings(self, level: float) -> int:
        """Sign crossings of the function minus ``level`` over the domain."""
        e = self.edges
        vals = self(e) - level
        # resolve exact zeros by nudging to the side of the adjacent piece
        crossings = 0
        last_sign = 0
        for i in range(len(e)):
            s = 0 if vals[i] == 0 else (1 if vals[i] > 0 else -1)
            if i > 0:
                # interior crossing strictly inside piece i-1
                a, b = vals[i - 1], vals[i]
                if a * b < 0:
                    crossings += 1
            if s != 0:
                if last_sign != 0 and s != last_sign and vals[i - 1] == 0:
                    crossings += 1
                last_sign = s
        return crossings


def enumerate_pieces(net: ReluNet, interval: Interval,
                     cap: int = 10 ** 6, dedup: float = 1e-12) -> PiecewiseLinear:
    """Exact breakpoint propagation through a relu/identity network.

    Each relu node adds a breakpoint wherever its pre-activation crosses
    zero inside an existing piece; negative pieces clamp to the zero
    function.  The result reproduces net_eval exactly up to float roundoff.
    """
    if net.in_dim != 1:
        raise PreconditionError("piece enumeration requires a 1-D input")
    for l in net.layers:
        if isinstance(l.activation, Rational):
            raise PreconditionError("piece enumeration requires relu/identity activations")
    edges = np.array([interval.lo, interval.hi])
    S = np.ones((1, 1))
    T = np.zeros((1, 1))
    for layer in net.layers:
        S = S @ layer.weights.T
        T = T @ layer.weights.T + layer.biases
        if layer.activation == IDENTITY:
            continue
        cuts = []
        for c in range(S.shape[1]):
            s, t = S[:, c], T[:, c]
            nz = s != 0
            with np.errstate(divide="ignore", invalid="ignore"):
                roots = np.where(nz, -t / np.where(nz, s, 1.0), np.nan)
            for i in range(len(s)):
                x = roots[i]
                if np.isfinite(x) and edges[i] + dedup < x < edges[i + 1] - dedup:
                    cuts.append(x)
        if cuts:
            new_edges = np.unique(np.concatenate([edges, np.array(cuts)]))
            # merge knots closer than the dedup tolerance
            keep = [new_edges[0]]
            for x in new_edges[1:]:
                if x - keep[-1] > dedup:
                    keep.append(x)
            keep[-1] = edges[-1]
            new_edges = np.array(keep)
            idx = np.clip(np.searchsorted(new_edges, edges[:-1], side="right") - 1,
                          0, len(new_edges) - 2)
            piece_src = np.clip(np.searchsorted(edges, new_edges[:-1], side="right") - 1,
                                0, len(edges) - 2)
            S = S[piece_src]
            T = T[piece_src]
            edges = new_edges
        if len(edges) - 1 > cap:
            raise BlowupError(f"piece count exceeded the cap {cap}")
        mids = 0.5 * (edges[:-1] + edges[1:])
        vals = S * mids[:, None] + T
        neg = vals < 0
        S = np.where(neg, 0.0, S)
        T = np.where(neg, 0.0, T)
    if S.shape[1] != 1:
        raise PreconditionError("piece enumeration requires a scalar output")
    return PiecewiseLinear(breakpoints=edges[1:-1], slopes=S[:, 0],
                           intercepts=T[:, 0], domain=interval)
