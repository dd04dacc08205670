"""Coefficients of finite products of layers prod_{n in X_j} (1 +- f_j(n) q^n)^(+-1).

Each layer expands as a sum over one partition family.  With g = -inner * f,
a layer is prod (1 - g q^n)^exponent, so

    inner  exp   family                 weight on each part
      -    -1    all partitions P_X      f
      +    +1    distinct parts P*_X     f
      -    +1    distinct parts P*_X     -f
      +    -1    all partitions P_X      -f

The first two rows are the plain generating functions of P_X and P*_X; the
other two follow from them with f replaced by -f.  The coefficient of q^N in
the whole product is the nested convolution of the per-layer brackets

    b_j(m) = sum over lam |- m in the layer's family of prod weight(lam_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .partitions import GrammarError, PartitionClass, PartSpec, All, enumerate_partitions, parse_partspec
from .series import TruncatedSeries, mul, phi_series, reciprocal
from .weights import Constant, Negated, Restricted, WeightFunction, parse_weight, require_exact, weight_product


@dataclass(frozen=True)
class ProductLayer:
    X: PartSpec = All()
    f: WeightFunction = Constant(1)
    inner_sign: int = -1
    outer_exp: int = -1

    def __post_init__(self):
        if self.inner_sign not in (1, -1) or self.outer_exp not in (1, -1):
            raise ValueError("inner_sign and outer_exp must each be +1 or -1")
        require_exact(self.f)
        if self.f.marked:
            raise TypeError("layers take rational weights only")

    @property
    def distinct(self) -> bool:
        return self.outer_exp == 1

    @property
    def part_weight(self) -> WeightFunction:
        return self.f if self.inner_sign * self.outer_exp == 1 else Negated(self.f)

    def inverse(self) -> ProductLayer:
        return ProductLayer(self.X, self.f, self.inner_sign, -self.outer_exp)

    def to_grammar(self) -> str:
        inner = "+" if self.inner_sign == 1 else "-"
        return f"X={self.X};f={self.f};inner={inner};exp={self.outer_exp:+d}"


@dataclass(frozen=True)
class QuotientSpec:
    layers: tuple[ProductLayer, ...]
    order: int

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if not self.layers:
            raise ValueError("a quotient needs at least one layer")
        if self.order < 0:
            raise ValueError("order must be non-negative")


@lru_cache(maxsize=4096)
def _bracket(layer: ProductLayer, m: int) -> Fraction:
    family = PartitionClass(layer.X, layer.distinct)
    w = layer.part_weight
    return sum((weight_product(lam, w) for lam in enumerate_partitions(m, family)), Fraction(0))


def coeffs_nested(spec: QuotientSpec) -> TruncatedSeries:
    """c_N = sum_{N >= k_2 >= ... >= k_n >= 0} b_1(N - k_2) b_2(k_2 - k_3) ... b_n(k_n)."""
    layers = spec.layers

    @lru_cache(maxsize=None)
    def nested(j: int, k: int) -> Fraction:
        if j == len(layers) - 1:
            return _bracket(layers[j], k)
        return sum((_bracket(layers[j], k - k2) * nested(j + 1, k2) for k2 in range(k + 1)), Fraction(0))

    return TruncatedSeries.from_coeffs([nested(0, k) for k in range(spec.order + 1)])


def layer_series(layer: ProductLayer, order: int) -> TruncatedSeries:
    """The layer expanded through the phi product: phi(-inner f) or its reciprocal."""
    g = Restricted(layer.f if layer.inner_sign == -1 else Negated(layer.f), layer.X)
    phi = phi_series(g, order)
    return phi if layer.outer_exp == 1 else reciprocal(phi)


def coeffs_direct(spec: QuotientSpec) -> TruncatedSeries:
    out = TruncatedSeries.one(spec.order)
    for layer in spec.layers:
        out = mul(out, layer_series(layer, spec.order))
    return out


_KEYS = ("X=", "f=", "inner=", "exp=")


def parse_layer(text: str) -> ProductLayer:
    """Parse "X=<partset>;f=<weight>;inner=+|-;exp=+1|-1"; omitted fields default to X=all, f=const:1, -, -1."""
    fields: dict[str, str] = {}
    last = None
    for piece in text.split(";"):
        stripped = piece.strip()
        key = next((k for k in _KEYS if stripped.lower().startswith(k.lower())), None)
        if key is None:
            if last is None or not stripped:
                raise GrammarError(piece, "layer fields look like X=..., f=..., inner=..., exp=...")
            fields[last] += ";" + stripped  # e.g. a ";restrict:" weight modifier
            continue
        last = key
        fields[key] = stripped[len(key):]
    X = parse_partspec(fields["X="]) if "X=" in fields else All()
    f = parse_weight(fields["f="]) if "f=" in fields else Constant(1)
    inner = fields.get("inner=", "-").strip()
    if inner not in ("+", "-"):
        raise GrammarError(inner, "inner sign is + or -")
    exp = fields.get("exp=", "-1").strip()
    if exp not in ("+1", "1", "-1"):
        raise GrammarError(exp, "exponent is +1 or -1")
    return ProductLayer(X, f, 1 if inner == "+" else -1, -1 if exp == "-1" else 1)
