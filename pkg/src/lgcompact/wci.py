"""Weighted complete intersections and their Givental-type Laurent models.

A model is ``X_{d_1,...,d_k} in P(a_0,...,a_N)`` with index
``d_0 = sum(a) - sum(d)``.  A nef-partition splits the weight indices into
parts ``I_0, I_1, ..., I_k`` with weight sums ``d_0, d_1, ..., d_k``.  Each
part has one distinguished index (``a_{i,0}``); the remaining indices of a
part are its *slots* and each slot becomes one variable of the polynomial.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial

from lgcompact.errors import NonFanoError, NotNiceError, SearchCapExceeded, UnsupportedConfiguration
from lgcompact.laurent import LaurentPolynomial

DEFAULT_SEARCH_CAP = 20


@dataclass(frozen=True)
class WeightedCIModel:
    weights: tuple
    degrees: tuple

    @property
    def index(self) -> int:
        return sum(self.weights) - sum(self.degrees)

    @property
    def dim(self) -> int:
        return len(self.weights) - 1 - len(self.degrees)

    @property
    def codim(self) -> int:
        return len(self.degrees)

    def spec(self) -> str:
        w = ",".join(map(str, self.weights))
        d = ",".join(map(str, self.degrees))
        return f"wci:{w};{d}"

    def to_json(self):
        return {"weights": list(self.weights), "degrees": list(self.degrees),
                "index": self.index, "dim": self.dim}


def make_model(weights, degrees=(), min_dim: int = 1) -> WeightedCIModel:
    weights = tuple(int(a) for a in weights)
    degrees = tuple(int(d) for d in degrees)
    if not weights:
        raise ValueError("at least one weight is required")
    if any(a < 1 for a in weights) or any(d < 1 for d in degrees):
        raise ValueError("weights and degrees must be positive")
    if any(d < 2 for d in degrees):
        raise ValueError("degree-1 equations are not allowed; drop the hyperplane instead")
    model = WeightedCIModel(weights, degrees)
    if model.index < 1:
        raise NonFanoError(f"index {model.index} <= 0: not Fano")
    if model.dim < min_dim:
        raise ValueError(f"the complete intersection has dimension {model.dim} < {min_dim}")
    return model


@dataclass(frozen=True)
class NefPartition:
    """Parts ``I_0..I_k`` as tuples of weight indices plus their distinguished
    indices.  ``weights`` and ``degrees`` are copied from the model so the
    flags can be evaluated stand-alone."""

    weights: tuple
    degrees: tuple
    parts: tuple
    distinguished: tuple

    def __post_init__(self):
        if len(self.parts) != len(self.degrees) + 1:
            raise ValueError("need one part per degree plus I_0")
        flat = sorted(i for p in self.parts for i in p)
        if flat != list(range(len(self.weights))):
            raise ValueError("parts must partition the weight indices")
        for p, dist in zip(self.parts, self.distinguished):
            if dist not in p:
                raise ValueError(f"distinguished index {dist} not in part {p}")
        sums = [sum(self.weights[i] for i in p) for p in self.parts]
        target = [sum(self.weights) - sum(self.degrees)] + list(self.degrees)
        if sums != target:
            raise ValueError(f"part sums {sums} do not match {target}")

    def part_degree(self, i) -> int:
        if i == 0:
            return sum(self.weights) - sum(self.degrees)
        return self.degrees[i - 1]

    def slots(self, i) -> tuple:
        dist = self.distinguished[i]
        return tuple(j for j in self.parts[i] if j != dist)

    @property
    def nice(self) -> bool:
        return self.weights[self.distinguished[0]] == 1

    @property
    def strong(self) -> bool:
        if not self.nice:
            return False
        if any(self.weights[j] != 1 for j in self.slots(0)):
            return False
        return all(self.part_degree(i) % self.weights[j] == 0
                   for i in range(1, len(self.parts)) for j in self.parts[i])

    def weight_parts(self) -> tuple:
        return tuple(tuple(self.weights[j] for j in p) for p in self.parts)

    def signature(self) -> tuple:
        return tuple(tuple(sorted(w, reverse=True)) for w in self.weight_parts())

    def describe(self) -> str:
        pieces = []
        for i, p in enumerate(self.parts):
            ws = sorted((self.weights[j] for j in p), reverse=True)
            pieces.append(f"I_{i}={{{','.join(map(str, ws))}}}")
        return " ".join(pieces)

    def to_json(self):
        return {
            "parts": [list(p) for p in self.parts],
            "part_weights": [list(w) for w in self.weight_parts()],
            "distinguished": list(self.distinguished),
            "nice": self.nice,
            "strong": self.strong,
        }


def default_distinguished(weights, parts) -> tuple:
    """Largest weight (smallest index on ties) for ``I_i``, i >= 1; for ``I_0``
    the first unit weight if there is one."""
    out = []
    for i, p in enumerate(parts):
        if i == 0:
            units = [j for j in p if weights[j] == 1]
            if units:
                out.append(min(units))
                continue
        out.append(min(p, key=lambda j: (-weights[j], j)))
    return tuple(out)


def make_partition(model: WeightedCIModel, parts, distinguished=None) -> NefPartition:
    parts = tuple(tuple(sorted(p)) for p in parts)
    if distinguished is None:
        distinguished = default_distinguished(model.weights, parts)
    return NefPartition(model.weights, model.degrees, parts, tuple(distinguished))


def _compositions(total, nparts):
    if nparts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, nparts - 1):
            yield (first,) + rest


def find_nef_partitions(model: WeightedCIModel, cap: int = DEFAULT_SEARCH_CAP) -> list:
    """All nef-partitions up to permuting equal weights (and equal-degree parts).

    The search distributes the multiplicity of each distinct weight over the
    parts, so each equivalence class is generated once.
    """
    N = len(model.weights) - 1
    if N > cap:
        raise SearchCapExceeded(f"N = {N} exceeds the search cap {cap}")
    k = model.codim
    counts = sorted(Counter(model.weights).items())
    targets = [model.index] + list(model.degrees)
    seen = set()
    found = []
    for choice in product(*[list(_compositions(c, k + 1)) for _, c in counts]):
        sums = [sum(w * ch[i] for (w, _), ch in zip(counts, choice)) for i in range(k + 1)]
        if sums != targets:
            continue
        multisets = [tuple(sorted((w for (w, _), ch in zip(counts, choice)
                                   for _ in range(ch[i])), reverse=True))
                     for i in range(k + 1)]
        # parts with equal degree are interchangeable
        key = (multisets[0], tuple(sorted(zip(model.degrees, multisets[1:]))))
        if key in seen:
            continue
        seen.add(key)
        found.append(_realize(model, multisets))
    found.sort(key=lambda p: (not p.nice, not p.strong, p.signature()))
    return found


def _realize(model, multisets):
    pool = {}
    for j, w in enumerate(model.weights):
        pool.setdefault(w, []).append(j)
    parts = []
    for ms in multisets:
        part = [pool[w].pop(0) for w in ms]
        parts.append(part)
    return make_partition(model, parts)


@dataclass(frozen=True)
class GiventalModel:
    """The Laurent polynomial with its variable labeling.

    ``labeling[v] = (part, weight_index, weight)`` for variable ``v``.
    """

    polynomial: LaurentPolynomial
    labeling: tuple
    model: WeightedCIModel = field(compare=False)
    partition: NefPartition = field(compare=False)

    def to_json(self):
        return {
            "polynomial": self.polynomial.to_string(),
            "polynomial_json": self.polynomial.to_json(),
            "labeling": [{"var": self.polynomial.var_names[v], "part": i,
                          "index": j, "weight": w}
                         for v, (i, j, w) in enumerate(self.labeling)],
        }


def variable_labeling(partition: NefPartition) -> tuple:
    """Slots of ``I_1..I_k`` in order, then the slots of ``I_0``."""
    k = len(partition.parts) - 1
    labels = []
    for i in list(range(1, k + 1)) + [0]:
        for j in partition.slots(i):
            labels.append((i, j, partition.weights[j]))
    return tuple(labels)


def givental_polynomial(model: WeightedCIModel, partition: NefPartition) -> GiventalModel:
    """Product of ``(1 + sum of the slot variables of I_i)^{d_i}`` over parts
    ``i >= 1``, divided by every slot variable to the power of its weight,
    plus the sum of the ``I_0`` slot variables."""
    if not partition.nice:
        raise NotNiceError("the distinguished element of I_0 must have weight 1")
    labels = variable_labeling(partition)
    n = len(labels)
    names = tuple(f"x{v + 1}" for v in range(n))

    def var(v):
        e = [0] * n
        e[v] = 1
        return LaurentPolynomial({tuple(e): 1}, n, names)

    num = LaurentPolynomial.constant(1, n, names)
    for i in range(1, len(partition.parts)):
        factor = LaurentPolynomial.constant(1, n, names)
        for v, (part, _, _) in enumerate(labels):
            if part == i:
                factor = factor + var(v)
        num = num * factor ** partition.part_degree(i)
    den = LaurentPolynomial.monomial(tuple(w for _, _, w in labels), 1, names)
    f = num / den
    for v, (part, _, _) in enumerate(labels):
        if part == 0:
            f = f + var(v)
    return GiventalModel(f, labels, model, partition)


def covering_model(a: int, d: int):
    """The index-one ``a``-to-1 covering of ``P^alpha``, ``alpha = (a-1)d``,
    as a degree ``ad`` hypersurface in ``P(1^(alpha+1), d)``."""
    if a < 2 or d < 1:
        raise ValueError("need a >= 2 and d >= 1")
    alpha = (a - 1) * d
    model = make_model((1,) * (alpha + 1) + (d,), (a * d,))
    last = alpha + 1
    partition = make_partition(model, [(0,), tuple(range(1, alpha + 2))],
                               distinguished=(0, last))
    return model, partition, givental_polynomial(model, partition)


def nice_partition(model: WeightedCIModel) -> NefPartition:
    for p in find_nef_partitions(model):
        if p.nice:
            return p
    raise NotNiceError(f"{model.spec()} has no nice nef-partition")


def _factorial_ratio(model, v) -> Fraction:
    num = factorial(model.index * v)
    for d in model.degrees:
        num *= factorial(d * v)
    den = 1
    for a in model.weights:
        den *= factorial(a * v)
    return Fraction(num, den)


def closed_form_period(model: WeightedCIModel, u: int) -> Fraction:
    """``prod_r (d_r u)! / prod_s (a_s u)!``; the coefficient of ``t^{d_0 u}``."""
    if u < 0:
        raise ValueError("u must be nonnegative")
    nice_partition(model)
    return _factorial_ratio(model, u)


def iseries(model: WeightedCIModel, n_terms: int) -> list:
    """Coefficients of ``t^0 .. t^{n_terms-1}``; zero off multiples of ``d_0``."""
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    nice_partition(model)
    d0 = model.index
    return [_factorial_ratio(model, e // d0) if e % d0 == 0 else Fraction(0)
            for e in range(n_terms)]


@dataclass(frozen=True)
class MatrixRow:
    label: str
    part: int
    weight_index: int | None
    weight: int
    entries: tuple

    def to_json(self):
        return {"label": self.label, "part": self.part, "weight": self.weight,
                "entries": [str(x) for x in self.entries]}


def dual_matrix(model: WeightedCIModel, partition: NefPartition) -> list:
    """Rows whose convex hull is the polar dual of the Newton polytope.

    Columns follow :func:`variable_labeling`.  Part ``i >= 1`` contributes
    ``i_X/a`` on each of its slot columns plus a row of ``-i_X/a_{i,0}`` across
    the whole block; every such row has ``-1`` in the ``I_0`` columns.  Each
    ``I_0`` slot contributes ``i_X/a - 1`` on its diagonal and ``-1`` elsewhere
    in that block.  With no equations (k = 0) the all ``-1`` row of the
    distinguished ``I_0`` element is added, since nothing else supplies it.
    """
    if not partition.nice:
        raise NotNiceError("dual matrix needs a nice partition")
    labels = variable_labeling(partition)
    n = len(labels)
    iX = Fraction(model.index)
    zero_cols = [v for v, (part, _, _) in enumerate(labels) if part == 0]
    rows = []

    def base():
        r = [Fraction(0)] * n
        for c in zero_cols:
            r[c] = Fraction(-1)
        return r

    for i in range(1, len(partition.parts)):
        cols = [v for v, (part, _, _) in enumerate(labels) if part == i]
        for v in cols:
            r = base()
            _, j, w = labels[v]
            r[v] = iX / w
            rows.append(MatrixRow(f"D_{i},{j}", i, j, w, tuple(r)))
        dist = partition.distinguished[i]
        w0 = partition.weights[dist]
        r = base()
        for v in cols:
            r[v] = -iX / w0
        rows.append(MatrixRow(f"D_{i},{dist}", i, dist, w0, tuple(r)))
    for v in zero_cols:
        r = base()
        _, j, w = labels[v]
        r[v] = iX / w - 1
        rows.append(MatrixRow(f"D_0,{j}", 0, j, w, tuple(r)))
    if len(partition.parts) == 1:
        dist = partition.distinguished[0]
        rows.append(MatrixRow(f"D_0,{dist}", 0, dist, 1, tuple(base())))
    return rows


def anticanonical_sections(model: WeightedCIModel) -> int:
    """``h^0(-K_X)`` for index one: the number of unit weights."""
    if model.index != 1:
        raise UnsupportedConfiguration(f"index {model.index} > 1 is not supported")
    return sum(1 for a in model.weights if a == 1)


def ambient_product(partition: NefPartition) -> tuple:
    """``(m_1, ..., m_k)`` with ``m_i = |I_i| - 1``: the toric ambient
    ``P^{m_1} x ... x P^{m_k}``."""
    return tuple(len(p) - 1 for p in partition.parts[1:])
