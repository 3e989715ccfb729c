"""Blow-up bookkeeping for the compactified pencil of a Givental model.

For an index-one model with a nice partition, the family ``{f = t}`` is
compactified in ``T = P^{m_1} x ... x P^{m_k}``.  Its central fiber is the
union of hyperplane sections ``H_i`` taken with multiplicity ``d_i``; the
fiber over infinity is the toric boundary, the divisor of weight ``a`` taken
with multiplicity ``a``.  Base strata are the intersections of the central
component with boundary divisors.  Resolving the base locus and contracting
the non-reduced boundary divisors gives the counts reported here.

Full resolution bookkeeping is implemented for a single equation (``k = 1``)
in dimension 2 and 3; the fiber over infinity is counted in any dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from lgcompact.errors import NotNiceError, UnsupportedConfiguration
from lgcompact.laurent import newton_polytope
from lgcompact.polytope import integral_boundary_points, polar_dual
from lgcompact.wci import (
    NefPartition,
    WeightedCIModel,
    anticanonical_sections,
    givental_polynomial,
)

POINT_ON_SURFACE = "point-on-surface"
CURVE_ON_THREEFOLD = "curve-on-threefold"
POINT_ON_THREEFOLD = "point-on-threefold"

DYNKIN_ARMS = {
    (2, 2, 2): "E6~",
    (3, 3, 1): "E7~",
    (5, 2, 1): "E8~",
}

HODGE_ASSUMPTION = "central fiber is the only reducible fiber"


@dataclass(frozen=True)
class Component:
    id: str
    multiplicity: int


@dataclass(frozen=True)
class BaseStratum:
    kind: str
    label: str
    central: str
    infinity: tuple
    central_mult: int
    infinity_mults: tuple

    def __post_init__(self):
        if self.central_mult < 1 or any(m < 1 for m in self.infinity_mults):
            raise ValueError("multiplicities must be positive")
        if not self.infinity:
            raise ValueError("a stratum lies on at least one boundary divisor")


@dataclass(frozen=True)
class PencilModel:
    ambient: tuple
    central: tuple
    infinity: tuple
    strata: tuple
    class_defects: tuple

    @property
    def ambient_dim(self) -> int:
        return sum(self.ambient)

    @property
    def degree(self) -> int:
        return sum(c.multiplicity for c in self.central)

    @property
    def counting_supported(self) -> bool:
        return bool(self.strata)

    def infinity_component(self, cid) -> Component:
        return next(c for c in self.infinity if c.id == cid)

    def to_json(self):
        return {
            "ambient": list(self.ambient),
            "central": [{"id": c.id, "mult": c.multiplicity} for c in self.central],
            "infinity": [{"id": c.id, "mult": c.multiplicity} for c in self.infinity],
            "strata": [{"kind": s.kind, "label": s.label, "central_mult": s.central_mult,
                        "infinity_mults": list(s.infinity_mults)} for s in self.strata],
            "class_defects": list(self.class_defects),
        }


def _require_index_one(model):
    if model.index != 1:
        raise UnsupportedConfiguration(
            f"pencil bookkeeping needs index one, got index {model.index}")


def compactified_pencil(model: WeightedCIModel, partition: NefPartition) -> PencilModel:
    _require_index_one(model)
    if not partition.nice:
        raise NotNiceError("pencil needs a nice partition")
    k = len(partition.parts) - 1
    single = k == 1
    central, infinity, defects = [], [], []
    for i in range(1, k + 1):
        central.append(Component("H" if single else f"H{i}", partition.part_degree(i)))
        members = (partition.distinguished[i],) + partition.slots(i)
        for s, j in enumerate(members):
            a = partition.weights[j]
            infinity.append(Component(f"D{s}" if single else f"D{i}.{s}", a))
            defects.append(a - 1)
    ambient = tuple(len(p) - 1 for p in partition.parts[1:])
    dim = sum(ambient)
    strata = []
    if single and dim in (2, 3):
        H = central[0]
        for D in infinity:
            kind = POINT_ON_SURFACE if dim == 2 else CURVE_ON_THREEFOLD
            label = f"p_{D.id[1:]}" if dim == 2 else f"B_{D.id[1:]}"
            strata.append(BaseStratum(kind, label, H.id, (D.id,), H.multiplicity,
                                      (D.multiplicity,)))
        if dim == 3:
            for D1, D2 in combinations(infinity, 2):
                pair = sorted([D1, D2], key=lambda c: -c.multiplicity)
                strata.append(BaseStratum(
                    POINT_ON_THREEFOLD, f"P_{D1.id[1:]}{D2.id[1:]}", H.id,
                    tuple(c.id for c in pair), H.multiplicity,
                    tuple(c.multiplicity for c in pair)))
    return PencilModel(ambient, tuple(central), tuple(infinity), tuple(strata),
                       tuple(defects))


# ---------------------------------------------------------------------------
# local counts


def curve_stratum_count(M: int, m: int) -> tuple:
    """Blow-ups over a codimension-2 base stratum where the central fiber has
    multiplicity ``M`` and the fiber over infinity multiplicity ``m``.

    Returns ``(blowups, central_exceptionals)``: ``M/m`` blow-ups, of which all
    but the last (horizontal) exceptional divisor lie in the central fiber.
    """
    if m < 1 or M < 1:
        raise ValueError("multiplicities must be positive")
    if M % m:
        raise UnsupportedConfiguration(f"multiplicity {m} does not divide {M}")
    b = M // m
    return b, b - 1


def point_stratum_count_threefold(M: int, p: int, q: int = 1) -> int:
    """Central exceptional divisors over a point ``H ∩ D ∩ D'`` of a threefold
    beyond those counted along the two curves through it.

    Locally the pencil is ``mu z^M = lambda x^p y``.  Resolving the ``(M, p)``
    curve first leaves exceptional divisors ``E_s`` (s = 1..M/p-1) of central
    multiplicity ``M - s p``, each meeting the second divisor in a new curve
    with infinity multiplicity 1; those curves contribute ``M - s p - 1``
    each.  For ``p = 1`` this is ``binom(M-1, 2)``.
    """
    if q != 1:
        raise UnsupportedConfiguration(
            "points where both boundary divisors are non-reduced are not handled")
    if p < 1 or M % p:
        raise UnsupportedConfiguration(f"multiplicity {p} does not divide {M}")
    return sum(M - s * p - 1 for s in range(1, M // p))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class DualGraph:
    nodes: tuple  # (id, multiplicity)
    edges: tuple  # (id, id)

    def to_dot(self, name="central") -> str:
        lines = [f"graph {name} {{"]
        for nid, mult in self.nodes:
            lines.append(f'  "{nid}" [label="{nid} ({mult})"];')
        for a, b in self.edges:
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def degree(self, nid) -> int:
        return sum(1 for e in self.edges if nid in e)


@dataclass(frozen=True)
class CentralReport:
    components: int
    breakdown: tuple  # (stratum label, count)
    totals: tuple  # strict transform, curve strata, points on non-reduced, points on reduced
    arms: tuple | None = None
    adjacency: DualGraph | None = None
    dynkin_label: str | None = None

    def to_json(self):
        out = {
            "components": self.components,
            "breakdown": [{"stratum": s, "count": c} for s, c in self.breakdown],
            "totals": list(self.totals),
        }
        if self.arms is not None:
            out["arms"] = list(self.arms)
            out["dynkin"] = self.dynkin_label
        return out


def central_fiber_report(pencil: PencilModel) -> CentralReport:
    """Components of the central fiber after resolving every base stratum."""
    if not pencil.counting_supported:
        raise UnsupportedConfiguration(
            f"central fiber counting needs one equation in dimension 2 or 3 "
            f"(ambient {pencil.ambient})")
    H = pencil.central[0]
    breakdown = [("strict transform", 1)]
    curves = pts_multiple = pts_reduced = 0
    arms = []
    for s in pencil.strata:
        if s.kind in (POINT_ON_SURFACE, CURVE_ON_THREEFOLD):
            _, n = curve_stratum_count(s.central_mult, s.infinity_mults[0])
            curves += n
            if s.kind == POINT_ON_SURFACE:
                arms.append((s, n))
        else:
            p, q = s.infinity_mults
            n = point_stratum_count_threefold(s.central_mult, p, q)
            if p > 1:
                pts_multiple += n
            else:
                pts_reduced += n
        breakdown.append((s.label, n))
    total = 1 + curves + pts_multiple + pts_reduced
    totals = (1, curves, pts_multiple, pts_reduced)
    if pencil.ambient_dim != 2:
        return CentralReport(total, tuple(breakdown), totals)
    nodes = [(H.id, H.multiplicity)]
    edges = []
    for s, n in arms:
        m = s.infinity_mults[0]
        prev = H.id
        for t in range(1, n + 1):
            nid = f"E{s.infinity[0][1:]}.{t}"
            nodes.append((nid, s.central_mult - t * m))
            edges.append((prev, nid))
            prev = nid
    arm_lengths = tuple(sorted((n for _, n in arms), reverse=True))
    return CentralReport(total, tuple(breakdown), totals, arm_lengths,
                         DualGraph(tuple(nodes), tuple(edges)),
                         DYNKIN_ARMS.get(arm_lengths))


@dataclass(frozen=True)
class InfinityReport:
    components: int
    surviving: tuple
    contracted: tuple
    blowups: tuple  # (component id, number of blow-ups over its base stratum)
    singular: bool | None
    singularity: str | None

    def to_json(self):
        return {
            "components": self.components,
            "surviving": list(self.surviving),
            "contracted": list(self.contracted),
            "singular": self.singular,
            "singularity": self.singularity,
        }


def infinity_fiber_report(pencil: PencilModel, model: WeightedCIModel) -> InfinityReport:
    """Reduced boundary divisors survive; non-reduced ones are contracted after
    their base stratum is resolved.

    A single contracted divisor in dimension ``n >= 3`` resolved by ``b``
    blow-ups goes down to a cyclic quotient point ``1/(b-1)(1,...,1)``, smooth
    iff ``b = 2``.  Contractions on surfaces are smooth.  Several contracted
    divisors in dimension >= 3 leave the singularity undetermined.
    """
    _require_index_one(model)
    surviving = tuple(c.id for c in pencil.infinity if c.multiplicity == 1)
    contracted = tuple(c.id for c in pencil.infinity if c.multiplicity > 1)
    M = pencil.central[0].multiplicity if len(pencil.central) == 1 else None
    blowups = []
    for cid in contracted:
        s = pencil.infinity_component(cid).multiplicity
        blowups.append((cid, curve_stratum_count(M, s)[0] if M else None))
    dim = pencil.ambient_dim
    singular, kind = False, None
    if dim >= 3 and contracted:
        if len(contracted) == 1 and blowups[0][1] is not None:
            b = blowups[0][1]
            singular = b > 2
            if singular:
                kind = f"1/{b - 1}(" + ",".join("1" * dim) + ")"
        else:
            singular = None
    return InfinityReport(len(surviving), surviving, contracted, tuple(blowups),
                          singular, kind)


def kappa(central: CentralReport) -> int:
    """Components of reducible fibers minus their number, with the central
    fiber the only reducible one."""
    return central.components - 1


def hodge_target(dim: int, hodge_number: int) -> int:
    """Expected kappa: ``h^{1,n-1}`` for n >= 3, ``h^{1,1} - 1`` for surfaces."""
    return hodge_number - 1 if dim == 2 else hodge_number


@dataclass(frozen=True)
class ComponentsVerdict:
    infinity_count: int
    boundary_points: int
    sections_minus_one: int

    @property
    def routes(self) -> tuple:
        return (self.infinity_count, self.boundary_points, self.sections_minus_one)

    @property
    def pairwise(self) -> dict:
        r = self.routes
        return {"infinity=boundary": r[0] == r[1], "infinity=sections": r[0] == r[2],
                "boundary=sections": r[1] == r[2]}

    @property
    def holds(self) -> bool:
        return len(set(self.routes)) == 1

    def to_json(self):
        return {"routes": list(self.routes), "pairwise": self.pairwise, "holds": self.holds}


def verify_conjecture_components(model: WeightedCIModel,
                                 partition: NefPartition) -> ComponentsVerdict:
    """Count the fiber over infinity three ways: by the blow-up bookkeeping,
    by boundary lattice points of the dual of the Newton polytope, and as
    ``h^0(-K) - 1``."""
    _require_index_one(model)
    pencil = compactified_pencil(model, partition)
    inf = infinity_fiber_report(pencil, model)
    f = givental_polynomial(model, partition).polynomial
    nabla = polar_dual(newton_polytope(f))
    return ComponentsVerdict(inf.components, len(integral_boundary_points(nabla)),
                             anticanonical_sections(model) - 1)


@dataclass(frozen=True)
class HodgeVerdict:
    kappa: int
    expected: int
    dim: int
    assumption: str = HODGE_ASSUMPTION
    note: str | None = None

    @property
    def holds(self) -> bool:
        return self.kappa == self.expected

    def to_json(self):
        out = {"kappa": self.kappa, "expected": self.expected, "holds": self.holds,
               "assumption": self.assumption}
        if self.note:
            out["note"] = self.note
        return out


SURFACE_NOTE = ("surface target is h^{1,1} - 1; the normalization "
                "h_pr^{1,1} = h^{1,1} + 1 does not match these counts")


def verify_conjecture_hodge(model: WeightedCIModel, h_input: int,
                            partition: NefPartition | None = None) -> HodgeVerdict:
    """Compare kappa of the central fiber with the expected Hodge number
    ``h_input`` (already normalized, see :func:`hodge_target`)."""
    if partition is None:
        from lgcompact.wci import nice_partition
        partition = nice_partition(model)
    central = central_fiber_report(compactified_pencil(model, partition))
    return HodgeVerdict(kappa(central), h_input, model.dim,
                        note=SURFACE_NOTE if model.dim == 2 else None)


# ---------------------------------------------------------------------------
# the toric picture for coverings


def covering_fan_rays(a: int, d: int) -> list:
    """Ray generators ``v_0..v_alpha, u_1..u_a`` of the toric blow-up of
    ``P^alpha`` along the distinguished stratum, as ``(label, vector)``.

    Checks ``(a-1) v_0 = u_a + v_2 + ... + v_alpha`` before returning.
    """
    if a < 2 or d < 1:
        raise ValueError("need a >= 2 and d >= 1")
    alpha = (a - 1) * d
    if alpha < 2:
        raise ValueError("the ray picture needs alpha = (a-1)d >= 2")
    rays = []
    for i in range(alpha):
        e = [0] * alpha
        e[i] = 1
        rays.append((f"v_{i}", tuple(e)))
    rays.append((f"v_{alpha}", (-1,) * alpha))
    for i in range(1, a + 1):
        rays.append((f"u_{i}", (i, 1) + (0,) * (alpha - 2)))
    vec = dict(rays)
    lhs = tuple((a - 1) * x for x in vec["v_0"])
    rhs = list(vec[f"u_{a}"])
    for i in range(2, alpha + 1):
        rhs = [x + y for x, y in zip(rhs, vec[f"v_{i}"])]
    if lhs != tuple(rhs):
        raise AssertionError("blow-down relation failed")
    return rays


@dataclass(frozen=True)
class FlopVerdict:
    a: int
    d: int
    hyperplane: tuple
    values: dict = field(compare=False)
    members: tuple
    expected: tuple
    obstructed: bool
    reason: str

    def to_json(self):
        return {"a": self.a, "d": self.d,
                "hyperplane": [str(c) for c in self.hyperplane],
                "values": {k: str(v) for k, v in self.values.items()},
                "members": list(self.members), "expected": list(self.expected),
                "obstructed": self.obstructed, "reason": self.reason}


def flop_obstruction(a: int, d: int) -> FlopVerdict:
    """Evaluate the affine functional
    ``alpha/(a-1) e_1 + (a - alpha a - 1)/(a-1) e_2 + e_3 + ... + e_alpha``
    on every ray.  If exactly the rays spanning the cone of the contracted
    point reach value 1, no torus-invariant flop is possible there."""
    rays = covering_fan_rays(a, d)
    alpha = (a - 1) * d
    c = (Fraction(alpha, a - 1), Fraction(a - alpha * a - 1, a - 1)) + (Fraction(1),) * (alpha - 2)
    values = {label: sum(x * y for x, y in zip(c, v)) for label, v in rays}
    members = tuple(label for label, _ in rays if values[label] == 1)
    expected = tuple(f"v_{i}" for i in range(2, alpha + 1)) + (f"u_{a}",)
    if a <= 2:
        return FlopVerdict(a, d, c, values, members, expected, False,
                           "a = 2: the contracted point is smooth")
    if set(members) != set(expected):
        extra = sorted(set(members) - set(expected))
        return FlopVerdict(a, d, c, values, members, expected, False,
                           f"certificate fails: {', '.join(extra)} also on the hyperplane")
    return FlopVerdict(a, d, c, values, members, expected, True,
                       "only the cone generators lie on the hyperplane")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiberReport:
    model: WeightedCIModel
    pencil: PencilModel
    infinity: InfinityReport
    central: CentralReport | None
    conjecture1: ComponentsVerdict
    conjecture2: HodgeVerdict | None

    def to_json(self):
        out = {
            "model": self.model.to_json(),
            "infinity": self.infinity.to_json(),
            "central": self.central.to_json() if self.central else None,
            "conjecture1": self.conjecture1.to_json(),
            "conjecture2": self.conjecture2.to_json() if self.conjecture2 else None,
        }
        return out


def fiber_report(model: WeightedCIModel, partition: NefPartition,
                 hodge_expected: int | None = None) -> FiberReport:
    pencil = compactified_pencil(model, partition)
    inf = infinity_fiber_report(pencil, model)
    central = central_fiber_report(pencil) if pencil.counting_supported else None
    c1 = verify_conjecture_components(model, partition)
    c2 = None
    if central is not None and hodge_expected is not None:
        c2 = HodgeVerdict(kappa(central), hodge_expected, model.dim,
                          note=SURFACE_NOTE if model.dim == 2 else None)
    return FiberReport(model, pencil, inf, central, c1, c2)
