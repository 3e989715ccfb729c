"""Named models with reference values, and the model-spec mini-language.

A model spec is one of:

* a catalog name: ``dp1``, ``dp2``, ``dp3``, ``covering:2,3``, ...
* ``covering:a,d`` for any index-one covering
* ``wci:w1,...,wN;d1,...,dk`` (the ``wci:`` prefix is optional)

Every expected value carries a provenance string:

``published:worked-example``  value printed in the literature for this model
``derived:closed-form``       computed from the factorial formula
``derived:ledger``            follows from the blow-up bookkeeping
``standard:hodge``            classical Hodge number of the Fano variety
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from lgcompact.wci import (
    NefPartition,
    WeightedCIModel,
    covering_model,
    make_model,
    nice_partition,
)


@dataclass(frozen=True)
class Expected:
    value: object
    provenance: str

    def to_json(self):
        return {"value": _jsonable(self.value), "provenance": self.provenance}


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, (list, tuple, frozenset, set)):
        items = [_jsonable(x) for x in v]
        return sorted(items, key=str) if isinstance(v, (set, frozenset)) else items
    return v


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    model: WeightedCIModel
    preferred_partition: NefPartition
    expected: dict = field(default_factory=dict)
    equivalent_to: str | None = None
    description: str = ""

    def get(self, key, default=None):
        e = self.expected.get(key)
        return e.value if e is not None else default

    def to_json(self):
        return {
            "name": self.name,
            "description": self.description,
            "model": self.model.to_json(),
            "partition": self.preferred_partition.to_json(),
            "equivalent_to": self.equivalent_to,
            "expected": {k: v.to_json() for k, v in self.expected.items()},
        }


def _frac_vertices(rows):
    return frozenset(tuple(Fraction(x) for x in r) for r in rows)


def _covering_dual(alpha, d):
    rows = []
    for i in range(alpha):
        e = [0] * alpha
        e[i] = 1
        rows.append(e)
    rows.append([Fraction(-1, d)] * alpha)
    return _frac_vertices(rows)


PUB = "published:worked-example"
CF = "derived:closed-form"
LEDGER = "derived:ledger"
HODGE = "standard:hodge"


def _build():
    entries = []
    for name, w, deg, h11, dual, prov, arms, label, inf, desc in [
        ("dp3", (1, 1, 1, 1), 3, 7, [(1, 0), (0, 1), (-1, -1)], CF,
         (2, 2, 2), "E6~", 3, "cubic surface"),
        ("dp2", (1, 1, 1, 2), 4, 8, [(1, 0), (0, 1), ("-1/2", "-1/2")], PUB,
         (3, 3, 1), "E7~", 2, "del Pezzo surface of degree 2"),
        ("dp1", (1, 1, 2, 3), 6, 9, [(1, 0), (0, "1/2"), ("-1/3", "-1/3")], PUB,
         (5, 2, 1), "E8~", 1, "del Pezzo surface of degree 1"),
    ]:
        model = make_model(w, (deg,))
        entries.append(CatalogEntry(name, model, nice_partition(model), {
            "dual_vertices": Expected(_frac_vertices(dual), prov),
            "infinity_components": Expected(inf, LEDGER),
            "central_components": Expected(1 + sum(arms), LEDGER),
            "arms": Expected(arms, LEDGER),
            "dynkin": Expected(label, PUB),
            "hodge_number": Expected(h11, HODGE),
            "singular_at_infinity": Expected(False, LEDGER),
        }, description=desc))
    dp3_periods = [1, 6, 90, 1680]
    entries[0].expected["periods"] = Expected(dp3_periods, CF)
    entries[1].expected["periods"] = Expected([1, 12, 420], CF)

    coverings = [
        # (a, d, infinity, central, breakdown, hodge, singularity, description)
        (2, 3, 3, 53, (1, 16, 6, 30), 52, None, "sextic double solid"),
        (4, 1, 4, 31, (1, 12, 0, 18), 30, None, "quartic threefold"),
        (3, 2, 4, None, None, None, "1/2(1,1,1,1)", "triple cover of P^4 in degree 6"),
        (2, 2, 2, 8, None, 8, None, "double cover of P^2 in degree 4"),
    ]
    for a, d, inf, central, breakdown, hodge, sing, desc in coverings:
        model, partition, _ = covering_model(a, d)
        alpha = (a - 1) * d
        exp = {
            "dual_vertices": Expected(_covering_dual(alpha, d), PUB),
            "infinity_components": Expected(inf, LEDGER),
            "singular_at_infinity": Expected(sing is not None, LEDGER),
        }
        if sing:
            exp["singularity"] = Expected(sing, LEDGER)
        if central is not None:
            exp["central_components"] = Expected(central, LEDGER)
        if breakdown is not None:
            exp["central_breakdown"] = Expected(breakdown, LEDGER)
        if hodge is not None:
            exp["hodge_number"] = Expected(hodge, PUB if (a, d) == (2, 3) else HODGE)
        if alpha >= 2:
            exp["flop_obstructed"] = Expected((a, d) == (3, 2), LEDGER)
        if (a, d) == (2, 3):
            exp["periods"] = Expected([1, 120], CF)
        entries.append(CatalogEntry(
            f"covering:{a},{d}", model, partition, exp,
            equivalent_to="dp2" if (a, d) == (2, 2) else None, description=desc))
    return {e.name: e for e in entries}


CATALOG = _build()

ALIASES = {
    "sextic-double-solid": "covering:2,3",
    "quartic-threefold": "covering:4,1",
    "cubic-surface": "dp3",
}

_COVERING = re.compile(r"^covering:\s*(\d+)\s*,\s*(\d+)\s*$")
_WCI = re.compile(r"^(?:wci:)?\s*([\d,\s]+);([\d,\s]*)$")


def is_model_spec(text: str) -> bool:
    t = text.strip()
    return (t in CATALOG or t in ALIASES or bool(_COVERING.match(t))
            or t.startswith("wci:"))


def resolve(text: str):
    """Return ``(model, partition, entry)``; ``entry`` is None off-catalog."""
    t = text.strip()
    t = ALIASES.get(t, t)
    if t in CATALOG:
        e = CATALOG[t]
        return e.model, e.preferred_partition, e
    m = _COVERING.match(t)
    if m:
        a, d = int(m.group(1)), int(m.group(2))
        model, partition, _ = covering_model(a, d)
        return model, partition, CATALOG.get(f"covering:{a},{d}")
    model = parse_wci(t)
    for e in CATALOG.values():
        if e.model == model and e.equivalent_to is None:
            return model, e.preferred_partition, e
    return model, nice_partition(model), None


def parse_wci(text: str, min_dim: int = 1) -> WeightedCIModel:
    """``"wci:1,1,1,2;4"`` or ``"1,1,1,2;4"`` -> model."""
    m = _WCI.match(text.strip())
    if not m:
        raise ValueError(f"cannot read model spec {text!r}")
    weights = [int(x) for x in m.group(1).split(",") if x.strip()]
    degrees = [int(x) for x in m.group(2).split(",") if x.strip()]
    return make_model(weights, degrees, min_dim=min_dim)
