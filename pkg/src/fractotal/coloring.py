"""Fractional total colorings: the covering LP, its exact solution and the
conversions between weight-based and interval-based colorings.

Two weight formulations share the :class:`WeightedColoring` type: a
*fractional k-coloring* has total mass ``k`` and covers every element at
least once, a *weighted α-coloring* has mass 1 and covers every element at
least ``α``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .graph import Graph
from .intervals import IntervalSet, as_rational
from .serialize import (
    element_from_str,
    element_to_str,
    interval_set_from_json,
    interval_set_to_json,
    q2s,
    s2q,
    tis_from_json,
    tis_to_json,
)
from .simplex import CoveringLP
from .total import (
    DEFAULT_ENUMERATION_BUDGET,
    TotalElement,
    enumerate_maximal_tis,
    extend_to_maximal,
    max_weight_tis,
    total_structure,
)

TIS = frozenset[TotalElement]


class ColoringError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class WeightedColoring:
    """Nonnegative rational weights on total independent sets of ``graph``."""

    graph: Graph
    weights: Mapping[TIS, Fraction]

    def __post_init__(self):
        ts = total_structure(self.graph)
        clean = {}
        for s, w in self.weights.items():
            w = as_rational(w)
            if w < 0:
                raise ColoringError("negative weight")
            if w == 0:
                continue
            mask = ts.mask(s)
            for el in s:
                if ts.conflict[ts.position[el]] & mask:
                    raise ColoringError("support set is not total independent")
            clean[frozenset(s)] = clean.get(frozenset(s), Fraction(0)) + w
        object.__setattr__(self, "weights", clean)

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def coverage_map(self) -> dict[TotalElement, Fraction]:
        cov = {el: Fraction(0) for el in total_structure(self.graph).elements}
        for s, w in self.weights.items():
            for el in s:
                cov[el] += w
        return cov

    def coverage(self, el: TotalElement) -> Fraction:
        return sum((w for s, w in self.weights.items() if el in s), Fraction(0))

    def min_coverage(self) -> Fraction:
        cov = self.coverage_map()
        return min(cov.values()) if cov else Fraction(0)

    def scaled(self, factor) -> WeightedColoring:
        factor = as_rational(factor)
        return WeightedColoring(self.graph, {s: w * factor for s, w in self.weights.items()})

    def ordered_support(self) -> list[tuple[TIS, Fraction]]:
        ts = total_structure(self.graph)
        return sorted(self.weights.items(), key=lambda kv: sorted(map(ts.sort_key, kv[0])))


@dataclass(frozen=True, eq=False)
class IntervalColoring:
    """Color sets ``c(x) ⊆ [0, ambient)`` for every total element."""

    graph: Graph
    ambient: Fraction
    colors: Mapping[TotalElement, IntervalSet] = field(default_factory=dict)

    def __getitem__(self, el: TotalElement) -> IntervalSet:
        return self.colors[el]

    def normalized(self) -> IntervalColoring:
        """Shrink every color set to its leftmost part of measure 1."""
        return IntervalColoring(
            self.graph,
            self.ambient,
            {el: s.prefix(1) if s.measure() > 1 else s for el, s in self.colors.items()},
        )


@dataclass(frozen=True, eq=False)
class LPCertificate:
    """Primal optimum and matching dual for the covering LP of ``graph``."""

    graph: Graph
    value: Fraction
    primal: Mapping[TIS, Fraction]
    dual: Mapping[TotalElement, Fraction]


@dataclass(frozen=True, eq=False)
class FractionalResult:
    value: Fraction
    coloring: WeightedColoring
    certificate: LPCertificate
    mode: str
    columns: int


class InfeasibleBounds(ColoringError):
    """No weighted coloring meets the bounds.

    ``dual`` prices every element so that each total independent set has
    price at most 1 while the bounds are priced above 1 (``bound_value``).
    """

    def __init__(self, dual: Mapping[TotalElement, Fraction], bound_value: Fraction):
        self.dual = dict(dual)
        self.bound_value = bound_value
        super().__init__(f"bounds need total mass {bound_value} > 1")


class Violation(NamedTuple):
    kind: str
    elements: tuple[TotalElement, ...]
    detail: str


def _solve_cover(g: Graph, demand: Mapping[TotalElement, Fraction], columns: list[TIS]):
    """Covering LP over ``columns`` plus the singleton sets (the starting basis)."""
    need = [el for el in total_structure(g).elements if demand.get(el, 0) > 0]
    lp = CoveringLP([demand[el] for el in need])
    for s in columns:
        lp.add_column([1 if el in s else 0 for el in need], 1)
    return lp, need, lp.solve()


def _lp_result(g: Graph, lp: CoveringLP, need, columns, sol):
    # extending a support set keeps the mass and only raises coverage, so the
    # reported optimum is supported on maximal sets
    primal: dict[TIS, Fraction] = {}
    singletons = [frozenset([el]) for el in need]
    for s, x in [*zip(singletons, lp.unit_values()), *zip(columns, sol.x)]:
        if x:
            s = extend_to_maximal(g, s)
            primal[s] = primal.get(s, Fraction(0)) + x
    dual = {el: y for el, y in zip(need, sol.y)}
    return sol.value, primal, dual


def _greedy_cover(g: Graph, need: Iterable[TotalElement]) -> list[TIS]:
    uncovered = set(need)
    columns = []
    while uncovered:
        s, _ = max_weight_tis(g, {el: Fraction(1) for el in uncovered})
        columns.append(s)
        uncovered -= s
    return columns


def _column_generation(g: Graph, demand: Mapping[TotalElement, Fraction]):
    need = [el for el in total_structure(g).elements if demand.get(el, 0) > 0]
    if not need:
        return Fraction(0), {}, {}, 0
    columns = _greedy_cover(g, need)
    lp, need, sol = _solve_cover(g, demand, columns)
    while True:
        s, price = max_weight_tis(g, dict(zip(need, sol.y)))
        if price <= 1:
            break
        columns.append(s)
        lp.add_column([1 if el in s else 0 for el in need], 1)
        sol = lp.solve()
    return (*_lp_result(g, lp, need, columns, sol), len(columns))


def fractional_total_chromatic_number(
    g: Graph, mode: str = "auto", budget: int | None = None
) -> FractionalResult:
    """Exact fractional total chromatic number with an optimal coloring.

    ``mode`` is ``"enumerate"`` (LP over all maximal total independent sets,
    refused above the budget) or ``"column-gen"``.  ``"auto"`` means column
    generation, which is much faster even on graphs small enough to enumerate.
    """
    budget = DEFAULT_ENUMERATION_BUDGET if budget is None else budget
    ts = total_structure(g)
    if mode == "auto":
        mode = "column-gen"
    demand = {el: Fraction(1) for el in ts.elements}
    if not ts.elements:
        value, primal, dual, ncols = Fraction(0), {}, {}, 0
    elif mode == "enumerate":
        columns = list(enumerate_maximal_tis(g, budget))
        lp, need, sol = _solve_cover(g, demand, columns)
        value, primal, dual = _lp_result(g, lp, need, columns, sol)
        ncols = len(columns)
    elif mode in ("column-gen", "column"):
        value, primal, dual, ncols = _column_generation(g, demand)
        mode = "column-gen"
    else:
        raise ValueError(f"unknown mode {mode!r}")
    cert = LPCertificate(g, value, primal, dual)
    return FractionalResult(value, WeightedColoring(g, primal), cert, mode, ncols)


def verify_certificate(cert: LPCertificate) -> list[str]:
    """Independent optimality check: primal cover, dual packing, equal values."""
    g = cert.graph
    problems = []
    try:
        w = WeightedColoring(g, cert.primal)
    except ColoringError as exc:
        return [str(exc)]
    if w.total() != cert.value:
        problems.append(f"primal mass {w.total()} != value {cert.value}")
    for el, c in w.coverage_map().items():
        if c < 1:
            problems.append(f"element {element_to_str(g, el)} covered only {c}")
    if any(y < 0 for y in cert.dual.values()):
        problems.append("negative dual")
    if sum(cert.dual.values(), Fraction(0)) != cert.value:
        problems.append("dual value differs from primal value")
    if cert.dual and max_weight_tis(g, cert.dual)[1] > 1:
        problems.append("dual is not feasible: some total independent set is priced above 1")
    return problems


def solve_weighted_coloring(
    g: Graph, bounds: Mapping[TotalElement, Fraction]
) -> WeightedColoring:
    """A weighted coloring of total mass 1 with ``w[x] >= bounds[x]`` for every x.

    Raises :class:`InfeasibleBounds` carrying a dual certificate when none exists.
    """
    demand = {el: as_rational(b) for el, b in bounds.items()}
    if any(b < 0 for b in demand.values()):
        raise ValueError("bounds must be nonnegative")
    value, primal, dual, _ = _column_generation(g, demand)
    if value > 1:
        raise InfeasibleBounds(dual, value)
    weights = dict(primal)
    slack = 1 - value
    if slack:
        if weights:
            top = max(weights, key=lambda s: (weights[s], sorted(map(total_structure(g).sort_key, s))))
        else:
            top = extend_to_maximal(g, ())
            weights[top] = Fraction(0)
        weights[top] += slack
    return WeightedColoring(g, weights)


def weighted_to_fractional(w: WeightedColoring, alpha) -> WeightedColoring:
    """Rescale a weighted α-coloring (mass 1) to a fractional 1/α-coloring."""
    alpha = as_rational(alpha)
    if alpha <= 0:
        raise ColoringError("alpha must be positive")
    if w.total() != 1:
        raise ColoringError(f"weighted coloring has mass {w.total()}, not 1")
    low = w.min_coverage()
    if low < alpha:
        raise ColoringError(f"coverage {low} below alpha {alpha}")
    return w.scaled(1 / alpha)


def fractional_to_weighted(w: WeightedColoring) -> tuple[WeightedColoring, Fraction]:
    """Normalize a fractional k-coloring to mass 1; returns it with α = 1/k."""
    k = w.total()
    if k <= 0:
        raise ColoringError("empty coloring")
    return w.scaled(1 / k), 1 / k


def weights_to_interval_assignment(w: WeightedColoring, ambient=None) -> IntervalColoring:
    """Stack the support sets as consecutive intervals of length ``w(I)``."""
    k = w.total() if ambient is None else as_rational(ambient)
    if w.total() > k:
        raise ColoringError(f"mass {w.total()} exceeds ambient {k}")
    low = w.min_coverage()
    if w.coverage_map() and low < 1:
        raise ColoringError(f"some element is covered only {low}")
    spans: dict[TotalElement, list] = {el: [] for el in total_structure(w.graph).elements}
    t = Fraction(0)
    for s, weight in w.ordered_support():
        for el in s:
            spans[el].append((t, t + weight))
        t += weight
    return IntervalColoring(w.graph, k, {el: IntervalSet(sp) for el, sp in spans.items()})


def verify_interval_coloring(g: Graph, c: IntervalColoring) -> list[Violation]:
    """Every violation of: μ(c(x)) >= 1, c(x) ⊆ [0, k), disjointness on T(G)."""
    ts = total_structure(g)
    out = []
    ambient = IntervalSet.span(0, c.ambient) if c.ambient > 0 else IntervalSet()
    for el in ts.elements:
        s = c.colors.get(el)
        if s is None:
            out.append(Violation("missing", (el,), "no color set"))
            continue
        if s.measure() < 1:
            out.append(Violation("measure", (el,), f"measure {s.measure()} < 1"))
        if not s.issubset(ambient):
            out.append(Violation("ambient", (el,), f"not contained in [0, {c.ambient})"))
    for el in c.colors:
        if el not in ts.position:
            out.append(Violation("unknown", (el,), "element not in graph"))
    for p, x in enumerate(ts.elements):
        mask = ts.conflict[p] >> (p + 1)
        q = p + 1
        while mask:
            if mask & 1:
                y = ts.elements[q]
                if x in c.colors and y in c.colors:
                    common = c.colors[x] & c.colors[y]
                    if common:
                        out.append(Violation("overlap", (x, y), f"share {common}"))
            mask >>= 1
            q += 1
    return out


def describe_violation(g: Graph, v: Violation) -> str:
    names = ", ".join(element_to_str(g, el) for el in v.elements)
    return f"{v.kind} [{names}]: {v.detail}"


# JSON ----------------------------------------------------------------------


def interval_coloring_to_json(c: IntervalColoring) -> dict:
    g = c.graph
    return {
        "ambient": q2s(c.ambient),
        "colors": {element_to_str(g, el): interval_set_to_json(s) for el, s in c.colors.items()},
    }


def interval_coloring_from_json(g: Graph, data) -> IntervalColoring:
    return IntervalColoring(
        g,
        s2q(data["ambient"]),
        {element_from_str(g, k): interval_set_from_json(v) for k, v in data["colors"].items()},
    )


def weighted_coloring_to_json(w: WeightedColoring) -> dict:
    return {
        "total": q2s(w.total()),
        "weights": [
            {"set": tis_to_json(w.graph, s), "weight": q2s(x)} for s, x in w.ordered_support()
        ],
    }


def weighted_coloring_from_json(g: Graph, data) -> WeightedColoring:
    return WeightedColoring(
        g, {tis_from_json(g, item["set"]): s2q(item["weight"]) for item in data["weights"]}
    )


def certificate_to_json(cert: LPCertificate) -> dict:
    g = cert.graph
    ts = total_structure(g)
    return {
        "value": q2s(cert.value),
        "primal": weighted_coloring_to_json(WeightedColoring(g, cert.primal))["weights"],
        "dual": {
            element_to_str(g, el): q2s(y)
            for el, y in sorted(cert.dual.items(), key=lambda kv: ts.sort_key(kv[0]))
        },
    }


def certificate_from_json(g: Graph, data) -> LPCertificate:
    primal = {tis_from_json(g, item["set"]): s2q(item["weight"]) for item in data["primal"]}
    dual = {element_from_str(g, k): s2q(v) for k, v in data["dual"].items()}
    return LPCertificate(g, s2q(data["value"]), primal, dual)
