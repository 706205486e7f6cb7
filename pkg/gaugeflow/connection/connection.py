"""
Connections on semidiscrete principal bundles.

A connection is stored through its local expressions: for every chart a group-valued
1-form on the edges of that chart. Fiber points are group elements in the local
trivialization of a chart; the point (X, g) stands for ``g . s(X)``. With this
convention the connection between two fiber points of a chart is
``total_phi((X, g), (Y, h)) = h phi*(XY) g^-1``.
"""

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx
import numpy as np

from ..bundle.bundle import PrincipalBundle, Section, transition_apply
from ..bundle.fields import chart_complex, transform_local_value
from ..config.settings import get_settings
from ..forms.forms import GValuedForm
from ..groups.group import CircleGroup, GroupElement
from ..topology.complex import Simplex, SimplicialComplex
from ..utils.errors import InputError
from ..utils.logger import get_logger

logger = get_logger(__name__)

Edge = Tuple[int, int]
GaugeMap = Union[Section, GValuedForm]


@dataclass(frozen=True)
class Connection:
    """Local expressions ``phi*`` per chart"""

    bundle: PrincipalBundle
    local: Mapping[int, GValuedForm]

    def __post_init__(self) -> None:
        for index in range(len(self.bundle.charts)):
            form = self.local.get(index)
            if form is None:
                raise InputError(f"connection has no local expression on chart {index}")
            if form.degree != 1 or form.group != self.bundle.group:
                raise InputError(f"chart {index} needs a {self.bundle.group.name}-valued 1-form")
            edges = set(chart_complex(self.bundle, index).simplices(1))
            if set(form.values) != edges:
                raise InputError(f"local expression on chart {index} does not cover its edges")

    @property
    def group(self) -> Any:
        return self.bundle.group

    @property
    def base(self) -> SimplicialComplex:
        return self.bundle.base

    def chart_of(self, simplex: Sequence[int]) -> int:
        """First chart containing the simplex"""
        charts = self.bundle.charts_containing(simplex)
        if not charts:
            raise InputError(f"{tuple(simplex)} lies in no chart")
        return charts[0]

    def phi(self, x: int, y: int, chart: Optional[int] = None) -> GroupElement:
        """Local expression on the oriented edge XY"""
        if x == y:
            return self.group.identity()
        index = self.chart_of((x, y)) if chart is None else chart
        return self.local[index]((x, y))

    def transition_residual(self) -> float:
        """Largest mismatch of shared-edge values under the transition maps"""
        worst = 0.0
        for i, j in self.bundle.chart_pairs():
            shared = sorted(set(self.bundle.charts[i].key) & set(self.bundle.charts[j].key))
            for edge in itertools.combinations(shared, 2):
                moved = transition_apply(self.bundle, i, j, self.phi(*edge, chart=i), edge)
                worst = max(worst, self.group.distance_residual(moved, self.phi(*edge, chart=j)))
        return worst

    @classmethod
    def from_global(cls, bundle: PrincipalBundle, form: GValuedForm) -> "Connection":
        """
        Local expressions of one edge form on the base.

        Each edge is written in the frame of its first chart and carried to the other
        charts by the transition maps.
        """
        if form.degree != 1:
            raise InputError("a connection is a 1-form")
        local_values: Dict[int, Dict[Simplex, GroupElement]] = {
            i: {} for i in range(len(bundle.charts))
        }
        for edge in bundle.base.simplices(1):
            charts = bundle.charts_containing(edge)
            if not charts:
                continue
            root = charts[0]
            frame_at = {v: bundle.frame(root, v) for v in edge}
            value = transform_local_value(form(edge), edge, frame_at)
            local_values[root][edge] = value
            for other in charts[1:]:
                local_values[other][edge] = transition_apply(bundle, root, other, value, edge)
        return cls(
            bundle,
            {i: GValuedForm(1, bundle.group, values) for i, values in local_values.items()},
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group.spec.to_dict(),
            "charts": [
                {
                    "chart": list(self.bundle.charts[i].key),
                    "edges": [
                        {"edge": list(e), "value": self.group.to_json(self.local[i].values[e])}
                        for e in self.local[i].support()
                    ],
                }
                for i in sorted(self.local)
            ],
        }

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any], bundle: PrincipalBundle) -> "Connection":
        local = {}
        for entry in payload.get("charts", []):
            index = bundle.chart_index(entry["chart"])
            local[index] = GValuedForm(
                1,
                bundle.group,
                {
                    tuple(e["edge"]): bundle.group.from_json(e["value"])
                    for e in entry.get("edges", [])
                },
            )
        return cls(bundle, local)


def random_connection(
    bundle: PrincipalBundle,
    rng: np.random.Generator,
    scale: Optional[float] = None,
) -> Connection:
    """
    Random connection compatible with the transition maps of its first charts.

    Without ``scale`` edge values are uniform group elements; with it they are
    exponentials of Gaussian algebra elements of that scale.
    """
    group = bundle.group

    def draw(_: Simplex) -> GroupElement:
        if scale is None:
            return group.random_element(rng)
        return group.exp_map(group.random_algebra(rng, scale))

    form = GValuedForm.from_function(bundle.base, 1, group, draw)
    return Connection.from_global(bundle, form)


# Fiber points and type II simplices


@dataclass(frozen=True)
class FiberPoint:
    """Point ``g . s(X)`` written in the trivialization of one chart"""

    vertex: int
    coord: GroupElement
    chart: int


@dataclass(frozen=True)
class TypeIISimplex:
    """Fiber points over distinct base vertices, all in one chart"""

    points: Tuple[FiberPoint, ...]

    def __post_init__(self) -> None:
        vertices = [p.vertex for p in self.points]
        if len(set(vertices)) != len(vertices):
            raise InputError("type II simplices have one point per base vertex")
        if len({p.chart for p in self.points}) > 1:
            raise InputError("all points of a type II simplex share one chart")

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(p.vertex for p in self.points)

    @property
    def chart(self) -> int:
        return self.points[0].chart

    def point(self, vertex: int) -> FiberPoint:
        for p in self.points:
            if p.vertex == vertex:
                return p
        raise InputError(f"vertex {vertex} is not in the simplex")

    @classmethod
    def on_section(
        cls, conn: Connection, vertices: Sequence[int], chart: Optional[int] = None
    ) -> "TypeIISimplex":
        """All fiber coordinates at the identity"""
        index = conn.chart_of(vertices) if chart is None else chart
        return cls(
            tuple(FiberPoint(v, conn.group.identity(), index) for v in vertices)
        )


def total_phi(conn: Connection, p: FiberPoint, q: FiberPoint) -> GroupElement:
    """Connection value on the total-space edge from p to q"""
    if p.chart != q.chart:
        raise InputError("fiber points must be written in the same chart")
    if p.vertex == q.vertex:
        return conn.group.multiply(q.coord, p.coord.inv())
    if not {p.vertex, q.vertex} <= set(conn.bundle.charts[p.chart].key):
        raise InputError(f"vertices {p.vertex}, {q.vertex} are not in chart {p.chart}")
    return conn.group.product([q.coord, conn.phi(p.vertex, q.vertex, p.chart), p.coord.inv()])


def is_horizontal(conn: Connection, p: FiberPoint, q: FiberPoint) -> bool:
    return total_phi(conn, p, q).is_identity()


def horizontal_lift(conn: Connection, p: FiberPoint, vertex: int) -> FiberPoint:
    """The point over ``vertex`` joined to p by a horizontal edge"""
    coord = conn.group.multiply(p.coord, conn.phi(p.vertex, vertex, p.chart).inv())
    return FiberPoint(vertex, coord, p.chart)


def horizontal_projection(
    conn: Connection, sigma: TypeIISimplex, base: int
) -> TypeIISimplex:
    """Keep the point over ``base`` and lift every other vertex horizontally from it"""
    anchor = sigma.point(base)
    points = tuple(
        p if p.vertex == base else horizontal_lift(conn, anchor, p.vertex)
        for p in sigma.points
    )
    return TypeIISimplex(points)


# Parallel transport and holonomy


def walk_edges(vertices: Sequence[int]) -> List[Edge]:
    return [(a, b) for a, b in zip(vertices, vertices[1:])]


def parallel_transport(
    conn: Connection,
    path: Sequence[Edge],
    itinerary: Optional[Sequence[int]] = None,
    start_chart: Optional[int] = None,
    end_chart: Optional[int] = None,
) -> GroupElement:
    """
    Ordered product of local expressions along an edge path.

    ``itinerary`` names the chart used for each edge (first containing chart by
    default). Changing charts at a vertex V applies the vertex map ``zeta(V)``; the
    result maps the fiber over the start in ``start_chart`` to the fiber over the
    end in ``end_chart``.
    """
    group = conn.group
    if not path:
        return group.identity()
    edges = [tuple(e) for e in path]
    for (a, b), (c, d) in zip(edges, edges[1:]):
        if b != c:
            raise InputError(f"path is broken between {(a, b)} and {(c, d)}")
    charts = list(itinerary) if itinerary is not None else [conn.chart_of(e) for e in edges]
    if len(charts) != len(edges):
        raise InputError("itinerary needs one chart per edge")
    for edge, chart in zip(edges, charts):
        if not set(edge) <= set(conn.bundle.charts[chart].key):
            raise InputError(f"edge {edge} is not in chart {chart}")

    bundle = conn.bundle
    first = charts[0] if start_chart is None else start_chart
    transport = bundle.zeta(first, charts[0], edges[0][0])
    current = charts[0]
    for edge, chart in zip(edges, charts):
        if chart != current:
            transport = group.multiply(bundle.zeta(current, chart, edge[0]), transport)
            current = chart
        transport = group.multiply(conn.phi(edge[0], edge[1], chart), transport)
    last = current if end_chart is None else end_chart
    return group.multiply(bundle.zeta(current, last, edges[-1][1]), transport)


def simple_cycles_through(
    complex_: SimplicialComplex, vertex: int, max_length: int
) -> List[Tuple[int, ...]]:
    """
    Simple cycles of the 1-skeleton starting and ending at ``vertex``.

    Cycles have at least three edges and at most ``max_length``; each is listed once,
    in the direction whose second vertex is smaller than its last.
    """
    graph = complex_.skeleton_graph()
    if vertex not in graph:
        raise InputError(f"vertex {vertex} is not in the complex")
    cycles: List[Tuple[int, ...]] = []
    stack: List[Tuple[int, Tuple[int, ...]]] = [(vertex, (vertex,))]
    while stack:
        node, trail = stack.pop()
        for neighbour in sorted(graph.neighbors(node)):
            if neighbour == vertex and len(trail) >= 3:
                if trail[1] < trail[-1]:
                    cycles.append(trail + (vertex,))
            elif neighbour not in trail and len(trail) < max_length:
                stack.append((neighbour, trail + (neighbour,)))
    return sorted(cycles, key=lambda c: (len(c), c))


@dataclass
class HolonomySet:
    """Holonomy elements at a vertex, closed under products up to a depth"""

    vertex: int
    chart: int
    elements: List[GroupElement]
    cycles: List[Tuple[int, ...]] = field(default_factory=list)
    generators: List[GroupElement] = field(default_factory=list)

    def contains(self, g: GroupElement, tol: Optional[float] = None) -> bool:
        return any(g.close_to(h, tol) for h in self.elements)

    def summary(self) -> Dict[str, Any]:
        group = self.elements[0].group if self.elements else None
        result: Dict[str, Any] = {
            "vertex": self.vertex,
            "cycles": len(self.cycles),
            "distinct_elements": len(self.elements),
            "trivial": all(g.is_identity() for g in self.elements),
        }
        if isinstance(group, CircleGroup):
            result["angles"] = sorted(float(g.payload) for g in self.elements)
        return result


def holonomy_set(
    conn: Connection,
    vertex: int,
    max_length: int,
    product_depth: Optional[int] = None,
) -> HolonomySet:
    """Transports around simple cycles through ``vertex``, with products up to a depth"""
    depth = product_depth if product_depth is not None else get_settings().holonomy_product_depth
    group = conn.group
    chart = conn.chart_of((vertex,))
    cycles = simple_cycles_through(conn.base, vertex, max_length)

    generators = []
    for cycle in cycles:
        value = parallel_transport(conn, walk_edges(cycle), start_chart=chart, end_chart=chart)
        generators.extend([value, value.inv()])

    seen: Dict[Tuple[Any, ...], GroupElement] = {}

    def remember(g: GroupElement) -> bool:
        key = group.element_key(g)
        if key in seen:
            return False
        seen[key] = g
        return True

    remember(group.identity())
    frontier = [g for g in generators if remember(g)]
    for _ in range(max(depth, 1) - 1):
        fresh = []
        for g in frontier:
            for h in generators:
                product = group.multiply(g, h)
                if remember(product):
                    fresh.append(product)
        frontier = fresh
        if not frontier:
            break
    logger.info(
        f"[CONNECTION] Holonomy at {vertex}: {len(cycles)} cycles, {len(seen)} elements"
    )
    return HolonomySet(vertex, chart, list(seen.values()), cycles, generators)


# Flat connections and gauge transforms


def flat_connection(bundle: PrincipalBundle, section: Optional[Section] = None) -> Connection:
    """
    Connection for which the section is horizontal inside every chart.

    In chart i the edge XY gets ``s_i(Y)^-1 s_i(X)``; without a section every local
    expression is the identity.
    """
    group = bundle.group
    local = {}
    for index in range(len(bundle.charts)):
        values = {}
        for x, y in chart_complex(bundle, index).simplices(1):
            if section is None:
                values[(x, y)] = group.identity()
            else:
                values[(x, y)] = group.multiply(section(index, y).inv(), section(index, x))
        local[index] = GValuedForm(1, group, values)
    return Connection(bundle, local)


def spanning_tree_edges(complex_: SimplicialComplex, root: Optional[int] = None) -> Set[Edge]:
    """Breadth-first spanning forest of the 1-skeleton, as reference edges"""
    graph = complex_.skeleton_graph()
    tree: Set[Edge] = set()
    roots = [root] if root is not None else []
    for component in sorted(nx.connected_components(graph), key=min):
        start = roots[0] if roots and roots[0] in component else min(component)
        for a, b in nx.bfs_edges(graph, start, sort_neighbors=sorted):
            tree.add((min(a, b), max(a, b)))
    return tree


def cotree_edges(complex_: SimplicialComplex, root: Optional[int] = None) -> List[Edge]:
    """Edges off the spanning tree; each closes one fundamental cycle"""
    tree = spanning_tree_edges(complex_, root)
    return [e for e in complex_.simplices(1) if e not in tree]


def _closing_value(
    values: Mapping[Edge, GroupElement], a: int, b: int, c: int
) -> Optional[GroupElement]:
    """phi(ab) forced by a flat triangle abc: ``phi(cb) phi(ac)``"""

    def oriented(x: int, y: int) -> Optional[GroupElement]:
        if (x, y) in values:
            return values[(x, y)]
        if (y, x) in values:
            return values[(y, x)].inv()
        return None

    cb, ac = oriented(c, b), oriented(a, c)
    if cb is None or ac is None:
        return None
    return cb.group.multiply(cb, ac)


def flat_from_holonomy(
    bundle: PrincipalBundle,
    generators: Mapping[Edge, GroupElement],
    root: Optional[int] = None,
) -> Connection:
    """
    Flat connection in spanning-tree gauge with prescribed co-tree values.

    Tree edges get the identity, prescribed co-tree edges their value; the other
    co-tree edges are solved from flat triangles (identity where unconstrained).
    A prescription that leaves some triangle curved is rejected.
    """
    group = bundle.group
    base = bundle.base
    tree = spanning_tree_edges(base, root)
    values: Dict[Edge, GroupElement] = {e: group.identity() for e in tree}
    for (x, y), g in generators.items():
        key = (min(x, y), max(x, y))
        if key in tree:
            raise InputError(f"edge {key} lies on the spanning tree")
        if key not in base:
            raise InputError(f"edge {key} is not in the complex")
        values[key] = g if (x, y) == key else g.inv()

    pending = deque(base.simplices(2))
    unknown = [e for e in base.simplices(1) if e not in values]
    while unknown:
        progress = True
        while progress:
            progress = False
            for triangle in list(pending):
                missing = [e for e in itertools.combinations(triangle, 2) if e not in values]
                if len(missing) == 1:
                    a, b = missing[0]
                    c = next(v for v in triangle if v not in missing[0])
                    solved = _closing_value(values, a, b, c)
                    if solved is not None:
                        values[(a, b)] = solved
                        progress = True
                if len(missing) <= 1:
                    pending.remove(triangle)
        unknown = [e for e in base.simplices(1) if e not in values]
        if unknown:
            values[unknown[0]] = group.identity()

    for x, y, z in base.simplices(2):
        curvature = group.product([values[(x, z)].inv(), values[(y, z)], values[(x, y)]])
        if not curvature.is_identity():
            raise InputError(f"prescription is not flat on triangle {(x, y, z)}")
    logger.info(f"[CONNECTION] Flat connection from {len(generators)} co-tree values")
    return Connection.from_global(bundle, GValuedForm(1, group, values))


def _gauge_at(gauge: GaugeMap, chart: int, vertex: int) -> GroupElement:
    if isinstance(gauge, Section):
        return gauge(chart, vertex)
    return gauge((vertex,))


def gauge_transform_connection(conn: Connection, gauge: GaugeMap) -> Connection:
    """``phi'(XY) = F(Y) phi(XY) F(X)^-1`` in every chart"""
    local = {}
    for index, form in conn.local.items():
        chart = conn.bundle.charts[index]
        gauge_at = {v: _gauge_at(gauge, index, v) for v in chart.key}
        local[index] = GValuedForm(
            1,
            conn.group,
            {e: transform_local_value(form(e), e, gauge_at) for e in form.values},
        )
    return Connection(conn.bundle, local)


@dataclass
class GaugeMatch:
    """Gauge transform carrying one connection to another, with its residual"""

    gauge: GValuedForm
    residual: float


def gauge_between(
    first: Connection, second: Connection, root_value: Optional[GroupElement] = None
) -> GaugeMatch:
    """
    Gauge transform F with ``second = F(first)``, built along a spanning tree.

    F is fixed at the tree roots (identity unless ``root_value`` is given) and
    extended by ``F(Y) = phi2(XY) F(X) phi1(XY)^-1``; the residual measures how far
    the remaining edges are from matching.
    """
    group = first.group
    base = first.base
    graph = base.skeleton_graph()
    start = root_value if root_value is not None else group.identity()
    values: Dict[int, GroupElement] = {}
    for component in sorted(nx.connected_components(graph), key=min):
        origin = min(component)
        values[origin] = start
        for x, y in nx.bfs_edges(graph, origin, sort_neighbors=sorted):
            values[y] = group.product(
                [second.phi(x, y), values[x], first.phi(x, y).inv()]
            )
    gauge = GValuedForm(0, group, {(v,): g for v, g in values.items()})
    moved = gauge_transform_connection(first, gauge)
    residual = 0.0
    for x, y in base.simplices(1):
        residual = max(residual, group.distance_residual(moved.phi(x, y), second.phi(x, y)))
    return GaugeMatch(gauge, residual)
