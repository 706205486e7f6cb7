"""
Curvature, covariant derivatives, Bianchi residuals and torsion.

Curvature at a base point X of a triangle XYZ is the transport around its boundary,
``R|_X(XYZ) = phi(ZX) phi(YZ) phi(XY)``. Covariant derivatives evaluate the plain
differential of an equivariant form on the horizontal projection of a simplex; the
local formulas in this module reproduce the same numbers without building fiber
points. Topological corrections enter only through torsion.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Any, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..bundle.bundle import PrincipalBundle, obstruction_form
from ..config.settings import get_settings
from ..forms.forms import GValuedForm, VValuedForm
from ..groups.group import GroupElement
from ..groups.homotopy import beta_correction, homotopy_group
from ..topology.complex import OrientedSimplex, boundary_faces
from ..utils.errors import InputError, UnsupportedError
from ..utils.logger import get_logger
from .connection import (
    Connection,
    FiberPoint,
    TypeIISimplex,
    horizontal_projection,
    total_phi,
)

logger = get_logger(__name__)

LocalForm = Union[VValuedForm, GValuedForm]


def _rotate_to(ordering: Sequence[int], base: Optional[int]) -> Tuple[int, ...]:
    """Cyclic rotation of a triangle so that it starts at ``base``"""
    ordered = tuple(ordering)
    if base is None or base == ordered[0]:
        return ordered
    if base not in ordered:
        raise InputError(f"base vertex {base} is not in {ordered}")
    start = ordered.index(base)
    return ordered[start:] + ordered[:start]


def curvature(
    conn: Connection,
    triangle: Sequence[int],
    base: Optional[int] = None,
    chart: Optional[int] = None,
) -> GroupElement:
    """``R|_X(XYZ) = phi(ZX) phi(YZ) phi(XY)`` on the triangle rotated to start at X"""
    if len(triangle) != 3:
        raise InputError("curvature is evaluated on triangles")
    x, y, z = _rotate_to(triangle, base)
    index = conn.chart_of((x, y, z)) if chart is None else chart
    return conn.group.product(
        [conn.phi(z, x, index), conn.phi(y, z, index), conn.phi(x, y, index)]
    )


def scalar_curvature(
    conn: Connection, triangle: Sequence[int], base: Optional[int] = None
) -> float:
    """Trace of the curvature in the acting representation"""
    return conn.group.trace(curvature(conn, triangle, base))


def curvature_vertex_change(
    conn: Connection, triangle: Sequence[int], new_base: int
) -> GroupElement:
    """
    ``R|_Z`` from ``R|_X`` on XYZ, as ``phi(ZX)^-1 R|_X phi(ZX)``.

    ``new_base`` must be the last vertex of the ordering; other bases follow by
    rotating the triangle first.
    """
    x, y, z = tuple(triangle)
    if new_base != z:
        raise InputError("the new base vertex is the third vertex of the ordering")
    group = conn.group
    edge = conn.phi(z, x, conn.chart_of(triangle))
    return group.product([edge.inv(), curvature(conn, (x, y, z)), edge])


def curvature_total_space(
    conn: Connection, triangle: Sequence[int], base: Optional[int] = None
) -> GroupElement:
    """Curvature through the horizontal projection of the section triangle"""
    ordering = _rotate_to(triangle, base)
    sigma = TypeIISimplex.on_section(conn, ordering)
    return _total_point_based(conn, horizontal_projection(conn, sigma, ordering[0]))


def _total_point_based(conn: Connection, sigma: TypeIISimplex) -> GroupElement:
    """Point-based differential of the total-space connection on a triangle"""
    p, q, r = sigma.points
    return conn.group.product([total_phi(conn, r, p), total_phi(conn, q, r), total_phi(conn, p, q)])


def is_flat(conn: Connection, tol: Optional[float] = None) -> bool:
    return all(
        curvature(conn, t).is_identity(tol) for t in conn.base.simplices(2)
    )


def curvature_map(conn: Connection, threads: Optional[int] = None) -> pd.DataFrame:
    """Scalar curvature per triangle at its smallest vertex"""
    workers = threads if threads is not None else get_settings().max_threads
    triangles = list(conn.base.simplices(2))
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        values = list(pool.map(lambda t: scalar_curvature(conn, t), triangles))
    return pd.DataFrame(
        {
            "triangle": ["-".join(str(v) for v in t) for t in triangles],
            "base_vertex": [t[0] for t in triangles],
            "scalar_curvature": values,
        }
    )


# Covariant derivatives


def _extended_value(form: LocalForm, points: Sequence[FiberPoint]) -> Any:
    """
    Equivariant extension of a local form to a face of a type II simplex.

    The fiber coordinates of the face vertices act in vertex order,
    ``G = g_0 g_1 .. g_k``: vectors become ``G v`` and group values ``G w G^-1``.
    """
    face = tuple(p.vertex for p in points)
    value = form(face)
    group = points[0].coord.group
    acting = group.product([p.coord for p in points])
    if isinstance(form, VValuedForm):
        return group.act_on_vector(acting, value)
    return group.conjugate(acting, value)


def _differential_on(form: LocalForm, sigma: TypeIISimplex) -> Any:
    """Plain point-based differential on a type II simplex"""
    points = sigma.points
    values = []
    for i in range(len(points)):
        face = points[:i] + points[i + 1 :]
        value = _extended_value(form, face)
        if i % 2:
            value = -value if isinstance(form, VValuedForm) else value.inv()
        values.append(value)
    if isinstance(form, VValuedForm):
        return sum(values, np.zeros(form.dim))
    return form.group.product(list(reversed(values)))


def _check_degree(form: LocalForm, ordering: Sequence[int]) -> None:
    if len(ordering) != form.degree + 2:
        raise InputError(
            f"the covariant derivative of a {form.degree}-form lives on "
            f"{form.degree + 1}-simplices"
        )


def covariant_derivative(
    conn: Connection,
    form: LocalForm,
    ordering: Sequence[int],
    base: Optional[int] = None,
) -> Any:
    """``d xi`` on the horizontal projection at the first vertex of ``ordering``"""
    ordered = tuple(ordering)
    if base is not None and base != ordered[0]:
        ordered = OrientedSimplex.from_vertices(ordered).ordered_from(base)
    _check_degree(form, ordered)
    sigma = TypeIISimplex.on_section(conn, ordered)
    return _differential_on(form, horizontal_projection(conn, sigma, ordered[0]))


def local_covariant_derivative(
    conn: Connection, form: LocalForm, ordering: Sequence[int]
) -> Any:
    """
    The same value from the local expressions alone.

    With ``u_i = phi(A_0 A_i)^-1`` (and ``u_0 = Id``) the face opposite ``A_i`` is
    weighted by the ordered product of the ``u_j`` over its vertices.
    """
    ordered = tuple(ordering)
    _check_degree(form, ordered)
    group = conn.group
    chart = conn.chart_of(ordered)
    lifts = [group.identity()] + [
        conn.phi(ordered[0], v, chart).inv() for v in ordered[1:]
    ]
    faces = boundary_faces(ordered)
    values = []
    for i, face in enumerate(faces):
        weight = group.product([lifts[j] for j in range(len(ordered)) if j != i])
        value = form(face)
        if isinstance(form, VValuedForm):
            values.append(group.act_on_vector(weight, value))
        else:
            values.append(group.conjugate(weight, value))
    if isinstance(form, VValuedForm):
        return sum(values, np.zeros(form.dim))
    return group.product(list(reversed(values)))


def covariant_vertex_change(
    conn: Connection, form: VValuedForm, edge: Sequence[int]
) -> np.ndarray:
    """
    ``nabla v|_Y(XY)`` from ``nabla v|_X(XY)`` for a vector 0-form: ``phi(XY) nabla v|_X``.

    Higher degrees have no such rule in general.
    """
    if form.degree != 0:
        raise UnsupportedError("vertex change is provided for vector 0-forms")
    x, y = tuple(edge)
    at_x = local_covariant_derivative(conn, form, (x, y))
    return conn.group.act_on_vector(conn.phi(x, y), at_x)


# Bianchi identity


def bianchi_residual(
    conn: Connection, tetrahedron: Sequence[int], base: Optional[int] = None
) -> float:
    """
    Distance from the identity of the point-based ``nabla R`` on a tetrahedron.

    The tetrahedron ABCD is projected horizontally at its base A. The faces through A
    are evaluated at A and the opposite face at B1, which the horizontal edge AB1
    identifies with A. The value is the boundary of the projected tetrahedron read
    as loops at A, ``R(AB1C1)^-1 R(AC1D1)^-1 R(AB1D1) R(B1C1D1)``.
    """
    ordered = tuple(tetrahedron)
    if len(ordered) != 4:
        raise InputError("the Bianchi identity is checked on tetrahedra")
    if base is not None and base != ordered[0]:
        ordered = OrientedSimplex.from_vertices(ordered).ordered_from(base)
    group = conn.group
    sigma = TypeIISimplex.on_section(conn, ordered)
    projected = horizontal_projection(conn, sigma, ordered[0])
    # boundary order: BCD, (ACD)^-1, ABD, (ABC)^-1
    opposite, acd_inv, abd, abc_inv = (
        _total_point_based(
            conn,
            TypeIISimplex(
                tuple(
                    projected.point(v)
                    for v in face.ordered_from(ordered[1] if i == 0 else ordered[0])
                )
            ),
        )
        for i, face in enumerate(boundary_faces(ordered))
    )
    value = group.product([abc_inv, acd_inv, abd, opposite])
    return float(group.distance_residual(value, group.identity()))


# Torsion


def _beta_form(bundle: PrincipalBundle, n: int) -> Optional[GValuedForm]:
    group = bundle.group
    try:
        table = homotopy_group(group, n)
    except UnsupportedError:
        return None
    if table.is_trivial:
        return None
    chi = obstruction_form(bundle, n)
    return GValuedForm(
        n,
        group,
        {s: beta_correction(group, n, cls) for s, cls in chi.items()},
    )


def _beta_value(bundle: PrincipalBundle, n: int, simplex: Sequence[int]) -> GroupElement:
    corrected = _beta_form(bundle, n)
    if corrected is None:
        return bundle.group.identity()
    return corrected(tuple(sorted(simplex)))


def torsion(conn: Connection, n: int, face: Sequence[int]) -> GroupElement:
    """
    ``beta_{n+1}(chi_{n+1}(s))^-1 nabla(beta_n(chi_n) theta)(s)``.

    ``s`` is the first (n+1)-simplex of the base containing ``face``; without one the
    face is top-dimensional and the torsion is the identity.
    """
    if n < 1 or n > 3:
        raise UnsupportedError(f"torsion is defined for 1 <= n <= 3, not {n}")
    bundle = conn.bundle
    group = conn.group
    key = tuple(sorted(face))
    if len(key) != n + 1 or key not in bundle.base:
        raise InputError(f"{tuple(face)} is not an {n}-simplex of the base")
    cofaces = [s for s in bundle.base.simplices(n + 1) if set(key) <= set(s)]
    if not cofaces:
        return group.identity()
    coface = cofaces[0]
    corrected = _beta_form(bundle, n)
    if corrected is None:
        return group.identity()
    derivative = covariant_derivative(conn, corrected, coface)
    above = _beta_value(bundle, n + 1, coface) if n + 1 <= 3 else group.identity()
    return group.multiply(above.inv(), derivative)
