"""
The Z2 spin glass as a gauge theory.

Couplings ``J = +-1`` on edges form a Z2 connection whose curvature marks the
frustrated triangles. Spins give a second connection, ``s_X s_Y`` per edge, which is
always flat. Energies use ``E = -sum J_XY s_X s_Y``.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..bundle.bundle import trivial_bundle
from ..config.settings import get_settings
from ..connection.connection import Connection
from ..connection.curvature import curvature
from ..forms.forms import GValuedForm
from ..groups.group import CyclicGroup, cyclic
from ..topology.complex import Simplex, SimplicialComplex
from ..utils.errors import InputError
from ..utils.helpers import make_rng
from ..utils.logger import get_logger

logger = get_logger(__name__)

Couplings = Mapping[Tuple[int, int], int]
Spins = Mapping[int, int]


def _normalized_couplings(complex_: SimplicialComplex, couplings: Couplings) -> Dict[Simplex, int]:
    normalized: Dict[Simplex, int] = {}
    for edge, value in couplings.items():
        key = tuple(sorted(edge))
        if len(key) != 2 or key not in complex_:
            raise InputError(f"coupling on {tuple(edge)} is not on an edge of the complex")
        if value not in (1, -1):
            raise InputError(f"couplings are +1 or -1, got {value} on {key}")
        normalized[key] = int(value)
    missing = set(complex_.simplices(1)) - set(normalized)
    if missing:
        raise InputError(f"no coupling on edges {sorted(missing)}")
    return normalized


def _check_spins(complex_: SimplicialComplex, spins: Spins) -> None:
    missing = set(complex_.vertices) - set(spins)
    if missing:
        raise InputError(f"no spin on vertices {sorted(missing)}")
    bad = [v for v, s in spins.items() if s not in (1, -1)]
    if bad:
        raise InputError(f"spins are +1 or -1, not on vertices {bad}")


def _z2_connection(complex_: SimplicialComplex, signs: Mapping[Simplex, int]) -> Connection:
    group: CyclicGroup = cyclic(2)
    values = {edge: group.from_sign(sign) for edge, sign in signs.items()}
    return Connection.from_global(trivial_bundle(complex_, group), GValuedForm(1, group, values))


def ising_couplings_connection(complex_: SimplicialComplex, couplings: Couplings) -> Connection:
    return _z2_connection(complex_, _normalized_couplings(complex_, couplings))


def spin_connection(complex_: SimplicialComplex, spins: Spins) -> Connection:
    """``s_X s_Y`` on every edge"""
    _check_spins(complex_, spins)
    return _z2_connection(
        complex_, {(x, y): spins[x] * spins[y] for x, y in complex_.simplices(1)}
    )


def frustrated_plaquettes(conn: Connection) -> List[Simplex]:
    """Triangles with holonomy -1"""
    return [t for t in conn.base.simplices(2) if not curvature(conn, t).is_identity()]


def gauge_flip(couplings: Couplings, flips: Spins) -> Dict[Simplex, int]:
    """``J_XY -> s_X J_XY s_Y``"""
    return {
        tuple(sorted(edge)): flips[edge[0]] * value * flips[edge[1]]
        for edge, value in couplings.items()
    }


def ising_energy(couplings: Couplings, spins: Spins) -> float:
    return float(-sum(value * spins[x] * spins[y] for (x, y), value in couplings.items()))


@dataclass
class GroundStates:
    energy: float
    count: int
    states: List[Dict[int, int]] = field(default_factory=list)

    def summary(self) -> Dict[str, Any]:
        return {"energy": self.energy, "count": self.count}


def ground_states(
    complex_: SimplicialComplex, couplings: Couplings, limit: Optional[int] = None
) -> GroundStates:
    """Exhaustive minimum over all spin assignments"""
    normalized = _normalized_couplings(complex_, couplings)
    vertices = list(complex_.vertices)
    limit = limit if limit is not None else get_settings().exhaustive_spin_limit
    if len(vertices) > limit:
        raise InputError(
            f"{len(vertices)} spins exceed the exhaustive limit of {limit}; use anneal_spins"
        )
    best = math.inf
    states: List[Dict[int, int]] = []
    for signs in itertools.product((1, -1), repeat=len(vertices)):
        spins = dict(zip(vertices, signs))
        energy = ising_energy(normalized, spins)
        if energy < best:
            best, states = energy, [spins]
        elif energy == best:
            states.append(spins)
    logger.info(f"[ISING] Ground energy {best} with {len(states)} ground states")
    return GroundStates(best, len(states), states)


@dataclass
class AnnealResult:
    spins: Dict[int, int]
    energy: float
    energies: List[float] = field(default_factory=list)


def anneal_spins(
    complex_: SimplicialComplex,
    couplings: Couplings,
    seed: Union[int, np.random.Generator, None] = None,
    initial_temperature: float = 3.0,
    cooling: float = 0.95,
    min_temperature: float = 0.02,
    sweeps: int = 2,
    initial: Optional[Spins] = None,
) -> AnnealResult:
    """
    Single-flip simulated annealing with Metropolis acceptance.

    The temperature is multiplied by ``cooling`` after ``sweeps`` passes over the
    spins and the run stops below ``min_temperature``. The lowest-energy state seen
    is returned.
    """
    if not 0.0 < cooling < 1.0:
        raise InputError("cooling ratio must lie in (0, 1)")
    if initial_temperature <= min_temperature or min_temperature <= 0:
        raise InputError("need initial_temperature > min_temperature > 0")
    normalized = _normalized_couplings(complex_, couplings)
    rng = make_rng(seed)
    vertices = list(complex_.vertices)
    neighbours: Dict[int, List[Tuple[int, int]]] = {v: [] for v in vertices}
    for (x, y), value in normalized.items():
        neighbours[x].append((y, value))
        neighbours[y].append((x, value))

    if initial is not None:
        _check_spins(complex_, initial)
        spins = {v: int(initial[v]) for v in vertices}
    else:
        spins = {v: int(rng.choice((-1, 1))) for v in vertices}
    energy = ising_energy(normalized, spins)
    best, best_spins = energy, dict(spins)
    energies = []

    temperature = initial_temperature
    while temperature > min_temperature:
        for _ in range(sweeps):
            for v in vertices:
                # flipping s_v changes E by 2 s_v sum_u J_vu s_u
                delta = 2.0 * spins[v] * sum(j * spins[u] for u, j in neighbours[v])
                if delta <= 0.0 or rng.random() < math.exp(-delta / temperature):
                    spins[v] = -spins[v]
                    energy += delta
                    if energy < best:
                        best, best_spins = energy, dict(spins)
        energies.append(energy)
        temperature *= cooling

    logger.debug(f"[ISING] Annealing finished at energy {energy}, best {best}")
    return AnnealResult(best_spins, float(best), energies)


def triangulated_lattice(rows: int, cols: int) -> SimplicialComplex:
    """Open grid of ``rows x cols`` vertices, each square split along its diagonal"""
    if rows < 2 or cols < 2:
        raise InputError("a triangulated lattice needs at least 2 x 2 vertices")
    triangles: List[Sequence[int]] = []
    for r in range(rows - 1):
        for c in range(cols - 1):
            a = r * cols + c
            b, d, e = a + 1, a + cols, a + cols + 1
            triangles.append((a, b, e))
            triangles.append((a, d, e))
    return SimplicialComplex(triangles)


def random_couplings(
    complex_: SimplicialComplex,
    seed: Union[int, np.random.Generator, None] = None,
    ferromagnetic_fraction: float = 0.5,
) -> Dict[Simplex, int]:
    if not 0.0 <= ferromagnetic_fraction <= 1.0:
        raise InputError("ferromagnetic fraction must lie in [0, 1]")
    rng = make_rng(seed)
    return {
        edge: 1 if rng.random() < ferromagnetic_fraction else -1
        for edge in complex_.simplices(1)
    }
