"""Build library objects from config sections and JSON payloads"""

import json
from pathlib import Path
from typing import Any, Mapping, Optional

import numpy as np

from ..bundle.bundle import PrincipalBundle, StructuralData, trivial_bundle
from ..config.experiment import ComplexSection, FieldSection, GroupSection
from ..connection.connection import Connection
from ..dynamics.field import DistributionSpec, MaterialField
from ..groups.group import GaugeGroup, create_group
from ..topology.complex import PointCloud, SimplicialComplex, build_vietoris_rips
from ..utils.errors import InputError
from .fixtures import fixture_complex


def build_complex(section: ComplexSection) -> SimplicialComplex:
    """Complex from its single configured source"""
    if section.fixture is not None:
        return fixture_complex(section.fixture)
    if section.simplices is not None:
        return SimplicialComplex(section.simplices)
    if section.path is not None:
        payload = json.loads(Path(section.path).read_text(encoding="utf-8"))
        return SimplicialComplex.from_dict(payload)
    if section.points is not None:
        if section.radius is None:
            raise InputError("a point cloud needs a radius")
        cloud = PointCloud.from_csv(section.points)
        return build_vietoris_rips(cloud, section.radius, section.max_dim)
    raise InputError("no complex source given")


def load_complex(payload: Mapping[str, Any]) -> SimplicialComplex:
    """Complex JSON (``maximal_simplices``) or a complex section"""
    if "maximal_simplices" in payload:
        return SimplicialComplex.from_dict(dict(payload))
    return build_complex(ComplexSection.model_validate(dict(payload)))


def load_group(payload: Optional[Mapping[str, Any]]) -> GaugeGroup:
    section = GroupSection.model_validate(dict(payload or {}))
    return create_group(section.spec_dict())


def load_bundle(
    complex_: SimplicialComplex, group: GaugeGroup, structure: Optional[Mapping[str, Any]]
) -> PrincipalBundle:
    """Trivial bundle, with structural data when given"""
    bundle = trivial_bundle(complex_, group)
    if structure:
        bundle = bundle.with_structure(StructuralData.from_dict(structure, group))
    return bundle


def load_connection(payload: Mapping[str, Any], bundle: PrincipalBundle) -> Connection:
    return Connection.from_dict(payload, bundle)


def distribution_from(section: FieldSection, rep_dim: int) -> DistributionSpec:
    """Gaussian of the field section; identity covariance when none is set"""
    if section.covariance is None:
        covariance = np.eye(rep_dim)
    else:
        covariance = np.asarray(section.covariance, dtype=float)
    mean = None if section.mean is None else np.asarray(section.mean, dtype=float)
    dist = DistributionSpec(covariance, mean)
    if dist.dim != rep_dim:
        raise InputError(
            f"distribution dimension {dist.dim} does not match the representation ({rep_dim})"
        )
    return dist


def load_field(payload: Mapping[str, Any]) -> MaterialField:
    return MaterialField.from_dict(payload)
