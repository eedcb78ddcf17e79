"""
Shared fixtures.

Site-space S3 operators (dimension 6^6) are expensive, so the operator
service and the anyon projectors built on it are session-scoped.
"""

import json

import numpy as np
import pytest

from src.models.operator import SparseOperator
from src.services import group_service, lattice_service
from src.services.anyon_service import enumerate_anyons
from src.services.operator_service import OperatorService


@pytest.fixture(scope="session")
def s3():
    return group_service.s3_group()


@pytest.fixture(scope="session")
def z2():
    return group_service.cyclic_group(2)


@pytest.fixture(scope="session")
def z3():
    return group_service.cyclic_group(3)


@pytest.fixture(scope="session")
def q8():
    return group_service.quaternion_group()


@pytest.fixture(scope="session")
def torus():
    return lattice_service.build_torus(2, 2)


@pytest.fixture(scope="session")
def s3_ops(s3):
    return OperatorService(s3)


@pytest.fixture(scope="session")
def z2_ops(z2):
    return OperatorService(z2)


@pytest.fixture(scope="session")
def s3_site_space(s3_ops):
    return s3_ops.site_space(0)


@pytest.fixture(scope="session")
def s3_anyon_projectors(s3, s3_ops, s3_site_space):
    return s3_ops.anyon_projectors(0, enumerate_anyons(s3), s3_site_space)


@pytest.fixture(scope="session")
def s3_expanded_projectors(s3_ops, s3_site_space):
    """
    S3 site projectors written out as sums of A_g B_h. G and H only on their
    B_y component, where the charge character is not transported.
    """
    space = s3_site_space
    w = complex(np.exp(2j * np.pi / 3))

    def charge(coefficients):
        total = SparseOperator.zero(space)
        for label, c in coefficients.items():
            total = total + s3_ops.vertex_operator(0, label, space) * c
        return total

    def flux(label):
        return s3_ops.plaquette_operator(0, label, space)

    b_e = s3_ops.flux_projector(0, "e", space)
    b_y = s3_ops.flux_projector(0, "y", space)
    rotations = ("e", "y", "y^2")
    reflections = ("x", "xy", "xy^2")
    return {
        "A": charge({g: 1 / 6 for g in rotations + reflections}) @ b_e,
        "B": charge({**{g: 1 / 6 for g in rotations}, **{g: -1 / 6 for g in reflections}}) @ b_e,
        "C": charge({"e": 2 / 3, "y": -1 / 3, "y^2": -1 / 3}) @ b_e,
        "D": sum((charge({"e": 0.5, t: 0.5}) @ flux(t) for t in reflections), SparseOperator.zero(space)),
        "E": sum((charge({"e": 0.5, t: -0.5}) @ flux(t) for t in reflections), SparseOperator.zero(space)),
        "F": charge({g: 1 / 3 for g in rotations}) @ b_y,
        "G_y": charge({"e": 1 / 3, "y": w / 3, "y^2": w.conjugate() / 3}) @ flux("y"),
        "H_y": charge({"e": 1 / 3, "y": w.conjugate() / 3, "y^2": w / 3}) @ flux("y"),
    }


@pytest.fixture
def s3_couplings_file(tmp_path):
    """Charge and flux couplings giving sector energies 0..7."""
    path = tmp_path / "couplings.json"
    path.write_text(json.dumps({"alpha": {"1": 0, "-1": 1, "2": 2}, "beta": {"e": 0, "x": 3, "y": 5}}))
    return path
