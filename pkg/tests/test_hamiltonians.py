import numpy as np
import pytest

from src.core.exceptions import ArgumentError, CapacityError, ConfigError
from src.models.couplings import CouplingConfig
from src.models.hamiltonian import HamiltonianKind, HamiltonianSpec, KitaevForm, SpectrumMode
from src.models.operator import HilbertSpace, SparseOperator
from src.services.anyon_service import enumerate_anyons
from src.services.character_service import character_table
from src.services.hamiltonian_service import (
    HamiltonianService,
    commuting_terms_check,
    groundspace_projector,
    spectrum,
)


@pytest.fixture(scope="module")
def z2_service(z2_ops):
    return HamiltonianService(z2_ops)


@pytest.fixture(scope="module")
def s3_service(s3_ops):
    return HamiltonianService(s3_ops)


@pytest.fixture(scope="module")
def s3_couplings():
    return CouplingConfig(alpha={"1": 0, "-1": 1, "2": 2}, beta={"e": 0, "x": 3, "y": 5})


def test_toric_code_spectrum(z2_service):
    report = spectrum(z2_service.build_kitaev())
    assert report.dimension == 256
    assert report.mode == SpectrumMode.FULL
    assert report.energies == [-8.0, -4.0, 0.0, 4.0, 8.0]
    assert [level.multiplicity for level in report.levels] == [4, 48, 152, 48, 4]
    assert report.ground_degeneracy == 4


@pytest.mark.parametrize("form, ground", [(KitaevForm.PROJECTOR, -8.0), (KitaevForm.UNNORMALIZED, -12.0)])
def test_kitaev_forms_share_the_ground_space(z2_service, form, ground):
    report = spectrum(z2_service.build_kitaev(form))
    assert report.ground_energy == pytest.approx(ground)
    assert report.ground_degeneracy == 4


def test_kitaev_terms_commute(z2_service, s3_service):
    assert commuting_terms_check(z2_service.kitaev_terms()) == 0
    assert commuting_terms_check(s3_service.kitaev_terms(KitaevForm.PROJECTOR, site=0)) < 1e-10


def test_refined_equals_kitaev_with_vacuum_couplings(z2_service, z2):
    couplings = CouplingConfig.kitaev(character_table(z2), charge_weight=-2.0)
    refined = groundspace_projector(z2_service.build_refined(couplings))
    kitaev = groundspace_projector(z2_service.build_kitaev(KitaevForm.UNNORMALIZED))
    assert np.abs(refined - kitaev).max() < 1e-9
    assert np.trace(refined).real == pytest.approx(4)


def test_s3_site_spectrum(s3_service, s3_couplings):
    hamiltonian = s3_service.build_refined(s3_couplings, site=0)
    assert hamiltonian.dim == 6**6
    report = spectrum(hamiltonian)
    assert report.mode == SpectrumMode.BLOCK
    assert report.energies == [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]
    # sector dimensions |C| d^2 on the 36-cell diagram, times 6^4
    expected = {0: 1, 1: 1, 2: 4, 3: 3, 4: 3, 5: 12 + 2, 6: 2, 7: 8}
    for energy, area in expected.items():
        assert report.multiplicity_of(energy) == area * 6**4


def test_site_spectrum_with_zero_couplings(s3_service, s3):
    couplings = CouplingConfig.uniform(character_table(s3))
    report = spectrum(s3_service.build_refined(couplings, site=0))
    assert report.energies == [0.0]
    assert report.ground_degeneracy == 6**6


def test_refined_terms_commute(s3_service, s3_couplings):
    assert commuting_terms_check(s3_service.refined_terms(s3_couplings, site=0)) < 1e-10


def test_incomplete_couplings(s3_service):
    with pytest.raises(ConfigError):
        s3_service.build_refined(CouplingConfig(alpha={"1": 1}, beta={"e": 0}), site=0)


def test_z2_site_spectrum_is_tagged(z2_service, z2):
    couplings = CouplingConfig(alpha={"1": 0, "-1": 1}, beta={"0": 0, "1": 2})
    hamiltonian = z2_service.build_refined(couplings, site=0)
    report = spectrum(hamiltonian, sector_projectors=z2_service.sector_projectors(0))
    assert report.energies == [0.0, 1.0, 2.0, 3.0]
    assert [level.multiplicity for level in report.levels] == [16, 16, 16, 16]
    assert [level.sectors for level in report.levels] == [("0/1",), ("0/-1",), ("1/1",), ("1/-1",)]


def test_massive6_matches_refined_for_charge_blind_couplings(z2_service, z2):
    couplings = CouplingConfig(alpha={"1": 0, "-1": 1}, beta={"0": 0, "1": 2})
    masses = z2_service.masses_from_couplings(couplings)
    assert masses == {"1": 0, "e": 1, "m": 2, "eps": 3}
    refined = z2_service.build_refined(couplings, site=0)
    massive = z2_service.build_massive6(masses, site=0)
    assert refined.distance(massive) < 1e-10


def test_masses_undefined_when_flavors_split(s3_service, s3_couplings):
    with pytest.raises(ConfigError):
        s3_service.masses_from_couplings(s3_couplings)


def test_massive6_requires_every_anyon(z2_service):
    with pytest.raises(ConfigError):
        z2_service.build_massive6({"1": 0, "e": 1}, site=0)


def test_massive6_on_torus(z2_service):
    masses = {"1": -1.0, "e": 0.0, "m": 0.0, "eps": 0.0}
    report = spectrum(z2_service.build_massive6(masses))
    assert report.ground_energy == pytest.approx(-4.0)
    assert report.ground_degeneracy == 4


def test_build_from_spec(z2_service, z2_ops, z2):
    spec = HamiltonianSpec(kind=HamiltonianKind.KITAEV, lattice=z2_ops.lattice, group=z2)
    assert z2_service.build(spec).distance(z2_service.build_kitaev()) == 0
    with pytest.raises(ConfigError):
        z2_service.build(HamiltonianSpec(kind=HamiltonianKind.REFINED, lattice=z2_ops.lattice, group=z2))


def test_lowk_mode(z2_service):
    report = spectrum(z2_service.build_kitaev(), mode=SpectrumMode.LOWK, k=6)
    assert not report.complete
    assert report.ground_energy == pytest.approx(-8.0)
    assert sum(level.multiplicity for level in report.levels) == 6


def test_lowk_k_range(z2_service):
    with pytest.raises(ArgumentError):
        spectrum(z2_service.build_kitaev(), mode=SpectrumMode.LOWK, k=0)


def test_full_mode_capacity(s3_service, s3_couplings):
    with pytest.raises(CapacityError):
        spectrum(s3_service.build_refined(s3_couplings, site=0), mode=SpectrumMode.FULL)


def test_non_hermitian_rejected():
    space = HilbertSpace(2, [0])
    with pytest.raises(ArgumentError):
        spectrum(SparseOperator(space, np.array([[0, 1], [0, 0]])))


def test_spectrum_report_json(z2_service):
    data = spectrum(z2_service.build_kitaev()).to_dict()
    assert data["ground_degeneracy"] == 4
    assert data["levels"][0] == {"energy": -8.0, "multiplicity": 4, "sectors": []}


def pauli_on(space, pauli, edges):
    matrix = np.ones((1, 1))
    for e in space.edges:
        matrix = np.kron(pauli if e in edges else np.eye(2), matrix)
    return matrix


def test_toric_code_is_sum_of_pauli_stabilizers(z2_ops, z2_service):
    x, z = np.array([[0, 1], [1, 0]]), np.diag([1, -1])
    lattice = z2_ops.lattice
    space = z2_ops.full_space()
    expected = np.zeros((256, 256))
    for v in range(lattice.num_vertices):
        expected -= pauli_on(space, x, lattice.star_edges(v))
    for p in range(lattice.num_plaquettes):
        expected -= pauli_on(space, z, lattice.loop_edges(p))
    assert np.allclose(z2_service.build_kitaev().toarray(), expected)


def test_s3_refined_site_hamiltonian_written_out(s3_ops, s3_service, s3_site_space, s3):
    space = s3_site_space
    alpha = {"1": 0.5, "-1": -1.0, "2": 2.0}
    beta = {"e": 1.5, "x": 3.0, "y": -0.25}
    couplings = CouplingConfig(alpha=alpha, beta=beta)
    charge = {
        "1": {g: 1 / 6 for g in s3.labels},
        "-1": {g: (1 / 6 if g in ("e", "y", "y^2") else -1 / 6) for g in s3.labels},
        "2": {"e": 2 / 3, "y": -1 / 3, "y^2": -1 / 3},
    }
    flux = {"e": ["e"], "x": ["x", "xy", "xy^2"], "y": ["y", "y^2"]}
    expected = SparseOperator.zero(space)
    for irrep, coefficients in charge.items():
        for g, c in coefficients.items():
            expected = expected + s3_ops.vertex_operator(0, g, space) * (alpha[irrep] * c)
    for cls, members in flux.items():
        for h in members:
            expected = expected + s3_ops.plaquette_operator(0, h, space) * beta[cls]
    assert s3_service.build_refined(couplings, site=0).distance(expected) < 1e-10


def test_massive6_single_mass_is_one_projector(s3_service, s3, s3_expanded_projectors):
    masses = {a.name: 0.0 for a in enumerate_anyons(s3)}
    masses["D"] = 1.0
    assert s3_service.build_massive6(masses, site=0).distance(s3_expanded_projectors["D"]) < 1e-10
