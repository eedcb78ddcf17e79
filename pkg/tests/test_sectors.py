import pytest

from src.core.exceptions import InvariantViolationError
from src.models.anyon import AnyonLabel
from src.models.couplings import CouplingConfig
from src.services import sector_service
from src.services.anyon_service import anyon_by_name, enumerate_anyons
from src.services.character_service import character_table
from src.services.group_service import resolve_builtin


@pytest.fixture(scope="module")
def s3_sectors(s3):
    couplings = CouplingConfig(alpha={"1": 0, "-1": 1, "2": 2}, beta={"e": 0, "x": 3, "y": 5})
    return sector_service.energy_sectors(s3, couplings)


def test_s3_sector_labels(s3_sectors):
    assert [s.label for s in s3_sectors] == [
        "A", "B", "C₁⊕C₂",
        "D₁", "E₁", "D₂⊕E₂",
        "F₁", "F₂", "G⊕H",
    ]


def test_s3_sector_energies(s3_sectors):
    assert [s.energy for s in s3_sectors] == [0, 1, 2, 3, 4, 5, 5, 6, 7]


def test_s3_sector_dimensions(s3_sectors):
    assert [s.dimension for s in s3_sectors] == [1, 1, 4, 3, 3, 12, 2, 2, 8]
    assert sum(s.dimension for s in s3_sectors) == 36


def test_sector_content_fills_sector(s3_sectors):
    for sector in s3_sectors:
        assert sum(entry.area for entry in sector.anyons) == sector.dimension


def test_sector_to_anyons(s3):
    x_class = s3.class_by_label("x")
    content = sector_service.sector_to_anyons(s3, x_class, 2)
    assert [(a.name, m) for a, m in content] == [("D", 1), ("E", 1)]


def test_anyon_to_sectors(s3):
    sectors = sector_service.anyon_to_sectors(anyon_by_name(s3, "F"))
    assert [(s.flux_class.label, s.charge, m) for s, m in sectors] == [("y", "1", 1), ("y", "-1", 1)]
    sectors = sector_service.anyon_to_sectors(anyon_by_name(s3, "G"))
    assert [(s.flux_class.label, s.charge, m) for s, m in sectors] == [("y", "2", 1)]


def test_flavor_labels(s3):
    assert sector_service.flavor_labels(anyon_by_name(s3, "D")) == ["D₁", "D₂"]
    assert sector_service.flavor_labels(anyon_by_name(s3, "H")) == ["H"]


@pytest.mark.parametrize("name", ["s3", "q8", "d4"])
def test_reciprocity(name):
    assert sector_service.reciprocity_deviation(resolve_builtin(name)) == 0


def test_incidence_components(s3):
    components = {
        cls.label: [([a.name for a in anyons], irreps) for anyons, irreps in sector_service.incidence_components(s3, cls)]
        for cls in s3.classes
    }
    assert components["x"] == [(["D", "E"], ["1", "-1", "2"])]
    assert sorted(components["y"]) == [(["F"], ["1", "-1"]), (["G", "H"], ["2"])]
    assert sorted(components["e"]) == [(["A"], ["1"]), (["B"], ["-1"]), (["C"], ["2"])]


def test_mass_additivity(s3):
    couplings = CouplingConfig(alpha={"1": 0.3, "-1": -1.7, "2": 2.5}, beta={"e": 1.1, "x": -4, "y": 0.25})
    assert sector_service.mass_additivity_deviation(s3, couplings) < 1e-12


def test_named_mass_relations(s3_sectors):
    energy = {s.label: s.energy for s in s3_sectors}
    mass = {label: e - energy["A"] for label, e in energy.items()}
    assert mass["F₂"] == mass["F₁"] + mass["B"]
    assert mass["E₁"] == mass["D₁"] + mass["B"]
    assert mass["D₂⊕E₂"] == mass["C₁⊕C₂"] + mass["D₁"]
    assert mass["G⊕H"] == mass["C₁⊕C₂"] + mass["F₁"]


def test_diagram_totals(s3):
    diagram = sector_service.diagram_export(s3)
    assert len(diagram.cells) == 9
    assert diagram.total_area == 36
    areas = diagram.anyon_areas()
    assert [areas[a.name] for a in enumerate_anyons(s3)] == [1, 1, 4, 9, 9, 4, 4, 4]
    assert [r["width"] for r in diagram.rows] == [1, 3, 2]
    assert [c["width"] for c in diagram.cols] == [1, 1, 4]


def test_diagram_rejects_area_mismatch(s3, monkeypatch):
    monkeypatch.setattr(AnyonLabel, "quantum_dimension", property(lambda self: self.flux_class.size * self.charge_dim + 1))
    with pytest.raises(InvariantViolationError, match="squared quantum dimensions"):
        sector_service.diagram_export(s3)


def test_diagram_json(s3, s3_sectors):
    diagram = sector_service.diagram_export(s3)
    cell = diagram.to_dict()["cells"][5]
    assert cell["class"] == "x"
    assert cell["irrep"] == "2"
    assert cell["dim"] == 12
    assert cell["energy"] is None
    assert cell["anyons"] == [
        {"label": "D", "flavor": "D₂", "mult": 1, "area": 6},
        {"label": "E", "flavor": "E₂", "mult": 1, "area": 6},
    ]


def test_diagram_renderings(s3):
    couplings = CouplingConfig.uniform(character_table(s3), alpha=1.0)
    diagram = sector_service.diagram_export(s3, couplings)
    text = sector_service.render_text(diagram)
    assert "C₁⊕C₂ [4] J=1" in text
    dot = sector_service.render_dot(diagram)
    assert dot.startswith('digraph "s3" {')
    assert '"G" -> s8 [label="G"];' in dot


def test_sector_operator_identities(s3_ops, s3_anyon_projectors):
    report = sector_service.verify_sector_operator_identities(s3_ops, 0, s3_anyon_projectors)
    for name in ("component_sums", "containment"):
        assert report[name] < 1e-10
    for name in ("sector_traces", "flavor_traces", "anyon_traces"):
        assert report[name] < 1e-8


def test_fluxon_split_identities(s3_ops, s3_anyon_projectors, s3_site_space):
    p = s3_anyon_projectors
    b_x = s3_ops.flux_projector(0, "x", s3_site_space)
    assert (p["D"] + p["E"]).distance(b_x) < 1e-10
    two_y = s3_ops.sector_projector(0, "y", "2", s3_site_space)
    assert (p["G"] + p["H"]).distance(two_y) < 1e-10
    f_sectors = s3_ops.sector_projector(0, "y", "1", s3_site_space) + s3_ops.sector_projector(0, "y", "-1", s3_site_space)
    assert p["F"].distance(f_sectors) < 1e-10
