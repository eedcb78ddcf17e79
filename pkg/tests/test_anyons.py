import pytest

from src.core.exceptions import ArgumentError
from src.models.anyon import AnyonType, FluxPairState
from src.services import anyon_service, group_service


def test_s3_anyon_table(s3):
    rows = anyon_service.anyon_table(s3)
    assert [r["label"] for r in rows] == list("ABCDEFGH")
    assert [(r["class"], r["irrep"]) for r in rows] == [
        ("e", "1"), ("e", "-1"), ("e", "2"),
        ("x", "1"), ("x", "-1"),
        ("y", "1"), ("y", "omega"), ("y", "omegabar"),
    ]
    assert [r["quantum_dimension"] for r in rows] == [1, 1, 2, 3, 3, 2, 2, 2]
    assert [r["normalizer_order"] for r in rows] == [6, 6, 6, 2, 2, 3, 3, 3]
    assert rows[-1] == {
        "label": "H",
        "class": "y",
        "representative": 1,
        "normalizer_order": 3,
        "irrep": "omegabar",
        "quantum_dimension": 2,
        "type": "dyon",
    }


def test_s3_anyon_types(s3):
    types = [a.anyon_type for a in anyon_service.enumerate_anyons(s3)]
    assert types == [
        AnyonType.VACUUM, AnyonType.CHARGEON, AnyonType.CHARGEON,
        AnyonType.FLUXON, AnyonType.DYON,
        AnyonType.FLUXON, AnyonType.DYON, AnyonType.DYON,
    ]


def test_toric_code_names(z2):
    anyons = anyon_service.enumerate_anyons(z2)
    assert [a.name for a in anyons] == ["1", "e", "m", "eps"]
    assert all(a.quantum_dimension == 1 for a in anyons)


def test_abelian_double_has_order_squared_anyons(z3):
    anyons = anyon_service.enumerate_anyons(z3)
    assert len(anyons) == 9
    assert {a.quantum_dimension for a in anyons} == {1}


@pytest.mark.parametrize("name", ["trivial", "z2", "z5", "s3", "d4", "q8", "s4"])
def test_total_quantum_dimension(name):
    group = group_service.resolve_builtin(name)
    assert anyon_service.total_quantum_dimension_sq(group) == group.order**2


def test_spreadsheet_names_past_z():
    anyons = anyon_service.enumerate_anyons(group_service.cyclic_group(6))
    assert len(anyons) == 36
    assert anyons[25].name == "Z"
    assert anyons[26].name == "AA"
    assert anyons[35].name == "AJ"


def test_anyon_by_name(s3):
    assert anyon_service.anyon_by_name(s3, "D").flux_class.label == "x"
    with pytest.raises(ArgumentError):
        anyon_service.anyon_by_name(s3, "Q")


def test_braid_moves_flux_past(s3):
    y, x = s3.index_of("y"), s3.index_of("x")
    state = anyon_service.braid(FluxPairState.basis(s3, y, x))
    assert state.support() == [(s3.conjugate(y, x), y)]


def test_monodromy_conjugates_by_total_flux(s3):
    for a in range(s3.order):
        for b in range(s3.order):
            image = anyon_service.monodromy(FluxPairState.basis(s3, a, b)).support()
            assert image == [anyon_service.monodromy_image(s3, a, b)]


def test_monodromy_trivial_for_abelian_groups(z3):
    for a in range(3):
        for b in range(3):
            assert anyon_service.monodromy_image(z3, a, b) == (a, b)


def test_braid_operator_is_a_permutation(s3):
    braid = anyon_service.braid_operator(s3).toarray()
    assert braid.shape == (36, 36)
    assert (braid.sum(axis=0) == 1).all()
    assert (braid.sum(axis=1) == 1).all()


def test_flux_pair_state_validation(s3):
    with pytest.raises(ArgumentError):
        FluxPairState(s3, [1, 0])
    with pytest.raises(ArgumentError):
        FluxPairState(s3, [1] * 36)
