import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bigrade import catalog as cat
from bigrade.words import Alphabet, NotSurfaceMode, boundary_word, compose, fixes_boundary

SHIPPED = Path(cat.__file__).parent / "data" / "catalog"


def omega_matrix(g):
    return np.block([[np.zeros((g, g), int), np.eye(g, dtype=int)],
                     [-np.eye(g, dtype=int), np.zeros((g, g), int)]])


@pytest.mark.parametrize("name", sorted(cat.default_catalog_files()))
def test_shipped_files_match_builders(name):
    assert (SHIPPED / name).read_text() == cat.dump_entries(cat.default_catalog_files()[name])


@pytest.mark.parametrize("g", cat.SURFACE_GENERA)
def test_surface_entries_are_symplectic_and_fix_boundary(g):
    J = omega_matrix(g)
    for e in cat.surface_catalog(g):
        h = e.aut()
        M = np.array(cat.action_matrix(h))
        assert (M.T @ J @ M == J).all(), e.name
        assert fixes_boundary(h), e.name
        assert h(boundary_word(g)) == boundary_word(g)


def test_catalog_sizes_and_unique_names():
    for entries in cat.load_catalog().values():
        names = [e.name for e in entries]
        assert len(names) == len(set(names))
    assert len(cat.surface_catalog(1)) == 5


BUILT = [cat.phi(3, 1, 2), cat.phi(3, 3, 1), cat.twist_x(3, 2), cat.twist_y(3, 1),
         cat.handle_swap(3, 1), cat.knob_twist(3, 2), cat.h_pair(3, 1, 3), cat.boundary_twist(3, 2)]


@given(st.sampled_from(range(len(BUILT))), st.sampled_from(range(len(BUILT))))
def test_action_matrix_is_multiplicative(i, j):
    f, g = BUILT[i], BUILT[j]
    lhs = np.array(cat.action_matrix(compose(f, g)))
    assert (lhs == np.array(cat.action_matrix(f)) @ np.array(cat.action_matrix(g))).all()


def test_sigma_of_phi_and_shapes():
    g = 3
    M = np.array(cat.sigma(cat.phi(g, 1, 3)))
    want = np.eye(6, dtype=int)
    want[0, 2] = 1
    want[g + 2, g] = -1
    assert (M == want).all()
    assert cat.block_shape_classify(cat.sigma(cat.twist_x(2, 1))) == "T"
    assert cat.block_shape_classify(cat.sigma(cat.twist_y(2, 1))) == "T'"
    assert cat.block_shape_classify(cat.sigma(cat.phi(2, 1, 2))) == "G"
    assert cat.block_shape_classify([[1, 1], [1, 2]]) == "none"
    assert cat.sigma(cat.knob_twist(2, 2)) == [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]


def test_sigma_errors():
    from bigrade.words import FreeGroupAut, Word, phi_ab
    with pytest.raises(NotSurfaceMode):
        cat.sigma(phi_ab(Alphabet(2, 1), 1, 2))
    # x1 -> x1 x2 alone does not preserve the intersection form
    bad = FreeGroupAut(Alphabet(2, 2), {1: Word((1, 2))}, {1: Word((1, -2))})
    with pytest.raises(cat.SymplecticCheckFailed):
        cat.sigma(bad)


def test_duality_is_an_involution():
    for h in BUILT:
        assert cat.dual(cat.dual(h)) == h
    i = cat.duality(3)
    assert compose(i, i).is_identity()


def test_round_trip_through_json():
    for e in cat.surface_catalog(2):
        again = cat.CatalogEntry.from_json(json.loads(json.dumps(e.to_json())))
        assert again == e and again.aut() == e.aut()


def test_malformed_entries_rejected(tmp_path):
    with pytest.raises(cat.CatalogError):
        cat.CatalogEntry.from_json({"name": "x", "p": 1, "q": 1, "mode": "surface", "fwd": {}})
    with pytest.raises(cat.CatalogError):
        cat.CatalogEntry.from_json({"name": "x", "p": 1, "q": 1, "mode": "torus", "fwd": {}, "inv": {}})
    with pytest.raises(cat.CatalogError):
        cat.load_catalog(tmp_path / "missing")
    with pytest.raises(cat.CatalogError):
        cat.find_entry("no such entry")


def test_corrupted_entry_fails_validation():
    e = cat.CatalogEntry.from_aut(cat.h_pair(2, 1, 2), claims={"level": [1, 0]})
    assert cat.validate(e)["ok"]
    rep = cat.validate(cat.corrupt(e))
    assert not rep["ok"]
    assert [c["claim"] for c in rep["checks"] if not c["ok"]] == ["inverse"]


def test_false_claims_are_named():
    e = cat.CatalogEntry.from_aut(cat.h_pair(2, 1, 2), mode="surface",
                                  claims={"level": [1, 1], "refutes": [[1, 0]], "shape": "T",
                                          "tau1": "0"})
    rep = cat.validate(e)
    failed = {c["claim"] for c in rep["checks"] if not c["ok"]}
    assert failed == {"level", "refutes [1, 0]", "shape", "tau1"}


@pytest.mark.parametrize("g", [1, 2])
def test_shipped_surface_entries_validate(g):
    for e in cat.load_catalog()[f"surface_g{g}.json"]:
        assert cat.validate(e)["ok"], e.name


def test_directory_override(tmp_path, monkeypatch):
    (tmp_path / "mine.json").write_text(cat.dump_entries(cat.surface_catalog(1)[:2]))
    monkeypatch.setenv("BIGRADE_CATALOG_DIR", str(tmp_path))
    assert cat.catalog_dir() == tmp_path
    assert list(cat.load_catalog()) == ["mine.json"]
    assert len(cat.load_catalog()["mine.json"]) == 2


def test_torelli_realizers_cover_components():
    for g in (2, 3):
        real = cat.torelli_realizers(g)
        for comp, items in real.items():
            for name, h in items:
                assert cat.is_torelli(h), name
        assert real[2] and real[1]
    assert cat.torelli_realizers(3)[3] and cat.torelli_realizers(3)[0]


def test_magnus_families_need_three_generators():
    with pytest.raises(ValueError):
        cat.magnus_generators(1, 1)
    fams = {e.claims["family"] for e in cat.magnus_generators(3, 3)}
    assert fams == set(range(1, 11))
