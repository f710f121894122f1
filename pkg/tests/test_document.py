import json
import os

import pytest

from umod.algebra import FiniteAlgebra
from umod.coloring import Model, Variety
from umod.document import (
    CACHE_ENV,
    AlgebraDocument,
    ModelCache,
    ModelDocument,
    SubalgebraReport,
    VerificationReport,
    algebra_to_dot,
    dumps,
    loads,
    model_to_dot,
    read_document,
    to_dot,
    write_document,
)
from umod.errors import DocumentError
from umod.poset import Poset
from umod.universal import build_universal_model


@pytest.fixture
def nis1_document(nis1) -> ModelDocument:
    return ModelDocument.from_layered(nis1)


class TestModelDocument:
    def test_fields(self, nis1_document):
        assert nis1_document.n_elements == 4
        assert nis1_document.covers == [[2, 0], [3, 0], [3, 1]]
        assert nis1_document.s == [1, 2, 3]
        assert nis1_document.colors == [[], [], [], []]
        assert nis1_document.variant == "nis"
        assert nis1_document.layers == [1, 1, 2, 2]
        assert not nis1_document.truncated

    def test_reload(self, nis1, nis1_document):
        text = dumps(nis1_document)
        assert text.endswith("}\n")
        assert json.loads(text)["kind"] == "model"
        layered = loads(text).to_layered()
        assert layered.layer_sizes() == [2, 2]
        assert layered.poset == nis1.poset
        assert layered.model.sposet.s == nis1.model.sposet.s
        assert dumps(loads(text)) == text

    def test_truncation_is_kept(self):
        layered = build_universal_model(1, Variety.NIS_BOT, max_layer=2)
        document = loads(dumps(ModelDocument.from_layered(layered)))
        assert document.truncated
        assert document.truncation.reason == "max_layer"
        assert document.to_layered().truncation.height_lower_bound == 3

    def test_plain_model(self, two_chain_sposet):
        document = ModelDocument.from_model(Model(two_chain_sposet, 2, [0b01, 0b11]))
        assert document.colors == [[1], [1, 2]]
        assert document.variant is None
        model = loads(dumps(document)).to_model()
        assert model.n == 2
        assert model.coloring == (0b01, 0b11)

    def test_variable_count_from_colors(self):
        document = ModelDocument(n_elements=2, colors=[[], [3]])
        assert document.to_model().n == 3
        assert document.to_model(4).n == 4

    def test_bare_poset(self):
        document = ModelDocument(n_elements=3, covers=[[0, 1], [0, 2]], s=[0])
        sposet = document.to_sposet()
        assert sposet.poset == Poset(3, {(0, 1), (0, 2)})
        assert sposet.s_set == {0}
        assert document.to_model().n == 0

    def test_wrong_color_count(self):
        with pytest.raises(DocumentError):
            ModelDocument(n_elements=2, colors=[[]]).to_model()

    def test_not_a_universal_model(self, two_chain_sposet):
        with pytest.raises(DocumentError):
            ModelDocument.from_sposet(two_chain_sposet).to_layered()
        document = ModelDocument.from_sposet(two_chain_sposet)
        document.symbols, document.variant = [], "nonsense"
        with pytest.raises(DocumentError):
            document.to_layered()


class TestLoads:
    @pytest.mark.parametrize(
        "text",
        [
            "not json",
            "[1, 2]",
            '{"kind": "mystery"}',
            '{"kind": "model", "n_elements": 1, "format_version": 2}',
            '{"kind": "model"}',
            '{"kind": "algebra", "size": 1}',
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(DocumentError):
            loads(text)

    def test_kind_defaults_to_model(self):
        assert isinstance(loads('{"n_elements": 1}'), ModelDocument)

    def test_reports(self):
        report = loads(dumps(VerificationReport(max_size=2)))
        assert isinstance(report, VerificationReport)
        assert isinstance(loads(dumps(SubalgebraReport(mode="plain"))), SubalgebraReport)

    def test_files(self, tmp_path, nis1_document):
        path = str(tmp_path / "model.json")
        write_document(path, nis1_document)
        assert read_document(path).n_elements == 4
        with pytest.raises(DocumentError):
            read_document(str(tmp_path / "missing.json"))


class TestAlgebraDocument:
    def test_tables(self, fork_sposet):
        algebra = FiniteAlgebra.from_upsets(fork_sposet, bounded=True)
        document = loads(dumps(AlgebraDocument.from_algebra(algebra)))
        assert document.size == algebra.size
        assert document.bottom == 0
        assert len(document.hasse) == len(algebra.hasse_covers())
        rebuilt = document.to_algebra()
        assert rebuilt.fixpoints() == algebra.fixpoints()

    def test_bad_nucleus_table(self):
        document = AlgebraDocument(
            size=2,
            meet=[[0, 0], [0, 1]],
            imp=[[1, 1], [0, 1]],
            top=1,
            hasse=[[0, 1]],
            nucleus=[1],
            generators=[],
        )
        with pytest.raises(DocumentError):
            document.to_algebra()


class TestDot:
    def test_model(self, nis1_document):
        lines = model_to_dot(nis1_document).splitlines()
        assert lines[:3] == ['digraph "model" {', "\trankdir=BT;", "\tnode [shape=box];"]
        assert '\tn0 [label="r@1#00{} | {}"];' in lines
        assert '\tn1 [label="s@1#01{} | {}", peripheries=2];' in lines
        assert "\t{ rank=same; n0; n1; }" in lines
        assert lines[-4:] == ["\tn2 -> n0;", "\tn3 -> n0;", "\tn3 -> n1;", "}"]

    def test_quoting(self):
        document = ModelDocument(n_elements=1, names=['a"b'])
        assert '\tn0 [label="a\\"b"];' in model_to_dot(document, "q").splitlines()

    def test_algebra(self):
        document = AlgebraDocument(
            size=2,
            meet=[[0, 0], [0, 1]],
            imp=[[1, 1], [0, 1]],
            top=1,
            hasse=[[0, 1]],
            nucleus=[1, 1],
            generators=[0],
        )
        text = algebra_to_dot(document)
        assert '\tn0 [label="0 = g1"];' in text.splitlines()
        assert '\tn1 [label="1", peripheries=2];' in text.splitlines()
        assert "\tn0 -> n1;" in text.splitlines()

    def test_dispatch(self, nis1_document):
        assert to_dot(nis1_document, "u").startswith('digraph "u" {')
        with pytest.raises(DocumentError):
            to_dot(SubalgebraReport(mode="plain"))

    def test_deterministic(self, nis1_document):
        assert model_to_dot(nis1_document) == model_to_dot(loads(dumps(nis1_document)))


class TestModelCache:
    @pytest.fixture(autouse=True)
    def no_env(self, monkeypatch):
        monkeypatch.delenv(CACHE_ENV, raising=False)

    def test_file_name(self, tmp_path):
        cache = ModelCache(str(tmp_path))
        assert os.path.basename(cache.path_for(1, Variety.NIS)) == (
            "nis-n1-layer64-elements200000-v1.json"
        )
        unlimited = ModelCache(str(tmp_path), max_layer=None, max_elements=None)
        assert os.path.basename(unlimited.path_for(0, Variety.NIS_BOT)) == (
            "nis-bot-n0-layernone-elementsnone-v1.json"
        )

    def test_store_and_load(self, tmp_path):
        cache = ModelCache(str(tmp_path / "models"))
        assert cache.load(1, Variety.NIS) is None
        built = cache.get(1, Variety.NIS)
        assert os.listdir(cache.directory) == [os.path.basename(cache.path_for(1, Variety.NIS))]
        loaded = cache.load(1, Variety.NIS)
        assert loaded.poset == built.poset
        assert loaded.layer_sizes() == [2, 2]

    def test_callable(self, tmp_path):
        cache = ModelCache(str(tmp_path))
        assert cache(0, Variety.NIS_BOT).poset.size == 4

    def test_disabled(self, tmp_path):
        cache = ModelCache(str(tmp_path / "models"), enabled=False)
        cache.get(1, Variety.NIS)
        assert not os.path.exists(cache.directory)

    def test_unreadable_entry(self, tmp_path):
        cache = ModelCache(str(tmp_path))
        path = cache.path_for(1, Variety.NIS)
        with open(path, "w") as file:
            file.write("garbage")
        assert cache.load(1, Variety.NIS) is None
        assert cache.get(1, Variety.NIS).poset.size == 4
        assert read_document(path).n_elements == 4

    def test_environment_overrides_directory(self, tmp_path, monkeypatch):
        monkeypatch.setenv(CACHE_ENV, str(tmp_path / "env"))
        assert ModelCache("~/ignored").directory == str(tmp_path / "env")

    def test_home_is_expanded(self, tmp_path, monkeypatch):
        monkeypatch.setenv("HOME", str(tmp_path))
        assert ModelCache("~/cache").directory == str(tmp_path / "cache")
