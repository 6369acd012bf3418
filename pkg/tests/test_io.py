import json

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from plval.generate import PRESETS, InstanceSpec, generate_instance
from plval.hats import decompose
from plval.io import (
    MalformedInput,
    complex_from_dict,
    complex_to_dict,
    dumps_function,
    dumps_json,
    function_from_dict,
    function_to_dict,
    load_complex,
    load_function,
    save_complex,
    save_function,
)
from plval.pl import PLFunction
from plval.valuation import alpha_plus

SQUARE = {
    "ambient_dim": 2,
    "vertices": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]],
    "maximal_simplices": [[0, 1, 3], [0, 2, 3]],
}


class TestRoundTrip:
    @settings(max_examples=20, deadline=None)
    @given(st.sampled_from(PRESETS), st.integers(0, 3), st.integers(0, 2**64 - 1))
    def test_instances(self, preset, depth, seed):
        K, fs = generate_instance(InstanceSpec(preset, depth, 2, seed))
        K2 = complex_from_dict(json.loads(json.dumps(complex_to_dict(K))))
        assert K2 == K and K2.fingerprint == K.fingerprint
        for f in fs:
            g = function_from_dict(json.loads(dumps_function(f)))
            assert g.values == f.values and g.triangulation == K

    def test_files(self, tmp_path, path3):
        f = PLFunction(path3, (0, mpq(-7, 3), 1))
        save_function(f, tmp_path / "f.json")
        g = load_function(tmp_path / "f.json")
        assert g.values == f.values
        assert json.loads((tmp_path / "f.json").read_text())["values"] == ["0", "-7/3", "1"]

    def test_complex_by_reference(self, tmp_path, path3):
        save_complex(path3, tmp_path / "k.json")
        f = PLFunction(path3, (0, 1, 0))
        (tmp_path / "sub").mkdir()
        doc = function_to_dict(f, "../k.json")
        (tmp_path / "sub" / "f.json").write_text(json.dumps(doc))
        assert load_function(tmp_path / "sub" / "f.json").values == (0, 1, 0)

    def test_output_is_canonical(self, path3):
        text = dumps_function(PLFunction(path3, (0, 1, 0)))
        assert text.endswith("\n")
        assert text == json.dumps(json.loads(text), sort_keys=True, indent=1) + "\n"

    def test_faces_are_closed_on_load(self):
        K = complex_from_dict(SQUARE)
        assert K.f_vector() == (4, 5, 2)

    def test_report_and_decomposition(self, path3):
        r = json.loads(dumps_json(alpha_plus(PLFunction(path3, (0, 1, 0)))))
        assert r["value"] == 1
        d = json.loads(dumps_json(decompose(PLFunction(path3, (0, 2, 0)))))
        assert d == {"vertices": [1], "coefficients": ["2"]}


def mutate(**changes):
    doc = json.loads(json.dumps(SQUARE))
    doc.update(changes)
    return doc


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"vertices": [], "maximal_simplices": []},
        mutate(ambient_dim=-1),
        mutate(ambient_dim="2"),
        mutate(vertices="x"),
        mutate(vertices=[["0"], ["1", "0"], ["0", "1"], ["1", "1"]]),
        mutate(vertices=[[0, 0], ["1", "0"], ["0", "1"], ["1", "1"]]),
        mutate(vertices=[["0.5", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]),
        mutate(vertices=[["1/0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]),
        mutate(maximal_simplices=[[0, 1, 9]]),
        mutate(maximal_simplices=[[0, 0, 1]]),
        mutate(maximal_simplices=[[]]),
        mutate(maximal_simplices=[[0, 1, 3], [0, 1, 2]]),  # overlapping triangles
        mutate(vertices=[["0", "0"], ["1", "0"], ["2", "0"], ["1", "1"]], maximal_simplices=[[0, 1, 2]]),
    ],
)
def test_malformed_complex(doc):
    with pytest.raises(MalformedInput):
        complex_from_dict(doc)


class TestMalformedFunction:
    def test_wrong_value_count(self):
        with pytest.raises(MalformedInput):
            function_from_dict({"complex": SQUARE, "values": ["1"]})

    def test_missing_keys(self):
        with pytest.raises(MalformedInput):
            function_from_dict({"values": []})

    def test_bad_scalar(self):
        with pytest.raises(MalformedInput):
            function_from_dict({"complex": SQUARE, "values": ["1", "2", "x", "4"]})

    def test_missing_file(self, tmp_path):
        with pytest.raises(MalformedInput):
            load_complex(tmp_path / "nope.json")

    def test_not_json(self, tmp_path):
        p = tmp_path / "k.json"
        p.write_text("{")
        with pytest.raises(MalformedInput):
            load_complex(p)

    def test_missing_referenced_complex(self, tmp_path):
        p = tmp_path / "f.json"
        p.write_text(json.dumps({"complex": "gone.json", "values": []}))
        with pytest.raises(MalformedInput):
            load_function(p)
