import json

import pytest

from mhbesov import mh, verify
from mhbesov.funcspec import FunctionSpecError, function_to_spec, load_function_spec, parse_function_spec

VALID = {"n": 2, "components": [
    {"p": 1, "q": 1, "terms": [{"alpha": [1, 0], "beta": [0, 1], "re": 1, "im": 0}]},
    {"p": 0, "q": 0, "terms": [{"alpha": [0, 0], "beta": [0, 0], "re": 0.5}]},
]}


def test_parse_valid_spec():
    f = parse_function_spec(VALID)
    assert f.n == 2
    assert [(c.p, c.q) for c in f.components] == [(0, 0), (1, 1)]


def test_parse_from_string_and_file(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps(VALID))
    assert function_to_spec(load_function_spec(path)) == function_to_spec(parse_function_spec(json.dumps(VALID)))


@pytest.mark.parametrize("mutate, fragment", [
    (lambda d: d.update(extra=1), "unknown field"),
    (lambda d: d["components"][0].update(weight=2), "unknown field"),
    (lambda d: d["components"][0]["terms"][0].update(phase=0), "unknown field"),
    (lambda d: d.pop("n"), "missing field"),
    (lambda d: d["components"][0]["terms"][0].update(alpha=[1, 0, 0]), "list of 2"),
    (lambda d: d["components"][0]["terms"][0].update(re="one"), "expected a number"),
    (lambda d: d["components"][1].update(p=1, q=1), "listed twice"),
])
def test_malformed_specs_rejected(mutate, fragment):
    data = json.loads(json.dumps(VALID))
    mutate(data)
    with pytest.raises(FunctionSpecError, match=fragment):
        parse_function_spec(data)


def test_non_harmonic_component_named():
    # z1 zbar1 has nonzero Laplacian.
    data = {"n": 2, "components": [{"p": 1, "q": 1, "terms": [{"alpha": [1, 0], "beta": [1, 0], "re": 1}]}]}
    with pytest.raises(FunctionSpecError, match=r"component \(1,1\).*not harmonic"):
        parse_function_spec(data)


def test_harmonic_combination_accepted():
    # z1 zbar1 - z2 zbar2 is harmonic.
    data = {"n": 2, "components": [{"p": 1, "q": 1, "terms": [
        {"alpha": [1, 0], "beta": [1, 0], "re": 1}, {"alpha": [0, 1], "beta": [0, 1], "re": -1}]}]}
    assert len(parse_function_spec(data).components) == 1


def test_bidegree_mismatch():
    data = {"n": 2, "components": [{"p": 2, "q": 1, "terms": [{"alpha": [1, 0], "beta": [0, 1], "re": 1}]}]}
    with pytest.raises(FunctionSpecError, match=r"component \(2,1\).*bidegree \(1,1\)"):
        parse_function_spec(data)


def test_invalid_json_text():
    with pytest.raises(FunctionSpecError, match="invalid JSON"):
        parse_function_spec("{not json")


def test_missing_file(tmp_path):
    with pytest.raises(FunctionSpecError, match="cannot read"):
        load_function_spec(tmp_path / "absent.json")


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_round_trip_random_function(seed):
    f = verify.combined_test_function(n=2, degmax=2, seed=seed)
    spec = function_to_spec(f)
    g = parse_function_spec(json.loads(json.dumps(spec)))
    assert function_to_spec(g) == spec
    z = (0.3 + 0.1j, -0.2 + 0.25j)
    assert abs(mh.evaluate(f, z) - mh.evaluate(g, z)) <= 1e-12 * max(1.0, abs(mh.evaluate(f, z)))
