import json
import subprocess
import sys
from importlib.resources import files

import jsonschema
import pytest

from totreal.cli import parse_element, parse_g, parse_polynomial, render_text, run, UsageError
from totreal.config import Config, ConfigError, ENV_VAR, load_config, parse_config
from totreal.exactnum import IntPolynomial, field_create

COMMANDS = [
    ["field-info", "--field", "x^3+x^2-2x-1"],
    ["g", "--s", "2", "--n", "9"],
    ["classify-small", "--field", "x^2-x-1", "--alpha", "2,-1", "--case"],
    ["gamma", "--field", "x^2-2"],
    ["units", "--D", "3"],
    ["represent", "--field", "x^2-2", "--gram", "[[1,0],[0,1]]", "--alpha", "5,2"],
    ["represent", "--field", "x", "--gram", "[[1,0,0],[0,1,0],[0,0,1]]", "--alpha", "7"],
    ["verify-bound", "--D", "3", "--rank", "2", "--trials", "3", "--seed", "11"],
    ["coverage-search", "--D", "3", "--rank", "2", "--limit", "5", "--top", "2"],
    ["prime-seq", "--count", "3"],
    ["squarefree-scan", "--limit", "100"],
    ["tower", "--stages", "2"],
    ["house", "--field", "x^2-2", "--alpha", "0,1", "--r", "3/2"],
    ["member", "--field", "x^3+x^2-2x-1", "--in", "g(1/7),g(2/7)", "--out", "g(1/8)"],
    ["local-represent", "--p", "5", "--alpha", "7", "--precision", "3"],
]


def schema(name):
    return json.loads(files("totreal").joinpath("schemas", f"{name}.json").read_text())


def invoke(argv, capsys):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def no_config(monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:1] + a[1:3]))
def test_output_matches_schema(argv, capsys):
    code, out, err = invoke(argv, capsys)
    assert code == 0, err
    s = schema(argv[0])
    jsonschema.Draft202012Validator.check_schema(s)
    jsonschema.validate(json.loads(out), s, cls=jsonschema.Draft202012Validator)


def test_schemas_are_valid_and_complete():
    names = {p.name for p in files("totreal").joinpath("schemas").iterdir() if p.name.endswith(".json")}
    assert names == {f"{a[0]}.json" for a in COMMANDS} | {"error.json"}
    for n in names:
        jsonschema.Draft202012Validator.check_schema(schema(n[:-5]))


def test_known_outputs(capsys):
    assert json.loads(invoke(["prime-seq", "--count", "3"], capsys)[1]) == [7, 11, 47]
    gamma = json.loads(invoke(["gamma", "--field", "x^2-2"], capsys)[1])
    assert gamma["m"] == 4 and gamma["gamma"]["coords"] == ["2", "1"]
    rep = json.loads(invoke(COMMANDS[6], capsys)[1])
    assert rep["outcome"] == "Exhausted" and rep["witness"] is None
    rep = json.loads(invoke(["represent", "--field", "x", "--gram", "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]",
                             "--alpha", "7"], capsys)[1])
    assert rep["outcome"] == "Represented" and rep["witness"]["coords"] == [2, 1, 1, 1]
    house = json.loads(invoke(COMMANDS[12], capsys)[1])
    assert house["ordering"] == "LT"
    member = json.loads(invoke(COMMANDS[13], capsys)[1])
    assert member["member"] is True
    local = json.loads(invoke(COMMANDS[14], capsys)[1])
    assert local["coords"] == {"w": "0", "x": "4", "y": "46", "z": "0"}


# -- errors and exit codes -----------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["field-info", "--field", "x^2+1"],
    ["field-info", "--field", "x^2-1"],
    ["field-info", "--field", "2x^2-1"],
    ["field-info", "--field", "x^2-y"],
    ["field-info", "--field", "x^^2"],
    ["g", "--s", "1", "--n", "0"],
    ["represent", "--field", "x^2-2", "--gram", "[[1,0],[0]]", "--alpha", "1"],
    ["represent", "--field", "x^2-2", "--gram", "[[-1]]", "--alpha", "1"],
    ["house", "--field", "x^2-2", "--alpha", "1,2,3", "--r", "2"],
    ["gamma", "--field", "x^2-2", "--embedding", "5"],
    ["local-represent", "--p", "6", "--alpha", "1"],
    ["no-such-command"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, out, err = invoke(argv, capsys)
    assert code == 2 and out == ""


@pytest.mark.parametrize("argv, error", [
    (["classify-small", "--field", "x", "--alpha", "4"], "OutOfRange"),
    (["classify-small", "--field", "x", "--alpha", "1/2"], "NotIntegral"),
    (["represent", "--field", "x^2-2", "--gram", "[[1,0],[0,1]]", "--alpha", "0,1"], "NotTotallyNonnegative"),
    (["represent", "--field", "x", "--gram", "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]", "--alpha", "999999",
      "--budget", "10"], "BudgetExceeded"),
    (["units", "--D", "4"], "NotSquarefree"),
])
def test_domain_errors_exit_1(argv, error, capsys):
    code, out, err = invoke(argv, capsys)
    assert code == 1 and out == ""
    obj = json.loads(err)
    assert obj["error"] == error and obj["message"]
    jsonschema.validate(obj, schema("error"), cls=jsonschema.Draft202012Validator)


def test_text_format(capsys):
    code, out, _ = invoke(["--format", "text", "local-represent", "--p", "5", "--alpha", "7", "--precision", "3"], capsys)
    assert code == 0
    assert "p: 5" in out and "  x: 4" in out
    code, _, err = invoke(["--format", "text", "units", "--D", "4"], capsys)
    assert code == 1 and err.startswith("error: NotSquarefree")


def test_render_text():
    assert render_text([1, 2]) == "1 2"
    assert render_text({"a": {"b": [1, 2]}, "c": None}) == "a:\n  b: 1 2\nc: -"
    assert render_text([{"a": 1}]) == "-\n  a: 1"


# -- seeds and determinism -----------------------------------------------------

def test_seeded_runs_repeat(capsys):
    argv = ["verify-bound", "--D", "2", "--rank", "2", "--trials", "4", "--seed", "5"]
    assert invoke(argv, capsys)[1] == invoke(argv, capsys)[1]


def test_config_seed_used(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "totreal.conf"
    cfg.write_text("seed = 5\n")
    monkeypatch.setenv(ENV_VAR, str(cfg))
    from_config = json.loads(invoke(["verify-bound", "--D", "2", "--rank", "2", "--trials", "4"], capsys)[1])
    monkeypatch.delenv(ENV_VAR)
    explicit = json.loads(invoke(["verify-bound", "--D", "2", "--rank", "2", "--trials", "4", "--seed", "5"], capsys)[1])
    assert from_config == explicit and from_config["seed"] == 5


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "totreal", "prime-seq", "--count", "2"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out) == [7, 11]


# -- configuration -------------------------------------------------------------

def test_parse_config():
    cfg = parse_config("# comment\n\ndefault_precision_bits = 128\noutput_format = text  # trailing\nseed = 0x10\n")
    assert cfg == Config(128, Config().enumeration_budget, "text", 16)


@pytest.mark.parametrize("text", [
    "budget = 3", "seed", "seed = -1", "seed = abc", "enumeration_budget = 0",
    "default_precision_bits = 8", "output_format = xml", f"seed = {2 ** 64}",
])
def test_parse_config_rejects(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_load_config(tmp_path):
    assert load_config({}) == Config()
    with pytest.raises(ConfigError):
        load_config({ENV_VAR: str(tmp_path / "missing")})


def test_bad_config_exits_2(tmp_path, monkeypatch, capsys):
    bad = tmp_path / "bad.conf"
    bad.write_text("colour = blue\n")
    monkeypatch.setenv(ENV_VAR, str(bad))
    code, out, err = invoke(["prime-seq", "--count", "1"], capsys)
    assert code == 2 and json.loads(err)["error"] == "ConfigError"


# -- input parsers -------------------------------------------------------------

def test_parsers():
    assert parse_polynomial("x^3+x^2-2x-1") == IntPolynomial([-1, -2, 1, 1])
    assert parse_polynomial("t**2 - 2") == IntPolynomial([-2, 0, 1])
    with pytest.raises(UsageError):
        parse_polynomial("x^2/2 - 1")
    K = field_create([-2, 0, 1])
    assert parse_element(K, "[1, \"1/2\"]") == parse_element(K, "1,1/2") == 1 + K.gen / 2
    assert parse_element(K, "3") == K(3)
    with pytest.raises(UsageError):
        parse_element(K, "1,x")
    assert str(parse_g("g(9/7)")) == str(parse_g("2/7")) == "g(2/7)"


def test_coverage_search_alias(capsys):
    argv = ["--D", "3", "--rank", "2", "--limit", "3", "--top", "1"]
    assert invoke(["coverage-search", *argv], capsys)[1] == invoke(["q42-search", *argv], capsys)[1]
