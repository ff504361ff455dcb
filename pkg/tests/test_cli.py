import json
import subprocess
import sys

import jsonschema
import pytest

from toricroots import cli


@pytest.fixture(scope="module")
def schema():
    return cli.load_schema()


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out, json.loads(out)


def check(schema, report):
    jsonschema.validate(report, schema)
    if "result" in report:
        sub = schema["definitions"]["results"][report["command"]]
        jsonschema.validate(report["result"], {**sub, "definitions": schema["definitions"]})


@pytest.fixture
def files(data_dir, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"rank": 2, "rays": [[2, 0], [0, 1]], "cones": [[0, 1]]}))
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    half = tmp_path / "half.json"
    half.write_text(json.dumps({"coefficients": ["1/2", "0"]}))
    return {
        "a2": data_dir / "a2.json",
        "quad": data_dir / "quadric_cone.json",
        "de1": data_dir / "d_e1.json",
        "bad": bad,
        "junk": junk,
        "half": half,
    }


def success_cases(f):
    return [
        ("validate", "--fan", f["a2"]),
        ("div-char", "--fan", f["a2"], "--v=-1,2"),
        ("class-group", "--fan", f["quad"]),
        ("root", "--fan", f["a2"], "--v", "1,1", "--n", 2),
        ("ramify", "--fan", f["quad"], "--v", "1,1", "--n", 2),
        ("eigensheaves", "--fan", f["quad"], "--v", "1,1", "--n", 2),
        ("diff-decomp", "--fan", f["a2"], "--divisor", f["half"], "--n", 2, "--mode", "forms"),
        ("codim1", "--n", 6, "--m", 4),
        ("kummer", "--f", 16, "--n", 4),
        ("capelli", "--f", -4, "--n", 4),
        ("index-cover", "--fan", f["quad"], "--divisor", f["de1"]),
        ("semistable", "--m", "1,1", "--n", 2),
    ]


def test_every_command_succeeds_and_validates(capsys, schema, files):
    cases = success_cases(files)
    assert {c[0] for c in cases} == set(cli.COMMANDS)
    for argv in cases:
        code, _, report = run(capsys, *argv)
        assert code == 0, report
        assert report["schema_version"] == "1" and report["command"] == argv[0]
        check(schema, report)


def test_output_is_deterministic(capsys, files):
    for argv in success_cases(files):
        first = run(capsys, *argv)[1]
        assert run(capsys, *argv)[1] == first


def test_root_a2(capsys, files):
    _, _, rep = run(capsys, "root", "--fan", files["a2"], "--v", "1,1", "--n", 2)
    res = rep["result"]
    assert res["d"] == 1 and res["n_prime"] == 2 and res["flat"] is True


def test_semistable_node(capsys):
    _, _, rep = run(capsys, "semistable", "--m", "1,1", "--n", 2)
    assert rep["result"]["normal"] is True and rep["result"]["smooth"] is False


def test_capelli_reducible(capsys):
    _, _, rep = run(capsys, "capelli", "--f", "-4", "--n", 4)
    assert rep["result"]["irreducible"] is False and rep["result"]["reason"]


def test_index_cover_quadric(capsys, files):
    _, _, rep = run(capsys, "index-cover", "--fan", files["quad"], "--divisor", files["de1"])
    assert rep["result"]["r"] == 2 and rep["result"]["v"] == [2, -1]


@pytest.mark.parametrize(
    "argv, name",
    [
        (("validate", "--fan", "bad"), "NotPrimitive"),
        (("capelli", "--f", 0, "--n", 2), "ZeroInput"),
        (("root", "--fan", "a2", "--v", "1,1", "--n", 0), "BadN"),
        (("div-char", "--fan", "a2", "--v", "1,2,3"), "DimensionMismatch"),
        (("semistable", "--m", "1", "--n", 1), "BadInput"),
        (("kummer", "--f", 16, "--n", 4, "--level", 1), "LevelTooSmall"),
    ],
)
def test_library_errors_exit_one(capsys, schema, files, argv, name):
    argv = [files.get(a, a) if isinstance(a, str) else a for a in argv]
    code, _, rep = run(capsys, *argv)
    assert code == 1
    assert rep["error"]["name"] == name and rep["error"]["detail"]
    check(schema, rep)


@pytest.mark.parametrize(
    "argv",
    [
        ("validate", "--fan", "missing.json"),
        ("validate", "--fan", "junk"),
        ("root", "--fan", "a2", "--v", "x,y", "--n", 2),
        ("capelli", "--f", "1/0", "--n", 2),
        ("nosuchcommand",),
        ("root", "--fan", "a2"),
    ],
)
def test_malformed_input_exit_two(capsys, schema, files, argv):
    argv = [files.get(a, a) for a in argv]
    code, _, rep = run(capsys, *argv)
    assert code == 2
    assert rep["error"]["name"] == "MalformedInput"
    check(schema, rep)


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert cli.main(["-o", str(target), "codim1", "--n", "6", "--m", "4"]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["result"]["j"] == 2


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "toricroots", "class-group", "--fan", str(files["quad"])],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["torsion"] == [2]
