import json

import pytest

from genmac import cli

A1_POLY_X = '{"root_system": "A1", "coefficients": {"kind": "poly_x"}, "Nq": 8}'
A1_POLY_XY = '{"root_system": "A1", "coefficients": {"kind": "poly_xy"}, "Nq": 6}'


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_macpoly_example(capsys, tmp_path):
    path = tmp_path / "a1_polyx.json"
    path.write_text(A1_POLY_X)
    code, out, _ = run(capsys, "macpoly", "--algebra", str(path), "--lambda", "2", "--Nq", "8",
                       "--no-cache")
    assert code == 0
    assert out.splitlines()[0].startswith("P_(2) = m_(2) + (1 + q) m_(0)")


def test_norm_product_verify_table(capsys):
    code, out, _ = run(capsys, "norm-product-verify", "--rs", "A1", "--lambda-max", "5", "--Nq", "12",
                       "--format", "csv")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert len(rows) == 6


def test_bgg_negative_control_reports_fail(capsys):
    code, out, _ = run(capsys, "bgg-verify", "--algebra", A1_POLY_XY, "--lambda-max", "2", "--Nq", "6")
    assert code == 0
    assert "FAIL" in out


def test_pair_json(capsys):
    code, out, _ = run(capsys, "pair", "--algebra", A1_POLY_X, "--lambda", "1", "--basis", "m",
                       "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["text"] == "1 - q + O(q^9, t^1)"


def test_homology_commands(capsys):
    for argv in (["t3-verify"], ["phi-verify", "--rs", "A1"], ["euler-verify"],
                 ["cohomology", "--algebra", '{"builtin": "t3"}']):
        code, out, _ = run(capsys, *argv)
        assert code == 0, argv
        if argv[0] != "cohomology":
            assert "overall: PASS" in out


def test_euler_verify_with_modules(capsys):
    alg = '{"builtin": "current", "root_system": "A1", "coefficients": {"kind": "trunc_x", "n": 2}}'
    code, out, _ = run(capsys, "euler-verify", "--algebra", alg, "--module",
                       '{"builtin": "irreducible", "highest_weight": [2]}', "--format", "json")
    assert code == 0
    assert json.loads(out)["status"] == "PASS"


@pytest.mark.parametrize("argv", [
    ["macpoly", "--algebra", A1_POLY_X, "--lambda", "-1"],
    ["macpoly", "--algebra", A1_POLY_X, "--lambda", "x"],
    ["macpoly", "--algebra", "/nonexistent.json", "--lambda", "1"],
    ["macpoly", "--algebra", A1_POLY_X, "--lambda", "1", "--Nq", "0"],
    ["norms", "--algebra", '{"root_system": "A1", "coefficients": {"kind": "nope"}, "Nq": 3}',
     "--lambda-max", "1"],
    ["norm-product-verify", "--lambda-max", "2"],
    ["phi-verify", "--rs", "A1", "--generators", "1"],
    ["cohomology", "--algebra", '{"builtin": "unknown"}'],
])
def test_config_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["macpoly", "--format", "xml"])
    assert info.value.code == 2


def test_internal_error_exit_1(capsys, monkeypatch):
    from genmac.pairing import PathDisagreement

    def boom(cfg):
        raise PathDisagreement("two routes differ")

    monkeypatch.setitem(cli.COMMANDS, "norms", boom)
    code, _, err = run(capsys, "norms", "--algebra", A1_POLY_X, "--lambda-max", "1")
    assert code == 1 and "two routes differ" in err


def test_deterministic_and_cache(capsys, tmp_path, monkeypatch):
    from genmac.macdonald import clear_memo

    args = ["norms", "--algebra", A1_POLY_X, "--lambda-max", "4", "--format", "json"]
    clear_memo()
    _, cold, _ = run(capsys, *args, "--no-cache")
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    clear_memo()
    _, first, _ = run(capsys, *args)
    files = sorted(tmp_path.iterdir())
    assert files
    clear_memo()
    _, hit, _ = run(capsys, *args)
    assert cold == first == hit
    # a cache written by another format version is ignored and rewritten
    for f in files:
        obj = json.loads(f.read_text())
        obj["version"] = -1
        obj["norm"]["terms"] = [[0, 0, "42"]]
        f.write_text(json.dumps(obj))
    clear_memo()
    _, again, _ = run(capsys, *args)
    assert again == cold
    assert json.loads(files[0].read_text())["version"] == cli.CACHE_VERSION
