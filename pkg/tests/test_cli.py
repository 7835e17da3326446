import csv
import json
import math
import subprocess
import sys

import pytest

from spinpolaron.cli import main, parse_path, UsageError


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(path):
    lines = path.read_text().splitlines()
    meta = [l for l in lines if l.startswith("#")]
    rows = list(csv.DictReader(l for l in lines if not l.startswith("#")))
    return meta, rows


class TestDispersion:
    def test_spinon_csv(self, tmp_path, capsys):
        out = tmp_path / "band.csv"
        code, _, _ = run(["dispersion", "--band", "spinon", "--J", "1", "--S", "0.5",
                          "--path", "G,K,M,G", "--n", "100", "--out", str(out)], capsys)
        assert code == 0
        meta, rows = read_csv(out)
        assert "# band: spinon" in meta
        assert list(rows[0]) == ["arclength", "kx", "ky", "value"]
        assert len(rows) == 301
        assert float(rows[0]["value"]) == 0
        assert abs(float(rows[100]["value"])) < 1e-12  # K
        assert float(rows[200]["value"]) == pytest.approx(1.0, abs=1e-12)  # M
        assert float(rows[-1]["value"]) == 0

    def test_holon_bounds(self, tmp_path, capsys):
        out = tmp_path / "h.csv"
        assert run(["dispersion", "--band", "holon", "--t", "1", "--tprime", "0", "--out", str(out)], capsys)[0] == 0
        vals = [float(r["value"]) for r in read_csv(out)[1]]
        assert min(vals) >= -0.5 - 1e-12 and max(vals) <= 0.25 + 1e-12

    def test_seventeen_digits(self, tmp_path, capsys):
        out = tmp_path / "b.csv"
        run(["dispersion", "--path", "G,M", "--n", "3", "--out", str(out)], capsys)
        row = read_csv(out)[1][1]
        assert float(row["kx"]) == math.pi / 3
        assert row["kx"] == format(math.pi / 3, ".17g")

    def test_json_format(self, tmp_path, capsys):
        out = tmp_path / "b.json"
        assert run(["dispersion", "--format", "json", "--path", "G,1.0:0.5", "--n", "2", "--out", str(out)], capsys)[0] == 0
        doc = json.loads(out.read_text())
        assert doc["band"] == "spinon" and len(doc["samples"]) == 3
        assert doc["samples"][-1]["kx"] == 1.0 and doc["samples"][-1]["ky"] == 0.5

    def test_n_zero(self, capsys):
        code, _, err = run(["dispersion", "--n", "0"], capsys)
        assert code == 2 and "samples_per_segment" in err

    @pytest.mark.parametrize("argv, field", [
        (["dispersion", "--path", "G,X"], "--path"),
        (["dispersion", "--path", "G"], "--path"),
        (["dispersion", "--J", "nan"], "--J"),
        (["summary", "--grid", "4"], "--grid"),
        (["summary", "--format", "csv"], "--format"),
        (["verify", "--S", "0.3"], "--S"),
    ])
    def test_usage_errors_name_field(self, argv, field, capsys):
        code, _, err = run(argv, capsys)
        assert code == 2 and field in err

    def test_argparse_errors_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["dispersion", "--band", "phonon"])
        assert exc.value.code == 2

    def test_unwritable(self, tmp_path, capsys):
        code, _, err = run(["dispersion", "--out", str(tmp_path / "missing" / "x.csv")], capsys)
        assert code == 3 and "--out" in err

    def test_plot_script(self, tmp_path, capsys):
        out, script = tmp_path / "b.csv", tmp_path / "plot.py"
        assert run(["dispersion", "--out", str(out), "--plot-script", str(script)], capsys)[0] == 0
        text = script.read_text()
        assert str(out) in text and "matplotlib" in text
        compile(text, str(script), "exec")
        assert run(["dispersion", "--plot-script", str(script)], capsys)[0] == 2

    def test_stdout_and_env_dir(self, tmp_path, capsys, monkeypatch):
        monkeypatch.delenv("SPINPOLARON_OUTPUT_DIR", raising=False)
        code, out, _ = run(["dispersion", "--n", "2", "--path", "G,K"], capsys)
        assert code == 0 and "arclength,kx,ky,value" in out
        monkeypatch.setenv("SPINPOLARON_OUTPUT_DIR", str(tmp_path))
        assert run(["dispersion", "--n", "2", "--path", "G,K"], capsys)[0] == 0
        assert (tmp_path / "dispersion.csv").read_text() == out


def test_parse_path():
    pts = parse_path("G, K2 ,M,0.5:-1")
    assert [n for n, _ in pts] == ["G", "K2", "M", "0.5:-1"]
    assert pts[1][1].kx == pytest.approx(-4 * math.pi / 3)
    with pytest.raises(UsageError):
        parse_path("G,,K")


class TestSummary:
    def test_holon(self, tmp_path, capsys):
        out = tmp_path / "s.json"
        assert run(["summary", "--band", "holon", "--t", "1", "--tprime", "0", "--out", str(out)], capsys)[0] == 0
        doc = json.loads(out.read_text())
        assert set(doc) >= {"band", "min", "max", "bandwidth", "argmin", "argmax", "grid_resolution"}
        assert abs(doc["bandwidth"] - 0.75) < 1e-9

    def test_spinon(self, capsys):
        code, out, _ = run(["summary", "--band", "spinon", "--J", "1", "--S", "0.5"], capsys)
        assert code == 0 and abs(json.loads(out)["min"]) < 1e-9

    def test_flat(self, capsys):
        code, out, _ = run(["summary", "--band", "holon", "--t", "0", "--tprime", "0", "--grid", "8"], capsys)
        assert json.loads(out)["bandwidth"] == 0


class TestVerify:
    def test_default_sweep(self, tmp_path, capsys):
        out = tmp_path / "v.json"
        assert run(["verify", "--out", str(out)], capsys)[0] == 0
        reports = json.loads(out.read_text())
        assert reports and all(r["passed"] for r in reports)

    def test_single_check(self, capsys):
        code, out, _ = run(["verify", "--S", "0.5", "--check", "su2"], capsys)
        reports = json.loads(out)
        assert code == 0 and len(reports) == 1
        assert reports[0]["max_deviation"] < 1e-12

    def test_unknown_check(self, capsys):
        assert run(["verify", "--check", "unknown-name"], capsys)[0] == 2

    def test_failure_exit_1(self, capsys, monkeypatch):
        import spinpolaron.cli as cli
        from spinpolaron.verification import VerificationReport

        monkeypatch.setattr(cli, "run_sweep", lambda s, c: [VerificationReport("x", 1.0)])
        code, out, _ = run(["verify"], capsys)
        assert code == 1 and json.loads(out)[0]["passed"] is False


class TestBz:
    def test_contents(self, capsys):
        code, out, _ = run(["bz"], capsys)
        doc = json.loads(out)
        assert code == 0
        assert len(doc["nn_vectors"]) == 6
        assert doc["nn_vectors"][0] == [1.0, 0.0] and doc["nn_vectors"][1] == [-1.0, 0.0]
        k = doc["high_symmetry_points"]["K"]
        assert abs(k[0] - 4 * math.pi / 3) < 1e-12 and k[1] == 0
        nn = {tuple(v) for v in doc["nn_vectors"]}
        assert nn.isdisjoint({tuple(v) for v in doc["nnn_vectors"]})
        assert len(doc["reciprocal_basis"]) == 2


@pytest.mark.parametrize("argv", [
    ["dispersion", "--band", "holon", "--tprime", "0.2", "--n", "40"],
    ["dispersion", "--format", "json", "--n", "10"],
    ["summary", "--band", "spinon", "--grid", "24"],
    ["verify", "--S", "1"],
    ["bz"],
])
def test_byte_identical(argv, tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"out{i}"
        r = subprocess.run([sys.executable, "-m", "spinpolaron.cli", *argv, "--out", str(p)], capture_output=True)
        assert r.returncode == 0, r.stderr
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    assert b"\r\n" not in outs[0]


def test_json_seventeen_digits(capsys):
    from spinpolaron.cli import _dumps

    text = _dumps({"a": 0.1, "b": [1.0, 2, True, None], "c": {}, "d": "x", "e": float("nan")})
    assert '"a": 0.10000000000000001' in text and "1.0," in text and "NaN" in text
    doc = json.loads(text)
    assert doc["a"] == 0.1 and doc["b"] == [1.0, 2, True, None] and isinstance(doc["b"][0], float)
    assert json.loads(_dumps([math.pi]))[0] == math.pi
