import csv
import json
import math

import pytest

from qadvantage.cli import figure_rows, main


def _read(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], [[float(v) for v in r] for r in rows[1:]]


class TestFigure:
    @pytest.mark.parametrize("fig", ["fig1", "fig2", "fig3", "fig4"])
    def test_deterministic_and_ordered(self, tmp_path, fig):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["figure", "--id", fig, "--out", str(a)]) == 0
        assert main(["figure", "--id", fig, "--out", str(b)]) == 0
        raw = a.read_bytes()
        assert raw == b.read_bytes()
        assert b"\r" not in raw and raw.endswith(b"\n")
        header, rows = _read(a)
        for i, h in enumerate(header):
            if h.startswith("adv_weak"):
                assert all(r[i] >= r[i + 1] - 1e-9 for r in rows)

    def test_fig1_columns(self, tmp_path):
        out = tmp_path / "f.csv"
        main(["figure", "--id", "fig1", "--out", str(out)])
        header, rows = _read(out)
        assert header == ["x", "adv_weak_maxent", "adv_proj_maxent",
                          "adv_weak_lam0_sqrt2over2", "adv_proj_lam0_sqrt2over2"]
        assert len(rows) == 500
        assert rows[0][0] == 0.01 and rows[-1][0] == 5.0
        assert rows[0][1] == pytest.approx(2.0, abs=1e-3)

    def test_fig2_plane(self):
        header, rows = figure_rows("fig2")
        assert header == ["x", "theta", "adv_weak", "adv_proj"]
        assert len(rows) == 101 * 101
        assert all(abs(r[3] - 0.045) <= 1e-3 for r in rows)

    def test_fig3_fig4(self):
        header, rows = figure_rows("fig3")
        assert header == ["c", "adv_weak", "adv_proj"]
        assert rows[0][0] == 0.0 and rows[-1][0] == 1.0
        header, rows = figure_rows("fig4")
        row8 = [r for r in rows if r[0] == 8.0][0]
        assert abs(row8[1] - row8[2]) < 2e-3

    def test_twelve_significant_digits(self, tmp_path):
        out = tmp_path / "f.csv"
        main(["figure", "--id", "fig4", "--out", str(out)])
        line = out.read_text().splitlines()[2]
        assert line.split(",")[1] == f"{float(line.split(',')[1]):.12g}"

    def test_unwritable(self, tmp_path):
        assert main(["figure", "--id", "fig1", "--out", str(tmp_path / "no" / "x.csv")]) == 2


class TestReport:
    def test_maxent(self, capsys):
        assert main(["report", "--family", "pure", "--lambda0", "0.5", "--scheme", "projective"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["advantage"]["delta_i"] == pytest.approx(1.0, abs=1e-12)
        assert out["advantage"]["iq"] == pytest.approx(2.0, abs=1e-12)

    def test_weak_fixed_basis(self, capsys):
        args = ["report", "--family", "belldiag", "--c1", "0.15", "--c2", "0.03", "--c3", "0.7",
                "--scheme", "weak", "--x", "1", "--theta", "0.5", "--phi", "0"]
        assert main(args) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["advantage"]["delta_i"] == pytest.approx(out["closed_form"]["adv_weak"], abs=1e-9)

    def test_unphysical(self, capsys):
        assert main(["report", "--family", "belldiag", "--c1", "0.9", "--c2", "0.9", "--c3", "0.9"]) == 2
        assert "unphysical" in capsys.readouterr().err

    def test_bad_flag(self):
        with pytest.raises(SystemExit) as exc:
            main(["report", "--family", "nope"])
        assert exc.value.code == 2


class TestSweep:
    def test_werner_x(self, tmp_path):
        out = tmp_path / "s.csv"
        args = ["sweep", "--family", "werner", "--c", "0.4", "--scheme", "weak", "--axis", "x",
                "--start", "0.1", "--stop", "4", "--steps", "5", "--out", str(out)]
        assert main(args) == 0
        header, rows = _read(out)
        assert header[0] == "x" and len(rows) == 5
        i, j = header.index("delta_i"), header.index("closed_adv")
        for r in rows:
            assert r[i] == pytest.approx(r[j], abs=1e-6)

    @pytest.mark.parametrize("extra", [["--axis", "lambda0"], ["--axis", "c", "--steps", "1"]])
    def test_invalid(self, tmp_path, extra):
        base = {"--axis": "c", "--start": "0", "--stop": "1", "--steps": "3"}
        for k, v in zip(extra[::2], extra[1::2]):
            base[k] = v
        args = ["sweep", "--family", "werner", "--c", "0.4", "--out", str(tmp_path / "s.csv")]
        for k, v in base.items():
            args += [k, v]
        assert main(args) == 2


class TestVerify:
    def test_injected_unphysical(self, capsys):
        assert main(["verify", "--grid", "2", "--triple", "0.9", "0.9", "0.9"]) == 2
        assert "unphysical" in capsys.readouterr().err
