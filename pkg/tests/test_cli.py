import json

import pytest

from signedbpo.cli import main


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestCheck:
    def test_certified(self, tmp_path, capsys):
        path = write(tmp_path, "f.poly", "2 :\n-1 : 1 2\n")
        assert main(["check", path]) == 0
        out = capsys.readouterr().out
        assert "min = 1" in out and "certified" in out

    def test_violated(self, tmp_path, capsys):
        path = write(tmp_path, "f.poly", "1 :\n-1 : 1\n-1 : 2\n")
        assert main(["check", path]) == 1
        assert "violated" in capsys.readouterr().out

    def test_not_nns_is_usage_error(self, tmp_path):
        path = write(tmp_path, "f.poly", "1 : 1 2\n")
        assert main(["check", path]) == 2


class TestMin:
    def test_nns_uses_mincut(self, tmp_path, capsys):
        path = write(tmp_path, "f.poly", "3 :\n-1 : 1 2\n-1 : 2 3\n")
        assert main(["min", path]) == 0
        out = capsys.readouterr().out
        assert "min = 1" in out and "min-cut" in out

    def test_general_uses_brute_force(self, tmp_path, capsys):
        path = write(tmp_path, "f.poly", "1 : 1 2\n-1 : 1\n")
        assert main(["min", path]) == 0
        assert "brute force" in capsys.readouterr().out


class TestRelax:
    def test_poly_level(self, tmp_path, capsys):
        path = write(tmp_path, "f.poly", "1 : 1 2\n1 : 3 4\n-2 : 1 3\n")
        assert main(["relax", path, "--method", "std", "--level", "1"]) == 0
        assert "lower bound" in capsys.readouterr().out

    def test_rudy_with_gap(self, tmp_path, capsys):
        path = write(tmp_path, "g.rudy", "3 3\n1 2 1\n1 3 1\n2 3 1\n")
        assert main(["relax", path, "--method", "std", "--level", "1", "--opt", "2"]) == 0
        out = capsys.readouterr().out
        assert "upper bound on max cut" in out and "gap" in out

    def test_sa1_float(self, tmp_path, capsys):
        path = write(tmp_path, "g.rudy", "3 3\n1 2 1\n1 3 1\n2 3 1\n")
        assert main(["relax", path, "--method", "sa1", "--float"]) == 0
        assert "lower bound" in capsys.readouterr().out

    def test_cutplane_mode(self, tmp_path, capsys):
        path = write(tmp_path, "f.poly", "1 : 1 2\n-1 : 1\n")
        assert main(["relax", path, "--method", "lov", "--level", "1", "--mode", "cutplane"]) == 0

    def test_level_out_of_range(self, tmp_path):
        path = write(tmp_path, "f.poly", "1 : 1 2\n")
        assert main(["relax", path, "--level", "99"]) == 2


class TestExport:
    def test_writes_mps_and_names(self, tmp_path, capsys):
        poly = write(tmp_path, "f.poly", "1 : 1 2\n-1 : 1\n")
        mps = str(tmp_path / "out.mps")
        assert main(["export", poly, "--mps", mps, "--method", "std", "--level", "1"]) == 0
        text = (tmp_path / "out.mps").read_text()
        assert text.startswith("NAME") and "ENDATA" in text
        names = json.loads((tmp_path / "out.mps.names.json").read_text())
        assert all(len(v) <= 8 for v in names.values())


class TestReportAndExperiment:
    def test_experiment_then_report(self, tmp_path, capsys):
        g = write(tmp_path, "toy.rudy", "4 4\n1 2 1\n2 3 1\n3 4 1\n1 3 -1\n")
        opt = tmp_path / "opt.json"
        opt.write_text(json.dumps({"toy.rudy": 3}))  # maxcut value
        csv_path = str(tmp_path / "runs.csv")
        rc = main(
            [
                "experiment",
                g,
                "--methods",
                "sa1,std",
                "--levels",
                "1,2",
                "--out",
                csv_path,
                "--opt-file",
                str(opt),
            ]
        )
        assert rc == 0
        capsys.readouterr()
        assert main(["report", csv_path]) == 0
        table = capsys.readouterr().out
        assert "sa1" in table and "standard" in table

    def test_missing_file_is_usage_error(self, capsys):
        assert main(["check", "/nonexistent/file.poly"]) == 2
        assert "error" in capsys.readouterr().err


class TestSeedFlag:
    def test_accepted(self, tmp_path):
        path = write(tmp_path, "f.poly", "2 :\n-1 : 1 2\n")
        assert main(["--seed", "7", "check", path]) == 0
