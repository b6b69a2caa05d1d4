import json
from fractions import Fraction as F

import pytest

from signedbpo.lpmodel import LpModel, mps_string, write_mps


def small_model():
    m = LpModel("toy")
    m.add_var("x")
    m.add_var("y", free=True)
    m.add_constr({"x": 1, "y": 2}, "<=", F(7, 2), name="cap")
    m.add_constr({"x": 1, "y": -1}, "=", 1, name="link")
    m.set_objective({"x": 3, "y": -1})
    return m


class TestModel:
    def test_counts(self):
        m = small_model()
        assert m.num_rows == 2 and m.num_cols == 2

    def test_duplicate_var(self):
        m = LpModel()
        m.add_var("x")
        with pytest.raises(ValueError):
            m.add_var("x")

    def test_undeclared_var(self):
        m = LpModel()
        m.add_var("x")
        with pytest.raises(ValueError):
            m.add_constr({"z": 1}, "<=", 0)
        with pytest.raises(ValueError):
            m.set_objective({"z": 1})

    def test_bad_sense(self):
        m = LpModel()
        m.add_var("x")
        with pytest.raises(ValueError):
            m.add_constr({"x": 1}, "<", 0)

    def test_copy_independent(self):
        m = small_model()
        c = m.copy()
        c.add_var("z")
        assert m.num_cols == 2 and c.num_cols == 3

    def test_check_point(self):
        m = small_model()
        assert m.check_point({"x": F(1), "y": F(0)})
        assert not m.check_point({"x": F(0), "y": F(2)})  # equality violated
        assert not m.check_point({"x": F(-1), "y": F(-2)})  # x >= 0 violated
        assert m.check_point({"x": F(0), "y": F(-1)})  # free var may go negative


class TestMps:
    def test_sections_and_names(self):
        text, mapping = mps_string(small_model())
        for section in ("NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"):
            assert section in text
        assert " N  OBJ" in text
        assert " L  " in text and " E  " in text
        assert " FR BND" in text  # the free variable
        for original, mangled in mapping.items():
            assert len(mangled) <= 8
        assert mapping["x"].startswith("C") and mapping["cap"].startswith("R")

    def test_deterministic(self):
        a, _ = mps_string(small_model())
        b, _ = mps_string(small_model())
        assert a == b

    def test_write_files(self, tmp_path):
        path = tmp_path / "toy.mps"
        mapping = write_mps(small_model(), str(path))
        assert path.exists()
        names = json.loads((tmp_path / "toy.mps.names.json").read_text())
        assert names == {k: v for k, v in mapping.items()}

    def test_objective_negated_for_minimizing_consumers(self):
        text, mapping = mps_string(small_model())
        x_col = mapping["x"]
        obj_lines = [ln for ln in text.splitlines() if ln.strip().startswith(x_col) and "OBJ" in ln]
        assert obj_lines and "-3" in obj_lines[0].replace(".00000E+00", "")
