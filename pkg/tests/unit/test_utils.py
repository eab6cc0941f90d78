import json
import math

import numpy as np
import pytest
from django.core.exceptions import ValidationError

from core.tensors import ExponentVector
from tfa.domain import Certificate
from tfa.utils import (
    as_kernel,
    as_signal,
    format_table,
    gaussian_window,
    jsonable,
    read_complex_csv,
    read_json_config,
    require_nonzero_window,
    require_same_modulus,
    write_complex_csv,
    write_json_report,
    write_table_csv,
)


class TestValidation:
    def test_signal_rank(self):
        with pytest.raises(ValidationError):
            as_signal(np.ones((2, 2)))

    def test_kernel_square(self):
        with pytest.raises(ValidationError):
            as_kernel(np.ones((2, 3)))

    def test_modulus_mismatch_names_fields(self):
        with pytest.raises(ValidationError) as excinfo:
            require_same_modulus(("signal", np.ones(4)), ("window", np.ones(5)))
        assert "signal: N=4" in excinfo.value.messages[0]
        assert "window: N=5" in excinfo.value.messages[0]

    def test_zero_window(self):
        with pytest.raises(ValidationError):
            require_nonzero_window(np.zeros(3))


class TestGaussianWindow:
    @pytest.mark.parametrize("N", [1, 2, 8, 25])
    def test_unit_norm_and_symmetric(self, N):
        window = gaussian_window(N)
        assert window.shape == (N,)
        assert np.linalg.norm(window) == pytest.approx(1.0, rel=1e-14)
        np.testing.assert_allclose(window, window[(-np.arange(N)) % N], rtol=1e-12)
        assert np.all(window.real > 0)

    def test_peak_at_origin(self):
        window = gaussian_window(8)
        assert np.argmax(np.abs(window)) == 0

    def test_rejects_bad_modulus(self):
        with pytest.raises(ValidationError):
            gaussian_window(0)


class TestComplexCsv:
    def test_round_trip_is_exact(self, tmp_path, random_complex):
        values = random_complex(4, 4)
        path = write_complex_csv(tmp_path / "kernel.csv", values)
        restored = read_complex_csv(path).reshape((4, 4), order="F")
        np.testing.assert_array_equal(restored, values)

    def test_axis_one_fastest(self, tmp_path):
        path = write_complex_csv(tmp_path / "k.csv", np.array([[1, 2], [3, 4]]))
        lines = path.read_text().splitlines()
        assert lines[0] == "re,im"
        assert [line.split(",")[0] for line in lines[1:]] == ["1.0", "3.0", "2.0", "4.0"]

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValidationError) as excinfo:
            read_complex_csv(tmp_path / "missing.csv")
        assert excinfo.value.messages[0].startswith("input:")

    @pytest.mark.parametrize(
        "content, fragment",
        [
            ("x,y\n1,2\n", "row 1"),
            ("re,im\n1,2\n1,2,3\n", "row 3"),
            ("re,im\n1,2\n3,abc\n", "row 3"),
            ("re,im\nnan,0\n", "row 2"),
            ("re,im\n", "no entries"),
        ],
    )
    def test_malformed(self, tmp_path, content, fragment):
        path = tmp_path / "bad.csv"
        path.write_text(content)
        with pytest.raises(ValidationError) as excinfo:
            read_complex_csv(path)
        assert fragment in excinfo.value.messages[0]


class TestJson:
    def test_config_must_be_object(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("[1, 2]")
        with pytest.raises(ValidationError):
            read_json_config(path)

    def test_config_must_parse(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{N: 4}")
        with pytest.raises(ValidationError) as excinfo:
            read_json_config(path)
        assert excinfo.value.messages[0].startswith("config:")

    def test_jsonable(self):
        certificate = Certificate(
            space_pair="M^1 -> M^2",
            bound=math.inf,
            method="test",
            ingredients={"x": np.float64(2.5)},
            verdicts={"M^1 -> M^2": np.bool_(False)},
            endpoints=(1.0, 2.0),
        )
        converted = jsonable(
            {"certificate": certificate, "z": 1 + 2j, "exps": ExponentVector.of(1, "inf")}
        )
        assert converted["certificate"]["bound"] == "inf"
        assert converted["certificate"]["ingredients"] == {"x": 2.5}
        assert converted["certificate"]["verdicts"] == {"M^1 -> M^2": False}
        assert converted["z"] == [1.0, 2.0]
        assert converted["exps"] == "(1,inf)"
        json.dumps(converted)

    def test_write_report(self, tmp_path):
        path = write_json_report(tmp_path / "r.json", {"value": np.array([1.0, math.inf])})
        assert json.loads(path.read_text()) == {"value": [1.0, "inf"]}


class TestTables:
    def test_format_table(self):
        text = format_table(["name", "value"], [("a", 1.5), ("long name", math.inf)])
        lines = text.splitlines()
        assert len(lines) == 4
        assert lines[0].startswith("name")
        assert lines[3].endswith("inf")
        assert len({len(line) for line in lines}) == 1

    def test_write_table_csv(self, tmp_path):
        path = write_table_csv(tmp_path / "t.csv", ["N", "value"], [(4, 8.0), (9, math.inf)])
        assert path.read_text().splitlines() == ["N,value", "4,8.0", "9,inf"]
