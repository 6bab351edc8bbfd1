"""Tests for the structured-text document reader and the report writer."""

import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from pyqnk.document import Block, DocumentParser, read_matrices, read_report
from pyqnk.errors import ConfigError
from pyqnk.modcore import SL2Z
from pyqnk.report import CheckRecord, Report, format_float, passes


@pytest.fixture
def parser():
    return DocumentParser()


class TestBasicParsing:
    def test_empty_document(self, parser):
        result = parser.parse("")
        assert isinstance(result, Block)
        assert result.entries == []

    def test_scalars(self, parser):
        result = parser.parse("""
        seed = 42
        draws = 2.5e1
        suite = "qybe"
        flag = true
        other = false
        missing = null
        """)
        assert result.get("seed") == 42
        assert result.get("draws") == 25.0
        assert result.get("suite") == "qybe"
        assert result.get("flag") is True
        assert result.get("other") is False
        assert result.get("missing") is None

    def test_non_finite_numbers(self, parser):
        result = parser.parse("a = inf\nb = -inf\nc = nan")
        assert result.get("a") == math.inf
        assert result.get("b") == -math.inf
        assert math.isnan(result.get("c"))

    def test_arrays(self, parser):
        result = parser.parse("nk = [[2, 1], [3, 2]]\nempty = []")
        assert result.get("nk") == [[2, 1], [3, 2]]
        assert result.get("empty") == []

    def test_nested_blocks(self, parser):
        result = parser.parse("""
        tolerances {
            rmatrix.qybe = 1e-6
            algebra.rank = 0
        }
        """)
        block = result.get("tolerances")
        assert isinstance(block, Block)
        assert block.get("rmatrix.qybe") == 1e-6
        assert block.keys() == ["rmatrix.qybe", "algebra.rank"]

    def test_repeated_keys(self, parser):
        result = parser.parse("matrix = [1, 0, 0, 1]\nmatrix = [0, -1, 1, 0]")
        assert result.get_all("matrix") == [[1, 0, 0, 1], [0, -1, 1, 0]]
        assert result.get("matrix") == [0, -1, 1, 0]
        assert result.to_dict() == {"matrix": [[1, 0, 0, 1], [0, -1, 1, 0]]}

    def test_comments(self, parser):
        result = parser.parse("# header\nseed = 7  # trailing\n")
        assert result.get("seed") == 7

    def test_line_numbers(self, parser):
        result = parser.parse("seed = 1\n\ndraws = 3\n")
        assert result.line_of("seed") == 1
        assert result.line_of("draws") == 3


class TestErrors:
    def test_syntax_error_has_line(self, parser):
        with pytest.raises(ConfigError) as excinfo:
            parser.parse("seed = 1\ndraws = = 3\n")
        assert excinfo.value.line == 2
        assert "line 2" in str(excinfo.value)

    def test_unclosed_block(self, parser):
        with pytest.raises(ConfigError):
            parser.parse("tolerances {\n  a = 1\n")

    def test_missing_file(self, parser, tmp_path):
        with pytest.raises(ConfigError):
            parser.parse_file(str(tmp_path / "absent.txt"))


class TestMatrixFiles:
    def test_read(self, tmp_path):
        path = tmp_path / "matrices.txt"
        path.write_text("matrix = [0, -1, 1, 0]\nmatrix = [2, 3, 1, 2]\n")
        assert read_matrices(str(path)) == [SL2Z(0, -1, 1, 0), SL2Z(2, 3, 1, 2)]

    def test_bad_determinant_reports_line(self, tmp_path):
        path = tmp_path / "matrices.txt"
        path.write_text("matrix = [1, 0, 0, 1]\nmatrix = [1, 1, 1, 1]\n")
        with pytest.raises(ConfigError) as excinfo:
            read_matrices(str(path))
        assert excinfo.value.line == 2
        assert excinfo.value.field == "matrix"

    def test_wrong_shape(self, tmp_path):
        path = tmp_path / "matrices.txt"
        path.write_text("matrix = [1, 0, 1]\n")
        with pytest.raises(ConfigError):
            read_matrices(str(path))

    def test_no_matrices(self, tmp_path):
        path = tmp_path / "matrices.txt"
        path.write_text("seed = 1\n")
        with pytest.raises(ConfigError):
            read_matrices(str(path))


class TestReportText:
    def _report(self):
        report = Report(seed=42, config={"suite": "theta", "nk": [[3, 1]]})
        report.add(CheckRecord.measure("theta.jacobi", "residual", 3.5e-13, 1e-10, tau=1j,
                                       details={"z": [0.5, -0.25]}))
        report.add(CheckRecord.measure("intertwiner.gap", "ratio", math.inf, 1e6, n=3, matrix=(0, -1, 1, 0)))
        report.add(CheckRecord("rmatrix.qybe", "error", math.nan, 0.0, False, n=3, k=1,
                               details={"error": "SingularEta: \"quoted\""}))
        return report

    def test_format_float(self):
        assert format_float(0.1) == "0.10000000000000001"
        assert format_float(math.inf) == "inf"
        assert format_float(-math.inf) == "-inf"
        assert format_float(math.nan) == "nan"

    def test_lower_bound_check(self):
        assert passes("intertwiner.gap", 1e7, 1e6)
        assert not passes("intertwiner.gap", 1e5, 1e6)
        assert not passes("theta.jacobi", math.nan, 1.0)

    def test_summary(self):
        summary = self._report().summary()
        assert summary == {"total": 3, "passed": 2, "failed": 1, "informational_failed": 0}

    def test_text_reads_back(self, parser, tmp_path):
        path = tmp_path / "report.txt"
        path.write_text(self._report().to_text())
        block = read_report(str(path), parser)
        assert block.get("seed") == 42
        assert block.get("config").get("nk") == [[3, 1]]
        records = block.get_all("record")
        assert [r.get("check_id") for r in records] == ["theta.jacobi", "intertwiner.gap", "rmatrix.qybe"]
        assert records[0].get("value") == 3.5e-13
        assert records[0].get("tau_im") == 1.0
        assert records[0].get("details").get("z") == [0.5, -0.25]
        assert records[1].get("value") == math.inf
        assert records[1].get("matrix") == [0, -1, 1, 0]
        assert math.isnan(records[2].get("value"))
        assert records[2].get("pass") is False
        assert records[2].get("details").get("error") == "SingularEta: \"quoted\""

    def test_sorted_is_deterministic(self):
        report = self._report()
        ordered = report.sorted()
        assert [r.check_id for r in ordered.records] == ["intertwiner.gap", "rmatrix.qybe", "theta.jacobi"]
        assert ordered.sorted().to_text() == ordered.to_text()

    def test_json(self):
        text = self._report().to_json()
        assert '"check_id": "theta.jacobi"' in text

    def test_not_a_report(self, tmp_path):
        path = tmp_path / "other.txt"
        path.write_text("seed = 1\n")
        with pytest.raises(ConfigError):
            read_report(str(path))
