"""
Tests for run configuration and result export
"""
import json

import pytest
from pydantic import ValidationError

from src.algebra.bracket_diagrams import Variant
from src.algebra.free_superalgebra import ParityMode
from src.config import Config, RunConfig, config
from src.utils.export_utils import HomologyExporter
from src.utils.utils import format_coefficient, format_group, read_basis_file
from src.utils.exceptions import ParseError


def test_run_config_defaults():
    """Unset options fall back to the environment defaults"""
    cfg = RunConfig()
    assert cfg.variant is Variant.B
    assert cfg.parity is ParityMode.EVEN
    assert cfg.i_max == Config.I_MAX
    assert cfg.workers >= 1


def test_run_config_parses_enums():
    """Variant and parity arrive as strings from the command line"""
    cfg = RunConfig(variant="b-star", parity="odd")
    assert cfg.variant is Variant.B_STAR
    assert cfg.parity is ParityMode.ODD


@pytest.mark.parametrize("values", [
    {"coefficients": "reals"},
    {"coefficients": "mod-p"},
    {"coefficients": "mod-p", "prime": 9},
    {"needs_rationals": True},
    {"differential": "bar"},
    {"variant": "b-star", "parity": "odd", "differential": "bar"},
    {"output_format": "xml"},
    {"workers": 0},
    {"i": -1},
])
def test_run_config_rejects(values):
    """Inconsistent runs fail validation"""
    with pytest.raises(ValidationError):
        RunConfig(**values)


def test_run_config_accepts_prime():
    """mod-p with a prime characteristic is valid"""
    assert RunConfig(coefficients="mod-p", prime=7).prime == 7


def test_config_selection():
    """Named environments map to configuration classes"""
    assert config["testing"].I_MAX == 3
    assert not config["testing"].CACHE_ENABLED


def test_format_group():
    """Homology groups print as Z^r + Z/t"""
    assert format_group(1, [2]) == "Z + Z/2"
    assert format_group(0, []) == "0"
    assert format_group(3, [2, 4]) == "Z^3 + Z/2 + Z/4"


def test_format_coefficient():
    """Integral fractions print as integers"""
    from fractions import Fraction
    assert format_coefficient(Fraction(4, 2)) == "2"
    assert format_coefficient(Fraction(1, 2)) == "1/2"


def test_basis_file_reports_line(tmp_path, odd):
    """A malformed line names the file and line number"""
    path = tmp_path / "broken.txt"
    path.write_text("# header\n[1,2]\n[1,3\n")
    with pytest.raises(ParseError, match="broken.txt:3"):
        read_basis_file(path, odd)


def test_render_formats():
    """JSON keeps lists, flat formats join them"""
    exporter = HomologyExporter()
    records = [{"i": 2, "j": 4, "rank": 1, "torsion": [2]}]
    assert json.loads(exporter.render(records, "json")) == records
    assert exporter.render(records, "csv").splitlines() == ["i,j,rank,torsion", "2,4,1,2"]
    assert "torsion" in exporter.render(records, "text")
    assert exporter.render([], "text") == "(no rows)\n"


def test_render_is_deterministic():
    """Identical records render identically"""
    exporter = HomologyExporter()
    records = [{"i": 1, "j": 2, "rank": 1, "torsion": []}]
    assert exporter.render(records, "csv") == exporter.render(list(records), "csv")


def test_unknown_format():
    """Only json, csv and text are rendered"""
    with pytest.raises(ValueError):
        HomologyExporter().render([{"i": 1}], "xml")


def test_export_writes_below_output_dir(tmp_path):
    """Relative names land in the output directory"""
    exporter = HomologyExporter(tmp_path)
    path = exporter.export_to_json([{"i": 1}], "table")
    assert path == tmp_path / "table.json"
    assert json.loads(path.read_text()) == [{"i": 1}]


def test_export_to_csv(tmp_path):
    """CSV export joins list cells"""
    path = HomologyExporter(tmp_path).export_to_csv([{"i": 2, "torsion": [2, 4]}], "groups")
    assert path.read_text().splitlines() == ["i,torsion", "2,2 4"]
