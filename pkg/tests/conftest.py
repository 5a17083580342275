"""
Test Configuration
"""
import pytest
import yaml
from pathlib import Path
import sys

# Add the project root to path
ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT))

from src.algebra.free_superalgebra import Element, ParityMode, parse_element  # noqa: E402
from src.utils.utils import read_basis_file  # noqa: E402

FIXTURES = ROOT / 'fixtures'


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: extended computations (high complexity sweeps)')


@pytest.fixture(params=[ParityMode.EVEN, ParityMode.ODD], ids=['even', 'odd'])
def mode(request):
    return request.param


@pytest.fixture
def even():
    return ParityMode.EVEN


@pytest.fixture
def odd():
    return ParityMode.ODD


@pytest.fixture
def golden():
    """Load a golden YAML file by stem"""
    def load(name):
        with open(FIXTURES / 'golden' / f'{name}.yaml') as handle:
            return yaml.safe_load(handle)
    return load


@pytest.fixture
def basis_file():
    """Path of a basis override file, e.g. basis_file('b0', 'even', 3, 5)"""
    def path(variant, parity, i, j):
        return FIXTURES / 'bases' / f'{variant}_{parity}_{i}_{j}.txt'
    return path


@pytest.fixture
def named_basis(basis_file):
    """Parsed elements of a basis override file"""
    def load(variant, parity, i, j):
        return read_basis_file(basis_file(variant, parity, i, j), ParityMode(parity))
    return load


@pytest.fixture
def el():
    """Shorthand parser: el('[1,2]^[3,4]', mode)"""
    def parse(text, mode):
        return Element.zero(mode) if text == '0' else parse_element(text, mode)
    return parse
