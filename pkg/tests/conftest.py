from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = Path(__file__).parent / "fixtures"
SRC = ROOT / "src" / "cloudscript"
SAMPLE = SRC / "data" / "sample.yaml"
SCHEMAS = SRC / "data" / "schemas.yaml"
EXT_DIR = ROOT / "extensions"

ROUND_ROBIN = "sample.ext.RoundRobinAllocationPolicy"
MONITORING_DC = "sample.ext.MonitoringDatacenter"


@pytest.fixture
def sample_text():
    return SAMPLE.read_text()


@pytest.fixture
def base_text():
    return (FIXTURES / "base.yaml").read_text()


@pytest.fixture(scope="session")
def schema_doc():
    from cloudscript.schema import load_schema

    return load_schema(SCHEMAS.read_text())
