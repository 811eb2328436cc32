import json
import subprocess
import sys

import pytest

from cloudscript.cli import main

from conftest import EXT_DIR, FIXTURES, ROUND_ROBIN, SAMPLE, SCHEMAS

HEADER = "cloudlet_id,status,datacenter_id,vm_id,exec_time,start_time,finish_time"


def test_sample_to_csv(tmp_path, capsys):
    out = tmp_path / "report.csv"
    rc = main(["--script", str(SAMPLE), "--schema", str(SCHEMAS), "--out", str(out)])
    assert rc == 0
    assert out.read_text() == f"{HEADER}\n0,SUCCESS,0,0,1.000000,0.000000,1.000000\n"
    stdout = capsys.readouterr().out
    assert stdout.startswith("overhead_ms=") and stdout.strip().split("=")[1].isdigit()


def test_missing_script(capsys):
    assert main(["--script", "no/such/script.yaml"]) == 2
    err = capsys.readouterr().err
    assert "no/such/script.yaml" in err
    assert len(err.strip().splitlines()) == 1


def test_bad_flag():
    assert main(["--bogus"]) == 2


def test_unknown_extension(tmp_path, capsys):
    script = tmp_path / "s.yaml"
    script.write_text((FIXTURES / "base.yaml").read_text().replace(
        "org.cloudbus.cloudsim.VmAllocationPolicySimple", "com.example.Missing"))
    assert main(["--script", str(script), "--out", str(tmp_path / "r.csv")]) == 4
    err = capsys.readouterr().err
    assert err.startswith("UnknownExtensionError:") and "com.example.Missing" in err


def test_validation_failure_exit_code(capsys):
    assert main(["--script", str(FIXTURES / "broken" / "04_pes_not_integer.yaml")]) == 3
    assert "type-mismatch at /GlobalDatacenterNetwork/zones/0/datacenter/hosts/0/pes" in capsys.readouterr().err


def test_json_output(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--script", str(SAMPLE), "--out", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert list(rows[0]) == HEADER.split(",")
    assert rows[0]["status"] == "SUCCESS" and rows[0]["finish_time"] == 1.0


def test_empty_result_is_header_only(tmp_path):
    script = tmp_path / "s.yaml"
    script.write_text("GlobalDatacenterNetwork: {zones: []}\n")
    out = tmp_path / "r.csv"
    assert main(["--script", str(script), "--out", str(out), "--format", "csv"]) == 0
    assert out.read_text() == HEADER + "\n"


def test_unwritable_output(tmp_path):
    assert main(["--script", str(SAMPLE), "--out", str(tmp_path / "missing-dir" / "r.csv")]) == 5


def test_missing_schema_is_usage_error(tmp_path):
    assert main(["--script", str(SAMPLE), "--schema", str(tmp_path / "x.yaml")]) == 2


def test_failed_row_formatting(tmp_path):
    script = tmp_path / "s.yaml"
    script.write_text((FIXTURES / "base.yaml").read_text().replace("{id: 0, mips: 1000}", "{id: 0, mips: 1000, pes: 9}"))
    out = tmp_path / "r.csv"
    assert main(["--script", str(script), "--out", str(out)]) == 0
    assert out.read_text().splitlines()[1] == "0,FAILED,,0,,,"


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "framework.cfg"
    cfg.write_text(f"scriptFile = {SAMPLE}\nextensionsDir = {tmp_path / 'nowhere'}\n")
    out = tmp_path / "r.csv"
    assert main(["--config", str(cfg), "--out", str(out)]) == 2
    assert main(["--config", str(cfg), "--extensions-dir", str(EXT_DIR), "--out", str(out)]) == 0


def test_env_extensions_dir(tmp_path, monkeypatch):
    script = tmp_path / "s.yaml"
    script.write_text((FIXTURES / "divergence.yaml").read_text().replace(
        "org.cloudbus.cloudsim.VmAllocationPolicySimple", ROUND_ROBIN))
    out = tmp_path / "r.csv"
    assert main(["--script", str(script), "--out", str(out)]) == 4
    monkeypatch.setenv("CSX_EXTENSIONS_DIR", str(EXT_DIR))
    assert main(["--script", str(script), "--out", str(out)]) == 0


def test_samples_out(tmp_path):
    script = tmp_path / "s.yaml"
    script.write_text((FIXTURES / "monitoring.yaml").read_text().replace(
        "org.cloudbus.cloudsim.Datacenter", "sample.ext.MonitoringDatacenter"))
    samples = tmp_path / "samples.csv"
    assert main(["--script", str(script), "--extensions-dir", str(EXT_DIR),
                 "--out", str(tmp_path / "r.csv"), "--samples-out", str(samples)]) == 0
    lines = samples.read_text().splitlines()
    assert lines[0] == "time,datacenter_id,vm_id,running_cloudlets"
    assert lines[1] == "0.000000,0,0,1"


def test_module_entry_point(tmp_path):
    out = tmp_path / "r.csv"
    proc = subprocess.run([sys.executable, "-m", "cloudscript", "--script", str(SAMPLE), "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.startswith("overhead_ms=")
