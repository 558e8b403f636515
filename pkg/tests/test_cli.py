"""Command-line behavior: exit codes, demo output, and byte-identity of
`assess --format json` with the service's assessment body."""

import json

import pytest
from fastapi.testclient import TestClient

from devrisk.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main
from devrisk.demo import fixtures_root
from devrisk.service.app import create_app
from devrisk.service.engine import Engine
from devrisk.service.store import Store

AS_OF = "2020-06-01"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def demo_dir(tmp_path, capsys):
    code, _, err = run_cli(capsys, "--data-dir", str(tmp_path), "demo")
    assert code == EXIT_OK, err
    return tmp_path


def test_demo_prints_six_devices_in_study_order(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "--data-dir", str(tmp_path), "demo")
    assert code == EXIT_OK
    lines = [l for l in out.splitlines() if l.strip()]
    assert len(lines) == 6
    types = [l.split("[")[0].strip() for l in lines]
    assert types == [
        "E-Book Reader",
        "Smartphone",
        "Smart Kettle",
        "CCTV",
        "Connected Storage (NAS)",
        "Printer",
    ]
    risks = [l.split("risk ")[1].split(" ")[0] for l in lines]
    assert risks == ["Low", "Medium", "High", "Low", "Medium", "High"]
    # piped output: plain words, no ANSI escapes
    assert "\x1b[" not in out
    assert "GREEN" in out and "YELLOW" in out and "RED" in out


def test_assess_unknown_device_exits_2(demo_dir, capsys):
    code, _, err = run_cli(
        capsys, "--data-dir", str(demo_dir), "assess", "--device", "nope", "--as-of", AS_OF
    )
    assert code == EXIT_DATA
    assert "unknown device" in err


def test_unknown_subcommand_exits_1(capsys):
    code, _, _ = run_cli(capsys, "frobnicate")
    assert code == EXIT_USAGE


def test_missing_required_flag_exits_1(capsys):
    code, _, _ = run_cli(capsys, "assess", "--as-of", AS_OF)
    assert code == EXIT_USAGE


def test_view_guided_kettle_red_with_high_risk_sentence(demo_dir, capsys):
    store = Store(demo_dir / "store.json")
    kettle_id = next(
        d["device_id"] for d in store.devices_in_order() if d["device_type"] == "Smart Kettle"
    )
    code, out, _ = run_cli(
        capsys, "--data-dir", str(demo_dir), "view", "--device", kettle_id,
        "--version", "guided",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["traffic_light"] == "Red"
    assert "poses a high risk" in payload["narrative"][0]


def test_compare_json(demo_dir, capsys):
    code, out, _ = run_cli(
        capsys, "--data-dir", str(demo_dir), "compare", "--category", "nas",
        "--as-of", AS_OF, "--format", "json",
    )
    assert code == EXIT_OK
    cards = json.loads(out)["cards"]
    assert [c["color"] for c in cards] == ["Green", "Yellow", "Red"]


def test_compare_unknown_category_exits_2(demo_dir, capsys):
    code, _, _ = run_cli(
        capsys, "--data-dir", str(demo_dir), "compare", "--category", "toaster"
    )
    assert code == EXIT_DATA


def test_ingest_and_identify_offline(tmp_path, capsys):
    root = fixtures_root()
    for kind in ("signatures", "profiles", "manifests"):
        code, out, _ = run_cli(
            capsys, "--data-dir", str(tmp_path), "ingest", kind, str(root / f"{kind}.json")
        )
        assert code == EXIT_OK
        assert "ingested" in out
    code, out, _ = run_cli(
        capsys, "--data-dir", str(tmp_path), "identify",
        "--corpus", str(root / "corpora" / "kettle.json"),
        "--trace", str(root / "traces" / "kettle.json"),
    )
    assert code == EXIT_OK
    result = json.loads(out)
    assert result["decision"]["identified"] is True
    ident = result["decision"]["identity"]
    assert (ident["vendor"], ident["model"], ident["firmware_version"]) == (
        "Brewell", "HotDrop 3000", "1.1",
    )
    assert result["skew_ppm"] == pytest.approx(85.0, abs=1e-3)


def test_identify_without_evidence_is_usage_error(tmp_path, capsys):
    code, _, _ = run_cli(capsys, "--data-dir", str(tmp_path), "identify")
    assert code == EXIT_USAGE


def test_assess_json_matches_service_body_byte_for_byte(demo_dir, capsys):
    """The CLI and the HTTP service must serialize the same persisted
    assessment identically, including generated_at."""
    store = Store(demo_dir / "store.json")
    engine = Engine(store, data_dir=demo_dir)
    client = TestClient(create_app(engine))
    for device in store.devices_in_order():
        device_id = device["device_id"]
        code, out, _ = run_cli(
            capsys, "--data-dir", str(demo_dir), "assess",
            "--device", device_id, "--as-of", AS_OF, "--format", "json",
        )
        assert code == EXIT_OK
        resp = client.post(f"/devices/{device_id}/assess", params={"as_of": AS_OF})
        assert out.encode("utf-8") == resp.content
        # and the same object is embedded in GET /devices/{id}
        embedded = client.get(f"/devices/{device_id}").json()["assessment"]
        assert embedded == json.loads(out)


def test_assess_table_format(demo_dir, capsys):
    store = Store(demo_dir / "store.json")
    printer_id = next(
        d["device_id"] for d in store.devices_in_order() if d["device_type"] == "Printer"
    )
    code, out, _ = run_cli(
        capsys, "--data-dir", str(demo_dir), "assess",
        "--device", printer_id, "--as-of", AS_OF,
    )
    assert code == EXIT_OK
    assert "current risk High" in out
    assert "RED" in out
    assert "CVE-2017-2240" in out


def test_scoring_thresholds_overridable_by_flags(tmp_path, capsys):
    # with a fast_max of 10 days the reader's 24.5-day mean becomes Medium,
    # and (Low, Medium) still maps to future risk Low
    code, out, _ = run_cli(
        capsys, "--data-dir", str(tmp_path), "--patch-fast-max", "10", "demo",
        "--format", "json",
    )
    assert code == EXIT_OK
    results = json.loads(out)
    reader = results[0]["record"]["assessment"]
    assert reader["patch_trend"] == "Medium"
    assert reader["future_risk"] == "Low"
