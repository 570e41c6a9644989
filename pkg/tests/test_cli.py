"""Command-line driver: exit codes, reproducibility, suite addressing."""

import csv
import io
import json

import pytest

from mobius_bounds import cli
from mobius_bounds.cli import main, suite_registry


def _rows(text):
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def test_list_matches_registries(capsys):
    assert main(["verify", "--list"]) == 0
    printed = capsys.readouterr().out.split()
    assert printed == sorted(suite_registry())
    # one addressable invocation per registered suite, no dangling names
    mods = {name.split(":")[0] for name in printed}
    assert mods == {"bounds", "delta-sign", "harmonic"}


def test_usage_errors():
    assert main(["verify", "--theorem", "nosuch"]) == 64
    assert main(["frobnicate"]) == 64
    assert main([]) == 64
    assert main(["verify", "--suite", "bounds:nope"]) == 64
    assert main(["delta-sign", "--q", "1"]) == 64  # missing --X0
    assert main(["verify", "--theorem", "special", "--X", "10", "--sigma", "1"]) == 64
    assert main(["sum", "--X", ""]) == 64


def test_capacity_exit():
    assert main(["sum", "--X", "1e9", "--limit", "1000000000"]) == 65


def test_easy_example_grid(tmp_path):
    out = tmp_path / "easy.csv"
    rc = main([
        "verify", "--theorem", "easy", "--X", "1..200", "--q", "1,2,6",
        "--k", "1,2", "--sigma", "1,1.5", "--no-timestamp", "--out", str(out),
    ])
    assert rc == 0
    rows = _rows(out.read_text())
    assert len(rows) == 200 * 3 * 2 * 2
    assert all(r["verdict"] == "pass" for r in rows)


def test_sum_command_frozen(capsys):
    rc = main(["sum", "--kind", "mcheck", "--X", "10,11", "--no-timestamp"])
    assert rc == 0
    rows = _rows(capsys.readouterr().out)
    assert float(rows[0]["lhs"]) == pytest.approx(0.9920964730975407, abs=1e-15)
    assert float(rows[1]["lhs"]) == pytest.approx(1.0007197750798367, abs=1e-15)


def test_identity_example(capsys):
    rc = main(["identity", "--name", "meissel", "--X", "2.5", "--no-timestamp"])
    assert rc == 0
    rows = _rows(capsys.readouterr().out)
    ofd = [r for r in rows if r["theorem_id"] == "identity-ofd"]
    assert len(ofd) == 1
    assert float(ofd[0]["lhs"]) <= 1e-12


def test_identity_liouville_reported_not_asserted(capsys):
    rc = main(["identity", "--name", "liouville", "--X", "1", "--no-timestamp"])
    assert rc == 0  # the known defect is reported, not failed
    rows = _rows(capsys.readouterr().out)
    printed = [r for r in rows if r["theorem_id"] == "identity-printed"]
    assert float(printed[0]["lhs"]) == pytest.approx(1.0, abs=1e-9)
    assert printed[0]["bound"] == "inf"


def test_delta_sign_certificate_artifact(tmp_path, capsys):
    out = tmp_path / "cert.json"
    rc = main(["delta-sign", "--q", "1", "--X0", "10.8", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["status"] == "certified_nonpositive"
    assert len(doc["records"]) == 10


def test_delta_sign_failure_exit(tmp_path):
    out = tmp_path / "cert.json"
    rc = main(["delta-sign", "--q", "1", "--X0", "11", "--out", str(out)])
    assert rc == 2
    doc = json.loads(out.read_text())
    assert doc["status"] == "fail"
    assert doc["failure"]["N"] == 10


def test_delta_sign_caps_flag(capsys):
    rc = main(["delta-sign", "--caps", "--q", "1", "--X0", "20", "--no-timestamp"])
    assert rc == 0
    rows = _rows(capsys.readouterr().out)
    assert rows[0]["theorem_id"] == "delta-caps"


def test_harmonic_command(capsys):
    rc = main(["harmonic", "--x-max", "500", "--no-timestamp"])
    assert rc == 0
    rows = _rows(capsys.readouterr().out)
    assert all(r["verdict"] == "pass" for r in rows)


def test_byte_reproducibility(tmp_path):
    out = tmp_path / "r.csv"
    argv = [
        "verify", "--theorem", "easy", "--X", "1..50", "--q", "1",
        "--k", "1", "--sigma", "1", "--no-timestamp", "--out", str(out),
    ]
    assert main(argv) == 0
    first = out.read_bytes()
    assert main(argv) == 0
    assert out.read_bytes() == first


def test_timestamp_header_default(tmp_path):
    out = tmp_path / "r.csv"
    argv = [
        "verify", "--theorem", "easy", "--X", "1..5", "--q", "1",
        "--k", "1", "--sigma", "1", "--out", str(out),
    ]
    assert main(argv) == 0
    first_line = out.read_text().splitlines()[0]
    assert first_line.startswith("# 20")  # ISO timestamp comment


def test_jsonl_format(capsys):
    rc = main(["sum", "--X", "10", "--no-timestamp", "--format", "jsonl"])
    assert rc == 0
    lines = [ln for ln in capsys.readouterr().out.splitlines() if ln.strip()]
    doc = json.loads(lines[0])
    assert doc["theorem_id"] == "sum-m"


def test_sieve_env_cache(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    assert main(["sieve", "--limit", "5000"]) == 0
    assert (tmp_path / "mu-5000.bin").exists()


def test_sieve_creates_missing_cache_dir(tmp_path, capsys):
    # first run against a fresh machine: the cache directory does not exist yet
    target = tmp_path / "nested" / "cache"
    assert main(["sieve", "--limit", "2000", "--cache-dir", str(target)]) == 0
    assert (target / "mu-2000.bin").exists()


def test_suite_invocation(capsys):
    rc = main(["verify", "--suite", "bounds:integral", "--limit", "20000",
               "--no-timestamp"])
    assert rc == 0
    rows = _rows(capsys.readouterr().out)
    assert rows and all(r["theorem_id"] == "integral-abs-mq" for r in rows)
