"""Command-line behavior, including exit-code discipline."""

import json
import socket
import subprocess
import sys
import time
import urllib.request

import pytest
from click.testing import CliRunner

from heats.cli import main

SIZE_ARGS = [
    "size",
    "--city", "Brașov",
    "--destination", "Rooms and lobbies",
    "--levels", "1",
    "--av-ratio", "0.80",
    "--area", "100",
    "--height", "3",
]


@pytest.fixture
def runner():
    return CliRunner()


class TestSize:
    def test_golden_line(self, runner):
        result = runner.invoke(main, SIZE_ARGS)
        assert result.exit_code == 0
        assert result.output.strip() == "Result: 9.4710 kW (8.1451 MCal)"

    def test_json_document(self, runner):
        result = runner.invoke(main, SIZE_ARGS + ["--json"])
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert body["q_kw"] == 9.471
        assert body["q_mcal"] == 8.1451

    def test_unknown_city(self, runner):
        args = list(SIZE_ARGS)
        args[args.index("Brașov")] = "Atlantis"
        result = runner.invoke(main, args)
        assert result.exit_code == 2
        assert "unknown city" in result.output

    def test_missing_height(self, runner):
        result = runner.invoke(main, SIZE_ARGS[:-2])
        assert result.exit_code == 2

    def test_non_positive_area(self, runner):
        args = list(SIZE_ARGS)
        args[args.index("--area") + 1] = "-4"
        result = runner.invoke(main, args)
        assert result.exit_code == 2

    def test_corrupt_data_dir_is_environment_failure(self, runner, seed_copy, monkeypatch):
        (seed_copy / "gn.csv").write_text("levels,av_ratio,gn,open_upper\n1,0,0.7,false\n", encoding="utf-8")
        monkeypatch.setenv("HEATS_DATA_DIR", str(seed_copy))
        result = runner.invoke(main, SIZE_ARGS)
        assert result.exit_code == 1


class TestDevices:
    def test_table_contains_match(self, runner):
        result = runner.invoke(main, ["devices", "--required-kw", "11.285"])
        assert result.exit_code == 0
        assert "Euro-3 18" in result.output

    def test_gpl_gives_empty_message(self, runner):
        result = runner.invoke(main, ["devices", "--required-kw", "11.285", "--fuel", "GPL"])
        assert result.exit_code == 0
        assert "no matching devices" in result.output

    def test_negative_requirement(self, runner):
        result = runner.invoke(main, ["devices", "--required-kw", "-5"])
        assert result.exit_code == 2

    def test_bad_fuel(self, runner):
        result = runner.invoke(main, ["devices", "--required-kw", "5", "--fuel", "coal"])
        assert result.exit_code == 2

    def test_json_lists_matches(self, runner):
        result = runner.invoke(main, ["devices", "--required-kw", "100", "--json"])
        assert result.exit_code == 0
        assert [d["model"] for d in json.loads(result.output)] == ["Uno-3"]


class TestValidate:
    def test_pristine_seed(self, runner, data_dir):
        result = runner.invoke(main, ["validate", "--data-dir", str(data_dir)])
        assert result.exit_code == 0
        assert "4 files OK" in result.output

    def test_decreasing_gn_names_the_row(self, runner, seed_copy):
        lines = (seed_copy / "gn.csv").read_text(encoding="utf-8").splitlines()
        lines[3] = "1,0.90,0.10,false"
        (seed_copy / "gn.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
        result = runner.invoke(main, ["validate", "--data-dir", str(seed_copy)])
        assert result.exit_code == 1
        assert "gn.csv: line 4" in result.output

    def test_missing_cities_file(self, runner, seed_copy):
        (seed_copy / "cities.csv").unlink()
        result = runner.invoke(main, ["validate", "--data-dir", str(seed_copy)])
        assert result.exit_code == 1
        assert "cities.csv" in result.output

    def test_reports_every_bad_file(self, runner, seed_copy):
        (seed_copy / "cities.csv").write_text("name,design_outside_temp_c\nX,99\n", encoding="utf-8")
        (seed_copy / "devices.json").write_text("[", encoding="utf-8")
        result = runner.invoke(main, ["validate", "--data-dir", str(seed_copy)])
        assert result.exit_code == 1
        assert "2 of 4 files invalid" in result.output

    def test_honors_env_var(self, runner, seed_copy, monkeypatch):
        monkeypatch.setenv("HEATS_DATA_DIR", str(seed_copy))
        result = runner.invoke(main, ["validate"])
        assert result.exit_code == 0


class TestAgreementWithApi:
    def test_size_json_equals_api_response(self, runner, client):
        payload = {
            "city": "Cluj Napoca",
            "destination": "Bathrooms",
            "levels": 2,
            "av_ratio": 0.52,
            "footprint_area_m2": 77.5,
            "height_m": 2.65,
        }
        api_body = client.post("/v1/sizing", json=payload).json()
        result = runner.invoke(main, [
            "size",
            "--city", payload["city"],
            "--destination", payload["destination"],
            "--levels", str(payload["levels"]),
            "--av-ratio", repr(payload["av_ratio"]),
            "--area", repr(payload["footprint_area_m2"]),
            "--height", repr(payload["height_m"]),
            "--json",
        ])
        assert json.loads(result.output) == api_body


def _start_server(args):
    return subprocess.Popen(
        [sys.executable, "-m", "heats.cli", *args],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
        text=True,
    )


class TestServe:
    def test_ephemeral_port_prints_address_and_serves(self):
        proc = _start_server(["serve", "--addr", "127.0.0.1:0"])
        try:
            line = proc.stdout.readline().strip()
            assert line.startswith("Listening on http://127.0.0.1:")
            base = line.removeprefix("Listening on ")
            port = int(base.rsplit(":", 1)[1])
            assert port > 0
            deadline = time.monotonic() + 10
            while True:
                try:
                    with urllib.request.urlopen(f"{base}/v1/cities", timeout=2) as response:
                        assert response.status == 200
                        assert b"Alba Iulia" in response.read()
                    break
                except OSError:
                    if time.monotonic() > deadline:
                        raise
                    time.sleep(0.1)
        finally:
            proc.terminate()
            proc.wait(timeout=10)

    def test_bad_data_dir(self):
        proc = _start_server(["serve", "--addr", "127.0.0.1:0", "--data-dir", "/nonexistent"])
        _, stderr = proc.communicate(timeout=30)
        assert proc.returncode == 1
        assert "cities.csv" in stderr

    def test_port_conflict(self):
        blocker = socket.socket()
        blocker.bind(("127.0.0.1", 0))
        blocker.listen(1)
        port = blocker.getsockname()[1]
        try:
            proc = _start_server(["serve", "--addr", f"127.0.0.1:{port}"])
            _, stderr = proc.communicate(timeout=30)
            assert proc.returncode == 1
            assert "cannot bind" in stderr
        finally:
            blocker.close()

    def test_bad_addr_is_usage_error(self):
        proc = _start_server(["serve", "--addr", "nonsense"])
        proc.communicate(timeout=30)
        assert proc.returncode == 2
