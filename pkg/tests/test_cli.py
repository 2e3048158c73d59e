import csv
import json
import subprocess
import sys

import pytest

from qnetbound import ChainSpec, analytic_repeater_rate
from qnetbound.cli import main
from qnetbound.sweep import COLUMNS, MC_COLUMNS


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def kv(text):
    pairs = {}
    for line in text.splitlines():
        for tok in line.split():
            if "=" in tok:
                k, v = tok.split("=", 1)
                pairs[k] = v
    return pairs


@pytest.fixture
def netfile(tmp_path):
    def write(doc):
        path = tmp_path / "net.json"
        path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
        return str(path)
    return write


def two_node(uses=1.0):
    return {
        "schema_version": 1,
        "nodes": ["A", "B"],
        "edges": [{"from": "A", "to": "B", "transmittance": 0.5, "uses": uses}],
    }


class TestBoundChain:
    def test_lossless(self, capsys):
        code, out, _ = run(capsys, "bound", "chain", "--length-km", "0", "--standard-fiber")
        assert code == 0 and kv(out)["per_use_bits"] == "inf"

    def test_200km(self, capsys):
        code, out, _ = run(capsys, "bound", "chain", "--length-km", "200", "--nodes-n", "1",
                           "--loss-db-per-km", "0.2", "--epsilon", "0")
        assert code == 0
        assert float(kv(out)["per_use_bits"]) == pytest.approx(0.0289, abs=5e-5)
        assert kv(out)["witness"] == "A"

    def test_epsilon_too_large(self, capsys):
        code, _, err = run(capsys, "bound", "chain", "--length-km", "100", "--standard-fiber",
                           "--epsilon", "0.01")
        assert code == 1 and err.startswith("error:") and "epsilon too large" in err

    def test_total_and_spacings(self, capsys):
        code, out, _ = run(capsys, "bound", "chain", "--length-km", "100", "--nodes-n", "1",
                           "--spacings", "30,70", "--att-length-km", "20", "--uses-total", "10")
        assert code == 0
        vals = kv(out)
        assert float(vals["total_bits"]) == pytest.approx(10 * float(vals["per_use_bits"]), rel=1e-8)
        assert "approx_per_use_bits" not in vals

    def test_missing_attenuation_is_usage_error(self, capsys):
        code, _, err = run(capsys, "bound", "chain", "--length-km", "100")
        assert code == 2 and err.splitlines()[-1].startswith("error:")


class TestBoundNetwork:
    def test_two_node(self, capsys, netfile):
        code, out, _ = run(capsys, "bound", "network", "--network", netfile(two_node()))
        assert code == 0
        line = next(l for l in out.splitlines() if l.startswith("min_cut_bits="))
        assert line == "min_cut_bits=3.169925 witness=A"

    def test_zero_uses(self, capsys, netfile):
        code, out, _ = run(capsys, "bound", "network", "--network", netfile(two_node(0.0)))
        assert code == 0 and kv(out)["min_cut_bits"] == "0"

    def test_malformed_field(self, capsys, netfile):
        d = two_node()
        d["edges"][0]["transmitance"] = 0.5
        code, _, err = run(capsys, "bound", "network", "--network", netfile(d))
        assert code == 2 and err.startswith("error:") and "edges[0]" in err

    def test_bad_json(self, capsys, netfile):
        code, _, err = run(capsys, "bound", "network", "--network", netfile("{nope"))
        assert code == 2 and "line 1" in err

    def test_disconnected_is_zero(self, capsys, netfile):
        d = {"schema_version": 1, "nodes": ["A", "C1", "B"],
             "edges": [{"from": "A", "to": "C1", "transmittance": 0.5}]}
        code, out, _ = run(capsys, "bound", "network", "--network", netfile(d))
        assert code == 0 and kv(out)["min_cut_bits"] == "0" and kv(out)["witness"] == "A,C1"


class TestSimulate:
    def test_deterministic_bytes(self):
        cmd = [sys.executable, "-m", "qnetbound", "simulate", "--length-km", "100",
               "--nodes-n", "2", "--standard-fiber", "--trials", "1", "--seed", "7"]
        first = subprocess.run(cmd, capture_output=True, check=True).stdout
        second = subprocess.run(cmd, capture_output=True, check=True).stdout
        assert first == second and first

    def test_four_links(self, capsys):
        code, out, _ = run(capsys, "simulate", "--length-km", "200", "--nodes-n", "3",
                           "--loss-db-per-km", "0.2", "--trials", "100000", "--seed", "11")
        assert code == 0
        analytic = analytic_repeater_rate(ChainSpec(200.0, 3, loss_db_per_km=0.2))
        assert abs(float(kv(out)["rate_per_use"]) - analytic) / analytic <= 0.02

    def test_zero_trials(self, capsys):
        code, _, _ = run(capsys, "simulate", "--length-km", "100", "--standard-fiber", "--trials", "0")
        assert code == 2

    def test_opaque_link(self, capsys):
        code, _, err = run(capsys, "simulate", "--length-km", "1e6", "--att-length-km", "1",
                           "--trials", "5")
        assert code == 1 and err.startswith("error:")


class TestSweep:
    def test_columns_and_order(self, capsys, tmp_path):
        out = tmp_path / "s.csv"
        code, _, _ = run(capsys, "sweep", "--l-min-km", "50", "--l-max-km", "1000", "--step-km",
                         "50", "--n-values", "2,0,1", "--standard-fiber", "--out", str(out))
        assert code == 0
        rows = list(csv.reader(out.open()))
        assert tuple(rows[0]) == COLUMNS
        body = rows[1:]
        assert len(body) == 3 * 20
        keys = [(int(r[1]), float(r[0])) for r in body]
        assert keys == sorted(keys)
        for r in body:
            assert float(r[3]) >= float(r[4])
        last_n0 = next(r for r in body if r[1] == "0" and r[0] == "1000")
        assert float(last_n0[4]) == pytest.approx(1e-20, rel=1e-9)
        assert float(last_n0[3]) == pytest.approx(5.771e-20, rel=1e-3)
        assert last_n0[3] == "5.77078016e-20"

    def test_mc_columns_byte_identical(self, capsys, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p in paths:
            code, _, _ = run(capsys, "sweep", "--l-min-km", "100", "--l-max-km", "300", "--step-km",
                             "100", "--n-values", "0,3", "--standard-fiber", "--trials", "500",
                             "--seed", "3", "--out", str(p))
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
        assert tuple(next(csv.reader(paths[0].open()))) == COLUMNS + MC_COLUMNS

    def test_threads_env_same_output(self, capsys, tmp_path, monkeypatch):
        args = ["sweep", "--l-min-km", "100", "--l-max-km", "400", "--step-km", "50", "--n-values",
                "0,1,4", "--standard-fiber", "--trials", "300", "--seed", "1"]
        run(capsys, *args, "--out", str(tmp_path / "one.csv"))
        monkeypatch.setenv("QNETBOUND_THREADS", "4")
        run(capsys, *args, "--out", str(tmp_path / "four.csv"))
        assert (tmp_path / "one.csv").read_bytes() == (tmp_path / "four.csv").read_bytes()

    def test_unwritable(self, capsys, tmp_path):
        code, _, err = run(capsys, "sweep", "--l-min-km", "50", "--l-max-km", "60", "--step-km",
                           "10", "--n-values", "0", "--standard-fiber",
                           "--out", str(tmp_path / "missing" / "x.csv"))
        assert code == 1 and err.startswith("error:")

    def test_epsilon_needs_uses(self, capsys, tmp_path):
        code, _, err = run(capsys, "sweep", "--l-min-km", "50", "--l-max-km", "60", "--step-km",
                           "10", "--n-values", "0", "--standard-fiber", "--epsilon", "1e-6",
                           "--out", str(tmp_path / "x.csv"))
        assert code == 1 and "total_uses" in err


class TestRoute:
    def test_single_edge(self, capsys, netfile):
        code, out, _ = run(capsys, "route", "--network", netfile(two_node()))
        assert code == 0 and kv(out)["path"] == "A,B"
        assert float(kv(out)["per_use_bits"]) == pytest.approx(3.169925, rel=1e-7)

    def test_diamond_prefers_low_loss(self, capsys, netfile):
        d = {"schema_version": 1, "nodes": ["A", "C1", "C2", "B"], "edges": [
            {"from": "A", "to": "C1", "length_km": 80, "loss_db_per_km": 0.2},
            {"from": "C1", "to": "B", "length_km": 80, "loss_db_per_km": 0.2},
            {"from": "A", "to": "C2", "length_km": 80, "loss_db_per_km": 0.16},
            {"from": "C2", "to": "B", "length_km": 80, "loss_db_per_km": 0.16},
        ]}
        code, out, _ = run(capsys, "route", "--network", netfile(d))
        assert code == 0 and kv(out)["path"] == "A,C2,B"

    def test_disconnected_exit_3(self, capsys, netfile):
        d = {"schema_version": 1, "nodes": ["A", "B"], "edges": []}
        code, _, err = run(capsys, "route", "--network", netfile(d))
        assert code == 3 and err.startswith("error:")


def test_convert(capsys):
    code, out, _ = run(capsys, "convert", "--db-per-km", "0.2")
    assert code == 0 and kv(out)["attenuation_length_km"] == "21.7147241"
    code, out, _ = run(capsys, "convert", "--att-length-km", "1")
    assert float(kv(out)["loss_db_per_km"]) == pytest.approx(4.3429448, rel=1e-7)


def test_no_command_is_usage_error(capsys):
    code, _, err = run(capsys)
    assert code == 2 and err.splitlines()[-1].startswith("error:")
