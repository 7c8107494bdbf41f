import json

import numpy as np
import pytest

from cograte.cli import cmd_eval, cmd_slope, cmd_sweep, main, parse_channel_file
from cograte.config import build_config, parse_pdb
from cograte.errors import ChannelFileError, ConfigError

SMALL = {
    "scenario": "siso_siso",
    "schemes": ["classical", "df_dpc", "f_dpc_nc"],
    "params": {"p": 0.1, "beta": 1.0, "M": 1},
    "topology": {"t_d": 0.1, "r_d": 0.6},
    "sweep": {"P_dB": [0.0, 20.0]},
    "trials": 0,
    "seed": 7,
    "t_grid_size": 201,
}


def _cfg(**overrides):
    doc = dict(SMALL)
    doc.update(overrides)
    return build_config(file_doc=doc)


class TestParsePdb:
    def test_single(self):
        assert parse_pdb("20") == [20.0]

    def test_pair(self):
        assert parse_pdb("60:100") == [60.0, 100.0]

    def test_range_inclusive(self):
        assert parse_pdb("-20:0:5") == [-20.0, -15.0, -10.0, -5.0, 0.0]

    def test_bad_step(self):
        with pytest.raises(ConfigError):
            parse_pdb("0:10:-1")

    def test_not_a_number(self):
        with pytest.raises(ConfigError):
            parse_pdb("abc")


class TestConfig:
    def test_unknown_scheme(self):
        with pytest.raises(ConfigError):
            _cfg(schemes=["classical", "nope"])

    def test_unknown_field(self):
        with pytest.raises(ConfigError):
            _cfg(bogus=1)

    def test_bad_probability(self):
        with pytest.raises(ConfigError):
            _cfg(params={"p": 1.5, "beta": 1.0})

    def test_missing_topology(self):
        doc = {k: v for k, v in SMALL.items() if k != "topology"}
        with pytest.raises(ConfigError):
            build_config(file_doc=doc)

    def test_mixed_topology_forms(self):
        with pytest.raises(ConfigError):
            _cfg(topology={"t_d": 0.1, "pos_tx1": 0.0})

    def test_scenario_inferred_from_schemes(self):
        cfg = _cfg(schemes=["classical", "zf_mimo"], params={"p": 0.1, "beta": 1.0, "M": 2})
        assert cfg.scenario == "siso_mimo"

    def test_conflicting_schemes(self):
        with pytest.raises(ConfigError):
            _cfg(schemes=["zf_mimo", "d_dpc_zf"], params={"p": 0.1, "beta": 1.0, "M": 2})

    def test_preset_plus_overrides(self):
        cfg = build_config(preset="fig2", overrides={"trials": 3, "seed": 42})
        assert cfg.trials == 3
        assert cfg.seed == 42
        assert cfg.scenario == "siso_siso"
        assert cfg.params.p == 0.1

    def test_scheme_string_form(self):
        cfg = _cfg(schemes="classical,df_dpc")
        assert cfg.schemes == ("classical", "df_dpc")


class TestEval:
    def test_classical_t_star_zero(self):
        doc = cmd_eval(_cfg(), 20.0)
        assert doc["schemes"]["classical"]["t_star"] == 0.0
        assert doc["schemes"]["classical"]["alpha"] is None

    def test_not_decodable_flag(self):
        # override the channel so |h13| > |h12|
        doc = {
            "scenario": "siso_siso",
            "channel": {
                "h12": [0.4, 0.0],
                "h13": [1.5, 0.0],
                "h14": [1.0, 0.0],
                "h23": [0.8, 0.0],
                "h24": [1.0, 0.0],
            },
        }
        path = "/tmp/cograte_test_channel.json"
        with open(path, "w") as fh:
            json.dump(doc, fh)
        out = cmd_eval(_cfg(schemes=["df_dpc"]), 20.0, path)
        scheme = out["schemes"]["df_dpc"]
        assert scheme["diagnostics"]["decodable"] is False
        assert scheme["rate2"] == 0.0

    def test_round_trip_stabilizes(self, tmp_path, monkeypatch):
        # through the real CLI: output channels are quantized to 12 digits,
        # so one re-feed settles and further round trips are byte-identical
        monkeypatch.chdir(tmp_path)
        cfg_doc = dict(SMALL, trials=1)  # fading draw, non-trivial channel
        (tmp_path / "cfg.json").write_text(json.dumps(cfg_doc))
        base = ["eval", "--config", "cfg.json", "--pdb", "20"]
        assert main(base + ["--out", "e1.json"]) == 0
        assert main(base + ["--channel", "e1.json", "--out", "e2.json"]) == 0
        assert main(base + ["--channel", "e2.json", "--out", "e3.json"]) == 0
        first = json.loads((tmp_path / "e1.json").read_text())
        second = json.loads((tmp_path / "e2.json").read_text())
        for s in first["schemes"]:
            assert second["schemes"][s]["total_rate"] == pytest.approx(
                first["schemes"][s]["total_rate"], abs=1e-9
            )
        assert (tmp_path / "e2.json").read_bytes() == (tmp_path / "e3.json").read_bytes()

    def test_matrix_channel_round_trip(self, tmp_path, monkeypatch):
        # multi-antenna links serialize as nested [re, im] lists
        monkeypatch.chdir(tmp_path)
        doc = dict(
            SMALL,
            scenario="miso_miso",
            schemes=["classical", "d_dpc_zf", "zf_miso"],
            params={"p": 0.1, "beta": 1.0, "M": 2},
            trials=2,
        )
        (tmp_path / "cfg.json").write_text(json.dumps(doc))
        base = ["eval", "--config", "cfg.json", "--pdb", "30"]
        assert main(base + ["--out", "m1.json"]) == 0
        assert main(base + ["--channel", "m1.json", "--out", "m2.json"]) == 0
        first = json.loads((tmp_path / "m1.json").read_text())
        second = json.loads((tmp_path / "m2.json").read_text())
        assert np.asarray(first["channel"]["h12"]).shape == (2, 2, 2)
        for s in first["schemes"]:
            assert second["schemes"][s]["total_rate"] == pytest.approx(
                first["schemes"][s]["total_rate"], abs=1e-9
            )

    def test_channel_file_errors(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{\"channel\": {\"h12\": [1.0]}}")
        with pytest.raises(ChannelFileError):
            parse_channel_file(str(bad), "siso_siso", 1)
        bad.write_text("not json")
        with pytest.raises(ChannelFileError):
            parse_channel_file(str(bad), "siso_siso", 1)


class TestSweepCsv:
    def test_header_and_shape(self):
        text = cmd_sweep(_cfg())
        lines = text.strip().split("\n")
        assert lines[0] == "scheme,P_dB,rate_bits,t_star,alpha,u,rate1,rate2,trials,seed"
        assert len(lines) == 1 + 3 * 2  # schemes x power points
        assert text.endswith("\n")
        assert "\r" not in text

    def test_missing_diagnostics_empty(self):
        text = cmd_sweep(_cfg(schemes=["classical"]))
        row = text.strip().split("\n")[1].split(",")
        assert row[0] == "classical"
        assert row[4] == "" and row[5] == ""  # alpha, u

    def test_dominance_columnwise(self):
        text = cmd_sweep(_cfg())
        rows = [line.split(",") for line in text.strip().split("\n")[1:]]
        rates = {}
        for row in rows:
            rates.setdefault(row[0], []).append(float(row[2]))
        for p_idx in range(2):
            assert rates["df_dpc"][p_idx] >= rates["classical"][p_idx] - 1e-12
            assert rates["f_dpc_nc"][p_idx] >= rates["df_dpc"][p_idx] - 1e-12


class TestSlopeCmd:
    def test_references_present(self):
        cfg = _cfg(
            scenario="miso_miso",
            schemes=["classical", "d_dpc_zf"],
            params={"p": 0.1, "beta": 1.0, "M": 2},
            trials=3,
        )
        doc = cmd_slope(cfg, 60.0, 100.0)
        assert doc["schemes"]["classical"]["reference"] == pytest.approx(0.1)
        assert doc["schemes"]["d_dpc_zf"]["reference"] == pytest.approx(0.55)
        for s in doc["schemes"].values():
            assert s["difference"] == pytest.approx(s["slope"] - s["reference"], abs=1e-12)


class TestMainEntry:
    def test_exit_zero_and_output_file(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        code = main(
            [
                "sweep",
                "--preset",
                "fig2",
                "--pdb",
                "0:10:5",
                "--t-grid",
                "201",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        assert out.read_text().startswith("scheme,P_dB,")

    def test_eval_requires_single_point(self, capsys):
        code = main(["eval", "--preset", "fig2", "--pdb", "0:10:5"])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_config_error_exit_code(self, capsys):
        code = main(["sweep", "--preset", "fig2", "--scheme", "zf_mimo,d_dpc_zf"])
        assert code == 2

    def test_missing_config_file(self, capsys):
        code = main(["sweep", "--config", "/nonexistent/cfg.json"])
        assert code == 2

    def test_unwritable_output_is_runtime_error(self, capsys):
        code = main(
            ["sweep", "--preset", "fig2", "--pdb", "0", "--t-grid", "201",
             "--out", "/nonexistent-dir/out.csv"]
        )
        assert code == 1

    def test_byte_identical_reruns(self, tmp_path):
        args = [
            "mc",
            "--preset",
            "fig3",
            "--pdb",
            "0:20:10",
            "--trials",
            "4",
            "--t-grid",
            "201",
        ]
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b), "--workers", "3"]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_stdout_json(self, capsys):
        code = main(["slope", "--preset", "fig2", "--pdb", "0:20", "--trials", "0"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert set(doc["schemes"]) == {"classical", "df_dpc", "f_dpc_nc"}
