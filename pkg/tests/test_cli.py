import csv
import json
import math
from pathlib import Path

import numpy as np
import pytest

import micropolar.criterion
from micropolar.cli import EXIT_CONFIG, EXIT_INTEGRATION, EXIT_OK, EXIT_VERIFY_FAILED, main

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"
MATERIAL = {"K": 2000.0, "G": 1000.0, "Gc": 500.0, "T": 10.0, "B": 20.0, "Bc": 30.0}


def read_csv(path):
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    header = [ln for ln in lines if ln.startswith("#")]
    rows = list(csv.DictReader([ln for ln in lines if not ln.startswith("#")]))
    return header, [{k: float(v) for k, v in r.items()} for r in rows]


def write(tmp_path, raw, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(raw))
    return str(p)


class TestSimulate:
    def test_von_mises_plateau(self, tmp_path):
        assert main(["simulate", str(CONFIG_DIR / "von_mises_shear.json"), "--out", str(tmp_path)]) == EXIT_OK
        header, rows = read_csv(tmp_path / "simulate.csv")
        assert header[0] == "# micropolar simulate"
        assert any(h.startswith("# config_sha256: ") for h in header)
        assert len(rows) == 31
        assert rows[0]["q"] == 0.0
        assert rows[-1]["q"] == pytest.approx(1.0, rel=1e-12)
        assert rows[-1]["plastic"] == 1.0
        assert all(abs(r["f"]) < 1e-9 for r in rows if r["plastic"])

    def test_elastic_only(self, tmp_path):
        raw = json.loads((CONFIG_DIR / "von_mises_shear.json").read_text())
        raw["load"]["magnitude"] = 1e-5
        assert main(["simulate", write(tmp_path, raw), "--out", str(tmp_path)]) == EXIT_OK
        _, rows = read_csv(tmp_path / "simulate.csv")
        assert all(r["f"] < 0.0 and r["plastic"] == 0.0 for r in rows)
        assert all(r["lambda"] == 0.0 for r in rows)

    def test_steps_flag(self, tmp_path):
        assert main(["simulate", str(CONFIG_DIR / "von_mises_shear.json"), "--out", str(tmp_path), "--steps", "5"]) == EXIT_OK
        _, rows = read_csv(tmp_path / "simulate.csv")
        assert len(rows) == 6

    def test_deterministic(self, tmp_path):
        cfg = str(CONFIG_DIR / "mohr_coulomb_nonassociated.json")
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["simulate", cfg, "--out", str(a), "--steps", "20"]) == EXIT_OK
        assert main(["simulate", cfg, "--out", str(b), "--steps", "20"]) == EXIT_OK
        assert (a / "simulate.csv").read_bytes() == (b / "simulate.csv").read_bytes()

    def test_softening(self, tmp_path):
        assert main(["simulate", str(CONFIG_DIR / "softening_shear.json"), "--out", str(tmp_path)]) == EXIT_OK
        _, rows = read_csv(tmp_path / "simulate.csv")
        q = np.array([r["q"] for r in rows])
        assert q.max() > q[-1]
        assert rows[-1]["cohesion"] == pytest.approx(20.0, rel=1e-3)

    def test_integration_failure(self, tmp_path, capsys):
        raw = json.loads((CONFIG_DIR / "mohr_coulomb_nonassociated.json").read_text())
        raw["settings"] = {"max_iter": 1, "max_subdivisions": 0}
        assert main(["simulate", write(tmp_path, raw), "--out", str(tmp_path)]) == EXIT_INTEGRATION
        assert "integration failed at step" in capsys.readouterr().err
        _, rows = read_csv(tmp_path / "simulate.csv")
        assert len(rows) < 101

    def test_initial_state_outside(self, tmp_path):
        raw = json.loads((CONFIG_DIR / "von_mises_shear.json").read_text())
        raw["initial_state"] = {"sigma": [[10, 0, 0], [0, 0, 0], [0, 0, 0]]}
        assert main(["simulate", write(tmp_path, raw), "--out", str(tmp_path)]) == EXIT_CONFIG


class TestSurface:
    def test_von_mises_circle(self, tmp_path):
        assert main(["surface", str(CONFIG_DIR / "von_mises_shear.json"), "--out", str(tmp_path)]) == EXIT_OK
        _, dev = read_csv(tmp_path / "surface_deviatoric.csv")
        rho = np.array([math.hypot(r["x"], r["y"]) for r in dev])
        np.testing.assert_allclose(rho, math.sqrt(2.0 / 3.0) * 1.0, rtol=1e-12)
        omega = [r["omega"] for r in dev]
        assert omega == sorted(omega)
        _, mer = read_csv(tmp_path / "surface_meridional.csv")
        assert all(r["q"] == pytest.approx(1.0) for r in mer)

    def test_mohr_coulomb_ratio_and_intercept(self, tmp_path):
        raw = {
            "schema": 1,
            "material": MATERIAL,
            "criterion": {"preset": "mohr-coulomb", "phi_deg": 30.0, "eps_round": 0.0, "cohesion": {"c_i": 1.0}},
            "surface": {"p_section": 0.0, "n_theta": 61},
        }
        assert main(["surface", write(tmp_path, raw), "--out", str(tmp_path)]) == EXIT_OK
        _, dev = read_csv(tmp_path / "surface_deviatoric.csv")
        r_tc = [r["r"] for r in dev if r["theta_s"] == pytest.approx(-math.pi / 6)]
        r_te = [r["r"] for r in dev if r["theta_s"] == pytest.approx(math.pi / 6)]
        assert r_tc[0] / r_te[0] == pytest.approx(1.4, rel=1e-9)
        _, mer = read_csv(tmp_path / "surface_meridional.csv")
        s0 = 6.0 * math.cos(math.radians(30.0)) / (3.0 - 0.5)
        q0 = np.interp(0.0, [r["p"] for r in mer], [r["q"] for r in mer])
        assert q0 == pytest.approx(s0, rel=1e-12)

    def test_beyond_apex(self, tmp_path):
        raw = json.loads((CONFIG_DIR / "matsuoka_nakai_surface.json").read_text())
        raw["surface"]["p_section"] = 100.0
        assert main(["surface", write(tmp_path, raw), "--out", str(tmp_path)]) == EXIT_CONFIG


class TestVerify:
    def test_quick_passes(self, tmp_path, capsys):
        assert main(["verify", "--quick", "--seed", "3", "--out", str(tmp_path)]) == EXIT_OK
        text = (tmp_path / "verify.txt").read_text()
        assert "FAIL" not in text
        assert "characteristic lengths" in text
        for n in range(1, 11):
            assert f"[{n:>2}]" in text

    def test_negative_control(self, monkeypatch):
        original = micropolar.criterion.gamma_derivative

        def perturbed(shape, theta):
            return 1.01 * original(shape, theta)

        monkeypatch.setattr(micropolar.criterion, "gamma_derivative", perturbed)
        assert main(["verify", "--quick"]) == EXIT_VERIFY_FAILED

    def test_material_from_config(self, capsys):
        assert main(["verify", str(CONFIG_DIR / "matsuoka_nakai_surface.json"), "--quick"]) == EXIT_OK
        assert "l1=" in capsys.readouterr().out


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            ["bogus"],
            [],
            ["simulate"],
            ["simulate", "/nonexistent/cfg.json"],
            ["simulate", str(CONFIG_DIR / "von_mises_shear.json"), "--steps", "0"],
        ],
    )
    def test_config_errors(self, argv, tmp_path):
        assert main(argv + ["--out", str(tmp_path)] if argv[:1] == ["simulate"] and len(argv) > 1 else argv) == EXIT_CONFIG

    def test_bad_schema(self, tmp_path):
        assert main(["simulate", write(tmp_path, {"schema": 99}), "--out", str(tmp_path)]) == EXIT_CONFIG

    def test_version(self, capsys):
        assert main(["--version"]) == EXIT_OK
