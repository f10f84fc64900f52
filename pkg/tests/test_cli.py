"""Command-line front end: output shapes, exit codes, file emission, determinism."""

import subprocess
import sys

import pytest

from fdmarch.cli import main


def run_cli(*argv):
    """Invoke the CLI in-process; returns the exit code."""
    return main(list(argv))


def read_csv(path):
    meta, rows = {}, []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("# "):
                key, _, value = line[2:].partition("=")
                meta[key] = value
            elif line and line != "x,u":
                x, u = line.split(",")
                rows.append((float(x), float(u)))
    return meta, rows


# -- coeffs ---------------------------------------------------------------------------

class TestCoeffs:
    def test_table_output(self, capsys):
        assert run_cli("coeffs", "--m", "2", "--n", "2") == 0
        out = capsys.readouterr().out
        assert "c[0](nu) = 1 - 5/2 nu + 3 nu^2" in out
        assert "c[-2](nu) = -1/12 nu + 1/2 nu^2" in out
        assert "layer 0:" in out

    def test_first_order(self, capsys):
        assert run_cli("coeffs", "--m", "1", "--r", "1", "--first-order") == 0
        out = capsys.readouterr().out
        assert "c[-1](nu) = -nu" in out
        assert "c[0](nu) = 1 + nu" in out

    def test_first_order_needs_r(self, capsys):
        assert run_cli("coeffs", "--m", "1", "--first-order") == 2
        assert "error:" in capsys.readouterr().err

    def test_rejects_zero_order(self, capsys):
        assert run_cli("coeffs", "--m", "1", "--n", "0") == 2
        assert "n must be >= 1" in capsys.readouterr().err

    def test_wrong_stencil_size_names_requirement(self, capsys):
        assert run_cli("coeffs", "--m", "2", "--n", "3", "--offsets", "-1,0,1") == 2
        assert "n*m+1 = 7" in capsys.readouterr().err

    def test_dump_format_round_trips_through_stability(self, tmp_path, capsys):
        assert run_cli("coeffs", "--m", "2", "--n", "2", "--format", "dump") == 0
        dump = capsys.readouterr().out
        path = tmp_path / "scheme.txt"
        path.write_text(dump)
        assert run_cli(
            "stability", "--scheme-file", str(path), "--sign", "+", "--format", "csv"
        ) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "sign,nu_critical,worst_theta,stable"
        sign, nu_c, _, stable = lines[1].split(",")
        assert sign == "1" and stable == "1"
        assert float(nu_c) == pytest.approx(2.0 / 3.0, abs=1e-3)

    def test_corrupted_scheme_file(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("m=1\nn=1\noffsets=-1,0\nc[-1]=0,-1\nc[0]=1,5\n")
        code = run_cli("stability", "--scheme-file", str(path))
        assert code == 2
        assert "error:" in capsys.readouterr().err


# -- stability / classify ----------------------------------------------------------------

class TestStability:
    def test_table_both_signs(self, capsys):
        assert run_cli("stability", "--m", "2", "--n", "1") == 0
        out = capsys.readouterr().out
        assert "sign=+1" in out and "sign=-1" in out
        plus_line = next(l for l in out.splitlines() if l.startswith("sign=+1"))
        assert "stable up to" in plus_line
        nu_c = float(plus_line.split("|nu| = ")[1].split()[0])
        assert nu_c == pytest.approx(0.5, abs=1e-3)
        assert "unstable" in out

    def test_classify_third_derivative(self, capsys):
        assert run_cli("classify", "--m", "3") == 0
        out = capsys.readouterr().out
        assert "a>0: stable window r=2" in out
        assert "a<0: stable window r=1" in out

    def test_classify_reports_dead_sign(self, capsys):
        assert run_cli("classify", "--m", "2") == 0
        out = capsys.readouterr().out
        assert "a>0: stable window r=1" in out
        assert "a<0: no stable window" in out


# -- converge -----------------------------------------------------------------------------

class TestConverge:
    def test_third_order_slope(self, capsys):
        assert run_cli("converge", "--m", "1", "--n", "3", "--nu", "0.8") == 0
        out = capsys.readouterr().out
        line = next(l for l in out.splitlines() if l.startswith("fitted order vs dt:"))
        slope = float(line.split(":")[1].split()[0])
        assert slope == pytest.approx(3.0, abs=0.25)

    def test_exact_shift_reported(self, capsys):
        assert run_cli("converge", "--m", "1", "--n", "2", "--nu", "1.0") == 0
        assert "exactly" in capsys.readouterr().out

    def test_unstable_refused(self, capsys):
        assert run_cli("converge", "--m", "2", "--n", "1", "--nu", "0.8") == 2
        assert "unstable" in capsys.readouterr().err


# -- run ----------------------------------------------------------------------------------

class TestRunPresets:
    def test_burgers_preset_writes_all_times(self, tmp_path, capsys):
        out_dir = tmp_path / "o"
        assert run_cli("run", "fig-burgers", "--orders", "3", "--out", str(out_dir)) == 0
        files = {p.name for p in out_dir.iterdir()}
        assert files == {
            "fig-burgers_n3_burgers_t0.csv",
            "fig-burgers_n3_burgers_t0.5.csv",
            "fig-burgers_n3_burgers_t1.csv",
            "fig-burgers_n3_burgers_t1.5.csv",
            "fig-burgers_n3_burgers_t2.csv",
        }
        meta, rows = read_csv(out_dir / "fig-burgers_n3_burgers_t2.csv")
        assert meta["order"] == "3"
        assert meta["profile"] == "burgers"
        assert float(meta["dx"]) == pytest.approx(0.05)
        assert len(rows) == 200

    def test_advection_preset_single_order(self, tmp_path):
        out_dir = tmp_path / "o"
        assert run_cli(
            "run", "fig-advection", "--orders", "5", "--profiles", "triangle",
            "--out", str(out_dir),
        ) == 0
        files = [p.name for p in out_dir.iterdir()]
        assert files == ["fig-advection_uw05_triangle_t500.csv"]
        meta, rows = read_csv(out_dir / files[0])
        assert meta["family"] == "uw"
        assert float(meta["nu"]) == pytest.approx(-0.8)
        assert meta["offsets"] == "-3,-2,-1,0,1,2"
        assert len(rows) == 100

    def test_unknown_preset(self, tmp_path, capsys):
        assert run_cli("run", "fig-nope", "--out", str(tmp_path / "o")) == 2
        assert "unknown preset" in capsys.readouterr().err

    def test_deterministic_reruns(self, tmp_path):
        d1, d2 = tmp_path / "a", tmp_path / "b"
        for d in (d1, d2):
            assert run_cli("run", "fig-burgers", "--orders", "2", "--out", str(d)) == 0
        name = "fig-burgers_n2_burgers_t1.csv"
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


class TestRunExplicit:
    def test_diffusion_defaults(self, tmp_path):
        out_dir = tmp_path / "o"
        assert run_cli(
            "run", "--m", "2", "--n", "2", "--profile", "gaussian",
            "--steps", "100", "--out", str(out_dir),
        ) == 0
        files = [p.name for p in out_dir.iterdir()]
        assert files == ["run_m2_n2_gaussian_t0.4.csv"]
        meta, rows = read_csv(out_dir / files[0])
        assert float(meta["nu"]) == pytest.approx(0.4)
        assert meta["cells"] == "100"
        # diffusion flattens the peak but keeps positivity on this budget
        peak = max(u for _, u in rows)
        assert 0.0 < peak < 1.0

    def test_needs_orders_and_steps(self, tmp_path, capsys):
        assert run_cli("run", "--m", "2", "--out", str(tmp_path / "o")) == 2
        assert run_cli(
            "run", "--m", "2", "--n", "1", "--out", str(tmp_path / "o")
        ) == 2

    def test_unstable_run_records_warning(self, tmp_path, capsys):
        out_dir = tmp_path / "o"
        assert run_cli(
            "run", "--m", "2", "--n", "1", "--dx", "0.1", "--dt", "0.008",
            "--steps", "5", "--out", str(out_dir),
        ) == 0
        err = capsys.readouterr().err
        assert "warning:" in err and "unstable" in err
        meta, _ = read_csv(out_dir / "run_m2_n1_triangle_t0.04.csv")
        assert "unstable" in meta["warning"]

    def test_times_outside_run(self, tmp_path, capsys):
        assert run_cli(
            "run", "--m", "1", "--n", "1", "--steps", "10",
            "--times", "9999", "--out", str(tmp_path / "o"),
        ) == 2
        assert "within the run duration" in capsys.readouterr().err

    def test_bad_dx_tiling(self, tmp_path, capsys):
        assert run_cli(
            "run", "--m", "1", "--n", "1", "--steps", "10", "--dx", "0.3",
            "--out", str(tmp_path / "o"),
        ) == 2
        assert "does not tile" in capsys.readouterr().err


# -- exit codes and entry points ------------------------------------------------------------

class TestExitCodes:
    def test_usage_error_is_exit_one(self):
        with pytest.raises(SystemExit) as exc:
            main(["no-such-command"])
        assert exc.value.code == 1

    def test_malformed_int_list(self):
        with pytest.raises(SystemExit) as exc:
            main(["coeffs", "--m", "1", "--n", "1", "--offsets", "a,b"])
        assert exc.value.code == 1

    def test_console_script_installed(self):
        proc = subprocess.run(
            ["fdmarch", "coeffs", "--m", "1", "--n", "1"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "c[0](nu)" in proc.stdout

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "fdmarch.cli", "classify", "--m", "1"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "stable window r=1" in proc.stdout
