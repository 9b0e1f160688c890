import subprocess
import sys

import numpy as np
import pytest

from sglnufft import csvio
from sglnufft import transform as tr
from sglnufft.cli import main
from sglnufft.generate import gen_coeffs, gen_points_ball


def run_cli(*args):
    return main(list(args))


class TestCsvRoundtrip:
    def test_coeffs(self, tmp_path):
        path = str(tmp_path / "c.csv")
        c = gen_coeffs(3, 0)
        csvio.write_coeffs(path, c, 3)
        back, bandwidth = csvio.read_coeffs(path)
        assert bandwidth == 3
        assert np.array_equal(back, c)  # %.17g round-trips doubles exactly

    def test_points(self, tmp_path):
        path = str(tmp_path / "p.csv")
        pts = gen_points_ball(20, 2.0, 1)
        csvio.write_points(path, pts)
        assert np.array_equal(csvio.read_points(path), pts)

    def test_values(self, tmp_path):
        path = str(tmp_path / "v.csv")
        v = np.arange(5) * (1 + 2j) / 7
        csvio.write_values(path, v)
        assert np.array_equal(csvio.read_values(path), v)

    def test_schema_comment_present(self, tmp_path):
        path = str(tmp_path / "c.csv")
        csvio.write_coeffs(path, gen_coeffs(2, 0), 2)
        first = open(path).readline()
        assert first.startswith("# sglnufft-csv v1")

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("# sglnufft-csv v1\nfoo,bar\n1,2\n")
        with pytest.raises(ValueError):
            csvio.read_points(str(path))


class TestCliPipelines:
    def test_gen_forward_matches_library(self, tmp_path):
        cdir = str(tmp_path)
        assert run_cli("gen-coeffs", "-B", "2", "--seed", "5",
                       "--out", f"{cdir}/c.csv") == 0
        assert run_cli("gen-points", "-M", "40", "--kappa", "2.5", "--seed", "6",
                       "--out", f"{cdir}/p.csv") == 0
        assert run_cli("forward", "--coeffs", f"{cdir}/c.csv",
                       "--points", f"{cdir}/p.csv", "--method", "naive",
                       "--out", f"{cdir}/v.csv") == 0
        vals = csvio.read_values(f"{cdir}/v.csv")
        ref = tr.evaluate_direct(gen_coeffs(2, 5), 2, gen_points_ball(40, 2.5, 6))
        assert np.array_equal(vals, ref)
        # and the emitted file is byte-identical to writing the library result
        csvio.write_values(f"{cdir}/ref.csv", ref)
        assert open(f"{cdir}/v.csv", "rb").read() == open(f"{cdir}/ref.csv", "rb").read()

    def test_naive_vs_fast_file_comparison(self, tmp_path):
        cdir = str(tmp_path)
        run_cli("gen-coeffs", "-B", "4", "--seed", "1", "--out", f"{cdir}/c.csv")
        run_cli("gen-points", "-M", "60", "--kappa", "3", "--seed", "2",
                "--out", f"{cdir}/p.csv")
        run_cli("forward", "--coeffs", f"{cdir}/c.csv", "--points", f"{cdir}/p.csv",
                "--method", "naive", "--out", f"{cdir}/naive.csv")
        run_cli("forward", "--coeffs", f"{cdir}/c.csv", "--points", f"{cdir}/p.csv",
                "--method", "fast", "-q", "12", "--out", f"{cdir}/fast.csv")
        a = csvio.read_values(f"{cdir}/naive.csv")
        b = csvio.read_values(f"{cdir}/fast.csv")
        assert np.max(np.abs(a - b)) / np.max(np.abs(a)) <= 1e-8

    def test_adjoint_and_invert(self, tmp_path):
        cdir = str(tmp_path)
        run_cli("gen-coeffs", "-B", "2", "--seed", "3", "--out", f"{cdir}/c.csv")
        run_cli("gen-points", "-M", "100", "--kappa", "2", "--seed", "4",
                "--out", f"{cdir}/p.csv")
        run_cli("forward", "--coeffs", f"{cdir}/c.csv", "--points", f"{cdir}/p.csv",
                "--method", "fast-exact", "--out", f"{cdir}/v.csv")
        assert run_cli("adjoint", "--values", f"{cdir}/v.csv",
                       "--points", f"{cdir}/p.csv", "-B", "2",
                       "--method", "fast-exact", "--out", f"{cdir}/adj.csv") == 0
        assert run_cli("invert", "--values", f"{cdir}/v.csv",
                       "--points", f"{cdir}/p.csv", "-B", "2",
                       "--method", "fast-exact", "--max-iter", "100",
                       "--tol", "1e-12", "--out", f"{cdir}/rec.csv") == 0
        rec, _ = csvio.read_coeffs(f"{cdir}/rec.csv")
        truth = gen_coeffs(2, 3)
        assert np.max(np.abs(rec - truth)) <= 1e-6

    def test_seed_reproducibility_bytes(self, tmp_path):
        a, b = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
        run_cli("gen-points", "-M", "25", "--seed", "9", "--out", a)
        run_cli("gen-points", "-M", "25", "--seed", "9", "--out", b)
        assert open(a, "rb").read() == open(b, "rb").read()

    def test_bad_input_nonzero_exit_no_partial_file(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("# sglnufft-csv v1\nr,theta,phi\nnot,a,number\n")
        out = tmp_path / "out.csv"
        rc = run_cli("forward", "--coeffs", str(bad), "--points", str(bad),
                     "--out", str(out))
        assert rc != 0
        assert not out.exists()

    def test_experiment_subcommand(self, tmp_path):
        out = str(tmp_path / "exp.csv")
        rc = run_cli("experiment", "error-vs-q", "-B", "2", "-M", "30",
                     "--kappa", "2", "--q-list", "3,5", "--repetitions", "2",
                     "--seed", "1", "--out", out)
        assert rc == 0
        text = open(out).read()
        assert text.startswith("# sglnufft-csv v1")
        assert "avg_max_rel_err" in text


class TestCliContract:
    @pytest.mark.parametrize("cmd", ["gen-coeffs", "gen-points", "gen-grid",
                                     "forward", "adjoint", "invert", "experiment"])
    def test_help_available(self, cmd):
        proc = subprocess.run(
            [sys.executable, "-m", "sglnufft.cli", cmd, "--help"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "usage" in proc.stdout.lower()

    def test_missing_required_flag_fails(self):
        proc = subprocess.run(
            [sys.executable, "-m", "sglnufft.cli", "gen-coeffs"],
            capture_output=True, text=True,
        )
        assert proc.returncode != 0

    def test_value_error_exit_code(self, tmp_path):
        # cutoff too large for the bandwidth
        cdir = str(tmp_path)
        run_cli("gen-coeffs", "-B", "1", "--seed", "0", "--out", f"{cdir}/c.csv")
        run_cli("gen-points", "-M", "5", "--seed", "0", "--out", f"{cdir}/p.csv")
        rc = run_cli("forward", "--coeffs", f"{cdir}/c.csv",
                     "--points", f"{cdir}/p.csv", "-q", "64",
                     "--out", f"{cdir}/v.csv")
        assert rc == 1
