import numpy as np
import pytest

from sglnufft.experiments import (
    ExperimentSpec,
    experiment_error_vs_bandwidth,
    experiment_error_vs_q,
    experiment_error_vs_radius,
    experiment_inverse,
    experiment_runtime,
    run_experiment,
)


def tiny(kind, **kw):
    base = dict(kind=kind, B=2, M=40, kappa=2.0, q=6, repetitions=2, seed=3)
    base.update(kw)
    return ExperimentSpec(**base)


class TestErrorVsQ:
    def test_table_schema_and_determinism(self):
        spec = tiny("error-vs-q", q_list=[3, 6])
        t1 = experiment_error_vs_q(spec)
        t2 = experiment_error_vs_q(tiny("error-vs-q", q_list=[3, 6]))
        assert t1.columns[:3] == ["q", "avg_max_abs_err", "avg_max_rel_err"]
        assert t1.render() == t2.render()

    def test_error_improves_with_cutoff(self):
        tab = experiment_error_vs_q(tiny("error-vs-q", q_list=[3, 6], M=60))
        assert tab.rows[1][1] < tab.rows[0][1]

    def test_validation(self):
        with pytest.raises(ValueError):
            experiment_error_vs_q(tiny("error-vs-q"))


class TestErrorVsRadius:
    def test_rows_per_kappa(self):
        tab = experiment_error_vs_radius(tiny("error-vs-radius",
                                              kappa_list=[1.0, 2.0]))
        assert [r[0] for r in tab.rows] == [1.0, 2.0]
        assert all(np.isfinite(r[1]) for r in tab.rows)


class TestErrorVsBandwidth:
    def test_exact_control_columns(self):
        spec = tiny("error-vs-bandwidth", B_list=[2, 3], with_exact_control=True)
        tab = experiment_error_vs_bandwidth(spec)
        assert tab.columns[-2:] == ["avg_max_abs_err_exact", "avg_max_rel_err_exact"]
        # exact-stage residual errors sit at machine-precision level
        assert all(row[-2] < 1e-10 for row in tab.rows)


class TestRuntime:
    def test_schema_and_positive_times(self):
        spec = tiny("runtime", m_list=[10, 50], repetitions=1, B=4, q=6)
        tab = experiment_runtime(spec)
        assert tab.columns[0] == "M"
        assert all(row[1] > 0 and row[3] > 0 for row in tab.rows)

    def test_direct_path_scales_linearly(self):
        # log-log slope of the direct path over a decade of M
        spec = tiny("runtime", m_list=[3000, 30000], repetitions=3, B=16, q=8)
        tab = experiment_runtime(spec)
        slope = np.log(tab.rows[1][2] / tab.rows[0][2]) / np.log(10.0)
        assert 0.8 <= slope <= 1.2


class TestInverse:
    def test_error_columns_track_iterations(self):
        spec = tiny("inverse-convergence", grid_n_list=[6], q=5, max_iter=15,
                    kappa=2.0, B=2)
        tab = experiment_inverse(spec)
        its = [r[2] for r in tab.rows]
        assert its == list(range(len(its)))
        assert tab.columns == ["N", "kappa", "iteration", "max_abs_err",
                               "max_rel_err", "residual"]
        # the error trend over the run is downward
        assert tab.rows[-1][4] < tab.rows[0][4]


class TestDispatch:
    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            run_experiment(tiny("frequency-sweep"))

    def test_paper_scale_settings(self):
        from sglnufft.experiments import paper_scale

        spec = paper_scale(tiny("inverse-convergence", grid_n_list=[6]))
        assert spec.B == 8 and spec.q == 15
        assert spec.grid_n_list == [25, 50, 100]
        spec = paper_scale(tiny("runtime", m_list=[10]))
        assert spec.m_list[-1] == 10**6


class TestWorkerCap:
    def test_thread_cap_does_not_change_results(self, monkeypatch):
        spec = tiny("error-vs-q", q_list=[3, 6])
        parallel = experiment_error_vs_q(spec).render()
        monkeypatch.setenv("SGLNUFFT_THREADS", "1")
        sequential = experiment_error_vs_q(tiny("error-vs-q", q_list=[3, 6])).render()
        assert parallel == sequential
