import os
import subprocess

import numpy as np
import pytest

import cgsp

CONFIG = """\
generator = line1d:n=24:d=2
seed = 9
trials = 2
noise_std = 0.02
gamma = 0.001
sample_sizes = [8, 16]
methods = [egk:sigma=0.5, gbk:F=4:mu=0.01:a=0.9]
graph {
  kernel = egk:sigma=0.5
  knn = 6
}
signal {
  type = kernel
  alpha_seed = 4
}
"""


def test_version_string():
    assert isinstance(cgsp.__version__, str) and cgsp.__version__


def test_kernel_matrix_hermitian_unit_diagonal():
    feats = cgsp.gen_features("line1d:n=16:d=2")
    k = cgsp.kernel_matrix("hgk:sigma=0.8:metric=kahler", feats)
    assert k.shape == (16, 16)
    assert np.allclose(k, k.conj().T)
    assert np.allclose(np.diag(k), 1.0)


def test_kernel_spec_rejected():
    feats = cgsp.gen_features("line1d:n=4:d=1")
    with pytest.raises(cgsp.CgspError):
        cgsp.kernel_matrix("egk:sigma=-1", feats)


def test_krr_interpolates_kernel_signal():
    feats = cgsp.gen_features("line1d:n=20:d=2")
    k = cgsp.kernel_matrix("egk:sigma=0.5", feats)
    f = cgsp.gen_signal_from_kernel(k, 3)
    plan = cgsp.SamplingPlan.uniform(20, 20, 0.0, 1)
    y = cgsp.sample(plan, f)
    f_hat, beta = cgsp.krr(k, plan, y, 1e-10)
    assert beta.shape == (20,)
    assert cgsp.nmse(f_hat, f) < 1e-8


def test_gfrft_round_trip_and_parseval():
    g = cgsp.community_graph(20, 2, 0.6, 0.05, 3)
    s = cgsp.spectrum(g, 0.9)
    rng = np.random.default_rng(0)
    f = rng.standard_normal(20) + 1j * rng.standard_normal(20)
    fhat = cgsp.gfrft(s, f)
    assert np.allclose(cgsp.inverse_gfrft(s, fhat), f)
    assert abs(np.linalg.norm(fhat) - np.linalg.norm(f)) < 1e-10 * np.linalg.norm(f)


def test_bandlimited_signal_recovery():
    feats = cgsp.gen_features("swiss_roll:n=24:seed=5")
    g = cgsp.graph_from_kernel("egk:sigma=0.5", feats, knn=6)
    s = cgsp.spectrum(g, 0.9)
    band = list(range(6))
    f = cgsp.gen_bandlimited_signal(s, band)
    plan = cgsp.SamplingPlan.uniform(24, 24, 0.0, 2)
    f_hat = cgsp.bandlimited_ridge(s, band, 1e-2, 1e-8, plan, cgsp.sample(plan, f))
    assert cgsp.nmse(f_hat, f) < 1e-10


def test_mkl_single_kernel_matches_krr():
    feats = cgsp.gen_features("line1d:n=18:d=1")
    k = cgsp.kernel_matrix("egk:sigma=1", feats)
    f = cgsp.gen_signal_from_kernel(k, 5)
    plan = cgsp.SamplingPlan.uniform(18, 12, 0.05, 6)
    y = cgsp.sample(plan, f)
    res = cgsp.mkl_fit([k], plan, y, gamma=1e-3, nu=0.0, eta=0.0, eps=1e-12,
                       radius=1e-12, omega0=np.ones(1))
    f_krr, _ = cgsp.krr(k, plan, y, 1e-3 * 12)
    assert np.linalg.norm(res["f_opt"] - f_krr) < 1e-6 * np.linalg.norm(f_krr)
    trace = res["objective_trace"]
    assert all(b <= a + 1e-10 * (1 + abs(a)) for a, b in zip(trace, trace[1:]))


def test_rayleigh_fit_recovers_sigma():
    x = cgsp.sample_rayleigh(2.0, 20000, 7)
    fit = cgsp.fit_rayleigh(x)
    assert abs(fit["sigma"] - 2.0) < 0.05


def _cli():
    path = os.environ.get("CGSP_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("CGSP_CLI not set")
    return path


def test_cli_run_is_byte_deterministic(tmp_path):
    cli = _cli()
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(CONFIG)
    outputs = []
    for name in ("a", "b"):
        out_dir = tmp_path / name
        subprocess.run([cli, "run", str(cfg), "--out-dir", str(out_dir)],
                       check=True, capture_output=True)
        outputs.append((out_dir / "results.csv").read_bytes()
                       + (out_dir / "results.json").read_bytes())
    assert outputs[0] == outputs[1]


def test_cli_gen_writes_features(tmp_path):
    cli = _cli()
    out = tmp_path / "features.csv"
    subprocess.run([cli, "gen", "line1d:n=8:d=2", "--out", str(out)],
                   check=True, capture_output=True)
    header = out.read_text().splitlines()[0]
    assert header == "index,re_0,im_0,re_1,im_1"
