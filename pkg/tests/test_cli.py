"""End-to-end CLI flows, exit codes, artifact integrity, determinism."""

import json
import shutil
from pathlib import Path

import pytest

from beurling.cli import main

NAT_CFG = '{"kind": "rational-primes"}\n'


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    cfg = root / "nat.json"
    cfg.write_text(NAT_CFG, encoding="utf-8")
    art = root / "art"
    rc = main(
        ["build", "--system", str(cfg), "--cutoff", "5000", "--theta", "0.1",
         "--kappa", "1.0", "--out", str(art)]
    )
    assert rc == 0
    return root, cfg, art


def test_build_artifacts_exist(workspace):
    _, _, art = workspace
    for name in ("system.json", "table.csv", "fit.json"):
        assert (art / name).exists()
    fit = json.loads((art / "fit.json").read_text(encoding="utf-8"))
    assert fit["A"] == 1.0
    assert fit["kappa"] == 1.0


def test_build_missing_config(tmp_path):
    rc = main(
        ["build", "--system", str(tmp_path / "absent.json"), "--cutoff", "100",
         "--out", str(tmp_path / "o")]
    )
    assert rc == 2


def test_build_malformed_config(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"kind": "unknown-kind"}', encoding="utf-8")
    rc = main(["build", "--system", str(cfg), "--cutoff", "100", "--out", str(tmp_path / "o")])
    assert rc == 2


def test_build_budget_exceeded(tmp_path):
    cfg = tmp_path / "nat.json"
    cfg.write_text(NAT_CFG, encoding="utf-8")
    rc = main(
        ["build", "--system", str(cfg), "--cutoff", "5000", "--budget", "50",
         "--out", str(tmp_path / "o")]
    )
    assert rc == 3


def test_zeros_requires_artifact(tmp_path):
    rc = main(["zeros", "--artifact", str(tmp_path / "nowhere"), "--sweep", "0.4,10"])
    assert rc == 4


def test_density_requires_zero_db(workspace, tmp_path):
    _, cfg, art = workspace
    fresh = tmp_path / "fresh"
    rc = main(
        ["build", "--system", str(cfg), "--cutoff", "2000", "--theta", "0.1",
         "--kappa", "1.0", "--out", str(fresh)]
    )
    assert rc == 0
    rc = main(["density", "--artifact", str(fresh), "--T", "10"])
    assert rc == 4


def test_zeros_then_reports(workspace):
    _, _, art = workspace
    rc = main(["zeros", "--artifact", str(art), "--sweep", "0.35,30", "--coarse", "3000"])
    assert rc == 0
    zlines = (art / "zeros.csv").read_text(encoding="utf-8").splitlines()
    assert zlines[1] == "beta,gamma,multiplicity,residual,method"
    assert len(zlines) == 5  # header + fingerprint + the three zeros below 30
    assert "14.1347" in zlines[2]

    rc = main(["density", "--artifact", str(art), "--T", "15",
               "--alphas", "0.4:0.8:0.2", "--detect", "8,200", "--moments", "2"])
    assert rc == 0
    dlines = (art / "density.csv").read_text(encoding="utf-8").splitlines()
    assert dlines[1] == "alpha,count,theoretical_exponent,empirical_exponent,nontrivial_region"
    assert (art / "detect.csv").exists()
    assert (art / "moments.csv").exists()

    rc = main(["formula", "--artifact", str(art), "--x", "500,1000", "--T", "14.5",
               "--cluster", "14.1,0.5,30", "--turan", "0.6,2,10,0.04"])
    assert rc == 0
    flines = (art / "formula.csv").read_text(encoding="utf-8").splitlines()
    assert flines[1] == "x,psi,delta,approx,residual,T"
    assert (art / "clustering.csv").read_text(encoding="utf-8").splitlines()[1] == \
        "gamma0,lambda,Y,lhs,rhs_core,in_regime"
    assert (art / "turan.csv").exists()

    rc = main(["verify", "--artifact", str(art), "--points", "40"])
    assert rc == 0
    vlines = (art / "verify.csv").read_text(encoding="utf-8").splitlines()
    assert vlines[1] == "inequality,s_re,s_im,lhs,rhs,margin,pass"
    assert all(line.endswith(",true") for line in vlines[2:])

    rc = main(["report", "--artifact", str(art)])
    assert rc == 0
    assert (art / "summary.txt").exists()


def test_verify_rejects_unknown_family(workspace):
    _, _, art = workspace
    rc = main(["verify", "--artifact", str(art), "--checks", "nonsense"])
    assert rc == 2


def test_stale_artifact_detected(workspace, tmp_path):
    _, _, art = workspace
    clone = tmp_path / "clone"
    shutil.copytree(art, clone)
    # tampering with the table invalidates every derived artifact
    table = (clone / "table.csv").read_text(encoding="utf-8")
    (clone / "table.csv").write_text(table.replace("97,1,", "97,2,"), encoding="utf-8")
    rc = main(["density", "--artifact", str(clone), "--T", "15"])
    assert rc == 4


def test_full_pipeline_deterministic(tmp_path):
    cfg = tmp_path / "nat.json"
    cfg.write_text(NAT_CFG, encoding="utf-8")

    def run(out):
        assert main(["build", "--system", str(cfg), "--cutoff", "3000", "--theta",
                     "0.1", "--kappa", "1.0", "--seed", "5", "--out", str(out)]) == 0
        assert main(["zeros", "--artifact", str(out), "--sweep", "0.35,16",
                     "--coarse", "2000"]) == 0
        assert main(["density", "--artifact", str(out), "--T", "15",
                     "--alphas", "0.4:0.8:0.2"]) == 0
        assert main(["formula", "--artifact", str(out), "--x", "300", "--T", "14.5"]) == 0
        assert main(["verify", "--artifact", str(out), "--points", "25"]) == 0
        assert main(["report", "--artifact", str(out)]) == 0

    run(tmp_path / "a")
    run(tmp_path / "b")
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == sorted(p.name for p in (tmp_path / "b").iterdir())
    for name in names:
        a = (tmp_path / "a" / name).read_bytes()
        b = (tmp_path / "b" / name).read_bytes()
        assert a == b, f"{name} differs between identical runs"
