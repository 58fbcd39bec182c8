import json

import pytest

from plancherel_hurwitz import cli, partitions


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


class TestHnum:
    def test_frobenius(self, capsys):
        doc = run_json(capsys, "hnum", "--n", "3", "--ell", "4")
        assert doc["value"] == "27"
        assert doc["manifest"]["command"] == "hnum"
        assert doc["manifest"]["flags"]["n"] == 3

    def test_bruteforce_agrees(self, capsys):
        a = run_json(capsys, "hnum", "--n", "5", "--ell", "6")
        b = run_json(capsys, "hnum", "--n", "5", "--ell", "6", "--method", "bruteforce")
        assert a["value"] == b["value"]

    def test_large_value_is_a_string(self, capsys):
        doc = run_json(capsys, "hnum", "--n", "20", "--ell", "40", "--threads", "2")
        assert isinstance(doc["value"], str) and int(doc["value"]) > 2**64

    def test_odd(self, capsys):
        doc = run_json(capsys, "hnum", "--n", "4", "--ell", "3")
        assert doc["value"] == "0" and doc["log_value"] is None

    def test_asymptotic(self, capsys):
        doc = run_json(capsys, "hnum", "--n", "16", "--ell", "48", "--method", "asymptotic")
        assert doc["log_value"] == pytest.approx(cli.asymptotic_log_estimate(16, 48))

    def test_budget_exit(self, capsys):
        assert run(capsys, "hnum", "--n", "100", "--ell", "2")[0] == 3
        assert run(capsys, "hnum", "--n", "9", "--ell", "2", "--method", "bruteforce")[0] == 3

    def test_env_budget(self, capsys, monkeypatch):
        monkeypatch.setenv("PHW_BUDGET", "5")
        assert run(capsys, "hnum", "--n", "6", "--ell", "2")[0] == 3

    def test_usage_errors(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["hnum", "--n", "3"])
        assert exc.value.code == 2
        assert run(capsys, "hnum", "--n", "0", "--ell", "2")[0] == 2


class TestSample:
    def test_plancherel_stream(self, tmp_path, capsys):
        out = tmp_path / "p.jsonl"
        code, _, _ = run(capsys, "sample", "plancherel", "--n", "50", "--count", "5", "--seed", "1", "-o", str(out))
        assert code == 0
        lines = [json.loads(x) for x in out.read_text().splitlines()]
        assert lines[0]["manifest"]["seed"] == 1
        assert lines[0]["manifest"]["generator"]["name"] == "numpy.random.PCG64"
        assert len(lines) == 6
        for rec in lines[1:]:
            assert sum(rec["partition"]) == 50
            assert rec["C"] == partitions.content_sum(rec["partition"])

    def test_chain_stream(self, capsys):
        code, out, _ = run(capsys, "sample", "plancherel-hurwitz", "--n", "40", "--ell", "30", "--steps", "2000",
                           "--burnin", "500", "--thin", "100", "--seed", "3")
        assert code == 0
        lines = [json.loads(x) for x in out.splitlines()]
        assert [r["step"] for r in lines[1:]] == list(range(600, 2001, 100))
        assert all(r["C"] > 0 for r in lines[1:])

    def test_byte_identical(self, tmp_path, capsys):
        outs = []
        for _ in range(2):
            run(capsys, "sample", "plancherel-hurwitz", "--n", "30", "--ell", "20", "--steps", "3000",
                "--thin", "50", "--seed", "9", "-o", str(tmp_path / "s.jsonl"))
            outs.append((tmp_path / "s.jsonl").read_bytes())
        assert outs[0] == outs[1]

    def test_seed_required(self, capsys):
        assert run(capsys, "sample", "plancherel", "--n", "5", "--count", "2")[0] == 2

    def test_bad_chain_args(self, capsys):
        assert run(capsys, "sample", "plancherel-hurwitz", "--n", "10", "--ell", "3", "--steps", "5", "--seed", "1")[0] == 2
        assert run(capsys, "sample", "plancherel-hurwitz", "--n", "10", "--ell", "4", "--seed", "1")[0] == 2
        assert run(capsys, "sample", "plancherel-hurwitz", "--n", "4", "--ell", "2", "--steps", "5", "--seed", "1",
                   "--initial", "[1,1,1,1]")[0] == 2


class TestProfile:
    def test_mean_profile(self, tmp_path, capsys):
        src = tmp_path / "in.jsonl"
        src.write_text('{"manifest": {}}\n{"partition": [1]}\n')
        code, out, _ = run(capsys, "profile", "--input", str(src), "--x-max", "2", "--points", "5")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("# ")
        assert lines[1] == "x,psi,omega"
        rows = [list(map(float, x.split(","))) for x in lines[2:]]
        assert [r[0] for r in rows] == [-2, -1, 0, 1, 2]
        assert rows[2][1] == pytest.approx(2.0)
        assert rows[1][1] == pytest.approx(1.0)

    def test_exclude_first_part(self, tmp_path, capsys):
        src = tmp_path / "in.jsonl"
        src.write_text('{"partition": [10]}\n')
        code, out, _ = run(capsys, "profile", "--input", str(src), "--exclude-first-part", "--points", "3", "--x-max", "1")
        rows = [list(map(float, x.split(","))) for x in out.splitlines()[2:]]
        assert [r[1] for r in rows] == [1.0, 0.0, 1.0]

    def test_empty_input(self, tmp_path, capsys):
        src = tmp_path / "empty.jsonl"
        src.write_text("")
        code, out, _ = run(capsys, "profile", "--input", str(src))
        assert code == 0
        assert out.splitlines()[1:] == ["x,psi,omega"]

    def test_per_sample(self, tmp_path, capsys):
        src = tmp_path / "in.jsonl"
        src.write_text('{"partition": [2, 1]}\n{"partition": [3]}\n')
        prefix = tmp_path / "each"
        assert run(capsys, "profile", "--input", str(src), "--per-sample", str(prefix), "--points", "11")[0] == 0
        assert (tmp_path / "each_00000.csv").exists() and (tmp_path / "each_00001.csv").exists()

    def test_missing_file(self, capsys):
        assert run(capsys, "profile", "--input", "/nonexistent/x.jsonl")[0] == 2


class TestMaps:
    def test_analyze(self, capsys):
        doc = run_json(capsys, "maps", "analyze", "--tuple", "1 2;1 2;1 2;1 2;3 4;3 4", "--n", "4")
        assert doc["genera"] == [1, 0]
        assert doc["pure"] is True and doc["descent_purity"] is True
        assert doc["report"]["faces"] == 4

    def test_sample_all(self, capsys):
        doc = run_json(capsys, "maps", "sample", "--n", "10", "--ell", "12", "--count", "30", "--seed", "2")
        assert doc["count"] == 30 and doc["ensemble"] == "all"

    def test_sample_pure_samplers(self, capsys):
        a = run_json(capsys, "maps", "sample", "--n", "4", "--ell", "6", "--pure", "--count", "20", "--seed", "2")
        b = run_json(capsys, "maps", "sample", "--n", "12", "--ell", "30", "--pure", "--count", "5", "--seed", "2")
        assert a["sampler"] == "rejection" and b["sampler"] == "conditioned"

    def test_exhausted(self, capsys):
        code, _, _ = run(capsys, "maps", "sample", "--n", "20", "--ell", "30", "--pure", "--sampler", "rejection",
                         "--max-tries", "3", "--count", "1", "--seed", "0")
        assert code == 3

    def test_usage(self, capsys):
        assert run(capsys, "maps", "analyze")[0] == 2
        assert run(capsys, "maps", "analyze", "--tuple", "1 1")[0] == 2
        assert run(capsys, "maps", "sample", "--n", "5", "--ell", "3", "--pure", "--seed", "1")[0] == 2


class TestVerify:
    def test_maps_suite(self, capsys, tmp_path):
        report = tmp_path / "r.json"
        code, out, _ = run(capsys, "verify", "--suite", "maps", "--json", str(report))
        assert code == 0
        assert out.count("PASS") == 3
        assert json.loads(report.read_text())["passed"] is True

    def test_broken_library_fails(self, capsys, monkeypatch):
        monkeypatch.setattr(partitions, "dim_syt", lambda lam: 1)
        code, out, _ = run(capsys, "verify", "--suite", "small")
        assert code == 1
        assert "FAIL  small/rsk-identity" in out
