import json

import numpy as np
import pytest

from edgenet.cli import EXIT_INVALID, EXIT_IO, EXIT_OK, EXIT_SOLVER, UsageError, main, parse_floats, parse_size
from edgenet.io import net_to_dict, save_json
from edgenet.netcore import random_edge_constraint_net


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def good_net(tmp_path):
    p = tmp_path / "good.json"
    save_json(random_edge_constraint_net(4, 4, 21), p)
    return p


@pytest.fixture
def bad_net(tmp_path):
    d = net_to_dict(random_edge_constraint_net(4, 4, 21))
    n = np.asarray(d["normals"])
    n[7] += [0.0, 0.0, 0.3]
    d["normals"] = (n / np.linalg.norm(n, axis=1)[:, None]).tolist()
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    return p


class TestParsing:
    def test_size(self):
        assert parse_size("8x6") == (8, 6)
        assert parse_size("3×4") == (3, 4)
        with pytest.raises(UsageError):
            parse_size("8 by 6")

    def test_floats(self):
        np.testing.assert_allclose(parse_floats("0, pi/6, 5*pi/6, -1e-3"), [0, np.pi / 6, 5 * np.pi / 6, -1e-3])
        with pytest.raises(UsageError):
            parse_floats("__import__('os')")


class TestGenerators:
    @pytest.mark.parametrize(
        "argv",
        [
            ["minimal", "--size", "4x4", "--origin=-2-2j", "--alpha", "0,pi/2"],
            ["minimal", "--holo", "moebius:1,0,0.2,1", "--origin", "0.5+0.5j", "--size", "3x3"],
            ["cmc", "--size", "4x4", "--alpha", "0,pi/8", "--perturb", "0.02,0.01,0.01"],
            ["knet", "--size", "6x6", "--cauchy", "pseudosphere", "--lambda", "0.8,1.2"],
            ["cknet", "--lambda", "1.2"],
            ["developable", "--points", "8"],
            ["lantern", "--around", "6", "--height", "3"],
        ],
    )
    def test_pass(self, capsys, tmp_path, argv):
        code, out, err = run(capsys, *argv, "--out", tmp_path / "o.json")
        assert code == EXIT_OK, err
        summary = json.loads(out)
        for s in summary if isinstance(summary, list) else [summary]:
            assert s["edge_constraint"]["passed"]

    def test_outputs_and_report(self, capsys, tmp_path):
        code, out, _ = run(capsys, "minimal", "--size", "3x3", "--alpha", "0,1", "--out", tmp_path / "m.obj",
                           "--report", tmp_path / "m.csv")
        assert code == EXIT_OK
        for i in range(2):
            assert (tmp_path / f"m_{i}.obj").exists() and (tmp_path / f"m_{i}.csv").exists()

    def test_reproducible(self, capsys, tmp_path):
        for name in ("a", "b"):
            run(capsys, "cmc", "--size", "3x3", "--perturb", "0.02,0.01,0.01", "--out", tmp_path / f"{name}.json")
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    def test_ck_config(self, capsys, tmp_path):
        cfg = tmp_path / "ck.json"
        cfg.write_text(json.dumps({"rows": 3, "cols": 3, "sin_delta": [1.3, 1.2]}))
        code, out, _ = run(capsys, "cknet", "--config", cfg, "--lambda", "1.3")
        assert code == EXIT_OK
        assert json.loads(out)["product_rule"] < 1e-12


class TestExitCodes:
    def test_validate(self, capsys, good_net, bad_net):
        assert run(capsys, "validate", "--net", good_net)[0] == EXIT_OK
        code, out, _ = run(capsys, "validate", "--net", bad_net)
        assert code == EXIT_INVALID and json.loads(out)["passed"] is False

    def test_env_tolerance(self, capsys, bad_net, monkeypatch):
        monkeypatch.setenv("EDGENET_TOL", "0.5")
        assert run(capsys, "validate", "--net", bad_net)[0] == EXIT_OK
        assert run(capsys, "--tol", "1e-9", "validate", "--net", bad_net)[0] == EXIT_INVALID

    def test_usage_error(self, capsys):
        code, _, err = run(capsys, "minimal", "--size", "four")
        assert code == EXIT_INVALID and "validation failure" in err
        assert run(capsys, "frobnicate")[0] == EXIT_INVALID

    def test_solver_failure(self, capsys, tmp_path):
        spec = tmp_path / "lax.json"
        spec.write_text(json.dumps({"a": [[1, 0], [1, 0]], "u": [1, 1e-8], "b": [[1e8, 1e8]], "v": [1e-8]}))
        code, _, err = run(capsys, "laxcheck", "--spec", spec)
        assert code == EXIT_SOLVER and "did not converge" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "analyze", "--net", tmp_path / "nope.json")
        assert code == EXIT_IO and "I/O failure" in err

    def test_missing_normals_is_io(self, capsys, tmp_path):
        p = tmp_path / "n.obj"
        p.write_text("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n")
        code, _, err = run(capsys, "validate", "--net", p)
        assert code == EXIT_IO and "per-vertex normals" in err

    def test_unwritable_output(self, capsys, tmp_path):
        code, _, _ = run(capsys, "lantern", "--out", tmp_path / "missing_dir" / "l.json")
        assert code == EXIT_IO


class TestNetCommands:
    def test_spin_const(self, capsys, good_net, tmp_path):
        code, out, _ = run(capsys, "spin", "--net", good_net, "--lambda-spec", "const:1,0.2,0,0", "--out",
                           tmp_path / "s.json")
        assert code == EXIT_OK and json.loads(out)["closed"]

    def test_spin_minimal_alpha(self, capsys, tmp_path):
        run(capsys, "minimal", "--size", "4x4", "--origin=-2-2j", "--out", tmp_path / "m.json")
        code, out, _ = run(capsys, "spin", "--net", tmp_path / "m.json", "--lambda-spec", "minimal-alpha:pi/3")
        assert code == EXIT_OK

    def test_spin_bad_spec(self, capsys, good_net):
        assert run(capsys, "spin", "--net", good_net, "--lambda-spec", "const:1,0")[0] == EXIT_INVALID
        assert run(capsys, "spin", "--net", good_net, "--lambda-spec", "random")[0] == EXIT_INVALID

    def test_spin_non_closing(self, capsys, tmp_path):
        # minimal-alpha fields only close on minimal nets
        net = random_edge_constraint_net(3, 3, 4)
        save_json(net, tmp_path / "r.json")
        code, out, _ = run(capsys, "spin", "--net", tmp_path / "r.json", "--lambda-spec", "minimal-alpha:1")
        assert code == EXIT_INVALID and json.loads(out)["closed"] is False

    def test_analyze(self, capsys, tmp_path):
        run(capsys, "cmc", "--size", "4x4", "--alpha", "0.3", "--out", tmp_path / "c.json")
        code, out, _ = run(capsys, "analyze", "--net", tmp_path / "c.json", "--cube", "--weingarten", "0.1,-0.2",
                           "--report", tmp_path / "c.csv")
        s = json.loads(out)
        assert code == EXIT_OK and s["cube"]["passed"] and (tmp_path / "c.csv").exists()
        assert s["H"]["stddev"] < 1e-9

    def test_laxcheck_default_and_gauge(self, capsys, tmp_path):
        code, out, _ = run(capsys, "laxcheck")
        assert code == EXIT_OK and json.loads(out)["edge_transport_residual"] < 1e-11
        spec = tmp_path / "g.json"
        theta = np.random.default_rng(0).uniform(-1, 1, (3, 3)).tolist()
        spec.write_text(json.dumps({"a": [[1, 0], [1, 0]], "u": [1.01, 1.0], "b": [[0.8, 0], [0.8, 0]], "v": [1, 1],
                                    "gauge": theta}))
        code, out, _ = run(capsys, "laxcheck", "--spec", spec)
        s = json.loads(out)
        assert code == EXIT_OK and s["gauged_edge_transport_residual"] > 1e-3

    def test_laxcheck_unknown_key(self, capsys, tmp_path):
        spec = tmp_path / "k.json"
        spec.write_text(json.dumps({"a": [[1, 0]], "u": [1], "b": [[1, 0]], "v": [1], "w": 3}))
        assert run(capsys, "laxcheck", "--spec", spec)[0] == EXIT_INVALID
