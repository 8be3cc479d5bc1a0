"""CLI surface: subcommands, exit codes, JSON/human parity."""

import json

from defslice.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestReport:
    def test_human(self, capsys):
        code, out, _ = run(capsys, "report", "T(2,7)")
        assert code == 0
        assert "tau: 3" in out
        assert "V_0=2" in out and "V_1=1" in out and "V_2=1" in out and "V_3=0" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "report", "T(2,7)", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["schema"] == 1
        assert data["tau"] == {"lo": 3, "hi": 3}
        assert data["v"][:4] == [
            {"lo": 2, "hi": 2},
            {"lo": 1, "hi": 1},
            {"lo": 1, "hi": 1},
            {"lo": 0, "hi": 0},
        ]

    def test_unknot_inconclusive(self, capsys):
        code, out, _ = run(capsys, "report", "O", "--json")
        data = json.loads(out)
        assert code == 0
        assert all(v["status"] == "inconclusive" for v in data["verdicts"])

    def test_kn_report(self, capsys):
        code, out, _ = run(capsys, "report", "(3*Wh(T(2,3))) # cable(4,1,Wh(T(2,3)))*", "--json")
        data = json.loads(out)
        assert code == 0
        assert data["tau"] == {"lo": -1, "hi": -1}
        assert data["v"][0]["lo"] >= 1
        assert data["topologically_slice_certified"] is True
        any_v = [v for v in data["verdicts"] if v["target"] == "any_definite"][0]
        assert any_v["status"] == "obstructed"

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run(capsys, "report", "cable(2,4,T(2,3))")
        assert code == 2
        assert "parse error" in err

    def test_json_human_numeric_parity(self, capsys):
        _, json_out, _ = run(capsys, "report", "T(2,7)", "--json")
        _, human_out, _ = run(capsys, "report", "T(2,7)")
        data = json.loads(json_out)
        assert f"tau: {data['tau']['lo']}" in human_out
        for k, iv in enumerate(data["v"]):
            assert f"V_{k}={iv['lo']}" in human_out


class TestStrict:
    def test_gap_exit_3(self, capsys, tmp_path):
        reg = tmp_path / "atoms.json"
        reg.write_text(json.dumps({"atoms": [{"name": "Opaque", "genus": 2}]}))
        code, out, _ = run(capsys, "report", "Opaque", "--atoms", str(reg), "--strict")
        assert code == 3
        code, out, _ = run(capsys, "report", "Opaque", "--atoms", str(reg))
        assert code == 0
        assert "warning" in out


class TestSuites:
    def test_lens(self, capsys):
        code, out, _ = run(capsys, "suite", "lens", "--n", "1..10")
        assert code == 0
        assert "suite lens: PASS (10 rows)" in out

    def test_thm1_json(self, capsys):
        code, out, _ = run(capsys, "suite", "thm1", "--n", "1..3", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["passed"] and len(data["rows"]) == 3
        assert data["rows"][2]["tau"] == {"lo": -3, "hi": -3}

    def test_thm2(self, capsys):
        code, out, _ = run(capsys, "suite", "thm2", "--k", "1..2", "--l", "1..2")
        assert code == 0
        assert "suite thm2: PASS (4 rows)" in out

    def test_remark(self, capsys):
        code, out, _ = run(capsys, "suite", "remark", "--k", "1..4")
        assert code == 0
        assert "independent at level 3" in out

    def test_bcg(self, capsys):
        code, out, _ = run(capsys, "suite", "bcg", "--n", "1..5")
        assert code == 0

    def test_failure_exit_1(self, capsys, tmp_path):
        # replacing the Whitehead certificate changes the axioms out from
        # under the family, so the thm1 rows fail
        reg = tmp_path / "atoms.json"
        reg.write_text(
            json.dumps(
                {
                    "atoms": [
                        {
                            "name": "Wh(T(2,3))",
                            "tau": 5,
                            "genus": 5,
                            "tau_equals_genus": True,
                            "alexander": [[0, 1]],
                            "v0": 1,
                        }
                    ]
                }
            )
        )
        code, out, _ = run(capsys, "suite", "thm1", "--n", "1..2", "--atoms", str(reg))
        assert code == 1
        assert "FAIL" in out


class TestSurgery:
    def test_unknot_2_1(self, capsys):
        code, out, _ = run(capsys, "surgery", "O", "2", "1", "--json")
        data = json.loads(out)
        assert code == 0
        assert data["rows"] == [
            {"i": 0, "d": {"num": 1, "den": 4}},
            {"i": 1, "d": {"num": -1, "den": 4}},
        ]

    def test_trefoil_1_1(self, capsys):
        code, out, _ = run(capsys, "surgery", "T(2,3)", "1", "1")
        assert code == 0
        assert "i=0: -2" in out

    def test_q_greater_one(self, capsys):
        code, out, _ = run(capsys, "surgery", "T(2,3)", "2", "3")
        assert code == 0
        assert "i=0: -7/4" in out and "i=1: -9/4" in out


class TestSigma:
    def test_pieces(self, capsys):
        code, out, _ = run(capsys, "sigma", "T(2,3)")
        assert code == 0
        assert "(1/6, 1/2): -2" in out

    def test_at_query_pi_units(self, capsys):
        code, out, _ = run(capsys, "sigma", "T(2,3)", "--at", "1")
        assert code == 0
        assert "at theta = 1*pi: -2" in out

    def test_at_jump_point(self, capsys):
        code, out, _ = run(capsys, "sigma", "T(2,3)", "--at", "1/3")
        assert code == 0
        assert "jump point" in out


class TestCheckBcg:
    def test_range(self, capsys):
        code, out, _ = run(capsys, "check-bcg", "--n", "1..5")
        assert code == 0
        assert "skipped" in out
        assert "cobordism check: PASS (5 rows)" in out


class TestIndependence:
    def test_independent(self, capsys):
        code, out, _ = run(
            capsys,
            "independence",
            "T(2,11) # 6*T(2,3)*",
            "T(2,13) # 7*T(2,3)*",
            "--bound",
            "2",
        )
        assert code == 0
        assert "independent at level 2" in out

    def test_dependent_exit_1(self, capsys):
        code, out, _ = run(capsys, "independence", "T(2,3)", "T(2,3)", "--bound", "1")
        assert code == 1
        assert "(1, -1)" in out
