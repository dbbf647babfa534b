import json

import pytest

from totient_ratio.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


class TestDecide:
    def test_coprime(self, capsys):
        code, payload = run_json(capsys, "decide", "--a", "2", "--b", "3")
        assert code == 0
        assert payload["result"] == {"universal": True, "reason": "coprime_exponents"}

    def test_square(self, capsys):
        code, payload = run_json(capsys, "decide", "--a", "2", "--b", "2")
        assert code == 0
        assert payload["result"]["reason"] == "square_case"

    def test_negative_answer(self, capsys):
        code, payload = run_json(
            capsys, "decide", "--a", "2", "--b", "2", "--k", "2", "--l", "1"
        )
        assert code == 1
        assert payload["result"] == {
            "universal": False,
            "reason": "square_p_divides_one",
        }

    def test_usage_error(self, capsys):
        assert main(["decide", "--a", "2"]) == 2

    def test_bad_params(self, capsys):
        assert main(["decide", "--a", "1", "--b", "1"]) == 2


class TestRepresent:
    def test_golden_square(self, capsys):
        code, payload = run_json(
            capsys, "represent", "19/47", "--a", "2", "--b", "2", "--k", "1", "--l", "1"
        )
        assert code == 0
        res = payload["result"]
        assert res["m"] == "13110" and res["n"] == "18612"
        assert res["proper"] is True and res["verified"] is True

    def test_golden_coprime(self, capsys):
        code, payload = run_json(capsys, "represent", "5/11", "--a", "2", "--b", "3")
        assert code == 0
        assert payload["result"]["m"] == "275"
        assert payload["result"]["n"] == "55"

    def test_not_representable_with_certificate(self, capsys):
        code, payload = run_json(capsys, "represent", "2", "--a", "3", "--b", "6")
        assert code == 1
        assert payload["result"]["representable"] is False
        cert = payload["certificate"]
        assert cert["witness"] == "2" and cert["case"] == "mu_gt_2"
        assert len(cert["case_table"]) == 3

    def test_not_representable_trace_only(self, capsys):
        # 4 = 2^2 under (2, 2, 1, 2): p = P(l), so a trace is emitted but the
        # composite-free certificate still applies (pure power of P(kl))
        code, payload = run_json(
            capsys, "represent", "4", "--a", "2", "--b", "2", "--l", "2"
        )
        assert code == 1
        assert payload["result"]["trace"]

    def test_proper_uniqueness_rejected_for_coprime(self, capsys):
        code = main(
            ["represent", "2", "--a", "2", "--b", "3", "--proper-uniqueness"]
        )
        assert code == 2

    def test_parse_error(self, capsys):
        assert main(["represent", "zebra", "--a", "2", "--b", "2"]) == 2

    def test_stable_payload(self, capsys):
        _, first = run(capsys, "represent", "19/47", "--a", "2", "--b", "2", "--format", "json")
        _, second = run(capsys, "represent", "19/47", "--a", "2", "--b", "2", "--format", "json")
        assert first == second


class TestCheck:
    def test_improper_pair(self, capsys):
        code, payload = run_json(
            capsys, "check", "--m", "39330", "--n", "55836", "--a", "2", "--b", "2"
        )
        assert code == 0
        res = payload["result"]
        assert res["proper"] is False
        assert res["witness"] == {"q": 3, "s": 1}
        assert res["reduced"] == {"m": "13110", "n": "18612"}

    def test_trivial_pair(self, capsys):
        code, payload = run_json(
            capsys, "check", "--m", "1", "--n", "1", "--a", "2", "--b", "2"
        )
        assert code == 0
        assert payload["result"] == {"ratio": "1", "proper": True}

    def test_example_one_pair(self, capsys):
        code, payload = run_json(
            capsys, "check", "--m", "55", "--n", "22", "--a", "2", "--b", "3"
        )
        assert code == 0
        assert payload["result"]["ratio"] == "5 * 11^-1"
        assert payload["result"]["proper"] is True


class TestWitness:
    def test_mu_three(self, capsys):
        code, payload = run_json(capsys, "witness", "--a", "3", "--b", "6")
        assert code == 0
        assert payload["result"]["witness"] == "2"
        assert payload["result"]["case"] == "mu_gt_2"
        assert payload["result"]["certificate_valid"] is True

    def test_square_both(self, capsys):
        code, payload = run_json(
            capsys, "witness", "--a", "2", "--b", "2", "--k", "3", "--l", "3"
        )
        assert code == 0
        assert payload["result"]["witness"] == "3"

    def test_universal_exit_one(self, capsys):
        code, payload = run_json(capsys, "witness", "--a", "2", "--b", "3")
        assert code == 1
        assert payload["result"]["message"] == "universal"


class TestOracle:
    def test_unique(self, capsys):
        code, payload = run_json(
            capsys, "oracle", "unique", "19/47", "--a", "2", "--b", "2",
            "--bound", "20000",
        )
        assert code == 0
        assert payload["result"]["proper_pairs"] == [[13110, 18612]]

    def test_find_empty_exits_one(self, capsys):
        code, payload = run_json(
            capsys, "oracle", "find", "2", "--a", "3", "--b", "6", "--bound", "40"
        )
        assert code == 1
        assert payload["result"]["pairs"] == []

    def test_injectivity(self, capsys):
        code, payload = run_json(
            capsys, "oracle", "injectivity", "--a", "2", "--b", "2", "--bound", "60"
        )
        assert code == 0
        assert payload["result"]["counterexamples"] == []

    def test_enumerate_text_stream(self, capsys):
        code, out = run(
            capsys, "oracle", "enumerate", "--a", "2", "--b", "2", "--bound", "2"
        )
        assert code == 0
        assert out.splitlines() == ["1\t1\t1", "1\t2\t2^-1", "2\t1\t2", "2\t2\t1"]

    def test_bound_guard(self, capsys):
        code = main(
            ["oracle", "enumerate", "--a", "2", "--b", "2", "--bound", "500"]
        )
        assert code == 2
