import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from choreswap import Instance, WeightedLeximin, WeightedPMalfare, run_general_yankee_swap
from choreswap.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, build_parser, main, verify_command
from choreswap.costs import ApprovalCapCost, ExplicitCost, validate_binary_supermodular
from choreswap.errors import DocumentError
from choreswap.io import (
    parse_instance,
    random_instance,
    result_from_dict,
    result_to_dict,
    serialize_instance,
)
from choreswap.yankee import USW, gain_weighted_leximin_current

from conftest import d1, small_instance

D1_DOC = {
    "version": "1",
    "chores": ["o1", "o2", "o3"],
    "agents": [
        {"weight": 1, "cost": {"family": "approval_cap", "approved": ["o1", "o2"], "cap": 1}},
        {"weight": 1, "cost": {"family": "approval_cap", "approved": ["o2", "o3"], "cap": 1}},
    ],
}


def write(tmp_path, doc, name="inst.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def test_minimal_document():
    inst = parse_instance(json.dumps({"version": "1", "chores": [], "agents": [{"weight": 1, "cost": {"family": "approval_cap", "approved": [], "cap": 0}}]}))
    assert inst.n == 1 and inst.m == 0


def test_d1_round_trip():
    inst = parse_instance(json.dumps(D1_DOC))
    assert inst == d1()
    text = serialize_instance(inst)
    assert json.loads(text) == D1_DOC
    assert serialize_instance(parse_instance(text)) == text


def test_rational_weights_and_explicit_tables_round_trip():
    base = d1(("1/2", 3))
    inst = Instance(base.weights, (base.oracles[0], ExplicitCost.from_oracle(base.oracles[1])))
    text = serialize_instance(inst)
    doc = json.loads(text)
    assert doc["agents"][0]["weight"] == "1/2"
    assert doc["agents"][1]["cost"]["costs"]["o2,o3"] == 1
    assert parse_instance(text) == inst


@pytest.mark.parametrize(
    "patch, field",
    [
        (lambda d: d["chores"].append("o1"), "chores"),
        (lambda d: d["agents"][0].update(weight=0), "agents[0].weight"),
        (lambda d: d["agents"][0].update(weight="-1/2"), "agents[0].weight"),
        (lambda d: d["agents"][1]["cost"].update(family="nash"), "agents[1].cost.family"),
        (lambda d: d["agents"][1]["cost"].update(approved=["o9"]), "agents[1].cost.approved"),
        (lambda d: d["agents"][0]["cost"].update(cap=-1), "agents[0].cost.cap"),
        (lambda d: d.update(version="2"), "version"),
    ],
)
def test_invalid_documents_name_the_field(patch, field):
    doc = json.loads(json.dumps(D1_DOC))
    patch(doc)
    with pytest.raises(DocumentError) as err:
        parse_instance(json.dumps(doc))
    assert err.value.field == field


def test_explicit_table_axiom_b_violation_named():
    doc = {
        "version": "1",
        "chores": ["a", "b"],
        "agents": [{"weight": 1, "cost": {"family": "explicit", "costs": {"": 0, "a": 1, "b": 0, "a,b": 0}}}],
    }
    with pytest.raises(DocumentError) as err:
        parse_instance(json.dumps(doc))
    assert "axiom (b)" in str(err.value) and "S={a}, o=b" in str(err.value)


def test_explicit_table_incomplete():
    doc = {
        "version": "1",
        "chores": ["a", "b"],
        "agents": [{"weight": 1, "cost": {"family": "explicit", "costs": {"": 0, "a": 0, "b": 0}}}],
    }
    with pytest.raises(DocumentError, match="3 entries"):
        parse_instance(json.dumps(doc))


@given(st.integers(0, 10**6))
def test_instance_round_trip(seed):
    inst = small_instance(seed)
    assert parse_instance(serialize_instance(inst)) == inst


@given(st.integers(0, 10**6), st.sampled_from([WeightedLeximin(), WeightedPMalfare(2), USW()]))
def test_result_round_trip(seed, criterion):
    inst = small_instance(seed)
    r = run_general_yankee_swap(inst, criterion.gain())
    doc = json.loads(json.dumps(result_to_dict(inst, criterion, r, trace=True)))
    again = result_from_dict(inst, doc)
    assert again.allocation == r.allocation and again.decomposition == r.decomposition
    assert again.trace == r.trace
    assert len(doc["trace"]) == inst.m - r.clean_size


def test_result_reload_rejects_broken_decomposition(D1):
    r = run_general_yankee_swap(D1, WeightedLeximin().gain())
    doc = result_to_dict(D1, WeightedLeximin(), r)
    # claim o3 is clean for agent 1: {o2, o3} costs 1, not 0
    doc["allocation"][1]["clean"] = ["o2", "o3"]
    doc["allocation"][1]["supplementary"] = []
    with pytest.raises(DocumentError):
        result_from_dict(D1, doc)


# -- CLI ----------------------------------------------------------------------


def test_solve_d1_leximin(tmp_path, capsys):
    path = write(tmp_path, D1_DOC)
    assert main(["solve", "--instance", path, "--criterion", "leximin", "--trace"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert [row["chores"] for row in doc["allocation"]] == [["o1"], ["o2", "o3"]]
    assert doc["utilities"] == [0, -1]
    assert doc["value"] == [-1, 0]
    assert doc["trace"] == [{"iteration": 0, "agent": 1, "chore": "o3", "gain": ["-1", "1"]}]


def test_solve_to_file_and_malfare(tmp_path):
    path, out = write(tmp_path, D1_DOC), tmp_path / "out.json"
    assert main(["solve", "--instance", path, "--criterion", "malfare", "--p", "2", "--output", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["criterion"] == {"name": "malfare", "p": 2} and doc["value"] == 1
    assert "trace" not in doc


def test_solve_malfare_requires_p(tmp_path, capsys):
    assert main(["solve", "--instance", write(tmp_path, D1_DOC), "--criterion", "malfare"]) == EXIT_INPUT
    assert "p required" in capsys.readouterr().err


def test_solve_empty_instance(tmp_path, capsys):
    doc = {"version": "1", "chores": [], "agents": [{"weight": 1, "cost": {"family": "partition_cap", "categories": []}}]}
    assert main(["solve", "--instance", write(tmp_path, doc), "--criterion", "usw"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["allocation"] == [{"agent": 0, "chores": [], "clean": [], "supplementary": []}]
    assert out["value"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--instance", "/nonexistent.json"],
        ["solve", "--instance", "{path}", "--criterion", "nash"],
        ["solve", "--instance", "{path}", "--criterion", "malfare", "--p", "0.5"],
        ["solve", "--instance", "{bad}"],
        ["gen", "--n", "0", "--m", "3"],
        ["gen", "--n", "2", "--m", "30", "--families", "explicit"],
        ["gen", "--n", "2", "--m", "3", "--families", "bogus"],
    ],
)
def test_input_errors_exit_2(tmp_path, argv):
    path = write(tmp_path, D1_DOC)
    bad = write(tmp_path, "{not json", "bad.json")
    argv = [a.format(path=path, bad=bad) for a in argv]
    assert main(argv) == EXIT_INPUT


@pytest.mark.parametrize("args, value", [(["--criterion", "leximin"], "(-1, 0)"), (["--criterion", "malfare", "--p", "2"], "1")])
def test_verify_pass(tmp_path, capsys, args, value):
    assert main(["verify", "--instance", write(tmp_path, D1_DOC), *args]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[-1] == "PASS"
    assert f"solver:      {value}" in out and f"brute force: {value}" in out


def test_verify_budget_refusal(tmp_path, capsys):
    assert main(["verify", "--instance", write(tmp_path, D1_DOC), "--budget", "4"]) == EXIT_INPUT
    assert "--budget 8" in capsys.readouterr().err


def test_verify_fails_for_patched_solver(tmp_path, capsys):
    """A solver that ranks agents by current rather than post-chore weighted utility."""
    doc = {
        "version": "1",
        "chores": ["a", "b"],
        "agents": [
            {"weight": 1, "cost": {"family": "approval_cap", "approved": [], "cap": 0}},
            {"weight": 3, "cost": {"family": "approval_cap", "approved": [], "cap": 0}},
        ],
    }
    args = build_parser().parse_args(["verify", "--instance", write(tmp_path, doc), "--criterion", "leximin"])

    def patched(instance, gain):
        return run_general_yankee_swap(instance, gain_weighted_leximin_current)

    assert verify_command(args, solver=patched) == EXIT_FAIL
    assert capsys.readouterr().out.splitlines()[-1] == "FAIL"
    assert verify_command(args) == EXIT_OK


def test_verify_non_integer_p(tmp_path, capsys):
    assert main(["verify", "--instance", write(tmp_path, D1_DOC), "--criterion", "malfare", "--p", "1.5"]) == EXIT_OK


def test_gen_is_deterministic(tmp_path, capsys):
    argv = ["gen", "--n", "2", "--m", "3", "--seed", "7"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    assert main(["gen", "--n", "2", "--m", "3", "--seed", "8"]) == EXIT_OK
    assert capsys.readouterr().out != first


def test_gen_output_validates(capsys):
    assert main(["gen", "--n", "3", "--m", "6", "--weight-skew", "2",
                 "--families", "approval_cap,partition_cap,explicit"]) == EXIT_OK
    inst = parse_instance(capsys.readouterr().out)
    assert inst.n == 3 and inst.m == 6
    assert all(w in {1, 2, 3, Fraction(1, 2), Fraction(1, 3)} for w in inst.weights)


@given(st.integers(0, 2**64 - 1))
def test_generated_explicit_tables_validate(seed):
    inst = random_instance(random.Random(seed), 2, 5, ("explicit",))
    assert all(validate_binary_supermodular(o) is None for o in inst.oracles)
