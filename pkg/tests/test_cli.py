import json

import pytest

from conftest import MACHINES, SYSTEMS
from orbitlp.cli import main
from orbitlp.orbit_model import parse_system


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def sys_path(name):
    return SYSTEMS / f"{name}.orb"


def test_solve(capsys):
    code, out, _ = run(capsys, "solve", sys_path("sum_others"))
    assert code == 0 and out.splitlines()[0] == "SOLVABLE"
    code, out, _ = run(capsys, "solve", sys_path("flow"))
    assert code == 1 and out.strip() == "UNSOLVABLE"


def test_solve_trace(capsys):
    code, out, _ = run(capsys, "solve", "--trace", sys_path("flow_doubled"))
    assert code == 0 and "iteration 1" in out


def test_max(capsys):
    assert run(capsys, "max", sys_path("sum_others"))[1].strip() == "sup = -2 (not attained)"
    code, out, _ = run(capsys, "max", sys_path("flow_doubled"))
    assert code == 0 and out.splitlines()[0] == "sup = -3 (attained)"
    assert run(capsys, "max", sys_path("unbounded"))[1].strip() == "+inf"
    code, out, _ = run(capsys, "max", sys_path("flow"))
    assert code == 1 and out.strip() == "-inf"


def test_minimize(capsys):
    assert run(capsys, "max", "--minimize", sys_path("sum_others_min"))[1].strip() == "inf = 2 (not attained)"
    assert run(capsys, "max", "--minimize", sys_path("unbounded"))[1].splitlines()[0] == "inf = 1 (attained)"


def test_json_schema(capsys):
    keys = {"verdict", "sup", "attained", "threshold", "witness", "trace"}
    for cmd, name in [("solve", "sum_others"), ("max", "flow_doubled"), ("max", "flow"), ("solve", "flow")]:
        _, out, _ = run(capsys, cmd, "--format", "json", sys_path(name))
        assert set(json.loads(out)) == keys
    _, out, _ = run(capsys, "max", "--format", "json", sys_path("flow_doubled"))
    data = json.loads(out)
    assert (data["verdict"], data["sup"], data["attained"], data["threshold"]) == ("SOLVABLE", "-3", True, 4)


def test_deterministic(capsys):
    first = run(capsys, "max", "--trace", sys_path("flow_doubled"))
    assert run(capsys, "max", "--trace", sys_path("flow_doubled")) == first


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", sys_path("sum_others"))
    lines = out.splitlines()
    assert code == 0 and "(n-1)·x1 >= n" in lines and "n·x1 >= n" in lines
    _, out, _ = run(capsys, "reduce", "--stage", "1", sys_path("flow_doubled"))
    assert "-x1 - (n-1)·x2 >= 0" in out.splitlines()


def test_instantiate(capsys):
    code, out, _ = run(capsys, "instantiate", "--atoms", "2", sys_path("sum_others"))
    assert code == 0 and sum(1 for l in out.splitlines() if l.startswith("row")) == 3
    code, out, _ = run(capsys, "instantiate", "--atoms", "2", "--solve", sys_path("sum_others"))
    assert "max = -4" in out.splitlines()
    assert run(capsys, "instantiate", sys_path("sum_others"))[0] == 2


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck", "--range", "4..7", sys_path("flow_doubled"))
    assert code == 0
    assert out.splitlines() == [f"n = {n}: match, sup = -3" for n in range(4, 8)]
    code, out, _ = run(capsys, "crosscheck", "--range", "1..2", sys_path("sum_others"))
    assert "(below 2d, informational)" in out.splitlines()[0]
    assert run(capsys, "crosscheck", "--range", "5..2", sys_path("sum_others"))[0] == 2


def test_transform(capsys, tmp_path):
    code, out, _ = run(capsys, "transform", "--to", "nonneg-eq", sys_path("sum_others"))
    assert code == 0
    conv = parse_system(out)
    assert [c.dim for c in conv.cols] == [1, 1, 1]
    f = tmp_path / "conv.orb"
    f.write_text(out)
    assert run(capsys, "transform", "--to", "ineq", f)[0] == 0
    assert run(capsys, "transform", "--to", "ineq", sys_path("sum_others"))[0] == 2
    code, out, _ = run(capsys, "transform", "--to", "embed-fin", sys_path("sum_others"))
    f.write_text(out)
    assert run(capsys, "max", f)[1].strip() == "sup = -2 (not attained)"


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.orb"
    bad.write_text("rows: 1\ncols: 1\ncoef 1 1 7 1\n")
    code, _, err = run(capsys, "solve", bad)
    assert code == 2 and "line 3" in err
    assert run(capsys, "solve", tmp_path / "missing.orb")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_cm_subcommands(capsys, tmp_path):
    machine = MACHINES / "04_zero_then_inc.cm"
    code, out, _ = run(capsys, "cm", "witness", machine, "--c0", "0", "--steps", "1,2")
    assert code == 0 and out.startswith("# atoms: 4; target: 1")
    wit = tmp_path / "w.txt"
    wit.write_text(out)
    assert run(capsys, "cm", "check", machine, wit, "--c0", "0", "--cf", "1", "--atoms", "4")[0] == 0
    code, out, _ = run(capsys, "cm", "check", machine, wit, "--c0", "0", "--cf", "0", "--atoms", "4")
    assert code == 1 and "(cf)" in out
    code, out, _ = run(capsys, "cm", "encode", machine, "--c0", "0", "--cf", "1", "--atoms", "3")
    assert code == 0 and out.startswith("# atoms: 3;")
    assert run(capsys, "cm", "check", machine, "--c0", "0", "--cf", "1", "--atoms", "4")[0] == 2
    assert run(capsys, "cm", "witness", machine, "--c0", "1", "--steps", "1")[0] == 2
