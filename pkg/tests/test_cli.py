import json

import pytest

from mrkit.cli import main
from mrkit.field import parse_matrix
from mrkit.graphs import complete_digraph, format_graph, parse_graph_file, star_graph
from mrkit.minrank import fits
from mrkit.reduction import parse_names


@pytest.fixture
def files(tmp_path, side_digraph, path3, graph_F):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return {
        "ex1": write("ex1.txt", format_graph(side_digraph)),
        "k4": write("k4.txt", format_graph(complete_digraph(4))),
        "empty5": write("empty5.txt", "digraph 5\n"),
        "empty4": write("empty4.txt", "graph 4\n"),
        "two": write("two.txt", "digraph 2\n1 2\n2 1\n"),
        "star6": write("star6.txt", format_graph(star_graph(6))),
        "F": write("F.txt", format_graph(graph_F)),
        "path3": write("path3.txt", format_graph(path3)),
        "tri": write("tri.txt", "graph 3\n1 2\n2 3\n1 3\n"),
        "edgeless2": write("e2.txt", "graph 2\n"),
        "bad": write("bad.txt", "digraph 3\n1 4\n"),
        "instance": write("inst.json", json.dumps({"n": 5, "q": 2, "side_info": [[2], [3], [1, 4], [5], [2, 4]]})),
        "identity": write("id.txt", "matrix 5 5 2\n" + "".join(
            " ".join("1" if i == j else "0" for j in range(5)) + "\n" for i in range(5))),
        "dir": str(tmp_path),
    }


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_minrank_five_receivers(capsys, files, side_digraph):
    code, out, _ = run(capsys, "minrank", files["ex1"])
    assert code == 0
    first, rest = out.split("\n", 1)
    assert first == "minrank 3"
    m = parse_matrix(rest)
    assert fits(m, side_digraph)


def test_minrank_complete_and_le(capsys, files):
    assert run(capsys, "minrank", files["k4"])[1].startswith("minrank 1\n")
    code, out, _ = run(capsys, "minrank", files["empty5"], "--le", 3)
    assert (code, out) == (1, "NO\n")
    code, out, _ = run(capsys, "minrank", files["ex1"], "--le", 3)
    assert code == 0 and out.startswith("YES\nmatrix 5 5 2\n")


def test_minrank_field_option(capsys, files):
    code, out, _ = run(capsys, "minrank", files["ex1"], "--field", 3)
    assert code == 0 and out.splitlines()[1] == "matrix 5 5 3"


def test_errors_exit_2(capsys, files):
    code, out, err = run(capsys, "minrank", files["bad"])
    assert code == 2 and out == "" and "line 2" in err
    code, _, err = run(capsys, "minrank", files["ex1"], "--max-n", 4)
    assert code == 2 and "refuses" in err
    code, _, err = run(capsys, "classify", files["dir"] + "/missing.txt")
    assert code == 2 and "cannot read" in err
    with pytest.raises(SystemExit) as info:
        main(["minrank", files["ex1"], "--field", "4"])
    assert info.value.code == 2


def test_classify_outputs(capsys, files):
    assert run(capsys, "classify", files["star6"])[1].splitlines()[0] == "MR_N_MINUS_1 center=1"
    assert run(capsys, "classify", files["F"])[1].splitlines()[0] == "EXACT(3)"
    assert run(capsys, "classify", files["k4"])[1].splitlines()[0] == "MR1"


def test_classify_reports_skipped_hypothesis(capsys, tmp_path):
    path = tmp_path / "disc.txt"
    path.write_text("graph 5\n1 2\n1 3\n4 5\n")
    out = run(capsys, "classify", path)[1]
    assert "note star test skipped: needs a connected graph" in out


def test_faircolor(capsys, files):
    code, out, _ = run(capsys, "faircolor", files["k4"], "--colors", 3)
    assert (code, out) == (1, "UNSAT\n")
    code, out, _ = run(capsys, "faircolor", files["empty5"], "--colors", 1)
    assert (code, out) == (0, "1:1 2:1 3:1 4:1 5:1\n")


def test_reduce_then_faircolor(capsys, files, tmp_path):
    target = tmp_path / "gadget3.txt"
    code, out, _ = run(capsys, "reduce", files["path3"], "--out", target)
    assert (code, out) == (0, "vertices 10\narcs 11\n")
    gadget = parse_graph_file(target.read_text())
    assert (gadget.n, len(gadget.arcs)) == (10, 11)
    assert len(parse_names((tmp_path / "gadget3.txt.names").read_text())) == 10
    code, out, _ = run(capsys, "faircolor", target)
    assert code == 0 and len(out.split()) == 10


@pytest.mark.parametrize("key, sizes", [("edgeless2", (4, 2)), ("tri", (12, 15))])
def test_reduce_sizes(capsys, files, key, sizes):
    summary = json.loads(run(capsys, "reduce", files[key], "--json")[1])
    assert (summary["vertices"], summary["arcs"]) == sizes


def test_reduce_needs_graph(capsys, files):
    assert run(capsys, "reduce", files["ex1"])[0] == 2


def test_simulate(capsys, files):
    code, out, _ = run(capsys, "simulate", files["instance"])
    assert code == 0
    assert out.splitlines()[:4] == ["length 3", "trials 1000", "successes 5000", "savings 2"]
    assert run(capsys, "simulate", files["instance"])[1] == out
    code, out, _ = run(capsys, "simulate", files["ex1"], "--matrix", files["identity"], "--trials", 10)
    assert code == 0 and "savings 0" in out.splitlines()


@pytest.mark.parametrize(
    "key, line",
    [("ex1", "3 ≤ beta ≤ 3"), ("empty4", "4 ≤ beta ≤ 4"), ("two", "1 ≤ beta ≤ 1")],
)
def test_bounds(capsys, files, key, line):
    assert run(capsys, "bounds", files[key]) == (0, line + "\n", "")


def test_gen_deterministic(capsys, files, tmp_path):
    a = run(capsys, "gen", "digraph", 5, "--p", 0.3, "--seed", 7)[1]
    b = run(capsys, "gen", "digraph", 5, "--p", 0.3, "--seed", 7)[1]
    assert a == b and a.startswith("digraph 5\n")
    full = parse_graph_file(run(capsys, "gen", "graph", 5, "--p", 1)[1])
    assert len(full.edges) == 10
    assert parse_graph_file(run(capsys, "gen", "digraph", 5, "--p", 0)[1]).arcs == frozenset()
    assert len(parse_graph_file(run(capsys, "gen", "graph", 6, "--edges", 7)[1]).edges) == 7
    assert run(capsys, "gen", "graph", 4, "--p", 2)[0] == 2


def test_json_mirrors_text(capsys, files):
    data = json.loads(run(capsys, "minrank", files["ex1"], "--json")[1])
    assert data["minrank"] == 3 and len(data["witness"]) == 5
    data = json.loads(run(capsys, "classify", files["star6"], "--json")[1])
    assert data["label"] == "MR_N_MINUS_1" and data["certificate"]["center"] == 1
    data = json.loads(run(capsys, "bounds", files["ex1"], "--json")[1])
    assert (data["lower"], data["upper"]) == (3, 3)
    data = json.loads(run(capsys, "simulate", files["instance"], "--json")[1])
    assert (data["length"], data["successes"], data["savings"]) == (3, 5000, 2)


def test_many_files_and_parallel(capsys, files):
    paths = [files["ex1"], files["k4"], files["star6"], files["F"]]
    serial = run(capsys, "minrank", *paths)
    parallel = run(capsys, "minrank", *paths, "--parallel", 2)
    assert serial == parallel and serial[0] == 0
    assert serial[1].count("file ") == 4


def test_many_files_error_code(capsys, files):
    code, out, err = run(capsys, "bounds", files["ex1"], files["bad"])
    assert code == 2 and "3 ≤ beta ≤ 3" in out and "line 2" in err


def test_out_option(capsys, files, tmp_path):
    target = tmp_path / "mr.txt"
    code, out, _ = run(capsys, "minrank", files["k4"], "--out", target)
    assert code == 0 and out == ""
    assert target.read_text().startswith("minrank 1\n")
