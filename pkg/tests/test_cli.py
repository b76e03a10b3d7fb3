import json

import pytest

from pizzacut.cli import main
from pizzacut.generate import clustered_family, random_family
from pizzacut.instance import dumps_family, make_family
from pizzacut.reductions import NecklaceInstance, dumps_necklace


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_count_four_singletons(files, capsys, four_singletons):
    inst = files("four.json", dumps_family(four_singletons))
    assert main(["count", inst]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert main(["count", inst, "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"count": 3}


@pytest.mark.parametrize("method", ["brute", "homotopy"])
def test_solve_then_verify(files, tmp_path, capsys, method):
    inst = files("inst.json", dumps_family(random_family([3, 1, 5, 3], seed=1)))
    out = str(tmp_path / "sol.json")
    assert main(["solve", inst, "--method", method, "-o", out]) == 0
    assert main(["verify", inst, out]) == 0
    assert "bisecting" in capsys.readouterr().out


def test_solve_even_sets_with_trace(files, tmp_path):
    inst = files("inst.json", dumps_family(random_family([2, 3, 4, 1], seed=2)))
    out, trace = str(tmp_path / "sol.json"), str(tmp_path / "trace.jsonl")
    assert main(["solve", inst, "--seed", "5", "--trace", trace, "-o", out]) == 0
    assert main(["verify", inst, out]) == 0
    for line in open(trace):
        assert "outcome" in json.loads(line)


def test_alpha_method_and_cut(files, tmp_path):
    fam = clustered_family([3, 5, 1, 3], seed=3)
    inst = files("sep.json", dumps_family(fam))
    out = str(tmp_path / "a.json")
    assert main(["solve", inst, "--method", "alpha", "-o", out]) == 0
    assert main(["verify", inst, out]) == 0
    assert main(["alpha-cut", inst, "--k", "2,0,0,1", "-o", out]) == 0
    assert main(["verify", inst, out]) == 1


def test_verify_rejects_wrong(files, tmp_path):
    fam = random_family([3, 3], seed=4)
    inst = files("inst.json", dumps_family(fam))
    bad = files("bad.json", json.dumps({"version": 1, "lines": [{"a": [0, 0], "b": [0, 1], "positive": True}]}))
    assert main(["verify", inst, bad]) == 1


def test_validate(files, capsys):
    good = files("g.json", dumps_family(make_family([[(0, 0)], [(1, 1)]])))
    bad = files("b.json", dumps_family(make_family([[(0, 0)], [(1, 1)], [(2, 2)], [(3, 1)]])))
    assert main(["validate", good]) == 0
    assert main(["validate", bad]) == 1
    assert main(["validate", bad, "--json"]) == 1
    report = json.loads(capsys.readouterr().out.split("\n", 1)[1])
    assert not report["ok"] and report["issues"][0]["kind"] == "collinear"


def test_enumerate(files, tmp_path, four_singletons):
    inst = files("four.json", dumps_family(four_singletons))
    out = tmp_path / "all.json"
    assert main(["enumerate", inst, "-o", str(out)]) == 0
    assert json.loads(out.read_text())["count"] == 3


def test_audit_graph(files, capsys, four_singletons):
    inst = files("four.json", dumps_family(four_singletons))
    assert main(["audit-graph", inst, "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] and report["source_degree"] == 3


def test_necklace_commands(files, tmp_path):
    from fractions import Fraction as F
    neck = files("n.json", dumps_necklace(NecklaceInstance(((F(1, 5), F(1, 2), F(4, 5)), (F(1, 3),)))))
    pizza = str(tmp_path / "p.json")
    sol = str(tmp_path / "s.json")
    cuts = tmp_path / "c.json"
    assert main(["reduce-necklace", neck, "-o", pizza]) == 0
    assert main(["solve", pizza, "--method", "brute", "-o", sol]) == 0
    assert main(["lift-necklace", neck, sol, "-o", str(cuts)]) == 0
    assert len(json.loads(cuts.read_text())["cuts"]) <= 2


def test_render(files, tmp_path):
    fam = random_family([3, 1], seed=1)
    inst = files("i.json", dumps_family(fam))
    sol = str(tmp_path / "s.json")
    svg = tmp_path / "f.svg"
    assert main(["solve", inst, "-o", sol]) == 0
    assert main(["render", inst, sol, "--svg", str(svg)]) == 0
    first = svg.read_bytes()
    assert main(["render", inst, sol, "--svg", str(svg)]) == 0
    assert svg.read_bytes() == first


def test_exit_codes(files, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve", "x.json", "--method", "magic"])
    assert exc.value.code == 2
    assert main(["count", str(tmp_path / "missing.json")]) == 1
    even = files("e.json", dumps_family(make_family([[(0, 0), (1, 0)], [(0, 1)]])))
    assert main(["count", even]) == 1
