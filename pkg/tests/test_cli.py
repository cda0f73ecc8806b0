import json
import pathlib

import pytest
from hypothesis import given, settings, strategies as st

from catkit import is_univalent, rezk_completion
from catkit.cli import run_command
from catkit.cli.dsl import SourceFile, export_dsl, parse_dsl
from catkit.cli.export import export_dot, export_json, parse_json
from catkit.errors import DslError, MissingComposite
from catkit.fixtures import chaotic2, terminal, walking_arrow
from strategies import fixtures, pool

DEMO = str(pathlib.Path(__file__).resolve().parent.parent / "demos" / "fixtures.cat")

ARROW = """
precategory arrow {
  objects: a, b;
  hom a b: f;
}
"""

CHAIN = """
precategory chain {
  objects: a, b, c, d;
  hom a b: f;
  hom b c: g;
  hom c d: h;
  hom a c: gf;
  hom b d: hg;
  hom a d: hgf;
  compose g . f = gf;
  compose h . g = hg;
  compose h . gf = hgf;
}
"""

CHAOTIC_CORE = """
precategory c2 {
  objects: x, y;
  hom x y: u;
  hom y x: v;
  compose v . u = id(x);
  compose u . v = id(y);
  paths core;
}
"""


def source_of(items):
    return SourceFile(None, "", items=dict(items))


# ------------------------------------------------------------------------ DSL


def test_walking_arrow_source():
    sf = parse_dsl(ARROW)
    C = sf.get("arrow", "precategory")
    assert C == walking_arrow()
    assert sf.diagnostics["arrow"] == []
    assert C.obj_labels == ("a", "b")


def test_missing_composite_lists_pair():
    with pytest.raises(MissingComposite) as e:
        parse_dsl(CHAIN)
    assert e.value.pairs == [("hg", "f")]
    assert "hg . f" in str(e.value)


def test_chain_complete_parses():
    sf = parse_dsl(CHAIN.replace("}", "  compose hg . f = hgf;\n}"))
    assert sf.diagnostics["chain"] == []


def test_paths_core_is_rezk_completion():
    C = parse_dsl(CHAOTIC_CORE).items["c2"]
    assert is_univalent(C).is_univalent
    assert C == rezk_completion(chaotic2())[0]


@pytest.mark.parametrize("text,line,col", [
    ("precategory p {\n  objects a;\n}", 2, 11),
    ("precategory p {\n  objects: a;\n  hom a a f;\n}", 3, 11),
    ("precategory p {\n  objects: a;\n", 3, 1),
])
def test_syntax_errors_carry_positions(text, line, col):
    with pytest.raises(DslError) as e:
        parse_dsl(text)
    d = e.value.diagnostics[0]
    assert (d.line, d.column) == (line, col)


def test_dangling_names():
    with pytest.raises(DslError) as e:
        parse_dsl("precategory p {\n  objects: a;\n  hom a b: f;\n}")
    assert "b" in str(e.value)
    with pytest.raises(DslError):
        parse_dsl(ARROW + "functor F : arrow -> nowhere {\n}")


def test_duplicate_names():
    with pytest.raises(DslError):
        parse_dsl(ARROW + ARROW)


NONASSOC = """
precategory p {
  objects: "*";
  hom "*" "*": s, t;
  compose s . s = id("*");
  compose s . t = id("*");
  compose t . s = id("*");
  compose t . t = id("*");
}
"""


def test_law_diagnostics_name_the_law():
    # (s.s).t = t but s.(s.t) = s
    sf = parse_dsl(NONASSOC)
    laws = {d.law for d in sf.diagnostics["p"]}
    assert laws == {"assoc"}
    assert all(d.line == 2 for d in sf.diagnostics["p"])


def test_functor_diagnostics_name_the_law():
    src = pathlib.Path(DEMO).read_text() + """
functor F : idempotent -> z2_strict {
  obj "*" => "*";
  mor t => s;
}
"""
    sf = parse_dsl(src)
    assert {d.law for d in sf.diagnostics["F"]} == {"functor-composition"}


def test_unmapped_morphism_is_an_error():
    with pytest.raises(DslError):
        parse_dsl(ARROW + "functor F : arrow -> arrow {\n  obj a => b;\n  obj b => a;\n}\n")


def test_demo_file_parses_clean():
    sf = parse_dsl(pathlib.Path(DEMO).read_text())
    assert sf.all_diagnostics() == []
    fx = fixtures()
    for k in ["terminal", "walking_arrow", "chaotic2", "z2", "z2_strict", "idempotent", "divisibility"]:
        assert sf.items[k] == fx[k]
    assert sf.items["chaotic2_core"] == fx["chaotic2_hat"]


# ---------------------------------------------------------------- round trips


def test_json_round_trip_all_fixtures():
    sf = source_of(fixtures())
    back = parse_json(export_json(sf))
    assert list(back.items) == list(sf.items)
    for k, v in sf.items.items():
        assert back.items[k] == v
        assert back.items[k].obj_labels == v.obj_labels


def test_json_is_stable_and_versioned():
    sf = source_of(fixtures())
    text = export_json(sf)
    assert export_json(parse_json(text)) == text
    assert json.loads(text)["schema_version"] == 1


def test_json_round_trip_demo_file():
    sf = parse_dsl(pathlib.Path(DEMO).read_text())
    back = parse_json(export_json(sf))
    assert {k: v for k, v in back.items.items()} == sf.items


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(pool()))
def test_round_trips_on_generated(C):
    sf = source_of({"c": C})
    assert parse_json(export_json(sf)).items["c"] == C
    assert parse_dsl(export_dsl(sf)).items["c"] == C


def test_dsl_round_trip_fixtures():
    sf = source_of(fixtures())
    back = parse_dsl(export_dsl(sf))
    assert back.items == sf.items


# ------------------------------------------------------------------------ DOT


def edges(dot):
    return [ln for ln in dot.splitlines() if "->" in ln]


def nodes(dot):
    return [ln for ln in dot.splitlines() if "[label=" in ln and "->" not in ln]


def test_dot_terminal():
    dot = export_dot(terminal(), "terminal")
    assert dot.startswith('digraph "terminal" {')
    assert len(nodes(dot)) == 1 and edges(dot) == []


def test_dot_walking_arrow():
    dot = export_dot(walking_arrow(), "w")
    assert len(nodes(dot)) == 2
    (e,) = edges(dot)
    assert "dashed" not in e and "penwidth" not in e


def test_dot_styles_isos_and_paths():
    dot = export_dot(fixtures()["chaotic2_hat"], "c")
    assert sum("dashed" in e for e in edges(dot)) == 2
    assert sum("penwidth" in e for e in edges(dot)) == 2


# ------------------------------------------------------------------- commands


def test_univalent_exit_codes(tmp_path):
    code, out, _ = run_command(["univalent", DEMO, "--name", "chaotic2"])
    assert code == 1
    assert "(x, y)" in out and "(y, x)" in out
    target = str(tmp_path / "c.json")
    code, _, _ = run_command(["saturate", DEMO, "--name", "chaotic2", "--out", target])
    assert code == 0
    code, out, _ = run_command(["univalent", target, "--name", "chaotic2"])
    assert code == 0 and "univalent" in out


def test_usage_errors_exit_2(tmp_path):
    assert run_command(["univalent", str(tmp_path / "nope.cat"), "--name", "x"])[0] == 2
    assert run_command(["univalent", DEMO, "--name", "nope"])[0] == 2
    assert run_command(["frobnicate"])[0] == 2
    bad = tmp_path / "bad.cat"
    bad.write_text("precategory {")
    code, _, err = run_command(["check", str(bad)])
    assert code == 2 and "bad.cat:1:" in err


def test_check_reports_law_violations(tmp_path):
    bad = tmp_path / "bad.cat"
    bad.write_text(NONASSOC)
    code, out, _ = run_command(["check", str(bad)])
    assert code == 1
    assert "[assoc]" in out


def test_guard_error_exit_2(monkeypatch):
    monkeypatch.setenv("CATKIT_GUARD", "3")
    code, _, err = run_command(["functor-cat", DEMO, "--dom", "divisibility", "--cod", "divisibility"])
    assert code == 2 and "guard" in err
    monkeypatch.delenv("CATKIT_GUARD")
    assert run_command(["--guard", "3", "functor-cat", DEMO, "--dom", "divisibility", "--cod", "divisibility"])[0] == 2


@pytest.mark.parametrize("argv,code", [
    (["check", DEMO], 0),
    (["weq", DEMO, "--functor", "collapse"], 0),
    (["weq", DEMO, "--functor", "source"], 1),
    (["equiv", DEMO, "--functor", "collapse"], 0),
    (["functor-cat", DEMO, "--dom", "chaotic2", "--cod", "walking_arrow"], 0),
    (["yoneda", DEMO, "--name", "walking_arrow", "--max-carrier", "2"], 0),
    (["precompose", DEMO, "--functor", "collapse", "--target", "walking_arrow"], 0),
    (["precompose", DEMO, "--functor", "unit", "--target", "chaotic2"], 1),
    (["export-dot", DEMO, "--name", "z2"], 0),
    (["export-json", DEMO], 0),
    (["harness", "--max-objects", "1", "--max-hom", "1", "--max-paths", "1"], 0),
])
def test_command_exit_codes(argv, code):
    assert run_command(argv)[0] == code


def test_yoneda_counts_presheaves():
    _, out, _ = run_command(["yoneda", DEMO, "--name", "walking_arrow", "--max-carrier", "2"])
    assert "(1 declared, 2 representable, 11 enumerated)" in out


def test_precompose_counterexample_counts():
    code, out, _ = run_command(["precompose", DEMO, "--functor", "unit", "--target", "chaotic2"])
    assert code == 1
    assert "2" in out and "4" in out


def test_outputs_deterministic():
    argv = ["harness", "--max-objects", "1", "--max-hom", "2", "--json"]
    first, second = run_command(argv), run_command(argv)
    assert first == second
    doc = json.loads(first[1])
    assert len(doc["suites"]) == 9


def test_export_json_cli_round_trip(tmp_path):
    code, out, _ = run_command(["export-json", DEMO])
    assert code == 0
    p = tmp_path / "all.json"
    p.write_text(out)
    assert run_command(["check", str(p)])[0] == 0


@pytest.mark.parametrize("script", ["univalence_tour.py", "precomposition.py"])
def test_demo_scripts_run(script, capsys):
    import runpy
    runpy.run_path(str(pathlib.Path(DEMO).parent / script), run_name="__main__")
    assert capsys.readouterr().out
