import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gradedpf.cli import (
    InputDocument,
    ParseError,
    SemanticError,
    analyze,
    check_form_report,
    emit,
    main,
    parse,
    to_json,
    to_text,
)

from helpers import CORPUS, corpus_text


@pytest.mark.parametrize("name", CORPUS)
def test_round_trip_corpus(name):
    doc = parse(corpus_text(name))
    assert parse(emit(doc)) == doc
    assert emit(parse(emit(doc))) == emit(doc)


@st.composite
def documents(draw):
    d = draw(st.integers(min_value=0, max_value=2))
    nv = draw(st.integers(min_value=1, max_value=3))
    verts = [f"v{i}" for i in range(nv)]
    arrows = []
    for k in range(draw(st.integers(min_value=0, max_value=4))):
        s, t = draw(st.sampled_from(verts)), draw(st.sampled_from(verts))
        deg = tuple(draw(st.integers(min_value=-2, max_value=2)) for _ in range(d))
        arrows.append((f"x{k}", s, t, deg))
    lines = ["field " + draw(st.sampled_from(["Q", "GF 2", "GF 5"])), f"grading {d}"]
    lines += [f"vertex {v}" for v in verts]
    for n, s, t, deg in arrows:
        lines.append(f"arrow {n} : {s} -> {t}" + (" deg (" + ", ".join(map(str, deg)) + ")" if d else ""))
    # monomial relations on composable pairs
    pairs = [(a, b) for a in arrows for b in arrows if a[2] == b[1]]
    for a, b in draw(st.lists(st.sampled_from(pairs), max_size=3, unique=True)) if pairs else []:
        c = draw(st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(lambda x: x != 0))
        lines.append(f"relation {c.numerator}/{c.denominator}*{a[0]}.{b[0]}")
    if draw(st.booleans()):
        lines.append(f"option length_cap {draw(st.integers(min_value=2, max_value=99))}")
    sep = draw(st.sampled_from(["\n", "\r\n"]))
    return sep.join(lines) + sep


@given(documents())
@settings(max_examples=80)
def test_round_trip_generated(text):
    doc = parse(text)
    assert parse(emit(doc)) == doc


def test_comments_crlf_and_multiline_group():
    text = (
        "# header\r\nfield Q  # trailing\r\ngrading 1\r\nvertex 1\r\nvertex 2\r\n"
        "arrow a : 1 -> 2 deg (1)\r\narrow b : 2 -> 1 deg (1)\r\nrelation a.b\r\nrelation b.a\r\n"
        "group generator s\r\n{\r\n  vertex 1 -> 2, 2 -> 1\r\n  arrow a -> -b; b -> -1*a\r\n}\r\n"
    )
    doc = parse(text)
    assert doc.generators == (("s", (("1", "2"), ("2", "1")), (("a", Fraction(-1), "b"), ("b", Fraction(-1), "a"))),)
    assert analyze(doc)["group"]["transfer"]["pf_agree"] is True


def test_relation_coefficients_and_cancellation():
    doc = parse(
        "field Q\ngrading 1\nvertex 1\narrow y : 1 -> 1 deg (1)\narrow z : 1 -> 1 deg (1)\n"
        "relation 1/2*y.z + z.y - 3/2*z.y + y.z\nrelation y.y\nrelation z.z\n"
    )
    assert doc.relations[0] == ((Fraction(3, 2), ("y", "z")), (Fraction(-1, 2), ("z", "y")))
    assert analyze(doc)["algebra"]["dimension"] == 4


def test_field_override_and_undefined_coefficient():
    text = "field Q\ngrading 1\nvertex 1\narrow y : 1 -> 1 deg (1)\nrelation 1/2*y.y\n"
    assert analyze(parse(text))["algebra"]["dimension"] == 2
    with pytest.raises(SemanticError):
        analyze(parse(text), field_spec="GF2")
    assert analyze(parse(text), field_spec="GF3")["input"]["field"] == "GF(3)"


def test_semantic_errors_are_parse_errors_with_positions():
    with pytest.raises(SemanticError) as info:
        parse("vertex 1\narrow a : 1 -> 1\ngrading 1\n")
    assert (info.value.line, info.value.col) == (3, 1)
    with pytest.raises(ParseError) as info:
        parse("field GF 4\n")
    assert info.value.line == 1
    with pytest.raises(ParseError) as info:
        parse("vertex 1\nwhat 2\n")
    assert "vertex" in info.value.expected


def test_analyze_report_sections():
    rep = analyze(parse(corpus_text("kronecker")))
    assert rep["pf"]["is_pf"] is False
    assert "form" not in rep
    rep = analyze(parse(corpus_text("cyclic_3_2")))
    assert rep["nakayama_automorphism"] == {"a0": "a1", "a1": "a2", "a2": "a0"}
    assert rep["pf"]["nakayama_permutation"] == {"0": "1", "1": "2", "2": "0"}
    assert json.loads(to_json(rep)) == rep
    assert "is_pf: true" in to_text(rep)
    assert check_form_report(json.loads(to_json(rep))) == (True, "form verified")


def test_main_exit_codes(tmp_path, capsys):
    p = tmp_path / "x.alg"
    p.write_text(corpus_text("exterior"))
    assert main(["analyze", str(p), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["constant_degree"]["value"] == 2
    p.write_text("field Q\ngrading 1\nvertex 1\narrow a : 1 -> 1 deg (1)\nrelation a.a\noption order_cap 1\n")
    assert main(["analyze", str(p), "--length-cap", "1"]) == 1
    p.write_text(corpus_text("cyclic6_z3"))
    assert main(["analyze", str(p), "--order-cap", "2"]) == 2
    p.write_text("{not json")
    assert main(["check-form", str(p)]) == 1
    p.write_text(json.dumps({"document": "field Q\n"}))
    assert main(["check-form", str(p)]) == 1
