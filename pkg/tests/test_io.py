import json
from fractions import Fraction

import pytest

from parcoh.catalog import UnknownCatalogName
from parcoh.convolution import idempotent
from parcoh.io import (
    CommandReport,
    SchemaError,
    descriptor,
    dump_cochain,
    emit_report,
    load_cochain,
    parse_instance,
    parse_scalar,
    report_from_dict,
)
from parcoh.linalg import GF, QQ
from parcoh.report import ValidationReport

KZ2_INLINE = {
    "labels": ["d_e", "d_a"],
    "mult": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
    "unit": [1, 0],
    "comult": [[[0, 0, 1]], [[1, 1, 1]]],
    "counit": [1, 1],
    "antipode": [[1, 0], [0, 1]],
}


def test_catalog_descriptor():
    d = parse_instance('{"field":"F3","hopf":"kG:Z2","action":{"subgroup":["e"]}}')
    assert d.field.p == 3 and d.hopf.dim == 2
    assert [v[0][0].value for v in d.action.act] == [1, 0]


def test_misspelled_catalog_name():
    with pytest.raises(UnknownCatalogName):
        parse_instance('{"field":"F3","hopf":"kG:Z2x2","action":"global"}')


def test_inline_hopf_missing_counit_is_located():
    hopf = {k: v for k, v in KZ2_INLINE.items() if k != "counit"}
    with pytest.raises(SchemaError) as exc:
        parse_instance({"field": "Q", "hopf": hopf, "action": {"values": [1, 0]}})
    assert exc.value.path == "/hopf/counit"


def test_inline_hopf_parses():
    raw = {"field": "Q", "hopf": KZ2_INLINE, "action": {"values": [1, 0]}}
    d = parse_instance(raw)
    assert d.hopf.dim == 2 and d.hopf.kind == "custom"
    assert [v[0][0] for v in d.action.act] == [1, 0]


def test_inline_comult_index_out_of_range():
    hopf = dict(KZ2_INLINE, comult=[[[0, 0, 1]], [[1, 2, 1]]])
    with pytest.raises(SchemaError) as exc:
        parse_instance({"field": "Q", "hopf": hopf, "action": {"values": [1, 0]}})
    assert exc.value.path == "/hopf/comult/1/0"


def test_bad_json_and_missing_file():
    with pytest.raises(SchemaError) as exc:
        parse_instance("{not json")
    assert exc.value.path == "/"
    with pytest.raises(SchemaError):
        parse_instance("/nonexistent/descriptor.json")


def test_rational_literals_are_strings():
    assert parse_scalar(QQ, "3/4", "/x") == Fraction(3, 4)
    assert parse_scalar(QQ, -2, "/x") == -2
    assert parse_scalar(GF(5), "1/2", "/x") == GF(5)(3)
    with pytest.raises(SchemaError):
        parse_scalar(QQ, 0.5, "/x")


def test_one_line_descriptors_cover_the_catalog():
    raws = [descriptor("F5", "kG:Z2xZ2", ["e", "a"]), descriptor("Q", "dual:Z2xZ2", ["e", "a"], "klein4(1/4, 1/4)"),
            descriptor("Q", "kG:Z4")]
    for raw in raws:
        assert len(json.dumps(raw).splitlines()) == 1
        parse_instance(raw)
    assert parse_instance(raws[1]).twist is not None


def test_field_override():
    d = parse_instance(descriptor("Q", "kG:Z2"), field_override="F7")
    assert d.field.p == 7


def test_cochain_round_trip():
    d = parse_instance(descriptor("Q", "dual:Z2xZ2", ["e", "a"]))
    e2 = idempotent(d.action, 2)
    dumped = dump_cochain(e2)
    assert dumped["values"]["p_0-0,p_0-0"] == ["1/4"]
    assert load_cochain(d.action, dumped) == e2
    assert load_cochain(d.action, json.dumps(dumped)) == e2


def test_cochain_with_unknown_label():
    d = parse_instance(descriptor("Q", "kG:Z2"))
    with pytest.raises(SchemaError):
        load_cochain(d.action, {"degree": 1, "values": {"d_9": 1}})


def _sample_report():
    sec = ValidationReport("demo")
    sec.add("good", True)
    sec.add("bad", False, {"basis": ["d_0", "d_1"], "lhs": (Fraction(1, 2),), "rhs": (GF(5)(2),)})
    rep = CommandReport("validate", {"field": "Q"}, [sec], {"dim": 2})
    return rep


def test_text_report_lists_each_check_and_witness():
    text = emit_report(_sample_report())
    assert "  PASS  good" in text and "  FAIL  bad" in text
    assert '"basis":["d_0","d_1"]' in text
    assert '"1/2"' in text and '"2 mod 5"' in text
    assert text.rstrip().endswith("result: FAIL (1 of 2 checks failed)")


def test_json_report_round_trips():
    rep = _sample_report()
    out = emit_report(rep, "json")
    again = report_from_dict(json.loads(out))
    assert emit_report(again, "json") == out
    assert emit_report(again) == emit_report(report_from_dict(json.loads(out)))
    assert json.loads(out)["exit_code"] == 1


def test_reports_are_byte_stable():
    assert emit_report(_sample_report()) == emit_report(_sample_report())
