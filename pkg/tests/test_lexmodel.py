import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

import golden
from syntagma.lexmodel import (
    CodeTable,
    CodeTableError,
    MeaningId,
    MngFormatError,
    MorphFeatures,
    ValencyArgument,
    ValencyFrame,
    default_codes,
    frame_violations,
    parse_mng,
    render_mng,
    validate_features,
    validate_meaning,
    vl_functions,
)
from syntagma.recordio import parse_meaning_record, parse_valency_record


@pytest.mark.parametrize(
    "text, expected",
    [("23293.01", MeaningId(23293, 1)), ("40.04", MeaningId(40, 4)), ("995.67", MeaningId(995, 67))],
)
def test_parse_mng(text, expected):
    assert parse_mng(text) == expected


@pytest.mark.parametrize("text", ["7.00", "0.01", "40", "40.x", "", "40.01.2", "-3.01"])
def test_parse_mng_rejects(text):
    with pytest.raises(MngFormatError) as info:
        parse_mng(text)
    assert repr(text) in str(info.value)


@pytest.mark.parametrize(
    "mng, text", [(MeaningId(995, 67), "995.67"), (MeaningId(40, 1), "40.01"), (MeaningId(1, 1), "1.01")]
)
def test_render_mng(mng, text):
    assert render_mng(mng) == text
    assert str(mng) == text


def test_meaning_id_orders_by_lemma_then_sense():
    ids = [MeaningId(40, 4), MeaningId(23293, 1), MeaningId(40, 1)]
    assert sorted(ids) == [MeaningId(40, 1), MeaningId(40, 4), MeaningId(23293, 1)]


@given(st.integers(1, 10**7), st.integers(1, 999))
def test_mng_render_parse_identity(lemma_id, sense):
    mng = MeaningId(lemma_id, sense)
    assert parse_mng(render_mng(mng)) == mng


@given(st.integers(1, 10**7), st.integers(1, 99))
def test_mng_canonical_text_identity(lemma_id, sense):
    text = f"{lemma_id}.{sense:02d}"
    assert render_mng(parse_mng(text)) == text


def test_seed_code_table_has_the_attested_codes():
    codes = default_codes()
    assert codes.label("mood", 1) == "indicative"
    assert codes.label("tense", 1) == "present"
    assert codes.label("tense", 2) == "imperfect"
    assert codes.label("number", 1) == "sing."
    assert codes.label("number", 2) == "pl."
    assert codes.code("gender", "f.") == 2
    assert codes.code("category", "v.") == 100


def test_code_table_rejects_conflicting_registration():
    table = CodeTable([("mood", 1, "indicative")])
    table.register("mood", 1, "indicative")
    with pytest.raises(CodeTableError):
        table.register("mood", 1, "subjunctive")
    with pytest.raises(CodeTableError):
        table.register("mood", 2, "indicative")


def test_code_table_extends_from_file(tmp_path):
    path = tmp_path / "extra.txt"
    path.write_text("# extra moods\nmood;2;subjunctive\n\ntense;3;future\n", encoding="utf-8")
    table = CodeTable.load(path)
    assert table.label("mood", 2) == "subjunctive"
    assert table.label("mood", 1) == "indicative"
    assert not default_codes().has_code("mood", 2)


@pytest.mark.parametrize("text", ["mood;x;label", "mood;1", ";1;x"])
def test_code_table_bad_lines(text):
    with pytest.raises(CodeTableError):
        CodeTable().update_from_text(text)


def test_unknown_code_lookup_names_the_dimension():
    with pytest.raises(CodeTableError, match="unknown tense code 9"):
        default_codes().label("tense", 9)


def test_validate_features():
    assert validate_features(MorphFeatures(1, 2, 1, 0, 1)) == []
    problems = validate_features(MorphFeatures(1, 1, 4, 0, 1))
    assert any("person 4" in p for p in problems)
    assert validate_features(MorphFeatures(9, 1, 1, 0, 1)) == ["mood code 9 not registered"]


def test_vl_functions():
    assert vl_functions("(subj-v-arg)") == ["subj", "v", "arg"]
    assert vl_functions("[subj-v]") == ["subj", "v"]
    assert vl_functions("") == []


def _meaning_40_01():
    block, valency = golden.ABBAGLIARE[0]
    m = parse_meaning_record(block)
    return dataclasses.replace(m, valency=tuple(parse_valency_record(v) for v in valency))


def test_validate_meaning_clean_on_printed_record():
    assert validate_meaning(_meaning_40_01()) == []


def test_validate_meaning_flags_trn():
    m = dataclasses.replace(_meaning_40_01(), trn=5)
    assert [v.kind for v in validate_meaning(m)] == ["trn"]


def test_validate_meaning_flags_ctrl_and_restr():
    m = dataclasses.replace(_meaning_40_01(), ctrl="X", restr="{Target(TAG=N")
    assert sorted(v.kind for v in validate_meaning(m)) == ["ctrl", "restr"]


def test_validate_meaning_vl_slot_count():
    m = _meaning_40_01()
    two_slots = tuple(a for a in m.valency if a.slot < 3)
    kinds = [v.kind for v in validate_meaning(dataclasses.replace(m, valency=two_slots))]
    assert kinds == ["vl-slot-mismatch"]
    # the oracle: the number of dash-separated labels between the delimiters
    assert len(m.vl.strip("[]").split("-")) == 3


def _arg(slot, variant, fnct="obj"):
    return ValencyArgument(slot, variant, fnct=fnct, vcat="NP")


def test_frame_violations():
    mng = MeaningId(1, 1)
    assert frame_violations(mng, [_arg(1, 1, "subj"), _arg(2, 1), _arg(2, 2)]) == []
    kinds = lambda args: sorted(v.kind for v in frame_violations(mng, args))
    assert kinds([_arg(1, 1), _arg(1, 1)]) == ["duplicate-variant"]
    assert kinds([_arg(1, 1), _arg(3, 1)]) == ["slot-gap"]
    assert kinds([_arg(1, 1), _arg(1, 3)]) == ["variant-gap"]
    assert kinds([_arg(1, 1, "subj"), _arg(1, 2, "obj")]) == ["mixed-fnct"]


def test_valency_frame_groups_slots_in_order():
    args = [parse_valency_record(v) for v in golden.VALENCY_23293_01]
    frame = ValencyFrame.from_arguments(MeaningId(23293, 1), reversed(args))
    assert [variants[0].slot for variants in frame.slots] == [1, 2, 3]
    assert len(frame) == 3
    assert len(frame.slot(3)) == 4
    with pytest.raises(KeyError):
        frame.slot(4)


@given(
    st.lists(
        st.tuples(st.integers(1, 4), st.integers(1, 4)), min_size=1, max_size=12, unique=True
    )
)
def test_frame_invariant_detected_exactly(keys):
    args = [_arg(s, v) for s, v in keys]
    slots = sorted({s for s, _ in keys})
    contiguous = slots == list(range(1, len(slots) + 1)) and all(
        sorted(v for s2, v in keys if s2 == s) == list(range(1, 1 + sum(1 for s2, _ in keys if s2 == s)))
        for s in slots
    )
    assert (frame_violations(MeaningId(1, 1), args) == []) == contiguous
