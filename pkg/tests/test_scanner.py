import pytest
from hypothesis import given
from hypothesis import strategies as st

import golden
from oracles import ARE_TABLE, ERE_TABLE, IRE_TABLE
from syntagma.constraintdsl import parse_constraint, serialize_constraint
from syntagma.lexmodel import MeaningId, MorphFeatures, validate_meaning
from syntagma.recordio import dump_forms, dump_lemmas, dump_meanings, load_database, parse_form_record, parse_valency_record
from syntagma.lexstore import build_store
from syntagma.scanner import (
    ScanError,
    UnknownCategoryError,
    UnsupportedParadigmError,
    conjugate_regular,
    expand_abbrev,
    formalize_clause_argument,
    formalize_restriction,
    map_category,
    parse_entry,
    scan_entry,
    scan_text,
    split_entries,
    translate_vl,
)

# --- rule units -------------------------------------------------------------


@pytest.mark.parametrize(
    "label, expected",
    [("v.tr.", (100, "v.tr.", 2)), ("v.intr.", (100, "v.intr.", 1)), ("s.f.", (200, "s.f.", 0)), ("agg.", (300, "agg.", 0))],
)
def test_map_category(label, expected):
    assert map_category(label) == expected


def test_map_category_unknown():
    with pytest.raises(UnknownCategoryError):
        map_category("x.y.")


def test_translate_vl():
    vl, brackets, args = translate_vl("[sogg-v-arg]")
    assert (vl, brackets) == ("subj-v-arg", "[]")
    assert [(a.slot, a.variant, a.fnct, a.vcat, a.opt) for a in args] == [
        (1, 1, "subj", "NP", False),
        (2, 1, "v", "VP", False),
        (3, 1, "arg", "NP", False),
    ]
    assert len(translate_vl("[sogg-v]").arguments) == 2
    assert len(translate_vl("[sogg-v-arg-arg]").arguments) == 4
    assert translate_vl("(sogg-v-ogg)").vl == "subj-v-obj"


def test_translate_vl_unknown_label_warns():
    warnings = []
    result = translate_vl("[sogg-v-xyz]", warnings)
    assert result.vl == "subj-v-xyz"
    assert result.arguments[2].fnct == "xyz"
    assert len(warnings) == 1 and "xyz" in warnings[0]


@pytest.mark.parametrize(
    "example, expected",
    [
        ("a. un automobilista", "abbagliare un automobilista"),
        ("la lampada mi abbaglia", "la lampada mi abbaglia"),
        ("a.b. test", "a.b. test"),
        ("non a. nessuno", "non abbagliare nessuno"),
        ("A. qlcu.", "Abbagliare qlcu."),
    ],
)
def test_expand_abbrev(example, expected):
    assert expand_abbrev(example, "abbagliare") == expected


def test_formalize_restriction():
    assert serialize_constraint(formalize_restriction("in partic., al pl.")) == golden.RESTR_ACQUA
    assert serialize_constraint(formalize_restriction("al sing.")) == (
        "{Context(TAG=NP) Target(TAG=N) Restriction(NUM=sing.)}"
    )
    assert serialize_constraint(formalize_restriction("solo al f.")) == (
        "{Context(TAG=NP) Target(TAG=N) Restriction(GEN=f.)}"
    )
    assert formalize_restriction("") is None
    assert formalize_restriction("spec. in senso lato") is None


@given(st.sampled_from(["al pl.", "al sing.", "solo al f.", "solo al m."]), st.text(max_size=10), st.text(max_size=10))
def test_formalized_restrictions_parse(core, before, after):
    expr = formalize_restriction(f"{before} {core} {after}")
    assert expr is not None
    assert parse_constraint(serialize_constraint(expr)) == expr


CLAUSE_NOTE = "(introd. da di o da che)"


def test_clause_argument_variants():
    got = formalize_clause_argument(CLAUSE_NOTE, 3, 1)
    assert got == [parse_valency_record(v) for v in golden.VALENCY_23293_01[3:]]


def test_clause_argument_subset_and_empty():
    [only] = formalize_clause_argument("(introd. da che)", 2, 1, fnct="arg")
    assert (only.slot, only.variant, only.fnct, only.rgg, only.vmdv) == (2, 2, "arg", ("che",), ("ind", "cnd", "cong"))
    assert formalize_clause_argument("", 3, 1) == []


def test_clause_argument_unparseable_warns():
    warnings = []
    assert formalize_clause_argument("(boh)", 3, 1, warnings=warnings) == []
    assert len(warnings) == 1


# --- conjugation ------------------------------------------------------------


def test_bramare_present():
    present = [f.surface for f in conjugate_regular("bramare", 5238) if f.features.tense == 1]
    assert present == ["bramo", "brami", "brama", "bramiamo", "bramate", "bramano"]


def test_bramare_imperfect_matches_printed_line():
    printed = parse_form_record(golden.FORMS_BRAMARE[-1])
    [first] = [f for f in conjugate_regular("bramare", 5238) if f.features == MorphFeatures(1, 2, 1, 0, 1)]
    assert first == printed


@pytest.mark.parametrize("verb, table", [("bramare", ARE_TABLE), ("temere", ERE_TABLE), ("partire", IRE_TABLE)])
def test_paradigm_against_grammar_table(verb, table):
    stem = verb[:-3]
    got = {(f.features.tense, f.features.person, f.features.number): f.surface for f in conjugate_regular(verb, 1)}
    assert got == {key: stem + ending for key, ending in table.items()}


def test_spelling_adjustments():
    cercare = {f.surface for f in conjugate_regular("cercare", 1)}
    assert {"cerchi", "cerchiamo", "cerco", "cercavo"} <= cercare
    pagare = {f.surface for f in conjugate_regular("pagare", 1)}
    assert {"paghi", "paghiamo"} <= pagare
    studiare = {f.surface for f in conjugate_regular("studiare", 1)}
    assert {"studi", "studiamo", "studio"} <= studiare


@pytest.mark.parametrize("word", ["badia", "are", "fare.", "porre"])
def test_unsupported_paradigm(word):
    with pytest.raises(UnsupportedParadigmError):
        conjugate_regular(word, 1)


@given(st.from_regex(r"[bdlmnprstv][aeiou][bdlmnprstv]{1,2}[aeiou]?[bdlmnprstv]", fullmatch=True))
def test_are_paradigm_has_twelve_distinct_cells(stem):
    forms = conjugate_regular(stem + "are", 1)
    assert len(forms) == 12
    cells = {(f.features.tense, f.features.person, f.features.number) for f in forms}
    assert len(cells) == 12
    assert all(f.features.mood == 1 and f.features.gender == 0 for f in forms)


# --- entries ----------------------------------------------------------------


def test_parse_entry_anatomy():
    entry = parse_entry(golden.ABBAGLIARE_ENTRY)
    assert entry.headword == "abbagliare"
    assert entry.pronunciation == "[ab-ba-glià-re]"
    assert entry.category == "v."
    assert entry.morphology == "abbàglio ecc."
    assert [s.label for s in entry.sections] == ["v.tr.", "v.intr."]
    assert [s.vl_pattern for s in entry.sections] == ["[sogg-v-arg]", "[sogg-v]"]
    assert entry.sections[1].notes == ["aus. avere"]
    assert [len(s.senses) for s in entry.sections] == [3, 1]


def test_markdown_bullets_are_accepted():
    text = "\n".join("- " + line for line in golden.ABBAGLIARE_ENTRY.splitlines())
    assert parse_entry(text) == parse_entry(golden.ABBAGLIARE_ENTRY)


def _scan():
    return scan_entry(golden.ABBAGLIARE_ENTRY, 40)


def test_abbagliare_structure():
    result = _scan()
    assert [str(m.mng) for m in result.meanings] == ["40.01", "40.02", "40.03", "40.04"]
    printed = {str(m.mng): m for m in (load_database(None, None, golden.MEANINGS_ABBAGLIARE_TEXT).meanings)}
    got = {str(m.mng): m for m in result.meanings}
    for key in printed:
        for name in ("lex", "pron", "disc", "cat", "cats", "gen", "num", "aux", "trn", "rfl", "ctrl", "reg", "sem", "vl", "vl_brackets"):
            assert getattr(got[key], name) == getattr(printed[key], name), (key, name)
        assert got[key].valency == printed[key].valency, key


def test_abbagliare_sense_two_splits_in_two():
    result = _scan()
    second, third = result.meanings[1], result.meanings[2]
    assert (second.mng, third.mng) == (MeaningId(40, 2), MeaningId(40, 3))
    assert third.reg == "fig." and third.cats == "v.tr."
    assert result.warnings == []


def test_first_example_is_expanded():
    assert _scan().meanings[0].exe[0] == "abbagliare un automobilista"


def test_lemma_and_forms():
    result = _scan()
    assert result.lemma.id == 40 and result.lemma.basic_form == "abbagliare"
    assert result.lemma.pronunciation == "[ab-ba-glià-re]"
    assert len(result.forms) == 12
    assert {"abbaglio", "abbagli", "abbagliamo", "abbagliavano"} <= {f.surface for f in result.forms}


# Source text reconstructed so that its glosses and examples are exactly the
# printed PRF/EXE values; it exercises multi-example splitting and shows the
# scanner reproduces the printed records when the source agrees with them.
RECONSTRUCTED_ENTRY = """abbagliare
[ab-ba-glià-re] v. (*abbàglio* ecc.)
• v.tr. [sogg-v-arg]
1 Colpire qlcu. con una luce intensa, offuscandogli momentaneamente la capacità visiva: *a. un automobilista*; *la lampada mi abbaglia*
2 fig. Affascinare qlcu. provocando ammirazione: *l'arte rinascimentale ha abbagliato i posteri*; ingannare, abbacinare qlcu.: *la sua eloquenza abbaglia molte persone*
• v.intr. (aus. *avere*) [sogg-v] Emettere una luce intensa, tanto da confondere la vista: *il sole di mezzogiorno abbaglia*
"""


def test_reconstructed_entry_reproduces_printed_records():
    got = {str(m.mng): m for m in scan_entry(RECONSTRUCTED_ENTRY, 40).meanings}
    for block, valency in golden.ABBAGLIARE:
        want = load_database(None, None, "\n".join([block] + valency)).meanings[0]
        mine = got[str(want.mng)]
        for name in ("cats", "trn", "aux", "reg", "sem", "vl", "prf", "exe"):
            assert getattr(mine, name) == getattr(want, name), (str(want.mng), name)
        assert mine.valency == want.valency


def test_single_sense_without_examples():
    result = scan_entry("badia\n[ba-dì-a] s.f.\n1 Monastero retto da un abate\n", 7)
    [m] = result.meanings
    assert m.exe == () and m.prf == "Monastero retto da un abate"
    assert (m.cat, m.cats, m.trn, m.gen) == (200, "s.f.", 0, 2)
    assert m.valency == ()
    assert result.lemma.gender == 2 and result.lemma.number == 1
    assert [f.surface for f in result.forms] == ["badia"]


def test_clause_note_in_section_header():
    text = (
        "dimenticare\n[di-men-ti-cà-re] v.\n"
        "• v.tr. [sogg-v-ogg] (anche con l'arg. espresso da frase (introd. da di o da che))\n"
        "1 Perdere la memoria di una cosa\n"
    )
    [m] = scan_entry(text, 23293).meanings
    want = [parse_valency_record(v) for v in golden.VALENCY_23293_01]
    assert m.valency == tuple(want)
    assert validate_meaning(m) == []


def test_restriction_note_becomes_restr():
    text = "acqua\n[àc-qua] s.f.\n1 Liquido trasparente\n2 in partic., al pl., sorgenti termali\n"
    meanings = scan_entry(text, 995).meanings
    assert meanings[0].restr == ""
    assert meanings[1].restr == golden.RESTR_ACQUA
    assert meanings[1].prf == "sorgenti termali"


def test_unformalized_note_goes_to_morf_with_warning():
    text = "cercare\n[cer-cà-re] v.\n• v.tr. [sogg-v-ogg] Tentare di trovare (spec. con insistenza)\n"
    result = scan_entry(text, 9)
    assert result.meanings[0].morf == "spec. con insistenza"
    assert len(result.warnings) == 1 and "spec. con insistenza" in result.warnings[0]


@pytest.mark.parametrize(
    "text",
    ["[ab-ba] v.\n1 gloss\n", "• v.tr. [sogg-v]\n1 gloss\n", "1 gloss\n", ""],
)
def test_missing_headword(text):
    with pytest.raises(ScanError):
        scan_entry(text, 1)


def test_unrecognized_section_header():
    with pytest.raises(ScanError, match="section header"):
        scan_entry("parola\n[pa-rò-la] s.f.\n• boh [sogg-v]\n1 gloss\n", 1)


def test_scan_text_sequential_ids_and_isolated_errors():
    text = golden.ABBAGLIARE_ENTRY + "\n\n1 entry without headword\n\nbadia\n[ba-dì-a] s.f.\n1 Monastero\n"
    assert len(split_entries(text)) == 3
    results = scan_text(text, 40)
    assert [type(r).__name__ for r in results] == ["ScanResult", "ScanError", "ScanResult"]
    assert [r.lemma.id for r in results if not isinstance(r, ScanError)] == [40, 41]


def test_scan_output_round_trips_through_recordio():
    result = _scan()
    db = load_database(dump_forms(result.forms), dump_lemmas([result.lemma]), dump_meanings(result.meanings))
    assert not db.errors
    assert db.meanings == result.meanings
    assert db.lemmas == [result.lemma]
    assert db.forms == result.forms
    assert build_store(db).check_integrity() == []


def test_sense_numbers_increase_and_examples_mention_headword():
    for entry in (golden.ABBAGLIARE_ENTRY, RECONSTRUCTED_ENTRY):
        result = scan_entry(entry, 40)
        numbers = [m.mng.sense_no for m in result.meanings]
        assert numbers == sorted(set(numbers))
        stem = result.lemma.basic_form[:-3]
        assert all(stem in example for m in result.meanings for example in m.exe)
        sections = {s.label for s in result.entry.sections}
        assert all(m.cats in sections for m in result.meanings)
