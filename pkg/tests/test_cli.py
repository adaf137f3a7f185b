import json
import subprocess
import sys

import pytest

import golden
from syntagma.cli import main


@pytest.fixture
def corpus(tmp_path):
    src = tmp_path / "src"
    src.mkdir()
    (src / "forms.sld").write_text(golden.FORMS_TEXT, encoding="utf-8")
    (src / "lemmas.sld").write_text(golden.LEMMAS_TEXT, encoding="utf-8")
    (src / "meanings.sld").write_text(golden.CORPUS_MEANINGS_TEXT, encoding="utf-8")
    return src


@pytest.fixture
def sld(tmp_path, capsys):
    data = str(tmp_path / "data")

    def run(*args):
        code = main(["--data-dir", data, *map(str, args)])
        out, err = capsys.readouterr()
        return code, out, err

    return run


@pytest.fixture
def imported(sld, corpus):
    code, out, err = sld("import", corpus)
    assert code == 0, err
    return sld


def test_import_report(sld, tmp_path):
    (tmp_path / "m.sld").write_text(golden.MEANINGS_ABBAGLIARE_TEXT, encoding="utf-8")
    (tmp_path / "empty.sld").write_text("", encoding="utf-8")
    empty = tmp_path / "empty.sld"
    code, out, _ = sld("import", empty, empty, tmp_path / "m.sld")
    assert code == 0
    assert "3 meanings, 8 valency records" in out


def test_import_reports_bad_line(sld, tmp_path):
    forms = tmp_path / "f.sld"
    forms.write_text(golden.FORMS_BRAMARE[0] + "\n5238; 1; 1;\n", encoding="utf-8")
    empty = tmp_path / "e.sld"
    empty.write_text("", encoding="utf-8")
    code, out, err = sld("import", forms, empty, empty)
    assert code == 1
    assert f"{forms}:2:" in err
    assert "1 forms" in out


def test_import_empty_files(sld, tmp_path):
    empty = tmp_path / "e.sld"
    empty.write_text("", encoding="utf-8")
    code, out, _ = sld("import", empty, empty, empty)
    assert code == 0
    assert out.startswith("0 forms, 0 lemmas, 0 meanings, 0 valency records")


def test_import_unreadable(sld, tmp_path):
    code, _, err = sld("import", tmp_path / "a", tmp_path / "b", tmp_path / "c")
    assert code == 2 and "cannot read" in err


def test_lookup_linked(imported):
    code, out, _ = imported("lookup", "abbadie")
    assert code == 0
    assert "abbadia → badia" in out
    assert "f. pl." in out
    assert "7840.01" in out


def test_lookup_verb(imported):
    code, out, _ = imported("lookup", "bramo")
    assert "indicative present 1 sing" in out
    assert "[5238]" in out
    code, out, _ = imported("lookup", "bramo", "--raw")
    assert "1 1 1 0 1" in out


def test_lookup_json(imported):
    code, out, _ = imported("--format", "json", "lookup", "abbadia")
    [a] = json.loads(out)
    assert [l["ID"] for l in a["chain"]] == [37, 7840]


def test_lookup_unknown(imported):
    code, out, _ = imported("lookup", "xyzzy")
    assert code == 0 and "no analyses" in out


def test_query_without_snapshot(sld):
    code, _, err = sld("lookup", "bramo")
    assert code == 2 and "does not exist" in err


def test_valency(imported):
    code, out, _ = imported("valency", "23293.01")
    assert code == 0
    rows = [l.split() for l in out.splitlines()[2:]]
    assert [r[:2] for r in rows if r[0] == "3"] == [["3", "1"], ["3", "2"], ["3", "3"], ["3", "4"]]
    assert "ind cnd cong" in out
    code, out, _ = imported("valency", "40.04")
    assert "2 slots" in out


def test_valency_not_found_and_bad_key(imported):
    code, _, err = imported("valency", "40.99")
    assert code == 1 and "40.99" in err
    code, _, err = imported("valency", "40")
    assert code == 2


def test_meanings_and_lemma(imported):
    code, out, _ = imported("meanings", "40")
    assert [l.split()[0] for l in out.splitlines()[1:]] == ["40.01", "40.02", "40.04"]
    code, out, _ = imported("--format", "sld", "meanings", "23293")
    assert out.startswith("MNG 23293.01;")
    code, out, _ = imported("lemma", "abbadia")
    assert "→ [7840] badia" in out
    code, out, _ = imported("lemma", "37", "--format", "sld")
    assert out.strip() == '37; 11; "abbadia"; "s.f."; f.; sing.; "badia";'
    code, _, _ = imported("lemma", "nessuno")
    assert code == 1


def test_validate_and_stats(imported):
    code, out, _ = imported("validate")
    assert code == 0 and "0 violations" in out
    code, out, _ = imported("stats")
    assert out.splitlines() == ["forms: 9", "lemmas: 5", "meanings: 5", "valency: 14"]


def test_stats_bramare_block(sld, tmp_path):
    forms = tmp_path / "f.sld"
    forms.write_text("\n".join(golden.FORMS_BRAMARE) + "\n", encoding="utf-8")
    empty = tmp_path / "e.sld"
    empty.write_text("", encoding="utf-8")
    sld("import", forms, empty, empty)
    code, out, _ = sld("stats")
    assert "forms: 7" in out


def test_validate_reports_violations(sld, tmp_path):
    forms = tmp_path / "f.sld"
    forms.write_text(golden.FORMS_BRAMARE[0] + "\n", encoding="utf-8")
    empty = tmp_path / "e.sld"
    empty.write_text("", encoding="utf-8")
    sld("import", forms, empty, empty)
    code, out, _ = sld("validate")
    assert code == 1 and "dangling-form-lemma" in out


def test_export_sld_is_identity(imported, tmp_path, sld):
    out1, out2 = tmp_path / "x1", tmp_path / "x2"
    assert imported("export", "--format", "sld", "--out", out1)[0] == 0
    assert sld("import", out1)[0] == 0
    assert sld("export", "--format", "sld", "--out", out2)[0] == 0
    for name in ("forms.sld", "lemmas.sld", "meanings.sld"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_export_json(imported):
    code, out, _ = imported("export")
    data = json.loads(out)
    assert len(data["forms"]) == 9 and len(data["meanings"]) == 5


def test_scan_pipeline(sld, tmp_path):
    entries = tmp_path / "e.dict"
    entries.write_text(
        golden.ABBAGLIARE_ENTRY + "\n\n[x] v.\n1 gloss\n\nbadia\n[ba-dì-a] s.f.\n1 Monastero (boh)\n", encoding="utf-8"
    )
    out = tmp_path / "scanned"
    code, stdout, err = sld("scan", entries, "--first-id", 40, "--out", out)
    assert code == 1
    assert "no headword" in err and "boh" in err
    assert "2 entries scanned" in stdout
    text = (out / "meanings.sld").read_text(encoding="utf-8")
    assert [l.split(";")[0] for l in text.splitlines() if l.startswith("MNG")] == [
        "MNG 40.01", "MNG 40.02", "MNG 40.03", "MNG 40.04", "MNG 41.01"
    ]
    code, stdout, err = sld("import", out)
    assert code == 0 and err == ""
    assert sld("validate")[0] == 0


def test_code_table_flag(imported, tmp_path):
    table = tmp_path / "codes.txt"
    table.write_text("mood;1;indicativo\n", encoding="utf-8")
    code, _, err = imported("--code-table", table, "lookup", "bramo")
    assert code == 1 and "already registered" in err
    table.write_text("mood;2;subjunctive\n", encoding="utf-8")
    code, out, _ = imported("--code-table", table, "lookup", "bramo")
    assert code == 0 and "indicative" in out


def test_output_is_deterministic(imported):
    runs = [imported("lookup", "abbadie")[1] + imported("valency", "23293.01")[1] for _ in range(2)]
    assert runs[0] == runs[1]


def test_usage_errors(sld):
    assert sld()[0] == 2
    assert sld("frobnicate")[0] == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "syntagma", "--data-dir", str(tmp_path / "none"), "stats"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "does not exist" in proc.stderr
