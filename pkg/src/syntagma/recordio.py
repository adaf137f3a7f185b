"""Parsers and serializers for the SLD record files.

Three text files make up a database:

``forms.sld``
    one Form per line, verbal layout
    ``5238; 1; 1; 1; 0; 1; "bramo"; "";`` or nominal layout
    ``37; f.; sing.; "abbadia"; "lnk";``
``lemmas.sld``
    one Lemma per line, ``7840; 3799; "badia"; "[ba-dì-a]"; "s.f."; f.; sing.;``
``meanings.sld``
    ``MNG ...;`` blocks (possibly wrapped over several lines), each followed
    by the ``[slot;variant; KEY value; ...]`` valency lines that belong to it.

Serializers emit one space after each ``;``; parsers accept any horizontal
whitespace. Parsed Meaning and ValencyArgument values remember their source
key order so that ``serialize(parse(text))`` reproduces ``text``.
"""

from __future__ import annotations

import dataclasses
import io
import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

from . import kernels
from .lexmodel import (
    CodeTable,
    CodeTableError,
    Form,
    Lemma,
    Meaning,
    MeaningId,
    MorphFeatures,
    ValencyArgument,
    default_codes,
    parse_mng,
    render_mng,
)
from .lexmodel import MngFormatError

log = logging.getLogger(__name__)

FORMS_FILE = "forms.sld"
LEMMAS_FILE = "lemmas.sld"
MEANINGS_FILE = "meanings.sld"


class RecordError(ValueError):
    """A record that could not be parsed. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.source = source

    def located(self, line: int, source: str | None) -> RecordError:
        return type(self)(self.message, line, source)

    def __str__(self) -> str:
        where = ""
        if self.source is not None:
            where = f"{self.source}:"
        if self.line is not None:
            where += f"{self.line}:"
        return f"{where} {self.message}" if where else self.message


class LayoutError(RecordError):
    """Wrong number of fields for any known record layout."""


class RecordFormatError(RecordError):
    """A field whose value does not have the expected shape."""


class OrphanRecordError(RecordError):
    """A valency record with no preceding MNG block."""


# ---------------------------------------------------------------------------
# value helpers

_QUOTED = re.compile(r'"((?:[^"\\]|\\.)*)"', re.S)
_LIST_ITEM = re.compile(r'\s*("(?:[^"\\]|\\.)*"|[^\s"()]+)', re.S)
_UNESCAPE = re.compile(r"\\(.)", re.S)


def _unquote(raw: str) -> str | None:
    m = _QUOTED.fullmatch(raw)
    if m is None:
        return None
    body = m.group(1)
    return _UNESCAPE.sub(r"\1", body) if "\\" in body else body


def quote(text: str) -> str:
    if '"' in text or "\\" in text:
        text = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{text}"'


def _parse_items(inner: str, key: str) -> tuple[str, ...]:
    items = []
    pos, n = 0, len(inner)
    while pos < n:
        if inner[pos:].strip() == "":
            break
        m = _LIST_ITEM.match(inner, pos)
        if m is None:
            raise RecordFormatError(f"{key}: cannot read list item at {inner[pos:]!r}")
        tok = m.group(1)
        items.append(_unquote(tok) if tok.startswith('"') else tok)
        pos = m.end()
    return tuple(items)


def normalize_spacing(text: str) -> str:
    """Collapse whitespace runs and drop spaces before ``;``.

    This is the comparison key for round-trip checks; serializer output is
    already in this form.
    """
    text = re.sub(r"\s+", " ", text).strip()
    return re.sub(r" ;", ";", text)


# ---------------------------------------------------------------------------
# keyed-record schema

MNG, INT, TEXT, ATOM, QLIST, ALIST, VL, OPT = "mng", "int", "text", "atom", "qlist", "alist", "vl", "opt"

MEANING_FIELDS: tuple[tuple[str, str, str], ...] = (
    ("MNG", "mng", MNG),
    ("LEX", "lex", TEXT),
    ("LEX2", "lex2", TEXT),
    ("PRON", "pron", TEXT),
    ("DISC", "disc", INT),
    ("WN", "wn", TEXT),
    ("CAT", "cat", INT),
    ("CATS", "cats", TEXT),
    ("GEN", "gen", INT),
    ("NUM", "num", INT),
    ("MORF", "morf", TEXT),
    ("AUX", "aux", TEXT),
    ("TRN", "trn", INT),
    ("RFL", "rfl", INT),
    ("CTRL", "ctrl", ATOM),
    ("POS", "pos", TEXT),
    ("LNG", "lng", TEXT),
    ("REG", "reg", TEXT),
    ("ALIAS", "alias", TEXT),
    ("SYN", "syn", QLIST),
    ("CNTR", "cntr", QLIST),
    ("IDIOM", "idiom", TEXT),
    ("SEM", "sem", QLIST),
    ("REF", "ref", TEXT),
    ("RESTR", "restr", TEXT),
    ("VL", "vl", VL),
    ("PRF", "prf", TEXT),
    ("DOM", "dom", TEXT),
    ("REL", "rel", TEXT),
    ("LNK", "lnk", TEXT),
    ("EXE", "exe", QLIST),
    ("ETM", "etm", TEXT),
    ("CIT", "cit", TEXT),
    ("MLG", "mlg", TEXT),
)

VALENCY_FIELDS: tuple[tuple[str, str, str], ...] = (
    ("FNCT", "fnct", ATOM),
    ("VCAT", "vcat", ATOM),
    ("VLEX", "vlex", QLIST),
    ("RGG", "rgg", QLIST),
    ("OPT", "opt", OPT),
    ("VMDV", "vmdv", ALIST),
    ("VTMP", "vtmp", ALIST),
    ("VPRS", "vprs", ALIST),
    ("VGEN", "vgen", ALIST),
    ("VNUM", "vnum", ALIST),
    ("VPOS", "vpos", ALIST),
    ("VSEM", "vsem", QLIST),
    ("VREF", "vref", TEXT),
    ("VRESTR", "vrestr", TEXT),
)

_MEANING_BY_KEY = {key: (attr, kind) for key, attr, kind in MEANING_FIELDS}
_MEANING_BY_KEY["ID"] = ("disc", INT)  # older spelling of DISC
_VALENCY_BY_KEY = {key: (attr, kind) for key, attr, kind in VALENCY_FIELDS}


def _parse_value(key: str, kind: str, raw: str):
    """Return (python value, shape) for one keyed field."""
    if kind == INT:
        if not raw:
            return None, "empty"
        if not raw.isdigit():
            raise RecordFormatError(f"{key}: expected a number, got {raw!r}")
        return int(raw), "bare"
    if kind in (TEXT, ATOM):
        if not raw:
            return "", "empty"
        text = _unquote(raw)
        if text is not None and kind == TEXT:
            return text, "quoted"
        return raw, "bare"
    if kind in (QLIST, ALIST):
        if not raw:
            return (), "empty"
        if raw.startswith("(") and raw.endswith(")"):
            return _parse_items(raw[1:-1], key), "list"
        items = _parse_items(raw, key)
        if len(items) != 1:
            raise RecordFormatError(f"{key}: several values must be enclosed in parentheses")
        return items, "scalar"
    if kind == VL:
        if not raw:
            return ("", ""), "empty"
        text = _unquote(raw)
        shape = "quoted"
        if text is None:
            text, shape = raw, "bare"
        text = text.strip()
        if len(text) >= 2 and text[0] + text[-1] in ("()", "[]"):
            return (text[1:-1].strip(), text[0] + text[-1]), shape
        return (text, ""), shape
    if kind == OPT:
        if raw not in ("T", "F"):
            raise RecordFormatError(f"{key}: expected T or F, got {raw!r}")
        return raw == "T", "bare"
    raise AssertionError(kind)


def _render_value(key: str, kind: str, value, shape: str | None, scalar_default: bool) -> str:
    if kind == MNG:
        return f"{key} {render_mng(value)}"
    if kind == INT:
        return key if value is None else f"{key} {value}"
    if kind in (TEXT, ATOM):
        if value == "":
            return f'{key} ""' if shape == "quoted" else key
        if kind == ATOM or shape == "bare":
            return f"{key} {value}"
        return f"{key} {quote(value)}"
    if kind in (QLIST, ALIST):
        if not value:
            return key
        items = [quote(v) if kind == QLIST else v for v in value]
        if len(items) == 1 and (shape == "scalar" or (shape is None and scalar_default)):
            return f"{key} {items[0]}"
        return f"{key} ({' '.join(items)})"
    if kind == VL:
        vl, brackets = value
        if not vl and not brackets:
            return f'{key} ""' if shape == "quoted" else key
        text = f"{brackets[0]}{vl}{brackets[1]}" if brackets else vl
        return f"{key} {text}" if shape == "bare" else f"{key} {quote(text)}"
    if kind == OPT:
        return f"{key} {'T' if value else 'F'}"
    raise AssertionError(kind)


def _parse_keyed(pairs, schema: dict, warnings: list[str] | None, what: str):
    values: dict = {}
    layout: list[tuple[str, str]] = []
    extra: list[tuple[str, str]] = []
    for key, raw in pairs:
        spec = schema.get(key)
        if spec is None:
            extra.append((key, raw))
            layout.append((key, "extra"))
            msg = f"{what}: unknown key {key} preserved"
            if warnings is not None:
                warnings.append(msg)
            else:
                log.warning(msg)
            continue
        attr, kind = spec
        if kind == MNG:
            try:
                values[attr] = parse_mng(raw)
            except MngFormatError as exc:
                raise RecordFormatError(str(exc)) from None
            layout.append((key, "bare"))
            continue
        value, shape = _parse_value(key, kind, raw)
        if kind == VL:
            values["vl"], values["vl_brackets"] = value
        else:
            values[attr] = value
        layout.append((key, shape))
    return values, tuple(extra), tuple(layout)


def _render_keyed(record, fields, by_key: dict, scalar_default: bool) -> list[str]:
    extras = dict(record.extra)
    layout = record.layout
    if layout is None:
        layout = tuple((key, None) for key, _, _ in fields) + tuple((key, "extra") for key in extras)
    parts = []
    for key, shape in layout:
        if shape == "extra":
            raw = extras.get(key, "")
            parts.append(f"{key} {raw}" if raw else key)
            continue
        attr, kind = by_key[key]
        if kind == VL:
            value = (record.vl, record.vl_brackets)
        else:
            value = getattr(record, attr)
        parts.append(_render_value(key, kind, value, shape, scalar_default))
    return parts


# ---------------------------------------------------------------------------
# Forms

_FEATURE_CACHE: dict[tuple[int, ...], MorphFeatures] = {}


def _features(mood: int, tense: int, person: int, gender: int, number: int) -> MorphFeatures:
    key = (mood, tense, person, gender, number)
    feats = _FEATURE_CACHE.get(key)
    if feats is None:
        feats = _FEATURE_CACHE.setdefault(key, MorphFeatures(*key))
    return feats


def _label_code(codes: CodeTable, dimension: str, text: str) -> int:
    if text.isdigit():
        code = int(text)
        if not codes.has_code(dimension, code):
            raise CodeTableError(f"unknown {dimension} code {code}")
        return code
    return codes.code(dimension, text)


def _code_label(codes: CodeTable, dimension: str, code: int) -> str:
    return "0" if code == 0 else codes.label(dimension, code)


def _required_text(raw: str, what: str) -> str:
    text = _unquote(raw)
    if text is None:
        raise RecordFormatError(f"{what} must be a quoted string, got {raw!r}")
    return text


def _positive_int(raw: str, what: str) -> int:
    if not raw.isdigit() or int(raw) < 1:
        raise RecordFormatError(f"{what} must be a positive integer, got {raw!r}")
    return int(raw)


def _split(line: str, split=kernels.split_fields) -> list[str]:
    try:
        return split(line)
    except ValueError as exc:
        raise RecordFormatError(str(exc)) from None


def parse_form_record(line: str, codes: CodeTable | None = None) -> Form:
    fast = kernels.form_fields(line)
    if fast is not None and fast[0] > 0:
        return Form(fast[0], _features(*fast[1:6]), fast[6], fast[7])
    fields = _split(line)
    if len(fields) == 8:
        lemma_id = _positive_int(fields[0], "form ID")
        codes_ = []
        for name, raw in zip(("mood", "tense", "person", "gender", "number"), fields[1:6]):
            if not raw.isdigit():
                raise RecordFormatError(f"{name} code must be numeric, got {raw!r}")
            codes_.append(int(raw))
        surface = _required_text(fields[6], "surface")
        flag = _required_text(fields[7], "flag")
        layout = "verbal"
        feats = _features(*codes_)
    elif len(fields) == 5:
        codes = codes or default_codes()
        lemma_id = _positive_int(fields[0], "form ID")
        gender = _label_code(codes, "gender", fields[1])
        number = _label_code(codes, "number", fields[2])
        surface = _required_text(fields[3], "surface")
        flag = _required_text(fields[4], "flag")
        layout = "nominal"
        feats = _features(0, 0, 0, gender, number)
    else:
        raise LayoutError(f"Forms record has {len(fields)} fields; expected 8 (verbal) or 5 (nominal)")
    if not surface:
        raise RecordFormatError("empty surface form")
    return Form(lemma_id, feats, surface, flag, layout)


def serialize_form(form: Form, codes: CodeTable | None = None) -> str:
    f = form.features
    if form.layout == "nominal":
        codes = codes or default_codes()
        return (
            f"{form.lemma_id}; {_code_label(codes, 'gender', f.gender)}; "
            f"{_code_label(codes, 'number', f.number)}; {quote(form.surface)}; {quote(form.flag)};"
        )
    return (
        f"{form.lemma_id}; {f.mood}; {f.tense}; {f.person}; {f.gender}; {f.number}; "
        f"{quote(form.surface)}; {quote(form.flag)};"
    )


# ---------------------------------------------------------------------------
# Lemmas


def parse_lemma_record(line: str, codes: CodeTable | None = None) -> Lemma:
    codes = codes or default_codes()
    fields = _split(line)
    if len(fields) < 2:
        raise RecordFormatError("Lemma record needs at least an ID and a basic form")
    lemma_id = _positive_int(fields[0], "lemma ID")
    if not fields[1].isdigit():
        raise RecordFormatError(f"lemma DISC must be numeric, got {fields[1]!r}")
    disc = int(fields[1])
    rest = fields[2:]
    if not rest or _unquote(rest[0]) in (None, ""):
        raise RecordFormatError("missing basic form")
    basic = _unquote(rest.pop(0))
    pron = None
    if rest and (text := _unquote(rest[0])) is not None and text.startswith("["):
        pron = text
        rest.pop(0)
    if len(rest) not in (3, 4):
        raise LayoutError(f"Lemma record has {len(fields)} fields; cannot place category/gender/number")
    cats = _required_text(rest[0], "category label")
    gender = _label_code(codes, "gender", rest[1])
    number = _label_code(codes, "number", rest[2])
    link = _required_text(rest[3], "link target") if len(rest) == 4 else None
    return Lemma(lemma_id, disc, basic, cats, gender, number, pron, link)


def serialize_lemma(lemma: Lemma, codes: CodeTable | None = None) -> str:
    codes = codes or default_codes()
    parts = [str(lemma.id), str(lemma.disc), quote(lemma.basic_form)]
    if lemma.pronunciation is not None:
        parts.append(quote(lemma.pronunciation))
    parts += [
        quote(lemma.category_label),
        _code_label(codes, "gender", lemma.gender),
        _code_label(codes, "number", lemma.number),
    ]
    if lemma.link_target is not None:
        parts.append(quote(lemma.link_target))
    return "; ".join(parts) + ";"


# ---------------------------------------------------------------------------
# Meanings and valency


def parse_meaning_record(block: str, warnings: list[str] | None = None) -> Meaning:
    try:
        pairs = kernels.split_pairs(block)
    except ValueError as exc:
        raise RecordFormatError(str(exc)) from None
    values, extra, layout = _parse_keyed(pairs, _MEANING_BY_KEY, warnings, "meaning")
    if "mng" not in values:
        raise RecordFormatError("meaning record has no MNG key")
    return Meaning(**values, extra=extra, layout=layout)


def serialize_meaning(meaning: Meaning) -> str:
    """The MNG block on one line (valency lines are not included)."""
    return "; ".join(_render_keyed(meaning, MEANING_FIELDS, _MEANING_BY_KEY, True)) + ";"


def parse_valency_record(line: str, warnings: list[str] | None = None) -> ValencyArgument:
    text = line.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise RecordFormatError("valency record must be enclosed in [ ]")
    try:
        pairs = kernels.split_pairs(text[1:-1])
    except ValueError as exc:
        raise RecordFormatError(str(exc)) from None
    if len(pairs) < 2 or pairs[0][1] or pairs[1][1] or not (pairs[0][0].isdigit() and pairs[1][0].isdigit()):
        raise RecordFormatError("valency record must start with numeric slot and variant")
    slot, variant = int(pairs[0][0]), int(pairs[1][0])
    if slot < 1 or variant < 1:
        raise RecordFormatError("slot and variant numbers start at 1")
    values, extra, layout = _parse_keyed(pairs[2:], _VALENCY_BY_KEY, warnings, f"valency [{slot};{variant}]")
    return ValencyArgument(slot, variant, **values, extra=extra, layout=layout)


def serialize_valency(arg: ValencyArgument) -> str:
    parts = _render_keyed(arg, VALENCY_FIELDS, _VALENCY_BY_KEY, False)
    body = "; ".join(parts) + ";" if parts else ""
    return f"[{arg.slot};{arg.variant}; {body}]" if body else f"[{arg.slot};{arg.variant};]"


def serialize_meaning_with_valency(meaning: Meaning) -> str:
    lines = [serialize_meaning(meaning)]
    lines += [serialize_valency(arg) for arg in meaning.valency]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# bulk loading


@dataclass
class Database:
    """Raw record sets of the three files plus the load report."""

    forms: list[Form] = field(default_factory=list)
    lemmas: list[Lemma] = field(default_factory=list)
    meanings: list[Meaning] = field(default_factory=list)
    errors: list[RecordError] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def valency_count(self) -> int:
        return sum(len(m.valency) for m in self.meanings)


Source = str | TextIO | Iterable[str] | None


def _lines(src: Source) -> Iterable[str]:
    if src is None:
        return ()
    if isinstance(src, str):
        return io.StringIO(src)
    return src


def _load_forms(src: Source, name: str, codes: CodeTable, db: Database) -> None:
    form_fields = kernels.form_fields
    out = db.forms
    append = out.append
    for lineno, line in enumerate(_lines(src), 1):
        fast = form_fields(line.rstrip("\r\n"))
        if fast is not None and fast[0] > 0:
            append(Form(fast[0], _features(*fast[1:6]), fast[6], fast[7]))
            continue
        if not line.strip():
            continue
        try:
            append(parse_form_record(line, codes))
        except (RecordError, CodeTableError) as exc:
            db.errors.append(_as_record_error(exc).located(lineno, name))


def _as_record_error(exc: Exception) -> RecordError:
    if isinstance(exc, RecordError):
        return exc
    return RecordFormatError(str(exc))


def _load_lemmas(src: Source, name: str, codes: CodeTable, db: Database) -> None:
    for lineno, line in enumerate(_lines(src), 1):
        if not line.strip():
            continue
        try:
            db.lemmas.append(parse_lemma_record(line, codes))
        except (RecordError, CodeTableError) as exc:
            db.errors.append(_as_record_error(exc).located(lineno, name))


def _load_meanings(src: Source, name: str, db: Database) -> None:
    block: list[str] = []
    block_line = 0
    current: Meaning | None = None
    valency: list[ValencyArgument] = []
    rejected = False

    def finish_meaning() -> None:
        nonlocal current, valency
        if current is not None:
            db.meanings.append(dataclasses.replace(current, valency=tuple(valency)))
        current, valency = None, []

    def close_block() -> None:
        nonlocal block, current, rejected
        if not block:
            return
        text = " ".join(block)
        block = []
        warnings: list[str] = []
        try:
            current = parse_meaning_record(text, warnings)
            rejected = False
        except RecordError as exc:
            db.errors.append(exc.located(block_line, name))
            current, rejected = None, True
        db.warnings.extend(f"{name}:{block_line}: {w}" for w in warnings)

    for lineno, raw in enumerate(_lines(src), 1):
        line = raw.strip()
        if not line:
            close_block()
            continue
        if line.startswith("MNG") and (len(line) == 3 or not line[3].isalnum()):
            close_block()
            finish_meaning()
            block, block_line = [line], lineno
            continue
        if line.startswith("["):
            close_block()
            if current is None:
                if rejected:
                    db.errors.append(RecordFormatError("valency record follows a rejected MNG block", lineno, name))
                else:
                    db.errors.append(OrphanRecordError("valency record before any MNG block", lineno, name))
                continue
            warnings: list[str] = []
            try:
                valency.append(parse_valency_record(line, warnings))
            except RecordError as exc:
                db.errors.append(exc.located(lineno, name))
            db.warnings.extend(f"{name}:{lineno}: {w}" for w in warnings)
            continue
        if block:
            block.append(line)
        else:
            db.errors.append(RecordFormatError("text outside any record", lineno, name))
    close_block()
    finish_meaning()


def load_database(
    forms_src: Source = None,
    lemmas_src: Source = None,
    meanings_src: Source = None,
    codes: CodeTable | None = None,
    names: tuple[str, str, str] = (FORMS_FILE, LEMMAS_FILE, MEANINGS_FILE),
) -> Database:
    """Parse the three record streams. Rejected lines are reported, not raised."""
    codes = codes or default_codes()
    db = Database()
    _load_forms(forms_src, names[0], codes, db)
    _load_lemmas(lemmas_src, names[1], codes, db)
    _load_meanings(meanings_src, names[2], db)
    return db


def load_directory(path: str | Path, codes: CodeTable | None = None) -> Database:
    path = Path(path)
    streams = []
    for name in (FORMS_FILE, LEMMAS_FILE, MEANINGS_FILE):
        p = path / name
        streams.append(p.open(encoding="utf-8") if p.exists() else None)
    try:
        return load_database(*streams, codes=codes)
    finally:
        for s in streams:
            if s is not None:
                s.close()


def dump_forms(forms: Iterable[Form], codes: CodeTable | None = None) -> str:
    return "".join(serialize_form(f, codes) + "\n" for f in forms)


def dump_lemmas(lemmas: Iterable[Lemma], codes: CodeTable | None = None) -> str:
    return "".join(serialize_lemma(l, codes) + "\n" for l in lemmas)


def dump_meanings(meanings: Iterable[Meaning]) -> str:
    return "".join(serialize_meaning_with_valency(m) + "\n\n" for m in meanings)


def write_database(
    path: str | Path,
    forms: Iterable[Form],
    lemmas: Iterable[Lemma],
    meanings: Iterable[Meaning],
    codes: CodeTable | None = None,
) -> None:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    (path / FORMS_FILE).write_text(dump_forms(forms, codes), encoding="utf-8")
    (path / LEMMAS_FILE).write_text(dump_lemmas(lemmas, codes), encoding="utf-8")
    (path / MEANINGS_FILE).write_text(dump_meanings(meanings), encoding="utf-8")


# ---------------------------------------------------------------------------
# JSON export (field names mirror the record keys)


def form_to_json(form: Form) -> dict:
    f = form.features
    return {
        "ID": form.lemma_id,
        "MOOD": f.mood,
        "TENSE": f.tense,
        "PERSON": f.person,
        "GEN": f.gender,
        "NUM": f.number,
        "FORM": form.surface,
        "FLAG": form.flag,
    }


def lemma_to_json(lemma: Lemma) -> dict:
    return {
        "ID": lemma.id,
        "DISC": lemma.disc,
        "LEX": lemma.basic_form,
        "PRON": lemma.pronunciation,
        "CATS": lemma.category_label,
        "GEN": lemma.gender,
        "NUM": lemma.number,
        "LNK": lemma.link_target,
    }


def _keyed_to_json(record, fields) -> dict:
    out = {}
    for key, attr, kind in fields:
        if kind == MNG:
            out[key] = render_mng(record.mng)
        elif kind == VL:
            out[key] = record.vl
        else:
            value = getattr(record, attr)
            out[key] = list(value) if isinstance(value, tuple) else value
    for key, raw in record.extra:
        out[key] = raw
    return out


def valency_to_json(arg: ValencyArgument) -> dict:
    return {"SLOT": arg.slot, "VARIANT": arg.variant, **_keyed_to_json(arg, VALENCY_FIELDS)}


def meaning_to_json(meaning: Meaning) -> dict:
    out = _keyed_to_json(meaning, MEANING_FIELDS)
    out["VALENCY"] = [valency_to_json(a) for a in meaning.valency]
    return out


def export_json(forms: Iterable[Form], lemmas: Iterable[Lemma], meanings: Iterable[Meaning]) -> str:
    payload = {
        "forms": [form_to_json(f) for f in forms],
        "lemmas": [lemma_to_json(l) for l in lemmas],
        "meanings": [meaning_to_json(m) for m in meanings],
    }
    return json.dumps(payload, ensure_ascii=False, indent=1)
