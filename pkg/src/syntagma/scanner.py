"""Dictionary Scanner: turn a printed dictionary entry into SLD records.

Input is one entry in plain text::

    abbagliare
    [ab-ba-glià-re] v. (*abbàglio* ecc.)
    • v.tr. [sogg-v-arg]
    1 Colpire qlcu. con una luce viva, offuscandogli la vista: *a. un automobilista*
    2 fig. Affascinare qlcu.: *l'arte ...*; ingannare, abbacinare qlcu.: *la sua ...*
    • v.intr. (aus. *avere*) [sogg-v] Emettere una luce intensa, che confonde la vista

Lines starting with ``•`` open a category section, lines starting with a
number open a sense, ``*...*`` marks italics (examples, forms). Anything
the rulebook cannot formalize is kept in MORF and reported as a warning.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple

from .constraintdsl import Block, Clause, serialize_constraint
from .lexmodel import (
    CodeTable,
    Form,
    Lemma,
    Meaning,
    MeaningId,
    MorphFeatures,
    ValencyArgument,
    default_codes,
)

__all__ = [
    "DictionaryEntry",
    "ScanError",
    "ScanResult",
    "Section",
    "Sense",
    "TranslatedVL",
    "UnknownCategoryError",
    "UnsupportedParadigmError",
    "conjugate_regular",
    "expand_abbrev",
    "formalize_clause_argument",
    "formalize_restriction",
    "map_category",
    "parse_entry",
    "scan_entry",
    "scan_text",
    "split_entries",
    "translate_vl",
]


class ScanError(ValueError):
    pass


class UnknownCategoryError(ScanError):
    pass


class UnsupportedParadigmError(ScanError):
    pass


# ---------------------------------------------------------------------------
# rulebook

# category label -> transitivity code
CATEGORY_LABELS = {
    "v.": 0,
    "v.tr.": 2,
    "v.intr.": 1,
    "s.f.": 0,
    "s.m.": 0,
    "agg.": 0,
    "avv.": 0,
}

# noun labels -> (gender label, number label) for the lemma record
NOUN_GENDER = {"s.f.": "f.", "s.m.": "m."}

# register marker -> semantic tag (None: register only)
REGISTER_MARKERS = {
    "fig.": "FIG",
    "lett.": None,
    "fam.": None,
    "scherz.": None,
    "spreg.": None,
    "estens.": None,
}

VL_LABELS = {"sogg": "subj", "v": "v", "arg": "arg", "ogg": "obj"}
VL_PROJECTION = {"subj": "NP", "v": "VP", "obj": "NP", "arg": "NP"}
OBJECT_FUNCTIONS = ("obj", "arg")

# connective -> moods of the clause it introduces
CLAUSE_CONNECTIVES = {
    "di": ("inf",),
    "a": ("inf",),
    "che": ("ind", "cnd", "cong"),
}
# connectives that also introduce a prepositional variant (kept as VCAT C)
PP_CONNECTIVES = ("di",)

# wording of the note -> (attribute, value) in the Restriction clause
_RESTRICTION_RULES = (
    (re.compile(r"\bal\s+pl\.(?!\w)"), ("NUM", "pl.")),
    (re.compile(r"\bal\s+sing\.(?!\w)"), ("NUM", "sing.")),
    (re.compile(r"\bsolo\s+al\s+f\.(?!\w)"), ("GEN", "f.")),
    (re.compile(r"\bsolo\s+al\s+m\.(?!\w)"), ("GEN", "m.")),
)
_LEADING_RESTRICTION = re.compile(
    r"^\s*((?:in\s+partic\.,\s*)?(?:solo\s+)?al\s+(?:pl|sing|f|m)\.)\s*[,:]?\s*"
)

_PERSON_MARKER = re.compile(r"(?<!\w)qlcu\.")
_AUX_NOTE = re.compile(r"^aus\.\s+(.+)$")
_CLAUSE_NOTE = re.compile(r"\bintrod\.\s+da\s+(.+?)\)?$")


# ---------------------------------------------------------------------------
# entry structure


@dataclass
class Sense:
    gloss: str
    register: tuple[str, ...] = ()
    examples: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    restriction: str = ""


@dataclass
class Section:
    label: str
    notes: list[str] = field(default_factory=list)
    vl_pattern: str = ""
    senses: list[Sense] = field(default_factory=list)


@dataclass
class DictionaryEntry:
    headword: str
    pronunciation: str | None = None
    category: str = ""
    morphology: str | None = None
    sections: list[Section] = field(default_factory=list)


@dataclass
class ScanResult:
    lemma: Lemma
    meanings: list[Meaning]
    forms: list[Form]
    warnings: list[str] = field(default_factory=list)
    entry: DictionaryEntry | None = None


class TranslatedVL(NamedTuple):
    vl: str
    brackets: str
    arguments: tuple[ValencyArgument, ...]


# ---------------------------------------------------------------------------
# small rules


def map_category(label: str, codes: CodeTable | None = None) -> tuple[int, str, int]:
    """Category label -> (CAT code, CATS label, TRN)."""
    codes = codes or default_codes()
    if label not in CATEGORY_LABELS:
        raise UnknownCategoryError(f"unknown category label {label!r}")
    head = label[: label.index(".") + 1]
    try:
        cat = codes.code("category", head)
    except KeyError:
        raise UnknownCategoryError(f"category {head!r} has no code in the code table") from None
    return cat, label, CATEGORY_LABELS[label]


def translate_vl(pattern: str, warnings: list[str] | None = None) -> TranslatedVL:
    """``[sogg-v-arg]`` -> ``subj-v-arg`` plus one obligatory variant per slot."""
    text = pattern.strip()
    brackets = ""
    if len(text) >= 2 and text[0] + text[-1] in ("[]", "()"):
        brackets = text[0] + text[-1]
        text = text[1:-1]
    labels = []
    for raw in (p.strip() for p in text.split("-")):
        if not raw:
            continue
        label = VL_LABELS.get(raw)
        if label is None:
            if warnings is not None:
                warnings.append(f"valency label {raw!r} not in rulebook; kept as is")
            label = raw
        labels.append(label)
    args = tuple(
        ValencyArgument(slot=i, variant=1, fnct=label, vcat=VL_PROJECTION.get(label, "NP"))
        for i, label in enumerate(labels, 1)
    )
    return TranslatedVL("-".join(labels), brackets, args)


def expand_abbrev(example: str, headword: str) -> str:
    """Replace the ``x.`` abbreviation of the headword by the headword itself."""
    if not headword:
        return example
    initial = headword[0]
    pattern = re.compile(r"(?<!\S)(" + re.escape(initial.lower()) + "|" + re.escape(initial.upper()) + r")\.(?!\S)")

    def repl(m: re.Match) -> str:
        return headword if m.group(1).islower() else headword[0].upper() + headword[1:]

    return pattern.sub(repl, example)


def formalize_restriction(note: str) -> Block | None:
    """Map a usage note such as ``"in partic., al pl."`` to a RESTR constraint."""
    for pattern, pair in _RESTRICTION_RULES:
        if pattern.search(note):
            return Block(
                (
                    Clause("Context", (("TAG", "NP"),)),
                    Clause("Target", (("TAG", "N"),)),
                    Clause("Restriction", (pair,)),
                )
            )
    return None


def formalize_clause_argument(
    note: str,
    slot: int,
    base_variant_count: int,
    fnct: str = "obj",
    warnings: list[str] | None = None,
) -> list[ValencyArgument]:
    """Clause realizations of an argument from a note like ``(introd. da di o da che)``."""
    text = _plain(note).strip().strip("()")
    if not text:
        return []
    m = _CLAUSE_NOTE.search(text)
    if m is None:
        if warnings is not None:
            warnings.append(f"clause note not understood: {note!r}")
        return []
    connectives = []
    for part in re.split(r",|\bo\b|\be\b", m.group(1)):
        word = re.sub(r"^da\s+", "", part.strip().strip("()")).strip()
        if word:
            connectives.append(word)
    variants: list[ValencyArgument] = []
    n = base_variant_count
    for word in connectives:
        moods = CLAUSE_CONNECTIVES.get(word)
        if moods is None:
            if warnings is not None:
                warnings.append(f"connective {word!r} not in rulebook")
            continue
        n += 1
        variants.append(ValencyArgument(slot, n, fnct=fnct, vcat="C", rgg=(word,), vmdv=moods))
    for word in connectives:
        if word in PP_CONNECTIVES:
            n += 1
            variants.append(ValencyArgument(slot, n, fnct=fnct, vcat="C", rgg=(word,)))
    if not variants and warnings is not None:
        warnings.append(f"clause note names no known connective: {note!r}")
    return variants


# ---------------------------------------------------------------------------
# conjugation

_PRESENT = {
    "are": ("o", "i", "a", "iamo", "ate", "ano"),
    "ere": ("o", "i", "e", "iamo", "ete", "ono"),
    "ire": ("o", "i", "e", "iamo", "ite", "ono"),
}
_IMPERFECT = {
    "are": ("avo", "avi", "ava", "avamo", "avate", "avano"),
    "ere": ("evo", "evi", "eva", "evamo", "evate", "evano"),
    "ire": ("ivo", "ivi", "iva", "ivamo", "ivate", "ivano"),
}
_PERSONS = ((1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2))


def _attach(stem: str, ending: str, conj: str) -> str:
    if ending.startswith("i"):
        if conj == "are" and stem.endswith(("c", "g")):
            return stem + "h" + ending
        if stem.endswith("i"):
            return stem + ending[1:]
    return stem + ending


def conjugate_regular(basic_form: str, lemma_id: int) -> list[Form]:
    """Present and imperfect indicative of a regular -are/-ere/-ire verb."""
    conj = basic_form[-3:]
    if conj not in _PRESENT or len(basic_form) < 4:
        raise UnsupportedParadigmError(f"{basic_form!r} is not a regular -are/-ere/-ire infinitive")
    stem = basic_form[:-3]
    forms = []
    for tense, endings in ((1, _PRESENT[conj]), (2, _IMPERFECT[conj])):
        for (person, number), ending in zip(_PERSONS, endings):
            forms.append(Form(lemma_id, MorphFeatures(1, tense, person, 0, number), _attach(stem, ending, conj)))
    return forms


# ---------------------------------------------------------------------------
# text helpers


def _plain(text: str) -> str:
    return re.sub(r"\s+", " ", text.replace("*", "")).strip()


def _split_top(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside parentheses and ``*italics*``."""
    parts, depth, italic, start = [], 0, False, 0
    for i, c in enumerate(text):
        if c == "*":
            italic = not italic
        elif c == "(" and not italic:
            depth += 1
        elif c == ")" and not italic and depth:
            depth -= 1
        elif c == sep and depth == 0 and not italic:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def _take_parenthetical(text: str, start: int) -> tuple[str, int]:
    """Balanced ``( ... )`` starting at ``start``; returns (inner text, end index)."""
    depth = 0
    for i in range(start, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return text[start + 1 : i], i + 1
    raise ScanError(f"unbalanced parenthesis in {text[start:]!r}")


def _extract_notes(text: str) -> tuple[str, list[str]]:
    """Remove top-level parentheticals; return (remaining text, notes)."""
    notes, out, i, italic = [], [], 0, False
    while i < len(text):
        c = text[i]
        if c == "*":
            italic = not italic
        if c == "(" and not italic:
            inner, i = _take_parenthetical(text, i)
            notes.append(_plain(inner))
            continue
        out.append(c)
        i += 1
    return re.sub(r"\s+", " ", "".join(out)).strip(), notes


def _split_register(body: str) -> tuple[tuple[str, ...], str]:
    markers = []
    rest = body.strip()
    while True:
        word = rest.split(" ", 1)[0]
        if word in REGISTER_MARKERS:
            markers.append(word)
            rest = rest[len(word) :].strip()
        else:
            return tuple(markers), rest


def _examples(text: str) -> list[str]:
    spans = re.findall(r"\*([^*]+)\*", text)
    if spans:
        return [_plain(s) for s in spans if _plain(s)]
    text = _plain(text)
    return [text] if text else []


def _gloss_and_examples(segment: str) -> tuple[str, list[str]] | None:
    """Split ``gloss: *example*``; None when the segment has no gloss-colon shape."""
    parts = _split_top(segment, ":")
    if len(parts) < 2:
        return None
    gloss = parts[0].strip()
    examples = _examples(":".join(parts[1:]))
    if not gloss or gloss.startswith("*") or not examples:
        return None
    return gloss, examples


def _parse_senses(body: str) -> list[Sense]:
    """One numbered sense body -> the sense plus any ';'-separated sub-senses."""
    register, body = _split_register(body)
    senses: list[Sense] = []
    for segment in _split_top(body, ";"):
        segment = segment.strip()
        if not segment:
            continue
        split = _gloss_and_examples(segment)
        if senses and split is None:
            if segment.startswith("*"):
                senses[-1].examples.extend(_examples(segment))
            else:
                senses[-1].gloss += "; " + segment
            continue
        if split is None:
            gloss, examples = segment, []
        else:
            gloss, examples = split
        senses.append(Sense(gloss=gloss, register=register, examples=examples))
    for sense in senses:
        gloss, notes = _extract_notes(sense.gloss)
        m = _LEADING_RESTRICTION.match(gloss)
        if m:
            notes.insert(0, m.group(1))
            gloss = gloss[m.end() :]
        sense.gloss = _plain(gloss)
        sense.notes = notes
    return [s for s in senses if s.gloss]


# ---------------------------------------------------------------------------
# entry parsing

_SENSE_LINE = re.compile(r"^(\d+)[.)]?\s+(.*)$")
_BULLET = "•"


def _clean_line(line: str) -> str:
    line = line.strip()
    line = re.sub(r"^-\s+(?=\S)", "", line)  # list markers from markdown renderings
    return line.strip()


def parse_entry(text: str) -> DictionaryEntry:
    lines = [l for l in (_clean_line(r) for r in text.splitlines()) if l]
    if not lines:
        raise ScanError("empty entry")
    first = lines[0]
    if first.startswith(("[", _BULLET)) or _SENSE_LINE.match(first):
        raise ScanError("entry has no headword")
    headword, _, rest = first.partition("[")
    headword = headword.strip()
    if not headword:
        raise ScanError("entry has no headword")
    body_lines = lines[1:]
    if rest:
        body_lines.insert(0, "[" + rest)
    entry = DictionaryEntry(headword=_plain(headword))

    i = 0
    if body_lines and body_lines[0].startswith("["):
        header = body_lines[0]
        end = header.find("]")
        if end < 0:
            raise ScanError("unterminated pronunciation")
        entry.pronunciation = header[: end + 1]
        tail = header[end + 1 :].strip()
        tail, notes = _extract_notes(tail)
        if notes:
            entry.morphology = "; ".join(notes)
        if tail:
            entry.category = tail.split()[0]
        i = 1

    current_section: Section | None = None
    last_sense_body: list[str] | None = None
    pending: list[tuple[Section, list[str]]] = []  # (section, sense bodies)

    def new_section(label: str) -> Section:
        sec = Section(label=label)
        pending.append((sec, []))
        return sec

    for line in body_lines[i:]:
        if line.startswith(_BULLET):
            header = line[len(_BULLET) :].strip()
            if not header:
                raise ScanError("empty section header")
            label, _, remainder = header.partition(" ")
            if label not in CATEGORY_LABELS:
                raise ScanError(f"unrecognized section header {line!r}")
            current_section = new_section(label)
            inline = _parse_section_header(current_section, remainder.strip())
            last_sense_body = None
            if inline:
                pending[-1][1].append(inline)
                last_sense_body = pending[-1][1]
            continue
        m = _SENSE_LINE.match(line)
        if m:
            if current_section is None:
                label = entry.category
                if label not in CATEGORY_LABELS:
                    raise ScanError(f"sense before any section and no usable category ({label!r})")
                current_section = new_section(label)
            pending[-1][1].append(m.group(2))
            last_sense_body = pending[-1][1]
            continue
        if last_sense_body is not None:
            last_sense_body[-1] += " " + line
        else:
            raise ScanError(f"cannot place line {line!r}")

    for section, bodies in pending:
        for body in bodies:
            section.senses.extend(_parse_senses(body))
    entry.sections = [sec for sec, _ in pending]
    if not entry.sections:
        raise ScanError("entry has no senses")
    return entry


def _parse_section_header(section: Section, text: str) -> str:
    """Consume notes and the valency pattern; return the inline gloss, if any."""
    rest = text
    while rest:
        if rest.startswith("("):
            inner, end = _take_parenthetical(rest, 0)
            section.notes.append(_plain(inner))
            rest = rest[end:].strip()
        elif rest.startswith("["):
            end = rest.find("]")
            if end < 0:
                raise ScanError(f"unterminated valency pattern in {text!r}")
            section.vl_pattern = rest[: end + 1]
            rest = rest[end + 1 :].strip()
        else:
            break
    return rest


# ---------------------------------------------------------------------------
# scanning


def split_entries(text: str) -> list[str]:
    """Blank-line separated entry blocks of a .dict file."""
    return [b for b in re.split(r"\n\s*\n", text) if b.strip()]


class _NoteOutcome(NamedTuple):
    aux: str
    restr: str
    clause_notes: list[str]
    unformalized: list[str]


def _classify_notes(notes: list[str], warnings: list[str], where: str) -> _NoteOutcome:
    aux, restr, clauses, rest = "", "", [], []
    for note in notes:
        m = _AUX_NOTE.match(note)
        if m:
            aux = m.group(1).strip()
            continue
        if "espresso da frase" in note or "introd. da" in note:
            clauses.append(note)
            continue
        expr = formalize_restriction(note)
        if expr is not None:
            restr = serialize_constraint(expr)
            continue
        rest.append(note)
        warnings.append(f"{where}: note not formalized, kept in MORF: {note!r}")
    return _NoteOutcome(aux, restr, clauses, rest)


def _frame_for(
    mng: MeaningId, vl: TranslatedVL | None, sense: Sense, clause_notes: list[str], warnings: list[str]
) -> tuple[ValencyArgument, ...]:
    if vl is None:
        return ()
    args = list(vl.arguments)
    target = next((i for i, a in enumerate(args) if a.fnct in OBJECT_FUNCTIONS), None)
    if target is not None and _PERSON_MARKER.search(sense.gloss):
        a = args[target]
        args[target] = ValencyArgument(a.slot, a.variant, fnct=a.fnct, vcat=a.vcat, vsem=("PERSON",))
    for note in clause_notes:
        if target is None:
            warnings.append(f"{mng}: clause note without an object slot: {note!r}")
            continue
        slot = args[target].slot
        count = sum(1 for a in args if a.slot == slot)
        args.extend(formalize_clause_argument(note, slot, count, args[target].fnct, warnings))
    return tuple(sorted(args, key=lambda a: (a.slot, a.variant)))


def scan_entry(text: str, lemma_id: int, codes: CodeTable | None = None) -> ScanResult:
    """Formalize one dictionary entry into a lemma, its meanings and forms."""
    codes = codes or default_codes()
    entry = parse_entry(text)
    warnings: list[str] = []
    head_label = entry.category if entry.category in CATEGORY_LABELS else entry.sections[0].label
    gender_label = NOUN_GENDER.get(head_label)
    lemma = Lemma(
        id=lemma_id,
        disc=lemma_id,
        basic_form=entry.headword,
        category_label=head_label,
        gender=codes.code("gender", gender_label) if gender_label else 0,
        number=codes.code("number", "sing.") if gender_label else 0,
        pronunciation=entry.pronunciation,
    )

    meanings: list[Meaning] = []
    sense_no = 0
    for section in entry.sections:
        cat, cats, trn = map_category(section.label, codes)
        vl = translate_vl(section.vl_pattern, warnings) if section.vl_pattern else None
        sec_notes = _classify_notes(section.notes, warnings, f"{entry.headword} {section.label}")
        is_verb = section.label.startswith("v.")
        for sense in section.senses:
            sense_no += 1
            mng = MeaningId(lemma_id, sense_no)
            own = _classify_notes(sense.notes, warnings, str(mng))
            aux = own.aux or sec_notes.aux or ("avere" if trn == 2 else "")
            sem = tuple(REGISTER_MARKERS[r] for r in sense.register if REGISTER_MARKERS[r])
            gen = NOUN_GENDER.get(section.label)
            valency = _frame_for(mng, vl, sense, sec_notes.clause_notes + own.clause_notes, warnings)
            meanings.append(
                Meaning(
                    mng=mng,
                    lex=entry.headword,
                    pron=entry.pronunciation or "",
                    disc=lemma_id,
                    cat=cat,
                    cats=cats,
                    gen=codes.code("gender", gen) if gen else 0,
                    num=0,
                    morf="; ".join(sec_notes.unformalized + own.unformalized),
                    aux=aux if is_verb else "",
                    trn=trn,
                    rfl=0,
                    ctrl="F",
                    reg=" ".join(sense.register),
                    sem=sem,
                    restr=own.restr or sec_notes.restr,
                    vl=vl.vl if vl else "",
                    vl_brackets=vl.brackets if vl else "",
                    prf=sense.gloss,
                    exe=tuple(expand_abbrev(e, entry.headword) for e in sense.examples),
                    valency=valency,
                )
            )

    if head_label.startswith("v.") and entry.headword.endswith(("are", "ere", "ire")):
        forms = conjugate_regular(entry.headword, lemma_id)
    else:
        forms = [Form(lemma_id, MorphFeatures(0, 0, 0, lemma.gender, lemma.number), entry.headword, "", "nominal")]
    return ScanResult(lemma, meanings, forms, warnings, entry)


def scan_text(text: str, first_id: int, codes: CodeTable | None = None) -> list[ScanResult | ScanError]:
    """Scan every entry of a .dict text. Failed entries do not consume an ID."""
    out: list[ScanResult | ScanError] = []
    next_id = first_id
    for block in split_entries(text):
        try:
            result = scan_entry(block, next_id, codes)
        except ScanError as exc:
            head = block.strip().splitlines()[0]
            out.append(ScanError(f"entry {head!r}: {exc}"))
            continue
        out.append(result)
        next_id += 1
    return out
