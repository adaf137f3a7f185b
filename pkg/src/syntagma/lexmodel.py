"""Domain types for the four lexical tables: Forms, Lemma, Meanings, Valency.

All values are immutable. Feature codes are plain integers whose labels
live in a :class:`CodeTable`, so new codes can be registered from a config
file without touching the code.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple

__all__ = [
    "CodeTable",
    "CodeTableError",
    "Form",
    "Lemma",
    "Meaning",
    "MeaningId",
    "MorphFeatures",
    "ValencyArgument",
    "ValencyFrame",
    "Violation",
    "default_codes",
    "parse_mng",
    "render_mng",
    "validate_features",
    "validate_meaning",
    "vl_functions",
]

DIMENSIONS = ("mood", "tense", "person", "gender", "number", "category")


class MngFormatError(ValueError):
    """Raised for a malformed MNG index."""


class CodeTableError(KeyError):
    """Raised when a code or label is not registered in a dimension."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "code table error"


# ---------------------------------------------------------------------------
# code tables


class CodeTable:
    """Bidirectional code <-> label maps, one per dimension."""

    def __init__(self, entries: Iterable[tuple[str, int, str]] = ()):
        self._labels: dict[str, dict[int, str]] = {}
        self._codes: dict[str, dict[str, int]] = {}
        for dimension, code, label in entries:
            self.register(dimension, code, label)

    def register(self, dimension: str, code: int, label: str) -> None:
        labels = self._labels.setdefault(dimension, {})
        codes = self._codes.setdefault(dimension, {})
        if code in labels and labels[code] != label:
            raise CodeTableError(
                f"{dimension}: code {code} already registered as {labels[code]!r}"
            )
        if label in codes and codes[label] != code:
            raise CodeTableError(
                f"{dimension}: label {label!r} already registered as code {codes[label]}"
            )
        labels[code] = label
        codes[label] = code

    def label(self, dimension: str, code: int) -> str:
        try:
            return self._labels[dimension][code]
        except KeyError:
            raise CodeTableError(f"unknown {dimension} code {code}") from None

    def code(self, dimension: str, label: str) -> int:
        try:
            return self._codes[dimension][label]
        except KeyError:
            raise CodeTableError(f"unknown {dimension} label {label!r}") from None

    def has_code(self, dimension: str, code: int) -> bool:
        return code in self._labels.get(dimension, ())

    def entries(self, dimension: str) -> list[tuple[int, str]]:
        return sorted(self._labels.get(dimension, {}).items())

    def dimensions(self) -> list[str]:
        return sorted(self._labels)

    def copy(self) -> CodeTable:
        table = CodeTable()
        for dimension in self._labels:
            for code, label in self._labels[dimension].items():
                table.register(dimension, code, label)
        return table

    def update_from_text(self, text: str, source: str = "<text>") -> None:
        """Register ``dimension;code;label`` lines. Blank lines and ``#`` comments are skipped."""
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(";")]
            if len(parts) != 3 or not parts[0] or not parts[2]:
                raise CodeTableError(f"{source}:{lineno}: expected 'dimension;code;label'")
            try:
                code = int(parts[1])
            except ValueError:
                raise CodeTableError(f"{source}:{lineno}: code {parts[1]!r} is not an integer") from None
            self.register(parts[0], code, parts[2])

    @classmethod
    def load(cls, path: str | Path, base: CodeTable | None = None) -> CodeTable:
        table = (base or default_codes()).copy()
        path = Path(path)
        table.update_from_text(path.read_text(encoding="utf-8"), str(path))
        return table


_DEFAULT_CODES: CodeTable | None = None


def default_codes() -> CodeTable:
    """The seed code table shipped with the package (shared, treat as read-only)."""
    global _DEFAULT_CODES
    if _DEFAULT_CODES is None:
        table = CodeTable()
        text = resources.files("syntagma").joinpath("codes.txt").read_text(encoding="utf-8")
        table.update_from_text(text, "codes.txt")
        _DEFAULT_CODES = table
    return _DEFAULT_CODES


# ---------------------------------------------------------------------------
# identifiers

_MNG_RE = re.compile(r"([0-9]+)\.([0-9]+)")


@dataclass(frozen=True, order=True)
class MeaningId:
    lemma_id: int
    sense_no: int

    def __post_init__(self) -> None:
        if self.lemma_id < 1:
            raise MngFormatError(f"lemma id must be positive, got {self.lemma_id}")
        if self.sense_no < 1:
            raise MngFormatError(f"sense number must be >= 1, got {self.sense_no}")

    def __str__(self) -> str:
        return render_mng(self)


def parse_mng(text: str) -> MeaningId:
    m = _MNG_RE.fullmatch(text.strip())
    if m is None:
        raise MngFormatError(f"malformed MNG index {text!r}")
    try:
        return MeaningId(int(m.group(1)), int(m.group(2)))
    except MngFormatError as exc:
        raise MngFormatError(f"malformed MNG index {text!r}: {exc}") from None


def render_mng(mng: MeaningId) -> str:
    return f"{mng.lemma_id}.{mng.sense_no:02d}"


# ---------------------------------------------------------------------------
# records


class MorphFeatures(NamedTuple):
    mood: int = 0
    tense: int = 0
    person: int = 0
    gender: int = 0
    number: int = 0


class Form(NamedTuple):
    """One inflected surface string keyed to a lemma.

    ``layout`` records which of the two Forms layouts the record used:
    ``"verbal"`` (numeric codes) or ``"nominal"`` (gender/number labels).
    """

    lemma_id: int
    features: MorphFeatures
    surface: str
    flag: str = ""
    layout: str = "verbal"

    @property
    def key(self) -> tuple[str, MorphFeatures, int]:
        return (self.surface, self.features, self.lemma_id)


@dataclass(frozen=True)
class Lemma:
    id: int
    disc: int
    basic_form: str
    category_label: str
    gender: int = 0
    number: int = 0
    pronunciation: str | None = None
    link_target: str | None = None


# Each entry of ``layout`` is (source key, value shape). The shape is one of
# "empty", "quoted", "bare", "scalar" (one-item list written without parens)
# or "list"; the serializers use it only to reproduce source spelling.
Layout = tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class ValencyArgument:
    slot: int
    variant: int
    fnct: str = ""
    vcat: str = ""
    vlex: tuple[str, ...] = ()
    rgg: tuple[str, ...] = ()
    opt: bool = False
    vmdv: tuple[str, ...] = ()
    vtmp: tuple[str, ...] = ()
    vprs: tuple[str, ...] = ()
    vgen: tuple[str, ...] = ()
    vnum: tuple[str, ...] = ()
    vpos: tuple[str, ...] = ()
    vsem: tuple[str, ...] = ()
    vref: str = ""
    vrestr: str = ""
    extra: tuple[tuple[str, str], ...] = ()
    layout: Layout | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Meaning:
    mng: MeaningId
    lex: str = ""
    lex2: str = ""
    pron: str = ""
    disc: int | None = None
    wn: str = ""
    cat: int | None = None
    cats: str = ""
    gen: int | None = None
    num: int | None = None
    morf: str = ""
    aux: str = ""
    trn: int | None = None
    rfl: int | None = None
    ctrl: str = ""
    pos: str = ""
    lng: str = ""
    reg: str = ""
    alias: str = ""
    syn: tuple[str, ...] = ()
    cntr: tuple[str, ...] = ()
    idiom: str = ""
    sem: tuple[str, ...] = ()
    ref: str = ""
    restr: str = ""
    vl: str = ""
    vl_brackets: str = ""
    prf: str = ""
    dom: str = ""
    rel: str = ""
    lnk: str = ""
    exe: tuple[str, ...] = ()
    etm: str = ""
    cit: str = ""
    mlg: str = ""
    extra: tuple[tuple[str, str], ...] = ()
    valency: tuple[ValencyArgument, ...] = ()
    layout: Layout | None = field(default=None, compare=False, repr=False)

    @property
    def restriction(self):
        """The parsed RESTR constraint, or None when the field is empty."""
        if not self.restr:
            return None
        from .constraintdsl import parse_constraint

        return parse_constraint(self.restr)

    @property
    def frame(self) -> ValencyFrame:
        return ValencyFrame.from_arguments(self.mng, self.valency)


@dataclass(frozen=True)
class ValencyFrame:
    mng: MeaningId
    slots: tuple[tuple[ValencyArgument, ...], ...] = ()

    @classmethod
    def from_arguments(cls, mng: MeaningId, args: Iterable[ValencyArgument]) -> ValencyFrame:
        groups: dict[int, list[ValencyArgument]] = {}
        for arg in args:
            groups.setdefault(arg.slot, []).append(arg)
        return cls(mng, tuple(tuple(groups[s]) for s in sorted(groups)))

    def __len__(self) -> int:
        return len(self.slots)

    def slot(self, index: int) -> tuple[ValencyArgument, ...]:
        """Variants of a 1-based slot index."""
        for variants in self.slots:
            if variants[0].slot == index:
                return variants
        raise KeyError(index)

    def arguments(self) -> list[ValencyArgument]:
        return [arg for variants in self.slots for arg in variants]


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.where}: {self.message}"


def vl_functions(vl: str) -> list[str]:
    """Function labels of a valency pattern, e.g. ``"subj-v-arg"`` -> 3 labels."""
    body = vl.strip().strip("()[]").strip()
    return [part.strip() for part in body.split("-") if part.strip()] if body else []


def validate_features(features: MorphFeatures, codes: CodeTable | None = None) -> list[str]:
    codes = codes or default_codes()
    problems = []
    if features.person not in (0, 1, 2, 3):
        problems.append(f"person {features.person} outside 0..3")
    for dimension in ("mood", "tense", "person", "gender", "number"):
        value = getattr(features, dimension)
        if not codes.has_code(dimension, value):
            problems.append(f"{dimension} code {value} not registered")
    return problems


def frame_violations(mng: MeaningId, args: Iterable[ValencyArgument]) -> list[Violation]:
    """Structural checks on one meaning's valency arguments."""
    where = render_mng(mng)
    out: list[Violation] = []
    seen: set[tuple[int, int]] = set()
    variants: dict[int, list[int]] = {}
    fncts: dict[int, set[str]] = {}
    for arg in args:
        key = (arg.slot, arg.variant)
        if key in seen:
            out.append(Violation("duplicate-variant", where, f"[{arg.slot};{arg.variant}] occurs more than once"))
            continue
        seen.add(key)
        variants.setdefault(arg.slot, []).append(arg.variant)
        fncts.setdefault(arg.slot, set()).add(arg.fnct)
    slots = sorted(variants)
    if slots and slots != list(range(1, len(slots) + 1)):
        out.append(Violation("slot-gap", where, f"slots {slots} are not 1..{len(slots)}"))
    for slot in slots:
        numbers = sorted(variants[slot])
        if numbers != list(range(1, len(numbers) + 1)):
            out.append(Violation("variant-gap", where, f"slot {slot} variants {numbers} are not 1..{len(numbers)}"))
        if len(fncts[slot]) > 1:
            out.append(Violation("mixed-fnct", where, f"slot {slot} mixes functions {sorted(fncts[slot])}"))
    return out


def validate_meaning(m: Meaning) -> list[Violation]:
    """Check a meaning's field contracts and its attached valency frame."""
    where = render_mng(m.mng)
    out: list[Violation] = []
    if m.trn is not None and m.trn not in (0, 1, 2):
        out.append(Violation("trn", where, f"TRN {m.trn} not in {{0,1,2}}"))
    if m.ctrl and m.ctrl not in ("T", "F"):
        out.append(Violation("ctrl", where, f"CTRL {m.ctrl!r} not in {{T,F}}"))
    if m.vl_brackets and m.vl_brackets not in ("()", "[]"):
        out.append(Violation("vl", where, f"VL delimiters {m.vl_brackets!r} not () or []"))
    if m.restr:
        from .constraintdsl import ConstraintSyntaxError, parse_constraint

        try:
            parse_constraint(m.restr)
        except ConstraintSyntaxError as exc:
            out.append(Violation("restr", where, str(exc)))
    if m.valency:
        out.extend(frame_violations(m.mng, m.valency))
        if m.vl:
            expected = len(vl_functions(m.vl))
            actual = len({arg.slot for arg in m.valency})
            if expected != actual:
                out.append(
                    Violation("vl-slot-mismatch", where, f"VL names {expected} functions but frame has {actual} slots")
                )
    return out
