"""``sld``: import, query, scan and check a Syntagma lexicon from the shell.

Exit status: 0 success, 1 data errors (bad records, violations, unknown
keys), 2 usage or I/O problems.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import recordio
from .lexmodel import CodeTable, CodeTableError, Form, MngFormatError, default_codes, parse_mng, render_mng
from .lexstore import LexStore, MeaningNotFound, StoreError, build_store
from .scanner import ScanError, scan_text

SNAPSHOT_FILE = "lexicon.snap"
DEFAULT_DATA_DIR = "sld-data"

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("syntagma")


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    data_dir: Path
    codes: CodeTable
    fmt: str = "table"
    raw: bool = False
    verbose: bool = False

    @property
    def snapshot(self) -> Path:
        return self.data_dir / SNAPSHOT_FILE


# ---------------------------------------------------------------------------
# helpers


def _out(text: str = "") -> None:
    sys.stdout.write(text + "\n")


def _err(text: str) -> None:
    sys.stderr.write(text + "\n")


def _open_store(cfg: CliConfig) -> LexStore:
    if not cfg.data_dir.is_dir():
        raise UsageError(f"data directory {cfg.data_dir} does not exist")
    if not cfg.snapshot.exists():
        raise UsageError(f"no lexicon in {cfg.data_dir}; run 'sld import' first")
    try:
        return LexStore.load(cfg.snapshot)
    except (StoreError, OSError) as exc:
        raise UsageError(str(exc)) from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _feature_text(form: Form, cfg: CliConfig) -> str:
    f = form.features
    if cfg.raw:
        return " ".join(str(c) for c in f)
    parts = []
    for dim, code in zip(("mood", "tense", "person", "gender", "number"), f):
        if code == 0:
            continue
        try:
            parts.append(cfg.codes.label(dim, code))
        except CodeTableError:
            parts.append(f"{dim}={code}")
    return " ".join(parts) or "-"


def _first_line(text: str) -> str:
    return text.splitlines()[0] if text else ""


def _table(rows: list[list[str]], header: list[str]) -> list[str]:
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    fmt = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
    return [fmt(header)] + [fmt(r) for r in rows]


# ---------------------------------------------------------------------------
# commands


def cmd_import(cfg: CliConfig, args) -> int:
    paths = args.paths
    if len(paths) == 1 and Path(paths[0]).is_dir():
        src = Path(paths[0])
        paths = [str(src / n) for n in (recordio.FORMS_FILE, recordio.LEMMAS_FILE, recordio.MEANINGS_FILE)]
    elif len(paths) != 3:
        raise UsageError("import takes a directory or three files: FORMS LEMMAS MEANINGS")
    texts = [_read(p) for p in paths]
    db = recordio.load_database(*texts, codes=cfg.codes, names=tuple(paths))
    for exc in db.errors:
        _err(str(exc))
    for w in db.warnings:
        log.warning(w)
    store = build_store(db)
    try:
        cfg.data_dir.mkdir(parents=True, exist_ok=True)
        store.save(cfg.snapshot)
    except OSError as exc:
        raise UsageError(f"cannot write snapshot: {exc}") from None
    s = store.stats()
    _out(
        f"{s.forms} forms, {s.lemmas} lemmas, {s.meanings} meanings, {s.valency_records} valency records"
        + (f"; {len(db.errors)} errors" if db.errors else "")
    )
    return EXIT_DATA if db.errors else EXIT_OK


def cmd_lookup(cfg: CliConfig, args) -> int:
    store = _open_store(cfg)
    analyses = store.lookup_form(args.surface)
    if cfg.fmt == "json":
        payload = [
            {
                "form": recordio.form_to_json(a.form),
                "chain": [recordio.lemma_to_json(l) for l in a.link_chain],
                "meanings": [render_mng(m) for m in a.meanings],
            }
            for a in analyses
        ]
        _out(json.dumps(payload, ensure_ascii=False, indent=1))
        return EXIT_OK
    if not analyses:
        _out(f"{args.surface}: no analyses")
        return EXIT_OK
    for a in analyses:
        if cfg.fmt == "sld":
            _out(recordio.serialize_form(a.form, cfg.codes))
            for lemma in a.link_chain:
                _out(recordio.serialize_lemma(lemma, cfg.codes))
            continue
        chain = " → ".join(l.basic_form for l in a.link_chain)
        _out(f"{a.form.surface}  {_feature_text(a.form, cfg)}  [{a.lemma.id}] {chain}  {a.resolved_lemma.category_label}")
        for mng in a.meanings:
            _out(f"  {render_mng(mng)}  {_first_line(store.meaning(mng).prf)}")
    return EXIT_OK


def cmd_lemma(cfg: CliConfig, args) -> int:
    store = _open_store(cfg)
    key = args.key
    lemmas = store.lemmas_with_id(int(key)) if key.isdigit() else store.lemmas_named(key)
    if not lemmas:
        _err(f"no lemma {key!r}")
        return EXIT_DATA
    if cfg.fmt == "json":
        _out(json.dumps([recordio.lemma_to_json(l) for l in lemmas], ensure_ascii=False, indent=1))
        return EXIT_OK
    for lemma in lemmas:
        if cfg.fmt == "sld":
            _out(recordio.serialize_lemma(lemma, cfg.codes))
            continue
        line = f"[{lemma.id}] {lemma.basic_form}  {lemma.category_label}"
        if lemma.link_target is not None:
            try:
                target = store.resolve_link(lemma)
                line += f"  → [{target.id}] {target.basic_form}"
            except StoreError as exc:
                line += f"  (broken link: {exc})"
        _out(line)
    return EXIT_OK


def cmd_meanings(cfg: CliConfig, args) -> int:
    store = _open_store(cfg)
    meanings = store.meanings_of(args.lemma_id)
    if cfg.fmt == "json":
        _out(json.dumps([recordio.meaning_to_json(m) for m in meanings], ensure_ascii=False, indent=1))
        return EXIT_OK
    if not meanings:
        _out(f"lemma {args.lemma_id}: no meanings")
        return EXIT_OK
    if cfg.fmt == "sld":
        sys.stdout.write(recordio.dump_meanings(meanings))
        return EXIT_OK
    rows = [[render_mng(m.mng), m.cats, m.vl, _first_line(m.prf)] for m in meanings]
    for line in _table(rows, ["MNG", "CATS", "VL", "PRF"]):
        _out(line)
    return EXIT_OK


def cmd_valency(cfg: CliConfig, args) -> int:
    try:
        mng = parse_mng(args.mng)
    except MngFormatError as exc:
        raise UsageError(str(exc)) from None
    store = _open_store(cfg)
    try:
        frame = store.valency_frame(mng)
    except MeaningNotFound as exc:
        _err(str(exc))
        return EXIT_DATA
    arguments = frame.arguments()
    if cfg.fmt == "json":
        _out(json.dumps([recordio.valency_to_json(a) for a in arguments], ensure_ascii=False, indent=1))
        return EXIT_OK
    if cfg.fmt == "sld":
        for a in arguments:
            _out(recordio.serialize_valency(a))
        return EXIT_OK
    if not arguments:
        _out(f"{render_mng(mng)}: no valency frame")
        return EXIT_OK
    rows = [
        [
            str(a.slot),
            str(a.variant),
            a.fnct,
            a.vcat,
            " ".join(a.rgg) or "-",
            " ".join(a.vmdv) or "-",
            " ".join(a.vsem) or "-",
            "T" if a.opt else "F",
        ]
        for a in arguments
    ]
    _out(f"{render_mng(mng)}  {len(frame.slots)} slots")
    for line in _table(rows, ["SLOT", "VAR", "FNCT", "VCAT", "RGG", "VMDV", "VSEM", "OPT"]):
        _out(line)
    return EXIT_OK


def cmd_scan(cfg: CliConfig, args) -> int:
    text = _read(args.entries)
    results = scan_text(text, args.first_id, cfg.codes)
    lemmas, meanings, forms = [], [], []
    failed = 0
    for result in results:
        if isinstance(result, ScanError):
            _err(f"error: {result}")
            failed += 1
            continue
        lemmas.append(result.lemma)
        meanings.extend(result.meanings)
        forms.extend(result.forms)
        for w in result.warnings:
            _err(f"warning: [{result.lemma.id}] {result.lemma.basic_form}: {w}")
    out = Path(args.out)
    try:
        recordio.write_database(out, forms, lemmas, meanings, cfg.codes)
    except OSError as exc:
        raise UsageError(f"cannot write to {out}: {exc}") from None
    _out(f"{len(lemmas)} entries scanned, {len(meanings)} meanings, {len(forms)} forms -> {out}")
    return EXIT_DATA if failed else EXIT_OK


def cmd_validate(cfg: CliConfig, args) -> int:
    store = _open_store(cfg)
    violations = store.check_integrity()
    if cfg.fmt == "json":
        _out(json.dumps([v.__dict__ for v in violations], ensure_ascii=False, indent=1))
    else:
        for v in violations:
            _out(f"{v.kind}: {v.where}: {v.message}")
        _out(f"{len(violations)} violations")
    return EXIT_DATA if violations else EXIT_OK


def cmd_stats(cfg: CliConfig, args) -> int:
    s = _open_store(cfg).stats()
    counts = {"forms": s.forms, "lemmas": s.lemmas, "meanings": s.meanings, "valency": s.valency_records}
    if cfg.fmt == "json":
        _out(json.dumps(counts))
    else:
        for name, n in counts.items():
            _out(f"{name}: {n}")
    return EXIT_OK


def cmd_export(cfg: CliConfig, args) -> int:
    store = _open_store(cfg)
    if cfg.fmt == "sld":
        if not args.out:
            raise UsageError("export --format sld needs --out DIR")
        try:
            recordio.write_database(args.out, store.forms, store.lemmas, store.meanings, cfg.codes)
        except OSError as exc:
            raise UsageError(f"cannot write to {args.out}: {exc}") from None
        return EXIT_OK
    text = recordio.export_json(store.forms, store.lemmas, store.meanings) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--data-dir",
        default=argparse.SUPPRESS,
        help=f"lexicon directory (default: $SLD_DATA_DIR or ./{DEFAULT_DATA_DIR})",
    )
    common.add_argument("--code-table", default=argparse.SUPPRESS, help="extra code table file (dimension;code;label)")
    common.add_argument("--format", choices=("sld", "json", "table"), default=argparse.SUPPRESS, dest="fmt")
    common.add_argument("--raw", action="store_true", default=argparse.SUPPRESS, help="print feature codes, not labels")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="sld", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("import", parents=[common], help="parse .sld files and snapshot the lexicon")
    p.add_argument("paths", nargs="+", metavar="PATH", help="a directory, or FORMS LEMMAS MEANINGS files")
    p.set_defaults(func=cmd_import)

    p = sub.add_parser("lookup", parents=[common], help="analyses of an inflected form")
    p.add_argument("surface")
    p.set_defaults(func=cmd_lookup)

    p = sub.add_parser("lemma", parents=[common], help="lemma records by ID or basic form")
    p.add_argument("key")
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("meanings", parents=[common], help="senses of a lemma")
    p.add_argument("lemma_id", type=int)
    p.set_defaults(func=cmd_meanings)

    p = sub.add_parser("valency", parents=[common], help="argument frame of a meaning, e.g. 23293.01")
    p.add_argument("mng")
    p.set_defaults(func=cmd_valency)

    p = sub.add_parser("scan", parents=[common], help="formalize dictionary entries into .sld files")
    p.add_argument("entries", help="text file, one entry per blank-line separated block")
    p.add_argument("--first-id", type=int, default=1, help="lemma ID of the first entry")
    p.add_argument("--out", default=".", help="directory for the .sld files")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("validate", parents=[common], help="cross-record integrity checks")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("stats", parents=[common], help="record counts")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("export", parents=[common], help="dump the lexicon as JSON or .sld")
    p.add_argument("--out", help="output file (json) or directory (sld)")
    p.set_defaults(func=cmd_export)
    return parser


def _config(args) -> CliConfig:
    data_dir = getattr(args, "data_dir", None) or os.environ.get("SLD_DATA_DIR") or DEFAULT_DATA_DIR
    codes = default_codes()
    table = getattr(args, "code_table", None)
    if table:
        try:
            codes = CodeTable.load(table)
        except OSError as exc:
            raise UsageError(f"cannot read code table: {exc}") from None
    fmt = getattr(args, "fmt", None)
    if fmt is None:
        fmt = "json" if args.command == "export" else "table"
    return CliConfig(Path(data_dir), codes, fmt, getattr(args, "raw", False), getattr(args, "verbose", False))


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    verbose = getattr(args, "verbose", False)
    logging.basicConfig(level=logging.INFO if verbose else logging.ERROR, format="%(levelname)s: %(message)s")
    try:
        cfg = _config(args)
        return args.func(cfg, args)
    except UsageError as exc:
        _err(f"sld: {exc}")
        return EXIT_USAGE
    except CodeTableError as exc:
        _err(f"sld: {exc}")
        return EXIT_DATA
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
