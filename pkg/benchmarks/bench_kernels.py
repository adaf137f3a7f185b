"""Compare the compiled and pure-Python record tokenizers.

    python benchmarks/bench_kernels.py [--lines N] [--repeat R]

Reports per-line cost of each kernel for every available backend, then the
end-to-end Forms import with the default backend and with the fallback
forced through SYNTAGMA_PURE_PYTHON.
"""

import argparse
import os
import subprocess
import sys
import timeit

from syntagma import kernels

FORM = '5238; 1; 1; 1; 0; 1; "bramo"; "";'
NOMINAL = '37; f.; pl. ; "abbadie"; "lnk";'
MEANING_BODY = (
    'MNG 40.01; LEX "abbagliare"; LEX2; PRON "[ab-ba-glià-re]"; DISC 40; WN; CAT 100; CATS "v.tr."; '
    'GEN 0; NUM 0; MORF; AUX "avere"; TRN 2; RFL 0; CTRL F; REG; ALIAS; SYN; CNTR; IDIOM; SEM; REF; '
    'RESTR; VL "[subj-v-arg]"; EXE ("abbagliare un automobilista" "la lampada mi abbaglia"); ETM; CIT; MLG;'
)
VALENCY_BODY = "FNCT obj; VCAT C; VLEX; RGG (\"che\"); OPT F; VMDV (ind cnd cong); VTMP; VPRS; VSEM; VREF; VRESTR;"

CASES = [
    ("split_fields/form", "split_fields", FORM),
    ("split_fields/nominal", "split_fields", NOMINAL),
    ("split_pairs/meaning", "split_pairs", MEANING_BODY),
    ("split_pairs/valency", "split_pairs", VALENCY_BODY),
    ("form_fields/form", "form_fields", FORM),
]

IMPORT_SCRIPT = """
import time
from syntagma import kernels
from syntagma.recordio import load_database
line = {line!r} + "\\n"
text = line * {n}
t = time.perf_counter()
db = load_database(text, None, None)
print(kernels.BACKEND, time.perf_counter() - t, len(db.forms))
"""


def bench_kernels(repeat: int, number: int) -> None:
    backends = kernels.backends()
    names = sorted(backends)
    print(f"{'case':24}" + "".join(f"{n:>14}" for n in names) + ("       speedup" if len(names) > 1 else ""))
    for label, fn_name, arg in CASES:
        cost = {}
        for name in names:
            fn = getattr(backends[name], fn_name)
            cost[name] = min(timeit.repeat(lambda: fn(arg), repeat=repeat, number=number)) / number
        row = f"{label:24}" + "".join(f"{cost[n] * 1e9:>11.0f} ns" for n in names)
        if "cython" in cost:
            row += f"{cost['python'] / cost['cython']:>13.1f}x"
        print(row)


def bench_import(n: int) -> None:
    for forced in (False, True):
        env = dict(os.environ)
        env.pop("SYNTAGMA_PURE_PYTHON", None)
        if forced:
            env["SYNTAGMA_PURE_PYTHON"] = "1"
        out = subprocess.run(
            [sys.executable, "-c", IMPORT_SCRIPT.format(line=FORM, n=n)],
            env=env, capture_output=True, text=True, check=True,
        ).stdout.split()
        backend, seconds, count = out[0], float(out[1]), int(out[2])
        print(f"import {count} forms with {backend:7}: {seconds:.2f} s ({seconds / count * 1e6:.2f} us/line)")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--lines", type=int, default=300_000, help="forms lines for the import run")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--number", type=int, default=20_000)
    args = parser.parse_args()
    print(f"default backend: {kernels.BACKEND}")
    bench_kernels(args.repeat, args.number)
    bench_import(args.lines)


if __name__ == "__main__":
    main()
