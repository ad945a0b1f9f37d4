#!/usr/bin/env python3
"""Run the acceptance binary and compare its verdicts with known_failures.txt."""
import argparse
import re
import subprocess
import sys

LINE = re.compile(r"^(PASS|FAIL) (\d+) ")


def load_known(path):
    known = {}
    with open(path) as f:
        for raw in f:
            raw = raw.strip()
            if not raw or raw.startswith("#"):
                continue
            ident, _, needle = raw.partition(" ")
            known[int(ident)] = needle.strip()
    return known


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--binary", required=True)
    ap.add_argument("--known", required=True)
    ap.add_argument("--count", type=int, default=10)
    args = ap.parse_args()

    proc = subprocess.run([args.binary], capture_output=True, text=True)
    sys.stdout.write(proc.stdout)
    sys.stderr.write(proc.stderr)
    known = load_known(args.known)

    seen = {}
    for line in proc.stdout.splitlines():
        m = LINE.match(line)
        if m:
            seen[int(m.group(2))] = (m.group(1), line)

    problems = []
    for ident in range(1, args.count + 1):
        if ident not in seen:
            problems.append(f"criterion {ident}: no verdict line")
            continue
        verdict, line = seen[ident]
        if ident in known:
            if verdict == "PASS":
                problems.append(f"criterion {ident}: listed as a known failure but passed; update {args.known}")
            elif known[ident] not in line:
                problems.append(f"criterion {ident}: failed for an unexpected reason")
        elif verdict != "PASS":
            problems.append(f"criterion {ident}: unexpected failure")
    if proc.returncode != len(known):
        problems.append(f"exit status {proc.returncode}, expected {len(known)}")

    for p in problems:
        print("check_acceptance: " + p)
    if not problems:
        print(f"check_acceptance: {args.count - len(known)} passed, known failures {sorted(known)} as recorded")
    return 1 if problems else 0


if __name__ == "__main__":
    sys.exit(main())
