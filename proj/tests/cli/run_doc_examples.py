#!/usr/bin/env python3
# Runs every `$ finmono ...` line in the README and checks the `# expect:` line after it.
#
#   $ finmono bound --family as --p 2 --nvar 3
#   # expect: exit=0 N=40 bound.theorem=eigen-curve
#
# Keys other than `exit` are dotted paths into the JSON the command prints (or
# writes with --out). Values are parsed as JSON when possible, else compared as text.

import argparse
import json
import os
import shlex
import subprocess
import sys
import tempfile


def examples(readme):
    lines = open(readme, encoding="utf-8").read().splitlines()
    out = []
    for i, line in enumerate(lines):
        s = line.strip()
        if not s.startswith("$ finmono"):
            continue
        expect = lines[i + 1].strip() if i + 1 < len(lines) else ""
        if not expect.startswith("# expect:"):
            raise SystemExit(f"README line {i + 1}: command without '# expect:' line")
        out.append((i + 1, s[2:], expect[len("# expect:"):].split()))
    return out


def lookup(doc, path):
    cur = doc
    for part in path.split("."):
        if isinstance(cur, list):
            cur = cur[int(part)]
        else:
            cur = cur[part]
    return cur


def literal(text):
    try:
        return json.loads(text)
    except ValueError:
        return text


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--finmono", required=True)
    ap.add_argument("--readme", required=True)
    ap.add_argument("--repo", required=True)
    args = ap.parse_args()

    cases = examples(args.readme)
    if not cases:
        print("no examples found")
        return 1
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for lineno, cmd, expects in cases:
            argv = shlex.split(cmd)
            argv[0] = args.finmono
            argv = [os.path.join(args.repo, a) if a.startswith("tests/data/") else a for a in argv]
            proc = subprocess.run(argv, cwd=tmp, capture_output=True, text=True, timeout=600)
            doc = None
            if "--out" in argv:
                with open(os.path.join(tmp, argv[argv.index("--out") + 1]), encoding="utf-8") as f:
                    doc = json.load(f)
            elif proc.stdout.strip().startswith("{"):
                doc = json.loads(proc.stdout)
            problems = []
            for item in expects:
                key, _, want = item.partition("=")
                if key == "exit":
                    if proc.returncode != int(want):
                        problems.append(f"exit {proc.returncode} != {want}")
                    continue
                if doc is None:
                    problems.append(f"{key}: no JSON output")
                    continue
                try:
                    got = lookup(doc, key)
                except (KeyError, IndexError, ValueError, TypeError):
                    problems.append(f"{key}: missing")
                    continue
                if got != literal(want):
                    problems.append(f"{key}: {json.dumps(got)} != {want}")
            status = "ok" if not problems else "FAILED " + "; ".join(problems)
            print(f"README:{lineno}: {cmd}: {status}")
            if problems:
                failures += 1
                if proc.stderr:
                    print(proc.stderr.rstrip())
    print(f"{len(cases) - failures}/{len(cases)} examples passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
