#!/usr/bin/env python3
"""Run the CLI twice with identical flags and require byte-identical JSON
after dropping the runtime-metadata block."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path


def run_once(binary: str, out_path: Path) -> None:
    subprocess.run(
        [
            binary, "run",
            "--experiment", "at8",
            "--scale", "desk",
            "--master-seed", "7",
            "--workers", "2",
            "--out", str(out_path),
        ],
        check=True,
    )


def canonical(path: Path) -> str:
    doc = json.loads(path.read_text())
    doc.pop("meta", None)
    return json.dumps(doc, sort_keys=True)


def main() -> int:
    binary = sys.argv[1]
    with tempfile.TemporaryDirectory() as tmp:
        a, b = Path(tmp) / "a.json", Path(tmp) / "b.json"
        run_once(binary, a)
        run_once(binary, b)
        if canonical(a) != canonical(b):
            print("FAIL: repeated runs differ outside the meta block")
            return 1
    bad = subprocess.run([binary, "run", "--experiment", "at99"], capture_output=True)
    if bad.returncode != 2:
        print(f"FAIL: unknown experiment exited {bad.returncode}, expected 2")
        return 1
    print("PASS: deterministic output and usage-error exit code")
    return 0


if __name__ == "__main__":
    sys.exit(main())
