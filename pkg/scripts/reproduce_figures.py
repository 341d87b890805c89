"""Emit every figure data set into one directory tree.

    python3 scripts/reproduce_figures.py [out_root]

Each CLI command gets its own subdirectory; the noise spectrum is also
written at T = 0 and T = 1 K so both the quantum and classical regimes are
available.
"""

import sys
from pathlib import Path

from qubit_decoherence import cli

RUNS = [
    ("bath", "bath", []),
    ("noise", "noise_10mK", []),
    ("noise", "noise_0K", ["--temperature", "0"]),
    ("noise", "noise_1K", ["--temperature", "1"]),
    ("rates", "rates", []),
    ("evolve", "evolve", []),
]


def main(out_root="figures"):
    root = Path(out_root)
    for command, sub, extra in RUNS:
        print(f"== {command} -> {root / sub}")
        code = cli.main([command, "--out-dir", str(root / sub), *extra])
        if code:
            return code
    return cli.main(["verify", "--out-dir", str(root / "verify")])


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:]))
