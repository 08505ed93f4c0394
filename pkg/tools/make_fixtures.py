"""Regenerate the bundled regression fixtures from the current code.

Only run this after the values have been checked independently; the
fixtures exist to catch silent drift.
"""

import json
import sys
from pathlib import Path

from relaxedchar.cli import FIXTURE_DIR, run_capture

FIXTURES = {
    "oracle_a1_vacuum": ["check", "oracle", "--rank", "1", "--level", "-1/2", "--weight", "[0]", "--depth", "4", "--window", "5"],
    "oracle_a1_half": ["check", "oracle", "--rank", "1", "--level", "-1/2", "--weight", "[-1/2]", "--depth", "4", "--window", "5"],
    "oracle_rank_a1": ["oracle", "rank", "--rank", "1", "--level", "-1/2", "--weight", "[0]", "--offset", "[1]", "--depth", "3"],
    "spectrum_a2_p3": ["list", "admissible", "--rank", "2", "--level", "-3/2"],
    "spectrum_a2_p5": ["list", "admissible", "--rank", "2", "--level", "-1/2"],
    "modular_span_a2_p3": ["check", "modular-span", "--rank", "2", "--level", "-3/2"],
    "modular_span_a2_p5": ["check", "modular-span", "--rank", "2", "--level", "-1/2"],
    "w_char_a2_p5": ["char", "w-ord", "--rank", "2", "--level", "-1/2", "--weight", "[1,-5/2]", "--order", "10"],
    "kl_table_a1_vacuum": ["kl", "table", "--rank", "1", "--level", "-1/2", "--weight", "[0]", "--bound", "10"],
    "relaxed_verma_a1": ["char", "verma", "--rank", "1", "--level", "-1/2", "--weight", "[0]", "--order", "3"],
}


def main(names):
    FIXTURE_DIR.mkdir(exist_ok=True)
    for name, argv in FIXTURES.items():
        if names and name not in names:
            continue
        out = json.loads(run_capture(argv))
        path = Path(FIXTURE_DIR, f"{name}.json")
        path.write_text(json.dumps({"argv": argv, "expected": out}, indent=2, sort_keys=True) + "\n")
        print("wrote", path)


if __name__ == "__main__":
    main(sys.argv[1:])
