"""Regenerate the golden spec documents and classify reports under tests/golden."""
import json
import sys
from pathlib import Path

from wcop.cli import RunOptions, generate_example, parse_spec, run_classify

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"

SPECS = {
    "s1": {"kind": "finite", "field": "rational",
           "masses": ["1", "2", "1"], "phi": [0, 0, 1], "usq": ["1", "1", "4"]},
    "identity": generate_example("identity"),
    "dirichlet8": generate_example("dirichlet", ["8"]),
    "star_tail": generate_example("star-tail", ["1", "1"]),
}


def main() -> int:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, spec in SPECS.items():
        (GOLDEN / f"{name}.spec.json").write_text(json.dumps(spec, indent=2) + "\n")
        system, options = parse_spec(spec)
        doc, status = run_classify(system, options)
        (GOLDEN / f"{name}.report.json").write_text(json.dumps(doc, indent=2) + "\n")
        print(f"{name}: exit {status}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
