"""Regenerate the committed convergence traces: ``python3 tests/make_golden.py``."""

from __future__ import annotations

from pathlib import Path

from localmatch import ImproverConfig, OracleConfig, run_convergence_experiment

GOLDEN_SIZES = [100, 1000, 10000]
GOLDEN_CFG = OracleConfig(ImproverConfig(T=3, phases=3, seed=0))
GOLDEN_EPS = 0.1
GOLDEN_DELTA = 0.1
DATA = Path(__file__).parent / "data"


def golden_trace(family: str):
    return run_convergence_experiment(family, GOLDEN_SIZES, 2, GOLDEN_CFG, True, GOLDEN_EPS, GOLDEN_DELTA)


if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    for family in ("cycle", "path"):
        (DATA / f"converge_{family}.jsonl").write_text(golden_trace(family).to_jsonl())
