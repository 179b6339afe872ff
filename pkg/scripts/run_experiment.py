#!/usr/bin/env python3
# scripts/run_experiment.py

"""
Usage:
    # Uplink SE curves, Monte Carlo against closed form
    python scripts/run_experiment.py --config scenarios/fig2_cell.json --experiment fig2 --trials 200

    # Per-antenna power distribution, MRC only
    python scripts/run_experiment.py --config paper_cell --experiment fig3 --processing mrc

    # Property checks (exit code 1 if any fails)
    python scripts/run_experiment.py --config paper_cell --experiment validation --samples 200000
"""

import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from onebit.harness.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
