#!/usr/bin/env python
"""Quick script to check what's in the journal."""
import sys

from src.config_manager import ConfigManager
from src.database import Database

config = ConfigManager()
db = Database(sys.argv[1] if len(sys.argv) > 1 else config.get('journal_path', 'data/homcheck.db'))

runs = db.recent_runs(limit=10)
print(f"\n=== Recent Runs: {len(runs)} ===")
for run in runs:
    status = "PASS" if run['passed'] else "FAIL"
    digest = run['map_digest'][:12] if run['map_digest'] else "-"
    print(f"  #{run['id']} {run['command']:<9} [{status}] seed={run['seed']} tol={run['tolerance']} map={digest}")
    print(f"    at {run['created_at']:%Y-%m-%d %H:%M:%S}")

    counterexamples = db.counterexamples_for(run['id'])
    for c in counterexamples[:3]:
        residual = "raised" if c['residual'] is None else f"{c['residual']:.3e}"
        print(f"    - trial {c['trial']} (seed {c['trial_seed']}): {c['invariant']} {residual}")
        print(f"      {c['description'][:70]}")
    if len(counterexamples) > 3:
        print(f"    ... {len(counterexamples) - 3} more")
