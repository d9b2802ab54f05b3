#!/usr/bin/env python
"""Entry point for the checker.

Usage:
    python run.py norm element.json --method bisect
    python run.py verify map.json --trials 200 --seed 3
    python run.py decompose map.json --emit-parts parts/
    python run.py fuzz --trials 500 --seed 42 --max-dim 3
"""
import sys
import os

# Add src to path for direct execution
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
