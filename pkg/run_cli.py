#!/usr/bin/env python
"""
Convenience script to run the quadlat CLI from project root.

Usage:
    python run_cli.py verify --gen --seed 42 --count 200 --report out.json
    python run_cli.py invariants --gram '[[1,0,0],[0,1,0],[0,0,1]]'
    python run_cli.py gen --seed 7 --count 10 -o corpus.json
"""
import sys
from pathlib import Path

# Ensure project root is in path
project_root = Path(__file__).resolve().parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

if __name__ == '__main__':
    from src.quadlat.cli.run import main
    sys.exit(main())
