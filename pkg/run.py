"""
Script to run the Dogfight Search toolkit.

    python run.py run experiments/example.ini --runs 5 --out results/demo
    python run.py timing
"""

import sys

from dogfight.main import main

if __name__ == "__main__":
    sys.exit(main())
