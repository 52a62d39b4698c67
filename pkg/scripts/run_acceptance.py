"""Print the eleven acceptance lines (same checks as tests/test_acceptance.py)."""
import runpy
import sys
from pathlib import Path

if __name__ == "__main__":
    sys.argv = [sys.argv[0]]
    runpy.run_path(str(Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"), run_name="__main__")
