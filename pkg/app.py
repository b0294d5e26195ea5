"""Command-line launcher.

This keeps both entry commands working:
- `python app.py <verb> ...`
- `python -m epistemic_workbench.cli <verb> ...` (with `backend/` on the path)
"""

import sys
from pathlib import Path

BACKEND = Path(__file__).resolve().parent / "backend"
if str(BACKEND) not in sys.path:
    sys.path.insert(0, str(BACKEND))

from epistemic_workbench.cli import main  # noqa: E402


if __name__ == "__main__":
    raise SystemExit(main())
