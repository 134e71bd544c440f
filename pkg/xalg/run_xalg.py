#!/usr/bin/env python
"""
Run xalg without installing it, e.g. ``python xalg/run_xalg.py catalog``.
"""

import sys
from pathlib import Path

# project root on the path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from xalg.cli import main

if __name__ == '__main__':
    sys.exit(main())
