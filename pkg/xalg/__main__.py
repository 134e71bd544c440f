import sys

from xalg.cli import main

sys.exit(main())
