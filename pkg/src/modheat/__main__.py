"""Entry point for ``python -m modheat``."""

import sys

from .cli.commands import main

sys.exit(main())
