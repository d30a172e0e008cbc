"""Allow `python -m tiltval`."""

import sys

from .cli import main

sys.exit(main())
