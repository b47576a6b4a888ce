"""Allow ``python -m lagmatch`` as an alias for the ``lagmatch`` script."""

import sys

from .cli import main

sys.exit(main())
