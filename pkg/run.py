"""Run the adaregret command line."""

import sys

from adaregret.main import main

if __name__ == "__main__":
    sys.exit(main())
