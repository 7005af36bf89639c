"""Run the ``birkhoff`` command line from a source checkout."""

import sys

from birkhoff_app.cli import main

if __name__ == "__main__":
    sys.exit(main())
