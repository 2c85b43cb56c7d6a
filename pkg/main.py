# main.py

import sys

from lrc.cli import main

# e.g. python main.py analyze --spec data/example_spec.json
if __name__ == "__main__":
    sys.exit(main())
