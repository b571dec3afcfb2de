import sys

from .cli import main

try:
    sys.exit(main())
except BrokenPipeError as exc:
    sys.exit(exc.errno)
