import sys

from ratcont.cli import main

sys.exit(main())
