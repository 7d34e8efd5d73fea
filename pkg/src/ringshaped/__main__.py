import sys

from ringshaped.cli import main

sys.exit(main())
