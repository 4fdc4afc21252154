import sys

from patchsurvival.cli import main

sys.exit(main())
