import sys

from threshold_cumulants.cli import main

sys.exit(main())
