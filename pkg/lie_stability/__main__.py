import sys

from lie_stability.cli.main import main

sys.exit(main())
