import sys

from ergodic_rl.cli.main import main

sys.exit(main())
