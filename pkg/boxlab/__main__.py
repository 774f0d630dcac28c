import sys

from boxlab.cli import main

sys.exit(main())
