import sys

from helifront.cli import main

sys.exit(main())
