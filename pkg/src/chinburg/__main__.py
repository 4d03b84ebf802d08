import sys

from chinburg.cli import main

sys.exit(main())
