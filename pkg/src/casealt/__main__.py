import sys

from casealt.cli import main

sys.exit(main())
