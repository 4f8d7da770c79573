import sys

from padicfe.cli import main

sys.exit(main())
