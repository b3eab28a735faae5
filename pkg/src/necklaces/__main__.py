import sys

from necklaces.cli import main

sys.exit(main())
