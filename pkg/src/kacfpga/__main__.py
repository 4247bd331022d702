import sys

from kacfpga.cli import main

sys.exit(main())
