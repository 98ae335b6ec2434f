from lostpos.cli import main
import sys

sys.exit(main())
