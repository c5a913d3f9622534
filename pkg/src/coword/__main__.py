from coword.cli import main
import sys

sys.exit(main())
