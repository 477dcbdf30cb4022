import sys

from a1tk.cli import main

sys.exit(main())
