import sys

from tspread.main import main

sys.exit(main())
