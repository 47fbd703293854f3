import sys

from .scenario import main

if __name__ == "__main__":
    sys.exit(main())
