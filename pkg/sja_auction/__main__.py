"""Main entry point when running as module."""

import sys

from dotenv import load_dotenv

# SJA_* settings may live in a .env file
load_dotenv()

from .cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
