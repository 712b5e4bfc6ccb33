"""Entry point for the sipkit command line."""

import sys

from sipkit.ui.app import run


def main() -> None:
    """Main entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
