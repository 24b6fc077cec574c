#!/usr/bin/env python3
import sys

from src.cli.embed import main

if __name__ == "__main__":
    sys.exit(main(["check", *sys.argv[1:]]))
