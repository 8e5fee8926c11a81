#!/usr/bin/env python3
"""
Startup script for the simplex-spectra command line
"""
import sys

from simplex_spectra.main import main

if __name__ == "__main__":
    sys.exit(main())
