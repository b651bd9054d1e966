#!/usr/bin/env python3
"""
Runs every test_*.py module in this directory
"""

import os
import sys
import unittest

if __name__ == '__main__':
    here = os.path.dirname(os.path.abspath(__file__))
    suite = unittest.defaultTestLoader.discover(here, pattern='test_*.py', top_level_dir=here)
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    sys.exit(0 if result.wasSuccessful() else 1)
