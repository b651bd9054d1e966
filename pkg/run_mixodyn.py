#!/usr/bin/env python3
"""
Mixodyn Entry Point
"""

import logging
import sys

from mixodyn.config.settings import settings
from mixodyn.main import parse_and_dispatch

# Set up logging
logging.basicConfig(
    level=getattr(logging, settings.LOG_LEVEL, logging.INFO),
    format='%(asctime)s - %(levelname)s - %(message)s'
)

if __name__ == "__main__":
    sys.exit(parse_and_dispatch(sys.argv[1:]))
