#!/usr/bin/env python

import sys

import pytest

sys.exit(pytest.main(['tests'] + sys.argv[1:]))
