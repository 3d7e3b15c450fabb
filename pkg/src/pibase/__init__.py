# encoding: utf-8

# Versioning convention
# https://www.python.org/dev/peps/pep-0440/
__version__ = "0.1.0a"
