# encoding: utf-8

"""JSON space documents loader for testing purposes."""

import os


class LazyResponder(object):
    """Loads and caches fixtures files by name from fixture directory.
    Provides access to all the fixtures in a directory by a standardized
    mapping of the file name, e.g. two-blocks.json is available as the
    `.TWO_BLOCKS` attribute of the loader.

    The fixture directory is specified relative to this (fixture root) directory.
    """

    def __init__(self, relpath):
        self._relpath = relpath
        self._cache = {}

    def __getattr__(self, fixture_name):
        if fixture_name not in self._cache:
            self._load_to_cache(fixture_name)
        return self._cache[fixture_name]

    @property
    def _dirpath(self):
        thisdir = os.path.dirname(os.path.abspath(__file__))
        return os.path.abspath(os.path.join(thisdir, self._relpath))


class LazySpaceDocumentLoader(LazyResponder):
    """Specific class for space document fixtures: attributes are file paths"""

    def _json_path(self, fixture_name):
        return "%s/%s.json" % (self._dirpath, fixture_name.replace("_", "-").lower())

    def _load_to_cache(self, fixture_name):
        json_path = self._json_path(fixture_name)
        if not os.path.exists(json_path):
            raise ValueError("no space document fixture found at %s" % json_path)
        self._cache[fixture_name] = json_path


SPACES = LazySpaceDocumentLoader("./spaces")
