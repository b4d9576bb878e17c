"""A content-addressed, append-only store for oracle results."""
import hashlib
import json
import logging
import os
import tempfile

from .misc import canonical_json

logger = logging.getLogger(__name__)

def cache_key(**fields):
    """Return the SHA-256 hex digest of the canonical JSON of `fields`."""
    return hashlib.sha256(canonical_json(fields).encode('utf-8')).hexdigest()

class ResultCache():
    """One JSON document per key under a root directory.

    Attributes
    ----------
    root : str
        directory holding the cache; documents live in two-character fan-out
        subdirectories named after the key prefix

    Notes
    -----
    Writes go to a temporary file in the target directory followed by
    `os.replace`, so readers never observe partial documents. Existing keys
    are never rewritten.
    """
    root = None

    def __init__(self, root):
        if not root:
            raise ValueError('root should be a non-empty path.')
        self.root = str(root)

    def path(self, key):
        return os.path.join(self.root, key[:2], key + '.json')

    def get(self, key):
        """Return the stored document for `key`, or None on a miss."""
        path = self.path(key)
        try:
            with open(path, 'r') as f:
                doc = json.load(f)
        except (IOError, OSError):
            logger.debug('cache miss %s', key[:12])
            return None
        except ValueError:
            logger.warning('ignoring undecodable cache entry %s', path)
            return None
        logger.debug('cache hit %s', key[:12])
        return doc

    def put(self, key, doc):
        """Store `doc` under `key` unless the key is already present.

        Returns
        -------
        written : bool
            True if a new document was written
        """
        path = self.path(key)
        if os.path.exists(path):
            return False
        directory = os.path.dirname(path)
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, suffix='.tmp')
        try:
            with os.fdopen(fd, 'w') as f:
                f.write(canonical_json(doc))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.remove(tmp)
            raise
        logger.debug('cache store %s', key[:12])
        return True

    def fetch(self, compute, **fields):
        """Return the cached value for `fields`, computing it on a miss.

        Parameters
        ----------
        compute : function
            called with no arguments on a miss; must return JSON-serialisable
            data
        fields : dict
            the key fields, e.g. operation, spec, q, n and version
        """
        key = cache_key(**fields)
        doc = self.get(key)
        if doc is not None and doc.get('key') == fields:
            return doc['value']
        value = compute()
        self.put(key, {'key': fields, 'value': value})
        return value
