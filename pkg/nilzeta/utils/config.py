"""Run configuration: defaults, environment overrides and validation."""
import os
from dataclasses import dataclass, field, replace

ALLOWED_PRIMES = (2, 3, 5)
MAX_ORDER = 24
DEFAULT_BUDGET = 2 * 10**7
DEFAULT_WEIGHT_BUDGET = 60000
DEFAULT_LEMMA_ORDER = 40

ENV_CACHE_DIR = 'NILZETA_CACHE_DIR'
ENV_WORKERS = 'NILZETA_WORKERS'
ENV_BUDGET = 'NILZETA_BUDGET'

def default_cache_dir():
    """Return the cache directory, honouring NILZETA_CACHE_DIR."""
    path = os.environ.get(ENV_CACHE_DIR)
    if path:
        return path
    return os.path.join(os.path.expanduser('~'), '.cache', 'nilzeta')

def _env_int(name, default):
    value = os.environ.get(name)
    if value is None or value == '':
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError('environment variable {} should be an integer, '
                         'got {!r}.'.format(name, value))

@dataclass(frozen=True)
class RunConfig:
    """Settings shared by the CLI and the verification drivers.

    Attributes
    ----------
    group : str
        group selector, one of 'F22', 'F23', 'F24', or None
    primes : tuple
        primes the run may use; a subset of (2, 3, 5)
    max_order : int
        largest truncation order for series output
    lemma_order : int
        truncation order for the lemma-suite series identities
    budget : int
        enumeration budget in lattices
    weight_budget : int
        largest lift-parameter space scanned by the weight-lemma checks
    allow_large_budget : bool
        permit `budget` above the default ceiling
    cache_dir : str
        directory of the content-addressed result cache
    use_cache : bool
        whether oracle results are read from and written to the cache
    output : str
        'text' or 'json'
    workers : int
        number of worker processes for partitioned enumerations
    """
    group: str = None
    primes: tuple = ALLOWED_PRIMES
    max_order: int = MAX_ORDER
    lemma_order: int = DEFAULT_LEMMA_ORDER
    budget: int = field(default_factory=lambda: _env_int(ENV_BUDGET,
                                                         DEFAULT_BUDGET))
    weight_budget: int = DEFAULT_WEIGHT_BUDGET
    allow_large_budget: bool = False
    cache_dir: str = field(default_factory=default_cache_dir)
    use_cache: bool = True
    output: str = 'text'
    workers: int = field(default_factory=lambda: _env_int(ENV_WORKERS, 1))

    def validate(self):
        """Check the invariants of the configuration and return it.

        Raises
        ------
        ValueError
            if a prime is outside (2, 3, 5), the order exceeds 24, the budget
            exceeds its ceiling without `allow_large_budget`, `workers` is not
            positive, or `output` is unknown
        """
        bad = [q for q in self.primes if q not in ALLOWED_PRIMES]
        if bad:
            raise ValueError('primes should be drawn from {}, got {}.'.format(
                ALLOWED_PRIMES, bad))
        if not 0 <= self.max_order <= MAX_ORDER:
            raise ValueError('max_order should be between 0 and {}.'.format(
                MAX_ORDER))
        if self.lemma_order < 1:
            raise ValueError('lemma_order should be positive.')
        if self.budget < 1:
            raise ValueError('budget should be positive.')
        if self.budget > DEFAULT_BUDGET and not self.allow_large_budget:
            raise ValueError('budget {} exceeds {}; pass allow_large_budget to '
                             'override.'.format(self.budget, DEFAULT_BUDGET))
        if self.weight_budget < 1:
            raise ValueError('weight_budget should be positive.')
        if self.workers < 1:
            raise ValueError('workers should be at least 1.')
        if self.output not in ('text', 'json'):
            raise ValueError("output should be 'text' or 'json'.")
        if self.group is not None and self.group not in ('F22', 'F23', 'F24'):
            raise ValueError('unknown group {!r}.'.format(self.group))
        return self

    @classmethod
    def from_args(cls, args):
        """Build a validated RunConfig from an argparse namespace.

        Flags that are absent or None fall back to the environment and then to
        the dataclass defaults.
        """
        cfg = cls()
        updates = {}
        for name in ('group', 'budget', 'weight_budget', 'cache_dir',
                     'workers', 'max_order', 'lemma_order'):
            value = getattr(args, name, None)
            if value is not None:
                updates[name] = value
        if getattr(args, 'json', False):
            updates['output'] = 'json'
        if getattr(args, 'no_cache', False):
            updates['use_cache'] = False
        if getattr(args, 'allow_large_budget', False):
            updates['allow_large_budget'] = True
        primes = getattr(args, 'primes', None)
        if primes:
            updates['primes'] = tuple(primes)
        return replace(cfg, **updates).validate()
