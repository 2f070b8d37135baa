from .torus_search import SearchConfig, match_catalog, multistart_search

__all__ = ['SearchConfig', 'match_catalog', 'multistart_search']
