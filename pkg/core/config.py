import os
from typing import Optional
from dataclasses import dataclass
from dotenv import load_dotenv

load_dotenv(os.path.join(os.path.dirname(__file__), os.pardir, ".env"))

@dataclass
class Config:
    """Configuration class for the polygon area workbench"""

    # Numerical tolerances
    CLASSIFY_TOL: float = float(os.getenv('CLASSIFY_TOL', 1e-9))   # sup-norm of the gradient
    EIGEN_TOL: float = float(os.getenv('EIGEN_TOL', 1e-9))         # per-eigenvalue matching
    CRITICAL_VALUE_TOL: float = float(os.getenv('CRITICAL_VALUE_TOL', 1e-12))

    # Torus search defaults
    NEWTON_TOL: float = float(os.getenv('NEWTON_TOL', 1e-12))
    NEWTON_MAX_ITERS: int = int(os.getenv('NEWTON_MAX_ITERS', 100))
    CLUSTER_RADIUS: float = float(os.getenv('CLUSTER_RADIUS', 1e-6))
    SEARCH_THREADS: int = int(os.getenv('WORKBENCH_THREADS', os.cpu_count() or 1))
    SEARCH_CHUNK: int = int(os.getenv('SEARCH_CHUNK', 20000))
    SEARCH_SEED: int = int(os.getenv('SEARCH_SEED', 42))

    # Resource guards for the exact computations
    MAX_ELK_N: int = int(os.getenv('MAX_ELK_N', 11))
    MAX_RELATIONS_N: int = int(os.getenv('MAX_RELATIONS_N', 9))
    MAX_SPECTRUM_M: int = int(os.getenv('MAX_SPECTRUM_M', 5))

    # Reporting
    LOG_LEVEL: str = os.getenv('LOG_LEVEL', 'INFO')
    REPORT_INDENT: int = int(os.getenv('REPORT_INDENT', 2))

    # Start counts that recover every isolated critical point
    DEFAULT_STARTS = {3: 2000, 4: 5000, 5: 20000, 6: 60000, 7: 200000}

    @classmethod
    def default_starts(cls, n: int) -> int:
        """Number of random starts for a search on the (n-1)-torus."""
        if n in cls.DEFAULT_STARTS:
            return cls.DEFAULT_STARTS[n]
        return cls.DEFAULT_STARTS[max(cls.DEFAULT_STARTS)] if n > max(cls.DEFAULT_STARTS) else cls.DEFAULT_STARTS[3]

    @classmethod
    def load_from_env(cls, env_file: Optional[str] = None) -> 'Config':
        """Load configuration from environment file"""
        if env_file:
            env_path = os.path.join(os.path.dirname(__file__), os.pardir, env_file)
            if os.path.exists(env_path):
                load_dotenv(env_path)
        return cls()

# Global config instance
config = Config.load_from_env('.env')
