import os

from dotenv import load_dotenv

load_dotenv()

# Free Lie algebra budgets: refuse a degree with more tensor words or basis elements
MAX_WORDS = int(os.getenv("RF_MAX_WORDS", 2_000_000))
MAX_BASIS = int(os.getenv("RF_MAX_BASIS", 40_000))

# Largest homology degree n the Lie-model route attempts (rk pi_{n+1})
MAX_HOMOLOGY_DEGREE = int(os.getenv("RF_MAX_HOMOLOGY_DEGREE", 8))

# Logging / progress
LOG_LEVEL = os.getenv("RF_LOG_LEVEL", "WARNING").upper()
PROGRESS = os.getenv("RF_PROGRESS", "false").strip().lower() in ("1", "true", "yes")

# Thread pool width for cross-method checks
WORKERS = int(os.getenv("RF_WORKERS", 3))
