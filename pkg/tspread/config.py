import os
from dotenv import load_dotenv

load_dotenv()

# Hard ceiling for any 2^n scan, whatever the environment asks for
ORACLE_CAP_LIMIT = 20


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


class Settings:
    def __init__(self):
        # Brute-force oracle (facet scans over all 2^n subsets)
        self.ORACLE_CAP: int = min(max(_int_env("TSPREAD_ORACLE_CAP", ORACLE_CAP_LIMIT), 1), ORACLE_CAP_LIMIT)
        self.HOCHSTER_CAP: int = min(_int_env("TSPREAD_HOCHSTER_CAP", 14), self.ORACLE_CAP)

        # Closed-form path works on machine-word bitmasks
        self.FORMULA_CAP: int = _int_env("TSPREAD_FORMULA_CAP", 32)

        self.LOG_LEVEL: str = os.getenv("TSPREAD_LOG_LEVEL", "WARNING").upper()
        self.SWEEP_WORKERS: int = max(_int_env("TSPREAD_SWEEP_WORKERS", 1), 1)

        # Macaulay2 executable used by `export-m2 --run`
        self.M2_BINARY: str = os.getenv("TSPREAD_M2_BINARY", "M2")


settings = Settings()
