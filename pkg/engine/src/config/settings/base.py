import os
import pathlib

from dotenv import load_dotenv

QUADRATURE_RULES = ("SIMPSON", "TRAPEZOID")


class Config:
    """
    Configuration class for handling toolkit settings.

    Every value has a default, so the toolkit runs without a `.env` file. The values
    are the defaults of the solver tolerances; CLI flags override them per invocation.
    """

    def __init__(self):
        self.load_env()
        self.setup_logging()

    def load_env(self):
        """
        Load environment variables from .env file.
        """
        load_dotenv()
        self.EPS_DUP = float(os.getenv("BPP_EPS_DUP", "1e-9"))
        self.EPS_PROX = float(os.getenv("BPP_EPS_PROX", "1e-9"))
        self.EPS_STOP = float(os.getenv("BPP_EPS_STOP", "1e-9"))
        self.EPS_STEP = float(os.getenv("BPP_EPS_STEP", "0.0"))
        self.MAX_ITER = int(os.getenv("BPP_MAX_ITER", 1_000_000))
        self.REJECTION_BUDGET = int(os.getenv("BPP_REJECTION_BUDGET", 10_000))
        self.BVP_N = int(os.getenv("BPP_BVP_N", 128))
        self.BVP_EPS_FIX = float(os.getenv("BPP_BVP_EPS_FIX", "1e-10"))
        self.BVP_MAX_ITER = int(os.getenv("BPP_BVP_MAX_ITER", 500))
        self.BVP_QUADRATURE = os.getenv("BPP_BVP_QUADRATURE", "SIMPSON").upper()
        self._validate_env()

    def _validate_env(self):
        """
        Ensure that tolerances and limits are usable.
        """
        for name in ("EPS_DUP", "EPS_PROX", "EPS_STOP", "EPS_STEP", "BVP_EPS_FIX"):
            if getattr(self, name) < 0:
                raise ValueError(f"BPP_{name} must be non-negative")
        for name in ("MAX_ITER", "REJECTION_BUDGET", "BVP_MAX_ITER"):
            if getattr(self, name) < 1:
                raise ValueError(f"BPP_{name} must be at least 1")
        if self.BVP_N < 2:
            raise ValueError("BPP_BVP_N must be at least 2")
        if self.BVP_QUADRATURE not in QUADRATURE_RULES:
            raise ValueError(f"BPP_BVP_QUADRATURE must be one of {', '.join(QUADRATURE_RULES)}")

    def setup_logging(self):
        """
        Setup log level and log file location.
        """
        self.LOG_LEVEL = os.getenv("BPP_LOG_LEVEL", "WARNING").upper()
        default_log = pathlib.Path(__file__).resolve().parents[3] / "app.log"
        self.LOG_FILE = os.getenv("BPP_LOG_FILE", str(default_log))


config_env = Config()
