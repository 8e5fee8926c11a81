import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

class Settings:
    """Library and command-line configuration settings"""

    # Eigensolver Configuration
    EIGEN_TOL: float = float(os.getenv("SPECTRA_EIGEN_TOL", "1e-12"))
    MAX_SWEEPS: int = int(os.getenv("SPECTRA_MAX_SWEEPS", "100"))
    JACOBI_MAX_ORDER: int = int(os.getenv("SPECTRA_JACOBI_MAX_ORDER", "48"))
    EIGEN_METHOD: str = os.getenv("SPECTRA_EIGEN_METHOD", "auto").lower()

    # Decision Tolerances
    TOP_TOL: float = float(os.getenv("SPECTRA_TOP_TOL", "1e-8"))
    MULTIPLICITY_TOL: float = float(os.getenv("SPECTRA_MULTIPLICITY_TOL", "1e-6"))
    KERNEL_TOL: float = float(os.getenv("SPECTRA_KERNEL_TOL", "1e-8"))
    SYMMETRY_TOL: float = float(os.getenv("SPECTRA_SYMMETRY_TOL", "1e-13"))
    WEIGHT_RTOL: float = float(os.getenv("SPECTRA_WEIGHT_RTOL", "1e-12"))

    # Generator Configuration
    MAX_VERTICES: int = int(os.getenv("SPECTRA_MAX_VERTICES", "12"))
    CIRCUIT_MAX_LEN: int = int(os.getenv("SPECTRA_CIRCUIT_MAX_LEN", "10"))
    RANDOM_DENSITY: float = float(os.getenv("SPECTRA_RANDOM_DENSITY", "0.12"))
    SEED: int = int(os.getenv("SPECTRA_SEED", "7"))
    WORKERS: int = int(os.getenv("SPECTRA_WORKERS", "1"))

    # Logging Configuration
    LOG_LEVEL: str = os.getenv("SPECTRA_LOG_LEVEL", "INFO").upper()
    LOG_FILE: str = os.getenv("SPECTRA_LOG_FILE", "")

    def validate(self) -> bool:
        """Validate that all settings are usable"""
        tolerances = [
            self.EIGEN_TOL,
            self.TOP_TOL,
            self.MULTIPLICITY_TOL,
            self.KERNEL_TOL,
            self.SYMMETRY_TOL,
            self.WEIGHT_RTOL,
        ]
        caps = [
            self.MAX_SWEEPS,
            self.JACOBI_MAX_ORDER,
            self.MAX_VERTICES,
            self.CIRCUIT_MAX_LEN,
            self.WORKERS,
        ]
        return (
            all(tol > 0 for tol in tolerances)
            and all(cap >= 1 for cap in caps)
            and 0.0 < self.RANDOM_DENSITY <= 1.0
            and self.EIGEN_METHOD in ("auto", "jacobi", "lapack")
        )

# Global settings instance
settings = Settings()
