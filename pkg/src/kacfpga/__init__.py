"""Key-aggregate encryption over BN254 and a simulated multi-tenant FPGA
provisioning flow built on it."""

from kacfpga import backend
from kacfpga.errors import KacfpgaError

__version__ = "0.1.0"

__all__ = ["KacfpgaError", "__version__", "backend"]
