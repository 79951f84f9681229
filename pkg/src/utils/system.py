import platform
import sys

import numpy as np
import psutil
import structlog

logger = structlog.get_logger()


def memory_usage() -> dict:
    """Check system memory usage"""
    try:
        memory = psutil.virtual_memory()
        return {
            "usage_percent": memory.percent,
            "available_gb": round(memory.available / (1024**3), 2),
            "total_gb": round(memory.total / (1024**3), 2)
        }
    except Exception:
        return {"status": "unavailable"}


def process_usage() -> dict:
    """Resident memory and CPU time of this process"""
    try:
        process = psutil.Process()
        times = process.cpu_times()
        return {
            "rss_mb": round(process.memory_info().rss / (1024**2), 1),
            "cpu_seconds": round(times.user + times.system, 2)
        }
    except Exception:
        return {"status": "unavailable"}


def environment() -> dict:
    """Fingerprint recorded with every verification report"""
    try:
        cpus = psutil.cpu_count(logical=True)
    except Exception as e:
        logger.warning("CPU count unavailable", error=str(e))
        cpus = None
    return {
        "python": sys.version.split()[0],
        "numpy": np.__version__,
        "platform": platform.platform(),
        "cpus": cpus,
        "memory": memory_usage(),
        "process": process_usage(),
    }
