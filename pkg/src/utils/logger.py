# src/utils/logger.py
from loguru import logger
from functools import wraps
from time import perf_counter

def log_execution_time(func):
    """Decorator to log wall time of a simulation step.

    When the result has a length (a deployment, a point array) the rate in
    points per second is logged as well.
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        start_time = perf_counter()
        result = func(*args, **kwargs)
        elapsed = perf_counter() - start_time

        size = getattr(result, "deployment", result)
        try:
            n = len(size)
        except TypeError:
            n = None
        if n and elapsed > 0:
            logger.debug(
                f"'{func.__name__}' produced {n} points in {elapsed:.4f} s "
                f"({n / elapsed:,.0f} points/s)"
            )
        else:
            logger.debug(f"'{func.__name__}' executed in {elapsed:.4f} s")
        return result
    return wrapper
