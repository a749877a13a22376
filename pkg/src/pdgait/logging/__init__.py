from .loguru import setup_logging, add_logfile, logfile

__all__ = ["add_logfile", "logfile", "setup_logging"]
