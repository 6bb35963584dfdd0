import logging
import sys
from pathlib import Path
from typing import Optional

COMPONENT_LOGGERS = ('dynamics', 'edmd', 'spectral', 'oracle', 'experiments', 'service')


def setup_logging(level: Optional[str] = None, log_dir: Optional[str] = None):
    from .config import settings

    level = (level or settings.log_level).upper()
    log_dir = Path(log_dir or settings.log_dir)
    log_dir.mkdir(parents=True, exist_ok=True)

    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(log_dir / 'edmd.log'),
            logging.StreamHandler(sys.stderr)
        ],
        force=True
    )

    return {name: logging.getLogger(name) for name in COMPONENT_LOGGERS}
