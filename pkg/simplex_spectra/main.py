import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

# Fix imports to work from any directory
try:
    from .config import settings
    from .exceptions import ConsistencyError, MalformedInputError
    from .apis.commands import has_disagreements, parse_args, render
except ImportError:
    # If relative imports fail, try absolute imports
    from config import settings
    from exceptions import ConsistencyError, MalformedInputError
    from apis.commands import has_disagreements, parse_args, render

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_CONSISTENCY = 2


def configure_logging(level: Optional[str] = None) -> None:
    """Log to standard error (standard output carries JSON) and optionally to a file"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.LOG_FILE:
        handlers.append(logging.FileHandler(settings.LOG_FILE))
    logging.basicConfig(
        level=getattr(logging, (level or settings.LOG_LEVEL).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and return its exit code"""
    try:
        args = parse_args(argv)
    except MalformedInputError as e:
        configure_logging()
        logger.error(f"Bad arguments: {e}")
        return EXIT_MALFORMED

    configure_logging(args.log_level)

    # Validate configuration
    if not settings.validate():
        logger.error("Configuration validation failed! Please check the SPECTRA_* environment variables.")
        return EXIT_CONSISTENCY

    try:
        output = args.handler(args)
    except (MalformedInputError, ValidationError, json.JSONDecodeError) as e:
        logger.error(f"Malformed input: {e}")
        return EXIT_MALFORMED
    except ConsistencyError as e:
        logger.error(f"Internal consistency check failed: {e}")
        return EXIT_CONSISTENCY

    print(render(output))
    if has_disagreements(output):
        logger.error("Verification finished with disagreements")
        return EXIT_CONSISTENCY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
