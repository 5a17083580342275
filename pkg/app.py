"""
Bracket Diagram Homology - Main Application Entry Point
Command-line access to diagram complexes, their homology and verification suites
"""
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from src.cli.commands import EXIT_CONFIG_ERROR
from src.cli.parser import create_parser
from src.config import APP_CONFIG
from src.utils.exceptions import DiagramError

logger = logging.getLogger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)

    # Initialize configuration and logging
    config = APP_CONFIG.init_app()
    logging.basicConfig(level=args.log_level or config.LOG_LEVEL,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    logger.info("Starting %s v%s: %s", config.APP_NAME, config.VERSION, args.command)

    try:
        return args.handler(args, config)
    except ValidationError as exc:
        logger.error("Invalid configuration: %s", exc)
        sys.stderr.write(f"configuration error: {exc}\n")
        return EXIT_CONFIG_ERROR
    except DiagramError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_CONFIG_ERROR


if __name__ == '__main__':
    sys.exit(main())
