import sys
from pathlib import Path
from typing import Optional, Sequence

from HoCat import hocat
from HoCat.logging import LOGGER

logger = LOGGER(__name__)


def main(argv: Optional[Sequence[str]] = None) -> int:
    plugins = hocat.load_plugins()
    logger.debug(f"loaded plugins {', '.join(plugins)}")

    config, report = hocat.dispatch(argv)
    if config.output:
        Path(config.output).write_text(report.to_json() + "\n", encoding="utf-8")
        logger.info(f"report written to {config.output}")
    print(report.to_json() if config.format == "json" else report.render_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
