import argparse
import importlib
import pkgutil
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from HoCat.config import FORMATS, HOCAT_BUDGET, HOCAT_FORMAT, HOCAT_ROUTE, ROUTES
from HoCat.helpers.reports import Report, RunConfig
from HoCat.logging import LOGGER

logger = LOGGER(__name__)

Handler = Callable[[RunConfig], Report]
Argument = Tuple[Tuple[str, ...], dict]


def _common_arguments() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--instance", help="instance file (category, localization or model)")
    parent.add_argument("--target-instance", help="target model instance for derive and compare")
    parent.add_argument("--functor", help="functor file mapping instance names")
    parent.add_argument("--battery", help="battery corpus directory (default: HOCAT_BATTERY_DIR)")
    parent.add_argument("--battery-name", default="default", help="battery entry of hocat_config.json")
    parent.add_argument("--budget", type=int, default=HOCAT_BUDGET, help="search node budget")
    parent.add_argument("--route", choices=ROUTES, default=HOCAT_ROUTE, help="replacement route")
    parent.add_argument("--format", choices=FORMATS, default=HOCAT_FORMAT, help="report format")
    parent.add_argument("--output", help="also write the JSON report to this file")
    return parent


class CommandRouter:
    """
    Subcommands registered by decorating handlers, the way message
    handlers are attached to a client: plugins import the router and
    register themselves on import.
    """

    def __init__(self, prog: str, description: str = ""):
        self.parser = argparse.ArgumentParser(prog=prog, description=description)
        self.subparsers = self.parser.add_subparsers(dest="command", metavar="command")
        self.subparsers.required = True
        self.handlers: Dict[str, Handler] = {}
        self._parent = _common_arguments()

    def on_command(
        self,
        name: str,
        help: str = "",
        choices: Optional[Sequence[str]] = None,
        arguments: Sequence[Argument] = (),
    ) -> Callable[[Handler], Handler]:
        def decorator(func: Handler) -> Handler:
            if name in self.handlers:
                raise ValueError(f"command {name!r} registered twice")
            sub = self.subparsers.add_parser(name, help=help, parents=[self._parent])
            if choices:
                sub.add_argument("choice", choices=list(choices))
            for flags, options in arguments:
                sub.add_argument(*flags, **options)
            self.handlers[name] = func
            logger.debug(f"registered command {name}")
            return func

        return decorator

    def load_plugins(self, package: str = "HoCat.plugins") -> List[str]:
        module = importlib.import_module(package)
        loaded = []
        for info in pkgutil.iter_modules(module.__path__):
            importlib.import_module(f"{package}.{info.name}")
            loaded.append(info.name)
        return loaded

    def parse(self, argv: Optional[Sequence[str]] = None) -> RunConfig:
        args = vars(self.parser.parse_args(argv))
        fields = set(RunConfig.__dataclass_fields__)
        return RunConfig(**{key: value for key, value in args.items() if key in fields and value is not None})

    def dispatch(self, argv: Optional[Sequence[str]] = None) -> Tuple[RunConfig, Report]:
        config = self.parse(argv)
        logger.info(f"running {config.command} {config.choice or ''}".rstrip())
        return config, self.handlers[config.command](config)
