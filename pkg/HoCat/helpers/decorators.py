import time
from functools import wraps
from typing import Callable

from HoCat.engine.errors import HoCatError, Refusal
from HoCat.helpers.budget import Budget
from HoCat.helpers.functions import process_memory
from HoCat.helpers.reports import Report, RunConfig
from HoCat.logging import LOGGER

logger = LOGGER(__name__)


def report_errors(func: Callable[[RunConfig, Report, Budget], None]) -> Callable[[RunConfig], Report]:
    """
    Run a command handler against a fresh Report and turn engine errors
    into verdicts: refusals exit 3, input errors 2, property failures 1.
    Anything else is logged and raised.
    """

    @wraps(func)
    def decorator(config: RunConfig) -> Report:
        report = Report(command=" ".join(filter(None, (config.command, config.choice))))
        budget = None
        start = time.perf_counter()
        try:
            config.validate()
            budget = config.new_budget()
            func(config, report, budget)
        except Refusal as error:
            logger.warning(f"{report.command} refused: {error}")
            report.refused = True
            report.error = str(error)
        except HoCatError as error:
            logger.error(f"{report.command}: {type(error).__name__}: {error}")
            report.error = f"{type(error).__name__}: {error}"
            if error.counterexample is not None:
                report.counterexamples.append(str(error.counterexample))
            if error.exit_code == 2:
                report.invalid = True
            else:
                report.failed = True
        except Exception:
            logger.exception(f"{report.command} crashed")
            raise
        finally:
            report.timing = {
                "seconds": round(time.perf_counter() - start, 3),
                "memory": process_memory(),
                "nodes": budget.used if budget else 0,
            }
        return report

    return decorator
