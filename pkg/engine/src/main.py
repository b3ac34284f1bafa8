import click

from src.api.endpoints import cli
from src.config.settings.logger_config import logger


def initialize_cli_application() -> click.Group:
    """
    Assemble the command-line application from the command modules.

    Returns:
        click.Group: The `bpp` command group.
    """
    logger.debug(f"CLI assembled with commands: {', '.join(sorted(cli.commands))}")
    return cli


cli_app: click.Group = initialize_cli_application()


if __name__ == "__main__":
    cli_app()
