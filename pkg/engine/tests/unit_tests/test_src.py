import click

import src
from src.main import cli_app, initialize_cli_application


def test_application_is_click_group() -> None:
    assert isinstance(cli_app, click.Group)
    assert cli_app.name == "bpp"
    assert set(cli_app.commands) == {"analyze", "check", "solve", "oracle", "bvp", "gen"}


def test_initialize_returns_the_same_group() -> None:
    assert initialize_cli_application() is cli_app


def test_src_version() -> None:
    assert src.__version__ == "0.0.1"


def test_version_option(runner) -> None:
    result = runner.invoke(cli_app, ["--version"])
    assert result.exit_code == 0
    assert "0.0.1" in result.output
