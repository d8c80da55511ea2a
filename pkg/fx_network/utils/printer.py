"""Simple color terminal printing support."""

from typing import Literal

import typer

Color = Literal["red", "green", "yellow", "nocolor", "cyan", "bright_black"]

_COLORS: dict[str, str | None] = {
    "red": typer.colors.RED,
    "green": typer.colors.GREEN,
    "yellow": typer.colors.YELLOW,
    "cyan": typer.colors.CYAN,
    "bright_black": typer.colors.BRIGHT_BLACK,
    "nocolor": None,
}


def cprint(
    *texts: str,
    highlight_idx: int = -1,
    color: Color = "nocolor",
    err: bool = False,
) -> None:
    """Print text segments in one color, highlighting one segment in cyan.

    Args:
        texts: Segments joined by single spaces.
        highlight_idx: Index of the segment to highlight.
        color: Color for the remaining segments.
        err: Write to stderr instead of stdout.

    """
    styled = [
        typer.style(t, fg=typer.colors.CYAN if i == highlight_idx else _COLORS[color])
        for i, t in enumerate(texts)
    ]
    typer.echo(" ".join(styled), err=err)
