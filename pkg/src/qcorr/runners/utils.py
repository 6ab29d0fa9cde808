"""Utility functions to name result files and write result tables as CSV."""

# License: BSD 3-clause

import io
import os
from typing import IO

import pandas as pd

CSV_FLOAT_FORMAT = "%.17g"


def build_data_filename(output_directory: str, runner_name: str, experiment_name: str, df_name: str, ext: str = "csv") -> str:
    """
    Build and return a data file path, ensuring the directory exists.

    Parameters
    ----------
    output_directory : str
        The root directory where the file will be saved.
    runner_name : str
        The name of the runner.
    experiment_name : str
        The name of the experiment.
    df_name : str
        The name of the table being saved.
    ext : str, default="csv"
        The file extension, with or without the leading dot.

    Returns
    -------
    str
        The full file path ``<output_directory>/<experiment_name>/<runner>__<experiment>__<df_name>.<ext>``.
    """
    directory = os.path.join(output_directory, experiment_name)
    try:
        os.makedirs(directory, exist_ok=True)
    except Exception as e:
        raise RuntimeError(f"Failed to create directory '{directory}': {e}")

    if ext and not ext.startswith("."):
        ext = f".{ext}"
    filename = f"{runner_name.lower()}__{experiment_name}__{df_name}{ext}"
    return os.path.join(directory, filename)


def write_csv(df: pd.DataFrame, target: str | IO[str]) -> None:
    """
    Write a table as CSV with a header row, no index and 17 significant digits.

    The output depends only on the table contents, so identical results give identical bytes.
    """
    df.to_csv(target, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def csv_text(df: pd.DataFrame) -> str:
    """CSV text of a table as written by `write_csv`."""
    buffer = io.StringIO()
    write_csv(df, buffer)
    return buffer.getvalue()
