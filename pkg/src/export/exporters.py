"""
JSON & CSV Exporters: Write reports, certificates and solution tables to files.
"""

import json
import logging
from pathlib import Path
from typing import List, Union

import pandas as pd
from pydantic import BaseModel

logger = logging.getLogger(__name__)


def export_json(payload: Union[BaseModel, List[BaseModel]], output_path: Path) -> Path:
    """
    Export one model (or a list of models) to a JSON file.

    Args:
        payload: Report, certificate or list of rows.
        output_path: Path to write the JSON file.

    Returns:
        Path to the written file.
    """
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    if isinstance(payload, list):
        data = [item.model_dump(mode="json") for item in payload]
    else:
        data = payload.model_dump(mode="json")

    with open(output_path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, default=str, ensure_ascii=False)

    logger.info(f"Exported {type(payload).__name__} to {output_path}")
    return output_path


def table_frame(rows: List[BaseModel]) -> pd.DataFrame:
    """Flatten rows (SolutionPoint, SeifertValue) into a DataFrame."""
    return pd.DataFrame([row.to_flat_dict() for row in rows])


def export_table_csv(rows: List[BaseModel], output_path: Path) -> Path:
    """
    Export table rows to a CSV file.

    Args:
        rows: Models providing to_flat_dict().
        output_path: Path to write the CSV file.

    Returns:
        Path to the written file.
    """
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    if not rows:
        logger.warning("No rows to export to CSV")
        return output_path

    table_frame(rows).to_csv(output_path, index=False)

    logger.info(f"Exported {len(rows)} rows to {output_path}")
    return output_path


def format_table(rows: List[BaseModel], columns: List[str] = None) -> str:
    """Plain-text table in the three-column s | t | tau layout."""
    if not rows:
        return "(no rows)"
    frame = table_frame(rows)
    if columns:
        frame = frame[columns]
    return frame.to_string(index=False)
