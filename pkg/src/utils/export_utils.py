"""
Data Export Utilities
Render result tables as JSON, CSV or plain text
"""
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import pandas as pd

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "text")


def _cell(value):
    """Lists (torsion, relations) print as a compact string in flat formats"""
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value) if value else ""
    return value


class HomologyExporter:
    """Handle result export in various formats"""

    def __init__(self, output_dir: Union[str, Path] = "exports"):
        self.output_dir = Path(output_dir)

    def to_frame(self, records: Sequence[Dict], columns: Optional[List[str]] = None) -> pd.DataFrame:
        """Records to a DataFrame keeping the record order"""
        df = pd.DataFrame(list(records), columns=columns)
        return df

    def render(self, records: Sequence[Dict], fmt: str = "text", columns: Optional[List[str]] = None) -> str:
        """Records rendered as a string; identical records give identical output"""
        if fmt == "json":
            return json.dumps(list(records), indent=2, default=str) + "\n"
        df = self.to_frame(records, columns)
        if fmt == "csv":
            return df.map(_cell).to_csv(index=False)
        if fmt == "text":
            if df.empty:
                return "(no rows)\n"
            return df.map(_cell).to_string(index=False) + "\n"
        raise ValueError(f"Unknown output format: {fmt}")

    def render_frame(self, df: pd.DataFrame, fmt: str = "text") -> str:
        """A labelled frame such as a boundary matrix"""
        if fmt == "json":
            payload = {"rows": list(map(str, df.index)), "columns": list(map(str, df.columns)),
                       "data": df.values.tolist()}
            return json.dumps(payload, indent=2, default=str) + "\n"
        if fmt == "csv":
            return df.to_csv()
        if df.empty:
            return f"({len(df.index)}x{len(df.columns)} matrix)\n"
        return df.to_string() + "\n"

    def export(self, text: str, filename: Union[str, Path]) -> Path:
        """Write rendered output below the output directory unless the path is absolute"""
        filepath = Path(filename)
        if not filepath.is_absolute():
            filepath = self.output_dir / filepath
        filepath.parent.mkdir(parents=True, exist_ok=True)
        filepath.write_text(text)
        logger.info("Wrote %s", filepath)
        return filepath

    def export_to_csv(self, records: Sequence[Dict], filename: str) -> Path:
        """Export records to CSV"""
        return self.export(self.render(records, "csv"), f"{filename}.csv")

    def export_to_json(self, records: Sequence[Dict], filename: str) -> Path:
        """Export records to JSON"""
        return self.export(self.render(records, "json"), f"{filename}.json")
