"""Access to the JSON schemas shipped with the package."""

from __future__ import annotations

import json
from importlib import resources
from typing import Any, Dict, List


def schema_names() -> List[str]:
    root = resources.files("sftlab") / "schemas"
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def load_schema(name: str) -> Dict[str, Any]:
    """Schema for a command report (``"conj eval"`` -> conj-eval), an input doc or ``"error"``."""
    path = resources.files("sftlab") / "schemas" / (name.replace(" ", "-") + ".json")
    return json.loads(path.read_text(encoding="utf-8"))
