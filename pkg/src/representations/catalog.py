"""
Knot Catalog: named twist knots, word templates and reference polynomials.

Reads config/catalog.yaml and resolves knot names to twist parameters.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import yaml

from config.settings import CATALOG_PATH
from src.algebra.poly import MultiPoly, parse_poly
from src.errors import ParseError

logger = logging.getLogger(__name__)


class KnotEntry:
    """A named member of the twist family."""

    def __init__(self, name: str, m: int, aliases: List[str] = None):
        self.name = name          # e.g., "5_2"
        self.m = m                # J(2, 2m)
        self.aliases = aliases or []

    @property
    def token(self) -> str:
        return f"J(2,{2 * self.m})"

    def __repr__(self):
        return f"KnotEntry({self.name} = {self.token})"


class KnotCatalog:
    """Loads and provides access to the knot catalog."""

    def __init__(self, path: Optional[Path] = None):
        self.path = path or CATALOG_PATH
        self.knots: List[KnotEntry] = []
        self.polynomials: Dict[str, str] = {}
        self.tables: Dict[str, List[List[str]]] = {}
        self.word_templates: Dict[str, str] = {}
        self.brieskorn_defaults: List[Tuple[int, int, int]] = []
        self._load()

    def _load(self):
        logger.debug(f"Loading knot catalog from {self.path}")

        with open(self.path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)

        for entry in data.get("knots", []):
            self.knots.append(KnotEntry(str(entry["name"]), int(entry["m"]), entry.get("aliases", [])))
        self.polynomials = {k: " ".join(str(v).split()) for k, v in data.get("polynomials", {}).items()}
        self.tables = data.get("tables", {})
        self.word_templates = data.get("twist_words", {})
        self.brieskorn_defaults = [tuple(t) for t in data.get("brieskorn", {}).get("defaults", [])]

        logger.debug(f"Catalog: {len(self.knots)} knots, {len(self.polynomials)} reference polynomials")

    def twist_parameter(self, name: str) -> int:
        key = name.strip().lower()
        for knot in self.knots:
            if key == knot.name.lower() or key in (a.lower() for a in knot.aliases):
                return knot.m
        raise ParseError(f"unknown knot {name!r}; use J(2,2m) or one of {[k.name for k in self.knots]}")

    def name_of(self, m: int) -> Optional[str]:
        for knot in self.knots:
            if knot.m == m:
                return knot.name
        return None

    def polynomial(self, key: str) -> MultiPoly:
        try:
            return parse_poly(self.polynomials[key])
        except KeyError as exc:
            raise ParseError(f"no reference polynomial named {key!r}") from exc

    def table(self, key: str) -> List[Tuple[complex, complex, complex]]:
        return [tuple(complex(v) for v in row) for row in self.tables[key]]

    def __len__(self):
        return len(self.knots)

    def __repr__(self):
        return f"KnotCatalog({len(self.knots)} knots from {self.path.name})"
