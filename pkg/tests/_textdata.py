"""Locations and reference values for the optional Gutenberg texts.

The five novels are not shipped; drop them in ./texts (or point
YS_TEXTS_DIR at a directory) to enable the text suites.
"""

import os
from pathlib import Path

from yulesimon import CountSample, strip_gutenberg, to_count_sample, tokenize_count

TEXTS_DIR = Path(os.environ.get("YS_TEXTS_DIR", Path(__file__).resolve().parents[1] / "texts"))

# file name, reported lambda, reported Louis/Oakes SE, reported unique words
TEXT_TABLE = {
    "ulysses": ("ulysses.txt", 1.0780, 0.0080, 29216),
    "war_and_peace": ("war_and_peace.txt", 0.6181, 0.0053, 17557),
    "les_miserables": ("les_miserables.txt", 0.7028, 0.0053, 23451),
    "moby_dick": ("moby_dick.txt", 0.8679, 0.0081, 16861),
    "don_quixote": ("don_quixote.txt", 0.6696, 0.0064, 14622),
}


def texts_available() -> bool:
    return all((TEXTS_DIR / row[0]).exists() for row in TEXT_TABLE.values())


def missing_texts() -> list[str]:
    return [row[0] for row in TEXT_TABLE.values() if not (TEXTS_DIR / row[0]).exists()]


def load_text_counts(filename: str) -> CountSample:
    text = (TEXTS_DIR / filename).read_text(encoding="utf-8", errors="replace")
    return to_count_sample(tokenize_count(strip_gutenberg(text)))
