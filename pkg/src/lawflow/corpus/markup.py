"""Markup-to-text normalization built on the stdlib HTML parser.

Tag soup from filings is tolerated: unclosed tags, stray angle brackets, and
bare entity references all degrade to sensible text. Block-level elements
produce paragraph breaks (blank lines), ``<br>`` a single line break, and
whitespace inside a line collapses to single spaces. The result is stable
under re-normalization (idempotent on its own output).
"""

from __future__ import annotations

import re
from html.parser import HTMLParser

# Elements whose open or close boundary separates paragraphs.
_BLOCK_TAGS = frozenset(
    "p div h1 h2 h3 h4 h5 h6 li ul ol table tr td th blockquote section article "
    "header footer pre center dl dt dd hr".split()
)
_SKIP_TAGS = frozenset({"script", "style", "head"})


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
        elif tag == "br":
            self.parts.append("\n")
        elif tag in _BLOCK_TAGS:
            self.parts.append("\n\n")

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS and self._skip_depth > 0:
            self._skip_depth -= 1
        elif tag in _BLOCK_TAGS:
            self.parts.append("\n\n")

    def handle_startendtag(self, tag, attrs):
        self.handle_starttag(tag, attrs)

    def handle_data(self, data):
        if not self._skip_depth:
            self.parts.append(data)


def normalize_markup(raw_markup: str) -> str:
    """Strip tags and produce normalized plain text with paragraph structure."""
    extractor = _TextExtractor()
    try:
        extractor.feed(raw_markup)
        extractor.close()
    except Exception:
        # Malformed beyond the tolerant parser: fall back to regex tag stripping.
        stripped = re.sub(r"<[^>]*>", " ", raw_markup)
        extractor = _TextExtractor()
        extractor.feed(stripped)
        extractor.close()
    return _tidy("".join(extractor.parts))


def _tidy(text: str) -> str:
    # Collapse horizontal whitespace (incl. decoded &nbsp;) within lines, drop
    # edge spaces per line, then collapse 3+ newlines to one blank-line break.
    lines = [re.sub(r"[^\S\n]+", " ", line).strip() for line in text.split("\n")]
    out = "\n".join(lines)
    out = re.sub(r"\n{3,}", "\n\n", out)
    return out.strip()
