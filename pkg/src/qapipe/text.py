"""Tokenization shared by indexing, question analysis, and passage scoring.

The rule is deliberately simple: a token is a maximal run of alphanumeric
characters, lowercased. Punctuation produces no tokens and there is no
stemming, so query terms match document terms exactly.
"""

import re
from dataclasses import dataclass

# Alphanumeric runs, unicode-aware; underscore counts as a separator.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class Token:
    surface: str      # lowercased term
    position: int     # 0-based token index within the text
    char_offset: int  # start offset in the original string


def tokenize(text: str) -> list[Token]:
    """Split text into lowercased alphanumeric tokens with positions."""
    return [
        Token(m.group(0).lower(), i, m.start())
        for i, m in enumerate(_TOKEN_RE.finditer(text))
    ]


def remove_stopwords(tokens: list[Token], stoplist: frozenset[str]) -> list[Token]:
    """Order-preserving stopword filter; original positions are kept."""
    return [t for t in tokens if t.surface not in stoplist]
