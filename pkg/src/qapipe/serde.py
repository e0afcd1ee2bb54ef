"""Field escaping for the line-oriented artifact files.

Tabs separate fields and newlines separate records, so embedded tabs,
newlines, and backslashes are escaped. A field that is exactly \\N
encodes "absent" (a literal backslash-N survives as \\\\N).
"""

NONE_FIELD = "\\N"


def escape_field(s: str) -> str:
    return (
        s.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n").replace("\r", "\\r")
    )


def unescape_field(s: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(s):
        c = s[i]
        if c == "\\" and i + 1 < len(s):
            nxt = s[i + 1]
            out.append({"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}.get(nxt, nxt))
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def escape_optional(s: str | None) -> str:
    return NONE_FIELD if s is None else escape_field(s)


def unescape_optional(s: str) -> str | None:
    return None if s == NONE_FIELD else unescape_field(s)
