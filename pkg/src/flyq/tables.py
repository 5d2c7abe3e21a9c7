"""CSV emission for curve and study tables."""


def to_csv(header: str, rows) -> str:
    """Render rows of numbers under a header line.

    Values carry 13 significant digits; newlines are LF.
    """
    lines = [header]
    for row in rows:
        lines.append(",".join(format(float(v), ".12e") for v in row))
    return "\n".join(lines) + "\n"
