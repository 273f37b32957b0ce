"""Collects one PASS/FAIL/SKIP line per acceptance criterion."""

LINES: list[str] = []


def record(number: int, status: str, summary: str, detail: str = "") -> str:
    line = f"{status:<4}  [{number:>2}] {summary}"
    if detail:
        line += f"  ({detail})"
    LINES.append(line)
    print(line)
    return line
