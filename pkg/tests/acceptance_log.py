"""One status line per acceptance criterion, printed in the pytest terminal summary."""

LINES: list[str] = []


def record(label: str, ok: bool, detail: str, status: str | None = None) -> bool:
    LINES.append(f"{label:<14} {status or ('PASS' if ok else 'FAIL')}  {detail}")
    return ok
