"""Collects one verdict line per acceptance criterion."""

RESULTS = {}


def record(number, title, ok, detail=""):
    RESULTS[number] = (title, ok, detail)
    line = format_line(number)
    print(line)
    return ok


def format_line(number):
    title, ok, detail = RESULTS[number]
    tail = f" -- {detail}" if detail else ""
    return f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}{tail}"


def lines():
    return [format_line(n) for n in sorted(RESULTS)]
