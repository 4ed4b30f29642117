"""One summary line per acceptance criterion, printed at the end of the run."""

LINES: dict[int, str] = {}


def record(n: int, ok: bool, seconds: float, bound: float, detail: str = "") -> bool:
    within = seconds < bound
    verdict = "PASS" if ok and within else "FAIL"
    timing = f"{seconds:.2f}s < {bound:g}s" if within else f"{seconds:.2f}s exceeds {bound:g}s"
    line = f"criterion {n:2d}: {verdict}  [{timing}]"
    if detail:
        line += f"  {detail}"
    LINES[n] = line
    print(line)
    return ok and within
