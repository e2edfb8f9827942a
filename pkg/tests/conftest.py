import random

import pytest

from pentagram import random_coords


def domain_points(n, field, count, start=0):
    """``count`` seeded CornerCoords at which one step of the map is defined.

    Seeds whose image leaves the moduli space are skipped, so every returned
    point has a defined image; the seed is kept alongside for reproducibility.
    """
    from pentagram import map_coords
    from pentagram.errors import IndeterminatePoint, LeavesModuli

    out, s = [], start
    while len(out) < count:
        c = random_coords(n, field, s, in_domain=True)
        s += 1
        try:
            map_coords(c)
        except (IndeterminatePoint, LeavesModuli):
            continue
        out.append((s - 1, c))
        if s - start > 200 * count:
            raise RuntimeError(f"could not find {count} points for n={n} over {field.describe()}")
    return out


@pytest.fixture
def rng():
    return random.Random(20261016)


# ---- acceptance summary ----------------------------------------------------

ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion (printed at the end of the run)."""
    def record(k, ok, detail):
        ACCEPTANCE[k] = (ok, detail)
    return record


def pytest_runtest_makereport(item, call):
    # a criterion whose test raised before recording still gets a FAIL line
    if call.when == "call" and call.excinfo is not None:
        k = getattr(item.function, "criterion", None)
        if k is not None and (k not in ACCEPTANCE or ACCEPTANCE[k][0]):
            ACCEPTANCE[k] = (False, f"{call.excinfo.typename}: {call.excinfo.value}"[:200])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
