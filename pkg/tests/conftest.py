from functools import lru_cache

from gso.gf import field_create, is_prime


@lru_cache(maxsize=None)
def F(p, m):
    return field_create(p, m)


def small_fields(limit):
    """(p, m) for every field with q <= limit."""
    out = []
    for p in range(2, limit + 1):
        if not is_prime(p):
            continue
        m = 1
        while p ** m <= limit:
            out.append((p, m))
            m += 1
    return out


# acceptance lines, printed once at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
