from decimal import Decimal, localcontext

import mpmath

mpmath.mp.dps = 60


def decimal_asinh(x: float, digits: int = 60) -> Decimal:
    """asinh through the decimal module: an oracle sharing no code with the package."""
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x)
        return +(d + (1 + d * d).sqrt()).ln()


def ext_to_mpf(ext, i=None):
    hi = ext.hi if i is None else ext.hi[i]
    lo = ext.lo if i is None else ext.lo[i]
    return mpmath.mpf(float(hi)) + mpmath.mpf(float(lo))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
