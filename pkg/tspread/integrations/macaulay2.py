"""
Macaulay2 interop: self-checking scripts for a lexsegment ideal.

The script defines the ideal, then asserts the decomposition, pd(S/I) and
(when a table is known) the graded Betti numbers computed here. Running it
is optional; a missing M2 binary is logged, never raised.
"""

import logging
import subprocess
from enum import Enum
from pathlib import Path

from tspread.config import settings
from tspread.modules.homological import BettiTable, betti_for_spec, invariants_for_spec
from tspread.modules.lexseg_model import LexsegmentSpec, build_segment
from tspread.modules.monomial_core import SquarefreeMonomial
from tspread.modules.primary_decomp import decompose

logger = logging.getLogger(__name__)

M2_TIMEOUT = 300


class M2Outcome(str, Enum):
    PASSED = "passed"
    FAILED = "failed"
    UNAVAILABLE = "unavailable"


def _m2_monomial(m: SquarefreeMonomial) -> str:
    return "*".join(f"x_{i}" for i in m.support)


def _m2_prime(variables) -> str:
    return "ideal(" + ",".join(f"x_{i}" for i in sorted(variables)) + ")"


def _m2_tally(table: BettiTable) -> str:
    cells = ", ".join(f"({i},{{{j}}},{j}) => {b}" for (i, j), b in table.entries.items())
    return "new BettiTally from {" + cells + "}"


def _known_table(spec: LexsegmentSpec) -> tuple[BettiTable, str] | None:
    found = betti_for_spec(spec)
    if found is not None:
        return found
    if spec.n > settings.HOCHSTER_CAP:
        return None
    from tspread.modules.oracle import hochster_betti

    return hochster_betti(build_segment(spec)), "oracle"


def build_script(spec: LexsegmentSpec) -> str:
    ideal = build_segment(spec)
    found = decompose(spec)
    report = invariants_for_spec(spec)

    lines = [
        f"-- {spec.describe()}",
        f"R = QQ[x_1..x_{spec.n}];",
        "I = monomialIdeal(" + ", ".join(_m2_monomial(g) for g in ideal.generators) + ");",
    ]
    if len(found.primes) == 1:
        lines.append(f"assert(ideal I == {_m2_prime(found.primes[0].variables)});")
    else:
        primes = ", ".join(_m2_prime(p.variables) for p in found.primes)
        lines.append(f"assert(ideal I == intersect({primes}));")
    lines.append(f"assert(pdim(R^1/ideal I) == {report.pd_SmodI});")
    lines.append(f"assert(dim(R^1/ideal I) == {report.dim_SmodI});")

    known = _known_table(spec)
    if known is None:
        lines.append("-- no Betti table: no formula applies and n is above the Hochster cap")
    else:
        table, source = known
        lines.append(f"-- Betti table source: {source}")
        lines.append(f"assert(betti res module ideal I == {_m2_tally(table)});")
    lines.append('print "all assertions passed";')
    return "\n".join(lines) + "\n"


def write_script(spec: LexsegmentSpec, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(build_script(spec), encoding="utf-8")
    logger.info("wrote Macaulay2 script %s", path)
    return path


def run_script(path: str | Path, binary: str | None = None) -> M2Outcome:
    """
    Runs the script with Macaulay2. UNAVAILABLE when the binary is missing;
    FAILED when M2 times out or exits nonzero.
    """
    binary = binary or settings.M2_BINARY
    try:
        result = subprocess.run([binary, "--script", str(path)], capture_output=True, text=True,
                                timeout=M2_TIMEOUT)
    except FileNotFoundError:
        logger.warning("Macaulay2 binary %r not found; script left at %s", binary, path)
        return M2Outcome.UNAVAILABLE
    except subprocess.TimeoutExpired:
        logger.warning("Macaulay2 timed out after %ds on %s", M2_TIMEOUT, path)
        return M2Outcome.FAILED

    if result.returncode != 0:
        logger.warning("Macaulay2 failed on %s: %s", path, result.stderr.strip() or result.stdout.strip())
        return M2Outcome.FAILED
    return M2Outcome.PASSED
