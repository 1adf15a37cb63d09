"""Chart substitutions for blow-ups and extraction of strict transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ratcont.corealg.poly import Poly, sort_vars


@dataclass(frozen=True)
class ChartMap:
    """Polynomial chart ``var -> substitutions[var]`` of a blow-up.

    ``exceptional`` is the chart variable cutting out the exceptional
    divisor.  Variables without an entry are left unchanged.
    """

    substitutions: Mapping[str, Poly]
    exceptional: str

    def __post_init__(self):
        subs = {v: Poly.coerce(self.substitutions[v]) for v in sort_vars(self.substitutions)}
        if not any(self.exceptional in s.gens for s in subs.values()):
            raise ValueError(f"exceptional variable {self.exceptional} occurs in no substitution")
        object.__setattr__(self, "substitutions", subs)

    def pull_back(self, p: Poly) -> Poly:
        return Poly.coerce(p).substitute(self.substitutions)

    def __str__(self) -> str:
        return ", ".join(f"{v} -> {s}" for v, s in self.substitutions.items())


def blowup_chart_substitute(p: Poly, chart: ChartMap) -> tuple[int, Poly]:
    """Return ``(e, strict)`` with ``p o chart == exc**e * strict`` and ``e`` maximal."""
    total = chart.pull_back(p)
    if not total:
        raise ValueError(f"{p} pulls back to zero under the chart")
    e = min(total.as_univariate(chart.exceptional))
    strict = total.exact_div(Poly.var(chart.exceptional) ** e) if e else total
    return e, strict
