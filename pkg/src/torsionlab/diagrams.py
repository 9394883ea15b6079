"""Planar-diagram codes for oriented knots and links.

A crossing is recorded by its four incident arc labels listed
counterclockwise from the incoming under-strand: ``X a b c d`` means the
under-strand runs a -> c and the over-strand occupies b and d.  With the
arcs of each component numbered consecutively along the orientation this
fixes the over-strand direction, and the crossing sign is +1 exactly when
the over-strand runs d -> b (rotating the over direction a quarter turn
counterclockwise gives the under direction).

Parsing resolves the over-strand orientations by constraint propagation:
each arc ends exactly once and starts exactly once, under-strand entries
pin half the roles, and the remainder follow by matching.  Consecutive
numbering is used only to break genuinely ambiguous ties.  Parsed diagrams
carry an explicit successor map, so derived diagrams (switched, smoothed,
mirrored) never need renumbering.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .errors import InconsistentArcs, MalformedCode

_CROSSING_RE = re.compile(
    r"X[\s\[\(]*(\d+)[,\s]+(\d+)[,\s]+(\d+)[,\s]+(\d+)[\s\]\)]*")


@dataclass(frozen=True)
class Crossing:
    """One crossing with resolved strand roles and sign."""

    under_in: int
    under_out: int
    over_in: int
    over_out: int
    sign: int

    def pd_tuple(self) -> Tuple[int, int, int, int]:
        """Counterclockwise arc tuple starting at the incoming under-strand."""
        if self.sign > 0:
            return (self.under_in, self.over_out, self.under_out, self.over_in)
        return (self.under_in, self.over_in, self.under_out, self.over_out)

    def switched(self) -> "Crossing":
        return Crossing(self.over_in, self.over_out,
                        self.under_in, self.under_out, -self.sign)


@dataclass(frozen=True)
class KnotDiagram:
    """Oriented planar diagram: crossings plus the arc successor map."""

    crossings: Tuple[Crossing, ...]
    succ: Tuple[Tuple[int, int], ...]  # sorted (arc, next arc) pairs

    # -- derived structure ------------------------------------------------------

    def next_map(self) -> Dict[int, int]:
        return dict(self.succ)

    def arcs(self) -> List[int]:
        return [a for a, _ in self.succ]

    def components(self) -> Tuple[Tuple[int, ...], ...]:
        """Cycles of the successor map, each starting at its least arc."""
        nxt = self.next_map()
        seen = set()
        comps = []
        for start in sorted(nxt):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            a = nxt[start]
            while a != start:
                cyc.append(a)
                seen.add(a)
                a = nxt[a]
            comps.append(tuple(cyc))
        return tuple(sorted(comps, key=lambda c: c[0]))

    def is_knot(self) -> bool:
        return len(self.components()) == 1

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    # -- moves -------------------------------------------------------------------

    def switch(self, idx: int) -> "KnotDiagram":
        """Exchange over- and under-strand at one crossing."""
        cs = list(self.crossings)
        cs[idx] = cs[idx].switched()
        return KnotDiagram(tuple(cs), self.succ)

    def smooth(self, idx: int) -> "KnotDiagram":
        """Oriented smoothing at one crossing.

        The incoming under-strand continues into the outgoing over-strand
        and vice versa; the crossing disappears and arc labels survive."""
        c = self.crossings[idx]
        nxt = self.next_map()
        nxt[c.under_in] = c.over_out
        nxt[c.over_in] = c.under_out
        cs = self.crossings[:idx] + self.crossings[idx + 1:]
        return KnotDiagram(cs, tuple(sorted(nxt.items())))

    def mirror(self) -> "KnotDiagram":
        """Mirror image: every crossing switched, orientations kept."""
        return KnotDiagram(tuple(c.switched() for c in self.crossings),
                           self.succ)

    # -- canonical encoding --------------------------------------------------------

    def canonical_key(self):
        """Hashable encoding stable under arc relabeling.

        Arcs are renumbered along each component in traversal order,
        components ordered by their least original label."""
        relabel: Dict[int, int] = {}
        sizes = []
        n = 0
        for comp in self.components():
            sizes.append(len(comp))
            for a in comp:
                relabel[a] = n
                n += 1
        enc = tuple(sorted(
            (relabel[c.under_in], relabel[c.under_out],
             relabel[c.over_in], relabel[c.over_out], c.sign)
            for c in self.crossings))
        return enc, tuple(sizes)

    def pd_text(self) -> str:
        lines = [("X " + " ".join(str(x) for x in c.pd_tuple()))
                 for c in self.crossings]
        return "\n".join(lines) + ("\n" if lines else "")


UNKNOT = KnotDiagram((), ())


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def parse_pd(text: str) -> KnotDiagram:
    """Parse planar-diagram text into a validated diagram.

    Accepts one ``X a b c d`` record per line (brackets and commas
    tolerated), comments after ``#``, and the bare word ``unknot`` for the
    crossingless diagram."""
    stripped = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            stripped.append(line)
    body = " ".join(stripped)
    if not body or body.lower() == "unknot":
        return UNKNOT
    tuples = [tuple(int(g) for g in m.groups())
              for m in _CROSSING_RE.finditer(body)]
    leftover = _CROSSING_RE.sub("", body).replace("PD", "").strip(" ,[]()")
    if not tuples or leftover:
        raise MalformedCode(f"unrecognized planar-diagram text: {text!r}")
    return diagram_from_tuples(tuples)


def diagram_from_tuples(tuples: Sequence[Tuple[int, int, int, int]]
                        ) -> KnotDiagram:
    # occurrence bookkeeping: every arc must appear exactly twice
    occurrences: Dict[int, List[Tuple[int, int]]] = {}
    for ci, (i, j, k, l) in enumerate(tuples):
        for pos, arc in enumerate((i, j, k, l)):
            occurrences.setdefault(arc, []).append((ci, pos))
    for arc, occ in occurrences.items():
        if len(occ) != 2:
            raise InconsistentArcs(
                f"arc {arc} appears {len(occ)} times, expected 2")

    # role[ci][pos] for over positions 1 and 3: "in" / "out" / None
    over_role: List[Dict[int, str | None]] = [
        {1: None, 3: None} for _ in tuples]

    def set_role(ci: int, pos: int, role: str) -> None:
        cur = over_role[ci][pos]
        if cur is not None and cur != role:
            raise InconsistentArcs(
                f"contradictory over-strand orientation at crossing {ci}")
        over_role[ci][pos] = role
        other = 3 if pos == 1 else 1
        opp = "out" if role == "in" else "in"
        if over_role[ci][other] is None:
            over_role[ci][other] = opp
        elif over_role[ci][other] != opp:
            raise InconsistentArcs(
                f"contradictory over-strand orientation at crossing {ci}")

    def propagate() -> None:
        changed = True
        while changed:
            changed = False
            for arc, occ in occurrences.items():
                roles = []
                for ci, pos in occ:
                    if pos == 0:
                        roles.append("end")     # under-in consumes the arc
                    elif pos == 2:
                        roles.append("start")   # under-out emits the arc
                    else:
                        r = over_role[ci][pos]
                        roles.append({"in": "end", "out": "start",
                                      None: None}[r])
                if roles.count("end") > 1 or roles.count("start") > 1:
                    raise InconsistentArcs(
                        f"arc {arc} has conflicting endpoint roles")
                for idx, r in enumerate(roles):
                    if r is None:
                        other = roles[1 - idx]
                        if other == "end":
                            ci, pos = occ[idx]
                            if over_role[ci][pos] != "out":
                                set_role(ci, pos, "out")
                                changed = True
                        elif other == "start":
                            ci, pos = occ[idx]
                            if over_role[ci][pos] != "in":
                                set_role(ci, pos, "in")
                                changed = True

    propagate()
    # break remaining ties with the consecutive-numbering convention
    for ci, (i, j, k, l) in enumerate(tuples):
        if over_role[ci][1] is None:
            if abs(j - l) == 1:
                set_role(ci, 1 if j < l else 3, "in")
            else:
                set_role(ci, 1 if j > l else 3, "in")
            propagate()

    crossings = []
    nxt: Dict[int, int] = {}

    def add_next(a: int, b: int) -> None:
        if a in nxt:
            raise InconsistentArcs(f"arc {a} has two successors")
        nxt[a] = b

    for ci, (i, j, k, l) in enumerate(tuples):
        if over_role[ci][1] == "in":
            over_in, over_out = j, l
            sign = -1          # over-strand runs j -> l
        else:
            over_in, over_out = l, j
            sign = +1          # over-strand runs l -> j
        crossings.append(Crossing(i, k, over_in, over_out, sign))
        add_next(i, k)
        add_next(over_in, over_out)

    preds: Dict[int, int] = {}
    for a, b in nxt.items():
        if b in preds:
            raise InconsistentArcs(f"arc {b} has two predecessors")
        preds[b] = a
    if set(preds) != set(nxt):
        raise InconsistentArcs("successor map is not a permutation of arcs")
    return KnotDiagram(tuple(crossings), tuple(sorted(nxt.items())))


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

FIXTURE_NAMES = ("unknot", "trefoil_lh", "trefoil_rh", "figure8",
                 "k5_1", "k5_2", "k6_1", "granny", "square")

FIXTURES_ENV = "TORSIONLAB_FIXTURES"


def fixture_dir() -> str:
    override = os.environ.get(FIXTURES_ENV)
    if override:
        return override
    return os.path.join(os.path.dirname(__file__), "fixtures")


def load_fixture(name: str) -> KnotDiagram:
    """Load a named planar-diagram fixture shipped with the package."""
    path = os.path.join(fixture_dir(), f"{name}.pd")
    with open(path, "r", encoding="utf-8") as fh:
        return parse_pd(fh.read())
