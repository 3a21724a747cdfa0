"""Text formats read and written by the command line tool.

Input files are line based; ``#`` starts a comment::

    # the line x2 = x3 = 0 in P^3
    ambient 3
    blocks x:4
    dim 1
    component 1:
    x2
    x3

``ambient`` is ``r`` for a cycle in ``P^r`` and ``N M`` for a graph in
``P^N x P^M``.  ``blocks`` declares the variable space; when omitted it is
derived from ``ambient`` (``x:r+1``, or ``x:N+1 y:M+1``).  Each
``component <multiplicity>:`` header opens a list of generators, one per line.
A file holding a single form (for ``power-test``) may use ``form:`` instead.

Output documents are ``key: value`` lines in a fixed order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chow import Cycle, CycleComponent
from .errors import ParseError, PreconditionError
from .graphs import GraphCycle, bihomogeneity_problems
from .groebner import IdealGens
from .poly import Poly, VariableSpace, format_poly, is_homogeneous_in, parse_poly


@dataclass
class Section:
    multiplicity: int
    lines: list = field(default_factory=list)  # (line number, text)
    gens: list = field(default_factory=list)


@dataclass
class SystemFile:
    path: str
    ambient: tuple | None = None
    space: VariableSpace | None = None
    dim: int | None = None
    sections: list = field(default_factory=list)
    form_section: bool = False


def _parse_blocks(text: str, lineno: int) -> VariableSpace:
    blocks = []
    for item in text.split():
        name, sep, size = item.partition(":")
        if not sep or not name.isidentifier():
            raise ParseError(f"line {lineno}: bad block declaration {item!r} (want name:size)")
        try:
            blocks.append((name, int(size)))
        except ValueError:
            raise ParseError(f"line {lineno}: block size {size!r} is not an integer") from None
    if not blocks:
        raise ParseError(f"line {lineno}: empty block declaration")
    try:
        return VariableSpace(blocks)
    except PreconditionError as exc:
        raise ParseError(f"line {lineno}: {exc}") from None


def _ints(text, lineno, what):
    try:
        vals = tuple(int(t) for t in text.split())
    except ValueError:
        raise ParseError(f"line {lineno}: {what} needs integers, got {text!r}") from None
    if not vals:
        raise ParseError(f"line {lineno}: {what} needs a value")
    return vals


def parse_system_text(text: str, path: str = "<string>") -> SystemFile:
    """Parse a system file without interpreting it as a cycle or a graph."""
    out = SystemFile(path)
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if line.endswith(":") and (word.startswith("component") or line == "form:"):
            if line == "form:":
                out.form_section = True
                mult = 1
            else:
                body = line[len("component"):-1].strip() or "1"
                try:
                    mult = int(body)
                except ValueError:
                    raise ParseError(f"line {lineno}: bad multiplicity {body!r}") from None
            current = Section(mult)
            out.sections.append(current)
        elif current is None and word == "ambient":
            out.ambient = _ints(rest, lineno, "ambient")
        elif current is None and word == "blocks":
            out.space = _parse_blocks(rest, lineno)
        elif current is None and word == "dim":
            (out.dim,) = _ints(rest, lineno, "dim")
        elif current is None:
            raise ParseError(f"line {lineno}: unknown header {word!r}")
        else:
            current.lines.append((lineno, line))
    if out.space is None:
        if out.ambient is None:
            raise ParseError("missing 'blocks' (or 'ambient') header")
        if len(out.ambient) == 1:
            out.space = VariableSpace([("x", out.ambient[0] + 1)])
        elif len(out.ambient) == 2:
            out.space = VariableSpace([("x", out.ambient[0] + 1), ("y", out.ambient[1] + 1)])
        else:
            raise ParseError("ambient takes r (cycle) or N M (graph)")
    if not out.sections:
        raise ParseError("no 'component <m>:' or 'form:' section")
    for sec in out.sections:
        for lineno, line in sec.lines:
            try:
                sec.gens.append(parse_poly(line, out.space))
            except ParseError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
    return out


def read_system(path: str) -> SystemFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_system_text(text, path)


def _need(sf: SystemFile, attr: str):
    v = getattr(sf, attr)
    if v is None:
        raise ParseError(f"{sf.path}: missing '{attr}' header")
    return v


def to_cycle(sf: SystemFile) -> Cycle:
    amb = _need(sf, "ambient")
    if len(amb) != 1:
        raise PreconditionError(f"{sf.path}: a cycle file needs 'ambient r'")
    r, n = amb[0], _need(sf, "dim")
    comps = [CycleComponent(r, n, IdealGens(sf.space, s.gens), s.multiplicity) for s in sf.sections]
    return Cycle(comps)


def to_graph(sf: SystemFile) -> GraphCycle:
    amb = _need(sf, "ambient")
    if len(amb) != 2:
        raise PreconditionError(f"{sf.path}: a graph file needs 'ambient N M'")
    if len(sf.sections) != 1 or sf.sections[0].multiplicity != 1:
        raise PreconditionError(f"{sf.path}: a graph file holds exactly one component of multiplicity 1")
    return GraphCycle(amb[0], amb[1], _need(sf, "dim"), IdealGens(sf.space, sf.sections[0].gens))


def to_ideal(sf: SystemFile) -> IdealGens:
    gens = [g for s in sf.sections for g in s.gens]
    return IdealGens(sf.space, gens)


def to_form(sf: SystemFile) -> Poly:
    gens = [g for s in sf.sections for g in s.gens]
    if len(gens) != 1:
        raise PreconditionError(f"{sf.path}: expected exactly one polynomial, found {len(gens)}")
    return gens[0]


def structural_problems(sf: SystemFile, kind: str) -> list[str]:
    """Cheap checks: headers present, block sizes, homogeneity.  No Groebner work."""
    problems = []
    if kind in ("chow",):
        if sf.ambient is None or len(sf.ambient) != 1:
            problems.append("cycle file needs 'ambient r'")
        elif sf.space.blocks != (("x", sf.ambient[0] + 1),):
            problems.append(f"blocks must be x:{sf.ambient[0] + 1} for ambient {sf.ambient[0]}")
        if sf.dim is None:
            problems.append("missing 'dim' header")
        elif sf.ambient and len(sf.ambient) == 1 and not 0 <= sf.dim < sf.ambient[0]:
            problems.append(f"dim {sf.dim} not in [0, {sf.ambient[0]})")
        gi = 0
        for s in sf.sections:
            if s.multiplicity < 1:
                problems.append(f"component multiplicity {s.multiplicity} < 1")
            for g in s.gens:
                gi += 1
                if sf.space.blocks and not is_homogeneous_in(g, [b for b, _ in sf.space.blocks]):
                    problems.append(f"generator {gi} not homogeneous")
    elif kind in ("pushforward", "degree2", "compose"):
        amb = sf.ambient
        if amb is None or len(amb) != 2:
            problems.append("graph file needs 'ambient N M'")
        elif sf.space.blocks != (("x", amb[0] + 1), ("y", amb[1] + 1)):
            problems.append(f"blocks must be x:{amb[0] + 1} y:{amb[1] + 1}")
        if sf.dim is None:
            problems.append("missing 'dim' header")
        if len(sf.sections) != 1:
            problems.append("graph file must hold exactly one component")
        if not problems:
            problems.extend(bihomogeneity_problems(to_ideal(sf)))
    elif kind == "power-test":
        n_gens = sum(len(s.gens) for s in sf.sections)
        if n_gens != 1:
            problems.append(f"expected exactly one polynomial, found {n_gens}")
    return problems


# ----------------------------------------------------------------------------
# output

def format_document(items) -> str:
    """``key: value`` lines; values containing newlines are rejected."""
    lines = []
    for key, value in items:
        value = str(value)
        if "\n" in value:
            raise ValueError(f"multi-line value for {key!r}")
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def poly_items(key: str, polys) -> list[tuple[str, str]]:
    return [(key, format_poly(p)) for p in polys]
