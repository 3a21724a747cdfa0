"""Sparse multivariate polynomials with exact rational coefficients.

Variables live in a :class:`VariableSpace`, an ordered list of named blocks.
Variable ``j`` of block ``u0`` is written ``u0j`` (so ``u01`` is block ``u0``,
slot 1).  Monomials are exponent tuples indexed by the flattened variable
list; a :class:`Poly` maps monomials to nonzero rationals.

Canonical printing and sign normalization use the lexicographic order on the
declared variable sequence.
"""

from __future__ import annotations

import math
import re
from functools import reduce
from operator import add
from typing import Iterable, Mapping, Sequence

from ._backend import ONE, Q, ZERO, to_q
from .errors import NotMultihomogeneous, ParseError, PreconditionError, SpaceMismatch

Monomial = tuple  # exponent vector over VariableSpace.names


class VariableSpace:
    """Ordered blocks of variables, e.g. ``[("x", 3), ("u0", 3), ("u1", 3)]``."""

    __slots__ = ("blocks", "names", "offsets", "_index", "_hash")

    def __init__(self, blocks: Iterable[tuple[str, int]]):
        blocks = tuple((str(name), int(size)) for name, size in blocks)
        seen = set()
        for name, size in blocks:
            if name in seen:
                raise PreconditionError(f"duplicate block name {name!r}")
            if size < 1:
                raise PreconditionError(f"block {name!r} has size {size} < 1")
            seen.add(name)
        self.blocks = blocks
        names = []
        offsets = {}
        for name, size in blocks:
            offsets[name] = len(names)
            names.extend(f"{name}{j}" for j in range(size))
        index = {}
        for i, v in enumerate(names):
            if v in index:
                raise PreconditionError(f"variable name {v!r} is ambiguous in {blocks}")
            index[v] = i
        self.names = tuple(names)
        self.offsets = offsets
        self._index = index
        self._hash = hash(blocks)

    @property
    def total_vars(self) -> int:
        return len(self.names)

    @property
    def block_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.blocks)

    def size(self, block: str) -> int:
        return dict(self.blocks)[block]

    def block_slice(self, block: str) -> slice:
        if block not in self.offsets:
            raise PreconditionError(f"unknown block {block!r}")
        start = self.offsets[block]
        return slice(start, start + self.size(block))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ParseError(f"unknown variable {name!r}") from None

    def var_index(self, block: str, slot: int) -> int:
        sl = self.block_slice(block)
        if not 0 <= slot < sl.stop - sl.start:
            raise PreconditionError(f"slot {slot} out of range for block {block!r}")
        return sl.start + slot

    def without(self, blocks: Iterable[str]) -> "VariableSpace":
        drop = set(blocks)
        return VariableSpace([b for b in self.blocks if b[0] not in drop])

    def extended(self, blocks: Iterable[tuple[str, int]]) -> "VariableSpace":
        return VariableSpace(list(self.blocks) + list(blocks))

    def __eq__(self, other):
        return isinstance(other, VariableSpace) and self.blocks == other.blocks

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = " ".join(f"{n}:{s}" for n, s in self.blocks)
        return f"VariableSpace({inner})"

    def declaration(self) -> str:
        return " ".join(f"{n}:{s}" for n, s in self.blocks)


def _grevlex_part(exp, start, stop):
    part = exp[start:stop]
    return (sum(part),) + tuple(-e for e in reversed(part))


class MonomialOrder:
    """A monomial order; ``key(space)`` returns a sort key (larger = bigger).

    Kinds: ``"lex"``, ``"grevlex"`` and ``"block"`` (lexicographic across the
    listed blocks, first listed is largest, grevlex inside each block; blocks
    not listed follow in declared order).
    """

    __slots__ = ("kind", "block_order", "_cache")

    def __init__(self, kind: str, block_order: Sequence[str] = ()):
        if kind not in ("lex", "grevlex", "block"):
            raise PreconditionError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.block_order = tuple(block_order)
        self._cache = {}

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def grevlex(cls):
        return cls("grevlex")

    @classmethod
    def block_elimination(cls, drop_first: Sequence[str]):
        return cls("block", drop_first)

    def key(self, space: VariableSpace):
        fn = self._cache.get(space)
        if fn is not None:
            return fn
        if self.kind == "lex":
            fn = tuple
        elif self.kind == "grevlex":
            def fn(exp):
                return (sum(exp),) + tuple(-e for e in reversed(exp))
        else:
            missing = [b for b in self.block_order if b not in space.offsets]
            if missing:
                raise PreconditionError(f"order names unknown blocks {missing}")
            order = list(self.block_order) + [b for b in space.block_names if b not in self.block_order]
            slices = [(space.block_slice(b).start, space.block_slice(b).stop) for b in order]

            def fn(exp):
                out = ()
                for start, stop in slices:
                    out += _grevlex_part(exp, start, stop)
                return out
        self._cache[space] = fn
        return fn

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.block_order == other.block_order
        )

    def __hash__(self):
        return hash((self.kind, self.block_order))

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder.block_elimination({list(self.block_order)})"
        return f"MonomialOrder.{self.kind}()"


CANONICAL_ORDER = MonomialOrder.lex()


class Poly:
    """Immutable sparse polynomial over a :class:`VariableSpace`."""

    __slots__ = ("space", "_terms", "_hash")

    def __init__(self, space: VariableSpace, terms: Mapping[Monomial, object] = None, *, _trusted=False):
        self.space = space
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        nv = space.total_vars
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nv or min(exp, default=0) < 0:
                raise PreconditionError(f"bad exponent vector {exp} for {space}")
            c = to_q(c)
            if c:
                clean[exp] = clean.get(exp, ZERO) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean

    # construction helpers
    @classmethod
    def zero(cls, space):
        return cls(space, {}, _trusted=True)

    @classmethod
    def constant(cls, space, c):
        c = to_q(c)
        if not c:
            return cls.zero(space)
        return cls(space, {(0,) * space.total_vars: c}, _trusted=True)

    @classmethod
    def var(cls, space, name_or_index, power=1):
        i = space.index(name_or_index) if isinstance(name_or_index, str) else int(name_or_index)
        exp = [0] * space.total_vars
        exp[i] = power
        return cls(space, {tuple(exp): ONE}, _trusted=True)

    @classmethod
    def linear_form(cls, space, block, coeffs):
        """``sum(coeffs[j] * block_j)``; coefficients may be rationals or Polys."""
        out = cls.zero(space)
        for j, c in enumerate(coeffs):
            out = out + cls.var(space, space.var_index(block, j)) * c
        return out

    # basic views
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            raise PreconditionError("degree of the zero polynomial")
        return max(sum(e) for e in self._terms)

    def block_degree(self, block: str) -> int:
        sl = self.space.block_slice(block)
        return max((sum(e[sl]) for e in self._terms), default=0)

    def variables(self) -> set[int]:
        out = set()
        for e in self._terms:
            out.update(i for i, v in enumerate(e) if v)
        return out

    def involves_block(self, block: str) -> bool:
        sl = self.space.block_slice(block)
        return any(any(e[sl]) for e in self._terms)

    def sorted_terms(self, order: MonomialOrder = CANONICAL_ORDER):
        key = order.key(self.space)
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = CANONICAL_ORDER):
        if not self._terms:
            raise PreconditionError("leading term of the zero polynomial")
        key = order.key(self.space)
        m = max(self._terms, key=key)
        return m, self._terms[m]

    # arithmetic
    def _check(self, other):
        if other.space != self.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.space, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.space, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.space, {m: -c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = to_q(c)
        if not c:
            return Poly.zero(self.space)
        return Poly(self.space, {m: v * c for m, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(map(add, m1, m2))
                s = out.get(m, ZERO) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(self.space, out, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        if isinstance(c, Poly):
            raise TypeError("polynomial division is not supported; use reduce()")
        return self.scale(ONE / to_q(c))

    def __pow__(self, e):
        if not isinstance(e, int) or isinstance(e, bool):
            raise PreconditionError("exponent must be an int")
        if e < 0:
            raise PreconditionError("negative power")
        result = Poly.constant(self.space, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, mono, c=ONE):
        return Poly(
            self.space,
            {tuple(map(add, m, mono)): v * c for m, v in self._terms.items()},
            _trusted=True,
        )

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.space == other.space and self._terms == other._terms
        if self.is_constant():
            return self._terms.get((0,) * self.space.total_vars, ZERO) == other
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space, frozenset(self._terms.items())))
        return self._hash

    # evaluation / substitution
    def evaluate(self, values: Mapping[int, object]):
        """Substitute rationals for variables (index -> value); returns a Poly."""
        vals = {int(i): to_q(v) for i, v in values.items()}
        out = {}
        for m, c in self._terms.items():
            m2 = list(m)
            for i, v in vals.items():
                if m2[i]:
                    c = c * v ** m2[i]
                    m2[i] = 0
            if not c:
                continue
            m2 = tuple(m2)
            s = out.get(m2, ZERO) + c
            if s:
                out[m2] = s
            else:
                del out[m2]
        return Poly(self.space, out, _trusted=True)

    def value(self, values: Sequence[object]):
        """Full evaluation at a point given as one rational per variable."""
        if len(values) != self.space.total_vars:
            raise PreconditionError("point has wrong length")
        pt = [to_q(v) for v in values]
        total = ZERO
        for m, c in self._terms.items():
            for v, e in zip(pt, m):
                if e:
                    c = c * v**e
            total += c
        return total

    def substitute(self, images: Mapping[int, "Poly"]):
        """Replace variables by polynomials of the same space."""
        cache = {}
        out = Poly.zero(self.space)
        for m, c in self._terms.items():
            rest = list(m)
            term = Poly.constant(self.space, c)
            for i, img in images.items():
                e = m[i]
                if e:
                    rest[i] = 0
                    key = (i, e)
                    if key not in cache:
                        cache[key] = img**e
                    term = term * cache[key]
            out = out + term.mul_monomial(tuple(rest))
        return out

    def transfer(self, space: VariableSpace, block_map: Mapping[str, str] = None):
        """Re-express over ``space``; ``block_map`` renames source blocks."""
        block_map = dict(block_map or {})
        moves = []
        for name, size in self.space.blocks:
            target = block_map.get(name, name)
            if target not in space.offsets:
                if self.involves_block(name):
                    raise SpaceMismatch(f"block {name!r} has no image in {space}")
                continue
            if space.size(target) != size:
                raise SpaceMismatch(f"block {name!r} size {size} != {target!r} size {space.size(target)}")
            moves.append((self.space.offsets[name], space.offsets[target], size))
        nv = space.total_vars
        out = {}
        for m, c in self._terms.items():
            e = [0] * nv
            for src, dst, size in moves:
                e[dst:dst + size] = m[src:src + size]
            e = tuple(e)
            out[e] = out.get(e, ZERO) + c
        return Poly(space, out)

    def coefficients(self, blocks: Sequence[str]):
        """Split along ``blocks``: returns {exponent-on-blocks: coefficient Poly}.

        The coefficient polys live in the same space with ``blocks`` absent.
        """
        idx = []
        for b in blocks:
            sl = self.space.block_slice(b)
            idx.extend(range(sl.start, sl.stop))
        out = {}
        for m, c in self._terms.items():
            key = tuple(m[i] for i in idx)
            rest = list(m)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: Poly(self.space, v, _trusted=True) for k, v in out.items()}

    # printing
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _format_coeff(c):
    c = to_q(c)
    if c.denominator == 1:
        return str(int(c.numerator))
    return f"{int(c.numerator)}/{int(c.denominator)}"


def format_monomial(space: VariableSpace, exp) -> str:
    parts = []
    for name, e in zip(space.names, exp):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly, order: MonomialOrder = CANONICAL_ORDER) -> str:
    """Render in the text grammar with deterministic (descending) term order."""
    if p.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms(order)):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(p.space, m)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^])|(?P<bad>\S))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        kind = m.lastgroup
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r} at column {m.start(kind)}")
        tokens.append((kind, m.group(kind)))
    return tokens


def parse_poly(text: str, space: VariableSpace) -> Poly:
    """Parse ``"u00*u11 - 3/2*u01^2*u10 + 4"`` over ``space``."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")
    pos = 0
    result = Poly.zero(space)

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    while pos < len(tokens):
        sign = ONE
        while peek()[0] == "op" and peek()[1] in "+-":
            if peek()[1] == "-":
                sign = -sign
            pos += 1
        coeff = sign
        exp = [0] * space.total_vars
        need_factor = True
        while True:
            kind, tok = peek()
            if kind == "num":
                try:
                    coeff = coeff * to_q(tok)
                except ZeroDivisionError:
                    raise ParseError(f"zero denominator in {tok!r}") from None
                pos += 1
                if peek() == ("op", "^"):
                    raise ParseError("exponent on a numeric literal")
            elif kind == "name":
                i = space.index(tok)
                pos += 1
                power = 1
                if peek() == ("op", "^"):
                    pos += 1
                    kind2, tok2 = peek()
                    if kind2 != "num" or "/" in tok2:
                        raise ParseError(f"exponent of {tok} must be a non-negative integer")
                    power = int(tok2)
                    pos += 1
                exp[i] += power
            else:
                if need_factor:
                    raise ParseError(f"expected a factor, found {tok!r}")
                break
            need_factor = False
            if peek() == ("op", "*"):
                pos += 1
                need_factor = True
                continue
            break
        kind, tok = peek()
        if kind is not None and not (kind == "op" and tok in "+-"):
            raise ParseError(f"unexpected token {tok!r}")
        if kind is not None and pos == len(tokens) - 1:
            raise ParseError("dangling operator")
        result = result + Poly(space, {tuple(exp): coeff}, _trusted=bool(coeff)) if coeff else result
    return result


def multidegree(p: Poly) -> tuple[int, ...]:
    """Per-block degree vector; raises unless every term has the same one."""
    if p.is_zero():
        raise PreconditionError("multidegree of the zero polynomial")
    sp = p.space
    slices = [sp.block_slice(b) for b in sp.block_names]
    degs = None
    for m in p._terms:
        d = tuple(sum(m[s]) for s in slices)
        if degs is None:
            degs = d
        elif d != degs:
            raise NotMultihomogeneous(f"not multihomogeneous: {degs} vs {d}")
    return degs


def is_homogeneous_in(p: Poly, blocks: Sequence[str]) -> bool:
    if p.is_zero():
        return True
    idx = []
    for b in blocks:
        sl = p.space.block_slice(b)
        idx.append(sl)
    degs = {tuple(sum(m[s]) for s in idx) for m in p._terms}
    return len(degs) == 1


def normalize_primitive(p: Poly, order: MonomialOrder = CANONICAL_ORDER) -> Poly:
    """Scale to coprime integer coefficients with positive leading coefficient."""
    if p.is_zero():
        raise PreconditionError("cannot normalize the zero polynomial")
    coeffs = list(p._terms.values())
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (int(c.denominator) for c in coeffs), 1)
    num = reduce(math.gcd, (abs(int(c.numerator)) * (den // int(c.denominator)) for c in coeffs), 0)
    scale = Q(den, num)
    if p.leading_term(order)[1] < 0:
        scale = -scale
    return p.scale(scale)


def random_poly(space, rng, nterms, max_degree, coeff_range=9, homogeneous=False):
    """Random polynomial helper used by tests and benchmarks."""
    nv = space.total_vars
    terms = {}
    attempts = 0
    while len(terms) < nterms and attempts < 50 * nterms:  # the monomial supply may run out
        attempts += 1
        if homogeneous:
            deg = max_degree
        else:
            deg = rng.randint(0, max_degree)
        exp = [0] * nv
        for _ in range(deg):
            exp[rng.randrange(nv)] += 1
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            terms[tuple(exp)] = Q(c)
    return Poly(space, terms)
