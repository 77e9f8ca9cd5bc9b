"""Generalized reflections ``w s w^-1`` in a RAAG and the trimming algorithm.

A reflection is stored with the shortest conjugator: ``w`` is reduced and
has no terminal letter whose generator equals or commutes with that of
``s``.  Then ``w s w^-1`` is reduced of length ``2|w| + 1``.

"u is a prefix of v" is decided by the length identity
``|u^-1 v| = |v| - |u|``, which holds iff some reduced expression of v
begins with u.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import InputError, TrimNonTermination
from .graphs import SimplicialGraph, graph_from_directives, parse_graph_directives
from .words import (
    CommutingGraph,
    GroupWord,
    Letter,
    alphabet,
    canonical_codes,
    commuting_graph_of,
    normal_form_codes,
    parse_letter,
    reduce_codes,
)

TRIM_ITERATION_CAP = 10_000

Expr = tuple[tuple[int, int], ...]  # word over indexed generators: (index, sign)


@dataclass(frozen=True)
class Reflection:
    w: GroupWord
    s: Letter

    def __post_init__(self):
        if self.w.involutive:
            raise InputError("reflections live in a RAAG")
        if self.s[0] not in self.w.ambient.adjacency or self.s[1] not in (1, -1):
            raise InputError(f"bad reflection letter {self.s!r}")

    @property
    def ambient(self) -> SimplicialGraph:
        return self.w.ambient

    @cached_property
    def word(self) -> GroupWord:
        """The reduced word ``w s w^-1``."""
        return self.w * GroupWord((self.s,), self.ambient) * self.w.inverse()

    @cached_property
    def element(self) -> tuple[int, ...]:
        alph = alphabet(self.ambient)
        return normal_form_codes(alph.encode(self.word.letters), alph.commute, False)

    @cached_property
    def inverse_element(self) -> tuple[int, ...]:
        alph = alphabet(self.ambient)
        return normal_form_codes(alph.encode(self.word.inverse().letters), alph.commute, False)

    def __str__(self):
        w = f" {self.w}" if len(self.w) else ""
        return f"w:{w} ; s: {GroupWord((self.s,), self.ambient)}"


def normalize_reflection(w: GroupWord, s: Letter) -> Reflection:
    alph = alphabet(w.ambient)
    comm = alph.commute
    g = alph.index[s[0]]
    codes = list(normal_form_codes(alph.encode(w.letters), comm, False))
    stripped = True
    while stripped:
        stripped = False
        # scan from the right for a letter that can be moved to the end
        blockers = 0
        for i in range(len(codes) - 1, -1, -1):
            h = codes[i] >> 1
            terminal = not blockers & ~(comm[h] | 1 << h)
            if terminal and (h == g or (comm[g] >> h) & 1):
                del codes[i]
                stripped = True
                break
            blockers |= 1 << h
    w_min = GroupWord.from_codes(canonical_codes(codes, comm), w.ambient)
    return Reflection(w_min, (s[0], int(s[1])))


def is_prefix(u: GroupWord, v: GroupWord) -> bool:
    """Whether some reduced expression of v begins with u."""
    alph = alphabet(v.ambient)
    comm = alph.commute
    lu = len(reduce_codes(alph.encode(u.letters), comm, False))
    lv = len(reduce_codes(alph.encode(v.letters), comm, False))
    lq = len(reduce_codes(alph.encode((u.inverse() * v).letters), comm, False))
    return lq == lv - lu


# --- sets with provenance ---------------------------------------------------


def _free_reduce(expr) -> Expr:
    out: list[tuple[int, int]] = []
    for i, s in expr:
        if out and out[-1] == (i, -s):
            out.pop()
        else:
            out.append((i, s))
    return tuple(out)


def _invert(expr) -> Expr:
    return tuple((i, -s) for i, s in reversed(expr))


@dataclass(frozen=True)
class ReflectionSet:
    """Reflections together with bookkeeping back to the input reflections.

    ``provenance[k]`` writes member k over ``originals``; ``recovery[i]``
    writes original i over members.  ``log`` records each trimming step.
    """

    members: tuple[Reflection, ...]
    originals: tuple[Reflection, ...] = ()
    provenance: tuple[Expr, ...] = ()
    recovery: tuple[Expr, ...] = ()
    log: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def of(cls, reflections: Sequence[Reflection]) -> "ReflectionSet":
        refl = tuple(reflections)
        ids = tuple(((i, 1),) for i in range(len(refl)))
        return cls(refl, refl, ids, ids, ())

    def __len__(self):
        return len(self.members)

    @property
    def ambient(self) -> SimplicialGraph:
        return self.members[0].ambient if self.members else self.originals[0].ambient

    def words(self) -> list[GroupWord]:
        return [r.word for r in self.members]


def evaluate_expr(expr: Expr, gens: Sequence[Reflection], ambient: SimplicialGraph) -> GroupWord:
    out = GroupWord.identity(ambient)
    for i, s in expr:
        out = out * (gens[i].word if s > 0 else gens[i].word.inverse())
    return out


@dataclass(frozen=True)
class TrimViolation:
    kind: str  # "duplicate", "inverse" or "prefix"
    pair: tuple[int, int]
    sign: int = 0  # for "prefix": u = w s^sign

    def to_json(self) -> dict:
        return {"kind": self.kind, "pair": list(self.pair), "sign": self.sign}


def _violations(members: Sequence[Reflection]):
    n = len(members)
    for j in range(n):
        for i in range(j):
            if members[i].element == members[j].element:
                yield TrimViolation("duplicate", (i, j))
            elif members[i].element == members[j].inverse_element:
                yield TrimViolation("inverse", (i, j))
    for i in range(n):
        r = members[i]
        for j in range(n):
            if i == j or members[j].element in (r.element, r.inverse_element):
                continue
            for sign in (1, -1):
                u = r.w * GroupWord(((r.s[0], r.s[1] * sign),), r.ambient)
                if is_prefix(u, members[j].w):
                    yield TrimViolation("prefix", (i, j), sign)


def trim_violation(T: ReflectionSet | Sequence[Reflection]) -> TrimViolation | None:
    members = T.members if isinstance(T, ReflectionSet) else tuple(T)
    return next(_violations(members), None)


def is_trimmed(T: ReflectionSet | Sequence[Reflection]) -> bool:
    return trim_violation(T) is None


def trim(T: ReflectionSet, max_iterations: int = TRIM_ITERATION_CAP) -> ReflectionSet:
    members = list(T.members)
    prov = list(T.provenance)
    # recovery words refer to member positions; they are rewritten on every change
    recovery = [list(e) for e in T.recovery]
    log = list(T.log)

    def substitute(pos: int, repl: Expr, drop: bool):
        for k, expr in enumerate(recovery):
            out = []
            for i, s in expr:
                if i == pos:
                    out.extend(repl if s > 0 else _invert(repl))
                else:
                    out.append((i, s))
            if drop:
                out = [(i - 1 if i > pos else i, s) for i, s in out]
            recovery[k] = list(_free_reduce(out))

    for _ in range(max_iterations):
        v = trim_violation(members)
        if v is None:
            return ReflectionSet(
                tuple(members), T.originals, tuple(prov), tuple(tuple(e) for e in recovery), tuple(log)
            )
        i, j = v.pair
        if v.kind in ("duplicate", "inverse"):
            sign = 1 if v.kind == "duplicate" else -1
            substitute(j, ((i, sign),), drop=False)
            substitute(j, (), drop=True)
            log.append(f"drop {j} ({v.kind} of {i})")
            del members[j]
            del prov[j]
            continue
        r, rj = members[i], members[j]
        # w_j = (w_i s^sign) x, so conjugating r_j by r_i^(-sign) shortens it
        u = r.w * GroupWord(((r.s[0], r.s[1] * v.sign),), r.ambient)
        x = u.inverse() * rj.w
        new = normalize_reflection(r.w * x, rj.s)
        e = -v.sign
        p_i = prov[i] if e > 0 else _invert(prov[i])
        prov[j] = _free_reduce(p_i + prov[j] + _invert(p_i))
        # old r_j = r_i^-e new r_i^e
        substitute(j, ((i, -e), (j, 1), (i, e)), drop=False)
        log.append(f"replace {j} by r{i}^{e} r{j} r{i}^{-e}")
        members[j] = new
    raise TrimNonTermination(f"trim did not finish within {max_iterations} iterations")


# --- RAAG presentation ------------------------------------------------------


@dataclass(frozen=True)
class ReflectionPresentation:
    delta: CommutingGraph
    trimmed: ReflectionSet
    verified_to_depth: int
    truncated: bool


def reflection_raag_presentation(T: ReflectionSet, depth: int = 8, budget: int | None = None) -> ReflectionPresentation:
    from .config import Caps
    from .decision import kernel_search_report

    trimmed = trim(T)
    names = [f"r{i}" for i in range(len(trimmed))]
    delta = commuting_graph_of(trimmed.words(), names)
    budget = Caps().kernel_budget if budget is None else budget
    result = kernel_search_report(delta.graph, delta.assignment, trimmed.ambient, False, depth, budget)
    if result.witness is not None:
        raise RuntimeError(f"trimmed reflections satisfy a relation outside Delta: {result.witness}")
    return ReflectionPresentation(delta, trimmed, result.depth, result.truncated)


# --- file format --------------------------------------------------------------


def parse_reflection_line(line: str, ambient: SimplicialGraph) -> Reflection:
    parts = {}
    for chunk in line.split(";"):
        key, sep, value = chunk.partition(":")
        if not sep or key.strip() not in ("w", "s"):
            raise InputError(f"bad reflection line {line!r}")
        parts[key.strip()] = value.strip()
    if "s" not in parts:
        raise InputError(f"reflection line without 's:' {line!r}")
    s_tokens = parts["s"].split()
    if len(s_tokens) != 1:
        raise InputError(f"'s:' must be a single letter in {line!r}")
    s = parse_letter(s_tokens[0])
    if s[0] not in ambient.adjacency:
        raise InputError(f"unknown generator {s[0]!r}")
    w = GroupWord.parse(parts.get("w", ""), ambient)
    return normalize_reflection(w, s)


def parse_reflections(text: str) -> ReflectionSet:
    """``vertices:``/``gamma:`` directives followed by ``w: ... ; s: ...`` lines."""
    directives, lines = parse_graph_directives(text)
    if "lambda" in directives:
        raise InputError("reflection files take no 'lambda:' directive")
    gamma, _ = graph_from_directives(directives)
    refl = [parse_reflection_line(line, gamma) for line in lines]
    if not refl:
        raise InputError("no reflections given")
    return ReflectionSet.of(refl)
