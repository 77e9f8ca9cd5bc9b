"""Words in right-angled Artin and Coxeter groups.

A letter is a pair ``(generator, sign)``.  Internally letters are packed into
small integers, ``2 * index + (sign == -1)``, where ``index`` is the position
of the generator in the sorted vertex list; the integer order on codes is
therefore the order on ``(name, sign)`` with ``+1`` before ``-1``.

Reduction is Tits-move cancellation done greedily from the left, which
always yields a geodesic.  The canonical form is the lexicographically least
word among all geodesics related by swaps of commuting letters; by the
uniqueness half of Tits' solution this is a function of the group element,
so two words are equal in the group iff their canonical forms coincide.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import AmbientMismatch, InputError, MixedComponents, NotUniquePath, WordTooLong
from .graphs import SimplicialGraph, ThetaGraph

MAX_WORD_LEN = 10**6

Letter = tuple[str, int]


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]
    index: dict
    commute: tuple[int, ...]  # bitmask of generators adjacent to each generator

    def encode(self, letters: Iterable[Letter]) -> list[int]:
        try:
            return [2 * self.index[g] + (s < 0) for g, s in letters]
        except KeyError as exc:
            raise InputError(f"unknown generator {exc.args[0]!r}") from None

    def decode(self, codes: Iterable[int]) -> tuple[Letter, ...]:
        return tuple((self.names[c >> 1], -1 if c & 1 else 1) for c in codes)

    def __hash__(self):
        return hash(self.names)


@lru_cache(maxsize=256)
def alphabet(graph: SimplicialGraph) -> Alphabet:
    names = tuple(sorted(graph.vertices))
    index = {v: i for i, v in enumerate(names)}
    masks = []
    for v in names:
        m = 0
        for w in graph.adjacency[v]:
            m |= 1 << index[w]
        masks.append(m)
    return Alphabet(names, index, tuple(masks))


# --- low-level code kernels ---------------------------------------------


def reduce_codes(codes: Iterable[int], commute: Sequence[int], involutive: bool) -> list[int]:
    """Greedy left-to-right cancellation; returns a geodesic code list."""
    out: list[int] = []
    for x in codes:
        g = x >> 1
        target = x if involutive else x ^ 1
        mask = commute[g]
        cancelled = False
        i = len(out) - 1
        while i >= 0:
            y = out[i]
            h = y >> 1
            if h == g:
                if y == target:
                    del out[i]
                    cancelled = True
                break
            if not (mask >> h) & 1:
                break
            i -= 1
        if not cancelled:
            out.append(x)
    return out


def canonical_codes(codes: Sequence[int], commute: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least reordering of ``codes`` by commuting swaps."""
    n = len(codes)
    if n < 2:
        return tuple(codes)
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    last: dict[int, int] = {}
    for j, x in enumerate(codes):
        g = x >> 1
        mask = commute[g]
        for h, pos in last.items():
            if h == g or not (mask >> h) & 1:
                succ[pos].append(j)
                indeg[j] += 1
        last[g] = j
    heap = [(codes[j], j) for j in range(n) if indeg[j] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        x, j = heapq.heappop(heap)
        out.append(x)
        for k in succ[j]:
            indeg[k] -= 1
            if indeg[k] == 0:
                heapq.heappush(heap, (codes[k], k))
    return tuple(out)


def normal_form_codes(codes: Iterable[int], commute: Sequence[int], involutive: bool) -> tuple[int, ...]:
    return canonical_codes(reduce_codes(codes, commute, involutive), commute)


def inverse_codes(codes: Sequence[int], involutive: bool) -> list[int]:
    if involutive:
        return list(reversed(codes))
    return [c ^ 1 for c in reversed(codes)]


# --- GroupWord -----------------------------------------------------------


@dataclass(frozen=True)
class GroupWord:
    letters: tuple[Letter, ...]
    ambient: SimplicialGraph
    involutive: bool = False

    def __post_init__(self):
        letters = tuple((g, int(s)) for g, s in self.letters)
        if len(letters) > MAX_WORD_LEN:
            raise WordTooLong(f"word of length {len(letters)} exceeds {MAX_WORD_LEN}")
        verts = self.ambient.adjacency
        for g, s in letters:
            if g not in verts:
                raise InputError(f"generator {g!r} is not a vertex of the ambient graph")
            if s not in (1, -1):
                raise InputError(f"bad sign {s!r}")
        if self.involutive:
            letters = tuple((g, 1) for g, _ in letters)
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_codes(cls, codes: Iterable[int], ambient: SimplicialGraph, involutive: bool = False) -> "GroupWord":
        return cls(alphabet(ambient).decode(codes), ambient, involutive)

    @classmethod
    def parse(cls, text: str, ambient: SimplicialGraph, involutive: bool = False) -> "GroupWord":
        return cls(tuple(parse_letter(tok) for tok in text.split()), ambient, involutive)

    @classmethod
    def identity(cls, ambient: SimplicialGraph, involutive: bool = False) -> "GroupWord":
        return cls((), ambient, involutive)

    @property
    def codes(self) -> list[int]:
        return alphabet(self.ambient).encode(self.letters)

    def _check(self, other: "GroupWord"):
        if self.ambient != other.ambient or self.involutive != other.involutive:
            raise AmbientMismatch("words live in different groups")

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        self._check(other)
        return GroupWord(self.letters + other.letters, self.ambient, self.involutive)

    def __pow__(self, n: int) -> "GroupWord":
        base = self if n >= 0 else self.inverse()
        return GroupWord(base.letters * abs(n), self.ambient, self.involutive)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -s) for g, s in reversed(self.letters)), self.ambient, self.involutive)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_letters(self.letters, self.involutive)

    def reduced(self) -> "GroupWord":
        return reduce(self)

    def is_trivial(self) -> bool:
        alph = alphabet(self.ambient)
        return not reduce_codes(alph.encode(self.letters), alph.commute, self.involutive)


def parse_letter(tok: str) -> Letter:
    if tok.endswith("^-1"):
        return tok[:-3], -1
    if tok.endswith("^1"):
        return tok[:-2], 1
    if "^" in tok:
        raise InputError(f"bad letter {tok!r}")
    return tok, 1


def format_letters(letters: Iterable[Letter], involutive: bool = False) -> str:
    return " ".join(g if s > 0 or involutive else f"{g}^-1" for g, s in letters)


def reduce(w: GroupWord) -> GroupWord:
    alph = alphabet(w.ambient)
    nf = normal_form_codes(alph.encode(w.letters), alph.commute, w.involutive)
    return GroupWord(alph.decode(nf), w.ambient, w.involutive)


def equals(u: GroupWord, v: GroupWord) -> bool:
    u._check(v)
    return (u * v.inverse()).is_trivial()


def commutes(u: GroupWord, v: GroupWord) -> bool:
    u._check(v)
    return equals(u * v, v * u)


# --- Lambda-edge words --------------------------------------------------

LambdaLetter = tuple[tuple[str, str], int]


def orient(a: str, b: str) -> tuple[tuple[str, str], int]:
    """Oriented generator and sign for the element ``a b``."""
    return ((a, b), 1) if a < b else ((b, a), -1)


def lambda_name(edge: tuple[str, str]) -> str:
    return f"{edge[0]}-{edge[1]}"


@dataclass(frozen=True)
class LambdaWord:
    letters: tuple[LambdaLetter, ...]
    theta: ThetaGraph

    def __post_init__(self):
        for (a, b), s in self.letters:
            if a >= b or frozenset((a, b)) not in self.theta.lam.edges:
                raise InputError(f"{a}-{b} is not an oriented Lambda-edge")
            if s not in (1, -1):
                raise InputError(f"bad sign {s!r}")

    @classmethod
    def parse(cls, text: str, theta: ThetaGraph) -> "LambdaWord":
        letters = []
        for tok in text.split():
            name, sign = parse_letter(tok)
            a, _, b = name.partition("-")
            edge, flip = orient(a, b)
            letters.append((edge, sign * flip))
        return cls(tuple(letters), theta)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_letters((lambda_name(e), s) for e, s in self.letters)

    def expand(self) -> GroupWord:
        out = []
        for (a, b), s in self.letters:
            out.extend([(a, 1), (b, 1)] if s > 0 else [(b, 1), (a, 1)])
        return GroupWord(tuple(out), self.theta.gamma, involutive=True)

    def as_delta_word(self, delta: "CommutingGraph") -> GroupWord:
        return GroupWord(tuple((lambda_name(e), s) for e, s in self.letters), delta.graph, involutive=False)


def unique_lambda_path(theta: ThetaGraph, a: str, b: str) -> list[str]:
    ca, cb = theta.component_of(a), theta.component_of(b)
    if ca != cb:
        raise MixedComponents(f"{a} and {b} lie in different Lambda-components")
    comp = theta.components[ca]
    n_edges = sum(1 for e in theta.lam.edges if e <= comp)
    if n_edges != len(comp) - 1:
        raise NotUniquePath(f"Lambda-component of {a} contains a cycle")
    parent = {a: None}
    stack = [a]
    while stack:
        u = stack.pop()
        for w in theta.lam.adjacency[u]:
            if w not in parent:
                parent[w] = u
                stack.append(w)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


def lambda_edge_word(theta: ThetaGraph, pairs: Iterable[tuple[str, str]]) -> LambdaWord:
    letters = []
    for a, b in pairs:
        if a == b:
            continue
        path = unique_lambda_path(theta, a, b)
        letters.extend(orient(u, v) for u, v in zip(path, path[1:]))
    return LambdaWord(tuple(letters), theta)


# --- commuting graph ----------------------------------------------------


@dataclass(frozen=True)
class CommutingGraph:
    """Defining graph of the candidate RAAG: one vertex per generator."""

    graph: SimplicialGraph
    generators: tuple[tuple[str, GroupWord], ...]

    @property
    def assignment(self) -> dict[str, GroupWord]:
        return dict(self.generators)


def lambda_edges_commute(theta: ThetaGraph, e: tuple[str, str], f: tuple[str, str]) -> bool:
    """Distinct Lambda-edges commute iff their endpoints span a Gamma-square."""
    if set(e) & set(f):
        return e == f
    adj = theta.gamma.adjacency
    return all(y in adj[x] for x in e for y in f)


def commuting_graph(theta: ThetaGraph) -> CommutingGraph:
    edges = theta.lambda_edges
    names = [lambda_name(e) for e in edges]
    delta_edges = [
        (names[i], names[j])
        for i in range(len(edges))
        for j in range(i + 1, len(edges))
        if lambda_edges_commute(theta, edges[i], edges[j])
    ]
    graph = SimplicialGraph.from_edges(names, delta_edges)
    gens = tuple(
        (name, GroupWord(((a, 1), (b, 1)), theta.gamma, involutive=True)) for name, (a, b) in zip(names, edges)
    )
    return CommutingGraph(graph, gens)


def commuting_graph_of(words: Sequence[GroupWord], names: Sequence[str] | None = None) -> CommutingGraph:
    """Commuting graph of arbitrary group elements, tested with the generic word problem."""
    names = list(names) if names is not None else [f"r{i}" for i in range(len(words))]
    delta_edges = [
        (names[i], names[j])
        for i in range(len(words))
        for j in range(i + 1, len(words))
        if commutes(words[i], words[j])
    ]
    return CommutingGraph(SimplicialGraph.from_edges(names, delta_edges), tuple(zip(names, words)))

