"""Reflection-group elements: words, matrices, actions, and length functions.

An element is a matrix acting on the ambient space of its root system.
Words are sequences of generator *names* (`"s1"`, `"t"`, `"tp"`, ...);
1-based generator positions are accepted as integer tokens.  Extended
tokens `sp0, sp1, ...` expand to the standard conjugated-reflection words
(kind B: sp_i negates coordinate i+1; kind D: sp_i negates coordinates 1
and i+2; kind A: sp_i is the empty word).

Two length functions are exposed:

* :func:`length` counts inversions against the standard positive system —
  the reflection length profile of the ambient realization;
* :func:`coxeter_length` counts inversions against the positive system
  attached to the *generators* (`coxeter_positive_roots`), i.e. the word
  length of the presentation actually in use.

The two agree for standard-profile systems and for paper5 kind A; they
differ for paper5 kinds B and D, whose extra generator is a long element
of the standard system but a simple one of its own.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import CapacityError, UsageError
from .linalg import (
    Matrix,
    Vector,
    identity,
    matmul,
    matvec,
    neg,
    transpose,
    vec,
)
from .rootsys import RootSystem, build_root_system, reflect, weyl_order

__all__ = [
    "WeylElem",
    "act",
    "coxeter_length",
    "coxeter_standard",
    "descents",
    "enumerate_group",
    "from_word",
    "generator",
    "generators",
    "identity_elem",
    "inverse",
    "is_reflection_matrix",
    "length",
    "multiply",
    "parse_word",
    "reduced_word",
    "support",
    "word_names",
]

Word = Tuple[int, ...]  # 0-based generator positions (internal canonical form)
WordLike = Union[str, Iterable[Union[int, str]]]

DEFAULT_GROUP_CAP = 1_000_000


@dataclass(frozen=True, eq=False)
class WeylElem:
    """Group element: ambient matrix plus an optional defining word.

    Equality and hashing use (root system, matrix) only — the word is
    advisory and need not be reduced.
    """

    rs: RootSystem
    matrix: Matrix
    word: Optional[Word] = None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeylElem)
            and self.rs is other.rs
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.rs.kind, self.rs.rank, self.rs.profile, self.matrix))

    def __str__(self) -> str:
        w = " ".join(word_names(self.rs, self.word)) if self.word is not None else "?"
        return f"<{self.rs} {w}>"


_GEN_CACHE: Dict[Tuple[str, int, str], Tuple[Matrix, ...]] = {}


def _reflection_matrix(alpha: Vector) -> Matrix:
    n = len(alpha)
    cols = [reflect(tuple(Q(1) if j == i else Q(0) for j in range(n)), alpha) for i in range(n)]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def _gen_matrices(rs: RootSystem) -> Tuple[Matrix, ...]:
    key = (rs.kind, rs.rank, rs.profile)
    out = _GEN_CACHE.get(key)
    if out is None:
        out = tuple(_reflection_matrix(a) for a in rs.simple_roots)
        _GEN_CACHE[key] = out
    return out


def identity_elem(rs: RootSystem) -> WeylElem:
    return WeylElem(rs, identity(rs.ambient), ())


def generator(rs: RootSystem, pos: int) -> WeylElem:
    """Generator by 0-based position in `rs.gen_names` order."""
    mats = _gen_matrices(rs)
    if not 0 <= pos < len(mats):
        raise UsageError(f"generator position {pos} out of range for {rs}")
    return WeylElem(rs, mats[pos], (pos,))


def generators(rs: RootSystem) -> Tuple[WeylElem, ...]:
    return tuple(generator(rs, i) for i in range(len(rs.simple_roots)))


def _sp_expansion(rs: RootSystem, k: int) -> Word:
    """Extended token sp<k>: word for the reflection negating one coordinate
    (kind B) or the first-plus-one coordinate pair (kind D)."""
    if rs.kind == "A":
        if not 0 <= k < rs.rank + 1:
            raise UsageError(f"sp{k} out of range for {rs}")
        return ()
    if rs.profile != "paper5":
        raise UsageError(f"extended token sp{k} needs the paper5 profile, not {rs}")
    if rs.kind == "B":
        if not 0 <= k <= rs.rank - 1:
            raise UsageError(f"sp{k} out of range for {rs}")
        # s_k ... s_1 t s_1 ... s_k  (t at position 0, s_i at position i)
        return tuple(range(k, 0, -1)) + (0,) + tuple(range(1, k + 1))
    if rs.kind == "D":
        if not 0 <= k <= rs.rank - 2:
            raise UsageError(f"sp{k} out of range for {rs}")
        if k == 0:
            return (0, 1)  # tp s1
        # s_{k+1} ... s_2 (tp s1) s_2 ... s_{k+1}
        return tuple(range(k + 1, 1, -1)) + (0, 1) + tuple(range(2, k + 2))
    raise UsageError(f"extended token sp{k} undefined for kind {rs.kind}")


def parse_word(rs: RootSystem, word: WordLike) -> Word:
    """Normalize a word to 0-based generator positions.

    Accepts a whitespace-separated string or an iterable of tokens; tokens
    are generator names, integer 1-based positions, or extended `sp<k>`
    tokens (which expand in place).
    """
    tokens: List[Union[int, str]]
    if isinstance(word, str):
        tokens = word.split()
    else:
        tokens = list(word)
    name_to_pos = {nm: i for i, nm in enumerate(rs.gen_names)}
    out: List[int] = []
    for tok in tokens:
        if isinstance(tok, int):
            if not 1 <= tok <= len(rs.gen_names):
                raise UsageError(f"generator position {tok} out of range for {rs}")
            out.append(tok - 1)
            continue
        t = str(tok).strip()
        if t in name_to_pos:
            out.append(name_to_pos[t])
        elif t.startswith("sp") and t[2:].isdigit():
            out.extend(_sp_expansion(rs, int(t[2:])))
        elif t.isdigit():
            p = int(t)
            if not 1 <= p <= len(rs.gen_names):
                raise UsageError(f"generator position {p} out of range for {rs}")
            out.append(p - 1)
        else:
            raise UsageError(f"unknown generator token {t!r} for {rs}")
    return tuple(out)


def word_names(rs: RootSystem, word: Optional[Word]) -> Tuple[str, ...]:
    if word is None:
        return ()
    return tuple(rs.gen_names[i] for i in word)


def from_word(rs: RootSystem, word: WordLike) -> WeylElem:
    """Element of the given word; the rightmost letter acts first.

    The matrix is the left-to-right product of generator matrices, so for
    w = from_word(rs, "t s1") the action on a vector x is t(s1(x)).
    """
    positions = parse_word(rs, word)
    mats = _gen_matrices(rs)
    m = identity(rs.ambient)
    for p in positions:
        m = matmul(m, mats[p])
    return WeylElem(rs, m, positions)


def multiply(a: WeylElem, b: WeylElem) -> WeylElem:
    if a.rs is not b.rs:
        raise UsageError("multiply: elements live in different systems")
    word = a.word + b.word if a.word is not None and b.word is not None else None
    return WeylElem(a.rs, matmul(a.matrix, b.matrix), word)


def inverse(w: WeylElem) -> WeylElem:
    word = tuple(reversed(w.word)) if w.word is not None else None
    return WeylElem(w.rs, transpose(w.matrix), word)


def act(w: WeylElem, x: Iterable) -> Vector:
    xv = vec(x)
    if len(xv) != w.rs.ambient:
        raise UsageError(
            f"act: point has {len(xv)} coordinates, ambient is {w.rs.ambient}"
        )
    return matvec(w.matrix, xv)


def is_reflection_matrix(w: WeylElem) -> bool:
    """True when w is orthogonal with w^2 = 1 and fixed space of codim 1."""
    m = w.matrix
    if matmul(m, m) != identity(w.rs.ambient):
        return False
    tr = sum(m[i][i] for i in range(w.rs.ambient))
    return tr == w.rs.ambient - 2


def length(w: WeylElem) -> int:
    """Inversions of w against the standard positive system."""
    neg_set = w.rs.neg_set
    return sum(1 for r in w.rs.positive_roots if matvec(w.matrix, r) in neg_set)


def coxeter_length(w: WeylElem) -> int:
    """Word length of w in the presentation given by rs.simple_roots.

    Counted as inversions against `coxeter_positive_roots`; equals the
    minimum number of generators whose product is w.
    """
    neg_set = w.rs.cox_neg_set
    return sum(
        1 for r in w.rs.coxeter_positive_roots if matvec(w.matrix, r) in neg_set
    )


def descents(w: WeylElem) -> Tuple[int, ...]:
    """0-based positions g with coxeter_length(s_g * w) < coxeter_length(w)."""
    mats = _gen_matrices(w.rs)
    lw = coxeter_length(w)
    out = []
    for g, m in enumerate(mats):
        if coxeter_length(WeylElem(w.rs, matmul(m, w.matrix))) < lw:
            out.append(g)
    return tuple(out)


def reduced_word(w: WeylElem) -> Word:
    """A reduced word (0-based positions), peeling smallest left descents."""
    mats = _gen_matrices(w.rs)
    cur = w.matrix
    out: List[int] = []
    remaining = coxeter_length(w)
    while remaining > 0:
        for g, m in enumerate(mats):
            nxt = matmul(m, cur)
            if coxeter_length(WeylElem(w.rs, nxt)) == remaining - 1:
                out.append(g)
                cur = nxt
                remaining -= 1
                break
        else:  # pragma: no cover - would mean a broken length function
            raise AssertionError("no descent found on an element of positive length")
    return tuple(out)


def support(w: WeylElem) -> frozenset:
    """1-based generator positions appearing in any reduced word of w."""
    return frozenset(g + 1 for g in reduced_word(w))


def coxeter_standard(rs: RootSystem) -> WeylElem:
    """Product of all generators once, in listed order."""
    return from_word(rs, tuple(range(1, len(rs.gen_names) + 1)))


def enumerate_group(rs: RootSystem, cap: int = DEFAULT_GROUP_CAP) -> List[WeylElem]:
    """All group elements in breadth-first order from the identity.

    Deterministic; attached words are geodesics in the generator alphabet.
    Raises CapacityError (naming the group order) when the group is larger
    than `cap`.
    """
    order = weyl_order(rs.kind, rs.rank)
    if order > cap:
        raise CapacityError(
            f"group {rs} has order {order}, exceeding cap {cap}"
        )
    mats = _gen_matrices(rs)
    start = identity(rs.ambient)
    seen: Dict[Matrix, Word] = {start: ()}
    order_list: List[Matrix] = [start]
    head = 0
    while head < len(order_list):
        m = order_list[head]
        head += 1
        w = seen[m]
        for g, gm in enumerate(mats):
            nm = matmul(m, gm)
            if nm not in seen:
                seen[nm] = w + (g,)
                order_list.append(nm)
    if len(order_list) != order:
        raise AssertionError(
            f"enumerated {len(order_list)} elements of {rs}, expected {order}"
        )
    return [WeylElem(rs, m, seen[m]) for m in order_list]
