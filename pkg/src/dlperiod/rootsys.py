"""Finite crystallographic root systems in exact rational coordinates.

Each system is realized inside a fixed ambient Q^N with the classical
coordinate conventions, and carries two generator profiles:

* ``bourbaki`` — the standard simple roots for each kind,
* ``paper5`` — an alternative presentation for kinds A, B, D whose first
  generator is the reflection in a *short extra* root (``t`` = reflection
  in e_1 for kind B, ``tp`` = reflection in e_1 + e_2 for kind D); kind A
  keeps the standard generators but marks the trace-zero chamber model.

Regardless of profile, ``positive_roots`` is always the standard positive
system; the profile only changes which reflections are the *generators*
(``simple_roots``/``gen_names``) and, for B/D, which positive system makes
those generators simple (``coxeter_positive_roots``, used by the word and
length machinery).

>>> rs = build_root_system("A", 2)
>>> len(rs.positive_roots)
3
>>> build_root_system("B", 3, "paper5").gen_names
('t', 's1', 's2')
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from typing import FrozenSet, Iterable, Sequence, Tuple

from . import UsageError
from .linalg import Vector, dot, is_zero, neg, scale, span_solver, sub, vec

__all__ = [
    "KINDS",
    "PROFILES",
    "LinearForm",
    "RootSystem",
    "build_root_system",
    "chamber_forms",
    "form_label",
    "parabolic_dim",
    "positive_root_count",
    "rank_vs_dim_table",
    "reflect",
    "weyl_order",
]

KINDS = ("A", "B", "C", "D", "E", "F", "G")
PROFILES = ("bourbaki", "paper5")

_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def positive_root_count(kind: str, rank: int) -> int:
    """Number of positive roots (closed form, used as a build sanity check)."""
    if kind == "A":
        return rank * (rank + 1) // 2
    if kind in ("B", "C"):
        return rank * rank
    if kind == "D":
        return rank * (rank - 1)
    if kind == "E":
        return {6: 36, 7: 63, 8: 120}[rank]
    if kind == "F":
        return 24
    return 6  # G2


def weyl_order(kind: str, rank: int) -> int:
    """Order of the full reflection group."""
    fact = 1
    for i in range(2, rank + 2):
        fact *= i
    if kind == "A":
        return fact  # (rank+1)!
    fact_r = fact // (rank + 1)  # rank!
    if kind in ("B", "C"):
        return fact_r * 2**rank
    if kind == "D":
        return fact_r * 2 ** (rank - 1)
    if kind == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[rank]
    if kind == "F":
        return 1152
    return 12  # G2


@dataclass(frozen=True)
class LinearForm:
    """A strict linear condition `coeffs . x > 0` with a human-readable label."""

    coeffs: Vector
    label: str = ""

    def evaluate(self, x: Vector) -> Q:
        return dot(self.coeffs, x)


def form_label(coeffs: Vector) -> str:
    """Render coefficients as a readable expression in x1..xN."""
    parts: list[str] = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        term = f"x{i + 1}" if mag == 1 else f"{mag}*x{i + 1}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class RootSystem:
    """An immutable root-system datum; obtain instances via build_root_system.

    Instances are interned by (kind, rank, profile), so identity comparison
    is safe and cheap.
    """

    kind: str
    rank: int
    profile: str
    ambient: int
    simple_roots: Tuple[Vector, ...]  # the profile's generator roots, in order
    gen_names: Tuple[str, ...]
    positive_roots: Tuple[Vector, ...]  # standard positive system, sorted
    pos_coords: Tuple[Vector, ...]  # coords of each positive root in the
    # standard simple basis (parallel to positive_roots)
    coxeter_positive_roots: Tuple[Vector, ...]  # positive system whose simple
    # roots are exactly `simple_roots`' reflections (differs from
    # positive_roots only for paper5 B/D)
    trace_zero: bool  # paper5-A chamber lives in the sum-zero hyperplane
    pos_set: FrozenSet[Vector] = field(repr=False, default=frozenset())
    neg_set: FrozenSet[Vector] = field(repr=False, default=frozenset())
    cox_pos_set: FrozenSet[Vector] = field(repr=False, default=frozenset())
    cox_neg_set: FrozenSet[Vector] = field(repr=False, default=frozenset())

    def __str__(self) -> str:
        return f"{self.kind}{self.rank}[{self.profile}]"


def reflect(x: Vector, alpha: Vector) -> Vector:
    """Reflection of x in the hyperplane orthogonal to alpha."""
    aa = dot(alpha, alpha)
    if aa == 0:
        raise ValueError("reflect: zero root")
    return sub(x, scale(2 * dot(x, alpha) / aa, alpha))


def _standard_simples(kind: str, rank: int) -> Tuple[int, Tuple[Vector, ...]]:
    """Ambient dimension and the standard simple roots for (kind, rank)."""
    h = Q(1, 2)
    if kind == "A":
        n = rank + 1
        return n, tuple(
            vec([1 if j == i else -1 if j == i + 1 else 0 for j in range(n)])
            for i in range(rank)
        )
    if kind in ("B", "C", "D"):
        n = rank
        simples = [
            vec([1 if j == i else -1 if j == i + 1 else 0 for j in range(n)])
            for i in range(rank - 1)
        ]
        if kind == "B":
            simples.append(vec([0] * (n - 1) + [1]))
        elif kind == "C":
            simples.append(vec([0] * (n - 1) + [2]))
        else:
            simples.append(vec([0] * (n - 2) + [1, 1]))
        return n, tuple(simples)
    if kind == "E":
        first = tuple([h, -h, -h, -h, -h, -h, -h, h])
        second = vec([1, 1, 0, 0, 0, 0, 0, 0])
        rest = [
            vec([(-1 if j == i - 3 else 1 if j == i - 2 else 0) for j in range(8)])
            for i in range(3, 9)
        ]
        alls = (first, second, *rest)
        return 8, alls[:rank]
    if kind == "F":
        return 4, (
            vec([0, 1, -1, 0]),
            vec([0, 0, 1, -1]),
            vec([0, 0, 0, 1]),
            (h, -h, -h, -h),
        )
    # G2 in the sum-zero-friendly 3-coordinate model
    return 3, (vec([1, -1, 0]), vec([-2, 1, 1]))


def _paper5_simples(kind: str, rank: int) -> Tuple[Tuple[Vector, ...], Tuple[str, ...]]:
    """Generator roots + names for the paper5 profile (kinds A, B, D only)."""
    n_names = tuple(f"s{i}" for i in range(1, rank))
    if kind == "A":
        _, simples = _standard_simples("A", rank)
        return simples, tuple(f"s{i}" for i in range(1, rank + 1))
    chain = tuple(
        vec([1 if j == i else -1 if j == i + 1 else 0 for j in range(rank)])
        for i in range(rank - 1)
    )
    if kind == "B":
        extra = vec([1] + [0] * (rank - 1))
        return (extra, *chain), ("t", *n_names)
    # kind D
    extra = vec([1, 1] + [0] * (rank - 2))
    return (extra, *chain), ("tp", *n_names)


def _orbit_closure(simples: Sequence[Vector]) -> Tuple[Vector, ...]:
    # inline reflect() so each simple's squared norm is computed once,
    # not once per (root, simple) pair
    mirrors = [(a, dot(a, a)) for a in simples]
    roots = set(simples)
    queue = list(simples)
    while queue:
        r = queue.pop()
        for a, aa in mirrors:
            r2 = sub(r, scale(2 * dot(r, a) / aa, a))
            if r2 not in roots:
                roots.add(r2)
                queue.append(r2)
    return tuple(roots)


def _split_positive(
    all_roots: Iterable[Vector], base: Sequence[Vector]
) -> Tuple[Tuple[Vector, ...], Tuple[Vector, ...]]:
    """(sorted positive roots, their coordinates) w.r.t. the given base."""
    coords_of = span_solver(base)
    keyed = []
    for r in all_roots:
        coords = coords_of(r)
        if coords is None:
            raise AssertionError("root outside simple-root span")
        if all(c >= 0 for c in coords):
            keyed.append((sum(coords), coords, r))
    keyed.sort(key=lambda t: (t[0], t[1]))
    return tuple(r for _, _, r in keyed), tuple(c for _, c, r in keyed)


def _normalize_kind(kind: str, rank) -> Tuple[str, int]:
    k = str(kind).strip().upper()
    if len(k) > 1:  # accept "E6", "G2", ... style
        body = k[1:]
        if k[0] not in KINDS or not body.isdigit():
            raise UsageError(f"unknown root-system kind {kind!r}")
        implied = int(body)
        if rank is not None and int(rank) != implied:
            raise UsageError(f"kind {kind!r} contradicts rank={rank}")
        return k[0], implied
    if k not in KINDS:
        raise UsageError(f"unknown root-system kind {kind!r}")
    if rank is None:
        raise UsageError(f"kind {k!r} needs an explicit rank")
    return k, int(rank)


@lru_cache(maxsize=None)
def _build_interned(kind: str, rank: int, profile: str) -> RootSystem:
    ambient, std = _standard_simples(kind, rank)
    all_roots = _orbit_closure(std)
    npos = positive_root_count(kind, rank)
    if len(all_roots) != 2 * npos:
        raise AssertionError(
            f"{kind}{rank}: closure produced {len(all_roots)} roots, "
            f"expected {2 * npos}"
        )
    pos, coords = _split_positive(all_roots, std)

    if profile == "bourbaki":
        gens = std
        names = tuple(f"s{i}" for i in range(1, rank + 1))
        cox_pos = pos
        trace_zero = False
    else:
        gens, names = _paper5_simples(kind, rank)
        trace_zero = kind == "A"
        if kind == "A":
            cox_pos = pos
        else:
            # the generators are the simple reflections of the base obtained
            # by flipping the extra root; recompute positivity against it
            alt_base = (neg(gens[0]), *gens[1:])
            cox_pos, _ = _split_positive(all_roots, alt_base)

    return RootSystem(
        kind=kind,
        rank=rank,
        profile=profile,
        ambient=ambient,
        simple_roots=gens,
        gen_names=names,
        positive_roots=pos,
        pos_coords=coords,
        coxeter_positive_roots=cox_pos,
        trace_zero=trace_zero,
        pos_set=frozenset(pos),
        neg_set=frozenset(neg(r) for r in pos),
        cox_pos_set=frozenset(cox_pos),
        cox_neg_set=frozenset(neg(r) for r in cox_pos),
    )


def build_root_system(kind: str, rank: int | None = None, profile: str = "bourbaki") -> RootSystem:
    """Construct (or fetch the interned copy of) a root system.

    `kind` is one of A..G, or a combined name like "E6"; `profile` is
    "bourbaki" or "paper5" (the latter only for kinds A, B, D).
    """
    k, r = _normalize_kind(kind, rank)
    lo, hi = _RANK_RANGE[k]
    if r < lo or (hi is not None and r > hi):
        top = hi if hi is not None else "inf"
        raise UsageError(f"rank {r} out of range [{lo}, {top}] for kind {k}")
    if profile not in PROFILES:
        raise UsageError(f"unknown profile {profile!r}")
    if profile == "paper5" and k not in ("A", "B", "D"):
        raise UsageError(f"profile 'paper5' is only defined for kinds A, B, D (got {k})")
    return _build_interned(k, r, profile)


def chamber_forms(rs: RootSystem) -> Tuple[LinearForm, ...]:
    """Strict forms cutting out the fundamental chamber of the profile's base.

    One form `(x, root) > 0` per generator root, in generator order.
    """
    return tuple(
        LinearForm(coeffs=root, label=form_label(root)) for root in rs.simple_roots
    )


def _check_nodes(rs: RootSystem, nodes) -> Tuple[int, ...]:
    if isinstance(nodes, int):
        nodes = (nodes,)
    out = sorted(set(int(i) for i in nodes))
    for i in out:
        if not 1 <= i <= rs.rank:
            raise UsageError(f"node {i} out of range 1..{rs.rank}")
    return tuple(out)


def parabolic_dim(rs: RootSystem, removed: Iterable[int]) -> int:
    """Positive roots supported on at least one removed node.

    Counts beta > 0 whose coordinate at some removed simple root is nonzero;
    equivalently the dimension of the partial flag variety obtained by
    deleting those nodes.  Standard-profile systems only.
    """
    if rs.profile != "bourbaki":
        raise UsageError("parabolic_dim expects the standard (bourbaki) profile")
    nodes = _check_nodes(rs, removed)
    idx = [i - 1 for i in nodes]
    return sum(1 for c in rs.pos_coords if any(c[i] != 0 for i in idx))


def rank_vs_dim_table(rs: RootSystem) -> Tuple[Tuple[int, int, int, bool], ...]:
    """Per-node table (node, dim of the maximal parabolic quotient, dim - rank,
    dim == rank) for single-node removal."""
    if rs.profile != "bourbaki":
        raise UsageError("rank_vs_dim_table expects the standard (bourbaki) profile")
    rows = []
    for i in range(1, rs.rank + 1):
        d = parabolic_dim(rs, (i,))
        rows.append((i, d, d - rs.rank, d == rs.rank))
    return tuple(rows)
