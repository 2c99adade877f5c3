"""Finite fields, flags, relative position, and point counts.

Field elements are ints in [0, p^k), encoding polynomial coefficients in
base p (digit i = coefficient of x^i) modulo a canonical irreducible:
the lexicographically smallest monic irreducible of degree k, comparing
coefficient tuples from the highest degree down.  Multiplication runs on
exp/log tables, addition is XOR in characteristic 2 and a small table
otherwise, so the flag loops below stay integer-only.

Flags are chains of subspaces, each stored as canonical reduced
row-echelon rows; enumeration lifts echelon bases step by step through
the quotient coordinates, so each flag is produced exactly once.  All
enumerations are cap-guarded and raise CapacityError naming the predicted
count.

Three counters are exposed:

* ``dl_point_count`` — complete flags whose relative position against
  their q-power Frobenius image is a prescribed permutation;
* ``omega_point_count`` — projective points avoiding every hyperplane
  rational over the q-element subfield (an independent computation, used
  to cross-identify the distinguished cell of the first counter);
* ``period_point_count`` — flags of a fixed type that are semistable for
  a weakly decreasing integer vector, slope-tested against all rational
  subspaces.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from itertools import combinations, product as iproduct
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from . import CapacityError, UsageError

__all__ = [
    "Cochar",
    "Field",
    "Flag",
    "adapted_basis",
    "build_extension",
    "complete_dims",
    "coxeter_perm",
    "dl_point_count",
    "dl_point_tally",
    "enumerate_flags",
    "field_build",
    "flag_count",
    "flag_from_chain",
    "frobenius_flag",
    "gaussian_binomial",
    "iter_flags",
    "omega_point_count",
    "perm_from_word",
    "period_point_count",
    "prime_power",
    "rational_scalars",
    "relative_position",
    "rref",
    "semistable",
]

Row = Tuple[int, ...]

FIELD_CAP = 2**16
DEFAULT_ENUM_CAP = 10**6


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> Tuple[int, int]:
    """Decompose q = p^m with p prime, or raise UsageError."""
    if q < 2:
        raise UsageError(f"q must be a prime power >= 2, got {q}")
    p = next((d for d in range(2, q + 1) if q % d == 0), q)
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1 or not _is_prime(p):
        raise UsageError(f"{q} is not a prime power")
    return p, m


# ---------------------------------------------------------------------------
# fields


def _poly_mul_mod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> List[int]:
    """(a*b) mod (mod, p); polys are coefficient lists low -> high."""
    k = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    # reduce: x^k = -(mod[:k])
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            out[d] = 0
            for j in range(k):
                out[d - k + j] = (out[d - k + j] - c * mod[j]) % p
    return out[:k] + [0] * max(0, k - len(out))


def _poly_is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree 1..deg//2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in iproduct(range(p), repeat=d):
            div = list(tail) + [1]  # monic of degree d
            # remainder of poly / div
            rem = list(poly)
            for top in range(len(rem) - 1, d - 1, -1):
                c = rem[top]
                if c:
                    rem[top] = 0
                    for j in range(d):
                        rem[top - d + j] = (rem[top - d + j] - c * div[j]) % p
            if not any(rem[:d]):
                return False
    return True


def _canonical_modulus(p: int, k: int) -> Tuple[int, ...]:
    """Lex-smallest monic irreducible of degree k over GF(p), comparing
    coefficients from degree k-1 down to the constant term."""
    for high_first in iproduct(range(p), repeat=k):
        poly = list(reversed(high_first)) + [1]  # low -> high
        if _poly_is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible of degree {k} over GF({p})")  # pragma: no cover


class Field:
    """GF(p^k) with integer-encoded elements and table arithmetic."""

    def __init__(self, p: int, k: int):
        self.p = p
        self.k = k
        self.size = p**k
        self.modulus = _canonical_modulus(p, k)
        self._frob_cache: Dict[int, Tuple[int, ...]] = {}
        self._rational_cache: Dict[int, Tuple[int, ...]] = {}

        def enc(coeffs: Sequence[int]) -> int:
            e = 0
            for c in reversed(coeffs):
                e = e * p + c
            return e

        def dec(e: int) -> List[int]:
            out = []
            for _ in range(k):
                out.append(e % p)
                e //= p
            return out

        self._enc, self._dec = enc, dec

        # multiplication via a discrete log on the smallest primitive element
        order = self.size - 1
        exp: List[int] = []
        for g in range(2, self.size):
            exp = [1]
            cur = 1
            gp = dec(g)
            ok = True
            for i in range(1, order):
                cur = enc(_poly_mul_mod(dec(cur), gp, self.modulus, p))
                if cur == 1:
                    ok = False
                    break
                exp.append(cur)
            if ok and enc(_poly_mul_mod(dec(exp[-1]), gp, self.modulus, p)) == 1:
                break
        else:  # pragma: no cover - fields of size 2 handled below
            exp = [1]
        if self.size == 2:
            exp = [1]
        self.exp: Tuple[int, ...] = tuple(exp)
        log = [-1] * self.size
        for i, v in enumerate(exp):
            log[v] = i
        self.log: Tuple[int, ...] = tuple(log)
        if any(v < 0 for v in log[1:]):  # pragma: no cover
            raise AssertionError(f"GF({p}^{k}): exp table does not cover all units")

        if p == 2:
            self.add = lambda a, b: a ^ b
            self.neg = lambda a: a
        else:
            negs = tuple(enc([(p - c) % p for c in dec(a)]) for a in range(self.size))
            self.neg = lambda a, _n=negs: _n[a]
            if self.size <= 1024:
                tbl = [
                    tuple(
                        enc([(x + y) % p for x, y in zip(dec(a), dec(b))])
                        for b in range(self.size)
                    )
                    for a in range(self.size)
                ]
                self.add = lambda a, b, _t=tbl: _t[a][b]
            else:  # pragma: no cover - big non-binary fields are unused here
                self.add = lambda a, b: enc(
                    [(x + y) % p for x, y in zip(dec(a), dec(b))]
                )

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.size - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("field inverse of 0")
        return self.exp[(self.size - 1 - self.log[a]) % (self.size - 1)]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def frob_map(self, q: int) -> Tuple[int, ...]:
        """The table of x -> x^q; q must be a subfield order p^m, m | k."""
        cached = self._frob_cache.get(q)
        if cached is not None:
            return cached
        p, m = prime_power(q)
        if p != self.p or self.k % m != 0:
            raise UsageError(f"GF({q}) is not a subfield of GF({self.p}^{self.k})")
        order = self.size - 1
        table = [0] * self.size
        for a in range(1, self.size):
            table[a] = self.exp[(self.log[a] * q) % order]
        out = tuple(table)
        self._frob_cache[q] = out
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


@lru_cache(maxsize=None)
def field_build(p: int, k: int) -> Field:
    """The canonical GF(p^k); capped at p^k <= 2^16."""
    if not _is_prime(p):
        raise UsageError(f"field characteristic must be prime, got {p}")
    if k < 1:
        raise UsageError(f"field degree must be >= 1, got {k}")
    if p**k > FIELD_CAP:
        raise CapacityError(f"field size {p}^{k} = {p**k} exceeds cap {FIELD_CAP}")
    return Field(p, k)


def build_extension(q: int, e: int) -> Field:
    """GF(q^e) for a prime power q."""
    p, m = prime_power(q)
    if e < 1:
        raise UsageError(f"extension degree must be >= 1, got {e}")
    return field_build(p, m * e)


def rational_scalars(fld: Field, q: int) -> Tuple[int, ...]:
    """Elements of the q-element subfield (fixed points of x -> x^q)."""
    cached = fld._rational_cache.get(q)
    if cached is not None:
        return cached
    frob = fld.frob_map(q)
    out = tuple(a for a in range(fld.size) if frob[a] == a)
    if len(out) != q:  # pragma: no cover
        raise AssertionError(f"subfield of order {q} has {len(out)} elements")
    fld._rational_cache[q] = out
    return out


# ---------------------------------------------------------------------------
# row echelon machinery


def rref(fld: Field, rows: Iterable[Row]) -> Tuple[Row, ...]:
    """Canonical reduced row-echelon rows spanning the same space."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return ()
    n = len(work[0])
    out: List[List[int]] = []
    pivots: List[int] = []
    mul, add, neg, inv = fld.mul, fld.add, fld.neg, fld.inv
    for row in work:
        cur = row[:]
        for pv, b in zip(pivots, out):
            c = cur[pv]
            if c:
                nc = neg(c)
                cur = [add(x, mul(nc, y)) for x, y in zip(cur, b)]
        piv = next((i for i, x in enumerate(cur) if x), None)
        if piv is None:
            continue
        ic = inv(cur[piv])
        cur = [mul(ic, x) for x in cur]
        for pv, b in zip(pivots, out):
            c = b[piv]
            if c:
                nc = neg(c)
                b[:] = [add(x, mul(nc, y)) for x, y in zip(b, cur)]
        out.append(cur)
        pivots.append(piv)
    order = sorted(range(len(out)), key=lambda i: pivots[i])
    return tuple(tuple(out[i]) for i in order)


def _reduce_against(
    fld: Field, state: List[Tuple[int, List[int]]], row: Sequence[int]
) -> Optional[Tuple[int, List[int]]]:
    """Forward-reduce `row` against an echelon `state`; return the new
    (pivot, normalized row) if independent, else None.  Mutates nothing."""
    mul, add, neg, inv = fld.mul, fld.add, fld.neg, fld.inv
    cur = list(row)
    for pv, b in state:
        c = cur[pv]
        if c:
            nc = neg(c)
            cur = [add(x, mul(nc, y)) for x, y in zip(cur, b)]
    piv = next((i for i, x in enumerate(cur) if x), None)
    if piv is None:
        return None
    ic = inv(cur[piv])
    return piv, [mul(ic, x) for x in cur]


# ---------------------------------------------------------------------------
# flags


def complete_dims(n: int) -> Tuple[int, ...]:
    return tuple(range(1, n))


@dataclass(frozen=True)
class Flag:
    """Chain of proper subspaces, each as canonical echelon rows."""

    field: Field
    n: int
    dims: Tuple[int, ...]
    steps: Tuple[Tuple[Row, ...], ...]


def flag_from_chain(fld: Field, n: int, chain: Sequence[Sequence[Row]]) -> Flag:
    """Build a flag from generating rows per step (cumulative spans).

    Step i of the result spans all rows of chain[0..i]; dims must be
    strictly increasing and proper (< n).
    """
    steps: List[Tuple[Row, ...]] = []
    acc: List[Row] = []
    prev = 0
    for gen_rows in chain:
        for r in gen_rows:
            if len(r) != n:
                raise UsageError(f"row of length {len(r)} in ambient dimension {n}")
            if any(not 0 <= x < fld.size for x in r):
                raise UsageError("row entries outside the field")
        acc.extend(tuple(r) for r in gen_rows)
        step = rref(fld, acc)
        if not len(step) > prev:
            raise UsageError("flag steps must strictly increase in dimension")
        prev = len(step)
        steps.append(step)
    if prev >= n:
        raise UsageError("flag steps must be proper subspaces")
    return Flag(field=fld, n=n, dims=tuple(len(s) for s in steps), steps=tuple(steps))


def adapted_basis(flag: Flag) -> Tuple[Row, ...]:
    """A basis of the ambient space adapted to the flag.

    The first dims[i] rows span step i; unit vectors pad the tail so all
    flag.n rows together are a basis.
    """
    rows = list(_adapted_from_steps(flag.field, flag.steps))
    state: List[Tuple[int, List[int]]] = []
    for row in rows:
        red = _reduce_against(flag.field, state, row)
        assert red is not None
        state.append(red)
    for i in range(flag.n):
        if len(rows) == flag.n:
            break
        unit = tuple(1 if j == i else 0 for j in range(flag.n))
        red = _reduce_against(flag.field, state, unit)
        if red is not None:
            state.append(red)
            rows.append(unit)
    return tuple(rows)


def _adapted_from_steps(fld: Field, steps: Sequence[Sequence[Row]]) -> Tuple[Row, ...]:
    state: List[Tuple[int, List[int]]] = []
    out: List[Row] = []
    for step in steps:
        for row in step:
            red = _reduce_against(fld, state, row)
            if red is not None:
                state.append(red)
                out.append(tuple(row))
    return tuple(out)


def frobenius_flag(flag: Flag, q: int) -> Flag:
    frob = flag.field.frob_map(q)
    steps = tuple(
        rref(flag.field, [tuple(frob[x] for x in row) for row in step])
        for step in flag.steps
    )
    return Flag(field=flag.field, n=flag.n, dims=flag.dims, steps=steps)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-space over GF(q)."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def flag_count(n: int, dims: Sequence[int], qsize: int) -> int:
    """Number of flags of the given type over a field with qsize elements."""
    total = 1
    prev = 0
    for d in dims:
        total *= gaussian_binomial(n - prev, d - prev, qsize)
        prev = d
    return total


def _check_dims(n: int, dims: Sequence[int]) -> Tuple[int, ...]:
    out = tuple(int(d) for d in dims)
    if any(d2 <= d1 for d1, d2 in zip((0,) + out, out)) or (out and out[-1] >= n):
        raise UsageError(f"flag type {out} invalid in dimension {n}")
    return out


def _echelon_bases(
    fld: Field, k: int, s: int, scalars: Optional[Sequence[int]] = None
) -> Iterator[Tuple[Row, ...]]:
    """All s x k reduced-echelon full-rank matrices, entries in `scalars`
    (default: the whole field), in a fixed deterministic order."""
    pool = tuple(range(fld.size)) if scalars is None else tuple(scalars)
    for pivs in combinations(range(k), s):
        free_pos = [
            [c for c in range(pivs[i] + 1, k) if c not in pivs] for i in range(s)
        ]
        slots = [(i, c) for i in range(s) for c in free_pos[i]]
        for vals in iproduct(pool, repeat=len(slots)):
            rows = [[0] * k for _ in range(s)]
            for i in range(s):
                rows[i][pivs[i]] = 1
            for (i, c), v in zip(slots, vals):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)


def _iter_step_tuples(
    fld: Field, n: int, dims: Tuple[int, ...], cap: int
) -> Iterator[Tuple[Tuple[Row, ...], ...]]:
    total = flag_count(n, dims, fld.size)
    if total > cap:
        raise CapacityError(
            f"flag family of type {dims} in dimension {n} over {fld!r} "
            f"has {total} members, exceeding cap {cap}"
        )

    def rec(
        prefix: Tuple[Tuple[Row, ...], ...], cur: Tuple[Row, ...], prev_dim: int, rest: Tuple[int, ...]
    ) -> Iterator[Tuple[Tuple[Row, ...], ...]]:
        if not rest:
            yield prefix
            return
        d, tail = rest[0], rest[1:]
        s = d - prev_dim
        pivots = [next(i for i, x in enumerate(row) if x) for row in cur]
        free = [c for c in range(n) if c not in pivots]
        for qs in _echelon_bases(fld, n - prev_dim, s):
            lifted = []
            for u in qs:
                row = [0] * n
                for j, c in enumerate(free):
                    row[c] = u[j]
                lifted.append(tuple(row))
            step = rref(fld, list(cur) + lifted)
            yield from rec(prefix + (step,), step, d, tail)

    yield from rec((), (), 0, dims)


def iter_flags(
    fld: Field, n: int, dims: Sequence[int], cap: int = DEFAULT_ENUM_CAP
) -> Iterator[Flag]:
    """Generate every flag of the given type exactly once (cap-guarded)."""
    dims_t = _check_dims(n, dims)
    for steps in _iter_step_tuples(fld, n, dims_t, cap):
        yield Flag(field=fld, n=n, dims=dims_t, steps=steps)


def enumerate_flags(
    fld: Field, n: int, dims: Sequence[int], cap: int = DEFAULT_ENUM_CAP
) -> List[Flag]:
    return list(iter_flags(fld, n, dims, cap))


# ---------------------------------------------------------------------------
# relative position


def perm_from_word(n: int, word: Union[str, Sequence[Union[int, str]]]) -> Tuple[int, ...]:
    """One-line form (0-based images) of a product of adjacent swaps.

    Tokens are ``s1 .. s{n-1}`` (or bare 1-based integers); the rightmost
    letter acts first, matching the word convention elsewhere.
    """
    toks = word.split() if isinstance(word, str) else list(word)
    idx: List[int] = []
    for t in toks:
        if isinstance(t, int):
            v = t
        else:
            tt = str(t)
            if tt.startswith("s") and tt[1:].isdigit():
                v = int(tt[1:])
            elif tt.isdigit():
                v = int(tt)
            else:
                raise UsageError(f"unknown permutation token {t!r}")
        if not 1 <= v <= n - 1:
            raise UsageError(f"swap s{v} out of range for n={n}")
        idx.append(v)
    out = []
    for j in range(n):
        img = j
        for v in reversed(idx):
            if img == v - 1:
                img = v
            elif img == v:
                img = v - 1
        out.append(img)
    return tuple(out)


def coxeter_perm(n: int) -> Tuple[int, ...]:
    """One-line form of s1 s2 ... s{n-1}: (1, 2, ..., n-1, 0)."""
    return perm_from_word(n, [i for i in range(1, n)])


def _normalize_perm(n: int, w: Union[str, Sequence[int]]) -> Tuple[int, ...]:
    if isinstance(w, str):
        return perm_from_word(n, w)
    out = tuple(int(x) for x in w)
    if sorted(out) != list(range(n)):
        raise UsageError(f"{w!r} is not a 0-based permutation of range({n})")
    return out


def _relpos_steps(
    fld: Field,
    steps_f: Sequence[Sequence[Row]],
    steps_g: Sequence[Sequence[Row]],
    n: int,
) -> Tuple[int, ...]:
    """Relative position of two complete flags from their step rows.

    Computes the full intersection-dimension matrix r[i][j] =
    dim(F_i ^ G_j) by incremental rank over adapted bases, takes its
    second difference, and reads off the permutation with w(j) = i at the
    unique nonzero entry of column j.
    """
    ag = _adapted_from_steps(fld, steps_g)
    # echelon states of F_0 .. F_{n-1}
    state: List[Tuple[int, List[int]]] = []
    states_f: List[List[Tuple[int, List[int]]]] = [list(state)]
    for step in steps_f:
        for row in step:
            red = _reduce_against(fld, state, row)
            if red is not None:
                state.append(red)
        states_f.append(list(state))
    r = [[0] * (n + 1) for _ in range(n + 1)]
    for j in range(n + 1):
        r[n][j] = j
    for i in range(n + 1):
        r[i][n] = i
    for i in range(n):
        st = list(states_f[i])
        rank = i
        for j in range(1, n):
            red = _reduce_against(fld, st, ag[j - 1])
            if red is not None:
                st.append(red)
                rank += 1
            r[i][j] = i + j - rank
    w = [-1] * n
    for j in range(1, n + 1):
        hit = None
        for i in range(1, n + 1):
            d = r[i][j] - r[i - 1][j] - r[i][j - 1] + r[i - 1][j - 1]
            if d == 1:
                if hit is not None:  # pragma: no cover
                    raise AssertionError("relative position: non-permutation matrix")
                hit = i
            elif d not in (0, 1):  # pragma: no cover
                raise AssertionError("relative position: bad second difference")
        if hit is None:  # pragma: no cover
            raise AssertionError("relative position: empty column")
        w[j - 1] = hit - 1
    return tuple(w)


def relative_position(f: Flag, g: Flag) -> Tuple[int, ...]:
    """Relative position (0-based one-line permutation) of complete flags."""
    if f.field != g.field or f.n != g.n:
        raise UsageError("relative position needs flags in the same space")
    full = complete_dims(f.n)
    if f.dims != full or g.dims != full:
        raise UsageError("relative position is defined for complete flags")
    return _relpos_steps(f.field, f.steps, g.steps, f.n)


# ---------------------------------------------------------------------------
# point counts


def _tally_key(n: int, q: int, e: int) -> Tuple[int, int, int]:
    if n < 2:
        raise UsageError(f"ambient dimension must be >= 2, got {n}")
    prime_power(q)
    if e < 1:
        raise UsageError(f"e must be >= 1, got {e}")
    return n, q, e


@lru_cache(maxsize=16)
def _dl_tally_cached(n: int, q: int, e: int, cap: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    fld = build_extension(q, e)
    frob = fld.frob_map(q)
    dims = complete_dims(n)
    counts: Dict[Tuple[int, ...], int] = {}
    for steps in _iter_step_tuples(fld, n, dims, cap):
        fsteps = tuple(
            rref(fld, [tuple(frob[x] for x in row) for row in step]) for step in steps
        )
        w = _relpos_steps(fld, steps, fsteps, n)
        counts[w] = counts.get(w, 0) + 1
    return tuple(sorted(counts.items()))


def dl_point_tally(n: int, q: int, e: int, cap: int = DEFAULT_ENUM_CAP) -> Dict[Tuple[int, ...], int]:
    """Count complete flags by relative position with their q-Frobenius image.

    Keys are 0-based one-line permutations; values sum to the number of
    complete flags over GF(q^e)."""
    n, q, e = _tally_key(n, q, e)
    return dict(_dl_tally_cached(n, q, e, cap))


def dl_point_count(
    n: int, q: int, e: int, w: Union[str, Sequence[int]], cap: int = DEFAULT_ENUM_CAP
) -> int:
    """Number of complete flags at relative position w from their image."""
    n, q, e = _tally_key(n, q, e)
    perm = _normalize_perm(n, w)
    return dict(_dl_tally_cached(n, q, e, cap)).get(perm, 0)


def omega_point_count(n: int, q: int, e: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Projective points over GF(q^e) avoiding all GF(q)-rational hyperplanes.

    Written directly against normalized coordinate vectors — independent
    of the flag machinery above."""
    n, q, e = _tally_key(n, q, e)
    fld = build_extension(q, e)
    size = fld.size
    npoints = (size**n - 1) // (size - 1)
    if npoints > cap:
        raise CapacityError(
            f"projective space over {fld!r} has {npoints} points, exceeding cap {cap}"
        )
    scal = rational_scalars(fld, q)
    mul, add = fld.mul, fld.add

    def normalized(pool: Sequence[int]) -> Iterator[Row]:
        for lead in range(n):
            for tail in iproduct(pool, repeat=n - 1 - lead):
                yield (0,) * lead + (1,) + tail

    hyperplanes = list(normalized(scal))
    count = 0
    for pt in normalized(tuple(range(size))):
        good = True
        for h in hyperplanes:
            acc = 0
            for a, b in zip(h, pt):
                if a and b:
                    acc = add(acc, mul(a, b))
            if acc == 0:
                good = False
                break
        if good:
            count += 1
    return count


# ---------------------------------------------------------------------------
# semistability


@dataclass(frozen=True)
class Cochar:
    """Tuple of weakly decreasing integer vectors, one per group factor."""

    nu: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.nu:
            raise UsageError("empty cocharacter")
        lens = {len(v) for v in self.nu}
        if len(lens) != 1:
            raise UsageError(f"cocharacter factors of unequal lengths {sorted(lens)}")
        for v in self.nu:
            if not v:
                raise UsageError("empty cocharacter factor")
            if any(int(a) != a for a in v):
                raise UsageError("cocharacter entries must be integers")
            if any(a < b for a, b in zip(v, v[1:])):
                raise UsageError(f"cocharacter factor {v} is not weakly decreasing")

    @property
    def t(self) -> int:
        return len(self.nu)

    @property
    def n(self) -> int:
        return len(self.nu[0])


def cochar(*vectors) -> Cochar:
    """Cochar from vectors: cochar((1,0,0)) or cochar((1,0),(2,2))."""
    if len(vectors) == 1 and vectors[0] and isinstance(vectors[0][0], (tuple, list)):
        vectors = tuple(vectors[0])
    return Cochar(nu=tuple(tuple(int(a) for a in v) for v in vectors))


def _single_nu(nu) -> Tuple[int, ...]:
    if isinstance(nu, Cochar):
        if nu.t != 1:
            raise UsageError("this operation takes a single-factor cocharacter")
        return nu.nu[0]
    return cochar(tuple(nu)).nu[0]


def nu_jump_dims(nu: Sequence[int]) -> Tuple[int, ...]:
    """Positions where the weakly decreasing vector strictly drops."""
    return tuple(i + 1 for i in range(len(nu) - 1) if nu[i] > nu[i + 1])


_SUBSPACE_CACHE: Dict[Tuple[int, int, int, int], Tuple[Tuple[Row, ...], ...]] = {}


def _rational_proper_subspaces(fld: Field, q: int, n: int) -> Tuple[Tuple[Row, ...], ...]:
    key = (fld.p, fld.k, q, n)
    cached = _SUBSPACE_CACHE.get(key)
    if cached is None:
        scal = rational_scalars(fld, q)
        out: List[Tuple[Row, ...]] = []
        for d in range(1, n):
            out.extend(_echelon_bases(fld, n, d, scal))
        cached = tuple(out)
        _SUBSPACE_CACHE[key] = cached
    return cached


def _steps_semistable(
    fld: Field,
    vnu: Tuple[int, ...],
    dims: Tuple[int, ...],
    steps: Sequence[Sequence[Row]],
    subspaces: Sequence[Tuple[Row, ...]],
) -> bool:
    n = len(vnu)
    total_deg = sum(vnu)
    seg_vals = [vnu[0]] + [vnu[d] for d in dims]  # value on each chain segment
    cuts = (0,) + dims + (n,)
    af = _adapted_from_steps(fld, steps)
    for urows in subspaces:
        du = len(urows)
        state: List[Tuple[int, List[int]]] = []
        for r in urows:
            red = _reduce_against(fld, state, r)
            if red is not None:
                state.append(red)
        # incremental dim(U ^ V_d) while walking the adapted basis of the flag
        rank = du
        dims_seen = [0]
        for idx, row in enumerate(af):
            red = _reduce_against(fld, state, row)
            if red is not None:
                state.append(red)
                rank += 1
            dims_seen.append(du + (idx + 1) - rank)
        while len(dims_seen) <= n:
            dims_seen.append(du)  # dim(U ^ V_n) = dim U
        deg_u = 0
        for i in range(1, len(cuts)):
            deg_u += seg_vals[i - 1] * (dims_seen[cuts[i]] - dims_seen[cuts[i - 1]])
        if deg_u * n > total_deg * du:  # slope(U) > slope(V), exactly
            return False
    return True


def semistable(nu, flag: Flag, q: int) -> bool:
    """Slope test of a flag against every subspace rational over GF(q).

    `nu` (weakly decreasing, one value per graded line) induces degrees:
    the flag's graded piece i is weighted by the i-th distinct value.  The
    flag is semistable when no rational proper subspace has slope
    exceeding the total slope.
    """
    vnu = _single_nu(nu)
    fld = flag.field
    if len(vnu) != flag.n:
        raise UsageError(f"cocharacter length {len(vnu)} vs ambient {flag.n}")
    if nu_jump_dims(vnu) != flag.dims:
        raise UsageError(
            f"flag type {flag.dims} does not match cocharacter jumps {nu_jump_dims(vnu)}"
        )
    prime_power(q)
    subspaces = _rational_proper_subspaces(fld, q, flag.n)
    return _steps_semistable(fld, vnu, flag.dims, flag.steps, subspaces)


def period_point_count(nu, q: int, e: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Number of semistable flags of nu's type over GF(q^e)."""
    vnu = _single_nu(nu)
    prime_power(q)
    if e < 1:
        raise UsageError(f"e must be >= 1, got {e}")
    fld = build_extension(q, e)
    n = len(vnu)
    dims = nu_jump_dims(vnu)
    if not dims:
        return 1  # the trivial flag, vacuously semistable
    subspaces = _rational_proper_subspaces(fld, q, n)
    count = 0
    for steps in _iter_step_tuples(fld, n, dims, cap):
        if _steps_semistable(fld, vnu, dims, steps, subspaces):
            count += 1
    return count
