"""Strict homogeneous feasibility over the rationals, with certificates.

A system is a finite list of linear forms f_i; the question is whether
some x satisfies f_i . x > 0 for all i.  By the strict Farkas / Gordan
alternative exactly one of the following exists, and this module always
produces it explicitly:

* a rational witness x (returned scaled to a primitive integer vector), or
* a certificate y >= 0, y != 0, with sum_i y_i f_i = 0.

The decision procedure is Fourier-Motzkin elimination; every derived form
carries its nonnegative-combination pedigree over the original forms, so
an eliminated-to-zero form *is* the certificate.  Both outcomes are
re-verified exactly before being returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from . import UsageError
from .linalg import Vector, dot, integerize, is_zero, vec
from .rootsys import LinearForm, form_label

__all__ = [
    "FeasibilityResult",
    "StrictSystem",
    "strict_feasible",
    "strict_system",
    "verify_certificate",
    "verify_witness",
]


@dataclass(frozen=True)
class StrictSystem:
    """Conjunction of strict conditions `form.coeffs . x > 0`."""

    forms: Tuple[LinearForm, ...]

    @property
    def dim(self) -> int:
        return len(self.forms[0].coeffs) if self.forms else 0

    def __post_init__(self):
        dims = {len(f.coeffs) for f in self.forms}
        if len(dims) > 1:
            raise UsageError(f"mixed form dimensions in system: {sorted(dims)}")
        if self.forms and self.dim == 0:
            raise UsageError("zero-dimensional forms")


def strict_system(forms: Iterable[Union[LinearForm, Sequence]], ) -> StrictSystem:
    """Build a system from LinearForms or raw coefficient sequences."""
    out: List[LinearForm] = []
    for f in forms:
        if isinstance(f, LinearForm):
            out.append(f)
        else:
            coeffs = vec(f)
            out.append(LinearForm(coeffs=coeffs, label=form_label(coeffs)))
    return StrictSystem(forms=tuple(out))


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Optional[Vector] = None  # primitive integer vector, all forms > 0
    certificate: Optional[Vector] = None  # y >= 0, y != 0, sum y_i f_i = 0


def verify_witness(system: StrictSystem, x: Vector) -> bool:
    if len(x) != system.dim and system.forms:
        return False
    return all(f.evaluate(x) > 0 for f in system.forms)


def verify_certificate(system: StrictSystem, y: Vector) -> bool:
    if len(y) != len(system.forms) or not system.forms:
        return False
    if any(c < 0 for c in y) or all(c == 0 for c in y):
        return False
    d = system.dim
    comb = [Q(0)] * d
    for c, f in zip(y, system.forms):
        for i in range(d):
            comb[i] += c * f.coeffs[i]
    return all(v == 0 for v in comb)


class _Tracked:
    """A working form plus its nonnegative pedigree over the original forms."""

    __slots__ = ("coeffs", "combo")

    def __init__(self, coeffs: Vector, combo: Vector):
        self.coeffs = coeffs
        self.combo = combo


def _dedupe(forms: List[_Tracked]) -> List[_Tracked]:
    seen = {}
    for f in forms:
        key = integerize(f.coeffs)
        if key not in seen:
            seen[key] = f
    return list(seen.values())


def strict_feasible(system: StrictSystem) -> FeasibilityResult:
    """Decide the system, returning a verified witness or certificate.

    Deterministic: identical systems produce identical results.
    """
    m = len(system.forms)
    if m == 0:
        return FeasibilityResult(feasible=True, witness=())
    d = system.dim
    unit = lambda i: tuple(Q(1) if j == i else Q(0) for j in range(m))

    active: List[_Tracked] = []
    for i, f in enumerate(system.forms):
        if is_zero(f.coeffs):
            cert = unit(i)  # 0 > 0 is its own refutation
            if not verify_certificate(system, cert):  # pragma: no cover
                raise AssertionError("certificate failed exact re-verification")
            return FeasibilityResult(feasible=False, certificate=cert)
        active.append(_Tracked(f.coeffs, unit(i)))
    active = _dedupe(active)

    bounds_at: List[List[_Tracked]] = [[] for _ in range(d)]
    for k in range(d - 1, -1, -1):
        lows = [f for f in active if f.coeffs[k] > 0]
        ups = [f for f in active if f.coeffs[k] < 0]
        bounds_at[k] = lows + ups
        nxt = [f for f in active if f.coeffs[k] == 0]
        for fp in lows:
            for fm in ups:
                a, b = fp.coeffs[k], -fm.coeffs[k]  # both > 0
                coeffs = tuple(b * x + a * y for x, y in zip(fp.coeffs, fm.coeffs))
                combo = tuple(b * x + a * y for x, y in zip(fp.combo, fm.combo))
                if is_zero(coeffs):
                    cert = integerize(combo)
                    if not verify_certificate(system, cert):  # pragma: no cover
                        raise AssertionError(
                            "certificate failed exact re-verification"
                        )
                    return FeasibilityResult(feasible=False, certificate=cert)
                nxt.append(_Tracked(coeffs, combo))
        active = _dedupe(nxt)

    # never derived 0 > 0, so the system is feasible: back-substitute
    x: List[Q] = [Q(0)] * d
    for k in range(d):
        lo: Optional[Q] = None
        hi: Optional[Q] = None
        for f in bounds_at[k]:
            rest = sum((f.coeffs[j] * x[j] for j in range(k)), Q(0))
            bound = -rest / f.coeffs[k]
            if f.coeffs[k] > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is not None and hi is not None:
            if not lo < hi:  # pragma: no cover - contradicts FM feasibility
                raise AssertionError("empty interval after elimination")
            x[k] = (lo + hi) / 2
        elif lo is not None:
            x[k] = lo + 1
        elif hi is not None:
            x[k] = hi - 1
        # else unconstrained: leave 0

    witness = integerize(tuple(x))
    if not verify_witness(system, witness):  # pragma: no cover
        raise AssertionError("witness failed exact re-verification")
    return FeasibilityResult(feasible=True, witness=witness)
