"""Lifting isotropic vectors and complements from residue fields.

An isotropic vector is lifted from the residue fields of a finite algebra A
by CRT followed by Newton steps on the quadric: if q(v) lies in J^t, pick w
with b_q(v, w) a unit and replace v by v - q(v) b_q(v, w)^{-1} w.  Then
q(v') = q(v)^2 q(w) / b_q(v, w)^2 lies in J^{2t}, the residues of v are
unchanged, and the loop ends after at most ceil(log2 e) steps where J^e = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import NotIsotropicInput, NotTransverse, RankMismatch, SingularPoint
from .forms import QuadraticForm, Vector
from .rings import Ring


@dataclass(frozen=True)
class LiftProblem:
    """A form over A and one isotropic target vector per residue field of A."""

    form: QuadraticForm
    targets: tuple

    @property
    def ring(self) -> Ring:
        return self.form.ring

    @property
    def nilpotency(self) -> int:
        return self.ring.residues().nilpotency


@dataclass(frozen=True)
class LiftResult:
    vector: Vector
    iterations: int
    bound: int


def newton_bound(e: int) -> int:
    return math.ceil(math.log2(e)) if e > 1 else 0


def _target_payloads(t, field: Ring, n: int) -> tuple:
    if isinstance(t, Vector):
        if t.ring != field:
            raise NotIsotropicInput(f"target over {t.ring}, residue field {field}")
        vals = t.v
    else:
        vals = tuple(field.coerce(x) if not hasattr(x, "value") else x.value for x in t)
    if len(vals) != n:
        raise NotIsotropicInput(f"target of length {len(vals)} for rank {n}")
    return vals


def transverse_direction(q: QuadraticForm, v: Sequence) -> tuple:
    """A vector w with b_q(v, w) a unit, glued from residue-field choices."""
    R = q.ring
    n = q.rank
    B = q.polar_matrix()
    Bv = linalg.matvec(R, B, v)
    if R.is_field:
        j = next((i for i, x in enumerate(Bv) if x != R.zero), None)
        if j is None:
            raise SingularPoint("b_q(v, .) vanishes")
        return tuple(R.one if i == j else R.zero for i in range(n))
    per = []
    for r in R.residues():
        red = [r.reduce(x) for x in Bv]
        j = next((i for i, x in enumerate(red) if x != r.field.zero), None)
        if j is None:
            raise SingularPoint(f"b_q(v, .) vanishes modulo {r.label}")
        per.append([r.field.one if i == j else r.field.zero for i in range(n)])
    return tuple(R.lift_residues([p[i] for p in per]) for i in range(n))


def newton_refine(q: QuadraticForm, v: Sequence, *, max_steps: int | None = None):
    """Newton iteration from v with q(v) in a nilpotent ideal; returns (v, steps)."""
    R = q.ring
    v = tuple(v)
    if max_steps is None:
        max_steps = newton_bound(R.residues().nilpotency)
    w = transverse_direction(q, v)
    steps = 0
    while True:
        qv = q.value(v)
        if qv == R.zero:
            return v, steps
        if steps >= max_steps:
            raise SingularPoint(f"Newton iteration exceeded {max_steps} steps")
        lam = q.polar_value(v, w)
        c = R.neg(R.mul(qv, R.inv(lam)))
        v = tuple(R.add(a, R.mul(c, b)) for a, b in zip(v, w))
        steps += 1


def lift_isotropic(problem: LiftProblem) -> LiftResult:
    """An isotropic v over A reducing exactly to every residue target."""
    q = problem.form
    R = q.ring
    n = q.rank
    data = R.residues()
    if len(problem.targets) != len(data):
        raise NotIsotropicInput(f"{len(problem.targets)} targets for {len(data)} residue fields")
    if R.is_field:
        fields = [(R, lambda a: a)]
    else:
        fields = [(r.field, r.reduce) for r in data]
    targets = []
    for (F, red), t in zip(fields, problem.targets):
        vals = _target_payloads(t, F, n)
        qk = QuadraticForm.raw(F, [[red(c) for c in row] for row in q.C])
        if qk.value(vals) != F.zero:
            raise NotIsotropicInput(f"target is not isotropic over {F}")
        if all(x == F.zero for x in vals):
            raise NotIsotropicInput(f"target is zero over {F}")
        if all(x == F.zero for x in linalg.matvec(F, qk.polar_matrix(), vals)):
            raise SingularPoint(f"target lies in the radical of the polar form over {F}")
        targets.append(vals)
    if R.is_field:
        return LiftResult(Vector.raw(R, targets[0]), 0, 0)
    v0 = tuple(R.lift_residues([t[i] for t in targets]) for i in range(n))
    bound = newton_bound(data.nilpotency)
    v, steps = newton_refine(q, v0, max_steps=bound)
    return LiftResult(Vector.raw(R, v), steps, bound)


def lift_isotropic_vector(q: QuadraticForm, targets: Sequence) -> Vector:
    return lift_isotropic(LiftProblem(q, tuple(targets))).vector


def complement_lift(R: Ring, n: int, U: Sequence[Vector], residue_complements: Sequence[Sequence], r: int) -> list:
    """Free W of rank r with W(m) = W[m] for every maximal ideal m and U + W a summand.

    ``residue_complements[i]`` is a list of r vectors over the i-th residue field.
    """
    fields = [(R, lambda a: a)] if R.is_field else [(res.field, res.reduce) for res in R.residues()]
    if len(residue_complements) != len(fields):
        raise RankMismatch(f"{len(residue_complements)} complements for {len(fields)} residue fields")
    per = []
    for (F, red), W in zip(fields, residue_complements):
        W = [w.v if isinstance(w, Vector) else tuple(F.coerce(x) for x in w) for w in W]
        if len(W) != r:
            raise RankMismatch(f"complement of rank {len(W)}, expected {r}")
        if any(len(w) != n for w in W):
            raise RankMismatch("complement vectors have the wrong length")
        Wk = [list(w) for w in W]
        if r and linalg.rank(F, Wk) != r:
            raise RankMismatch(f"complement over {F} does not have rank {r}")
        Uk = [[red(x) for x in u.v] for u in U]
        if linalg.rank(F, Uk + Wk) != len(U) + r:
            raise NotTransverse(f"U and W meet over {F}")
        per.append(Wk)
    if R.is_field:
        W = [Vector.raw(R, w) for w in per[0]]
    else:
        W = [Vector.raw(R, [R.lift_residues([p[t][i] for p in per]) for i in range(n)]) for t in range(r)]
    # unit-determinant check of a completion of U + W
    linalg.extend_to_basis(R, [u.v for u in U] + [w.v for w in W], n)
    return W
