"""Supremum norms over products of unit balls of l_inf^n.

A real multilinear form is affine in every coordinate of every argument, so
its maximum over the product of cubes [-1,1]^{n_j} is attained at vertices
(+-1 vectors).  ``exact_norm_real`` exploits that, eliminating one slot in
closed form: once the other m-1 slots carry fixed signs, the form is a linear
functional in the remaining slot and its maximum over the cube is the l_1 norm
of that functional's coefficients.

Complex norms are nonconvex over the torus; only seeded lower bounds are
provided (``ascent_lower_bound``, ``poly_lower_bound``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    COMPLEX,
    REAL,
    BudgetExceededError,
    FieldMismatchError,
    HomogeneousPolynomial,
    MultilinearForm,
)

DEFAULT_BUDGET = 1 << 24
BRUTE_BUDGET = 1 << 20
# cap on the assignments x n_k intermediate before chunked evaluation kicks in
_CHUNK_CELLS = 1 << 22

REL_TOL = 1e-9


@dataclass(frozen=True)
class NormResult:
    """A norm value with its certificate.

    ``exact`` is True only when full vertex enumeration completed (real
    scalars); otherwise the value is a certified lower bound.  ``witness``
    holds one vector per slot (a single vector for polynomials) whose
    evaluation reproduces ``value`` in absolute value.
    """

    value: float
    witness: tuple
    exact: bool
    eliminated_slot: int | None
    work: int

    def to_json(self) -> dict:
        def num(v):
            if isinstance(v, complex):
                return {"re": v.real, "im": v.imag}
            return v

        return {
            "value": self.value,
            "exact": self.exact,
            "witness": [[num(v) for v in w] for w in self.witness],
            "eliminated_slot": self.eliminated_slot,
            "work": self.work,
        }


def _sign_rows(a: int, dtype) -> np.ndarray:
    """All 2^a sign rows in lexicographic order with -1 < +1, first coord most
    significant; row 0 is all -1."""
    r = np.arange(1 << a, dtype=np.int64)
    bits = (r[:, None] >> np.arange(a - 1, -1, -1)) & 1
    return (2 * bits - 1).astype(dtype)


def _all_ones_witness(T: MultilinearForm) -> tuple:
    return tuple(tuple(1 for _ in range(d)) for d in T.dims)


def exact_norm_real(T: MultilinearForm, budget: int = DEFAULT_BUDGET) -> NormResult:
    """Exact sup norm of a real form by vertex enumeration with one slot
    eliminated in closed form.

    The eliminated slot is the one with the largest active support, so the
    enumerated assignment count is 2^(sum of the other slots' supports).
    Only active coordinates are enumerated; inactive ones are fixed to +1.
    Among maximizers the lexicographically smallest sign assignment
    (slot-major, -1 < +1) is reported.
    """
    if T.field != REAL:
        raise FieldMismatchError(
            "exact norms are only computed for real forms; use ascent_lower_bound"
        )
    if not T.coeffs:
        return NormResult(0, _all_ones_witness(T), True, None, 0)

    active = T.active_support()
    k = max(range(T.m), key=lambda j: (len(active[j]), -j))
    others = [j for j in range(T.m) if j != k]
    counts = [len(active[j]) for j in others]
    assignments = 1
    for a in counts:
        assignments <<= a
    if assignments > budget:
        raise BudgetExceededError(
            f"{assignments} sign assignments exceed budget {budget}; "
            f"rerun with budget >= {assignments}",
            required=assignments,
        )

    integer = T.is_integer()
    dtype = np.int64 if integer else np.float64

    # dense tensor over active coordinates: other slots' axes then slot k
    pos = [
        {i: c for c, i in enumerate(active[j])} for j in range(T.m)
    ]
    nk = len(active[k])
    shape = tuple(counts) + (nk,)
    C = np.zeros(shape, dtype=dtype)
    for t, c in T.coeffs.items():
        idx = tuple(pos[j][t[j]] for j in others) + (pos[k][t[k]],)
        C[idx] = c

    sign_mats = [_sign_rows(a, dtype) for a in counts]

    def eval_block(first_rows: np.ndarray | None) -> np.ndarray:
        """Per-assignment values sum_i |g_i|, restricted to the given rows of
        the first slot's sign matrix (all rows when None)."""
        X = C.reshape(1, -1)
        lead = 1
        rest = list(shape)
        for i, S in enumerate(sign_mats):
            if i == 0 and first_rows is not None:
                S = S[first_rows]
            a = rest.pop(0)
            q = 1
            for r in rest:
                q *= r
            X = X.reshape(lead, a, q)
            X = np.einsum("laq,sa->lsq", X, S)
            lead *= S.shape[0]
            X = X.reshape(lead, -1)
        return np.abs(X).sum(axis=1)

    if not others:
        values = eval_block(None)
        best_idx = 0
        best_val = values[0]
        work = 1
    elif assignments * nk <= _CHUNK_CELLS:
        values = eval_block(None)
        best_idx = int(np.argmax(values))
        best_val = values[best_idx]
        work = assignments
    else:
        a0 = counts[0]
        tail = assignments >> a0
        block = max(1, _CHUNK_CELLS // (tail * nk))
        best_idx, best_val = 0, None
        for start in range(0, 1 << a0, block):
            rows = np.arange(start, min(start + block, 1 << a0))
            vals = eval_block(rows)
            local = int(np.argmax(vals))
            if best_val is None or vals[local] > best_val:
                best_val = vals[local]
                best_idx = start * tail + local
        work = assignments

    # decode the winning assignment into per-slot signs
    slot_signs = {}
    idx = best_idx
    for j, a in zip(reversed(others), reversed(counts)):
        r = idx & ((1 << a) - 1)
        idx >>= a
        slot_signs[j] = [1 if (r >> (a - 1 - c)) & 1 else -1 for c in range(a)]

    # closed-form signs for the eliminated slot from the induced functional
    g = C
    for j in others:
        sv = np.asarray(slot_signs[j], dtype=dtype)
        g = np.tensordot(sv, g, axes=([0], [0]))
    slot_signs[k] = [1 if gi > 0 else -1 for gi in g]

    witness = []
    for j in range(T.m):
        w = [1] * T.dims[j]
        for c, i in enumerate(active[j]):
            w[i - 1] = slot_signs[j][c]
        witness.append(tuple(w))

    value = int(best_val) if integer else float(best_val)
    return NormResult(value, tuple(witness), True, k, work)


def brute_force_norm_real(T: MultilinearForm, budget: int = BRUTE_BUDGET):
    """Test oracle: full enumeration over all 2^(sum n_j) vertex combinations,
    with no elimination shortcut.  Returns the bare value."""
    if T.field != REAL:
        raise FieldMismatchError("brute force enumeration requires a real form")
    total = sum(T.dims)
    if 1 << total > budget:
        raise BudgetExceededError(
            f"2^{total} vertex combinations exceed budget {budget}",
            required=1 << total,
        )
    best = 0
    for signs in itertools.product((-1, 1), repeat=total):
        args = []
        ofs = 0
        for d in T.dims:
            args.append(signs[ofs : ofs + d])
            ofs += d
        v = abs(T.evaluate(args))
        if v > best:
            best = v
    return best


def _induced_functional(T: MultilinearForm, x: list, j: int):
    """Coefficients of the linear functional in slot j with the other slots
    frozen at x."""
    c = [0] * T.dims[j]
    for t, coeff in T.coeffs.items():
        term = coeff
        for l, i in enumerate(t):
            if l != j:
                term = term * x[l][i - 1]
        c[t[j] - 1] += term
    return c


def ascent_lower_bound(
    T: MultilinearForm,
    seed: int = 0,
    restarts: int = 8,
    max_rounds: int = 100,
) -> NormResult:
    """Alternating maximization: cycle through slots, replacing each argument
    by the exact maximizer of the induced linear functional (sign vector for
    real scalars, conjugate phases for complex).  The value is nondecreasing;
    the result is a certified lower bound, deterministic for a fixed seed."""
    if not T.coeffs:
        return NormResult(0, _all_ones_witness(T), False, None, 0)
    active = T.active_support()
    complex_field = T.field == COMPLEX
    children = np.random.SeedSequence(seed).spawn(restarts)
    best_val = -1.0
    best_x = None
    work = 0
    for child in children:
        rng = np.random.default_rng(child)
        x = []
        for j in range(T.m):
            w = [1] * T.dims[j]
            for i in active[j]:
                if complex_field:
                    theta = 2.0 * math.pi * rng.random()
                    w[i - 1] = complex(math.cos(theta), math.sin(theta))
                else:
                    w[i - 1] = int(rng.integers(0, 2)) * 2 - 1
            x.append(w)
        val = abs(T.evaluate(x))
        for _ in range(max_rounds):
            before = val
            for j in range(T.m):
                c = _induced_functional(T, x, j)
                for i in active[j]:
                    ci = c[i - 1]
                    if complex_field:
                        mag = abs(ci)
                        x[j][i - 1] = ci.conjugate() / mag if mag > 0 else 1
                    else:
                        x[j][i - 1] = -1 if ci < 0 else 1
                val = sum(abs(c[i - 1]) for i in active[j])
                work += 1
            if val - before <= 1e-12 * max(1.0, abs(val)):
                break
        if val > best_val:
            best_val = val
            best_x = tuple(tuple(w) for w in x)
    return NormResult(best_val, best_x, False, None, work)


def _poly_vertex_norm(
    P: HomogeneousPolynomial, budget: int = BRUTE_BUDGET
) -> NormResult:
    """Exact norm of a real multiaffine polynomial by vertex enumeration over
    the active variables."""
    act = P.active_variables()
    if 1 << len(act) > budget:
        raise BudgetExceededError(
            f"2^{len(act)} vertices exceed budget {budget}", required=1 << len(act)
        )
    terms = [
        (tuple(v for v, _ in alpha.exponents), c) for alpha, c in P.coeffs.items()
    ]
    best = 0
    best_signs = None
    for signs in itertools.product((-1, 1), repeat=len(act)):
        s = dict(zip(act, signs))
        v = 0
        for vars_, c in terms:
            term = c
            for var in vars_:
                term *= s[var]
            v += term
        v = abs(v)
        if v > best:
            best = v
            best_signs = s
    w = [1] * P.n
    if best_signs:
        for var, sgn in best_signs.items():
            w[var - 1] = sgn
    return NormResult(best, (tuple(w),), True, None, 1 << len(act))


def _best_on_interval(coefs: list) -> tuple:
    """Maximize |q(t)| over [-1,1] for q given by ascending power coefficients.
    Candidates: endpoints and real critical points of q."""
    poly = np.polynomial.Polynomial(coefs)
    cands = [-1.0, 1.0]
    if poly.degree() >= 1:
        for r in poly.deriv().roots():
            if abs(r.imag) < 1e-12 and -1.0 <= r.real <= 1.0:
                cands.append(float(r.real))
    best_t, best_v = 1.0, -1.0
    for t in cands:
        v = abs(poly(t))
        if v > best_v:
            best_v, best_t = v, t
    return best_t, best_v


def poly_lower_bound(
    P: HomogeneousPolynomial,
    seed: int = 0,
    restarts: int = 8,
    max_rounds: int = 60,
    budget: int = BRUTE_BUDGET,
) -> NormResult:
    """Lower bound on sup |P| over the unit ball of l_inf^n.

    Real multiaffine polynomials delegate to exact vertex enumeration (exact
    flag set).  Otherwise: cyclic coordinate ascent; each real coordinate
    update solves the univariate problem on [-1,1] by derivative root
    isolation, each complex coordinate scans 16 phases on the unit circle and
    refines locally (by the maximum modulus principle the per-coordinate
    optimum lies on the circle)."""
    if not P.coeffs:
        return NormResult(0, (tuple(1 for _ in range(P.n)),), False, None, 0)
    if P.field == REAL and P.is_multiaffine():
        return _poly_vertex_norm(P, budget=budget)

    act = P.active_variables()
    complex_field = P.field == COMPLEX
    children = np.random.SeedSequence(seed).spawn(restarts)
    best_val = -1.0
    best_x = None
    work = 0
    for child in children:
        rng = np.random.default_rng(child)
        x = [1.0] * P.n
        for var in act:
            if complex_field:
                theta = 2.0 * math.pi * rng.random()
                x[var - 1] = complex(math.cos(theta), math.sin(theta))
            else:
                x[var - 1] = 2.0 * rng.random() - 1.0
        val = abs(P.evaluate(x))
        for _ in range(max_rounds):
            before = val
            for var in act:
                deg = max(alpha.exponent_of(var) for alpha in P.coeffs)
                coefs = [0.0 + 0.0j if complex_field else 0.0] * (deg + 1)
                for alpha, c in P.coeffs.items():
                    term = c
                    for v2, e2 in alpha.exponents:
                        if v2 != var:
                            term = term * x[v2 - 1] ** e2
                    coefs[alpha.exponent_of(var)] += term
                if complex_field:
                    phases = np.exp(2j * math.pi * np.arange(16) / 16.0)
                    vals = [
                        abs(sum(coefs[d] * z**d for d in range(deg + 1)))
                        for z in phases
                    ]
                    bi = int(np.argmax(vals))
                    theta, width = 2.0 * math.pi * bi / 16.0, 2.0 * math.pi / 16.0
                    bv, bz = vals[bi], phases[bi]
                    for _ in range(20):
                        for th in (theta - width / 2, theta + width / 2):
                            z = complex(math.cos(th), math.sin(th))
                            v = abs(sum(coefs[d] * z**d for d in range(deg + 1)))
                            if v > bv:
                                bv, bz, theta = v, z, th
                        width /= 2
                    x[var - 1] = bz
                    val = bv
                else:
                    t, v = _best_on_interval(coefs)
                    x[var - 1] = t
                    val = v
                work += 1
            if val - before <= 1e-12 * max(1.0, abs(val)):
                break
        if val > best_val:
            best_val = val
            best_x = tuple(x)
    return NormResult(best_val, (best_x,), False, None, work)
