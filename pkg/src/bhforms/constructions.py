"""The two structural transforms: re-indexing a form so its slots use
pairwise-disjoint variables, and multiplying a polynomial by a power of the
first variable to raise its degree while capping the variable count."""

from __future__ import annotations

from dataclasses import dataclass

from .core import HomogeneousPolynomial, MultiIndex, MultilinearForm


@dataclass(frozen=True)
class SlotEmbedding:
    """Canonical interleaving of m slots into disjoint variable classes:
    slot i (1-based) sends index j to m*(j-1) + i, so variable v belongs to
    slot ((v-1) mod m) + 1 at original index ((v-1) div m) + 1."""

    m: int

    def apply(self, slot: int, j: int) -> int:
        return self.m * (j - 1) + slot

    def invert(self, v: int) -> tuple[int, int]:
        return (v - 1) % self.m + 1, (v - 1) // self.m + 1

    def to_json(self) -> dict:
        return {
            "kind": "embedding",
            "m": self.m,
            "rule": "slot i, index j -> m*(j-1)+i",
        }


def disjointify(T: MultilinearForm) -> tuple[MultilinearForm, SlotEmbedding]:
    """Re-index each slot into its own residue class mod m.  The new form has
    the same coefficient multiset (hence the same norm); its slots share no
    variable, so the diagonal polynomial below is collision-free."""
    emb = SlotEmbedding(T.m)
    n = T.m * max(T.dims)
    coeffs = {
        tuple(emb.apply(j + 1, i) for j, i in enumerate(t)): c
        for t, c in T.coeffs.items()
    }
    T1 = MultilinearForm.build(T.m, (n,) * T.m, coeffs, field=T.field)
    return T1, emb


def diagonal_polynomial(T1: MultilinearForm) -> HomogeneousPolynomial:
    """P(x) = T1(x, ..., x).  For disjointified input every tuple maps to a
    distinct square-free monomial; otherwise colliding monomials accumulate
    (documented and allowed)."""
    coeffs: dict[MultiIndex, object] = {}
    for t, c in T1.coeffs.items():
        alpha = MultiIndex.from_tuple(t)
        coeffs[alpha] = coeffs.get(alpha, 0) + c
    return HomogeneousPolynomial.build(
        T1.m, max(T1.dims), coeffs, field=T1.field
    )


def reconstruct_form(
    P: HomogeneousPolynomial, emb: SlotEmbedding, dims: tuple[int, ...]
) -> MultilinearForm:
    """Invert diagonal_polynomial(disjointify(T)) back to T via the embedding."""
    coeffs = {}
    for alpha, c in P.coeffs.items():
        t = [0] * emb.m
        for var, exp in alpha.exponents:
            if exp != 1:
                raise ValueError("disjointified polynomials are square-free")
            slot, j = emb.invert(var)
            t[slot - 1] = j
        if any(i == 0 for i in t):
            raise ValueError(f"monomial {alpha} does not cover every slot")
        coeffs[tuple(t)] = c
    return MultilinearForm.build(emb.m, dims, coeffs, field=P.field)


def lift_polynomial(P: HomogeneousPolynomial, m: int) -> HomogeneousPolynomial:
    """Raise a degree-(M-1) polynomial to degree m by multiplying with
    x_1^(m-M+1).  Coefficients transfer bijectively; every lifted monomial
    uses at most M distinct variables when the original used at most M-1
    (or already contained x_1)."""
    if m <= P.m:
        raise ValueError(f"target degree {m} must exceed the current degree {P.m}")
    boost = m - P.m
    coeffs = {alpha.plus(1, boost): c for alpha, c in P.coeffs.items()}
    return HomogeneousPolynomial.build(m, max(P.n, 1), coeffs, field=P.field)
