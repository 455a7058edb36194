"""Equivalence chains of generalized Hadamard codes across ring levels.

A type whose generator matrix has a second row of order p^(s+1-sigma)
sits at position sigma of a unique chain.  The chain's representative is
the member with t_1 >= 2 (lowest ring level); walking one level up sends
(t_1, ..., t_s) to (1, t_1 - 1, t_2, ..., t_{s-1}, t_s - 1), and the
corresponding Gray images differ by an explicit coordinate permutation
built from gamma and rho.  Composing those step permutations between two
positions of one chain yields a monomial-free equivalence witness that
maps one Gray image exactly onto the other.

Degenerate corner: types (1, 0, ..., 0, m) have sigma = s and their
representative collapses to the single-entry type (m + s - 1) over Z_p.
Such a representative is kept as pure type algebra — its own position-1
"code" lives at a shorter length and is never materialized — but all
members at positions >= 2 are genuine codes of one length, and exactly
these types make up the linear Gray images.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .construction import (
    DEFAULT_BUDGET_BYTES,
    AdditiveCode,
    TypeSignature,
    materialization_bytes,
    materialize_gray,
    validate_type,
)
from .errors import CapacityError, InputError, NoSecondRow
from .gray import Permutation, block_lift, gamma_extended, identity_permutation, rho


def sigma(sig: TypeSignature) -> int:
    """Ring level of the second generator row: its order is p^(s+1-sigma)."""
    if sig.ts[0] >= 2:
        return 1
    for i in range(1, sig.s):
        if sig.ts[i] > 0:
            return i + 1
    raise NoSecondRow(f"type {sig.ts} has a single generator row")


@dataclass(frozen=True)
class ChainPosition:
    representative: TypeSignature
    position: int


@dataclass(frozen=True)
class EquivalenceChain:
    representative: TypeSignature
    members: tuple[TypeSignature, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> TypeSignature:
        return self.members[i]


def chain_of(sig: TypeSignature) -> ChainPosition:
    """Locate a type inside its chain: (representative, 1-based position)."""
    s = sig.s
    sg = sigma(sig)
    if sg == 1:
        return ChainPosition(sig, 1)
    if sg < s:
        rep = (sig.ts[sg - 1] + 1, *sig.ts[sg : s - 1], sig.ts[s - 1] + sg - 1)
        return ChainPosition(validate_type(sig.p, rep), sg)
    # sigma == s: single-entry representative over Z_p
    return ChainPosition(validate_type(sig.p, (sig.ts[s - 1] + s - 1,)), s)


def chain_members(rep: TypeSignature) -> EquivalenceChain:
    """All members of the chain with the given representative, position order.

    Member i lives over Z_{p^(s+i-1)}; there are t_s + 1 members.
    """
    if rep.ts[0] < 2:
        raise InputError(f"{rep.ts} is not a chain representative (t_1 < 2)")
    s = rep.s
    tail = rep.ts[s - 1]
    members = [rep]
    for i in range(2, tail + 2):
        if s == 1:
            ts = (1, *([0] * (i - 2)), tail - i + 1)
        else:
            ts = (1, *([0] * (i - 2)), rep.ts[0] - 1, *rep.ts[1 : s - 1], tail - i + 1)
        members.append(validate_type(rep.p, ts))
    return EquivalenceChain(rep, tuple(members))


def step_permutation(p: int, s: int, n_prime: int) -> Permutation:
    """The permutation carrying Gray images one ring level down.

    For an additive code H over Z_{p^(s+1)} of length n_prime whose
    unmapping tau_tilde(H) has type one chain-position lower, the returned
    pi in S_{n_prime * p^s} satisfies pi(Phi(H)) = Phi(tau_tilde(H)):
    pi = (gamma_ext . rho_lift)^(-1), with gamma acting per phi-block and
    rho interleaving the n_prime coordinate blocks of width p^(s-1).
    """
    if s < 1:
        raise InputError("s must be >= 1")
    g = gamma_extended(p, s + 1, n_prime)
    r_star = block_lift(rho(p, n_prime), p ** (s - 1))
    return g.compose(r_star).inverse()


def _chain_steps(rep: TypeSignature, lo: int, hi: int, t: int) -> list[Permutation]:
    """Step permutations linking positions lo..hi of a chain (lo <= hi)."""
    p = rep.p
    out = []
    for j in range(lo, hi):
        s_j = rep.s + j - 1
        n_next = p ** (t - s_j)  # length of the member at position j+1
        out.append(step_permutation(p, s_j, n_next))
    return out


@dataclass(frozen=True)
class EquivalenceReport:
    verdict: str  # "PASS" | "FAIL"
    representative: "tuple[int, ...] | None"
    positions: tuple[int, int]
    witness: "Permutation | None"
    mode: str  # "set-equality" | "algebra-only"
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


def verify_equivalence(
    sig_a: TypeSignature,
    sig_b: TypeSignature,
    check_sets: "bool | None" = None,
    budget_bytes: int = DEFAULT_BUDGET_BYTES,
) -> EquivalenceReport:
    """Decide equivalence of two types and, when PASS, produce a witness.

    PASS means both types sit in the same chain; the witness permutation
    maps the Gray image of the higher-position member exactly onto the
    lower one's (identity when the positions coincide).  With
    check_sets=None the set equality is verified whenever the two codes
    fit the memory budget; True forces the check, False skips it.
    """
    if sig_a.p != sig_b.p:
        raise InputError("types live over different primes")
    if sig_a.t != sig_b.t:
        raise InputError(f"Gray lengths differ: p^{sig_a.t} vs p^{sig_b.t}")
    ca, cb = chain_of(sig_a), chain_of(sig_b)
    positions = (ca.position, cb.position)
    if ca.representative.ts != cb.representative.ts:
        return EquivalenceReport(
            "FAIL",
            None,
            positions,
            None,
            "algebra-only",
            f"distinct representatives {ca.representative.ts} and {cb.representative.ts}",
        )

    rep = ca.representative
    t = sig_a.t
    lo, hi = min(positions), max(positions)
    lower_sig, higher_sig = (sig_a, sig_b) if ca.position <= cb.position else (sig_b, sig_a)

    witness: Permutation | None = None
    length = sig_a.gray_length
    if 8 * length <= budget_bytes:
        steps = _chain_steps(rep, lo, hi, t)
        witness = reduce(Permutation.compose, steps, identity_permutation(length))

    want_sets = check_sets is not False
    cost = materialization_bytes(lower_sig) + materialization_bytes(higher_sig)
    if want_sets and witness is not None and cost <= budget_bytes:
        gc_lo = materialize_gray(AdditiveCode.build(lower_sig), budget_bytes)
        gc_hi = materialize_gray(AdditiveCode.build(higher_sig), budget_bytes)
        mapped = witness(gc_hi.words)
        if not gc_lo.set_equal(mapped):
            # the chain theory guarantees equality; reaching here means a bug
            return EquivalenceReport(
                "FAIL", rep.ts, positions, witness, "set-equality", "composed witness failed set equality"
            )
        return EquivalenceReport("PASS", rep.ts, positions, witness, "set-equality")
    if check_sets is True:
        need = max(cost, 8 * length)
        raise CapacityError(
            f"set-equality check needs ~{need} bytes (budget {budget_bytes})",
            required_bytes=need,
            budget_bytes=budget_bytes,
        )
    return EquivalenceReport("PASS", rep.ts, positions, witness, "algebra-only")
