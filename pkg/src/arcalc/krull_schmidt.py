"""Endomorphism rings, indecomposable decompositions and isomorphism tests.

Decomposition splits an object along a primary component of a random
endomorphism (a Fitting split).  A factor is declared indecomposable once
the trace form on its endomorphism ring has a radical of codimension one
(or, failing that, the residue ring is a field).  The trace-form argument
needs ``p`` larger than twice the dimension of the endomorphism ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

from .linalg import PrimeField
from .modules import LMap, ModuleError, block_diag, combine, submodule
from .morphisms import HMorphism, HObject, SObject, as_object, hom_pairs

ISO_TRIALS = 64
SPLIT_RETRIES = 32


class CharacteristicTooSmall(ModuleError):
    pass


@dataclass(frozen=True, eq=False)
class EndoRing:
    object: HObject
    U: np.ndarray  # (m, dA, dA)
    V: np.ndarray  # (m, dB, dB)

    @property
    def dim(self) -> int:
        return self.U.shape[0]

    def joint(self) -> np.ndarray:
        """Each basis element as a block-diagonal matrix on A ⊕ B."""
        return np.stack([block_diag(u, v) for u, v in zip(self.U, self.V)]) if self.dim else np.zeros(
            (0,) + (sum(self.object.dims()),) * 2, dtype=np.int64
        )

    def element(self, coeffs) -> tuple[np.ndarray, np.ndarray]:
        p = self.object.alg.p
        return combine(self.U, coeffs, p), combine(self.V, coeffs, p)

    def multiplication_table(self) -> np.ndarray:
        """``table[i, j]`` holds the coordinates of ``e_i ∘ e_j``."""
        F = self.object.alg.field
        J = self.joint()
        m = self.dim
        basis = J.reshape(m, -1).T
        table = np.zeros((m, m, m), dtype=np.int64)
        for i in range(m):
            prods = (J[i] @ J % F.p).reshape(m, -1).T
            table[i] = F.solve(basis, prods).T
        return table


def endo_basis(x: HObject) -> EndoRing:
    U, V = hom_pairs(x, x)
    return EndoRing(x, U, V)


@dataclass(eq=False)
class Decomposition:
    object: HObject
    summands: list[HObject]
    embeddings: list[HMorphism] = field(default_factory=list)
    projections: list[HMorphism] = field(default_factory=list)
    groups: list[tuple[HObject, int]] = field(default_factory=list)


# ---------------------------------------------------------------------------
# locality


def _trace_radical(F: PrimeField, J: np.ndarray) -> np.ndarray:
    m = J.shape[0]
    flat = J.reshape(m, -1)
    Jt = np.transpose(J, (0, 2, 1)).reshape(m, -1)
    G = flat @ Jt.T % F.p  # tr(J_i J_j) = sum_kl J_i[k,l] J_j[l,k]
    return F.kernel(G)


def _residue_dim(x: HObject, E: EndoRing) -> int:
    """dim End(x)/rad End(x), via the trace form of the action on A ⊕ B."""
    F = x.alg.field
    if E.dim == 0:
        return 0
    if F.p <= 2 * E.dim or F.p <= sum(x.dims()):
        raise CharacteristicTooSmall(
            f"decomposition needs p > 2*dim End = {2 * E.dim} and p > dim A + dim B; got p = {F.p}"
        )
    return E.dim - _trace_radical(F, E.joint()).shape[1]


def _factor(F: PrimeField, J: np.ndarray):
    coeffs = [int(c) for c in F.charpoly(J)]
    _, factors = gf_factor(coeffs, F.p, ZZ)
    return [([int(c) for c in g], e) for g, e in factors]


# ---------------------------------------------------------------------------
# splitting


def _restrict(x: HObject, KA: np.ndarray, KB: np.ndarray) -> tuple[HObject, LMap, LMap]:
    F = x.alg.field
    A1 = submodule(x.source, KA)
    B1 = submodule(x.target, KB)
    m = F.solve(KB, F.mul(x.f.M, KA))
    if m is None:
        raise AssertionError("Fitting component is not preserved by the structure map")
    return as_object(LMap(A1, B1, m)), LMap(A1, x.source, KA), LMap(B1, x.target, KB)


def _fitting_split(x: HObject, u: np.ndarray, v: np.ndarray, g: list[int]):
    F = x.alg.field
    parts = []
    for M in (u, v):
        W = F.polyval_matrix(g, M)
        W = F.power(W, max(M.shape[0], 1))
        parts.append((F.kernel(W), F.column_basis(W)))
    (KA, IA), (KB, IB) = parts
    return _restrict(x, KA, KB), _restrict(x, IA, IB)


def _try_split(x: HObject, E: EndoRing, rng: np.random.Generator):
    F = x.alg.field
    coeffs = F.random(rng, 1, E.dim)[0]
    u, v = E.element(coeffs)
    factors = _factor(F, block_diag(u, v))
    if len(factors) < 2:
        return None, factors
    return _fitting_split(x, u, v, factors[0][0]), factors


def _split(x: HObject, rng: np.random.Generator) -> list[tuple[HObject, LMap, LMap]]:
    """Indecomposable pieces of ``x`` with their inclusions into A and B."""
    F = x.alg.field
    if x.is_zero():
        return []
    E = endo_basis(x)
    eye = (LMap.identity(x.source), LMap.identity(x.target))
    if E.dim == 1:
        return [(x, *eye)]
    rdim = _residue_dim(x, E)
    if rdim == 1:
        return [(x, *eye)]
    for _ in range(SPLIT_RETRIES):
        pieces, factors = _try_split(x, E, rng)
        if pieces is None:
            if len(factors) == 1 and len(factors[0][0]) - 1 == rdim:
                # random element generates a field of order p^rdim: End/rad is that field
                return [(x, *eye)]
            continue
        out = []
        for y, ia, ib in pieces:
            for z, ja, jb in _split(y, rng):
                out.append((z, ia @ ja, ib @ jb))
        return out
    raise AssertionError(f"no Fitting split found for a non-local endomorphism ring (residue dim {rdim})")


def decompose_object(x: HObject, seed: int = 0, group: bool = True) -> Decomposition:
    rng = np.random.default_rng(seed)
    F = x.alg.field
    pieces = _split(x, rng)
    summands = [y for y, _, _ in pieces]
    embeddings = [HMorphism(y, x, ia, ib) for y, ia, ib in pieces]
    projections = []
    if pieces:
        BA = np.hstack([ia.M for _, ia, _ in pieces])
        BB = np.hstack([ib.M for _, _, ib in pieces])
        PA, PB = F.inv(BA), F.inv(BB)
        ra = rb = 0
        for y, _, _ in pieces:
            da, db = y.dims()
            pa = LMap(x.source, y.source, PA[ra : ra + da])
            pb = LMap(x.target, y.target, PB[rb : rb + db])
            projections.append(HMorphism(x, y, pa, pb))
            ra += da
            rb += db
    dec = Decomposition(x, summands, embeddings, projections)
    if group:
        groups: list[list] = []
        for y in summands:
            for g in groups:
                if is_isomorphic(g[0], y, seed=seed)[0]:
                    g[1] += 1
                    break
            else:
                groups.append([y, 1])
        dec.groups = [(g[0], g[1]) for g in groups]
    return dec


def is_indecomposable(x: HObject, seed: int = 0) -> bool:
    return len(_split(x, np.random.default_rng(seed))) == 1


# ---------------------------------------------------------------------------
# isomorphism


def invariants(x: HObject) -> tuple:
    """Isomorphism invariants: partitions of A, B, Ker f, Im f and Cok f."""
    from .modules import cokernel, image, kernel

    key = [tuple(x.source.partition), tuple(x.target.partition)]
    if not isinstance(x, SObject):
        key.append(tuple(kernel(x.f).source.partition))
        key.append(tuple(image(x.f)[1].source.partition))
    key.append(tuple(cokernel(x.f).target.partition))
    return tuple(key)


def _witness(x: HObject, y: HObject, u, v) -> HMorphism:
    m = HMorphism(x, y, LMap(x.source, y.source, u), LMap(x.target, y.target, v))
    if not (m.commutes() and m.is_iso()):
        raise AssertionError("isomorphism witness failed verification")
    return m


def _random_iso(x: HObject, y: HObject, rng, trials: int) -> HMorphism | None:
    F = x.alg.field
    U, V = hom_pairs(x, y)
    if U.shape[0] == 0:
        return None if (x.dims() != (0, 0) or y.dims() != (0, 0)) else _witness(x, y, U.sum(0), V.sum(0))
    for t in range(trials):
        c = F.random(rng, 1, U.shape[0])[0] if t else np.ones(U.shape[0], dtype=np.int64)
        u, v = combine(U, c, F.p), combine(V, c, F.p)
        if F.is_invertible(u) and F.is_invertible(v):
            return _witness(x, y, u, v)
    return None


def _indecomposables_iso(x: HObject, y: HObject) -> HMorphism | None:
    """Exact test for indecomposables: some basis composite ``g ∘ f`` is invertible."""
    F = x.alg.field
    U1, V1 = hom_pairs(x, y)
    U2, V2 = hom_pairs(y, x)
    for u1, v1 in zip(U1, V1):
        for u2, v2 in zip(U2, V2):
            if not F.is_nilpotent(block_diag(F.mul(u2, u1), F.mul(v2, v1))):
                return _witness(x, y, u1, v1)
    return None


def is_isomorphic(x: HObject, y: HObject, seed: int = 0, trials: int = ISO_TRIALS):
    """``(flag, witness)``; the witness is an ``HMorphism`` checked to be an isomorphism."""
    if x.alg != y.alg or x.dims() != y.dims():
        return False, None
    if invariants(x) != invariants(y):
        return False, None
    rng = np.random.default_rng(seed)
    w = _random_iso(x, y, rng, trials)
    if w is not None:
        return True, w
    # deterministic fallback: match indecomposable summands
    dx = decompose_object(x, seed=seed, group=False)
    dy = decompose_object(y, seed=seed, group=False)
    if len(dx.summands) != len(dy.summands):
        return False, None
    used = [False] * len(dy.summands)
    pairs = []
    for i, a in enumerate(dx.summands):
        for j, b in enumerate(dy.summands):
            if used[j] or a.dims() != b.dims() or invariants(a) != invariants(b):
                continue
            w = _indecomposables_iso(a, b)
            if w is not None:
                used[j] = True
                pairs.append((i, j, w))
                break
        else:
            return False, None
    F = x.alg.field
    u = np.zeros((y.source.dim, x.source.dim), dtype=np.int64)
    v = np.zeros((y.target.dim, x.target.dim), dtype=np.int64)
    for i, j, w in pairs:
        emb, proj = dy.embeddings[j], dx.projections[i]
        u = (u + F.mul(emb.u.M, w.u.M, proj.u.M)) % F.p
        v = (v + F.mul(emb.v.M, w.v.M, proj.v.M)) % F.p
    return True, _witness(x, y, u, v)


def iso(x: HObject, y: HObject, seed: int = 0) -> bool:
    return is_isomorphic(x, y, seed=seed)[0]


def find_in(x: HObject, candidates, seed: int = 0) -> int | None:
    """Index of the first candidate isomorphic to ``x``."""
    inv = invariants(x)
    for i, c in enumerate(candidates):
        if c.dims() == x.dims() and invariants(c) == inv and is_isomorphic(x, c, seed=seed)[0]:
            return i
    return None
