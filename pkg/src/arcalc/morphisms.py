"""Objects of the morphism categories H, S and F and the functors between them.

An ``HObject`` wraps an arbitrary map ``f: A -> B``; ``SObject`` requires
``f`` monic (a submodule pair ``A ⊆ B``) and ``FObject`` requires it epic.
Morphisms are commuting pairs ``(u, v)`` with ``v ∘ f = f' ∘ u``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .modules import (
    Algebra,
    LMap,
    Module,
    ModuleError,
    block_diag,
    cokernel,
    combine,
    direct_sum,
    extend_to_injective,
    hom_stack,
    image,
    injective_envelope,
    kernel,
    lift_from_projective,
    module_from_partition,
    projective_cover,
    submodule,
    uniserial_module,
)


class UndefinedOperation(ValueError):
    """An operation that has no value on this input, e.g. τ of a projective."""


class HObject:
    """The object ``(A -f-> B)`` of the morphism category."""

    __slots__ = ("f",)

    def __init__(self, f: LMap):
        self.f = f

    @property
    def alg(self) -> Algebra:
        return self.f.source.alg

    @property
    def source(self) -> Module:
        return self.f.source

    @property
    def target(self) -> Module:
        return self.f.target

    A = source
    B = target

    def dims(self) -> tuple[int, int]:
        return self.source.dim, self.target.dim

    def is_zero(self) -> bool:
        return self.source.dim == 0 and self.target.dim == 0

    def __repr__(self):
        return f"{type(self).__name__}({notation(self)})"


class SObject(HObject):
    """A monomorphism, read as a submodule ``Im f ⊆ B``."""

    __slots__ = ()

    def __init__(self, f: LMap):
        if not f.is_monic():
            raise ModuleError("S-object structure map must be monic")
        super().__init__(f)

    @classmethod
    def from_sub(cls, B: Module, basis) -> SObject:
        F = B.alg.field
        basis = F.array(basis)
        basis = basis.reshape(B.dim, -1) if B.dim else np.zeros((0, 0), dtype=np.int64)
        basis = F.column_basis(basis)
        return cls(LMap(submodule(B, basis), B, basis))

    @property
    def sub(self) -> np.ndarray:
        return self.f.M


class FObject(HObject):
    """An epimorphism ``B -> C``."""

    __slots__ = ()

    def __init__(self, f: LMap):
        if not f.is_epic():
            raise ModuleError("F-object structure map must be epic")
        super().__init__(f)


@dataclass(frozen=True, eq=False)
class HMorphism:
    """A commuting square ``x -> y``: ``v ∘ x.f = y.f ∘ u``."""

    x: HObject
    y: HObject
    u: LMap
    v: LMap

    def commutes(self) -> bool:
        lhs = self.v @ self.x.f
        rhs = self.y.f @ self.u
        return not np.any((lhs.M - rhs.M) % lhs.F.p)

    def __matmul__(self, other: HMorphism) -> HMorphism:
        return HMorphism(other.x, self.y, self.u @ other.u, self.v @ other.v)

    def is_iso(self) -> bool:
        return self.u.is_iso() and self.v.is_iso()


def identity(x: HObject) -> HMorphism:
    return HMorphism(x, x, LMap.identity(x.source), LMap.identity(x.target))


def as_object(f: LMap) -> HObject:
    """Wrap ``f`` in the most specific object class it belongs to."""
    if f.is_monic():
        return SObject(f)
    if f.is_epic():
        return FObject(f)
    return HObject(f)


# ---------------------------------------------------------------------------
# constructions on objects


def sum_objects(*xs: HObject) -> HObject:
    alg = xs[0].alg
    A = direct_sum(*(x.source for x in xs)) if xs else alg.zero_module()
    B = direct_sum(*(x.target for x in xs)) if xs else alg.zero_module()
    return as_object(LMap(A, B, block_diag(*(x.f.M for x in xs))))


def conjugate(x: HObject, G: np.ndarray, H: np.ndarray) -> HObject:
    """Transport ``x`` along vector-space automorphisms ``H`` of A and ``G`` of B."""
    F = x.alg.field
    Gi, Hi = F.inv(G), F.inv(H)
    A, B = x.source, x.target
    A2 = Module(x.alg, F.mul(H, A.T, Hi), _perm_degrees(H, A.degrees), check=False)
    B2 = Module(x.alg, F.mul(G, B.T, Gi), _perm_degrees(G, B.degrees), check=False)
    return type(x)(LMap(A2, B2, F.mul(G, x.f.M, Hi)))


def _perm_degrees(G, degrees):
    if degrees is None:
        return None
    out = []
    for i in range(G.shape[0]):
        ds = {degrees[j] for j in np.flatnonzero(G[i])}
        if len(ds) != 1:
            raise ModuleError("basis change is not homogeneous")
        out.append(ds.pop())
    return tuple(out)


def random_conjugate(x: HObject, rng: np.random.Generator) -> HObject:
    """A random isomorphic copy; graded modules get degree-preserving changes."""
    return conjugate(x, _random_aut(x.target, rng), _random_aut(x.source, rng))


def _random_aut(M: Module, rng) -> np.ndarray:
    F = M.alg.field
    d = M.dim
    while True:
        G = F.random(rng, d, d)
        if M.degrees is not None:
            deg = np.array(M.degrees)
            G = G * (deg[:, None] == deg[None, :])
        if F.is_invertible(G):
            return G


def shift_object(x: HObject, ell: int) -> HObject:
    from .modules import shift_map

    return type(x)(shift_map(x.f, ell))


# ---------------------------------------------------------------------------
# the four functors and the minimal approximations


def ker(x: HObject) -> tuple[SObject, HMorphism]:
    inc = kernel(x.f)
    y = SObject(inc)
    return y, HMorphism(y, x, inc, x.f)


def cok(x: HObject) -> tuple[FObject, HMorphism]:
    q = cokernel(x.f)
    y = FObject(q)
    return y, HMorphism(x, y, x.f, q)


def mono(x: HObject) -> tuple[SObject, HMorphism]:
    f1, f2 = image(x.f)
    y = SObject(f2)
    return y, HMorphism(x, y, f1, LMap.identity(x.target))


def epi(x: HObject) -> tuple[FObject, HMorphism]:
    f1, f2 = image(x.f)
    y = FObject(f1)
    return y, HMorphism(y, x, LMap.identity(x.source), f2)


_FUNCTORS = {"Ker": ker, "Cok": cok, "Mono": mono, "Epi": epi}


def functor_apply(x: HObject, which: str):
    try:
        return _FUNCTORS[which](x)
    except KeyError:
        raise ValueError(f"unknown functor {which!r}; expected one of {sorted(_FUNCTORS)}") from None


def _stack_maps(A: Module, B: Module, top: LMap, bottom: LMap) -> LMap:
    """``[top; bottom] : A -> top.target ⊕ bottom.target``."""
    T = direct_sum(top.target, bottom.target)
    return LMap(A, T, np.vstack([top.M, bottom.M]))


def mimo(x: HObject, rng: np.random.Generator | None = None) -> tuple[SObject, HMorphism]:
    """Minimal monomorphism ``[f; e]: A -> B ⊕ I(Ker f)`` and its map to ``x``.

    With ``rng``, the extension ``e`` is perturbed by a random map vanishing
    on ``Ker f``, giving an independent admissible choice.
    """
    F = x.alg.field
    f = x.f
    inc = kernel(f)
    env = injective_envelope(inc.source)
    e = extend_to_injective(inc, env)
    if e is None:
        raise AssertionError("envelope did not extend to an injective")
    if rng is not None and env.target.dim:
        f1, _ = image(f)
        stack = hom_stack(f1.target, env.target)
        if stack.shape[0]:
            w = combine(stack, F.random(rng, 1, stack.shape[0]), F.p)
            e = LMap(e.source, e.target, (e.M + F.mul(w, f1.M)) % F.p)
    y = SObject(_stack_maps(f.source, f.target, f, e))
    proj = LMap(y.target, f.target, np.hstack([np.eye(f.target.dim, dtype=np.int64),
                                               np.zeros((f.target.dim, env.target.dim), dtype=np.int64)]))
    return y, HMorphism(y, x, LMap.identity(f.source), proj)


def mepi(x: HObject, rng: np.random.Generator | None = None) -> tuple[FObject, HMorphism]:
    """Minimal epimorphism ``[f p]: A ⊕ P(Cok f) -> B`` and the map ``x -> Mepi(x)``."""
    F = x.alg.field
    f = x.f
    q = cokernel(f)
    cover = projective_cover(q.target)
    pl = lift_from_projective(cover.source, q, cover)
    if rng is not None and cover.source.dim:
        stack = hom_stack(cover.source, f.source)
        if stack.shape[0]:
            w = combine(stack, F.random(rng, 1, stack.shape[0]), F.p)
            pl = LMap(pl.source, pl.target, (pl.M + F.mul(f.M, w)) % F.p)
    S = direct_sum(f.source, cover.source)
    y = FObject(LMap(S, f.target, np.hstack([f.M, pl.M])))
    inc = LMap(f.source, S, np.vstack([np.eye(f.source.dim, dtype=np.int64),
                                       np.zeros((cover.source.dim, f.source.dim), dtype=np.int64)]))
    return y, HMorphism(x, y, inc, LMap.identity(f.target))


# ---------------------------------------------------------------------------
# Hom spaces in the morphism category


def hom_pairs(x: HObject, y: HObject) -> tuple[np.ndarray, np.ndarray]:
    """Basis of Hom(x, y) as stacks ``(U, V)`` of shapes ``(m, dA', dA)``, ``(m, dB', dB)``.

    When ``y`` is monic, ``u`` is determined by ``v`` and only the condition
    ``v(Im f) ⊆ Im f'`` is solved for.
    """
    F = x.alg.field
    p = F.p
    HB = hom_stack(x.target, y.target)
    dA, dA2 = x.source.dim, y.source.dim
    if y.f.is_monic():
        Q = F.left_kernel(y.f.M) if dA2 else np.eye(y.target.dim, dtype=np.int64)
        if HB.shape[0] == 0:
            return np.zeros((0, dA2, dA), dtype=np.int64), HB
        cols = ((Q @ HB % p) @ x.f.M % p).reshape(HB.shape[0], -1).T
        N = F.kernel(cols) if cols.shape[0] else np.eye(HB.shape[0], dtype=np.int64)
        V = np.stack([combine(HB, c, p) for c in N.T]) if N.shape[1] else HB[:0]
        U = np.stack([F.solve(y.f.M, F.mul(v, x.f.M)) for v in V]) if len(V) else np.zeros((0, dA2, dA), dtype=np.int64)
        return U, V
    HA = hom_stack(x.source, y.source)
    mu, mv = HA.shape[0], HB.shape[0]
    if mu + mv == 0:
        return HA, HB
    cv = (HB @ x.f.M % p).reshape(mv, y.target.dim * dA)
    cu = (-(y.f.M @ HA) % p).reshape(mu, y.target.dim * dA)
    N = F.kernel(np.vstack([cu, cv]).T)
    U = np.stack([combine(HA, c[:mu], p) for c in N.T]) if N.shape[1] else HA[:0]
    V = np.stack([combine(HB, c[mu:], p) for c in N.T]) if N.shape[1] else HB[:0]
    return U, V


def hom_dim(x: HObject, y: HObject) -> int:
    return hom_pairs(x, y)[0].shape[0]


# ---------------------------------------------------------------------------
# projective / injective objects


def proj_inj_kind(x: HObject) -> str | None:
    """For an indecomposable S-object, name its projective-injective type or ``None``.

    The indecomposable relative projectives are ``(0 -> P)`` and ``(P = P)``
    for P indecomposable projective; since Λ is self-injective these are also
    the indecomposable relative injectives.
    """
    blocks = x.target.jordan.blocks
    n = x.alg.n
    if len(blocks) != 1 or blocks[0][0] != n:
        return None
    if x.source.dim == 0:
        return "0->P"
    if x.source.dim == n:
        return "P=P"
    return None


def classify_proj_inj(x: HObject, seed: int = 0) -> dict:
    """Decompose ``x`` and classify every summand against the projective list."""
    from .krull_schmidt import decompose_object

    dec = decompose_object(x, seed=seed)
    kinds = [proj_inj_kind(s) for s in dec.summands]
    flag = all(k is not None for k in kinds)
    return {"projective": flag, "injective": flag, "witness": list(zip(dec.summands, kinds))}


def projective_objects(alg: Algebra, top: int = 0) -> tuple[SObject, SObject]:
    """``(0 -> Λ)`` and ``(Λ = Λ)``; on the graded line, with the given top degree."""
    part = [(alg.n, top)] if alg.graded else [alg.n]
    L = module_from_partition(alg, part)
    z = LMap(alg.zero_module(), L, np.zeros((L.dim, 0), dtype=np.int64))
    return SObject(z), SObject(LMap.identity(L))


# ---------------------------------------------------------------------------
# named objects and notation


uniserial = uniserial_module


def uniserial_pair(alg: Algebra, a: int, b: int, top: int = 0) -> SObject:
    """``rad^{b-a}`` of the uniserial module of length ``b`` as a sub of it: ``(a ⊆ b)``."""
    if not 0 <= a <= b <= alg.n:
        raise ModuleError(f"need 0 <= {a} <= {b} <= {alg.n}")
    B = uniserial(alg, b, top)
    basis = np.zeros((b, a), dtype=np.int64)
    for i in range(a):
        basis[b - a + i, i] = 1
    return SObject.from_sub(B, basis)


# the six objects of the standard orbit: name -> (dim A, dim B) in terms of n
NAMED = {
    "k_in_Lambda": lambda n: (1, n),
    "0_in_m": lambda n: (0, n - 1),
    "m_eq_m": lambda n: (n - 1, n - 1),
    "m_in_Lambda": lambda n: (n - 1, n),
    "0_in_k": lambda n: (0, 1),
    "k_eq_k": lambda n: (1, 1),
    "0_in_Lambda": lambda n: (0, n),
    "Lambda_eq_Lambda": lambda n: (n, n),
}


def named_object(name: str, alg: Algebra) -> SObject:
    try:
        a, b = NAMED[name](alg.n)
    except KeyError:
        raise ValueError(f"unknown object name {name!r}; expected one of {sorted(NAMED)}") from None
    return uniserial_pair(alg, a, b)


def canonical_key(x: HObject) -> tuple:
    """Sort key and label data: ambient in Jordan coordinates, sub as an rref basis."""
    F = x.alg.field
    B = x.target
    sub = F.colspace_rref(F.mul(B.jordan.Uinv, x.f.M)) if x.source.dim else np.zeros((B.dim, 0), dtype=np.int64)
    bits = tuple(int(v) for v in sub.T.reshape(-1))
    part = tuple(tuple(b) if x.alg.graded else b[0] for b in B.jordan.blocks)
    return (B.dim, x.source.dim, part, bits)


def canonical_object(x: SObject) -> SObject:
    """The same object with B in Jordan form and A given by its rref basis."""
    F = x.alg.field
    B = module_from_partition(x.alg, x.target.partition)
    sub = F.colspace_rref(F.mul(x.target.jordan.Uinv, x.f.M))
    return SObject.from_sub(B, sub)


def label(x: HObject) -> str:
    key = canonical_key(x)
    digest = hashlib.sha256(repr(key[3]).encode()).hexdigest()[:8]
    part = ",".join(str(list(b)) if x.alg.graded else str(b) for b in key[2])
    return f"{key[1]}⊆{key[0]}:[{part}]/{digest}"


def _fmt_partition(M: Module) -> str:
    if M.alg.graded:
        return "[" + ", ".join(f"{l}@{t}" for l, t in M.partition) + "]"
    return "[" + ", ".join(str(l) for l in M.partition) + "]"


def notation(x: HObject) -> str:
    rel = "⊆" if isinstance(x, SObject) else "→"
    return f"({_fmt_partition(x.source)} {rel} {_fmt_partition(x.target)})"
