"""Auslander-Reiten quivers of the submodule category by knitting.

Knitting runs breadth first from the two indecomposable projectives.
Each nonprojective vertex contributes its almost split sequence: the
middle term is decomposed, giving the arrows into the vertex and out of
its translate.  Projective vertices contribute the summands of their
radical (the sink map).  Every arrow is seen from two meshes, and the
two multiplicities are required to agree.
"""

from __future__ import annotations

import itertools
import json
import time
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .ar import ar_sequence
from .krull_schmidt import decompose_object, invariants, is_isomorphic
from .linalg import PrimeField
from .modules import Algebra, LMap, module_from_partition
from .morphisms import (
    SObject,
    canonical_key,
    canonical_object,
    label,
    proj_inj_kind,
    projective_objects,
    uniserial_pair,
)

DEFAULT_CUTOFF = 10000


class MeshError(AssertionError):
    """Two meshes disagree about an arrow multiplicity."""


@dataclass
class ARQuiver:
    alg: Algebra
    vertices: list[SObject] = field(default_factory=list)
    arrows: dict[tuple[int, int], int] = field(default_factory=dict)
    translation: dict[int, int] = field(default_factory=dict)  # C -> τC

    def projective(self, i: int) -> bool:
        return proj_inj_kind(self.vertices[i]) is not None

    injective = projective

    def labels(self) -> list[str]:
        return [label(v) for v in self.vertices]

    def order(self) -> list[int]:
        """Vertex indices in catalog order."""
        return sorted(range(len(self.vertices)), key=lambda i: canonical_key(self.vertices[i]))

    def arrows_into(self, i: int) -> dict[int, int]:
        return {s: m for (s, t), m in self.arrows.items() if t == i}

    def arrows_out_of(self, i: int) -> dict[int, int]:
        return {t: m for (s, t), m in self.arrows.items() if s == i}

    def mesh_ok(self) -> bool:
        for c, tc in self.translation.items():
            if self.arrows_into(c) != self.arrows_out_of(tc):
                return False
        return True


@dataclass
class KnitResult:
    quiver: ARQuiver
    closed: bool
    sequences: int
    stopped: str = "closed"  # or "cutoff" / "time"

    @property
    def budget_exceeded(self) -> bool:
        return not self.closed


class _Catalog:
    def __init__(self, alg: Algebra, seed: int):
        self.q = ARQuiver(alg)
        self.by_key: dict[tuple, list[int]] = {}
        self.seed = seed

    def find(self, x: SObject) -> int | None:
        for i in self.by_key.get(invariants(x), []):
            if is_isomorphic(x, self.q.vertices[i], seed=self.seed)[0]:
                return i
        return None

    def add(self, x: SObject) -> tuple[int, bool]:
        i = self.find(x)
        if i is not None:
            return i, False
        x = canonical_object(x)
        self.q.vertices.append(x)
        i = len(self.q.vertices) - 1
        self.by_key.setdefault(invariants(x), []).append(i)
        return i, True

    def set_arrow(self, s: int, t: int, m: int) -> None:
        old = self.q.arrows.get((s, t))
        if old is not None and old != m:
            raise MeshError(f"arrow {s}->{t}: multiplicity {old} vs {m}")
        self.q.arrows[(s, t)] = m

    def set_tau(self, c: int, a: int) -> None:
        old = self.q.translation.get(c)
        if old is not None and old != a:
            raise MeshError(f"translate of vertex {c} is ambiguous")
        self.q.translation[c] = a


def _radical(x: SObject) -> SObject:
    """The source of the sink map of an indecomposable projective object."""
    n = x.alg.n
    top = x.target.jordan.blocks[0][1]
    if x.source.dim == 0:
        return uniserial_pair(x.alg, 0, n - 1, top - 1)
    return uniserial_pair(x.alg, n - 1, n, top)


def knit(alg: Algebra, cutoff: int = DEFAULT_CUTOFF, seed: int = 0, time_limit: float | None = None) -> KnitResult:
    """Knit the component of the projectives.

    Stops early once more than ``cutoff`` vertices are known, or when
    ``time_limit`` seconds have passed; either way the partial quiver is
    returned with ``closed`` false.
    """
    start = time.monotonic()
    if alg.graded:
        raise ValueError("knitting is implemented for the nakayama backend only")
    cat = _Catalog(alg, seed)
    queue: deque[int] = deque()
    for x in projective_objects(alg):
        i, _ = cat.add(x)
        queue.append(i)
    done: set[int] = set()
    nseq = 0

    def register(x: SObject) -> int:
        i, new = cat.add(x)
        if new:
            queue.append(i)
        return i

    while queue:
        if len(cat.q.vertices) > cutoff:
            return KnitResult(cat.q, False, nseq, "cutoff")
        if time_limit is not None and time.monotonic() - start > time_limit:
            return KnitResult(cat.q, False, nseq, "time")
        i = queue.popleft()
        if i in done:
            continue
        done.add(i)
        x = cat.q.vertices[i]
        if cat.q.projective(i):
            rad = _radical(x)
            if rad.is_zero():
                continue
            for y, m in decompose_object(rad, seed=seed).groups:
                cat.set_arrow(register(y), i, m)
            continue
        seq = ar_sequence(x)
        nseq += 1
        a = register(seq.left)
        cat.set_tau(i, a)
        for y, m in decompose_object(seq.middle, seed=seed).groups:
            j = register(y)
            cat.set_arrow(j, i, m)
            cat.set_arrow(a, j, m)
    if not cat.q.mesh_ok():
        raise MeshError("mesh relation violated")
    return KnitResult(cat.q, True, nseq)


# ---------------------------------------------------------------------------
# brute-force oracle over a small field


@dataclass(frozen=True)
class BruteEntry:
    partition_B: tuple[int, ...]
    partition_A: tuple[int, ...]
    partition_quotient: tuple[int, ...]
    end_dim: int
    sub: tuple[tuple[int, ...], ...]


def _partitions(d: int, largest: int):
    if d == 0:
        yield ()
        return
    for k in range(min(d, largest), 0, -1):
        for rest in _partitions(d - k, k):
            yield (k,) + rest


def _rref_subspaces(F: PrimeField, d: int):
    """All subspaces of GF(p)^d, as matrices whose rows are the rref basis."""
    for k in range(d + 1):
        for pivots in itertools.combinations(range(d), k):
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots]
            for values in itertools.product(range(F.p), repeat=len(free)):
                R = np.zeros((k, d), dtype=np.int64)
                for r, pc in enumerate(pivots):
                    R[r, pc] = 1
                for (r, c), val in zip(free, values):
                    R[r, c] = val
                yield R


def _brute_end(F: PrimeField, T: np.ndarray, S: np.ndarray) -> np.ndarray:
    """Endomorphisms ``v`` of (T-module, sub S): vT = Tv and v(S) ⊆ S, by a Kronecker solve."""
    d = T.shape[0]
    eye = np.eye(d, dtype=np.int64)
    rows = [np.kron(eye, T.T) - np.kron(T, eye)]  # vec_row(vT - Tv)
    if S.shape[1]:
        Q = F.left_kernel(S)
        if Q.shape[0]:
            rows.append(np.kron(Q, S.T))  # Q v S = 0
    K = F.kernel(np.vstack(rows) % F.p)
    return np.stack([K[:, j].reshape(d, d) for j in range(K.shape[1])]) if K.shape[1] else np.zeros((0, d, d), dtype=np.int64)


def _brute_hom(F: PrimeField, T1, S1, T2, S2) -> np.ndarray:
    d1, d2 = T1.shape[0], T2.shape[0]
    rows = [np.kron(np.eye(d2, dtype=np.int64), T1.T) - np.kron(T2, np.eye(d1, dtype=np.int64))]
    if S1.shape[1]:
        Q = F.left_kernel(S2) if S2.shape[1] else np.eye(d2, dtype=np.int64)
        if Q.shape[0]:
            rows.append(np.kron(Q, S1.T))
    K = F.kernel(np.vstack(rows) % F.p)
    return np.stack([K[:, j].reshape(d2, d1) for j in range(K.shape[1])]) if K.shape[1] else np.zeros((0, d2, d1), dtype=np.int64)


def _span_products(F: PrimeField, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    if X.shape[0] == 0 or Y.shape[0] == 0:
        return np.zeros((0,) + X.shape[1:], dtype=np.int64)
    prods = np.stack([F.mul(a, b) for a in X for b in Y])
    flat = prods.reshape(len(prods), -1).T
    basis = F.column_basis(flat)
    return basis.T.reshape((-1,) + X.shape[1:])


def _is_local(F: PrimeField, E: np.ndarray) -> bool:
    """End ring with basis ``E`` is local with residue field GF(p)."""
    d = E.shape[1]
    eye = np.eye(d, dtype=np.int64)
    rad = []
    for e in E:
        for lam in range(F.p):
            m = (e - lam * eye) % F.p
            if F.is_nilpotent(m):
                rad.append(m)
                break
        else:
            return False
    N = np.stack(rad)
    flat = N.reshape(len(N), -1).T
    if F.rank(flat) != E.shape[0] - 1:
        return False
    N = F.column_basis(flat).T.reshape((-1, d, d))
    power = N
    for _ in range(d + 1):
        if power.shape[0] == 0 or not np.any(power):
            return True
        power = _span_products(F, power, N)
    return False


def _brute_iso(F: PrimeField, x, y) -> bool:
    """Indecomposables are isomorphic iff some basis composite is not nilpotent."""
    T1, S1 = x
    T2, S2 = y
    H12 = _brute_hom(F, T1, S1, T2, S2)
    H21 = _brute_hom(F, T2, S2, T1, S1)
    return any(not F.is_nilpotent(F.mul(g, f)) for f in H12 for g in H21)


def _jordan_type(F: PrimeField, T: np.ndarray) -> tuple[int, ...]:
    d = T.shape[0]
    ranks = [d]
    P = np.eye(d, dtype=np.int64)
    while ranks[-1]:
        P = F.mul(P, T)
        ranks.append(F.rank(P))
    counts = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]  # parts >= j
    parts = []
    for j in range(len(counts), 0, -1):
        nxt = counts[j] if j < len(counts) else 0
        parts += [j] * (counts[j - 1] - nxt)
    return tuple(parts)


def _entry_key(e: BruteEntry) -> tuple:
    return (e.partition_B, e.partition_A, e.partition_quotient, e.end_dim)


def brute_force_catalog(n: int, dim_bound: int, p: int = 2, max_subspaces: int = 200000) -> list[BruteEntry]:
    """Indecomposable submodule pairs with dim B <= dim_bound, by exhaustive search over GF(p)."""
    F = PrimeField(p)
    alg = Algebra(n, p)
    found: list[tuple[BruteEntry, tuple]] = []
    seen = 0
    for d in range(1, dim_bound + 1):
        for part in _partitions(d, n):
            T = module_from_partition(alg, list(part)).T
            for R in _rref_subspaces(F, d):
                seen += 1
                if seen > max_subspaces:
                    raise RuntimeError(f"brute-force budget of {max_subspaces} subspaces exceeded")
                S = R.T.copy()
                if S.shape[1] and not F.in_span(S, F.mul(T, S)):
                    continue
                E = _brute_end(F, T, S)
                if not _is_local(F, E):
                    continue
                TA = F.solve(S, F.mul(T, S)) if S.shape[1] else np.zeros((0, 0), dtype=np.int64)
                Q = F.left_kernel(S) if S.shape[1] else np.eye(d, dtype=np.int64)
                TQ = F.solve(Q.T, F.mul(Q, T).T).T if Q.shape[0] else np.zeros((0, 0), dtype=np.int64)
                entry = BruteEntry(part, _jordan_type(F, TA), _jordan_type(F, TQ), E.shape[0],
                                   tuple(tuple(int(v) for v in r) for r in R))
                dup = any(
                    _entry_key(other) == _entry_key(entry) and _brute_iso(F, data, (T, S))
                    for other, data in found
                )
                if not dup:
                    found.append((entry, (T, S)))
    return [e for e, _ in found]


def quiver_invariants(q: ARQuiver) -> list[tuple]:
    """(partition B, partition A, partition B/A, dim End) for every vertex."""
    from .krull_schmidt import endo_basis
    from .modules import cokernel

    out = []
    for x in q.vertices:
        out.append((
            tuple(x.target.partition),
            tuple(x.source.partition),
            tuple(cokernel(x.f).target.partition),
            endo_basis(x).dim,
        ))
    return out


def brute_force_containment(q: ARQuiver, entries: list[BruteEntry]) -> list[BruteEntry]:
    """Brute-force entries with no vertex of matching invariants (empty when contained)."""
    keys = set(quiver_invariants(q))
    return [e for e in entries if _entry_key(e) not in keys]


# ---------------------------------------------------------------------------
# export


def _vertex_doc(x: SObject) -> dict:
    F = x.alg.field
    sub = F.colspace_rref(x.f.M) if x.source.dim else np.zeros((x.target.dim, 0), dtype=np.int64)
    return {
        "label": label(x),
        "dimA": x.source.dim,
        "dimB": x.target.dim,
        "partitionA": [int(v) for v in x.source.partition],
        "partitionB": [int(v) for v in x.target.partition],
        "sub": [[int(v) for v in col] for col in sub.T],
        "projective": proj_inj_kind(x) is not None,
        "injective": proj_inj_kind(x) is not None,
    }


def to_json_dict(q: ARQuiver) -> dict:
    order = q.order()
    pos = {i: k for k, i in enumerate(order)}
    labels = q.labels()
    arrows = sorted(
        ([labels[s], labels[t], m] for (s, t), m in q.arrows.items()),
        key=lambda a: (pos[labels.index(a[0])], pos[labels.index(a[1])]),
    )
    return {
        "algebra": {"backend": q.alg.backend, "n": q.alg.n, "p": q.alg.p},
        "vertices": [_vertex_doc(q.vertices[i]) for i in order],
        "arrows": arrows,
        "translation": {labels[c]: labels[a] for c, a in sorted(q.translation.items(), key=lambda kv: pos[kv[0]])},
    }


def from_json_dict(doc: dict) -> ARQuiver:
    alg = Algebra(doc["algebra"]["n"], doc["algebra"]["p"], doc["algebra"]["backend"])
    q = ARQuiver(alg)
    index = {}
    for v in doc["vertices"]:
        B = module_from_partition(alg, v["partitionB"])
        sub = np.array(v["sub"], dtype=np.int64).T.reshape(B.dim, -1) if v["sub"] else np.zeros((B.dim, 0), dtype=np.int64)
        x = SObject.from_sub(B, sub) if sub.shape[1] else SObject(LMap(alg.zero_module(), B, sub))
        index[v["label"]] = len(q.vertices)
        q.vertices.append(x)
    for s, t, m in doc["arrows"]:
        q.arrows[(index[s], index[t])] = m
    for c, a in doc["translation"].items():
        q.translation[index[c]] = index[a]
    return q


def export_quiver(q: ARQuiver, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(to_json_dict(q), sort_keys=True, indent=1, ensure_ascii=False) + "\n"
    if fmt == "dot":
        labels = q.labels()
        lines = ["digraph ARQuiver {", "  rankdir=LR;"]
        for i in q.order():
            shape = "box" if q.projective(i) else "ellipse"
            lines.append(f'  "{labels[i]}" [shape={shape}];')
        for (s, t), m in sorted(q.arrows.items(), key=lambda kv: (labels[kv[0][0]], labels[kv[0][1]])):
            for _ in range(m):
                lines.append(f'  "{labels[s]}" -> "{labels[t]}";')
        for c, a in sorted(q.translation.items(), key=lambda kv: labels[kv[0]]):
            lines.append(f'  "{labels[c]}" -> "{labels[a]}" [style=dashed, constraint=false];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_quiver(text: str) -> ARQuiver:
    return from_json_dict(json.loads(text))
