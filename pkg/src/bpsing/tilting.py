"""Tilting families in the stable category and their verification.

Four families share the summand count prod(p_i - 1): the cuboid
(all U^ell), the Koszul family (twists of U^s with balancing shifts),
the mixed extended families indexed by coordinate subsets, and the
replicated families indexed by a coordinate and built from Serre
twists.  Families are ordered descending (copy index, then ell, then
twist), which makes the endomorphism matrix equal to the predicted
Cartan matrix on the nose and realizes the exceptional-sequence order.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .functor import Ladder, insert, reduce
from .grading import WeightSystem, normalize
from .qalg import AlgebraPresentation, nakayama, replicated, tensor
from .stable import StableObject, U, hom_dim


class UnknownHomError(RuntimeError):
    def __init__(self, a: StableObject, b: StableObject):
        super().__init__(f"hom_dim could not decide Hom({a}, {b})")
        self.pair = (a, b)


@dataclass(frozen=True)
class TiltingFamily:
    weights: WeightSystem
    kind: str
    labels: tuple[str, ...]
    objects: tuple[StableObject, ...]  # canonical forms, family order

    @property
    def size(self) -> int:
        return len(self.objects)

    def to_json(self) -> dict:
        return {
            "weights": self.weights.to_json(),
            "kind": self.kind,
            "summands": list(self.labels),
        }


def _desc(lo: int, hi: int):
    return range(hi, lo - 1, -1)


def family(
    weights: WeightSystem,
    kind: str,
    subset: tuple[int, ...] | None = None,
    t: int | None = None,
) -> TiltingFamily:
    """Construct one of the four tilting families.

    kind is "cuboid", "koszul", "extended" (with a 0-based coordinate
    subset) or "replicated" (with a 0-based coordinate t).
    """
    ws = weights
    n = ws.n
    p = ws.p
    if kind == "cuboid":
        subset = tuple(range(n))
        kind = "extended"
    elif kind == "koszul":
        subset = ()
        kind = "extended"
    if kind == "extended":
        if subset is None:
            raise ValueError("extended families need a coordinate subset")
        subset = tuple(sorted(set(subset)))
        if any(not 0 <= i < n for i in subset):
            raise ValueError(f"subset {subset} out of range")
        inside = set(subset)
        ell_ranges = [_desc(1, p[i] - 1) if i in inside else (1,) for i in range(n)]
        x_ranges = [(0,) if i in inside else _desc(0, p[i] - 2) for i in range(n)]
        labels, objs = [], []
        for ell in itertools.product(*ell_ranges):
            for x in itertools.product(*x_ranges):
                tw = normalize(ws, x)
                obj = U(ws, ell, tw, -sum(x))
                labels.append(str(obj))
                objs.append(obj.canonical())
        name = {tuple(range(n)): "cuboid", (): "koszul"}.get(subset, f"extended:{','.join(str(i) for i in subset)}")
        return TiltingFamily(ws, name, tuple(labels), tuple(objs))
    if kind == "replicated":
        if t is None or not 0 <= t < n:
            raise ValueError("replicated families need a coordinate t")
        ell_ranges = [(p[i] - 1,) if i == t else _desc(1, p[i] - 1) for i in range(n)]
        labels, objs = [], []
        s = ws.s()
        for copy in range(p[t] - 2, -1, -1):
            for ell in itertools.product(*ell_ranges):
                obj = U(ws, ell, -copy * s, copy * n)
                labels.append(str(obj))
                objs.append(obj.canonical())
        return TiltingFamily(ws, f"replicated:{t}", tuple(labels), tuple(objs))
    raise ValueError(f"unknown family kind {kind!r}")


def hom_matrix(fam: TiltingFamily) -> np.ndarray:
    """H[a][b] = dim Hom(fam[a], fam[b]); raises on an unknown entry."""
    size = fam.size
    out = np.zeros((size, size), dtype=np.int64)
    for a, oa in enumerate(fam.objects):
        for b, ob in enumerate(fam.objects):
            h = hom_dim(oa, ob)
            if h is None:
                raise UnknownHomError(oa, ob)
            out[a, b] = h
    return out


def predicted_cartan(fam: TiltingFamily) -> AlgebraPresentation:
    """The algebra whose Cartan the endomorphism matrix must equal."""
    ws = fam.weights
    if fam.kind == "cuboid":
        return _tensor_chain([nakayama(w - 1, w - 1) for w in ws.p])
    if fam.kind == "koszul":
        return _tensor_chain([nakayama(w - 1, 2) for w in ws.p])
    if fam.kind.startswith("extended:"):
        subset = {int(s) for s in fam.kind.split(":")[1].split(",")}
        factors = [nakayama(w - 1, w - 1) for i, w in enumerate(ws.p) if i in subset]
        factors += [nakayama(w - 1, 2) for i, w in enumerate(ws.p) if i not in subset]
        return _tensor_chain(factors)
    if fam.kind.startswith("replicated:"):
        t = int(fam.kind.split(":")[1])
        factors = [nakayama(w - 1, w - 1) for i, w in enumerate(ws.p) if i != t]
        base = _tensor_chain(factors) if factors else nakayama(1, 1)
        return replicated(base, ws.p[t] - 2)
    raise ValueError(f"no Cartan prediction for kind {fam.kind!r}")


def _tensor_chain(factors):
    out = factors[0]
    for f in factors[1:]:
        out = tensor(out, f)
    return out


def hom_matrix_csv(fam: TiltingFamily, mat: np.ndarray) -> str:
    def cell(text: str) -> str:
        return '"' + text.replace('"', '""') + '"' if "," in text else text

    lines = ["," + ",".join(cell(lab) for lab in fam.labels)]
    for lab, row in zip(fam.labels, mat):
        lines.append(cell(lab) + "," + ",".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


@dataclass
class TiltingReport:
    family: TiltingFamily
    window: tuple[int, int]
    rigidity_failures: list[str]
    endo_failures: list[str]
    unknown_entries: list[str]
    order: list[str] | None

    @property
    def passed(self) -> bool:
        return not self.rigidity_failures and not self.endo_failures and not self.unknown_entries and self.order is not None

    def to_json(self) -> str:
        return json.dumps(
            {
                "family": self.family.to_json(),
                "window": list(self.window),
                "rigidity_failures": self.rigidity_failures,
                "endo_failures": self.endo_failures,
                "unknown_entries": self.unknown_entries,
                "exceptional_order": self.order,
                "passed": self.passed,
            },
            sort_keys=True,
            indent=2,
        )


def verify_tilting(fam: TiltingFamily, window: tuple[int, int] | None = None) -> TiltingReport:
    """Rigidity on a shift window, simple endomorphism rings, and an
    exceptional ordering by topological sort of the nonzero Homs."""
    ws = fam.weights
    if window is None:
        w = 2 * ws.n + 4
        window = (-w, w)
    rig, endo, unknown = [], [], []
    size = fam.size
    hom0 = np.zeros((size, size), dtype=np.int64)
    for a, oa in enumerate(fam.objects):
        for b, ob in enumerate(fam.objects):
            for m in range(window[0], window[1] + 1):
                h = hom_dim(oa, ob.suspend(m))
                if h is None:
                    unknown.append(f"Hom({fam.labels[a]}, {fam.labels[b]}[{m}])")
                    continue
                if m == 0:
                    hom0[a, b] = h
                    if a == b and h != 1:
                        endo.append(f"End({fam.labels[a]}) has dimension {h}")
                elif h != 0:
                    rig.append(f"Hom({fam.labels[a]}, {fam.labels[b]}[{m}]) = {h}")
    order = _topological_order(fam, hom0)
    return TiltingReport(fam, window, rig, endo, unknown, order)


def _topological_order(fam: TiltingFamily, hom0: np.ndarray) -> list[str] | None:
    """Order with all nonzero Homs pointing forward, if one exists."""
    size = fam.size
    succ = {a: [b for b in range(size) if b != a and hom0[a, b] > 0] for a in range(size)}
    indeg = {a: 0 for a in range(size)}
    for a in range(size):
        for b in succ[a]:
            indeg[b] += 1
    queue = sorted(a for a in range(size) if indeg[a] == 0)
    out = []
    while queue:
        a = queue.pop(0)
        out.append(a)
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
        queue.sort()
    if len(out) != size:
        return None
    return [fam.labels[a] for a in out]


@dataclass
class GlueReport:
    obstruction_b: list[str]
    obstruction_b_prime: list[str]
    unknown: list[str]

    @property
    def tilting(self) -> bool:
        return not self.obstruction_b and not self.obstruction_b_prime and not self.unknown

    def to_json(self) -> str:
        return json.dumps(
            {
                "obstruction_i_star_j_star": self.obstruction_b,
                "obstruction_j_sharp_i_star": self.obstruction_b_prime,
                "unknown": self.unknown,
                "tilting": self.tilting,
            },
            sort_keys=True,
            indent=2,
        )


def glue(
    ladder: Ladder,
    fam1: TiltingFamily,
    fam2: TiltingFamily,
    k1: int,
    k2: int,
    window: tuple[int, int] | None = None,
) -> tuple[TiltingFamily, GlueReport]:
    """Glue tilting families along insertions psi_{1,k1} and psi_{2,k2}.

    The candidate is the concatenation of the two insertion images;
    the obstruction Homs are checked in both adjoint directions, by
    reducing one image into the other reduced category.
    """
    ws = ladder.weights
    if window is None:
        w = 2 * ws.n + 4
        window = (-w, w)
    img1 = [insert(ladder, 1, k1, o) for o in fam1.objects]
    img2 = [insert(ladder, 2, k2, o) for o in fam2.objects]
    labels = tuple(f"psi1[{k1}]({lab})" for lab in fam1.labels) + tuple(f"psi2[{k2}]({lab})" for lab in fam2.labels)
    glued = TiltingFamily(ws, "glued", labels, tuple(o.canonical() for o in img1 + img2))

    obstruction_b, obstruction_bp, unknown = [], [], []
    shifts = [m for m in range(window[0], window[1] + 1) if m != 0]
    # direction (b): Hom(i^* j_* T2, T1[m]) with i^* = phi_{1,k1}
    for objb, labb in zip(img2, fam2.labels):
        red = reduce(ladder, 1, k1, objb)
        for obja, laba in zip(fam1.objects, fam1.labels):
            for m in shifts:
                h = hom_dim(red, obja.suspend(m))
                if h is None:
                    unknown.append(f"Hom(phi1({labb}), {laba}[{m}])")
                elif h != 0:
                    obstruction_b.append(f"Hom(phi1({labb}), {laba}[{m}]) = {h}")
    # direction (b'): Hom(T2, j^sharp i_* T1[m]) with j^sharp = phi_{2,k2+1}
    for obja, laba in zip(img1, fam1.labels):
        red = reduce(ladder, 2, k2 + 1, obja)
        for objb, labb in zip(fam2.objects, fam2.labels):
            for m in shifts:
                h = hom_dim(objb, red.suspend(m))
                if h is None:
                    unknown.append(f"Hom({labb}, phi2({laba})[{m}])")
                elif h != 0:
                    obstruction_bp.append(f"Hom({labb}, phi2({laba})[{m}]) = {h}")
    return glued, GlueReport(obstruction_b, obstruction_bp, unknown)


def same_family(a: TiltingFamily, b: TiltingFamily) -> bool:
    """Equality as multisets of canonical objects."""
    if a.weights != b.weights:
        return False
    key = lambda o: (o.ell is None, o.ell or (), o.twist.coeffs, o.twist.level, o.shift)
    return sorted(map(key, a.objects)) == sorted(map(key, b.objects))
