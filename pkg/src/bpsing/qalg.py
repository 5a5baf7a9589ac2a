"""Quivers with relations and exact derived invariants.

Cartan matrices follow one global convention, fixed once against the
cuboid endomorphism matrix and frozen: C[a][b] is the Hom dimension
from the projective at vertex position a to the one at position b.
For the equioriented A_n quiver with nilpotency m this reads
C[i][j] = 1 iff 0 <= j - i < m.  Tensor products take Kronecker
products of Cartans; replicated algebras are block lower bidiagonal
with transposed duality blocks on the subdiagonal.

Coxeter polynomials are characteristic polynomials of -C^(-T) C in
exact integer arithmetic.  They are invariant under simultaneous
vertex permutation and under the transpose convention, which is
asserted rather than assumed.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .grading import WeightSystem, normalize
from .linalg import charpoly_int, inverse_unimodular


@dataclass(frozen=True)
class IntPolynomial:
    """Integer coefficients, leading coefficient first."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[0] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    def __str__(self) -> str:
        terms = []
        deg = self.degree
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = deg - i
            mono = "1" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if e == 0:
                terms.append(f"{c}")
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


@dataclass
class AlgebraPresentation:
    name: str
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (label, source, target)
    relations: tuple[str, ...]
    cartan: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.cartan, dtype=np.int64)
        if c.shape != (len(self.vertices), len(self.vertices)):
            raise ValueError("Cartan matrix size does not match the vertex count")
        if (c < 0).any() or (np.diag(c) < 1).any():
            raise ValueError("Cartan entries must be nonnegative with unit diagonal")
        self.cartan = c

    @property
    def size(self) -> int:
        return len(self.vertices)

    def cartan_csv(self) -> str:
        def cell(text: str) -> str:
            return '"' + text.replace('"', '""') + '"' if "," in text else text

        lines = ["," + ",".join(cell(v) for v in self.vertices)]
        for v, row in zip(self.vertices, self.cartan):
            lines.append(cell(v) + "," + ",".join(str(int(x)) for x in row))
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        out = [f'digraph "{self.name}" {{']
        index = {v: f"v{i}" for i, v in enumerate(self.vertices)}
        for v in self.vertices:
            out.append(f'  {index[v]} [label="{v}"];')
        for label, s, t in self.arrows:
            out.append(f'  {index[s]} -> {index[t]} [label="{label}"];')
        for rel in self.relations:
            if "=>" not in rel:
                continue
            left, _, right = rel.rpartition("=>")
            s = left.split()[-1] if left.split() else ""
            t = right.strip()
            if s in index and t in index:
                out.append(f"  {index[s]} -> {index[t]} [style=dashed, arrowhead=none];")
        out.append("}")
        return "\n".join(out) + "\n"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vertices": list(self.vertices),
            "arrows": [list(a) for a in self.arrows],
            "relations": list(self.relations),
            "cartan": self.cartan.tolist(),
        }


def nakayama(n: int, m: int) -> AlgebraPresentation:
    """The equioriented A_n path algebra modulo paths of length m."""
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")
    vertices = tuple(str(i + 1) for i in range(n))
    arrows = tuple((f"a{i + 1}", str(i + 1), str(i + 2)) for i in range(n - 1))
    relations = tuple(f"{i + 1} => {i + 1 + m}" for i in range(n - m))
    cartan = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i, min(i + m, n)):
            cartan[i, j] = 1
    return AlgebraPresentation(f"A{n}({m})", vertices, arrows, relations, cartan)


def tensor(a: AlgebraPresentation, b: AlgebraPresentation) -> AlgebraPresentation:
    """Tensor product, with commutativity squares and Kronecker Cartan."""
    vertices = tuple(f"{v}|{w}" for v in a.vertices for w in b.vertices)
    arrows = []
    for lab, s, t in a.arrows:
        for w in b.vertices:
            arrows.append((f"{lab}|{w}", f"{s}|{w}", f"{t}|{w}"))
    for v in a.vertices:
        for lab, s, t in b.arrows:
            arrows.append((f"{v}|{lab}", f"{v}|{s}", f"{v}|{t}"))
    relations = [f"square ({la},{lb})" for la, _, _ in a.arrows for lb, _, _ in b.arrows]
    relations += [f"left {r}" for r in a.relations] + [f"right {r}" for r in b.relations]
    cartan = np.kron(a.cartan, b.cartan)
    return AlgebraPresentation(f"{a.name}(x){b.name}", vertices, tuple(arrows), tuple(relations), cartan)


def _box_descending(ws: WeightSystem):
    """The box [0, delta] in descending lexicographic order."""
    ranges = [range(w - 2, -1, -1) for w in ws.p]
    return [tuple(t) for t in itertools.product(*ranges)]


def lambda_q(ws: WeightSystem, qvec) -> AlgebraPresentation:
    """The matrix algebra on the box [0, delta] with truncation exponents q.

    Vertices are the box elements; the Cartan entry at (x, y) is one
    exactly when x - y is a level-zero element with coefficients below
    q componentwise, matching the graded pieces of R/(X_i^q_i).
    """
    qvec = tuple(int(x) for x in qvec)
    if any(not 1 <= qq <= w - 1 for qq, w in zip(qvec, ws.p)):
        raise ValueError(f"truncation exponents {qvec} out of range for {ws}")
    box = _box_descending(ws)
    label = {x: "(" + ",".join(str(v) for v in x) + ")" for x in box}
    vertices = tuple(label[x] for x in box)
    in_box = set(box)
    arrows = []
    relations = []
    for x in box:
        for i in range(ws.n):
            y = x[:i] + (x[i] + 1,) + x[i + 1 :]
            if y in in_box:
                arrows.append((f"x{i + 1}", label[x], label[y]))
    for x in box:
        for i in range(ws.n):
            for j in range(i + 1, ws.n):
                y = list(x)
                y[i] += 1
                y[j] += 1
                if tuple(y) in in_box:
                    relations.append(f"x{i + 1}x{j + 1}=x{j + 1}x{i + 1} {label[x]} => {label[tuple(y)]}")
        for i in range(ws.n):
            y = x[:i] + (x[i] + qvec[i],) + x[i + 1 :]
            if y in in_box:
                relations.append(f"x{i + 1}^{qvec[i]} {label[x]} => {label[y]}")
    size = len(box)
    cartan = np.zeros((size, size), dtype=np.int64)
    for a, x in enumerate(box):
        for b, y in enumerate(box):
            diff = normalize(ws, [u - v for u, v in zip(x, y)], 0)
            if diff.level == 0 and all(d < qq for d, qq in zip(diff.coeffs, qvec)):
                cartan[a, b] = 1
    return AlgebraPresentation(f"Lambda{ws}{qvec}", vertices, tuple(arrows), tuple(relations), cartan)


def replicated(a: AlgebraPresentation, m: int) -> AlgebraPresentation:
    """The m-replicated algebra: m + 1 diagonal copies glued by duality.

    The Cartan is block lower bidiagonal: diagonal blocks are the
    Cartan of the base, subdiagonal blocks its transpose, reflecting
    dim e_i (D Lambda) e_j = dim e_j Lambda e_i.
    """
    if m < 0:
        raise ValueError("need m >= 0")
    if m == 0:
        return a
    k = a.size
    vertices = tuple(f"{v}@{r}" for r in range(m + 1) for v in a.vertices)
    arrows = []
    for r in range(m + 1):
        for lab, s, t in a.arrows:
            arrows.append((f"{lab}@{r}", f"{s}@{r}", f"{t}@{r}"))
    relations = tuple(f"{rel}@{r}" for r in range(m + 1) for rel in a.relations)
    cartan = np.zeros(((m + 1) * k, (m + 1) * k), dtype=np.int64)
    for r in range(m + 1):
        cartan[r * k : (r + 1) * k, r * k : (r + 1) * k] = a.cartan
        if r > 0:
            cartan[r * k : (r + 1) * k, (r - 1) * k : r * k] = a.cartan.T
    return AlgebraPresentation(f"{a.name}^({m})", vertices, tuple(arrows), relations, cartan)


def gamma_quiver(ws: WeightSystem, t: int) -> AlgebraPresentation:
    """Replicated-algebra quiver attached to coordinate t (0-based).

    Vertices are slab elements (the cuboid face with coordinate t
    maximal) times copy indices 0..p_t - 2, with the coordinate arrows
    inside each slab and one connecting arrow per consecutive pair of
    copies from the top corner to the bottom corner.  The Cartan is
    the replicated Cartan of the tensor algebra on the remaining
    coordinates, with vertex positions ordered copy-descending and
    slab-descending to match the tilting-family convention.
    """
    n = ws.n
    if not 0 <= t < n:
        raise ValueError("coordinate index out of range")
    pt = ws.p[t]
    others = [i for i in range(n) if i != t]
    slab = []
    ranges = [range(ws.p[i] - 1, 0, -1) for i in others]
    for combo in itertools.product(*ranges):
        ell = [0] * n
        ell[t] = pt - 1
        for i, v in zip(others, combo):
            ell[i] = v
        slab.append(tuple(ell))
    label = {}
    vertices = []
    for copy in range(pt - 2, -1, -1):
        for ell in slab:
            lab = "(" + ",".join(str(v) for v in ell) + f")@{copy}"
            label[(ell, copy)] = lab
            vertices.append(lab)
    slab_set = set(slab)
    arrows = []
    for copy in range(pt - 1):
        for ell in slab:
            for i in others:
                tgt = ell[:i] + (ell[i] + 1,) + ell[i + 1 :]
                if tgt in slab_set:
                    arrows.append((f"x{i + 1}", label[(ell, copy)], label[(tgt, copy)]))
    top = tuple(w - 1 for w in ws.p)
    bottom = tuple(1 if i != t else pt - 1 for i in range(n))
    connecting = "*".join(f"x{i + 1}" for i in others)
    for copy in range(pt - 2):
        arrows.append((connecting, label[(top, copy)], label[(bottom, copy + 1)]))
    relations = [f"x{i + 1}x{j + 1}=x{j + 1}x{i + 1}" for i in others for j in others if i < j]
    relations += [f"x{i + 1}^{ws.p[i]}=0" for i in others]
    base = None
    for i in others:
        piece = nakayama(ws.p[i] - 1, ws.p[i] - 1)
        base = piece if base is None else tensor(base, piece)
    if base is None:  # n = 1, the slab is a point
        base = nakayama(1, 1)
    cartan = replicated(base, pt - 2).cartan
    return AlgebraPresentation(f"Gamma^{t + 1}{ws}", tuple(vertices), tuple(arrows), tuple(relations), cartan)


def dynkin_path_algebra(letter: str, rank: int) -> AlgebraPresentation:
    """Path algebra of a Dynkin tree in a fixed orientation.

    A is the linear orientation; D uses the subspace orientation with
    every outer vertex mapping into the center; E attaches the branch
    vertex to the third node of the linear chain.
    """
    letter = letter.upper()
    if letter == "A":
        return nakayama(rank, rank)
    if letter == "D":
        if rank != 4:
            raise ValueError("only D_4 is provided")
        vertices = ("1", "2", "3", "4")
        arrows = (("a", "1", "4"), ("b", "2", "4"), ("c", "3", "4"))
    elif letter == "E":
        if rank not in (6, 7, 8):
            raise ValueError("only E_6, E_7, E_8 exist")
        chain = rank - 1
        vertices = tuple(str(i + 1) for i in range(rank))
        arrows = tuple((f"a{i + 1}", str(i + 1), str(i + 2)) for i in range(chain - 1))
        arrows += ((f"b", str(rank), "3"),)
    else:
        raise ValueError(f"unknown Dynkin letter {letter}")
    k = len(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    adj = np.zeros((k, k), dtype=np.int64)
    for _, s, t in arrows:
        adj[index[s], index[t]] = 1
    reach = np.eye(k, dtype=np.int64)
    power = np.eye(k, dtype=np.int64)
    for _ in range(k):
        power = (power @ adj).clip(0, 1)
        reach = (reach + power).clip(0, 1)
    return AlgebraPresentation(f"{letter}{rank}", vertices, arrows, (), reach)


def coxeter_polynomial(a: AlgebraPresentation) -> IntPolynomial:
    """Characteristic polynomial of -C^(-T) C, exact."""
    c = [[int(x) for x in row] for row in a.cartan]
    k = len(c)
    ct = [[c[j][i] for j in range(k)] for i in range(k)]
    ct_inv = inverse_unimodular(ct)
    phi = [[-sum(ct_inv[i][t] * c[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
    coeffs = charpoly_int(phi)
    # transpose convention gives the same polynomial; keep that pinned
    c_inv = inverse_unimodular(c)
    phi2 = [[-sum(c_inv[i][t] * ct[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
    assert charpoly_int(phi2) == coeffs, "Coxeter polynomial must not depend on the transpose convention"
    return IntPolynomial(coeffs)


def coxeter_json(a: AlgebraPresentation) -> str:
    return json.dumps({"algebra": a.name, "coxeter": list(coxeter_polynomial(a).coeffs)}, sort_keys=True)
