"""Finite-dimensional graded modules over the hypersurface ring.

A module is a finite family of fibers M_x indexed by grading-group
degrees together with matrices for the X_i actions.  Construction
checks that the actions commute and that sum(X_i^p_i) acts by zero,
so every value of this type really is a module over the hypersurface.

The shift convention is (M(y))_x = M_{x+y}; the simple k(y) therefore
has its fiber in degree -y.
"""

from __future__ import annotations

import numpy as np

from .grading import GradeElement, GroupEmbedding, WeightSystem, normalize
from .linalg import DEFAULT_MODULUS, is_prime, rank_exact, rank_mod


class GradedModule:
    def __init__(
        self,
        weights: WeightSystem,
        dims: dict[GradeElement, int],
        actions: dict[tuple[int, GradeElement], np.ndarray],
        q: int = DEFAULT_MODULUS,
        check: bool = True,
    ):
        if not is_prime(q):
            raise ValueError(f"working modulus {q} must be prime")
        self.weights = weights
        self.q = q
        self.dims = {x: int(d) for x, d in dims.items() if d > 0}
        self.actions = {}
        for (i, x), mat in actions.items():
            m = np.asarray(mat, dtype=np.int64) % q
            if m.any():
                self.actions[(i, x)] = m
        if check:
            self._check_relations()

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_at(self, x: GradeElement) -> int:
        return self.dims.get(x, 0)

    def act(self, i: int, x: GradeElement) -> np.ndarray:
        """Matrix of X_i from M_x to M_{x + x_i} (target_dim x source_dim)."""
        tgt = self.dim_at(x + self.weights.x(i))
        src = self.dim_at(x)
        mat = self.actions.get((i, x))
        if mat is None:
            return np.zeros((tgt, src), dtype=np.int64)
        if mat.shape != (tgt, src):
            raise ValueError(f"action X_{i+1} at {x} has shape {mat.shape}, expected {(tgt, src)}")
        return mat

    def power_act(self, i: int, x: GradeElement, e: int) -> np.ndarray:
        """Matrix of X_i^e from M_x to M_{x + e*x_i}."""
        xi = self.weights.x(i)
        out = np.eye(self.dim_at(x), dtype=np.int64)
        cur = x
        for _ in range(e):
            out = (self.act(i, cur) @ out) % self.q
            cur = cur + xi
        return out

    def _check_relations(self) -> None:
        ws = self.weights
        for x in self.dims:
            for i in range(ws.n):
                for j in range(i + 1, ws.n):
                    a = (self.act(j, x + ws.x(i)) @ self.act(i, x)) % self.q
                    b = (self.act(i, x + ws.x(j)) @ self.act(j, x)) % self.q
                    if (a - b).any():
                        raise ValueError(f"actions X_{i+1}, X_{j+1} do not commute at {x}")
            if self.dim_at(x + ws.c()) == 0:
                continue
            total = sum(self.power_act(i, x, ws.p[i]) for i in range(ws.n)) % self.q
            if total.any():
                raise ValueError(f"sum X_i^p_i does not vanish at {x}")

    def twist(self, y: GradeElement) -> GradedModule:
        """The shifted module M(y), with (M(y))_x = M_{x+y}."""
        dims = {x - y: d for x, d in self.dims.items()}
        actions = {(i, x - y): m for (i, x), m in self.actions.items()}
        return GradedModule(self.weights, dims, actions, self.q, check=False)

    def direct_sum(self, other: GradedModule) -> GradedModule:
        if self.weights != other.weights or self.q != other.q:
            raise ValueError("mismatched modules")
        dims = dict(self.dims)
        for x, d in other.dims.items():
            dims[x] = dims.get(x, 0) + d
        actions = {}
        ws = self.weights
        for x in dims:
            for i in range(ws.n):
                a = self.act(i, x)
                b = other.act(i, x)
                blk = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.int64)
                blk[: a.shape[0], : a.shape[1]] = a
                blk[a.shape[0] :, a.shape[1] :] = b
                if blk.any():
                    actions[(i, x)] = blk
        return GradedModule(ws, dims, actions, self.q, check=False)

    def to_json(self) -> dict:
        support = [{"degree": x.to_json(), "dim": d} for x, d in sorted(self.dims.items(), key=lambda t: (t[0].level, t[0].coeffs))]
        acts = []
        for (i, x), m in sorted(self.actions.items(), key=lambda t: (t[0][0], t[0][1].level, t[0][1].coeffs)):
            triplets = [[int(r), int(c), int(m[r, c])] for r, c in zip(*np.nonzero(m))]
            acts.append({"variable": i, "degree": x.to_json(), "entries": triplets})
        return {"weights": self.weights.to_json(), "support": support, "actions": acts, "modulus": self.q}


def make_simple(weights: WeightSystem, y: GradeElement | None = None, q: int = DEFAULT_MODULUS) -> GradedModule:
    """The graded simple k(y), one-dimensional in degree -y."""
    if y is None:
        y = weights.zero()
    return GradedModule(weights, {-y: 1}, {}, q)


def make_E(weights: WeightSystem, ell, y: GradeElement | None = None, q: int = DEFAULT_MODULUS) -> GradedModule:
    """The cuboid module R/(X_i^ell_i), shifted by y.

    Requires 1 <= ell_i <= p_i - 1.  The module has a one-dimensional
    fiber in each degree w - y for w in the box [0, ell - s], every
    X_i acting by identity where both endpoints stay in the box.
    """
    ell = tuple(int(e) for e in ell)
    if y is None:
        y = weights.zero()
    if any(not 1 <= e <= w - 1 for e, w in zip(ell, weights.p)):
        raise ValueError(f"ell {ell} outside the cuboid range for weights {weights}")
    dims: dict[GradeElement, int] = {}
    box = []
    def rec(i, acc):
        if i == weights.n:
            box.append(tuple(acc))
            return
        for v in range(ell[i]):
            rec(i + 1, acc + [v])
    rec(0, [])
    for w in box:
        dims[normalize(weights, w) - y] = 1
    actions = {}
    one = np.ones((1, 1), dtype=np.int64)
    for w in box:
        for i in range(weights.n):
            if w[i] + 1 < ell[i]:
                actions[(i, normalize(weights, w) - y)] = one
    return GradedModule(weights, dims, actions, q)


def module_hom_dim(m: GradedModule, n: GradedModule, exact: bool = False) -> int:
    """Dimension of degree-0 module homomorphisms M -> N.

    Unknowns are the componentwise maps f_x, constrained to commute
    with every X_i action; the answer is the nullity of the assembled
    linear system over the working field.  With ``exact`` the rank is
    recomputed over the rationals, for paranoia runs.
    """
    if m.weights != n.weights or m.q != n.q:
        raise ValueError("mismatched modules")
    ws, q = m.weights, m.q
    common = [x for x in m.dims if x in n.dims]
    offsets: dict[GradeElement, int] = {}
    total = 0
    for x in common:
        offsets[x] = total
        total += m.dims[x] * n.dims[x]
    if total == 0:
        return 0
    rows = []
    for x in m.dims:
        dm = m.dims[x]
        for i in range(ws.n):
            xi = x + ws.x(i)
            dn_t = n.dim_at(xi)
            if dn_t == 0:
                continue
            blocks = []
            if x in offsets:
                blocks.append((offsets[x], np.kron(n.act(i, x), np.eye(dm, dtype=np.int64))))
            if xi in offsets and m.dim_at(xi) > 0:
                blocks.append((offsets[xi], -np.kron(np.eye(dn_t, dtype=np.int64), m.act(i, x).T)))
            if not blocks:
                continue
            block_rows = dn_t * dm
            row = np.zeros((block_rows, total), dtype=np.int64)
            for off, blk in blocks:
                row[:, off : off + blk.shape[1]] += blk
            rows.append(row % q)
    if not rows:
        return total
    system = np.vstack(rows)
    if exact:
        signed = np.where(system > q // 2, system - q, system)
        return total - rank_exact(signed)
    return total - rank_mod(system, q)


def phi0_module(emb: GroupEmbedding, m: GradedModule) -> GradedModule:
    """Degreewise reduction: fiber at x is M at theta(x) + (p_n - p_jn) x_n.

    X_i for i < n transports directly.  X_n acts by a single source
    step off the wrap and by X_n^(p_n - p_jn + 1) at the wrap, which is
    the unique choice compatible with the degree bookkeeping.
    """
    ws = emb.target
    if m.weights != ws:
        raise ValueError("module does not live over the full system")
    src = emb.source
    n = ws.n
    gap = ws.p[-1] - emb.split_weight
    xn = ws.x(n - 1)
    dims: dict[GradeElement, int] = {}
    fiber: dict[GradeElement, GradeElement] = {}
    for z, d in m.dims.items():
        zp = z - gap * xn
        if zp.coeffs[-1] < emb.split_weight:
            x = emb.theta_inv(zp)
            dims[x] = d
            fiber[x] = z
    actions: dict[tuple[int, GradeElement], np.ndarray] = {}
    for x, z in fiber.items():
        for i in range(n - 1):
            actions[(i, x)] = m.act(i, z)
        lam = x.coeffs[-1]
        if lam < emb.split_weight - 1:
            actions[(n - 1, x)] = m.act(n - 1, z)
        else:
            actions[(n - 1, x)] = m.power_act(n - 1, z, gap + 1)
    return GradedModule(src, dims, actions, m.q)


def psi0_module(emb: GroupEmbedding, nm: GradedModule) -> GradedModule:
    """Degreewise insertion, stretching the last coordinate.

    Degrees with small last coefficient form a band of copies of the
    same source fiber, on which X_n acts by identity; across the band
    X_n acts by the source X_n map.
    """
    ws = emb.target
    src = emb.source
    if nm.weights != src:
        raise ValueError("module does not live over the reduced system")
    n = ws.n
    gap = ws.p[-1] - emb.split_weight
    xn = ws.x(n - 1)
    dims: dict[GradeElement, int] = {}
    fiber: dict[GradeElement, GradeElement] = {}
    for w, d in nm.dims.items():
        wn = w.coeffs[-1]
        if wn == 0:
            xs = [emb.theta(w) + t * xn for t in range(gap + 1)]
        else:
            xs = [emb.theta(w) + gap * xn]
        for x in xs:
            dims[x] = d
            fiber[x] = w
    actions: dict[tuple[int, GradeElement], np.ndarray] = {}
    for x, w in fiber.items():
        for i in range(n - 1):
            actions[(i, x)] = nm.act(i, w)
        lam = x.coeffs[-1]
        if lam < gap:
            actions[(n - 1, x)] = np.eye(dims[x], dtype=np.int64)
        else:
            actions[(n - 1, x)] = nm.act(n - 1, w)
    return GradedModule(ws, dims, actions, nm.q)


def adjunction_check(emb: GroupEmbedding, m: GradedModule, nm: GradedModule) -> bool:
    """Dimension form of the (phi_0, psi_0) adjunction."""
    return module_hom_dim(phi0_module(emb, m), nm) == module_hom_dim(m, psi0_module(emb, nm))
