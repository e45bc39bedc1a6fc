"""Polynomial local-unitary invariants of the coefficient tensor.

Four families are emitted, each as named (name, value) entries with a fixed
enumeration order so fingerprints compare positionally:

  generic (75):    traces tr G^r of the Gram matrices, vector quadratics
                   v.G^{r-1}v, the triple products (v, Gv, G^2 v), the
                   bilinear couplings a.X^{r-1} R Y^{s-1} b (and S, T
                   analogues), and the trilinear Q contractions.
  extras (15/vec): triple-product invariants that replace the information
                   lost when one vector component vanishes at the canonical
                   point.
  squared (189):   traces and squared norms quadratic in R, S, T, Q; these
                   determine the remaining components up to signs when two
                   vector components vanish.
  sign (30):       triple products that pin down the residual signs for two
                   zeros in alpha and beta.

Power indices r, s, t always run 1..3 and enter as G^{r-1}, so only the
0th..2nd matrix powers appear (plus cubes inside the trace family).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .pauli import BlochTensor
from .tensor_ops import flatten, gram, kron, triple_cofactor

__all__ = [
    "Fingerprint",
    "generic_fingerprint",
    "single_zero_extras",
    "squared_family",
    "sign_resolution",
    "all_invariants",
    "full_fingerprint",
    "first_mismatch",
    "q_trilinear",
    "q_trilinear_flat",
]

TOL_ABS = 1e-9
TOL_REL = 1e-8

_VEC_NAMES = ("a", "b", "g")


class _Ctx:
    """Per-tensor cache: Gram powers, power-weighted vectors, flattenings.

    When grams is given, those matrices replace the ones derived from b.Q;
    reconstruction uses this to evaluate families on a partially zeroed
    tensor with the weights of the original canonical point.
    """

    def __init__(self, b, grams=None):
        self.b = b
        X, Y, Z = gram(b.Q) if grams is None else grams
        eye = np.eye(3)
        self.G = {"X": X, "Y": Y, "Z": Z}
        self.P = {n: [eye, g, g @ g] for n, g in self.G.items()}
        # column r-1 holds G^{r-1} v
        self.V = {
            "a": np.stack([p @ b.alpha for p in self.P["X"]], axis=1),
            "b": np.stack([p @ b.beta for p in self.P["Y"]], axis=1),
            "g": np.stack([p @ b.gamma for p in self.P["Z"]], axis=1),
        }
        self.cof = {n: triple_cofactor(self.V[n][:, 0], self.V[n][:, 1])
                    for n in _VEC_NAMES}


def _generic_entries(ctx):
    b = ctx.b
    out = []
    for n in ("X", "Y", "Z"):
        g, g2 = ctx.G[n], ctx.P[n][2]
        for r, val in enumerate((np.trace(g), np.trace(g2), np.einsum("ij,ji->", g2, g)), 1):
            out.append((f"tr{n}^{r}", float(val)))
    for vn, v in (("a", b.alpha), ("b", b.beta), ("g", b.gamma)):
        gn = {"a": "X", "b": "Y", "g": "Z"}[vn]
        for r in (1, 2, 3):
            out.append((f"{vn}{gn}{vn}:r={r}", float(ctx.V[vn][:, r - 1] @ v)))
    for vn in _VEC_NAMES:
        cols = ctx.V[vn]
        out.append((f"tri:{vn}", float(ctx.cof[vn] @ cols[:, 2])))
    for label, mat, left, right in (("aRb", b.R, "a", "b"),
                                    ("aSg", b.S, "a", "g"),
                                    ("bTg", b.T, "b", "g")):
        grid = ctx.V[left].T @ mat @ ctx.V[right]
        for r in (1, 2, 3):
            for s in (1, 2, 3):
                out.append((f"{label}:r={r},s={s}", float(grid[r - 1, s - 1])))
    tri = np.einsum("ir,js,kt,ijk->rst", ctx.V["a"], ctx.V["b"], ctx.V["g"], b.Q)
    for r in (1, 2, 3):
        for s in (1, 2, 3):
            for t in (1, 2, 3):
                out.append((f"Q:r={r},s={s},t={t}", float(tri[r - 1, s - 1, t - 1])))
    return out


def _extras_entries(ctx, vector):
    """The 15 extra invariants for a vanishing component of the given vector."""
    b = ctx.b
    out = []
    if vector == "a":
        cof = ctx.cof["a"]
        for r in (1, 2, 3):
            out.append((f"tri:a,Rb:r={r}", float(cof @ (b.R @ ctx.V["b"][:, r - 1]))))
        for r in (1, 2, 3):
            out.append((f"tri:a,Sg:r={r}", float(cof @ (b.S @ ctx.V["g"][:, r - 1]))))
        for r in (1, 2, 3):
            for s in (1, 2, 3):
                w = np.einsum("ijk,j,k->i", b.Q, ctx.V["b"][:, r - 1], ctx.V["g"][:, s - 1])
                out.append((f"tri:a,Qbg:r={r},s={s}", float(cof @ w)))
    elif vector == "b":
        cof = ctx.cof["b"]
        for r in (1, 2, 3):
            out.append((f"tri:b,Rta:r={r}", float(cof @ (b.R.T @ ctx.V["a"][:, r - 1]))))
        for r in (1, 2, 3):
            out.append((f"tri:b,Tg:r={r}", float(cof @ (b.T @ ctx.V["g"][:, r - 1]))))
        for r in (1, 2, 3):
            for s in (1, 2, 3):
                w = np.einsum("ijk,i,k->j", b.Q, ctx.V["a"][:, r - 1], ctx.V["g"][:, s - 1])
                out.append((f"tri:b,Qag:r={r},s={s}", float(cof @ w)))
    elif vector == "g":
        cof = ctx.cof["g"]
        for r in (1, 2, 3):
            out.append((f"tri:g,Sta:r={r}", float(cof @ (b.S.T @ ctx.V["a"][:, r - 1]))))
        for r in (1, 2, 3):
            out.append((f"tri:g,Ttb:r={r}", float(cof @ (b.T.T @ ctx.V["b"][:, r - 1]))))
        for r in (1, 2, 3):
            for s in (1, 2, 3):
                w = np.einsum("ijk,i,j->k", b.Q, ctx.V["a"][:, r - 1], ctx.V["b"][:, s - 1])
                out.append((f"tri:g,Qab:r={r},s={s}", float(cof @ w)))
    else:
        raise ValueError(f'vector must be one of "a", "b", "g", got {vector!r}')
    return out


def _squared_entries(ctx):
    b = ctx.b
    Xp, Yp, Zp = ctx.P["X"], ctx.P["Y"], ctx.P["Z"]
    out = []
    for label, mat, inner, outer in (("RYRX", b.R, Yp, Xp),
                                     ("SZSX", b.S, Zp, Xp),
                                     ("TZTY", b.T, Zp, Yp)):
        for r in (1, 2, 3):
            for s in (1, 2, 3):
                val = np.einsum("ij,jk,lk,li->", mat, inner[r - 1], mat, outer[s - 1])
                out.append((f"sq:{label}:r={r},s={s}", float(val)))
    qq = np.einsum("ria,abc,sbe,tcf,ief->rst",
                   np.stack(Xp), b.Q, np.stack(Yp), np.stack(Zp), b.Q)
    for r in (1, 2, 3):
        for s in (1, 2, 3):
            for t in (1, 2, 3):
                out.append((f"sq:QXQYZ:r={r},s={s},t={t}", float(qq[r - 1, s - 1, t - 1])))
    for label, mat, right, outer in (("XRYb", b.R, "b", Xp),
                                     ("YRtXa", b.R.T, "a", Yp),
                                     ("XSZg", b.S, "g", Xp),
                                     ("ZStXa", b.S.T, "a", Zp),
                                     ("YTZg", b.T, "g", Yp),
                                     ("ZTtYb", b.T.T, "b", Zp)):
        for r in (1, 2, 3):
            for s in (1, 2, 3):
                v = outer[r - 1] @ (mat @ ctx.V[right][:, s - 1])
                out.append((f"sq:{label}:r={r},s={s}", float(v @ v)))
    for label, axes, vec, left, rightp in (("YZQ1Xa", "ijk,i->jk", "a", Yp, Zp),
                                           ("XZQ2Yb", "ijk,j->ik", "b", Xp, Zp),
                                           ("XYQ3Zg", "ijk,k->ij", "g", Xp, Yp)):
        ws = [np.einsum(axes, b.Q, ctx.V[vec][:, t]) for t in range(3)]
        for r in (1, 2, 3):
            for s in (1, 2, 3):
                for t in (1, 2, 3):
                    m = left[r - 1] @ ws[t - 1] @ rightp[s - 1]
                    out.append((f"sq:{label}:r={r},s={s},t={t}", float(np.sum(m * m))))
    return out


def _sign_entries(ctx):
    b = ctx.b
    cof_a, cof_b = ctx.cof["a"], ctx.cof["b"]
    Xp, Yp, Zp = ctx.P["X"], ctx.P["Y"], ctx.P["Z"]
    out = []
    for r in (1, 2, 3):
        out.append((f"sgn:bTg:r={r}", float(cof_b @ (b.T @ ctx.V["g"][:, r - 1]))))
    for r in (1, 2, 3):
        out.append((f"sgn:aSg:r={r}", float(cof_a @ (b.S @ ctx.V["g"][:, r - 1]))))
    for r in (1, 2, 3):
        out.append((f"sgn:aRTg:r={r}", float(cof_a @ (b.R @ (b.T @ ctx.V["g"][:, r - 1])))))
    for r in (1, 2, 3):
        out.append((f"sgn:bRtSg:r={r}", float(cof_b @ (b.R.T @ (b.S @ ctx.V["g"][:, r - 1])))))
    for r in (1, 2, 3):
        for s in (1, 2, 3):
            m = Yp[r - 1] @ b.T @ Zp[s - 1]
            w = np.einsum("ijk,jk->i", b.Q, m)
            out.append((f"sgn:aQT:r={r},s={s}", float(cof_a @ w)))
    for r in (1, 2, 3):
        for s in (1, 2, 3):
            m = Xp[r - 1] @ b.S @ Zp[s - 1]
            w = np.einsum("ijk,ik->j", b.Q, m)
            out.append((f"sgn:bQS:r={r},s={s}", float(cof_b @ w)))
    return out


@dataclass
class Fingerprint:
    """Named invariant values for one orbit class, fixed enumeration order."""

    orbit_class: str
    entries: list = field(default_factory=list)
    tolerance_hint: float = TOL_ABS

    def names(self):
        return [name for name, _ in self.entries]

    def values(self):
        return np.array([val for _, val in self.entries])

    def get(self, name):
        for n, v in self.entries:
            if n == name:
                return v
        raise KeyError(name)

    def __len__(self):
        return len(self.entries)

    def to_dict(self):
        return {"class": self.orbit_class,
                "entries": [[name, val] for name, val in self.entries]}

    @classmethod
    def from_dict(cls, data):
        entries = [(str(name), float(val)) for name, val in data["entries"]]
        return cls(orbit_class=str(data["class"]), entries=entries)


def generic_fingerprint(b):
    """The 75 generic invariants, as a Fingerprint tagged "generic"."""
    return Fingerprint("generic", _generic_entries(_Ctx(b)))


def single_zero_extras(b, vector, grams=None):
    """The 15 extra invariants for a zero component of vector "a", "b" or "g"."""
    return _extras_entries(_Ctx(b, grams), vector)


def squared_family(b, grams=None):
    """The 189 squared invariants (traces and norms quadratic in R, S, T, Q)."""
    return _squared_entries(_Ctx(b, grams))


def sign_resolution(b, grams=None):
    """The 30 sign-resolution invariants for zeros in alpha and beta."""
    return _sign_entries(_Ctx(b, grams))


def all_invariants(b):
    """Every invariant the package defines: 75 + 3*15 + 189 + 30 = 339 entries."""
    ctx = _Ctx(b)
    out = _generic_entries(ctx)
    for vec in _VEC_NAMES:
        out += _extras_entries(ctx, vec)
    out += _squared_entries(ctx)
    out += _sign_entries(ctx)
    return out


def _kind_and_slots(orbit_class):
    if isinstance(orbit_class, str):
        tag = orbit_class
        head = tag.split(":", 1)
        kind = head[0]
        slots = []
        if kind in ("single-zero", "two-zero-diff", "two-zero-same") and len(head) == 2:
            slots = [(tok[0], int(tok[1:])) for tok in head[1].split(",") if tok]
        return kind, tuple(slots), tag
    return orbit_class.kind, tuple(orbit_class.slots), orbit_class.tag


def full_fingerprint(b, orbit_class):
    """Class-dependent fingerprint.

    generic -> 75 entries; single-zero -> 90 (75 + the matching extras);
    two-zero, degenerate and other classes -> all 339 entries (the full
    conservative set; every entry is a genuine invariant on any tensor).
    """
    kind, slots, tag = _kind_and_slots(orbit_class)
    ctx = _Ctx(b)
    entries = _generic_entries(ctx)
    if kind == "generic":
        pass
    elif kind == "single-zero":
        if not slots:
            raise ValueError(f"single-zero class without a slot: {tag!r}")
        entries += _extras_entries(ctx, slots[0][0])
    else:
        for vec in _VEC_NAMES:
            entries += _extras_entries(ctx, vec)
        entries += _squared_entries(ctx)
        entries += _sign_entries(ctx)
    return Fingerprint(tag, entries)


def first_mismatch(fp1, fp2, tol_abs=TOL_ABS, tol_rel=TOL_REL):
    """First entry where two fingerprints disagree, or None.

    Entries compare positionally with |a - b| <= tol_abs + tol_rel*max(|a|,|b|).
    Raises ValueError if the name sequences differ (incomparable classes).
    """
    names1, names2 = fp1.names(), fp2.names()
    if names1 != names2:
        raise ValueError("fingerprints enumerate different invariants and cannot be compared")
    for (name, v1), (_, v2) in zip(fp1.entries, fp2.entries):
        if abs(v1 - v2) > tol_abs + tol_rel * max(abs(v1), abs(v2)):
            return name, v1, v2
    return None


def q_trilinear(b, r, s, t):
    """sum_ijk (X^{r-1}a)_i (Y^{s-1}b)_j (Z^{t-1}g)_k Q_ijk, summed directly."""
    ctx = _Ctx(b)
    return float(np.einsum("i,j,k,ijk->", ctx.V["a"][:, r - 1], ctx.V["b"][:, s - 1],
                           ctx.V["g"][:, t - 1], b.Q))


def q_trilinear_flat(b, r, s, t):
    """Same contraction through the axis-1 flattening and a Kronecker product."""
    ctx = _Ctx(b)
    q1 = flatten(b.Q, 1)
    big = kron(ctx.P["Y"][s - 1], ctx.P["Z"][t - 1])
    return float(ctx.V["a"][:, r - 1] @ q1 @ big @ kron(b.beta, b.gamma))
