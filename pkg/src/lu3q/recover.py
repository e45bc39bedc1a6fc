"""Recover tensor components from invariant values at a canonical point.

A single zero component in one of the vectors leaves one row (or column) of
two coupling matrices and one slab of Q undetermined by the generic
invariants; the extra triple-product invariants fix them through Vandermonde
systems built from the canonical Gram spectra.  Two zeros leave a single
coupling entry and a fiber of Q (different vectors) or two rows/slabs (same
vector); the squared family pins magnitudes and in-row products, and the
sign-resolution invariants fix the remaining signs when they do not vanish.

Known-component contributions are always subtracted by re-evaluating the
exact invariant on a copy of the tensor with the unknowns zeroed, never by
separate closed forms.  Those re-evaluations pin the Gram matrices to the
canonical spectra: the invariants weight components by the Grams of the
full tensor, which zeroing part of Q would otherwise perturb.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .errors import (InconsistentInvariantsError, SingularSystemError,
                     WrongClassError)
from .invariants import sign_resolution, single_zero_extras, squared_family
from .tensor_ops import gram, triple_cofactor

__all__ = [
    "VandermondeSystem",
    "vandermonde_system",
    "SingleZeroSolution",
    "solve_single_zero",
    "SignGroup",
    "TwoZeroRecovery",
    "recover_two_zero",
]

MIN_DET = 1e-10
SQUARE_FLOOR = -1e-9


def _power_matrix(spec):
    """Rows r=0..2 of spec_i^r: the 3x3 Vandermonde system in the given spectrum."""
    return np.vander(np.asarray(spec, dtype=float), 3, increasing=True).T


def _rel_det(mat):
    n = mat.shape[0]
    scale = np.linalg.norm(mat) / np.sqrt(n)
    if scale == 0.0:
        return 0.0
    return float(abs(np.linalg.det(mat)) / scale ** n)


def _checked_solve(mat, rhs, what, min_det):
    rd = _rel_det(mat)
    if rd < min_det:
        raise SingularSystemError(f"{what}: relative determinant {rd:.3e} below {min_det:.1e}", rd)
    return np.linalg.solve(mat, rhs)


def _checked_kron_solve(mats, rhs, what, min_det):
    """Solve a Kronecker-product system, gating singularity on each factor."""
    for i, m in enumerate(mats):
        rd = _rel_det(m)
        if rd < min_det:
            raise SingularSystemError(
                f"{what}: factor {i + 1} relative determinant {rd:.3e} below {min_det:.1e}", rd)
    big = mats[0]
    for m in mats[1:]:
        big = np.kron(big, m)
    return np.linalg.solve(big, rhs)


def _clamp_square(val, what):
    if val < SQUARE_FLOOR:
        raise InconsistentInvariantsError(f"{what}: squared value {val:.3e} below {SQUARE_FLOOR:.0e}")
    return max(float(val), 0.0)


def _masked(t, mR=None, mS=None, mT=None, mQ=None):
    """Copy of the tensor with the masked (unknown) entries set to zero."""
    kw = {}
    for name, mask in (("R", mR), ("S", mS), ("T", mT), ("Q", mQ)):
        if mask is not None:
            arr = getattr(t, name).copy()
            arr[mask] = 0.0
            kw[name] = arr
    return dataclasses.replace(t, **kw)


def _entry_dict(fp):
    return dict(fp.entries)


def _pinned_grams(cls):
    return tuple(np.diag(np.array(s, dtype=float)) for s in cls.spectra)


def _measured(fp_dict, known, names, what):
    try:
        return np.array([fp_dict[n] - known[n] for n in names])
    except KeyError as exc:
        raise ValueError(f"fingerprint lacks entry {exc} needed for {what}") from exc


@dataclass(frozen=True)
class VandermondeSystem:
    """Vandermonde pair for a single-zero solve.

    Lambda and F come from the first remaining vector (its squared Gram
    spectrum and components), Theta and G from the second, in (a, b, g)
    order with the zero vector removed.
    """

    Lambda: np.ndarray
    Theta: np.ndarray
    F: np.ndarray
    G: np.ndarray
    vectors: tuple


def vandermonde_system(cf):
    cls = cf.orbit_class
    if cls.kind != "single-zero":
        raise WrongClassError(f"expected a single-zero class, got {cls.tag}")
    vec = cls.slots[0][0]
    spec = {"a": np.array(cls.spectra[0]), "b": np.array(cls.spectra[1]),
            "g": np.array(cls.spectra[2])}
    comp = {"a": cf.tensor.alpha, "b": cf.tensor.beta, "g": cf.tensor.gamma}
    first, second = [v for v in "abg" if v != vec]
    return VandermondeSystem(
        Lambda=_power_matrix(spec[first]),
        Theta=_power_matrix(spec[second]),
        F=np.diag(comp[first]),
        G=np.diag(comp[second]),
        vectors=(first, second),
    )


@dataclass
class SingleZeroSolution:
    """Recovered row/column of two coupling matrices and one slab of Q."""

    zero_vector: str
    slot: int
    first: np.ndarray
    second: np.ndarray
    q_slab: np.ndarray
    targets: tuple

    def apply(self, b):
        """Insert the recovered values into a copy of the tensor."""
        p = self.slot - 1
        R, S, T, Q = b.R.copy(), b.S.copy(), b.T.copy(), b.Q.copy()
        if self.zero_vector == "a":
            R[p, :] = self.first
            S[p, :] = self.second
            Q[p, :, :] = self.q_slab
        elif self.zero_vector == "b":
            R[:, p] = self.first
            T[p, :] = self.second
            Q[:, p, :] = self.q_slab
        else:
            S[:, p] = self.first
            T[:, p] = self.second
            Q[:, :, p] = self.q_slab
        return dataclasses.replace(b, R=R, S=S, T=T, Q=Q)


_SINGLE_NAMES = {
    "a": ("tri:a,Rb:r={r}", "tri:a,Sg:r={r}", "tri:a,Qbg:r={r},s={s}"),
    "b": ("tri:b,Rta:r={r}", "tri:b,Tg:r={r}", "tri:b,Qag:r={r},s={s}"),
    "g": ("tri:g,Sta:r={r}", "tri:g,Ttb:r={r}", "tri:g,Qab:r={r},s={s}"),
}


def _single_masks(vec, p):
    mR = np.zeros((3, 3), dtype=bool)
    mS = np.zeros((3, 3), dtype=bool)
    mT = np.zeros((3, 3), dtype=bool)
    mQ = np.zeros((3, 3, 3), dtype=bool)
    if vec == "a":
        mR[p, :] = True
        mS[p, :] = True
        mQ[p, :, :] = True
        return mR, mS, None, mQ
    if vec == "b":
        mR[:, p] = True
        mT[p, :] = True
        mQ[:, p, :] = True
        return mR, None, mT, mQ
    mS[:, p] = True
    mT[:, p] = True
    mQ[:, :, p] = True
    return None, mS, mT, mQ


def solve_single_zero(fp, cf, min_det=MIN_DET):
    """Solve the Vandermonde systems for a single-zero canonical form.

    Returns a SingleZeroSolution; raises WrongClassError for other classes
    and SingularSystemError when a system determinant or the triple-product
    prefactor is below threshold.
    """
    cls = cf.orbit_class
    if cls.kind != "single-zero":
        raise WrongClassError(f"expected a single-zero class, got {cls.tag}")
    vec, slot = cls.slots[0]
    p = slot - 1
    t = cf.tensor

    vsys = vandermonde_system(cf)
    A1 = vsys.Lambda @ vsys.F
    A2 = vsys.Theta @ vsys.G

    grams = gram(t.Q)
    v = {"a": t.alpha, "b": t.beta, "g": t.gamma}[vec]
    gv = {"a": grams.X, "b": grams.Y, "g": grams.Z}[vec]
    cof = triple_cofactor(v, gv @ v)
    pref = cof[p]
    pref_scale = float(np.linalg.norm(v) ** 2 * max(np.max(np.diag(gv)), 0.0))
    if abs(pref) < min_det * max(pref_scale, 1e-300):
        raise SingularSystemError(
            f"triple-product prefactor {pref:.3e} too small to solve", abs(pref))

    t_known = _masked(t, *_single_masks(vec, p))
    known = dict(single_zero_extras(t_known, vec, _pinned_grams(cls)))
    fpd = _entry_dict(fp)

    fmt1, fmt2, fmtq = _SINGLE_NAMES[vec]
    rhs1 = _measured(fpd, known, [fmt1.format(r=r) for r in (1, 2, 3)], "single-zero solve") / pref
    rhs2 = _measured(fpd, known, [fmt2.format(r=r) for r in (1, 2, 3)], "single-zero solve") / pref
    rhsq = _measured(fpd, known,
                     [fmtq.format(r=r, s=s) for r in (1, 2, 3) for s in (1, 2, 3)],
                     "single-zero solve") / pref

    first = _checked_solve(A1, rhs1, "first coupling system", min_det)
    second = _checked_solve(A2, rhs2, "second coupling system", min_det)
    q_slab = _checked_kron_solve((A1, A2), rhsq, "Q slab system", min_det).reshape(3, 3)

    targets = {
        "a": (f"R[{slot},:]", f"S[{slot},:]", f"Q[{slot},:,:]"),
        "b": (f"R[:,{slot}]", f"T[{slot},:]", f"Q[:,{slot},:]"),
        "g": (f"S[:,{slot}]", f"T[:,{slot}]", f"Q[:,:,{slot}]"),
    }[vec]
    return SingleZeroSolution(vec, slot, first, second, q_slab, targets)


@dataclass
class SignGroup:
    """Components sharing one sign freedom; resolved means the signs are pinned."""

    label: str
    components: dict
    resolved: bool


@dataclass
class TwoZeroRecovery:
    """Recovered squares and sign-grouped component values for a two-zero class."""

    case: str
    squares: dict
    groups: list
    notes: list


def _pair_products(rhs, spec, weights, min_det, what):
    """Solve sum over pairs 2 (spec_j spec_k)^tau w_j w_k P_jk = rhs_tau."""
    pairs = ((0, 1), (0, 2), (1, 2))
    B = np.array([[2.0 * (spec[j] * spec[k]) ** tau * weights[j] * weights[k]
                   for (j, k) in pairs] for tau in range(3)])
    sol = _checked_solve(B, rhs, what, min_det)
    return dict(zip(pairs, sol))


def _diag_contrib(squares, spec, weights):
    """Diagonal part sum_j squares_j (spec_j^2)^tau w_j^2 for tau = 0..2."""
    return np.array([float(np.sum(squares * (spec ** 2) ** tau * weights ** 2))
                     for tau in range(3)])


def _rank1_factor(P, square_floor):
    """Factor a rank-1 PSD product matrix, pivoting on the largest diagonal."""
    diag = np.diag(P)
    pivot = int(np.argmax(diag))
    if diag[pivot] <= square_floor:
        return np.zeros(3), True
    vals = P[:, pivot] / np.sqrt(diag[pivot])
    vals = np.where(diag <= square_floor, 0.0, vals)
    return vals, False


_DIFF_CONFIG = {
    ("a", "b"): dict(coupling="R", coupling_sq="sq:RYRX:r=1,s=1",
                     fiber_sq="sq:QXQYZ:r=1,s=1,t={n}", fiber_prod="sq:XYQ3Zg:r=1,s=1,t={n}",
                     free_axis=2, spec_idx=2, weight_vec="gamma"),
    ("a", "g"): dict(coupling="S", coupling_sq="sq:SZSX:r=1,s=1",
                     fiber_sq="sq:QXQYZ:r=1,s={n},t=1", fiber_prod="sq:XZQ2Yb:r=1,s=1,t={n}",
                     free_axis=1, spec_idx=1, weight_vec="beta"),
    ("b", "g"): dict(coupling="T", coupling_sq="sq:TZTY:r=1,s=1",
                     fiber_sq="sq:QXQYZ:r={n},s=1,t=1", fiber_prod="sq:YZQ1Xa:r=1,s=1,t={n}",
                     free_axis=0, spec_idx=0, weight_vec="alpha"),
}


def _fiber_index(free_axis, p, q):
    if free_axis == 2:
        return (p, q, slice(None))
    if free_axis == 1:
        return (p, slice(None), q)
    return (slice(None), p, q)


def _fiber_keys(free_axis, p, q):
    if free_axis == 2:
        return [f"Q[{p + 1},{q + 1},{k}]" for k in (1, 2, 3)], f"Q[{p + 1},{q + 1},:]"
    if free_axis == 1:
        return [f"Q[{p + 1},{k},{q + 1}]" for k in (1, 2, 3)], f"Q[{p + 1},:,{q + 1}]"
    return [f"Q[{k},{p + 1},{q + 1}]" for k in (1, 2, 3)], f"Q[:,{p + 1},{q + 1}]"


def _resolve_linear_sign(fpd, t_known, t_unit, names, den_tol, grams):
    """Best sign estimate from invariants linear in the unknown block.

    Returns (value, resolved): value solves measured = known + value*unit
    using the equation with the largest unit contribution.
    """
    sgn_known = dict(sign_resolution(t_known, grams))
    sgn_unit = dict(sign_resolution(t_unit, grams))
    best = (0.0, 0.0)
    for n in names:
        contrib = sgn_unit[n] - sgn_known[n]
        if abs(contrib) > abs(best[1]):
            best = (fpd[n] - sgn_known[n], contrib)
    if abs(best[1]) <= den_tol:
        return 0.0, False
    return best[0] / best[1], True


def _recover_diff(fp, cf, min_det, den_tol, square_floor):
    cls = cf.orbit_class
    (v1, s1), (v2, s2) = cls.slots
    p, q = s1 - 1, s2 - 1
    cfg = _DIFF_CONFIG[(v1, v2)]
    t = cf.tensor
    spec = np.array(cls.spectra[cfg["spec_idx"]])
    weights = getattr(t, cfg["weight_vec"])

    cname = cfg["coupling"]
    mC = np.zeros((3, 3), dtype=bool)
    mC[p, q] = True
    mQ = np.zeros((3, 3, 3), dtype=bool)
    mQ[_fiber_index(cfg["free_axis"], p, q)] = True
    mask_kw = {"m" + cname: mC, "mQ": mQ}
    t_known = _masked(t, **mask_kw)

    grams = _pinned_grams(cls)
    fpd = _entry_dict(fp)
    sq_known = dict(squared_family(t_known, grams))

    ckey = f"{cname}[{s1},{s2}]"
    c2 = _clamp_square(_measured(fpd, sq_known, [cfg["coupling_sq"]], ckey)[0], ckey)

    fiber_sq_names = [cfg["fiber_sq"].format(n=n) for n in (1, 2, 3)]
    d = _measured(fpd, sq_known, fiber_sq_names, "fiber squares")
    fiber_sq = _checked_solve(_power_matrix(spec), d, "fiber square system", min_det)
    fiber_sq = np.array([_clamp_square(x, "Q fiber") for x in fiber_sq])

    prod_names = [cfg["fiber_prod"].format(n=n) for n in (1, 2, 3)]
    m = _measured(fpd, sq_known, prod_names, "fiber products")
    rhs = m - _diag_contrib(fiber_sq, spec, weights)
    offdiag = _pair_products(rhs, spec, weights, min_det, "fiber product system")

    P = np.diag(fiber_sq)
    for (j, k), val in offdiag.items():
        P[j, k] = P[k, j] = val
    fiber_vals, fiber_zero = _rank1_factor(P, square_floor)

    keys, fiber_label = _fiber_keys(cfg["free_axis"], p, q)
    squares = {f"{ckey}^2": c2}
    squares.update({f"{k}^2": float(s) for k, s in zip(keys, fiber_sq)})

    notes = []
    c_mag = float(np.sqrt(c2))
    groups = []
    if (v1, v2) == ("a", "b"):
        if c2 <= square_floor:
            groups.append(SignGroup(ckey, {ckey: 0.0}, True))
        else:
            unit = t.R.copy() * 0.0
            unit[p, q] = 1.0
            t_unit = dataclasses.replace(t_known, R=t_known.R + unit)
            val, ok = _resolve_linear_sign(
                fpd, t_known, t_unit,
                [f"sgn:aRTg:r={r}" for r in (1, 2, 3)] + [f"sgn:bRtSg:r={r}" for r in (1, 2, 3)],
                den_tol, grams)
            groups.append(SignGroup(ckey, {ckey: np.copysign(c_mag, val) if ok else c_mag}, ok))
        if fiber_zero:
            groups.append(SignGroup(fiber_label, {k: 0.0 for k in keys}, True))
        else:
            qt = t_known.Q.copy()
            qt[_fiber_index(cfg["free_axis"], p, q)] = fiber_vals
            t_unit = dataclasses.replace(t_known, Q=qt)
            sigma, ok = _resolve_linear_sign(
                fpd, t_known, t_unit,
                [f"sgn:aQT:r={r},s={s}" for r in (1, 2, 3) for s in (1, 2, 3)]
                + [f"sgn:bQS:r={r},s={s}" for r in (1, 2, 3) for s in (1, 2, 3)],
                den_tol, grams)
            vals = np.copysign(1.0, sigma) * fiber_vals if ok else fiber_vals
            groups.append(SignGroup(fiber_label, {k: float(x) for k, x in zip(keys, vals)}, ok))
    else:
        notes.append(f"sign-resolution invariants cover zeros in (a, b); "
                     f"pair ({v1}, {v2}) reports magnitudes only")
        groups.append(SignGroup(ckey, {ckey: c_mag}, bool(c2 <= square_floor)))
        groups.append(SignGroup(fiber_label, {k: float(x) for k, x in zip(keys, fiber_vals)},
                                bool(fiber_zero)))
    return TwoZeroRecovery("different-vectors", squares, groups, notes)


def _rs_square_solve(fpd, sq_known, fmt, lam_row, lam_col, min_det, what):
    """Solve values(r,s) = sum_uv lam_row[r,u] lam_col[s,v] M[u,v]."""
    names = [fmt.format(r=r, s=s) for r in (1, 2, 3) for s in (1, 2, 3)]
    d = _measured(fpd, sq_known, names, what)
    return _checked_kron_solve((lam_row, lam_col), d, what, min_det).reshape(3, 3)


def _per_s_vander_solve(fpd, sq_known, fmt, lam4, min_det, what):
    """Solve values(r,s) = sum_u lam4[r,u] W[u,s] column by column."""
    out = np.empty((3, 3))
    for s in (1, 2, 3):
        d = _measured(fpd, sq_known, [fmt.format(r=r, s=s) for r in (1, 2, 3)], what)
        out[:, s - 1] = _checked_solve(lam4, d, what, min_det)
    return out


def _per_t_grid_solve(fpd, sq_known, fmt, lam_a, lam_b, min_det, what):
    """Solve values(r,s,t) = sum_uv lam_a[r,u] lam_b[s,v] U[u,v,t] per t."""
    out = np.empty((3, 3, 3))
    for n in (1, 2, 3):
        names = [fmt.format(r=r, s=s, t=n) for r in (1, 2, 3) for s in (1, 2, 3)]
        d = _measured(fpd, sq_known, names, what)
        out[:, :, n - 1] = _checked_kron_solve((lam_a, lam_b), d, what, min_det).reshape(3, 3)
    return out


def _row_product_matrix(row_squares, w2_row, spec, weights, min_det, what):
    """Product matrix of one row from its squares and the squared sums w2_row."""
    rhs = w2_row - _diag_contrib(row_squares, spec, weights)
    offdiag = _pair_products(rhs, spec, weights, min_det, what)
    P = np.diag(row_squares)
    for (j, k), val in offdiag.items():
        P[j, k] = P[k, j] = val
    return P


def _slab_sign_groups(slab_label, magnitudes, edges, square_floor):
    """Connected sign components of a 3x3 slab from in-row/in-column products.

    magnitudes: 3x3 non-negative entry magnitudes; edges: dict mapping node
    pairs ((u,v),(u',v')) to product values.  Nodes whose squared magnitude
    is at or below square_floor are collected into one resolved zero group.
    """
    nodes = [(u, v) for u in range(3) for v in range(3)]
    live = {n for n in nodes if magnitudes[n] ** 2 > square_floor}
    adj = {n: [] for n in live}
    for (n1, n2), prod in edges.items():
        if n1 in live and n2 in live and abs(prod) > square_floor:
            adj[n1].append((n2, prod))
            adj[n2].append((n1, prod))
    groups = []
    seen = set()
    comp_idx = 0
    for start in sorted(live, key=lambda n: -magnitudes[n]):
        if start in seen:
            continue
        comp_idx += 1
        sign = {start: 1.0}
        queue = [start]
        seen.add(start)
        while queue:
            cur = queue.pop()
            for nxt, prod in adj[cur]:
                want = np.copysign(1.0, prod) * sign[cur]
                if nxt in sign:
                    if sign[nxt] != want:
                        raise InconsistentInvariantsError(
                            f"{slab_label}: contradictory sign products in component {comp_idx}")
                else:
                    sign[nxt] = want
                    seen.add(nxt)
                    queue.append(nxt)
        comps = {}
        for (u, v), s in sorted(sign.items()):
            comps[_slab_key(slab_label, u, v)] = float(s * magnitudes[u, v])
        groups.append(SignGroup(f"{slab_label}#{comp_idx}", comps, False))
    zeros = {n for n in nodes if n not in live}
    if zeros:
        comps = {_slab_key(slab_label, u, v): 0.0 for (u, v) in sorted(zeros)}
        groups.append(SignGroup(f"{slab_label}#zeros", comps, True))
    return groups


def _slab_key(slab_label, u, v):
    """Component key for node (u, v) of a slab labeled like Q[2,:,:]."""
    inner = slab_label[2:-1].split(",")
    free = [i for i, tok in enumerate(inner) if tok == ":"]
    inner[free[0]] = str(u + 1)
    inner[free[1]] = str(v + 1)
    return "Q[" + ",".join(inner) + "]"


def _recover_same(fp, cf, min_det, square_floor):
    cls = cf.orbit_class
    vec = cls.slots[0][0]
    rows = [s - 1 for _, s in cls.slots]
    t = cf.tensor
    x2, y2, z2 = (np.array(s) for s in cls.spectra)
    alpha, beta, gamma = t.alpha, t.beta, t.gamma

    lam_x, lam_y, lam_z = _power_matrix(x2), _power_matrix(y2), _power_matrix(z2)
    lam_x4, lam_y4, lam_z4 = (_power_matrix(x2 ** 2), _power_matrix(y2 ** 2),
                              _power_matrix(z2 ** 2))

    mQ = np.zeros((3, 3, 3), dtype=bool)
    m1 = np.zeros((3, 3), dtype=bool)
    m2 = np.zeros((3, 3), dtype=bool)
    if vec == "a":
        m1[rows, :] = True          # rows of R
        m2[rows, :] = True          # rows of S
        mQ[rows, :, :] = True
        t_known = _masked(t, mR=m1, mS=m2, mQ=mQ)
    elif vec == "b":
        m1[:, rows] = True          # columns of R
        m2[rows, :] = True          # rows of T
        mQ[:, rows, :] = True
        t_known = _masked(t, mR=m1, mT=m2, mQ=mQ)
    else:
        m1[:, rows] = True          # columns of S
        m2[:, rows] = True          # columns of T
        mQ[:, :, rows] = True
        t_known = _masked(t, mS=m1, mT=m2, mQ=mQ)

    grams = _pinned_grams(cls)
    fpd = _entry_dict(fp)
    sq_known = dict(squared_family(t_known, grams))

    # full-grid square solves; entries outside the unknown mask come out ~0
    R2m = _rs_square_solve(fpd, sq_known, "sq:RYRX:r={r},s={s}", lam_y, lam_x,
                           min_det, "R squares")          # [j, i]
    S2m = _rs_square_solve(fpd, sq_known, "sq:SZSX:r={r},s={s}", lam_z, lam_x,
                           min_det, "S squares")          # [k, i]
    T2m = _rs_square_solve(fpd, sq_known, "sq:TZTY:r={r},s={s}", lam_z, lam_y,
                           min_det, "T squares")          # [k, j]
    names_q = ["sq:QXQYZ:r={r},s={s},t={t}".format(r=r, s=s, t=n)
               for r in (1, 2, 3) for s in (1, 2, 3) for n in (1, 2, 3)]
    dq = _measured(fpd, sq_known, names_q, "Q squares")
    Q2 = _checked_kron_solve((lam_x, lam_y, lam_z), dq,
                             "Q square system", min_det).reshape(3, 3, 3)
    R2 = R2m.T  # [i, j]
    S2 = S2m.T  # [i, k]
    T2 = T2m.T  # [j, k]

    squares = {}
    groups = []
    notes = ["per-row and per-slab sign freedoms are independent; the implemented "
             "invariant set does not couple them"]

    def clamp_mat(mat, what):
        return np.array([[_clamp_square(x, what) for x in row] for row in mat])

    if vec == "a":
        R2c, S2c, Q2c = clamp_mat(R2, "R"), clamp_mat(S2, "S"), None
        Q2c = np.array([clamp_mat(Q2[i], "Q") for i in range(3)])
        WR = _per_s_vander_solve(fpd, sq_known, "sq:XRYb:r={r},s={s}", lam_x4,
                                 min_det, "R row sums")    # [i, s]
        WS = _per_s_vander_solve(fpd, sq_known, "sq:XSZg:r={r},s={s}", lam_x4,
                                 min_det, "S row sums")
        U2 = _per_t_grid_solve(fpd, sq_known, "sq:XZQ2Yb:r={r},s={s},t={t}",
                               lam_x4, lam_z4, min_det, "Q in-column sums")  # [i, k, t]
        U3 = _per_t_grid_solve(fpd, sq_known, "sq:XYQ3Zg:r={r},s={s},t={t}",
                               lam_x4, lam_y4, min_det, "Q in-row sums")     # [i, j, t]
        for i in rows:
            for j in range(3):
                squares[f"R[{i + 1},{j + 1}]^2"] = float(R2c[i, j])
                squares[f"S[{i + 1},{j + 1}]^2"] = float(S2c[i, j])
                for k in range(3):
                    squares[f"Q[{i + 1},{j + 1},{k + 1}]^2"] = float(Q2c[i, j, k])
            P = _row_product_matrix(R2c[i], WR[i], y2, beta, min_det, "R row products")
            vals, zero = _rank1_factor(P, square_floor)
            groups.append(SignGroup(f"R[{i + 1},:]",
                                    {f"R[{i + 1},{j + 1}]": float(v) for j, v in enumerate(vals)},
                                    bool(zero)))
            P = _row_product_matrix(S2c[i], WS[i], z2, gamma, min_det, "S row products")
            vals, zero = _rank1_factor(P, square_floor)
            groups.append(SignGroup(f"S[{i + 1},:]",
                                    {f"S[{i + 1},{j + 1}]": float(v) for j, v in enumerate(vals)},
                                    bool(zero)))
            slab_label = f"Q[{i + 1},:,:]"
            mags = np.sqrt(Q2c[i])
            edges = {}
            for k in range(3):
                P = _row_product_matrix(Q2c[i, :, k], U2[i, k], y2, beta,
                                        min_det, "Q in-column products")
                for (j, jp) in ((0, 1), (0, 2), (1, 2)):
                    edges[((j, k), (jp, k))] = P[j, jp]
            for j in range(3):
                P = _row_product_matrix(Q2c[i, j], U3[i, j], z2, gamma,
                                        min_det, "Q in-row products")
                for (k, kp) in ((0, 1), (0, 2), (1, 2)):
                    edges[((j, k), (j, kp))] = P[k, kp]
            groups.extend(_slab_sign_groups(slab_label, mags, edges, square_floor))
    elif vec == "b":
        R2c = clamp_mat(R2, "R")
        T2c = clamp_mat(T2, "T")
        Q2c = np.array([clamp_mat(Q2[i], "Q") for i in range(3)])
        WR = _per_s_vander_solve(fpd, sq_known, "sq:YRtXa:r={r},s={s}", lam_y4,
                                 min_det, "R column sums")   # [j, s]
        WT = _per_s_vander_solve(fpd, sq_known, "sq:YTZg:r={r},s={s}", lam_y4,
                                 min_det, "T row sums")      # [j, s]
        U1 = _per_t_grid_solve(fpd, sq_known, "sq:YZQ1Xa:r={r},s={s},t={t}",
                               lam_y4, lam_z4, min_det, "Q in-column sums")  # [j, k, t]
        U3 = _per_t_grid_solve(fpd, sq_known, "sq:XYQ3Zg:r={r},s={s},t={t}",
                               lam_x4, lam_y4, min_det, "Q in-row sums")     # [i, j, t]
        for j in rows:
            for i in range(3):
                squares[f"R[{i + 1},{j + 1}]^2"] = float(R2c[i, j])
                squares[f"T[{j + 1},{i + 1}]^2"] = float(T2c[j, i])
                for k in range(3):
                    squares[f"Q[{i + 1},{j + 1},{k + 1}]^2"] = float(Q2c[i, j, k])
            P = _row_product_matrix(R2c[:, j], WR[j], x2, alpha, min_det, "R column products")
            vals, zero = _rank1_factor(P, square_floor)
            groups.append(SignGroup(f"R[:,{j + 1}]",
                                    {f"R[{i + 1},{j + 1}]": float(v) for i, v in enumerate(vals)},
                                    bool(zero)))
            P = _row_product_matrix(T2c[j], WT[j], z2, gamma, min_det, "T row products")
            vals, zero = _rank1_factor(P, square_floor)
            groups.append(SignGroup(f"T[{j + 1},:]",
                                    {f"T[{j + 1},{k + 1}]": float(v) for k, v in enumerate(vals)},
                                    bool(zero)))
            slab_label = f"Q[:,{j + 1},:]"
            mags = np.sqrt(Q2c[:, j, :])
            edges = {}
            for k in range(3):
                P = _row_product_matrix(Q2c[:, j, k], U1[j, k], x2, alpha,
                                        min_det, "Q in-column products")
                for (i, ip) in ((0, 1), (0, 2), (1, 2)):
                    edges[((i, k), (ip, k))] = P[i, ip]
            for i in range(3):
                P = _row_product_matrix(Q2c[i, j], U3[i, j], z2, gamma,
                                        min_det, "Q in-row products")
                for (k, kp) in ((0, 1), (0, 2), (1, 2)):
                    edges[((i, k), (i, kp))] = P[k, kp]
            groups.extend(_slab_sign_groups(slab_label, mags, edges, square_floor))
    else:
        S2c = clamp_mat(S2, "S")
        T2c = clamp_mat(T2, "T")
        Q2c = np.array([clamp_mat(Q2[i], "Q") for i in range(3)])
        WS = _per_s_vander_solve(fpd, sq_known, "sq:ZStXa:r={r},s={s}", lam_z4,
                                 min_det, "S column sums")   # [k, s]
        WT = _per_s_vander_solve(fpd, sq_known, "sq:ZTtYb:r={r},s={s}", lam_z4,
                                 min_det, "T column sums")   # [k, s]
        U1 = _per_t_grid_solve(fpd, sq_known, "sq:YZQ1Xa:r={r},s={s},t={t}",
                               lam_y4, lam_z4, min_det, "Q in-column sums")  # [j, k, t]
        U2 = _per_t_grid_solve(fpd, sq_known, "sq:XZQ2Yb:r={r},s={s},t={t}",
                               lam_x4, lam_z4, min_det, "Q in-row sums")     # [i, k, t]
        for k in rows:
            for i in range(3):
                squares[f"S[{i + 1},{k + 1}]^2"] = float(S2c[i, k])
                squares[f"T[{i + 1},{k + 1}]^2"] = float(T2c[i, k])
                for j in range(3):
                    squares[f"Q[{i + 1},{j + 1},{k + 1}]^2"] = float(Q2c[i, j, k])
            P = _row_product_matrix(S2c[:, k], WS[k], x2, alpha, min_det, "S column products")
            vals, zero = _rank1_factor(P, square_floor)
            groups.append(SignGroup(f"S[:,{k + 1}]",
                                    {f"S[{i + 1},{k + 1}]": float(v) for i, v in enumerate(vals)},
                                    bool(zero)))
            P = _row_product_matrix(T2c[:, k], WT[k], y2, beta, min_det, "T column products")
            vals, zero = _rank1_factor(P, square_floor)
            groups.append(SignGroup(f"T[:,{k + 1}]",
                                    {f"T[{j + 1},{k + 1}]": float(v) for j, v in enumerate(vals)},
                                    bool(zero)))
            slab_label = f"Q[:,:,{k + 1}]"
            mags = np.sqrt(Q2c[:, :, k])
            edges = {}
            for j in range(3):
                P = _row_product_matrix(Q2c[:, j, k], U1[j, k], x2, alpha,
                                        min_det, "Q in-column products")
                for (i, ip) in ((0, 1), (0, 2), (1, 2)):
                    edges[((i, j), (ip, j))] = P[i, ip]
            for i in range(3):
                P = _row_product_matrix(Q2c[i, :, k], U2[i, k], y2, beta,
                                        min_det, "Q in-row products")
                for (j, jp) in ((0, 1), (0, 2), (1, 2)):
                    edges[((i, j), (i, jp))] = P[j, jp]
            groups.extend(_slab_sign_groups(slab_label, mags, edges, square_floor))

    return TwoZeroRecovery("same-vector", squares, groups, notes)


def recover_two_zero(fp, cf, min_det=MIN_DET, den_tol=1e-9, square_floor=1e-8):
    """Recover the components a two-zero canonical form leaves undetermined.

    Different vectors: one coupling entry and one fiber of Q, magnitudes from
    the squared family and signs from the sign-resolution invariants when
    those are nonzero (zeros in alpha and beta; other pairs report magnitudes).
    Same vector: two rows/columns of two coupling matrices and two slabs of
    Q, each up to the per-row and per-component sign freedoms reported in
    the returned groups.
    """
    cls = cf.orbit_class
    if cls.kind == "two-zero-diff":
        return _recover_diff(fp, cf, min_det, den_tol, square_floor)
    if cls.kind == "two-zero-same":
        return _recover_same(fp, cf, min_det, square_floor)
    raise WrongClassError(f"expected a two-zero class, got {cls.tag}")
