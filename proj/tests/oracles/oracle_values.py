"""Independent evaluations behind the frozen constants in the C++ tests.

Closed forms use mpmath at 30 digits. Constrained discrete RDFs are solved as
a convex program over the joint P(x, xhat) with cvxpy, which shares no code
with the Blahut-Arimoto solver. Run: python3 tests/oracles/oracle_values.py
"""

import itertools

import cvxpy as cp
import mpmath as mp
import numpy as np

mp.mp.dps = 30
LN2 = mp.log(2)


def hb(p):
    p = mp.mpf(p)
    if p in (0, 1):
        return mp.mpf(0)
    return -(p * mp.log(p) + (1 - p) * mp.log(1 - p)) / LN2


def star(a, b):
    a, b = mp.mpf(a), mp.mpf(b)
    return a * (1 - b) + (1 - a) * b


def log2(x):
    return mp.log(x) / LN2


def closed_forms():
    P_s, P_u, P_su = mp.mpf("0.7"), mp.mpf(1), mp.mpf("0.6")
    P, N1, N2 = mp.mpf(1), mp.mpf("0.1"), mp.mpf("0.4")
    N = N1 + N2
    det = P_s * P_u - P_su**2
    rho2 = P_su**2 / (P_s * P_u)
    two_pi_e = 2 * mp.pi * mp.e
    out = {}
    out["hb(0.1)"] = hb("0.1")
    out["hb(0.25)"] = hb("0.25")
    out["star(0.1,0.3)"] = star("0.1", "0.3")
    out["bsc secrecy"] = hb(star("0.1", "0.3")) - hb("0.1")
    out["bsc capacity"] = 1 - hb("0.1")
    out["C_main"] = log2(1 + P / N1) / 2
    out["C_s(1)"] = (log2(1 + P / N1) - log2(1 + P / N)) / 2
    out["I(X;Z)"] = log2(1 + P / N) / 2
    out["case1 floor"] = (1 - rho2) * P_s
    out["h(S)"] = log2(two_pi_e * P_s) / 2
    out["h(S,U)"] = log2(two_pi_e**2 * det) / 2
    out["R_u(0.6)"] = log2(P_u / mp.mpf("0.6")) / 2
    out["R_s case2 (0.5)"] = log2(P_s / mp.mpf("0.5")) / 2
    out["R_s case1 (0.5)"] = log2(rho2 * P_s / (mp.mpf("0.5") - P_s * (1 - rho2))) / 2
    Ds, Du = mp.mpf("0.5"), mp.mpf("0.6")
    hs, hu = P_s - Ds, P_u - Du
    corr = (mp.sqrt(P_su**2) - mp.sqrt(hs * hu)) ** 2
    joint2 = log2(det / (Ds * Du - corr)) / 2
    out["joint case2 (0.5,0.6)"] = joint2
    out["min r none"] = joint2 / out["C_main"]
    out["min r semantic"] = max(out["min r none"], out["R_s case2 (0.5)"] / out["C_s(1)"])
    out["Delta_s cap case2 r=1"] = out["C_s(1)"] + out["h(S)"] - out["R_s case2 (0.5)"]
    out["R_s,i binary (0.3)"] = 1 - hb("0.1")
    out["binary obs (0.25,0.1)"] = hb("0.25") - hb("0.1")
    out["binary Delta_s max"] = out["bsc secrecy"] + 1 - out["R_s,i binary (0.3)"]
    out["binary min r none"] = out["R_s,i binary (0.3)"] / out["bsc capacity"]
    out["binary min r full"] = out["R_s,i binary (0.3)"] / out["bsc secrecy"]
    return out


def rdf_convex(p, dists, targets):
    """min I(X;Xhat) s.t. E d_k <= D_k, over the joint J(x, xhat)."""
    p = np.asarray(p, dtype=float)
    n, m = dists[0].shape
    J = cp.Variable((n, m), nonneg=True)
    q = cp.sum(J, axis=0)
    outer = cp.reshape(p, (n, 1), order="C") @ cp.reshape(q, (1, m), order="C")
    mi = cp.sum(cp.rel_entr(J, outer)) / np.log(2)
    cons = [cp.sum(J, axis=1) == p]
    cons += [cp.sum(cp.multiply(d, J)) <= t for d, t in zip(dists, targets)]
    prob = cp.Problem(cp.Minimize(mi), cons)
    prob.solve(solver=cp.CLARABEL)
    return max(prob.value, 0.0)


def hamming_pair():
    # Reconstruction (shat, uhat) in {0,1}^2; source (s, u) in {0,1}^2.
    pairs = list(itertools.product(range(2), range(2)))
    ds = np.array([[float(s != a) for a, _ in pairs] for s, _ in pairs])
    du = np.array([[float(u != b) for _, b in pairs] for _, u in pairs])
    return ds, du


def dsbs(alpha):
    a = float(alpha)
    return np.array([[(1 - a) / 2, a / 2], [a / 2, (1 - a) / 2]])


def semantic_case2(joint, D_s, D_u):
    ds, du = hamming_pair()
    return rdf_convex(joint.reshape(-1), [ds, du], [D_s, D_u])


def semantic_case1(joint, D_s, D_u):
    pu = joint.sum(axis=0)
    ps_u = joint / pu
    pairs = list(itertools.product(range(2), range(2)))
    dhat = np.array([[ps_u[1 - a, u] for a, _ in pairs] for u in range(2)])
    du = np.array([[float(u != b) for _, b in pairs] for u in range(2)])
    return rdf_convex(pu, [dhat, du], [D_s, D_u])


def discrete():
    out = {}
    j = dsbs(0.25)
    out["case1 dsbs25 (0.3,0.25)"] = semantic_case1(j, 0.3, 0.25)
    out["case2 dsbs25 (0.3,0.25)"] = semantic_case2(j, 0.3, 0.25)
    out["case2 dsbs25 (0.5,0.25)"] = semantic_case2(j, 0.5, 0.25)
    out["case2 dsbs10 (0.2,0.05)"] = semantic_case2(dsbs(0.1), 0.2, 0.05)
    asym = np.array([[0.4, 0.1], [0.2, 0.3]])
    out["case1 asym (0.3,0.2)"] = semantic_case1(asym, 0.3, 0.2)
    out["case2 asym (0.25,0.15)"] = semantic_case2(asym, 0.25, 0.15)
    out["classic B(0.25) D=0.1"] = rdf_convex(
        [0.75, 0.25], [np.array([[0.0, 1.0], [1.0, 0.0]])], [0.1]
    )
    return out


if __name__ == "__main__":
    for k, v in closed_forms().items():
        print(f"{k:28s} {mp.nstr(v, 15)}")
    for k, v in discrete().items():
        print(f"{k:28s} {v:.10f}")
