"""Writes inner_oracle.json: random linearized problems solved with cvxpy.

Each instance is min ||I0||_* + lam ||E||_1  s.t.  D + J(dtau) = I0 + E,
A dtau = 0, with J(dtau) the column-major reshape of J @ dtau.
"""
import json
import pathlib

import cvxpy as cp
import numpy as np

M = N = 20
P = 6
COUNT = 20


def instance(rng):
    u = rng.standard_normal((M, 2))
    v = rng.standard_normal((N, 2))
    low = u @ v.T
    sparse = np.where(rng.random((M, N)) < 0.1, rng.standard_normal((M, N)) * 3.0, 0.0)
    d = low + sparse + 0.01 * rng.standard_normal((M, N))
    d /= np.linalg.norm(d)
    jac = rng.standard_normal((M * N, P)) * 0.05
    a_eq = rng.standard_normal((4, P))
    return d, jac, a_eq


def solve(d, jac, a_eq, lam):
    i0 = cp.Variable((M, N))
    e = cp.Variable((M, N))
    dtau = cp.Variable(P)
    step = cp.reshape(jac @ dtau, (M, N), order="F")
    prob = cp.Problem(cp.Minimize(cp.normNuc(i0) + lam * cp.sum(cp.abs(e))),
                      [d + step == i0 + e, a_eq @ dtau == 0])
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-10, tol_gap_rel=1e-10, tol_feas=1e-10)
    return prob.value


def main():
    rng = np.random.default_rng(20100917)
    lam = 1.0 / np.sqrt(max(M, N))
    out = []
    for _ in range(COUNT):
        d, jac, a_eq = instance(rng)
        out.append({"D": d.tolist(), "J": jac.tolist(), "A_eq": a_eq.tolist(), "lambda": lam,
                    "objective": solve(d, jac, a_eq, lam)})
    path = pathlib.Path(__file__).with_name("inner_oracle.json")
    path.write_text(json.dumps({"rows": M, "cols": N, "instances": out}))


if __name__ == "__main__":
    main()
