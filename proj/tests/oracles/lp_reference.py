"""Reference optima of the revenue-maximising BIC/BIR mechanism LP.

Built independently of the C++ solver: payments are interim variables,
allocations enter BIC through their row/column means directly (no interim
allocation variables), and the problem goes to scipy's HiGHS backend.
"""
import numpy as np
from scipy.optimize import brentq, linprog
from scipy.sparse import coo_matrix


def solve_a(mu):
    return brentq(lambda a: a * (1 - np.log(a)) - mu, 1e-15, 1 - 1e-15,
                  xtol=1e-16, rtol=1e-15)


def lp(n, mu=0.5, adjacent=False):
    a = solve_a(mu)
    z = (np.arange(n) + 0.5) / n
    s = np.where(z < 1 - a, a / (1 - z), 1.0)
    nq = n * n
    size = 2 * nq + 2 * n

    def qi(i, j, k):
        return i * nq + j * n + k

    def ti(i, j):
        return 2 * nq + i * n + j

    rows, cols, vals, ub = [], [], [], []
    r = 0
    for i in range(2):
        for j in range(n):
            for jp in range(n):
                if j == jp or (adjacent and abs(j - jp) != 1):
                    continue
                for k in range(n):
                    own, other = (qi(0, j, k), qi(0, jp, k)) if i == 0 else (qi(1, k, j), qi(1, k, jp))
                    rows += [r, r]
                    cols += [own, other]
                    vals += [-s[j] / n, s[j] / n]
                rows += [r, r]
                cols += [ti(i, j), ti(i, jp)]
                vals += [1, -1]
                ub.append(0)
                r += 1
            for k in range(n):
                rows.append(r)
                cols.append(qi(0, j, k) if i == 0 else qi(1, k, j))
                vals.append(-s[j] / n)
            rows.append(r)
            cols.append(ti(i, j))
            vals.append(1)
            ub.append(0)
            r += 1
    for j in range(n):
        for k in range(n):
            rows += [r, r]
            cols += [qi(0, j, k), qi(1, j, k)]
            vals += [1, 1]
            ub.append(1)
            r += 1
    g = coo_matrix((vals, (rows, cols)), shape=(r, size)).tocsr()
    cost = np.zeros(size)
    cost[2 * nq:] = -1.0 / n
    bounds = [(0, 1)] * (2 * nq) + [(None, None)] * (2 * n)
    res = linprog(cost, A_ub=g, b_ub=np.array(ub), bounds=bounds, method="highs")
    return -res.fun, 2 * a - a * a


if __name__ == "__main__":
    for n in [10, 25, 50, 100]:
        v, bound = lp(n)
        print("mu=0.5 n", n, repr(v), "gap", v - bound)
    for mu in [0.1, 0.3, 0.75, 0.9]:
        v, bound = lp(50, mu)
        print("mu", mu, "n=50", repr(v), "gap", v - bound)
    print("adjacent mu=0.5 n=25", repr(lp(25, adjacent=True)[0]))
