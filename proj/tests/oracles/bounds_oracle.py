#!/usr/bin/env python3
"""Independent recomputation of the effective bounds using only exact
integer/rational comparisons (Python ints and fractions).

Run without arguments to print the frozen values used by the C++ tests.
Run with --check <path-to-finmono> to compare against the CLI output.
"""
import json
import subprocess
import sys
from fractions import Fraction
from math import comb, gcd


def floor_two_log_plus(q, y):
    y = Fraction(y)
    if y <= 1:
        return 0
    y2 = y * y
    k, acc = 0, Fraction(1)
    while acc * q <= y2:
        acc *= q
        k += 1
    return k


def phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def lcm(a, b):
    return a * b // gcd(a, b)


def m_lcm_bruteforce(c, r):
    # lcm over every n with [Q(zeta_lcm(n,c)):Q(zeta_c)] <= r; n is bounded
    # because phi(n) <= r * phi(c) is necessary.
    bound = 1
    while True:
        bound += 1
        if bound > 4 * (r * phi(c)) ** 2 + 10:
            break
    out = 1
    for n in range(1, bound):
        if phi(lcm(n, c)) // phi(c) <= r:
            out = lcm(out, n)
    return out


def adams_even_rank(r, m):
    return sum(comb(r + m - i - 1, m) * comb(m - 1, i) for i in range(0, r, 2))


def a_constant(n):
    fact = 1
    for i in range(2, n + 3):
        fact *= i
    return Fraction(2 ** 17, 81) * Fraction(3794, 1000) * 13 ** n * fact


def n_traces_curve(r, q, b1, alpha):
    return 2 * r + floor_two_log_plus(q, 2 * r * r * (b1 + Fraction(alpha)))


def n_traces_general(r, q, n, c):
    return 2 * r + floor_two_log_plus(q, 2 * a_constant(n) * c * c)


def n_eigen_curve(r, q, cond, b1, e):
    m = m_lcm_bruteforce(cond, r)
    rr = adams_even_rank(r, m)
    return m, rr, 2 * rr + floor_two_log_plus(q, 2 * rr * rr * (b1 + Fraction(e)))


def n_eigen_general(r, q, cond, n, c, cx):
    m = m_lcm_bruteforce(cond, r)
    rr = adams_even_rank(r, m)
    a = a_constant(n)
    y = 2 * a * (a ** (m - 1) * c ** m + r * cx) ** 2
    return m, rr, 2 * rr + floor_two_log_plus(q, y)


def multiplier(r, f, p):
    a = 0
    while p ** (a + 1) <= r:
        a += 1
    inner = Fraction(r * f, p - 1) * (1 - Fraction(1, p ** a))
    return r * (1 + (inner.numerator // inner.denominator))


def frozen():
    out = {}
    for n in (3, 4, 5):
        m, rr, nn = n_eigen_curve(n - 1, 2, 2, 0, Fraction(1, n - 1))
        out[f"as_p2_n{n}"] = {"M": m, "R": rr, "N_eigen": nn,
                              "N_integral": multiplier(n - 1, 1, 2) * nn}
    out["hyp_p2_m3_a2_b1"] = dict(zip(("M", "R", "N_eigen"),
                                      n_eigen_curve(2, 2, 6, 1, Fraction(1, 1))))
    out["hyp_p2_m5_a2_b1"] = dict(zip(("M", "R", "N_eigen"),
                                      n_eigen_curve(2, 2, 10, 1, Fraction(1, 1))))
    out["n_traces_general_r2_q2_n1_C1"] = n_traces_general(2, 2, 1, 1)
    out["n_traces_general_r1_q2_n0_C1"] = n_traces_general(1, 2, 0, 1)
    out["n_traces_curve_r1_q4_b0_e1"] = n_traces_curve(1, 4, 0, 1)
    out["a_constant_0"] = str(a_constant(0))
    out["a_constant_1"] = str(a_constant(1))
    out["m_lcm_Q"] = [m_lcm_bruteforce(1, r) for r in range(1, 13)]
    out["n_eigen_general_r1_q2_n0_C1_cx1"] = n_eigen_general(1, 2, 1, 0, 1, 1)
    out["n_eigen_general_r2_q3_n1_C2_cx3"] = n_eigen_general(2, 3, 1, 1, 2, 3)
    return out


def check(binary):
    ok = True
    for n in (3, 4, 5):
        res = subprocess.run([binary, "bound", "--family", "as", "--p", "2",
                              "--nvar", str(n), "--criterion", "eigen"],
                             capture_output=True, text=True, check=True)
        rep = json.loads(res.stdout)
        m, rr, nn = n_eigen_curve(n - 1, 2, 2, 0, Fraction(1, n - 1))
        got = (int(rep["M"]), int(rep["R"]), int(rep["N"]))
        if got != (m, rr, nn):
            print(f"mismatch n={n}: {got} vs {(m, rr, nn)}")
            ok = False
    res = subprocess.run([binary, "bound", "--family", "as", "--p", "2",
                          "--nvar", "3", "--criterion", "trace"],
                         capture_output=True, text=True, check=True)
    rep = json.loads(res.stdout)
    want = multiplier(2, 1, 2) * n_eigen_curve(2, 2, 2, 0, Fraction(1, 2))[2]
    if int(rep["N"]) != want:
        print(f"mismatch trace bound: {rep['N']} vs {want}")
        ok = False
    print("oracle check", "passed" if ok else "FAILED")
    return 0 if ok else 1


if __name__ == "__main__":
    if len(sys.argv) == 3 and sys.argv[1] == "--check":
        sys.exit(check(sys.argv[2]))
    print(json.dumps(frozen(), indent=1))
