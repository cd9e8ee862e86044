"""Arbitrary-precision reference values for the hyperfns test suite.

Writes fixtures/<suite>.json. Every value is computed with mpmath at a
working precision well above the recorded digits, and the run aborts if an
internal cross-check disagrees.

    python3 tools/fixture_oracle/generate.py [--out fixtures]
"""

import argparse
import json
import os

import mpmath as mp

DIGITS = 50
WORK_DPS = 80


def s(x):
    return mp.nstr(mp.mpf(x), DIGITS, strip_zeros=False, min_fixed=-mp.inf, max_fixed=mp.inf)


def cx(z):
    z = mp.mpc(z)
    return {"re": s(z.real), "im": s(z.imag)}


def record(case_id, inputs, expected, ref, digits=DIGITS):
    enc = {}
    for k, v in inputs.items():
        if isinstance(v, (list, tuple)):
            enc[k] = [cx(x) for x in v]
        elif isinstance(v, str):
            enc[k] = v
        elif isinstance(v, int):
            enc[k] = str(v)
        elif isinstance(v, mp.mpc) or isinstance(v, complex):
            enc[k] = cx(v)
        else:
            enc[k] = s(v)
    return {
        "case_id": case_id,
        "inputs": enc,
        "expected": cx(expected),
        "digits": digits,
        "formula_ref": ref,
    }


def check(a, b, digits, what):
    a, b = mp.mpc(a), mp.mpc(b)
    scale = max(abs(a), abs(b))
    diff = abs(a - b)
    if diff > mp.mpf(10) ** (-digits) * scale and diff > mp.mpf(10) ** (-(mp.mp.dps - 10)):
        raise SystemExit(f"self-check failed for {what}: {a} vs {b}")


# ---- kernels -------------------------------------------------------------

def rho(p, q):
    return mp.mpf(p + q - 2) / 2


def params(p, q, k, l, lam):
    r = rho(p, q)
    a = (lam + r + k + l) / 2
    b = (-lam + r + k + l) / 2
    c = mp.mpf(q) / 2 + l
    return a, b, c


def eisenstein(p, q, k, l, lam, t):
    a, b, c = params(p, q, k, l, lam)
    pref = mp.power(2, lam - rho(p, q)) * mp.gamma(a) * mp.gamma(c - b) * mp.rgamma(lam) / mp.gamma(c)
    return pref * mp.cosh(t) ** k * mp.sinh(t) ** l * mp.hyp2f1(a, b, c, -mp.sinh(t) ** 2)


def c_function(p, q, k, l, lam):
    a, b, c = params(p, q, k, l, lam)
    g = mp.gamma
    return mp.power(2, 2 * lam) * g(a) * g(c - b) * g(-lam) / (g(b) * g(c - a) * g(lam))


def weights(p, q, k, l, n):
    """Recursion weights by powers of e^{-t}; odd entries vanish."""
    w = [mp.mpf(0)] * (n + 1)
    kk, ll = k * (k + p - 2), l * (l + q - 2)
    for j in range(1, n // 2 + 1):
        d = ((q - 1) * (q - 3) + (-1) ** j * (p - 1) * (p - 3)) * j
        cosh_term = 4 * (-1) ** j * j  # -sech^2 t = sum 4(-1)^j j e^{-2jt}
        sinh_term = 4 * j              # csch^2 t = sum 4 j e^{-2jt}
        w[2 * j] = d + kk * cosh_term + ll * sinh_term
    return w


def gamma_tilde(p, q, k, l, lam, n):
    w = weights(p, q, k, l, n)
    g = [mp.mpc(1)] + [mp.mpc(0)] * n
    for m in range(1, n + 1):
        g[m] = sum(w[j] * g[m - j] for j in range(1, m + 1)) / (m * (m - 2 * lam))
    return g


def b_coeffs(p, q, n):
    """Taylor coefficients in e^{-t} of e^{rho t} 2^{-rho} J(t)^{-1/2}."""
    al, be = mp.mpf(p - 1) / 2, mp.mpf(q - 1) / 2
    b = [mp.mpf(0)] * (n + 1)
    for j in range(n // 2 + 1):
        b[2 * j] = sum(mp.binomial(-al, i) * mp.binomial(-be, j - i) * (-1) ** (j - i) for i in range(j + 1))
    return b


def b_coeffs_taylor(p, q, n):
    """Same coefficients from a direct Taylor expansion, for the self-check."""
    r = rho(p, q)
    f = lambda x: (1 + x * x) ** (-mp.mpf(p - 1) / 2) * (1 - x * x) ** (-mp.mpf(q - 1) / 2)
    return mp.taylor(f, 0, n)


def gamma_full(p, q, k, l, lam, n):
    gt = gamma_tilde(p, q, k, l, lam, n)
    b = b_coeffs(p, q, n)
    return [sum(b[i] * gt[m - i] for i in range(m + 1)) for m in range(n + 1)]


def phi(p, q, k, l, lam, t, n=400):
    g = gamma_full(p, q, k, l, lam, n)
    x = mp.exp(-t)
    return mp.exp((lam - rho(p, q)) * t) * mp.fsum(g[m] * x ** m for m in range(n + 1))


def p_r(p, q, big_r, lam):
    r = rho(p, q)
    out = mp.mpc(1)
    for j in range(int(mp.floor(big_r)) + 1):
        out *= (lam + r + 2 * j) * (lam - r + q + 2 * j)
    return out


def jacobian(p, q, t):
    return mp.cosh(t) ** (p - 1) * mp.sinh(t) ** (q - 1)


def smooth_bump(a, b):
    return lambda t: mp.exp(-1 / ((t - a) * (b - t))) if a < t < b else mp.mpf(0)


def poly_bump(a, b):
    return lambda t: 4 * (t - a) * (b - t) / (b - a) ** 2 if a < t < b else mp.mpf(0)


def hyp2f1_inversion(a, b, c, z):
    """Connection formula around infinity, summed term by term."""
    g = mp.gamma
    w = 1 / z
    t1 = g(c) * g(b - a) / (g(b) * g(c - a)) * (-z) ** (-a) * mp.hyp2f1(a, a - c + 1, a - b + 1, w)
    t2 = g(c) * g(a - b) / (g(a) * g(c - b)) * (-z) ** (-b) * mp.hyp2f1(b, b - c + 1, b - a + 1, w)
    return t1 + t2


def hyp2f1_series(a, b, c, z):
    term, total, n = mp.mpc(1), mp.mpc(1), 0
    while True:
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        n += 1
        if abs(term) < mp.mpf(10) ** (-WORK_DPS) * abs(total) and n > 10:
            return total


# ---- suites --------------------------------------------------------------

def suite_specfun():
    out = []
    for case, z in [
        ("log_gamma.half_plus_i", mp.mpc("0.5", "1")),
        ("log_gamma.left_half_plane", mp.mpc("-2.5", "0.3")),
        ("log_gamma.large_argument", mp.mpc("30", "40")),
    ]:
        out.append(record(case, {"z": z}, mp.loggamma(z), "principal log Gamma"))

    cases = [
        ("hyp2f1.inversion_region", "1.25", "0.5", "0.25", "-0.5", "1.5", "-10"),
        ("hyp2f1.pfaff_region", "0.75", "1.5", "2.0", "-0.25", "2.5", "-1.5"),
        ("hyp2f1.series_region", "1.5", "2.0", "-0.5", "0.75", "0.5", "-0.3"),
    ]
    for case, ar, ai, br, bi, c, z in cases:
        a, b, c, z = mp.mpc(ar, ai), mp.mpc(br, bi), mp.mpf(c), mp.mpf(z)
        v = mp.hyp2f1(a, b, c, z)
        if z < -1:
            check(v, hyp2f1_inversion(a, b, c, z), 40, case)
        else:
            check(v, hyp2f1_series(a, b, c, z), 40, case)
        out.append(record(case, {"a": a, "b": b, "c": c, "z": z}, v, "Gauss hypergeometric function"))

    lam = mp.mpc("0.8", "1.1")
    cf = c_function(4, 3, 0, 0, lam)
    check(cf * c_function(4, 3, 0, 0, -lam), 1, 40, "c(λ)c(−λ)")
    out.append(record("c_function.p4_q3", {"p": 4, "q": 3, "lambda": lam}, cf, "c-function Gamma ratio"))
    lam = mp.mpc("0.4", "0.9")
    out.append(record("c_function.p5_q3_k2_l1", {"p": 5, "q": 3, "k": 2, "l": 1, "lambda": lam},
                      c_function(5, 3, 2, 1, lam), "K-type c-function Gamma ratio"))
    return out


def suite_hcseries():
    out = []
    b = b_coeffs(3, 3, 12)
    tay = b_coeffs_taylor(3, 3, 12)
    for i in range(13):
        check(b[i], tay[i], 40, f"b_{i}")
    for m in (2, 4, 6):
        out.append(record(f"b_coeff.p3_q3_m{m}", {"p": 3, "q": 3, "m": m}, b[m], "Jacobian expansion coefficients"))
    b = b_coeffs(5, 2, 10)
    out.append(record("b_coeff.p5_q2_m10", {"p": 5, "q": 2, "m": 10}, b[10], "Jacobian expansion coefficients"))

    lam = mp.mpc("0.7", "0.3")
    gt = gamma_tilde(3, 2, 0, 0, lam, 12)
    gf = gamma_full(3, 2, 0, 0, lam, 12)
    for m in (2, 4, 5, 6, 12):
        out.append(record(f"gamma_tilde.p3_q2_m{m:02}", {"p": 3, "q": 2, "lambda": lam, "m": m}, gt[m],
                          "series coefficient recursion"))
        out.append(record(f"gamma_coeff.p3_q2_m{m:02}", {"p": 3, "q": 2, "lambda": lam, "m": m}, gf[m],
                          "series coefficient recursion with Jacobian factor"))
    lam = mp.mpc("0.4", "0.9")
    gf = gamma_full(5, 3, 2, 1, lam, 8)
    out.append(record("gamma_coeff.p5_q3_k2_l1_m08", {"p": 5, "q": 3, "k": 2, "l": 1, "lambda": lam, "m": 8},
                      gf[8], "K-type series coefficient recursion"))

    # Partial sum of the expansion of -sech^2 at t = 1 through e^{-60t}.
    x = mp.exp(-1)
    part = mp.fsum(4 * (-1) ** j * j * x ** (2 * j) for j in range(1, 31))
    check(part, -1 / mp.cosh(1) ** 2, 20, "sech^2 expansion")
    out.append(record("cosh_expansion.t1_n60", {"t": 1, "n_max": 60}, part, "expansion of sech^2 in e^{-t}"))

    for case, p, q, k, l, lam, t in [
        ("phi_series.p3_q2", 3, 2, 0, 0, mp.mpc(1, 1), mp.mpf("1.5")),
        ("phi_series.p5_q3_k2_l1", 5, 3, 2, 1, mp.mpc("0.4", "0.9"), mp.mpf("1.2")),
    ]:
        v = phi(p, q, k, l, lam, t)
        check(v, phi(p, q, k, l, lam, t, 600), 45, case)
        out.append(record(case, {"p": p, "q": q, "k": k, "l": l, "lambda": lam, "t": t}, v,
                          "Harish-Chandra series"))
    return out


def suite_eisenstein():
    out = []
    closed_cases = [
        ("eisenstein_closed.p3_q2", 3, 2, 0, 0, mp.mpc(1, "0.5"), mp.mpf(1)),
        ("eisenstein_closed.p5_q3_k2_l1", 5, 3, 2, 1, mp.mpc("0.7", "0.4"), mp.mpf("1.3")),
        ("eisenstein.p3_q2_large_lambda", 3, 2, 0, 0, mp.mpc("0.5", "30"), mp.mpf(1)),
        ("eisenstein_series.p5_q3", 5, 3, 0, 0, mp.mpc("0.4", "0.9"), mp.mpf(2)),
    ]
    for case, p, q, k, l, lam, t in closed_cases:
        v = eisenstein(p, q, k, l, lam, t)
        if t >= 1 and abs(lam) < 5:
            dual = phi(p, q, k, l, lam, t) + c_function(p, q, k, l, lam) * phi(p, q, k, l, -lam, t)
            check(v, dual, 40, case)
        out.append(record(case, {"p": p, "q": q, "k": k, "l": l, "lambda": lam, "t": t, "eta": [1], "w": "+"},
                          v, "normalized Eisenstein integral"))

    # q = 1: two orbits, E°_w(λ, η) = η_w E°(λ).
    lam, t, eta = mp.mpc("0.3", "0.8"), mp.mpf("0.7"), [mp.mpc(1, 0), mp.mpc(2, -1)]
    out.append(record("eisenstein_closed.p4_q1_minus", {"p": 4, "q": 1, "k": 0, "l": 0, "lambda": lam, "t": t,
                                                        "eta": eta, "w": "-"},
                      eta[1] * eisenstein(4, 1, 0, 0, lam, t), "normalized Eisenstein integral"))

    # Regularized value at a pole of E°: limit of p_R(λ)E°(λ) as λ → 1.
    p, q, big_r, lam0, t = 7, 3, mp.mpf(2), mp.mpf(1), mp.mpf("1.5")
    f = lambda lam: p_r(p, q, big_r, lam) * eisenstein(p, q, 0, 0, lam, t)
    eps = mp.mpf(10) ** -30
    lim = (f(lam0 + eps) + f(lam0 - eps)) / 2
    check(lim, (f(lam0 + 2 * eps) + f(lam0 - 2 * eps)) / 2, 45, "regularized limit")
    out.append(record("eisenstein_regularized.p7_q3_at_pole", {"p": p, "q": q, "R": big_r, "lambda0": mp.mpc(lam0),
                                                               "t": t, "eta": [1], "w": "+"},
                      lim, "regularized Eisenstein integral"))
    lam0 = mp.mpc("0.7", "0.4")
    out.append(record("eisenstein_regularized.p3_q2_off_pole", {"p": 3, "q": 2, "R": 3, "lambda0": lam0,
                                                                "t": mp.mpf("1.2"), "eta": [1], "w": "+"},
                      p_r(3, 2, 3, lam0) * eisenstein(3, 2, 0, 0, lam0, mp.mpf("1.2")),
                      "regularized Eisenstein integral"))
    return out


def suite_fourier():
    out = []
    mp.mp.dps = 45
    cases = [
        ("fourier_transform.p3_q2_smooth_bump", 3, 2, 0, 0, "smooth_bump", 1, 2, mp.mpc("0.5", "2")),
        ("fourier_transform.p3_q2_polynomial_bump", 3, 2, 0, 0, "polynomial_bump", mp.mpf("0.5"), 2, mp.mpc(0, 1)),
        ("fourier_transform.p5_q3_k1_l0_smooth_bump", 5, 3, 1, 0, "smooth_bump", 1, 2, mp.mpc("0.3", "1")),
    ]
    for case, p, q, k, l, kind, a, b, lam in cases:
        prof = smooth_bump(a, b) if kind == "smooth_bump" else poly_bump(a, b)
        g = lambda t: prof(t) * eisenstein(p, q, k, l, -lam, t) * jacobian(p, q, t)
        mid = (mp.mpf(a) + b) / 2
        v = mp.quad(g, [a, mid, b])
        check(v, mp.quad(g, [a, (a + mid) / 2, mid, (mid + b) / 2, b]), 35, case)
        out.append(record(case, {"p": p, "q": q, "k": k, "l": l, "profile": kind, "a": a, "b": b, "lambda": lam,
                                 "eta": [1]},
                          v, "spherical Fourier transform", digits=35))
    mp.mp.dps = WORK_DPS
    return out


SUITES = {
    "specfun": suite_specfun,
    "hcseries": suite_hcseries,
    "eisenstein": suite_eisenstein,
    "fourier": suite_fourier,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=os.path.normpath(os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "..", "fixtures")))
    ap.add_argument("suites", nargs="*", default=sorted(SUITES))
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for name in args.suites:
        mp.mp.dps = WORK_DPS
        records = sorted(SUITES[name](), key=lambda r: r["case_id"])
        path = os.path.join(args.out, f"{name}.json")
        with open(path, "w") as fh:
            json.dump({"suite": name, "records": records}, fh, indent=1, sort_keys=True)
            fh.write("\n")
        print(f"{path}: {len(records)} records")


if __name__ == "__main__":
    main()
