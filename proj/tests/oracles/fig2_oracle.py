#!/usr/bin/env python3
"""Arbitrary-precision reference values frozen into the unit tests.

Independent of the C++ code path: parameters are rebuilt from SI inputs,
the steady-state cubic is solved with mpmath.polyroots, and every
coefficient is evaluated at 50 significant digits.

    python3 tests/oracles/fig2_oracle.py
"""
from mpmath import mp, mpf, mpc, pi, sqrt, atan, exp, polyroots, matrix, eig, re, im, fabs

mp.dps = 50

HBAR = mpf("1.054571817e-34")


def fig2():
    kappa = mpf("5e5")
    p = dict(
        m=mpf("100e-12"),
        kappa=kappa,
        Omega=40 * pi * kappa,
        gamma=mpf("0.06") * kappa,
        omegaD=2 * pi * mpf("282e12"),
        L=mpf("1e-2"),
        P=mpf("500e-6"),
    )
    p["omega0"] = p["omegaD"]
    return p


def reduced(p):
    g = p["omega0"] / p["L"]
    chi = HBAR * g**2 / (2 * p["m"] * p["Omega"] ** 2)
    lam = sqrt(2 * p["P"] * p["kappa"] / (HBAR * p["omegaD"]))
    ell = sqrt(HBAR / (p["m"] * p["kappa"]))
    k = p["kappa"]
    return dict(g=g, chi=chi, lam=lam,
                Delta=(p["omega0"] - p["omegaD"]) / k, Omega=p["Omega"] / k,
                gammar=p["gamma"] / k, chir=chi / k, lamr=lam / k, gr=g * ell / k)


def real_roots(dp, chi, lam):
    # lam^2 = I ((dp - 2 chi I)^2 + 1)
    k = 2 * chi
    coeffs = [k * k, -2 * dp * k, dp * dp + 1, -lam * lam]
    out = []
    for z in polyroots(coeffs, maxsteps=200, extraprec=200):
        z = mpc(z)
        if fabs(im(z)) < mpf("1e-30") * max(1, fabs(z)) and re(z) >= 0:
            out.append(re(z))
    return sorted(out)


def drift_eigs(dp, chi, alpha):
    I = fabs(alpha) ** 2
    b = 2 * chi * alpha**2
    s = dp - 4 * chi * I
    m = matrix([[mpc(1, s), mpc(0, -1) * b], [mpc(0, 1) * b.conjugate(), mpc(1, -s)]])
    ev, _ = eig(m)
    return ev


def coeffs(r, Delta, omega, model="bo", xs="literal"):
    chi, lam = r["chir"], r["lamr"]
    if model == "bo" or xs == "bo-matched":
        base, slope = Delta - chi, 0
    else:
        base, slope = Delta, r["gr"] * chi
    k = 2 * chi + slope
    cand = [re(mpc(z)) for z in polyroots([k * k, -2 * base * k, base * base + 1, -lam * lam],
                                          maxsteps=200, extraprec=400)
            if fabs(im(mpc(z))) < mpf("1e-20") * max(1, fabs(z))]
    I = min(x for x in cand if x >= 0)
    dp = base - slope * I
    eff = dp - 2 * chi * I
    alpha = lam / mpc(1, eff)
    if model == "bo":
        ce = chi
    else:
        ce = chi * r["Omega"] ** 2 / mpc(r["Omega"] ** 2 - omega**2, -r["gammar"] * omega)
    ap = mpc(1, dp - omega) - 4j * I * ce
    am = mpc(1, dp - omega) + 4j * I * ce
    b = 2 * alpha**2 * ce
    d = ap * am - fabs(b) ** 2
    theta = 2 * atan(eff)
    s = fabs(1 - 2 * (am + 1j * b * exp(2j * theta)) / d) ** 2
    return dict(I=I, ap=ap, am=am, b=b, d=d, theta=theta, s=s)


def main():
    p = fig2()
    r = reduced(p)
    print("g      =", mp.nstr(r["g"], 20))
    print("chi    =", mp.nstr(r["chi"], 20), " chi/kappa =", mp.nstr(r["chir"], 20))
    print("lambda =", mp.nstr(r["lam"], 20), " lam/kappa =", mp.nstr(r["lamr"], 20))
    print("g_red  =", mp.nstr(r["gr"], 20))

    O, G = 40 * pi, mpf("0.06")
    z = 1 / mpc(O**2 - 100, -G * 10)
    print("zeta(40pi, 0.06, 10) =", mp.nstr(z.real, 20), mp.nstr(z.imag, 20))

    roots = real_roots(mpf(3), mpf(1), sqrt(2))
    print("bistable roots (chi=1, dp=3, lam=sqrt2):", [mp.nstr(x, 20) for x in roots])
    for I in roots:
        alpha = sqrt(2) / mpc(1, 3 - 2 * I)
        ev = drift_eigs(mpf(3), mpf(1), alpha)
        print("   I=", mp.nstr(I, 10), "drift eig re:", [mp.nstr(re(e), 10) for e in ev])

    for Delta, omega, model in [(0, 1, "bo"), (0, 10, "bo"), (1, 1, "bo"), (0, 10, "full"),
                                (0, 125, "full")]:
        c = coeffs(r, mpf(Delta), mpf(omega), model)
        print(f"{model} Delta={Delta} omega={omega}: I={mp.nstr(c['I'], 20)}")
        for key in ("ap", "am", "b"):
            print(f"   {key} = {mp.nstr(c[key].real, 20)} {mp.nstr(c[key].imag, 20)}")
        print(f"   theta = {mp.nstr(c['theta'], 20)}  S = {mp.nstr(c['s'], 20)}")


if __name__ == "__main__":
    main()
