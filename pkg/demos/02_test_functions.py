"""Tour the admissible test functions and their Fourier-side behavior.

The estimator weighs each eigenfrequency by the real part of a transform
f_hat(k).  Two families are built in: the triangular tent, whose transform
decays like 1/k^2, and the cosine powers (1 - cos(2 pi l))^d, whose
transforms decay like 1/k^(2d+1).  Faster decay means fewer eigenfrequencies
are needed, which is the whole planning game.
"""

import numpy as np

from eulerchar import cosine_power, eval_time, majorant, normalization, re_fourier, triangular


def main():
    print("= Normalization constants c_d (unit mass, f_hat(0) = 1) =")
    for d in range(1, 7):
        f = cosine_power(d)
        print(f"d={d}  c_d = {normalization(d):.12f}  f(1/2) = {eval_time(f, 0.5):.6f}")

    print()
    print("= Transform values on the real line =")
    psi = triangular()
    phi1 = cosine_power(1)
    phi2 = cosine_power(2)
    ks = np.array([0.0, 1.0, np.pi, 2 * np.pi, 10.0, 100.0])
    print("k        re psi_hat     re phi1_hat    re phi2_hat")
    for k, a, b, c in zip(
        ks, re_fourier(psi, ks), re_fourier(phi1, ks), re_fourier(phi2, ks)
    ):
        print(f"{k:7.3f}  {a:+.10f}  {b:+.10f}  {c:+.10f}")
    print("(k = 2 pi is a removable singularity of the cosine-power formulas;")
    print(" the implementation switches to a series there, no caller care needed.)")

    print()
    print("= Majorants: proven bounds on |re f_hat(k)| past the pole window =")
    print("k        |re phi2_hat|   majorant")
    for k in (15.0, 30.0, 100.0, 1000.0):
        val = abs(re_fourier(phi2, k))
        bound = majorant(phi2, k)
        assert val <= bound
        print(f"{k:7.1f}  {val:.6e}    {bound:.6e}")

    print()
    print("Faster decay with d (values of |re phi_d_hat(50)|):")
    for d in range(1, 5):
        print(f"  d={d}: {abs(re_fourier(cosine_power(d), 50.0)):.3e}")


if __name__ == "__main__":
    main()
