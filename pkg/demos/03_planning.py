"""Plan how many eigenfrequencies are needed before touching any spectrum.

Given upper bounds M_bar on the vertex count and L_bar on the total length
plus a lower bound on the shortest periodic orbit, the planner fixes the
time scaling t = 1/lmin_lower, then chooses the cosine power order d and
the truncation J so the proven tail bound drops below the rounding margin
eps_bar.  It also reports delta_max, the largest per-eigenvalue noise the
recovery is certified to absorb.
"""

from eulerchar import (
    cosine_power,
    epsilon,
    j_min,
    optimal_plan,
    preset,
    summarize,
    tail_bound,
    triangular,
)


def main():
    print("= Plans for the bundled graphs (eps_bar = 1/4) =")
    print("graph        t     d   J    delta_max")
    for name in ("lasso", "k5", "k5-pendant", "k33"):
        info = summarize(preset(name))
        plan = optimal_plan(
            eps_bar=0.25,
            M_bar=info.M,
            L_bar=info.total_length,
            lmin_lower=info.l_min,
        )
        print(f"{name:11s} {plan.t:4.2f}  {plan.d}  {plan.J:4d}  {plan.delta_max:.6e}")

    print()
    print("= How J grows with the resolution parameter rho = 2 t L_bar =")
    print("(eps_bar = 1/4, M_bar = 0 to isolate the rho dependence, lmin_lower = 1)")
    print("rho        d   J")
    for rho in (2.0, 15.6, 16.5, 421.0, 423.0, 1.0e4):
        plan = optimal_plan(eps_bar=0.25, M_bar=0, L_bar=rho / 2.0, lmin_lower=1.0)
        print(f"{rho:8.1f}  {plan.d}  {plan.J:6d}")
    print("The optimal order d steps up as rho grows; J grows almost linearly.")

    print()
    print("= Certifying a plan by hand (lasso) =")
    plan = optimal_plan(eps_bar=0.25, M_bar=2, L_bar=6.0, lmin_lower=1.0)
    e_at = epsilon(plan.M_bar, plan.rho, plan.d, plan.J)
    e_prev = epsilon(plan.M_bar, plan.rho, plan.d, plan.J - 1)
    print(f"J = {plan.J}: epsilon(J) = {e_at:.6f} <= 0.25 < epsilon(J-1) = {e_prev:.6f}")
    tb = tail_bound(plan.d, plan.J - plan.M_bar, plan.L_bar * plan.t)
    print(f"exact tail bound at the same J (epsilon is its smooth envelope): {tb:.6f}")

    print()
    print("= Same question, answered per test function =")
    for f, label in ((cosine_power(1), "phi_1"), (triangular(), "psi")):
        J = j_min(f, M=2, Lt=6.0, threshold=0.25)
        print(f"{label:6s} needs J = {J}")
    print("The tent pays dearly for its slow 1/k^2 transform decay.")


if __name__ == "__main__":
    main()
