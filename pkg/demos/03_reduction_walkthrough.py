"""
The reduction, step by step
===========================

Each separated equation is written as psi'' + (tau~/sigma) psi' + (sigma~/sigma^2) psi = 0.
The engine finds k so that the radicand is a perfect square, picks the
pi branch that gives tau a negative slope, and reads the spectrum off
lambda = lambda_n.
"""

from ringshaped import hartmann, nu_engine
from ringshaped.hartmann import ParabolicState, PotentialParams, SphericalState

p = PotentialParams(q=0.5)
cases = {
    "parabolic xi": hartmann.parabolic_problem_for(p, ParabolicState(1, 0, 1), "xi"),
    "polar": hartmann.angular_problem_for(p, SphericalState(0, 2, 1)),
    "radial": hartmann.radial_problem_for(p, SphericalState(1, 2, 1)),
}

for name, problem in cases.items():
    print(f"--- {name}")
    print("  sigma       ", problem.sigma)
    print("  tau~        ", problem.tau_tilde)
    print("  sigma~      ", problem.sigma_tilde)
    for k in nu_engine.k_candidates(problem):
        print(f"  k = {k:+.6f}: pi in", [str(b) for b in nu_engine.pi_branches(problem, k)])
    sol = nu_engine.solve(problem)
    print(f"  chosen k = {sol.k:+.6f}, pi = {sol.pi}, tau = {sol.tau} ({sol.selection})")
    n = nu_engine.quantum_number(problem, sol)
    print(f"  lambda0 = {sol.lambda0:.6f} is lambda_n at n = {n:.6f}")
    if sol.rho is not None:
        print(f"  weight: {sol.rho}")

# The 1/4 in the parabolic radicand matters: drop it and k moves off the closed form
literal = nu_engine.NUProblem([0, 2], [1], [-4, -4, -1])
print("\nradicand without the 1/4 shift, k =", nu_engine.k_candidates(literal))
