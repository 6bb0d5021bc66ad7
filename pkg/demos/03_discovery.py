"""Recovering the L_c family by equating the expansions of S and sigma term by term."""

# %% Run the comparison to order 8
from meanforge import check_hypothesis, run_discovery

state = run_discovery(8)
for rec in state.log:
    print(f"step {rec.n}: c_{rec.n} = {rec.solved}")

# %% The first condition, before and after removing the factor (a1 - c)^2
first = state.log[0]
print("condition:", first.difference)
print("reduced:  ", first.reduced)

# %% Each coefficient has the Catalan pattern (-1)^(n-1) C_{n-1} c^n (1+c)^(n-1)
print("matches the Catalan pattern:", check_hypothesis(state))
