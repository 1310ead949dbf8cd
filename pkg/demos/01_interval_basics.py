"""Interval arithmetic primer.

Intervals enclose every value an expression can take when each input
ranges over its own interval.  This is the foundation everything else in
the package builds on: values, gradients and eigenvalue bounds are all
propagated as intervals.
"""

from hessbound import Box, Interval, lambda_s, lambda_star, lambda_t, zero_widen

a = Interval(-1, 2)
b = Interval(-3, 1)

print("elementary operations")
print(f"  {a} + {b} = {a + b}")
print(f"  {a} * {b} = {a * b}   (min/max of the four endpoint products)")
print(f"  {Interval(2, 4)}^-1 = {Interval(2, 4).recip()}")
print(f"  {a}^2 = {a.pow(2)}   (even powers clamp at zero)")
print(f"  exp{Interval(0, 1)} = {Interval(0, 1).exp()}")

print()
print("spectral operators on gradient boxes")
g = Box([Interval(1, 1), Interval(0, 0)])
h = Box([Interval(0, 0), Interval(1, 1)])
print(f"  lambda_s({list(g)}) = {lambda_s(g)}   bounds eigenvalues of v v^T")
print(f"  lambda_t({list(g)}, {list(h)}) = {lambda_t(g, h)}   bounds u v^T + v u^T")
print(f"  lambda_star exact 2x2 bound for [[1,1],[1,1]] diag, [2,2] off: "
      f"{lambda_star(Interval(1, 1), Interval(1, 1), Interval(2, 2))}")
print(f"  zero_widen({Interval(2, 5)}) = {zero_widen(Interval(2, 5))}   "
      "(used when a Hessian block may vanish)")
