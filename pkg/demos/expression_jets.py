"""
Expressions and their second-order jets
=======================================

Parse a formula in x and y, evaluate it, and read off the value together
with every first and second partial derivative in one pass.
"""

from dtwist.errors import DomainError, ExprSyntaxError
from dtwist.expr import eval_jet2, eval_scalar, parse, to_source, validate_positive

f = parse("exp(x+y) + sin(x)^2 + 1")
print("parsed back:", to_source(f.root))

# plain evaluation and the jet agree on the value, bit for bit
x, y = 0.3, -0.2
j = eval_jet2(f, x, y)
print("value      ", eval_scalar(f, x, y), j.v)
print("f_x, f_y   ", j.dx, j.dy)
print("f_xx f_xy f_yy", j.dxx, j.dxy, j.dyy)

# a quick sanity check against central differences
h = 1e-5
fd = (eval_scalar(f, x + h, y) - eval_scalar(f, x - h, y)) / (2 * h)
print("f_x by differences:", fd)

# errors carry a position
for bad in ("exp(x+", "2*z"):
    try:
        parse(bad)
    except ExprSyntaxError as exc:
        print(f"{bad!r}: {exc}")
    except Exception as exc:
        print(f"{bad!r}: {type(exc).__name__}: {exc}")

try:
    eval_scalar(parse("log(x)"), -1.0, 0.0)
except DomainError as exc:
    print("log(-1):", exc)

# twisting functions must stay positive over the working region
rep = validate_positive(parse("1 + x*y"), (-2, 2, -2, 2))
print(f"min of 1+xy on [-2,2]^2 is {rep.minimum:.3g} at {rep.argmin}; positive: {rep.positive}")
