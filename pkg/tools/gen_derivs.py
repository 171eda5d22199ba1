"""Generate closed-form gradient/Hessian code for the classical Hamiltonian.

Writes src/esqpt/_derivs.py.  Run manually after changing the Hamiltonian
definition; the output file is committed.
"""
import sympy as sp

x, y, px, py, b0, ze = sp.symbols('x y px py b0 ze', real=True)
V = [x, y, px, py]

u = sp.Rational(1, 2) * (x**2 + y**2 + px**2 + py**2)
pg = x * py - y * px
A = (py**2 - px**2) * x + 2 * px * py * y - x**3 + 3 * x * y**2
s = sp.sqrt((1 - u) / 2)
H1 = u**2 + b0**2 * (1 - u) * u + ze**2 * pg**2 + ze * b0 * s * A

bpb = x * px + y * py
w = sp.Rational(1, 2) * (x**2 + y**2 - px**2 - py**2) - b0**2 * (1 - u)
EX = sp.Rational(1, 2) * (bpb**2 + w**2)


def emit(name, exprs, args):
    reps, reds = sp.cse(exprs, optimizations='basic')
    lines = [f"def {name}({', '.join(args)}):"]
    for lhs, rhs in reps:
        lines.append(f"    {lhs} = {sp.pycode(rhs)}".replace("math.sqrt", "sqrt"))
    body = ", ".join(sp.pycode(e).replace("math.sqrt", "sqrt") for e in reds)
    lines.append(f"    return ({body})")
    return "\n".join(lines)


g1 = [sp.diff(H1, v) for v in V]
h1 = [sp.diff(H1, a, b) for i, a in enumerate(V) for b in V[i:]]
g2 = [sp.diff(EX, v) for v in V]
h2 = [sp.diff(EX, a, b) for i, a in enumerate(V) for b in V[i:]]

parts = [
    '"""Machine-generated derivative formulas (tools/gen_derivs.py); do not edit by hand."""',
    "from numpy import sqrt\n",
    emit("grad_h1", g1, ["x", "y", "px", "py", "b0", "ze"]),
    emit("hess_h1", h1, ["x", "y", "px", "py", "b0", "ze"]),
    emit("grad_extra", g2, ["x", "y", "px", "py", "b0"]),
    emit("hess_extra", h2, ["x", "y", "px", "py", "b0"]),
]
open("src/esqpt/_derivs.py", "w").write("\n\n".join(parts) + "\n")
print("wrote src/esqpt/_derivs.py")
