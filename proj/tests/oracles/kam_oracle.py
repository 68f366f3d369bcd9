"""Environment-based Krivine machine used to produce tests/data/golden_traces.txt.

Independent of the C++ machine: named variables, closures instead of
substitution, and its own printer. Variable lookup is administrative and not
counted as a step, so step counts line up with the substitution machine.

    python3 tests/oracles/kam_oracle.py > tests/data/golden_traces.txt
"""

import itertools

fresh = itertools.count()


def lam(x, b): return ("lam", x, b)
def app(f, *args):
    for a in args:
        f = ("app", f, a)
    return f
def var(x): return ("var", x)
CC = ("cc",)
def instr(t): return ("instr", t)
def k(stack): return ("k", stack)      # stack: (list of closed terms, base)


I = lam("x", var("x"))
K = lam("x", lam("y", var("x")))
KI = lam("x", lam("y", var("y")))
A = lam("x", lam("f", app(var("f"), app(var("x"), var("x"), var("f")))))
Y = app(A, A)
D = lam("x", app(var("x"), var("x")))
OMEGA = app(D, D)
APPI = lam("x", app(var("x"), I))
S = lam("x", lam("y", lam("z", app(app(var("x"), var("z")), app(var("y"), var("z"))))))
PEIRCE = lam("f", app(CC, var("f")))


def show(t):
    tag = t[0]
    if tag == "var":
        return t[1]
    if tag == "lam":
        return "\\" + t[1] + "." + show(t[2])
    if tag == "app":
        return "(" + show(t[1]) + ")" + show(t[2])
    if tag == "cc":
        return "cc"
    if tag == "instr":
        return "#" + t[1]
    if tag == "k":
        return "k[" + show_stack(t[1]) + "]"
    raise ValueError(t)


def show_stack(s):
    entries, base = s
    return "".join(show(e) + "." for e in entries) + base


def readback(t, env):
    tag = t[0]
    if tag == "var":
        if t[1] in env:
            ct, ce = env[t[1]]
            return readback(ct, ce)
        return t
    if tag == "lam":
        inner = dict(env)
        inner.pop(t[1], None)
        return ("lam", t[1], readback(t[2], inner))
    if tag == "app":
        return ("app", readback(t[1], env), readback(t[2], env))
    return t


def run(term, stack, fuel):
    """Returns (status, steps, final term, final stack)."""
    entries, base = stack
    cur = (term, {})
    st = [(e, {}) for e in entries]
    steps = 0
    while True:
        t, env = cur
        while t[0] == "var" and t[1] in env:
            t, env = env[t[1]]
        cur = (t, env)
        tag = t[0]
        nxt = None
        if tag == "app":
            nxt = ((t[1], env), [(t[2], env)] + st, base)
        elif tag == "lam" and st:
            e = dict(env)
            e[t[1]] = st[0]
            nxt = ((t[2], e), st[1:], base)
        elif tag == "cc" and st:
            rest = st[1:]
            saved = ([readback(*c) for c in rest], base)
            nxt = (st[0], [(k(saved), {})] + rest, base)
        elif tag == "k" and st:
            ents, b = t[1]
            nxt = (st[0], [(e, {}) for e in ents], b)
        if nxt is None:
            status = "stuck"
            break
        if steps == fuel:
            status = "fuel"
            break
        steps += 1
        cur, st, base = nxt
    final_term = readback(*cur)
    final_stack = ([readback(*c) for c in st], base)
    return status, steps, final_term, final_stack


P0 = ([], "pi0")
P1 = ([], "pi1")
KP0 = k(P0)

CASES = [
    (I, ([instr("a")], "pi0"), 10),
    (I, ([I], "pi0"), 10),
    (I, P0, 10),
    (app(I, instr("a")), P0, 10),
    (CC, ([instr("a")], "pi0"), 10),
    (CC, ([I, instr("b")], "pi0"), 10),
    (CC, ([KI, instr("a"), instr("b")], "pi1"), 10),
    (app(CC, K), ([instr("a")], "pi0"), 10),
    (KP0, ([instr("a")], "pi0"), 10),
    (KP0, ([I, instr("b")], "pi1"), 10),
    (k(([instr("c")], "pi1")), ([I], "pi0"), 10),
    (app(PEIRCE, K), ([instr("a")], "pi0"), 20),
    (app(PEIRCE, KI), ([instr("a")], "pi0"), 20),
    (app(CC, lam("k", app(var("k"), instr("r")))), ([instr("s")], "pi0"), 20),
    (app(CC, lam("k", instr("z"))), ([instr("s")], "pi0"), 20),
    (Y, ([instr("xi")], "pi0"), 4),
    (Y, ([KP0], "pi0"), 20),
    (Y, ([K, instr("a")], "pi0"), 20),
    (Y, ([KI, instr("a")], "pi0"), 20),
    (OMEGA, P0, 100),
    (APPI, ([instr("a")], "pi0"), 10),
    (APPI, ([I], "pi0"), 10),
    (APPI, ([K, instr("a")], "pi0"), 10),
    (app(S, K, K), ([instr("a")], "pi0"), 20),
    (app(S, K, K, instr("a")), P0, 20),
    (K, ([instr("a"), instr("b")], "pi0"), 10),
    (app(K, I), ([instr("a"), instr("b")], "pi1"), 10),
    (KI, ([instr("a"), instr("b"), instr("c")], "pi0"), 10),
    (app(lam("x", app(CC, var("x"))), KP0), ([instr("a")], "pi0"), 20),
    (app(D, I), ([instr("a")], "pi0"), 10),
]


def main():
    print("# term | stack | fuel | status | steps | final process")
    for term, stack, fuel in CASES:
        status, steps, ft, fs = run(term, stack, fuel)
        print(" | ".join([show(term), show_stack(stack), str(fuel), status, str(steps),
                          show(ft) + " * " + show_stack(fs)]))


if __name__ == "__main__":
    main()
