"""Pure-Python reduction machine for coded combinator terms.

Term encoding (shared with the compiled kernel):

* ``int`` below ``NUM_BASE``: a constant (K S PAIR FST SND SUCC PRED IFZ FIX)
* ``int`` at or above ``NUM_BASE``: the numeral ``n - NUM_BASE``
* ``tuple (f, x)``: an application

``apply_values`` applies value ``f`` to value ``x`` call-by-value and returns
``(status, value, steps)`` with status ``OK``, ``STUCK`` or ``OUT_OF_FUEL``.
One step is one contraction.
"""

K, S, PAIR, FST, SND, SUCC, PRED, IFZ, FIX = range(9)
NUM_BASE = 9
ARITY = (2, 3, 3, 1, 1, 1, 1, 3, 2)

OK, STUCK, OUT_OF_FUEL = 0, 1, 2


def apply_values(f, x, fuel):
    stack = []
    used = 0
    while True:
        # apply f to x
        if type(f) is tuple:
            g = f[0]
            if type(g) is tuple:
                head = g[0]
                nargs = 3
            else:
                head = g
                nargs = 2
        else:
            head = f
            nargs = 1
        if head >= NUM_BASE:
            return STUCK, None, used
        if nargs < ARITY[head]:
            v = (f, x)
        else:
            used += 1
            if used > fuel:
                return OUT_OF_FUEL, None, used
            if head == K:
                v = f[1]
            elif head == S:
                stack.append((1, f[1], x))
                f = f[0][1]
                continue
            elif head == PAIR:
                stack.append((0, f[1]))
                f, x = x, f[0][1]
                continue
            elif head == FIX:
                stack.append((0, x))
                f, x = f[1], (FIX, f[1])
                continue
            elif head == IFZ:
                c = f[0][1]
                if type(c) is tuple or c < NUM_BASE:
                    return STUCK, None, used
                v = f[1] if c == NUM_BASE else x
            elif head == FST or head == SND:
                if type(x) is tuple and type(x[0]) is tuple and x[0][0] == PAIR:
                    v = x[0][1] if head == FST else x[1]
                else:
                    return STUCK, None, used
            elif head == SUCC:
                if type(x) is tuple or x < NUM_BASE:
                    return STUCK, None, used
                v = x + 1
            else:  # PRED
                if type(x) is tuple or x < NUM_BASE:
                    return STUCK, None, used
                v = x - 1 if x > NUM_BASE else x
        # return v to the continuation
        while True:
            if not stack:
                return OK, v, used
            frame = stack.pop()
            kind = frame[0]
            if kind == 0:
                f, x = v, frame[1]
                break
            if kind == 1:
                stack.append((2, v))
                f, x = frame[1], frame[2]
                break
            f, x = frame[1], v
            break
