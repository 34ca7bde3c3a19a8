# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled reduction machine; same contract as ``machine_py.apply_values``."""

cdef enum:
    K = 0
    S = 1
    PAIR = 2
    FST = 3
    SND = 4
    SUCC = 5
    PRED = 6
    IFZ = 7
    FIX = 8

cdef int[9] ARITY_C = [2, 3, 3, 1, 1, 1, 1, 3, 2]

NUM_BASE = 9
OK, STUCK, OUT_OF_FUEL = 0, 1, 2


cdef inline bint is_num(object t):
    return type(t) is int and t >= 9


def apply_values(object f, object x, long long fuel):
    cdef list stack = []
    cdef long long used = 0
    cdef int head, nargs, kind
    cdef object g, v, c, frame
    while True:
        if type(f) is tuple:
            g = (<tuple>f)[0]
            if type(g) is tuple:
                if type((<tuple>g)[0]) is not int:
                    return STUCK, None, used
                head = <int>(<tuple>g)[0]
                nargs = 3
            else:
                if g >= 9:
                    return STUCK, None, used
                head = <int>g
                nargs = 2
        else:
            if f >= 9:
                return STUCK, None, used
            head = <int>f
            nargs = 1
        if nargs < ARITY_C[head]:
            v = (f, x)
        else:
            used += 1
            if used > fuel:
                return OUT_OF_FUEL, None, used
            if head == K:
                v = (<tuple>f)[1]
            elif head == S:
                stack.append((1, (<tuple>f)[1], x))
                f = (<tuple>(<tuple>f)[0])[1]
                continue
            elif head == PAIR:
                stack.append((0, (<tuple>f)[1]))
                f, x = x, (<tuple>(<tuple>f)[0])[1]
                continue
            elif head == FIX:
                stack.append((0, x))
                f, x = (<tuple>f)[1], (FIX, (<tuple>f)[1])
                continue
            elif head == IFZ:
                c = (<tuple>(<tuple>f)[0])[1]
                if not is_num(c):
                    return STUCK, None, used
                v = (<tuple>f)[1] if c == 9 else x
            elif head == FST or head == SND:
                if (type(x) is tuple and type((<tuple>x)[0]) is tuple
                        and type((<tuple>(<tuple>x)[0])[0]) is int
                        and (<tuple>(<tuple>x)[0])[0] == PAIR):
                    v = (<tuple>(<tuple>x)[0])[1] if head == FST else (<tuple>x)[1]
                else:
                    return STUCK, None, used
            elif head == SUCC:
                if not is_num(x):
                    return STUCK, None, used
                v = x + 1
            else:
                if not is_num(x):
                    return STUCK, None, used
                v = x - 1 if x > 9 else x
        while True:
            if not stack:
                return OK, v, used
            frame = stack.pop()
            kind = (<tuple>frame)[0]
            if kind == 0:
                f, x = v, (<tuple>frame)[1]
            elif kind == 1:
                stack.append((2, v))
                f, x = (<tuple>frame)[1], (<tuple>frame)[2]
            else:
                f, x = (<tuple>frame)[1], v
            break
