"""Direct-definition reference evaluation, independent of the package code paths.

Degrees are recounted from the raw edge list with plain Python, and every
product is formed exactly as a Python integer before taking its logarithm;
the Sombor products use ``ln prod sqrt(q) = ln(prod q) / 2``.
"""

import math

SUMS = ("M1", "M2", "F", "SO", "R1", "R2", "FR", "RSO")
PRODUCTS = ("lnPi1", "lnPi2", "lnFPi", "lnSOPi", "lnR1Pi", "lnR2Pi", "lnFRPi", "lnRSOPi")


def _log_int(x):
    return -math.inf if x == 0 else math.log(x)


def brute_force(n, edges):
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    big, small = max(deg), min(deg)
    rev = [big + small - d for d in deg]
    out = {}
    for prefix, vals in (("", deg), ("R", rev)):
        s1 = s2 = s3 = 0
        so = []
        p1 = p2 = p3 = 1
        for a, b in edges:
            x, y = vals[a], vals[b]
            s1 += x + y
            s2 += x * y
            s3 += x * x + y * y
            so.append(math.sqrt(x * x + y * y))
            p1 *= x + y
            p2 *= x * y
            p3 *= x * x + y * y
        if prefix:
            names = ("R1", "R2", "FR", "RSO", "lnR1Pi", "lnR2Pi", "lnFRPi", "lnRSOPi")
        else:
            names = ("M1", "M2", "F", "SO", "lnPi1", "lnPi2", "lnFPi", "lnSOPi")
        vals_out = (s1, s2, s3, math.fsum(so), _log_int(p1), _log_int(p2), _log_int(p3), 0.5 * _log_int(p3))
        out.update(zip(names, vals_out))
    return out, deg, rev


def rel_close(a, b, tol):
    if math.isinf(a) or math.isinf(b):
        return a == b
    if a == b:
        return True
    return abs(a - b) <= tol * max(abs(a), abs(b))
