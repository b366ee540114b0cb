"""Pure-Python letter kernels.

A word is a tuple of nonzero ints: ``+k`` is generator ``k-1``, ``-k`` its
inverse.  Every function here has a twin in ``_ckernels.pyx`` with the same
signature; ``freegog.kernels`` picks one at import.
"""


def free_reduce(letters):
    out = []
    push = out.append
    pop = out.pop
    for x in letters:
        if out and out[-1] == -x:
            pop()
        else:
            push(x)
    return tuple(out)


def multiply(u, v):
    # u and v are assumed reduced
    n = min(len(u), len(v))
    i = 0
    lu = len(u)
    while i < n and u[lu - 1 - i] == -v[i]:
        i += 1
    return u[:lu - i] + v[i:]


def inverse(u):
    return tuple(-x for x in reversed(u))


def power(u, k):
    if k < 0:
        u = inverse(u)
        k = -k
    out = ()
    base = u
    while k:
        if k & 1:
            out = multiply(out, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return out


def substitute(letters, pos_images, neg_images):
    """Image of ``letters`` under the homomorphism given by generator images.

    ``pos_images[i]`` is the (reduced) image of generator ``i`` and
    ``neg_images[i]`` the image of its inverse.
    """
    out = []
    push = out.append
    pop = out.pop
    for x in letters:
        img = pos_images[x - 1] if x > 0 else neg_images[-x - 1]
        for y in img:
            if out and out[-1] == -y:
                pop()
            else:
                push(y)
    return tuple(out)


def peel_count(u):
    """Number of letters peeled from each end by cyclic reduction."""
    n = len(u)
    k = 0
    while 2 * k + 1 < n and u[k] == -u[n - 1 - k]:
        k += 1
    return k
