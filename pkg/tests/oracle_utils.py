"""Shared independent oracles for the decision-procedure tests.

The smooth-decision fixtures are built in diagonal form, where both the
factorization answer and the kernel of the pushforward are known by
construction (a nonzero image supports a functional on the image
subgroup; a killed generator or a torsion generator does not), then
hidden behind a random unimodular change of basis; answer and kernel
transport along.  The brute-force oracle re-decides by enumerating all
mod-2 functionals on the quotient presentation, whose relations are the
construction-known kernel generators, never touching the Smith-form
machinery under test.
"""

import numpy as np

from egl.homology import HomologyPresentation, IntHom


def random_unimodular(rng, n, steps=12):
    U = np.eye(n, dtype=object)
    for _ in range(steps):
        i, j = rng.integers(0, n, size=2)
        if i == j:
            continue
        c = int(rng.integers(-2, 3))
        U[i] = U[i] + c * U[j]
    if rng.integers(0, 2):
        U[[0, n - 1]] = U[[n - 1, 0]]
    return U


def scrambled_smooth_fixture(rng):
    """(IntHom, eta, truth, kernel generators), diagonal behind the scenes."""
    r = int(rng.integers(1, 4))
    t = int(rng.integers(0, 2))
    n = r + t
    c = int(rng.integers(n, n + 3))
    dvals = [int(rng.integers(0, 4)) for _ in range(r)]
    orders = [2 * int(rng.integers(1, 3)) for _ in range(t)]
    eta0 = [int(rng.integers(0, 2)) for _ in range(n)]

    truth = all(dvals[j] != 0 for j in range(r) if eta0[j]) and \
        not any(eta0[r + i] for i in range(t))

    F0 = np.zeros((c, n), dtype=object)
    for j, d in enumerate(dvals):
        F0[j, j] = d
    R0 = np.zeros((n, t), dtype=object)
    for i, k in enumerate(orders):
        R0[r + i, i] = k

    U = random_unimodular(rng, n)
    Uinv = np.array(np.round(np.linalg.inv(np.array(U, dtype=float))), dtype=int)
    assert (np.array(U, dtype=int) @ Uinv == np.eye(n, dtype=int)).all()
    F = np.array(F0 @ U, dtype=int)
    relations = tuple(tuple(int(x) for x in col) for col in (Uinv @ R0).T)
    eta = [int(sum(eta0[i] * int(U[i, j]) for i in range(n)) % 2) for j in range(n)]

    # the kernel lattice of the diagonal map is spanned by the killed
    # free generators and the torsion generators; transport by U^{-1}
    killed = [j for j in range(r) if dvals[j] == 0] + list(range(r, n))
    kernel_gens = [[int(Uinv[i, j]) for i in range(n)] for j in killed]

    dom = HomologyPresentation(n, relations=relations)
    cod = HomologyPresentation(c)
    hom = IntHom(tuple(tuple(int(x) for x in row) for row in F), dom, cod)
    return hom, eta, truth, kernel_gens


def brute_force_factorization(hom, eta, kernel_gens):
    """Enumerate all mod-2 functionals on the quotient presentation.

    The quotient of the domain by the kernel presents the pushforward
    image; a functional on it is a mod-2 vector killing the domain
    relations and the kernel generators, and eta factors iff one of the
    enumerated functionals restricts to eta on the generators.
    """
    n = hom.domain.ngens
    eta_mod = [e % 2 for e in eta]
    for bits in np.ndindex(*(2,) * n):
        mu = list(bits)
        if any(sum(m * r for m, r in zip(mu, rel)) % 2 for rel in hom.domain.relations):
            continue
        if any(sum(m * x for m, x in zip(mu, k)) % 2 for k in kernel_gens):
            continue
        if mu == eta_mod:
            return True
    return False
