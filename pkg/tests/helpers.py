"""Shared builders for the test suite."""
from pathlib import Path

from gencat.constructions import GlobularPresentation
from gencat.formats import load_functor

DATA = Path(__file__).resolve().parents[1] / "data"


def functor(name):
    return load_functor(DATA / f"{name}.gfun")


def functor_fixtures():
    """Composable pairs (F, G), meaning G after F."""
    pairs = [("f", "g"), ("g", "f"), ("idP2", "f"), ("f", "idL4"), ("idL4", "inc"),
             ("fg", "inc"), ("pq", "g"), ("g", "gf")]
    return [(functor(a), functor(b)) for a, b in pairs]


def random_globular(rng, n_cells, max_dim=3):
    """A random globular set; every n-cell for n >= 1 has parallel boundaries."""
    cells = {0: [f"o{i}" for i in range(rng.randint(1, 3))]}
    sigma, tau = {}, {}
    for k in range(n_cells):
        n = rng.randint(1, max_dim)
        while not cells.get(n - 1):
            n -= 1
        below = cells[n - 1]
        s = rng.choice(below)
        if n == 1:
            t = rng.choice(below)
        else:
            par = [c for c in below if sigma[c] == sigma[s] and tau[c] == tau[s]]
            t = rng.choice(par)
        name = f"c{n}_{k}"
        cells.setdefault(n, []).append(name)
        sigma[name], tau[name] = s, t
    return GlobularPresentation({n: tuple(sorted(v)) for n, v in sorted(cells.items())},
                                sigma, tau)


def galois_fixtures(pairs=None):
    """Every Galois connection f -| g induced by a monotone map between
    the given pairs of thin categories."""
    from gencat import fixtures as fx
    pairs = pairs or [(fx.P2(), fx.L4()), (fx.chain(3), fx.L4()), (fx.L4(), fx.chain(3)),
                      (fx.V3(), fx.L4()), (fx.L4(), fx.P2())]
    out = []
    for C, D in pairs:
        for m in fx.monotone_maps(C, D):
            w = fx.galois_connection(C, D, m)
            if w is not None:
                out.append(w)
    return out
