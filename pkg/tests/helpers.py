"""Shared builders for the test suite."""

from splitjac.construct import PAIRINGS, NotSquarefreeDefect, build_D, compute_frame
from splitjac.elliptic import EllipticCurve, trace_and_ordinary
from splitjac.finite_field import FieldElement, make_field
from splitjac.isogeny import enumerate_rational_kernels, velu
from splitjac.pipeline import select_E_prime


def random_curve(F, rng):
    while True:
        try:
            return EllipticCurve(F, *(FieldElement(F, rng.randrange(F.order)) for _ in range(3)))
        except ValueError:
            pass


def legendre_curves(F):
    for lam in range(2, F.order):
        yield EllipticCurve.from_roots(F, F.zero(), F.one(), FieldElement(F, lam))


def frames(p, n, ell, limit, inert=None, ordinary=None, allow_ell_p=False):
    """(kernel, isogeny, frame, D) for generic squarefree configurations over F_{p^n}.

    ``inert`` and ``ordinary`` filter on the kernel and on the curve carrying
    it (None keeps both).
    """
    F = make_field(p, n)
    Ep = select_E_prime(F)
    out = []
    for Et in legendre_curves(F):
        if ordinary is not None and trace_and_ordinary(Et)[1] != ordinary:
            continue
        for K in enumerate_rational_kernels(Et, ell, allow_ell_p=allow_ell_p):
            if inert is not None and K.inert != inert:
                continue
            I = velu(K)
            for pairing in PAIRINGS:
                frame, deg = compute_frame(I, Ep, pairing)
                if deg.flag or frame.P_prime_on_two_torsion:
                    continue
                try:
                    D = build_D(I, frame)
                except NotSquarefreeDefect:
                    continue
                out.append((K, I, frame, D))
                if len(out) >= limit:
                    return out
    return out
