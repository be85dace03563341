#!/usr/bin/env python3
"""Print every catalog value the library reproduces, one per line."""
import argparse
from fractions import Fraction as F

from wspaces.cubic import RepresentingMatrix, limit_condition_check
from wspaces.embeddings import catalog_example_5_11, embed_general, verify_isometry
from wspaces.models import CATALOG, model_rstar
from wspaces.projections import example_5_14_projection, operator_norm_upper, recover_beta, thm71_projection
from wspaces.sampling import random_members
from wspaces.seqcore import DualVec, format_dualvec, geometric, unit
from wspaces.walpha import bm_distance_c, classify, fpp_verdict, projection_constant_bound

GEOM = geometric(F(1, 2), F(1, 2))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=50)
    args = ap.parse_args()

    for r in (F(0), F(1, 2), F(1)):
        print(f"d(c, W_(r e1*)) at r={r}: {bm_distance_c(r)}")
    for alpha in (DualVec(), DualVec((F(1, 2),)), unit(1)):
        print(f"projection constant bound, alpha={format_dualvec(alpha)}: {projection_constant_bound(alpha)}")

    rec = recover_beta(example_5_14_projection(), GEOM, lambda k: k + 1)
    print(f"recovered beta: {format_dualvec(rec.beta)} (recognized={rec.recognized})")

    ex = catalog_example_5_11()
    for name, e, src in (("S", ex.S, ex.alpha), ("T", ex.T, ex.beta)):
        print(f"dyadic catalog {name} isometric: {verify_isometry(e, random_members(src, args.samples, 1)).passed}")

    e = embed_general(DualVec((F(1, 4),)), GEOM)
    print(f"embedding (1/4) into geometric: K={e.params['K']} s={e.params['s']} N={e.params['N']} r={e.params['r']}")

    p = thm71_projection(GEOM, F(1, 2))
    bound, certified = operator_norm_upper(p)
    print(f"(1+eps)-projection, eps=1/2: rho={p.extras['rho']} |P| <= {bound} certified={certified}")

    mat = RepresentingMatrix(GEOM)
    for k in range(1, 5):
        rep = limit_condition_check(mat, k, F(1, 100))
        print(f"limit check k={k}: residual={rep.residual} passed={rep.passed}")

    for name, build in CATALOG.items():
        print(f"model {name}: r* = {model_rstar(build())}")

    for alpha in (DualVec((F(1, 2), F(1, 2))), unit(2, -1), DualVec(), unit(1, F(1, 2)), GEOM,
                  geometric(F(1, 2), F(-1, 2))):
        c = classify(alpha)
        flags = " ".join(k for k, v in c.as_dict().items() if v is True or v == "yes")
        print(f"classes of {format_dualvec(alpha)}: {flags or '-'}; fpp: {fpp_verdict(alpha).verdict}")


if __name__ == "__main__":
    main()
