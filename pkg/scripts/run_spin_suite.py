#!/usr/bin/env python3
"""Spin matrix checks for r up to 5/2, plus the planar and 3D permissibility story."""

import sys

import numpy as np

from cvhilbert import spin
from cvhilbert.variables import is_permissible


def main() -> int:
    ok = True
    for twice_r in range(1, 6):
        r = twice_r / 2
        sr = spin.build_spin(r)
        resid = spin.verify_commutation(sr)
        eigen = spin.verify_eigen(sr)
        full_turn = spin.rotation_operator(sr, (0.0, 0.0, 1.0), 2 * np.pi)
        sign = -1.0 if sr.dim % 2 == 0 else 1.0
        flip = float(np.abs(full_turn - sign * np.eye(sr.dim)).max())
        line_ok = resid <= 1e-12 and eigen and flip <= 1e-10
        ok &= line_ok
        print(f"r={r:<4} dim={sr.dim:<3} commutation={resid:.3e} eigen={eigen} "
              f"full-turn-sign={int(sign):+d} ({flip:.3e}) -> {'pass' if line_ok else 'fail'}")

    print()
    for n in range(3, 13):
        cov = spin.planar_component_covariance(n)
        ctx, variables = spin.stern_gerlach_context(n)
        literal = all(is_permissible(v, ctx.acting_group)[0] for v in variables)
        ok &= cov
        print(f"n={n:<3} rotated-component covariance={cov} "
              f"fixed-component level-set preservation={literal}")

    action, var, witness, axes = spin.full_rotation_counterexample()
    print(f"\n3D axis component obstruction: k={witness[0]} moves equal-component "
          f"axes {axes[0]}, {axes[1]} to axes with different components")
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
