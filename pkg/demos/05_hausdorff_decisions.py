"""Hausdorff integrability decisions, exactly.

Smooth case: a Hausdorff integration exists iff the coorientation
functional factors through the pushforward image of the divisor's first
homology, decided by exact integer kernels.  The Klein-bottle-in-the-
four-torus fixture is the showcase: the doubled base circle keeps the
coorientation class factoring through the image (Hausdorff integration
exists) while the mod-2 restriction map is zero (no coorientation
double cover).  Normal-crossing case: every declared kernel word of
every stratum must have trivial twist monodromy.
"""

import json

from egl.cli import resolve_fixture
from egl.decisions_io import (decide_double_cover, decide_normal_crossing,
                              decide_smooth, load_document)
from egl.homology import IntHom, HomologyPresentation, kernel_generators
from egl.signedperm import (MonodromyRep, SignedPermutation, covering_isotropy,
                            twist_group)
from egl.twisted import TwistedArrow, kappa_restrict


if __name__ == "__main__":
    doc = load_document(resolve_fixture("klein_t4.json"))
    print("== Klein bottle embedded in the four-torus")
    dom = HomologyPresentation(2, relations=tuple(map(tuple, doc["smooth"]["domain"]["relations"])))
    cod = HomologyPresentation(4)
    hom = IntHom(tuple(map(tuple, doc["smooth"]["i_star"])), dom, cod)
    print(f"   kernel of the pushforward: {kernel_generators(hom)}"
          "  (the torsion fiber class)")
    answer, _ = decide_smooth(doc)
    print(f"   Hausdorff integration exists: {answer}")
    answer, witness = decide_double_cover(doc)
    print(f"   coorientation double cover exists: {answer} "
          f"(obstructed class {witness['eta_class']})")

    print("\n== a twisted normal-crossing divisor")
    nc = load_document(resolve_fixture("nc_twisted_line.json"))
    answer, witness = decide_normal_crossing(nc)
    print(f"   Hausdorff integration exists: {answer}")
    print(f"   witness: stratum {witness['stratum']!r}, word {witness['word']}"
          f" has image {witness['image']}")

    print("\n== twist groups and quotient isotropy")
    swap = SignedPermutation((1, 0), (0, 0))
    flip = SignedPermutation((0, 1), (1, 0))
    group = twist_group([swap, flip])
    print(f"   closure of (swap, flip-first) in rank 2: order {group.order}")
    rep = MonodromyRep(images={"loop": SignedPermutation((0,), (1,))})
    print(f"   divisor isotropy under a conjugating loop: "
          f"{covering_isotropy(rep, 1).name}")

    print("\n== restriction to a coarser stratum re-evaluates words")
    fine = MonodromyRep(images={"a": swap, "b": flip})
    coarse = MonodromyRep(images={"a": SignedPermutation.identity(2),
                                  "b": flip})
    arrow = TwistedArrow(target=(0.0,), source=(1.0,), z=(1 + 1j, 2.0),
                         word=("a", "b"), element=fine.evaluate(("a", "b")))
    out = kappa_restrict(arrow, coarse)
    print(f"   fine image {arrow.element.perm}/{arrow.element.flips} -> "
          f"coarse image {out.element.perm}/{out.element.flips}, "
          "continuous part unchanged")
