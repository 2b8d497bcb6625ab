"""Named model constructors and the check dispatch table.

Model names, as exposed on the command line: ``case1``, ``caseIV:k``,
``case2``, ``sympl-nonzero``, ``sympl-zero``, ``ssc-surface``,
``action-groupoid``, ``fibre:A,B`` and ``pair``.  Dimensions come from
``--dim`` (and ``--k``), with sensible defaults per model.  Unknown
names are rejected before any computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .checks import (check_algebroid, check_zero_residue_variant,
                     check_groupoid_axioms, check_ideal, check_isotropy,
                     check_morphism, check_multiplicative, check_poisson,
                     check_psi_convention, check_symplectic, morphism_beta)
from .errors import ConfigError
from .groupoids import (GroupoidChartModel, action_groupoid_model, case1_model,
                        case2_quotient_model, caseIV_model, fibre_product,
                        pair_groupoid, smooth_factor_model, ssc_surface_model)
from .kernel import DEFAULT_PROFILE
from .symplectic import (SymplecticModel, morphism_phi_nonzero,
                         morphism_phi_zero, symplectic_nonzero_residue_model,
                         symplectic_zero_residue_model)

__all__ = ["ModelEntry", "MODEL_NAMES", "CHECK_NAMES", "build_model",
           "checks_for", "run_check", "DEFAULT_SAMPLES"]

MODEL_NAMES = ("case1", "caseIV", "case2", "sympl-nonzero", "sympl-zero",
               "ssc-surface", "action-groupoid", "fibre:case1,case1",
               "fibre:case1,pair", "pair")

CHECK_NAMES = ("axioms", "algebroid", "symplectic", "multiplicative",
               "poisson", "morphism", "variants", "isotropy", "ideal")

DEFAULT_SAMPLES = {
    "axioms": 10_000,
    "algebroid": 100,
    "symplectic": 200,
    "multiplicative": 150,
    "poisson": 40,
    "morphism": 2_000,
    "variants": 300,
    "isotropy": 500,
    "ideal": 1_000,
}


@dataclass(frozen=True)
class ModelEntry:
    """A named model plus its applicable checks."""

    name: str
    chart: GroupoidChartModel
    symplectic: Optional[SymplecticModel]
    checks: tuple


def _fibre_case1_case1(n: int) -> GroupoidChartModel:
    if n < 4:
        raise ConfigError("fibre:case1,case1 needs dim >= 4")
    m1 = smooth_factor_model(n, 2, 0)
    m2 = smooth_factor_model(n, 2, 1)
    nc = caseIV_model(n, 2)  # borrow the joint-stratum base samplers
    return fibre_product(m1, m2, sample_base=nc.sample_base,
                         sample_base_like=nc.sample_base_like)


def build_model(name: str, dim: Optional[int] = None, k: Optional[int] = None) -> ModelEntry:
    """Construct a model by CLI name; unknown names raise ConfigError."""
    name = name.strip()
    if name.startswith("caseIV:"):
        name, tail = "caseIV", name.split(":", 1)[1]
        try:
            k = int(tail)
        except ValueError:
            raise ConfigError(f"bad caseIV factor count {tail!r}") from None

    if name == "case1":
        n = dim or 4
        return ModelEntry(name, case1_model(n), None,
                          ("axioms", "algebroid", "isotropy", "ideal", "morphism"))
    if name == "caseIV":
        n = dim or 4
        kk = k or 2
        return ModelEntry(name, caseIV_model(n, kk), None,
                          ("axioms", "algebroid", "isotropy", "ideal", "morphism"))
    if name == "case2":
        n = dim or 4
        return ModelEntry(name, case2_quotient_model(n), None,
                          ("axioms", "algebroid", "isotropy", "ideal"))
    if name == "sympl-nonzero":
        sym = symplectic_nonzero_residue_model()
        return ModelEntry(name, sym.model, sym,
                          ("axioms", "algebroid", "symplectic", "multiplicative",
                           "poisson", "morphism"))
    if name == "sympl-zero":
        sym = symplectic_zero_residue_model()
        return ModelEntry(name, sym.model, sym,
                          ("axioms", "algebroid", "symplectic", "multiplicative",
                           "poisson", "morphism", "variants", "isotropy"))
    if name == "ssc-surface":
        return ModelEntry(name, ssc_surface_model(), None, ("axioms", "algebroid"))
    if name == "action-groupoid":
        return ModelEntry(name, action_groupoid_model(), None,
                          ("axioms", "algebroid", "isotropy"))
    if name == "pair":
        return ModelEntry(name, pair_groupoid(dim or 2), None, ("axioms", "algebroid"))
    if name == "fibre:case1,case1":
        return ModelEntry(name, _fibre_case1_case1(dim or 4), None,
                          ("axioms", "algebroid", "isotropy", "ideal"))
    if name == "fibre:case1,pair":
        n = dim or 4
        model = fibre_product(case1_model(n), pair_groupoid(n))
        return ModelEntry(name, model, None, ("axioms", "algebroid", "ideal"))
    if name.startswith("fibre:"):
        raise ConfigError(f"unsupported fibre combination {name!r}")
    raise ConfigError(f"unknown model {name!r}")


def checks_for(entry: ModelEntry, requested) -> tuple:
    return tuple(c for c in requested if c in entry.checks)


def run_check(entry: ModelEntry, check: str, seed: int = 7,
              samples: Optional[int] = None, prof=DEFAULT_PROFILE) -> list:
    """Run one named check on one model entry; returns CheckReports."""
    n = samples or DEFAULT_SAMPLES[check]
    if check == "axioms":
        return [check_groupoid_axioms(entry.chart, n, seed, prof)]
    if check == "algebroid":
        return [check_algebroid(entry.chart, min(n, 200), seed, prof)]
    if check == "symplectic":
        return [check_symplectic(entry.symplectic, n, seed, prof)]
    if check == "multiplicative":
        return [check_multiplicative(entry.symplectic, n, seed, prof)]
    if check == "poisson":
        return [check_poisson(entry.symplectic, min(n, 100), seed, prof)]
    if check == "variants":
        return [check_zero_residue_variant(entry.symplectic, n, seed)]
    if check == "isotropy":
        return [check_isotropy(entry.chart, n, seed, prof)]
    if check == "ideal":
        return [check_ideal(entry.chart, n, seed, prof)]
    if check == "morphism":
        out = []
        if entry.name == "sympl-nonzero":
            out.append(check_morphism(morphism_phi_nonzero(), n, seed, prof))
            out.append(check_psi_convention(max(100, n // 5), seed, prof))
        elif entry.name == "sympl-zero":
            out.append(check_morphism(morphism_phi_zero(), n, seed, prof))
        else:
            out.append(check_morphism(morphism_beta(entry.chart), n, seed, prof,
                                      tol=1e-9))
        return out
    raise ConfigError(f"unknown check {check!r}")
