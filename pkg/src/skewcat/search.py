"""Exhaustive enumeration of skew monoidal structures on a finite category.

Candidates are generated in a fixed lexicographic order (unit, then the tensor
object table, then the tensor morphism table, then the three component
tables) and filtered through the full checker, so the output list is
deterministic for a given input category.
"""

from __future__ import annotations

import itertools

from .fincat import FinCategory
from .skewmon import SkewMonoidalCategory, check_skew_monoidal, make_skew_monoidal


def _tensor_functors(base: FinCategory):
    objs = sorted(base.objects)
    obj_pairs = [(a, b) for a in objs for b in objs]
    mors = sorted(m for m, _, _ in base.morphisms)
    mor_pairs = [(f, g) for f in mors for g in mors]
    for obj_assign in itertools.product(objs, repeat=len(obj_pairs)):
        tensor_obj = dict(zip(obj_pairs, obj_assign))
        per_pair = []
        ok = True
        for f, g in mor_pairs:
            src = tensor_obj[(base.src(f), base.src(g))]
            tgt = tensor_obj[(base.tgt(f), base.tgt(g))]
            opts = base.hom(src, tgt)
            if base.is_identity(f) and base.is_identity(g):
                opts = (base.id_of(src),) if src == tgt else ()
            if not opts:
                ok = False
                break
            per_pair.append(opts)
        if not ok:
            continue
        for mor_assign in itertools.product(*per_pair):
            tensor_mor = dict(zip(mor_pairs, mor_assign))
            if _functorial(base, tensor_obj, tensor_mor):
                yield tensor_obj, tensor_mor


def _functorial(base, tensor_obj, tensor_mor) -> bool:
    for (g1, f1), h1 in base.compose.items():
        for (g2, f2), h2 in base.compose.items():
            lhs = tensor_mor[(h1, h2)]
            step = base.compose.get((tensor_mor[(g1, g2)], tensor_mor[(f1, f2)]))
            if lhs != step:
                return False
    return True


def enumerate_skew_structures(base: FinCategory) -> list[SkewMonoidalCategory]:
    """Every skew monoidal structure on the given category, in canonical order."""
    objs = sorted(base.objects)
    found = []
    for unit in objs:
        for tensor_obj, tensor_mor in _tensor_functors(base):
            def t(a, b):
                return tensor_obj[(a, b)]

            lambda_opts = [base.hom(t(unit, a), a) for a in objs]
            rho_opts = [base.hom(a, t(a, unit)) for a in objs]
            triples = [(a, b, c) for a in objs for b in objs for c in objs]
            alpha_opts = [base.hom(t(t(a, b), c), t(a, t(b, c))) for a, b, c in triples]
            if any(not o for o in (*lambda_opts, *rho_opts, *alpha_opts)):
                continue
            for lam in itertools.product(*lambda_opts):
                for rho in itertools.product(*rho_opts):
                    for alpha in itertools.product(*alpha_opts):
                        cand = make_skew_monoidal(
                            base, tensor_obj, tensor_mor, unit,
                            dict(zip(triples, alpha)),
                            dict(zip(objs, lam)), dict(zip(objs, rho)))
                        if not check_skew_monoidal(cand):
                            found.append(cand)
    return found
