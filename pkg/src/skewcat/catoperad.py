"""Arity-indexed operads of finite categories, with axiom checking up to a bound.

Three operads ship built in, named "N", "R" and "L":

* N: every component is the one-object category on "t"; ordinary
  multicategories are the multicategories typed over it.
* R: component 0 is the point "l"; positive components are the arrow
  category with objects "t" (tight) and "l" (loose) and one morphism
  "lam": t -> l.  Substitution yields "t" exactly when the outer object and
  the first inner object are both "t".  Skew multicategories are typed over R.
* L: the dual of R: same components with morphism direction reversed,
  so "lam": l -> t.  Colax algebras are typed over L.

Components are produced by an arity-indexed rule, because arities are
unbounded; every checker therefore takes an explicit arity bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .fincat import FinCategory, StructureError, Violation, check_category, opposite_category

TIGHT = "t"
LOOSE = "l"
LAM = "lam"


@dataclass(frozen=True)
class CatOperad:
    """Finite-component operad: a component category per arity, a unit object
    in component 1, and substitution rules on objects and morphisms.

    ``subst_obj(x, xs, ks)`` takes an object x of component(len(xs)), inner
    objects xs with xs[i] in component(ks[i]), and returns an object of
    component(sum(ks)); ``subst_mor`` is the same shape on morphism ids.

    ``arity_uniform`` declares that every positive-arity component is the same
    category and that the substitution rules never read the arity vector; the
    axiom checker then collapses shapes that differ only by inflating positive
    arities.  All three built-ins qualify.
    """

    name: str
    component_rule: Callable[[int], FinCategory]
    unit: str
    subst_obj: Callable[[str, tuple[str, ...], tuple[int, ...]], str]
    subst_mor: Callable[[str, tuple[str, ...], tuple[int, ...]], str]
    arity_uniform: bool = False
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def component(self, n: int) -> FinCategory:
        if n not in self._cache:
            self._cache[n] = self.component_rule(n)
        return self._cache[n]


def _point_category(obj: str) -> FinCategory:
    ident = f"id_{obj}"
    return FinCategory((obj,), ((ident, obj, obj),), {obj: ident},
                       {(ident, ident): ident})


def _arrow_category(src: str, tgt: str, arrow: str) -> FinCategory:
    i_s, i_t = f"id_{src}", f"id_{tgt}"
    return FinCategory(
        (src, tgt),
        ((i_s, src, src), (i_t, tgt, tgt), (arrow, src, tgt)),
        {src: i_s, tgt: i_t},
        {(i_s, i_s): i_s, (i_t, i_t): i_t,
         (arrow, i_s): arrow, (i_t, arrow): arrow},
    )


def _thin_subst_mor(operad_obj_rule, component):
    """Morphism substitution derived from the object rule, valid whenever the
    component categories are thin (at most one morphism between any two
    objects): take the unique morphism between the substituted endpoints."""
    cache: dict = {}

    def rule(f: str, fs: tuple[str, ...], ks: tuple[int, ...]) -> str:
        key = (f, fs, ks)
        hit = cache.get(key)
        if hit is not None:
            return hit
        n = len(fs)
        comp_out = component(sum(ks))
        comp_n = component(n)
        src = operad_obj_rule(comp_n.src(f), tuple(component(k).src(g) for g, k in zip(fs, ks)), ks)
        tgt = operad_obj_rule(comp_n.tgt(f), tuple(component(k).tgt(g) for g, k in zip(fs, ks)), ks)
        hom = comp_out.hom(src, tgt)
        if len(hom) != 1:
            raise StructureError(f"no unique morphism {src!r} -> {tgt!r} for substitution")
        cache[key] = hom[0]
        return hom[0]

    return rule


def make_terminal_operad() -> CatOperad:
    """The operad whose every component is a single object; substitution is forced."""
    comp = _point_category(TIGHT)

    def subst_obj(x, xs, ks):
        return TIGHT

    def subst_mor(f, fs, ks):
        return f"id_{TIGHT}"

    return CatOperad("N", lambda n: comp, TIGHT, subst_obj, subst_mor,
                     arity_uniform=True)


def _r_subst_obj(x: str, xs: tuple[str, ...], ks: tuple[int, ...]) -> str:
    if not xs:
        return x
    return TIGHT if x == TIGHT and xs[0] == TIGHT else LOOSE


def make_R_operad() -> CatOperad:
    """Tight/loose typing operad: arrow components t -> l, unit "t"."""
    point = _point_category(LOOSE)
    arrow = _arrow_category(TIGHT, LOOSE, LAM)

    def component(n: int) -> FinCategory:
        return point if n == 0 else arrow

    subst_mor = _thin_subst_mor(_r_subst_obj, component)
    return CatOperad("R", component, TIGHT, _r_subst_obj, subst_mor,
                     arity_uniform=True)


def dual_operad(op: CatOperad) -> CatOperad:
    """Reverse every component; objects, unit and the object-level substitution
    rule are unchanged, and morphism ids are preserved (so the morphism rule
    carries over with endpoints swapped)."""

    def component(n: int) -> FinCategory:
        return opposite_category(op.component(n))

    name = {"R": "L", "L": "R"}.get(op.name, f"{op.name}*")
    return CatOperad(name, component, op.unit, op.subst_obj, op.subst_mor,
                     arity_uniform=op.arity_uniform)


def make_L_operad() -> CatOperad:
    return dual_operad(make_R_operad())


def operad_by_name(name: str) -> CatOperad:
    try:
        return {"N": make_terminal_operad, "R": make_R_operad, "L": make_L_operad}[name]()
    except KeyError:
        raise StructureError(f"unknown operad {name!r}; expected N, R or L") from None


def _compositions(total_max: int, parts: int):
    """All tuples of `parts` nonnegative ints with sum <= total_max."""
    if parts == 0:
        yield ()
        return
    for first in range(total_max + 1):
        for rest in _compositions(total_max - first, parts - 1):
            yield (first,) + rest


def _is_thin(cat: FinCategory) -> bool:
    seen = set()
    for m, s, t in cat.morphisms:
        if (s, t) in seen:
            return False
        seen.add((s, t))
    return True


def check_operad_axioms(op: CatOperad, bound: int = 5) -> list[Violation]:
    """Functoriality, unit and associativity of substitution for every arity
    combination with total arity <= bound.

    Two soundness-preserving shortcuts keep this tractable: for
    ``arity_uniform`` operads whose positive components coincide, shapes that
    differ only by inflating a positive arity are collapsed to a single
    representative; and morphism-level associativity is left implicit when all
    components are thin (two parallel morphisms are then equal).
    """
    out: list[Violation] = []
    comps = {n: op.component(n) for n in range(bound + 1)}
    for n, cat in comps.items():
        for v in check_category(cat):
            out.append(Violation.of("component-category", arity=str(n), law=v.law))
    if out:
        return out
    if op.unit not in comps[1].objects:
        return [Violation.of("unit-missing", unit=op.unit)]

    all_thin = all(_is_thin(c) for c in comps.values())
    canon1 = comps[1].canonical()
    collapse = op.arity_uniform and all(
        comps[n].canonical() == canon1 for n in range(2, bound + 1))

    def ks_space(parts: int):
        if collapse:
            return itertools.product((0, 1), repeat=parts)
        return _compositions(bound, parts)

    def shapes():
        for n in range(bound + 1):
            for ks in ks_space(n):
                if sum(ks) <= bound:
                    yield n, ks

    def objs(n):
        return comps[n].objects

    def mors(n):
        return [m for m, _, _ in comps[n].morphisms]

    # Totality and functoriality per single-level shape.
    for n, ks in shapes():
        total = sum(ks)
        cod = comps[total]
        cod_objs = set(cod.objects)
        for x in objs(n):
            for xs in itertools.product(*(objs(k) for k in ks)):
                try:
                    r = op.subst_obj(x, xs, ks)
                except Exception:
                    r = None
                if r not in cod_objs:
                    out.append(Violation.of("subst-object", x=x, xs=str(xs), ks=str(ks)))
        for f in mors(n):
            for fs in itertools.product(*(mors(k) for k in ks)):
                try:
                    rm = op.subst_mor(f, fs, ks)
                except Exception:
                    rm = None
                if rm is None or not cod.has_morphism(rm):
                    out.append(Violation.of("subst-morphism", f=f, fs=str(fs), ks=str(ks)))
                    continue
                src = op.subst_obj(comps[n].src(f),
                                   tuple(comps[k].src(g) for g, k in zip(fs, ks)), ks)
                tgt = op.subst_obj(comps[n].tgt(f),
                                   tuple(comps[k].tgt(g) for g, k in zip(fs, ks)), ks)
                if cod.src(rm) != src or cod.tgt(rm) != tgt:
                    out.append(Violation.of("subst-endpoints", f=f, fs=str(fs), ks=str(ks)))
        for x in objs(n):
            for xs in itertools.product(*(objs(k) for k in ks)):
                fid = comps[n].id_of(x)
                fids = tuple(comps[k].id_of(y) for y, k in zip(xs, ks))
                if op.subst_mor(fid, fids, ks) != cod.id_of(op.subst_obj(x, xs, ks)):
                    out.append(Violation.of("subst-functor-identity", x=x, xs=str(xs), ks=str(ks)))
        comp_pairs_inner = [list(comps[k].compose) for k in ks]
        for g, f in comps[n].compose:
            for pairs in itertools.product(*comp_pairs_inner):
                gs = tuple(p[0] for p in pairs)
                fs = tuple(p[1] for p in pairs)
                lhs = op.subst_mor(comps[n].comp(g, f),
                                   tuple(comps[k].comp(gg, ff)
                                         for (gg, ff), k in zip(pairs, ks)), ks)
                rhs = cod.compose.get((op.subst_mor(g, gs, ks), op.subst_mor(f, fs, ks)))
                if lhs != rhs:
                    out.append(Violation.of("subst-functor-composition", g=g, f=f, ks=str(ks)))

    # Unit laws, including substitution by all-units as a table identity.
    for n in range(bound + 1):
        ks = (1,) * n
        units = (op.unit,) * n
        unit_ids = (comps[1].id_of(op.unit),) * n
        for x in objs(n):
            if op.subst_obj(x, units, ks) != x:
                out.append(Violation.of("unit-right-object", x=x, arity=str(n)))
            if op.subst_obj(op.unit, (x,), (n,)) != x:
                out.append(Violation.of("unit-left-object", x=x, arity=str(n)))
        for f in mors(n):
            if op.subst_mor(f, unit_ids, ks) != f:
                out.append(Violation.of("unit-right-morphism", f=f, arity=str(n)))
            if op.subst_mor(comps[1].id_of(op.unit), (f,), (n,)) != f:
                out.append(Violation.of("unit-left-morphism", f=f, arity=str(n)))

    # Associativity of double substitution.
    for n, ks in shapes():
        inner_shape_opts = [[ms for ms in ks_space(k)] for k in ks]
        for mss in itertools.product(*inner_shape_opts):
            flat_ms = tuple(m for ms in mss for m in ms)
            if sum(flat_ms) > bound:
                continue
            sums = tuple(sum(ms) for ms in mss)
            inner_opts = [list(itertools.product(*(objs(m) for m in ms))) for ms in mss]
            for x in objs(n):
                for xs in itertools.product(*(objs(k) for k in ks)):
                    mid = op.subst_obj(x, xs, ks)
                    for yss in itertools.product(*inner_opts):
                        flat_ys = tuple(y for ys in yss for y in ys)
                        lhs = op.subst_obj(mid, flat_ys, flat_ms)
                        inner = tuple(op.subst_obj(xi, ys, ms)
                                      for xi, ys, ms in zip(xs, yss, mss))
                        rhs = op.subst_obj(x, inner, sums)
                        if lhs != rhs:
                            out.append(Violation.of(
                                "subst-associativity", x=x, xs=str(xs),
                                ys=str(yss), shape=f"{n}{ks}{mss}"))
            if all_thin:
                continue
            inner_mor_opts = [list(itertools.product(*(mors(m) for m in ms))) for ms in mss]
            for f in mors(n):
                for fs in itertools.product(*(mors(k) for k in ks)):
                    midm = op.subst_mor(f, fs, ks)
                    for hss in itertools.product(*inner_mor_opts):
                        flat_hs = tuple(h for hs in hss for h in hs)
                        lhs = op.subst_mor(midm, flat_hs, flat_ms)
                        inner = tuple(op.subst_mor(fi, hs, ms)
                                      for fi, hs, ms in zip(fs, hss, mss))
                        rhs = op.subst_mor(f, inner, sums)
                        if lhs != rhs:
                            out.append(Violation.of(
                                "subst-associativity-morphism", f=f,
                                shape=f"{n}{ks}{mss}"))
    return out
