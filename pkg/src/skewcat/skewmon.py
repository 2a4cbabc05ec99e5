"""Skew monoidal categories on explicit finite categories.

The tensor is a genuine functor from the materialized product category; the
associativity and unit constraints are component tables that need not be
invertible.  The checker enforces naturality plus the five coherence axioms

    A1  (1_a ⊗ α_{b,c,d}) ∘ α_{a,b⊗c,d} ∘ (α_{a,b,c} ⊗ 1_d)
          = α_{a,b,c⊗d} ∘ α_{a⊗b,c,d}
    A2  λ_{a⊗b} ∘ α_{i,a,b} = λ_a ⊗ 1_b
    A3  α_{a,b,i} ∘ ρ_{a⊗b} = 1_a ⊗ ρ_b
    A4  (1_a ⊗ λ_b) ∘ α_{a,i,b} ∘ (ρ_a ⊗ 1_b) = 1_{a⊗b}
    A5  λ_i ∘ ρ_i = 1_i

at every object tuple.  Missing components are a structural error rather than
an axiom failure.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .fincat import (
    FinCategory, Functor, StructureError, Violation,
    category_from_json, category_to_json, check_category, check_functor,
    is_epimorphism, pair_id, product_category,
)


@dataclass(frozen=True)
class SkewMonoidalCategory:
    base: FinCategory
    tensor: Functor                       # product_category(base, base) -> base
    unit: str
    alpha: dict[tuple[str, str, str], str]
    lambda_: dict[str, str]
    rho: dict[str, str]

    def t_obj(self, a: str, b: str) -> str:
        return self.tensor.obj_map[pair_id(a, b)]

    def t_mor(self, f: str, g: str) -> str:
        return self.tensor.mor_map[pair_id(f, g)]

    def t_mor_left(self, f: str, b: str) -> str:
        """f ⊗ 1_b."""
        return self.t_mor(f, self.base.id_of(b))

    def t_mor_right(self, a: str, g: str) -> str:
        """1_a ⊗ g."""
        return self.t_mor(self.base.id_of(a), g)


def make_skew_monoidal(base: FinCategory,
                       tensor_obj: dict[tuple[str, str], str],
                       tensor_mor: dict[tuple[str, str], str],
                       unit: str,
                       alpha: dict[tuple[str, str, str], str],
                       lambda_: dict[str, str],
                       rho: dict[str, str]) -> SkewMonoidalCategory:
    square = product_category(base, base)
    try:
        obj_map = {pair_id(a, b): tensor_obj[(a, b)]
                   for a in base.objects for b in base.objects}
        mor_map = {pair_id(f, g): tensor_mor[(f, g)]
                   for f, _, _ in base.morphisms for g, _, _ in base.morphisms}
    except KeyError as exc:
        raise StructureError(f"tensor table misses {exc.args[0]!r}") from exc
    tensor = Functor(square, base, obj_map, mor_map)
    return SkewMonoidalCategory(base, tensor, unit, dict(alpha), dict(lambda_), dict(rho))


def check_skew_monoidal(c: SkewMonoidalCategory) -> list[Violation]:
    out = list(check_category(c.base))
    if out:
        return out
    out.extend(check_functor(c.tensor))
    if c.tensor.target is not c.base and c.tensor.target.canonical() != c.base.canonical():
        raise StructureError("tensor does not land in the base category")
    if c.unit not in set(c.base.objects):
        raise StructureError(f"unit {c.unit!r} is not an object")
    base = c.base
    for a in base.objects:
        if a not in c.lambda_ or a not in c.rho:
            raise StructureError(f"missing unit component at {a!r}")
        for b in base.objects:
            for d in base.objects:
                if (a, b, d) not in c.alpha:
                    raise StructureError(f"missing associativity component at {(a, b, d)!r}")
    if out:
        return out

    def o(a, b):
        return c.t_obj(a, b)

    def seq(*fs):
        acc = fs[0]
        for f in fs[1:]:
            if acc is None or f is None:
                return None
            acc = base.compose.get((f, acc))
        return acc

    ident = base.id_of
    i = c.unit
    for a in base.objects:
        la, ra = c.lambda_[a], c.rho[a]
        if base.src(la) != o(i, a) or base.tgt(la) != a:
            out.append(Violation.of("lambda-endpoints", a=a, component=la))
        if base.src(ra) != a or base.tgt(ra) != o(a, i):
            out.append(Violation.of("rho-endpoints", a=a, component=ra))
    for (a, b, d), al in c.alpha.items():
        if base.src(al) != o(o(a, b), d) or base.tgt(al) != o(a, o(b, d)):
            out.append(Violation.of("alpha-endpoints", a=a, b=b, c=d, component=al))
    if out:
        return out

    mors = [m for m, _, _ in base.morphisms]
    for f in mors:
        a, b = base.src(f), base.tgt(f)
        if seq(c.t_mor(ident(i), f), c.lambda_[b]) != seq(c.lambda_[a], f):
            out.append(Violation.of("lambda-naturality", f=f))
        if seq(f, c.rho[b]) != seq(c.rho[a], c.t_mor(f, ident(i))):
            out.append(Violation.of("rho-naturality", f=f))
    for f in mors:
        for g in mors:
            for h in mors:
                a1, b1, c1 = base.src(f), base.src(g), base.src(h)
                a2, b2, c2 = base.tgt(f), base.tgt(g), base.tgt(h)
                lhs = seq(c.t_mor(c.t_mor(f, g), h), c.alpha[(a2, b2, c2)])
                rhs = seq(c.alpha[(a1, b1, c1)], c.t_mor(f, c.t_mor(g, h)))
                if lhs != rhs:
                    out.append(Violation.of("alpha-naturality", f=f, g=g, h=h))

    for a in base.objects:
        for b in base.objects:
            for d in base.objects:
                for e in base.objects:
                    lhs = seq(c.t_mor_left(c.alpha[(a, b, d)], e),
                              c.alpha[(a, o(b, d), e)],
                              c.t_mor_right(a, c.alpha[(b, d, e)]))
                    rhs = seq(c.alpha[(o(a, b), d, e)], c.alpha[(a, b, o(d, e))])
                    if lhs != rhs:
                        out.append(Violation.of("A1", a=a, b=b, c=d, d=e,
                                                left=str(lhs), right=str(rhs)))
    for a in base.objects:
        for b in base.objects:
            if seq(c.alpha[(i, a, b)], c.lambda_[o(a, b)]) != c.t_mor_left(c.lambda_[a], b):
                out.append(Violation.of("A2", a=a, b=b))
            if seq(c.rho[o(a, b)], c.alpha[(a, b, i)]) != c.t_mor_right(a, c.rho[b]):
                out.append(Violation.of("A3", a=a, b=b))
            if seq(c.t_mor_left(c.rho[a], b), c.alpha[(a, i, b)],
                   c.t_mor_right(a, c.lambda_[b])) != ident(o(a, b)):
                out.append(Violation.of("A4", a=a, b=b))
    if seq(c.rho[i], c.lambda_[i]) != ident(i):
        out.append(Violation.of("A5"))
    return out


def is_left_normal(c: SkewMonoidalCategory) -> bool:
    """Every left unit component is invertible."""
    return all(c.base.is_iso(c.lambda_[a]) for a in c.base.objects)


def lambda_all_epi(c: SkewMonoidalCategory) -> bool:
    return all(is_epimorphism(c.base, c.lambda_[a]) for a in c.base.objects)


def left_bracketed_tensor(c: SkewMonoidalCategory, objs: tuple[str, ...],
                          leading_unit: bool = False) -> str:
    """a1...an bracketed to the left; optionally with the unit prepended."""
    if not objs and not leading_unit:
        raise StructureError("empty tensor word")
    parts = ((c.unit,) if leading_unit else ()) + tuple(objs)
    acc = parts[0]
    for a in parts[1:]:
        acc = c.t_obj(acc, a)
    return acc


def left_bracketed_tensor_mor(c: SkewMonoidalCategory, mors: tuple[str, ...],
                              leading_unit: bool = False) -> str:
    if not mors and not leading_unit:
        raise StructureError("empty tensor word")
    parts = ((c.base.id_of(c.unit),) if leading_unit else ()) + tuple(mors)
    acc = parts[0]
    for f in parts[1:]:
        acc = c.t_mor(acc, f)
    return acc


def unit_absorption(c: SkewMonoidalCategory, objs: tuple[str, ...]) -> str:
    """The comparison i·a1...an -> a1...an: the left unit map at a1, tensored
    on the right with identities up the left-bracketed spine."""
    if not objs:
        raise StructureError("need at least one object")
    acc = c.lambda_[objs[0]]
    for a in objs[1:]:
        acc = c.t_mor_left(acc, a)
    return acc


@dataclass(frozen=True)
class ClosedMonoidalStructure:
    hom_obj: dict[tuple[str, str], str]   # (b, c) -> [b, c]
    evaluation: dict[tuple[str, str], str]  # (b, c) -> e: [b,c] ⊗ b -> c


def is_closed_skew_monoidal(c: SkewMonoidalCategory) -> ClosedMonoidalStructure | None:
    """Search (in lexicographic object order) for internal homs [b, c] with an
    evaluation morphism inducing bijections C(a, [b,c]) -> C(a⊗b, c)."""
    base = c.base
    hom_obj, evaluation = {}, {}
    for b in sorted(base.objects):
        for d in sorted(base.objects):
            found = None
            for h in sorted(base.objects):
                for e in base.hom(c.t_obj(h, b), d):
                    if all(_closed_bijection(c, h, b, d, e, a) for a in base.objects):
                        found = (h, e)
                        break
                if found:
                    break
            if not found:
                return None
            hom_obj[(b, d)] = found[0]
            evaluation[(b, d)] = found[1]
    return ClosedMonoidalStructure(hom_obj, evaluation)


def _closed_bijection(c, h, b, d, e, a):
    base = c.base
    image = [base.compose.get((e, c.t_mor_left(f, b))) for f in base.hom(a, h)]
    target = base.hom(c.t_obj(a, b), d)
    return None not in image and len(set(image)) == len(image) == len(target) \
        and set(image) == set(target)


# -- lax monoidal functors ----------------------------------------------------

@dataclass(frozen=True)
class LaxMonoidalFunctor:
    source: SkewMonoidalCategory
    target: SkewMonoidalCategory
    functor: Functor
    binary: dict[tuple[str, str], str]  # (a, b) -> F2: Fa ⊗ Fb -> F(a⊗b)
    unit: str                           # F0: i -> Fi


def check_lax_monoidal(f: LaxMonoidalFunctor) -> list[Violation]:
    src, tgt = f.source, f.target
    out = list(check_functor(f.functor))
    if out:
        return out
    base = tgt.base
    fo, fm = f.functor.obj_map, f.functor.mor_map

    def seq(*fs):
        acc = fs[0]
        for g in fs[1:]:
            if acc is None or g is None:
                return None
            acc = base.compose.get((g, acc))
        return acc

    for a in src.base.objects:
        for b in src.base.objects:
            f2 = f.binary.get((a, b))
            if f2 is None:
                raise StructureError(f"missing binary component at {(a, b)!r}")
            if base.src(f2) != tgt.t_obj(fo[a], fo[b]) or base.tgt(f2) != fo[src.t_obj(a, b)]:
                out.append(Violation.of("lax-binary-endpoints", a=a, b=b))
    if base.src(f.unit) != tgt.unit or base.tgt(f.unit) != fo[src.unit]:
        out.append(Violation.of("lax-unit-endpoints"))
    if out:
        return out

    for m1, a1, a2 in src.base.morphisms:
        for m2, b1, b2 in src.base.morphisms:
            lhs = seq(tgt.t_mor(fm[m1], fm[m2]), f.binary[(a2, b2)])
            rhs = seq(f.binary[(a1, b1)], fm[src.t_mor(m1, m2)])
            if lhs != rhs:
                out.append(Violation.of("lax-binary-naturality", f=m1, g=m2))
    for a in src.base.objects:
        for b in src.base.objects:
            for d in src.base.objects:
                lhs = seq(tgt.t_mor_left(f.binary[(a, b)], fo[d]),
                          f.binary[(src.t_obj(a, b), d)],
                          fm[src.alpha[(a, b, d)]])
                rhs = seq(tgt.alpha[(fo[a], fo[b], fo[d])],
                          tgt.t_mor_right(fo[a], f.binary[(b, d)]),
                          f.binary[(a, src.t_obj(b, d))])
                if lhs != rhs:
                    out.append(Violation.of("lax-hexagon", a=a, b=b, c=d))
    for a in src.base.objects:
        lhs = seq(tgt.t_mor_left(f.unit, fo[a]), f.binary[(src.unit, a)],
                  fm[src.lambda_[a]])
        if lhs != tgt.lambda_[fo[a]]:
            out.append(Violation.of("lax-left-unit", a=a))
        rhs = seq(tgt.rho[fo[a]], tgt.t_mor_right(fo[a], f.unit), f.binary[(a, src.unit)])
        if fm[src.rho[a]] != rhs:
            out.append(Violation.of("lax-right-unit", a=a))
    return out


def _functor_isos(c: FinCategory, d: FinCategory):
    """Invertible functors c -> d, in canonical order."""
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return
    src_objs = sorted(c.objects)
    for perm in itertools.permutations(sorted(d.objects)):
        sigma = dict(zip(src_objs, perm))
        homs = [(a, b) for a in src_objs for b in src_objs]
        if any(len(c.hom(a, b)) != len(d.hom(sigma[a], sigma[b])) for a, b in homs):
            continue
        per_hom = []
        for a, b in homs:
            source = c.hom(a, b)
            targets = d.hom(sigma[a], sigma[b])
            tables = []
            for perm2 in itertools.permutations(targets):
                table = dict(zip(source, perm2))
                if a == b and table.get(c.id_of(a)) != d.id_of(sigma[a]):
                    continue
                tables.append(table)
            per_hom.append(tables)
        for choice in itertools.product(*per_hom):
            mor_map = {}
            for table in choice:
                mor_map.update(table)
            fun = Functor(c, d, sigma, mor_map)
            if not check_functor(fun):
                yield fun


def monoidal_iso_search(c: SkewMonoidalCategory, d: SkewMonoidalCategory
                        ) -> tuple[LaxMonoidalFunctor, LaxMonoidalFunctor] | None:
    """Mutually inverse lax monoidal functors with invertible structure maps,
    or None; the first witness in canonical order is returned."""
    for fun in _functor_isos(c.base, d.base):
        f0_candidates = [m for m in d.base.hom(d.unit, fun.obj_map[c.unit])
                         if d.base.is_iso(m)]
        pair_opts = []
        pairs = [(a, b) for a in sorted(c.base.objects) for b in sorted(c.base.objects)]
        for a, b in pairs:
            opts = [m for m in d.base.hom(d.t_obj(fun.obj_map[a], fun.obj_map[b]),
                                          fun.obj_map[c.t_obj(a, b)])
                    if d.base.is_iso(m)]
            pair_opts.append(opts)
        for f0 in f0_candidates:
            for combo in itertools.product(*pair_opts):
                binary = dict(zip(pairs, combo))
                lax = LaxMonoidalFunctor(c, d, fun, binary, f0)
                if check_lax_monoidal(lax):
                    continue
                inv = _invert_lax(lax)
                if not check_lax_monoidal(inv):
                    return lax, inv
    return None


def _invert_lax(lax: LaxMonoidalFunctor) -> LaxMonoidalFunctor:
    c, d, fun = lax.source, lax.target, lax.functor
    inv_obj = {v: k for k, v in fun.obj_map.items()}
    inv_mor = {v: k for k, v in fun.mor_map.items()}
    gun = Functor(d.base, c.base, inv_obj, inv_mor)
    binary = {}
    for a in d.base.objects:
        for b in d.base.objects:
            f2 = lax.binary[(inv_obj[a], inv_obj[b])]
            binary[(a, b)] = inv_mor[d.base.inverse(f2)]
    unit = inv_mor[d.base.inverse(lax.unit)]
    return LaxMonoidalFunctor(d, c, gun, binary, unit)


def identity_lax(c: SkewMonoidalCategory) -> LaxMonoidalFunctor:
    fun = Functor(c.base, c.base, {a: a for a in c.base.objects},
                  {m: m for m, _, _ in c.base.morphisms})
    binary = {(a, b): c.base.id_of(c.t_obj(a, b))
              for a in c.base.objects for b in c.base.objects}
    return LaxMonoidalFunctor(c, c, fun, binary, c.base.id_of(c.unit))


# -- JSON --------------------------------------------------------------------

_SM_KEYS = {"category", "tensor", "unit", "alpha", "lambda", "rho"}


def skewmon_to_json(c: SkewMonoidalCategory) -> dict:
    base = c.base
    return {
        "category": category_to_json(base),
        "tensor": {
            "objects": [[a, b, c.t_obj(a, b)]
                        for a in base.objects for b in base.objects],
            "morphisms": [[f, g, c.t_mor(f, g)]
                          for f, _, _ in base.morphisms for g, _, _ in base.morphisms],
        },
        "unit": c.unit,
        "alpha": [[a, b, d, m] for (a, b, d), m in sorted(c.alpha.items())],
        "lambda": [[a, m] for a, m in sorted(c.lambda_.items())],
        "rho": [[a, m] for a, m in sorted(c.rho.items())],
    }


def skewmon_from_json(data: dict) -> SkewMonoidalCategory:
    if not isinstance(data, dict) or set(data) != _SM_KEYS:
        raise StructureError(f"skew monoidal object must have exactly the keys {sorted(_SM_KEYS)}")
    base = category_from_json(data["category"])
    try:
        tensor = data["tensor"]
        if set(tensor) != {"objects", "morphisms"}:
            raise StructureError("tensor must have keys objects/morphisms")
        tensor_obj = {(str(a), str(b)): str(v) for a, b, v in tensor["objects"]}
        tensor_mor = {(str(f), str(g)): str(v) for f, g, v in tensor["morphisms"]}
        alpha = {(str(a), str(b), str(d)): str(m) for a, b, d, m in data["alpha"]}
        lambda_ = {str(a): str(m) for a, m in data["lambda"]}
        rho = {str(a): str(m) for a, m in data["rho"]}
        unit = str(data["unit"])
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"malformed skew monoidal JSON: {exc}") from exc
    for a in base.objects:
        for b in base.objects:
            if (a, b) not in tensor_obj:
                raise StructureError(f"tensor object table misses {(a, b)!r}")
    for f, _, _ in base.morphisms:
        for g, _, _ in base.morphisms:
            if (f, g) not in tensor_mor:
                raise StructureError(f"tensor morphism table misses {(f, g)!r}")
    return make_skew_monoidal(base, tensor_obj, tensor_mor, unit, alpha, lambda_, rho)


def skewmon_from_path(path: str) -> SkewMonoidalCategory:
    with open(path, encoding="utf-8") as fh:
        return skewmon_from_json(json.load(fh))
