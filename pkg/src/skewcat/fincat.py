"""Explicit finite categories given by composition tables, with total law checkers.

Objects and morphisms are identified by strings; equality of morphisms is
equality of ids.  All structures are immutable after construction and every
operation here is a pure function, so values can be shared freely.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class StructureError(ValueError):
    """A table is malformed (dangling ids, missing entries, bad keys).

    Distinct from a law violation: a structure that raises this cannot even
    be asked whether it satisfies the category laws.
    """


@dataclass(frozen=True)
class Violation:
    """One failed law instance, naming the offending cells."""

    law: str
    details: tuple[tuple[str, str], ...]

    @staticmethod
    def of(law: str, **details: str) -> "Violation":
        return Violation(law, tuple(sorted(details.items())))

    def to_dict(self) -> dict:
        return {"law": self.law, "details": dict(self.details)}


def report_to_json(violations: list[Violation]) -> list[dict]:
    return [v.to_dict() for v in violations]


@dataclass(frozen=True)
class FinCategory:
    """A finite category: objects, morphisms with endpoints, identities, and a
    composition table keyed by composable pairs (g, f) with tgt(f) = src(g)."""

    objects: tuple[str, ...]
    morphisms: tuple[tuple[str, str, str], ...]  # (id, src, tgt)
    identity: dict[str, str]                     # object -> morphism id
    compose: dict[tuple[str, str], str]          # (g, f) -> g after f

    def __post_init__(self):
        object.__setattr__(self, "_src", {m: s for m, s, _ in self.morphisms})
        object.__setattr__(self, "_tgt", {m: t for m, _, t in self.morphisms})
        homs: dict[tuple[str, str], list[str]] = {}
        for m, s, t in self.morphisms:
            homs.setdefault((s, t), []).append(m)
        object.__setattr__(self, "_hom", {k: tuple(v) for k, v in homs.items()})
        if len(set(self.objects)) != len(self.objects):
            raise StructureError("duplicate object ids")
        if len(self._src) != len(self.morphisms):
            raise StructureError("duplicate morphism ids")

    # -- lookups ---------------------------------------------------------

    def src(self, m: str) -> str:
        return self._src[m]

    def tgt(self, m: str) -> str:
        return self._tgt[m]

    def has_morphism(self, m: str) -> bool:
        return m in self._src

    def id_of(self, obj: str) -> str:
        return self.identity[obj]

    def comp(self, g: str, f: str) -> str:
        """g after f."""
        return self.compose[(g, f)]

    def comp_seq(self, *ms: str) -> str:
        """Composite of a path listed source-to-target: comp_seq(f, g) = g after f."""
        it = iter(ms)
        acc = next(it)
        for m in it:
            acc = self.comp(m, acc)
        return acc

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._hom.get((a, b), ())

    def is_identity(self, m: str) -> bool:
        return self.identity.get(self._src[m]) == m

    def inverse(self, m: str) -> str | None:
        a, b = self._src[m], self._tgt[m]
        for g in self.hom(b, a):
            if self.compose.get((g, m)) == self.identity.get(a) and \
               self.compose.get((m, g)) == self.identity.get(b):
                return g
        return None

    def is_iso(self, m: str) -> bool:
        return self.inverse(m) is not None

    def canonical(self) -> "FinCategory":
        """Copy with objects and morphisms sorted; used for table comparison."""
        return FinCategory(
            tuple(sorted(self.objects)),
            tuple(sorted(self.morphisms)),
            dict(sorted(self.identity.items())),
            dict(sorted(self.compose.items())),
        )


def check_category(cat: FinCategory) -> list[Violation]:
    """All category-law violations; empty iff the table is a category.

    Referential problems (ids that do not resolve, composition entries on
    non-composable pairs) raise StructureError instead of being reported.
    """
    objset = set(cat.objects)
    for m, s, t in cat.morphisms:
        if s not in objset or t not in objset:
            raise StructureError(f"morphism {m!r} has dangling endpoint")
    for obj in cat.objects:
        if obj not in cat.identity:
            raise StructureError(f"object {obj!r} has no identity")
        i = cat.identity[obj]
        if not cat.has_morphism(i):
            raise StructureError(f"identity {i!r} of {obj!r} is not a morphism")
        if cat.src(i) != obj or cat.tgt(i) != obj:
            raise StructureError(f"identity {i!r} of {obj!r} has wrong endpoints")
    for obj in cat.identity:
        if obj not in objset:
            raise StructureError(f"identity table names unknown object {obj!r}")
    for (g, f), gf in cat.compose.items():
        if not (cat.has_morphism(g) and cat.has_morphism(f) and cat.has_morphism(gf)):
            raise StructureError(f"composition entry ({g!r},{f!r}) has dangling id")
        if cat.tgt(f) != cat.src(g):
            raise StructureError(f"composition entry ({g!r},{f!r}) is not composable")

    out: list[Violation] = []
    mors = [m for m, _, _ in cat.morphisms]
    for f in mors:
        for g in mors:
            if cat.tgt(f) != cat.src(g):
                continue
            gf = cat.compose.get((g, f))
            if gf is None:
                out.append(Violation.of("composition-total", g=g, f=f))
                continue
            if cat.src(gf) != cat.src(f) or cat.tgt(gf) != cat.tgt(g):
                out.append(Violation.of("composition-endpoints", g=g, f=f, gf=gf))
    for f in mors:
        i_t = cat.identity.get(cat.tgt(f))
        i_s = cat.identity.get(cat.src(f))
        if i_t is not None and cat.compose.get((i_t, f)) != f:
            out.append(Violation.of("identity-left", f=f))
        if i_s is not None and cat.compose.get((f, i_s)) != f:
            out.append(Violation.of("identity-right", f=f))
    for f in mors:
        for g in mors:
            if cat.tgt(f) != cat.src(g) or (g, f) not in cat.compose:
                continue
            for h in mors:
                if cat.tgt(g) != cat.src(h) or (h, g) not in cat.compose:
                    continue
                left = cat.compose.get((h, cat.compose[(g, f)]))
                right = cat.compose.get((cat.compose[(h, g)], f))
                if left != right:
                    out.append(Violation.of("associativity", h=h, g=g, f=f,
                                            left=str(left), right=str(right)))
    return out


@dataclass(frozen=True)
class Functor:
    source: FinCategory
    target: FinCategory
    obj_map: dict[str, str]
    mor_map: dict[str, str]

    def on_obj(self, a: str) -> str:
        return self.obj_map[a]

    def on_mor(self, f: str) -> str:
        return self.mor_map[f]


def identity_functor(cat: FinCategory) -> Functor:
    return Functor(cat, cat,
                   {a: a for a in cat.objects},
                   {m: m for m, _, _ in cat.morphisms})


def check_functor(fun: Functor) -> list[Violation]:
    src, tgt = fun.source, fun.target
    for a in src.objects:
        if a not in fun.obj_map:
            raise StructureError(f"object {a!r} not mapped")
        if fun.obj_map[a] not in set(tgt.objects):
            raise StructureError(f"object {a!r} maps outside the target")
    for m, _, _ in src.morphisms:
        if m not in fun.mor_map:
            raise StructureError(f"morphism {m!r} not mapped")
        if not tgt.has_morphism(fun.mor_map[m]):
            raise StructureError(f"morphism {m!r} maps outside the target")

    out: list[Violation] = []
    for m, s, t in src.morphisms:
        fm = fun.mor_map[m]
        if tgt.src(fm) != fun.obj_map[s] or tgt.tgt(fm) != fun.obj_map[t]:
            out.append(Violation.of("functor-endpoints", f=m, image=fm))
    for a in src.objects:
        if fun.mor_map[src.id_of(a)] != tgt.id_of(fun.obj_map[a]):
            out.append(Violation.of("functor-identity", obj=a))
    for (g, f), gf in src.compose.items():
        pair = (fun.mor_map[g], fun.mor_map[f])
        if pair in tgt.compose:
            if tgt.compose[pair] != fun.mor_map[gf]:
                out.append(Violation.of("functor-composition", g=g, f=f))
        else:
            out.append(Violation.of("functor-composition", g=g, f=f))
    return out


@dataclass(frozen=True)
class NatTrans:
    source: Functor
    target: Functor
    components: dict[str, str]  # object of the common domain -> morphism of the codomain

    def at(self, a: str) -> str:
        return self.components[a]


def check_nat_trans(nt: NatTrans) -> list[Violation]:
    fun, gun = nt.source, nt.target
    if fun.source is not gun.source and fun.source.canonical() != gun.source.canonical():
        raise StructureError("functors do not share a domain")
    if fun.target is not gun.target and fun.target.canonical() != gun.target.canonical():
        raise StructureError("functors do not share a codomain")
    cod = fun.target
    for a in fun.source.objects:
        if a not in nt.components:
            raise StructureError(f"no component at {a!r}")
        if not cod.has_morphism(nt.components[a]):
            raise StructureError(f"component at {a!r} is not a morphism")

    out: list[Violation] = []
    for a in fun.source.objects:
        c = nt.components[a]
        if cod.src(c) != fun.obj_map[a] or cod.tgt(c) != gun.obj_map[a]:
            out.append(Violation.of("component-endpoints", obj=a, component=c))
            continue
    for m, a, b in fun.source.morphisms:
        ca, cb = nt.components[a], nt.components[b]
        left = cod.compose.get((cb, fun.mor_map[m]))
        right = cod.compose.get((gun.mor_map[m], ca))
        if left != right or left is None:
            out.append(Violation.of("naturality", f=m, left=str(left), right=str(right)))
    return out


# -- product / opposite ----------------------------------------------------

def pair_id(x: str, y: str) -> str:
    return f"({x},{y})"


def product_category(c: FinCategory, d: FinCategory) -> FinCategory:
    """Componentwise product; pair ids are rendered as "(x,y)".

    Ids containing parentheses or commas would make the rendering ambiguous,
    so they are rejected.
    """
    for name in (*c.objects, *d.objects,
                 *(m for m, _, _ in c.morphisms), *(m for m, _, _ in d.morphisms)):
        if any(ch in name for ch in "(),"):
            raise StructureError(f"id {name!r} cannot be used in a product")
    objects = tuple(pair_id(a, b) for a in c.objects for b in d.objects)
    morphisms = tuple(
        (pair_id(f, g), pair_id(fs, gs), pair_id(ft, gt))
        for f, fs, ft in c.morphisms
        for g, gs, gt in d.morphisms
    )
    identity = {pair_id(a, b): pair_id(c.id_of(a), d.id_of(b))
                for a in c.objects for b in d.objects}
    compose = {}
    for (g1, f1), h1 in c.compose.items():
        for (g2, f2), h2 in d.compose.items():
            compose[(pair_id(g1, g2), pair_id(f1, f2))] = pair_id(h1, h2)
    return FinCategory(objects, morphisms, identity, compose)


def opposite_category(c: FinCategory) -> FinCategory:
    morphisms = tuple((m, t, s) for m, s, t in c.morphisms)
    compose = {(f, g): gf for (g, f), gf in c.compose.items()}
    return FinCategory(c.objects, morphisms, dict(c.identity), compose)


def is_epimorphism(cat: FinCategory, f: str) -> bool:
    """Right-cancellable: g∘f = h∘f forces g = h, over all parallel pairs."""
    if not cat.has_morphism(f):
        raise StructureError(f"no morphism {f!r}")
    b = cat.tgt(f)
    outgoing = [m for m, s, _ in cat.morphisms if s == b]
    for g in outgoing:
        for h in outgoing:
            if cat.tgt(g) != cat.tgt(h):
                continue
            if cat.compose.get((g, f)) == cat.compose.get((h, f)) and g != h:
                return False
    return True


# -- JSON --------------------------------------------------------------------

_CAT_KEYS = {"objects", "morphisms", "identities", "compose"}


def category_to_json(cat: FinCategory) -> dict:
    return {
        "objects": list(cat.objects),
        "morphisms": [{"id": m, "src": s, "tgt": t} for m, s, t in cat.morphisms],
        "identities": dict(cat.identity),
        "compose": [{"g": g, "f": f, "gf": gf}
                    for (g, f), gf in sorted(cat.compose.items())],
    }


def category_from_json(data: dict) -> FinCategory:
    if not isinstance(data, dict) or set(data) != _CAT_KEYS:
        raise StructureError(f"category object must have exactly the keys {sorted(_CAT_KEYS)}")
    try:
        objects = tuple(str(x) for x in data["objects"])
        morphisms = tuple((str(m["id"]), str(m["src"]), str(m["tgt"]))
                          for m in data["morphisms"])
        for m in data["morphisms"]:
            if set(m) != {"id", "src", "tgt"}:
                raise StructureError("morphism entries must have keys id/src/tgt")
        identity = {str(k): str(v) for k, v in data["identities"].items()}
        compose = {}
        for e in data["compose"]:
            if set(e) != {"g", "f", "gf"}:
                raise StructureError("compose entries must have keys g/f/gf")
            compose[(str(e["g"]), str(e["f"]))] = str(e["gf"])
    except (KeyError, TypeError) as exc:
        raise StructureError(f"malformed category JSON: {exc}") from exc
    return FinCategory(objects, morphisms, identity, compose)


def category_from_path(path: str) -> FinCategory:
    with open(path, encoding="utf-8") as fh:
        return category_from_json(json.load(fh))
