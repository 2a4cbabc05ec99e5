"""Arity-truncated multicategories typed over a finite-component operad.

Hom sets are stored for every signature (operad object x at arity n, an input
tuple, an output) with n up to a truncation bound ``max_arity``; substitution
entries exist whenever the concatenated arity stays within the bound, and all
law checks quantify over exactly that stored fragment.

Multimap ids are strings unique within their own hom set; distinct hom sets
may reuse ids (a multimap is always addressed together with its signature).
Substitution and operad actions may be backed by explicit tables or by a rule
evaluated on demand and cached; the logical content is the same.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterator

from .catoperad import LAM, LOOSE, TIGHT, CatOperad, operad_by_name
from .fincat import FinCategory, StructureError, Violation, check_category

HomKey = tuple[str, tuple[str, ...], str]  # (x, inputs, output)


@dataclass(frozen=True)
class MultiMap:
    """A multimap addressed by its full signature plus its id."""

    x: str
    inputs: tuple[str, ...]
    output: str
    mid: str

    @property
    def arity(self) -> int:
        return len(self.inputs)

    @property
    def key(self) -> HomKey:
        return (self.x, self.inputs, self.output)


class TMulticategory:
    def __init__(self, operad: CatOperad, objects: tuple[str, ...], max_arity: int,
                 homs: dict[HomKey, tuple[str, ...]],
                 identities: dict[str, str],
                 action_table: dict[tuple[str, HomKey], dict[str, str]] | None = None,
                 action_rule: Callable[[str, MultiMap], str] | None = None,
                 subst_table: dict | None = None,
                 subst_rule: Callable[[MultiMap, tuple[MultiMap, ...]], str] | None = None):
        self.operad = operad
        self.objects = tuple(objects)
        self.max_arity = max_arity
        self.homs = homs
        self.identities = identities
        self.action_table = action_table
        self.action_rule = action_rule
        self.subst_table = subst_table
        self.subst_rule = subst_rule
        self._subst_cache: dict = {}
        if action_table is None and action_rule is None:
            raise StructureError("need an action table or rule")
        if subst_table is None and subst_rule is None:
            raise StructureError("need a substitution table or rule")

    # -- signatures ------------------------------------------------------

    def signatures(self) -> Iterator[HomKey]:
        for n in range(self.max_arity + 1):
            comp = self.operad.component(n)
            for x in comp.objects:
                for inputs in _tuples(self.objects, n):
                    for output in self.objects:
                        yield (x, inputs, output)

    def hom(self, x: str, inputs: tuple[str, ...], output: str) -> tuple[str, ...]:
        return self.homs.get((x, inputs, output), ())

    def maps(self, key: HomKey) -> Iterator[MultiMap]:
        for mid in self.homs.get(key, ()):
            yield MultiMap(key[0], key[1], key[2], mid)

    def all_maps(self) -> Iterator[MultiMap]:
        for key in sorted(self.homs):
            yield from self.maps(key)

    def mm(self, x: str, inputs: tuple[str, ...], output: str, mid: str) -> MultiMap:
        if mid not in self.homs.get((x, inputs, output), ()):
            raise StructureError(f"no multimap {mid!r} in hom {(x, inputs, output)!r}")
        return MultiMap(x, tuple(inputs), output, mid)

    def identity(self, a: str) -> MultiMap:
        return MultiMap(self.operad.unit, (a,), a, self.identities[a])

    # -- structure -------------------------------------------------------

    def act(self, fmor: str, m: MultiMap) -> MultiMap:
        """Apply a morphism of the operad component at m's arity."""
        comp = self.operad.component(m.arity)
        if not comp.has_morphism(fmor):
            raise StructureError(f"{fmor!r} is not a morphism of component {m.arity}")
        if comp.src(fmor) != m.x:
            raise StructureError(f"{fmor!r} does not start at {m.x!r}")
        if comp.is_identity(fmor):
            return m
        y = comp.tgt(fmor)
        if self.action_table is not None:
            table = self.action_table.get((fmor, m.key))
            if table is None or m.mid not in table:
                raise StructureError(f"no action entry for {fmor!r} at {m.key!r}")
            mid = table[m.mid]
        else:
            mid = self.action_rule(fmor, m)
        return self.mm(y, m.inputs, m.output, mid)

    def substitute(self, g: MultiMap, fs: tuple[MultiMap, ...]) -> MultiMap:
        if not fs:
            if g.arity != 0:
                raise StructureError("wrong number of inner multimaps")
            return g
        key = (g.x, g.inputs, g.output, g.mid,
               tuple((f.x, f.inputs, f.mid) for f in fs))
        hit = self._subst_cache.get(key)
        if hit is not None:
            return hit
        if len(fs) != g.arity:
            raise StructureError("wrong number of inner multimaps")
        for f, b in zip(fs, g.inputs):
            if f.output != b:
                raise StructureError(f"inner output {f.output!r} does not match slot {b!r}")
        ks = tuple(f.arity for f in fs)
        if sum(ks) > self.max_arity:
            raise StructureError(f"substitution result arity {sum(ks)} exceeds bound")
        x = self.operad.subst_obj(g.x, tuple(f.x for f in fs), ks)
        inputs = tuple(a for f in fs for a in f.inputs)
        if self.subst_table is not None:
            tkey = (g.key, g.mid, tuple((f.x, f.inputs, f.mid) for f in fs))
            if tkey not in self.subst_table:
                raise StructureError(f"no substitution entry for {tkey!r}")
            mid = self.subst_table[tkey]
        else:
            mid = self.subst_rule(g, fs)
        result = self.mm(x, inputs, g.output, mid)
        self._subst_cache[key] = result
        return result

    def subst_after(self, g: MultiMap, i: int, f: MultiMap) -> MultiMap:
        """Substitute f into position i (1-based), identities elsewhere."""
        fs = tuple(f if j == i - 1 else self.identity(b)
                   for j, b in enumerate(g.inputs))
        return self.substitute(g, fs)

    def subst_keys(self) -> Iterator[tuple[MultiMap, tuple[MultiMap, ...]]]:
        """Every substitution instance stored in the truncated fragment."""
        by_output: dict[str, list[MultiMap]] = {b: [] for b in self.objects}
        for m in self.all_maps():
            by_output[m.output].append(m)
        for key in sorted(self.homs):
            for g in self.maps(key):
                if g.arity == 0:
                    continue
                for fs in _slot_choices(g.inputs, self.max_arity, by_output):
                    yield g, fs

    def generator_subst_keys(self) -> Iterator[tuple[MultiMap, tuple[MultiMap, ...]]]:
        """Substitutions with at most one non-identity inner multimap."""
        by_output: dict[str, list[MultiMap]] = {b: [] for b in self.objects}
        for mp in self.all_maps():
            by_output[mp.output].append(mp)
        for key in sorted(self.homs):
            for g in self.maps(key):
                n = g.arity
                if n == 0:
                    continue
                for i in range(n):
                    for f in by_output[g.inputs[i]]:
                        if f.arity + n - 1 > self.max_arity:
                            continue
                        fs = tuple(f if j == i else self.identity(g.inputs[j])
                                   for j in range(n))
                        yield g, fs

    def materialize(self) -> "TMulticategory":
        """Copy with fully populated action and substitution tables."""
        action = {}
        for n in range(self.max_arity + 1):
            comp = self.operad.component(n)
            for fmor, _, _ in comp.morphisms:
                if comp.is_identity(fmor):
                    continue
                for key in sorted(self.homs):
                    if len(key[1]) != n or key[0] != comp.src(fmor):
                        continue
                    action[(fmor, key)] = {m.mid: self.act(fmor, m).mid
                                           for m in self.maps(key)}
        subst = {}
        for g, fs in self.subst_keys():
            key = (g.key, g.mid, tuple((f.x, f.inputs, f.mid) for f in fs))
            subst[key] = self.substitute(g, fs).mid
        cls = type(self)
        return cls(self.operad, self.objects, self.max_arity, dict(self.homs),
                   dict(self.identities), action_table=action, subst_table=subst)

    def tables_equal(self, other: "TMulticategory") -> bool:
        """Bit-exact comparison of the materialized content."""
        a, b = self.materialize(), other.materialize()
        return (a.operad.name == b.operad.name and a.objects == b.objects
                and a.max_arity == b.max_arity and a.homs == b.homs
                and a.identities == b.identities and a.action_table == b.action_table
                and a.subst_table == b.subst_table)


def _tuples(objects, n):
    if n == 0:
        yield ()
        return
    for rest in _tuples(objects, n - 1):
        for a in objects:
            yield rest + (a,)


class SkewMulticategory(TMulticategory):
    """Multicategory typed over the tight/loose operad, with the derived views."""

    def tight(self, inputs: tuple[str, ...], output: str) -> tuple[str, ...]:
        return self.hom(TIGHT, inputs, output)

    def loose(self, inputs: tuple[str, ...], output: str) -> tuple[str, ...]:
        return self.hom(LOOSE, inputs, output)

    def nullary(self, output: str) -> tuple[str, ...]:
        return self.hom(LOOSE, (), output)

    def j(self, m: MultiMap) -> MultiMap:
        """View a tight multimap as a loose one."""
        return self.act(LAM, m)


def make_multicat(operad, objects, max_arity, homs, identities, **kw) -> TMulticategory:
    """Pick the skew subclass when the operad is the tight/loose one."""
    cls = SkewMulticategory if operad.name == "R" else TMulticategory
    full_homs = {}
    m = TMulticategory.__new__(TMulticategory)
    m.operad, m.objects, m.max_arity = operad, tuple(objects), max_arity
    for key in m.signatures():
        full_homs[key] = tuple(homs.get(key, ()))
    for key in homs:
        if key not in full_homs:
            raise StructureError(f"hom signature {key!r} out of range")
    for a in objects:
        if a not in identities:
            raise StructureError(f"object {a!r} has no identity multimap")
        if identities[a] not in full_homs.get((operad.unit, (a,), a), ()):
            raise StructureError(f"identity of {a!r} is not in its unit hom")
    return cls(operad, tuple(objects), max_arity, full_homs, identities, **kw)


def terminal_multicat(operad: CatOperad, max_arity: int = 4,
                      objects: tuple[str, ...] = ("*",)) -> TMulticategory:
    """Singleton hom at every signature; all structure is forced."""
    homs = {}
    probe = TMulticategory.__new__(TMulticategory)
    probe.operad, probe.objects, probe.max_arity = operad, tuple(objects), max_arity
    for key in probe.signatures():
        homs[key] = ("m",)
    return make_multicat(operad, objects, max_arity, homs,
                         {a: "m" for a in objects},
                         action_rule=lambda fmor, m: "m",
                         subst_rule=lambda g, fs: "m")


# -- checking ----------------------------------------------------------------

def check_tmulticat(m: TMulticategory) -> list[Violation]:
    """Identity, functoriality, naturality and associativity of the stored
    fragment.  Naturality is checked one operad variable at a time; the joint
    squares follow from those together with functoriality."""
    keys = _validate_structure(m)
    out: list[Violation] = []

    # action functoriality: composites of non-identity morphisms
    for n in range(m.max_arity + 1):
        comp = m.operad.component(n)
        for (g, f), gf in comp.compose.items():
            if comp.is_identity(g) or comp.is_identity(f):
                continue
            for key in sorted(m.homs):
                if len(key[1]) != n or key[0] != comp.src(f):
                    continue
                for mm_ in m.maps(key):
                    if m.act(gf, mm_) != m.act(g, m.act(f, mm_)):
                        out.append(Violation.of("action-composition", g=g, f=f, m=mm_.mid))

    # identity laws
    for mm_ in m.all_maps():
        one = m.identity(mm_.output)
        if m.substitute(one, (mm_,)) != mm_:
            out.append(Violation.of("identity-left", m=mm_.mid, key=str(mm_.key)))
        if mm_.arity > 0:
            units = tuple(m.identity(a) for a in mm_.inputs)
            if m.substitute(mm_, units) != mm_:
                out.append(Violation.of("identity-right", m=mm_.mid, key=str(mm_.key)))

    # single-variable naturality of substitution in the operad variables
    for g, fs in keys:
        r = m.substitute(g, fs)
        ks = tuple(f.arity for f in fs)
        comp_n = m.operad.component(g.arity)
        for phi, s, _ in comp_n.morphisms:
            if comp_n.is_identity(phi) or s != g.x:
                continue
            mor = m.operad.subst_mor(phi, tuple(m.operad.component(k).id_of(f.x)
                                                for f, k in zip(fs, ks)), ks)
            lhs = m.act(mor, r)
            rhs = m.substitute(m.act(phi, g), fs)
            if lhs != rhs:
                out.append(Violation.of("subst-naturality", slot="outer",
                                        phi=phi, g=g.mid, key=str(g.key)))
        for i, f in enumerate(fs):
            comp_k = m.operad.component(f.arity)
            for phi, s, _ in comp_k.morphisms:
                if comp_k.is_identity(phi) or s != f.x:
                    continue
                fmors = tuple(phi if j == i else m.operad.component(ks[j]).id_of(fs[j].x)
                              for j in range(len(fs)))
                mor = m.operad.subst_mor(comp_n.id_of(g.x), fmors, ks)
                lhs = m.act(mor, r)
                new_fs = tuple(m.act(phi, ff) if j == i else ff for j, ff in enumerate(fs))
                rhs = m.substitute(g, new_fs)
                if lhs != rhs:
                    out.append(Violation.of("subst-naturality", slot=str(i + 1),
                                            phi=phi, g=g.mid, f=f.mid))

    # Associativity of substitution, whenever every stage stays within bound.
    # Both sides of an instance land in the same hom set (the operad itself is
    # associative), so when every hom is subsingleton the comparison is forced
    # by the totality checks above and the enumeration can be skipped.
    if any(len(mids) > 1 for mids in m.homs.values()):
        by_output: dict[str, list[MultiMap]] = {b: [] for b in m.objects}
        for mp in m.all_maps():
            by_output[mp.output].append(mp)
        for g, fs in keys:
            r = m.substitute(g, fs)
            for hss in _nested_choices(fs, m.max_arity, by_output):
                flat = tuple(h for hs in hss for h in hs)
                lhs = m.substitute(r, flat)
                inner = tuple(m.substitute(f, hs) for f, hs in zip(fs, hss))
                rhs = m.substitute(g, inner)
                if lhs != rhs:
                    out.append(Violation.of("subst-associativity", g=g.mid,
                                            fs=str([f.mid for f in fs]),
                                            hs=str([h.mid for hs in hss for h in hs])))
    return out


def _nested_choices(fs, budget, by_output):
    """Tuples (hs_1..hs_n) where hs_i substitutes into f_i, total arity <= budget."""
    if not fs:
        yield ()
        return
    f, rest = fs[0], fs[1:]
    for hs in _slot_choices(f.inputs, budget, by_output):
        used = sum(h.arity for h in hs)
        for tail in _nested_choices(rest, budget - used, by_output):
            yield (hs,) + tail


def _slot_choices(slots, budget, by_output):
    if not slots:
        yield ()
        return
    b, rest = slots[0], slots[1:]
    for h in by_output[b]:
        if h.arity > budget:
            continue
        for tail in _slot_choices(rest, budget - h.arity, by_output):
            yield (h,) + tail


def _validate_structure(m: TMulticategory) -> list:
    objset = set(m.objects)
    comp_objs = {}
    for n in range(m.max_arity + 1):
        comp = m.operad.component(n)
        if check_category(comp):
            raise StructureError(f"operad component {n} is not a category")
        comp_objs[n] = set(comp.objects)
    expected = set()
    for key in m.signatures():
        expected.add(key)
        if key not in m.homs:
            raise StructureError(f"missing hom table entry for {key!r}")
    for (x, inputs, output), mids in m.homs.items():
        n = len(inputs)
        if n > m.max_arity or x not in comp_objs.get(n, ()):
            raise StructureError(f"bad hom signature {(x, inputs, output)!r}")
        if not set(inputs) <= objset or output not in objset:
            raise StructureError(f"hom signature {(x, inputs, output)!r} names unknown objects")
        if len(set(mids)) != len(mids):
            raise StructureError(f"duplicate multimap ids in {(x, inputs, output)!r}")
    for a in m.objects:
        if a not in m.identities:
            raise StructureError(f"object {a!r} has no identity multimap")
        ukey = (m.operad.unit, (a,), a)
        if m.identities[a] not in m.homs.get(ukey, ()):
            raise StructureError(f"identity of {a!r} is not in its unit hom")
    if m.action_table is not None:
        for (fmor, key), table in m.action_table.items():
            n = len(key[1])
            comp = m.operad.component(n)
            if not comp.has_morphism(fmor) or comp.is_identity(fmor):
                raise StructureError(f"action keyed by bad morphism {fmor!r}")
            if comp.src(fmor) != key[0]:
                raise StructureError(f"action source mismatch at {key!r}")
            tgt_key = (comp.tgt(fmor), key[1], key[2])
            if set(table) != set(m.homs.get(key, ())):
                raise StructureError(f"action domain mismatch at {key!r}")
            if not set(table.values()) <= set(m.homs.get(tgt_key, ())):
                raise StructureError(f"action image escapes {tgt_key!r}")
        for n in range(m.max_arity + 1):
            comp = m.operad.component(n)
            for fmor, s, _ in comp.morphisms:
                if comp.is_identity(fmor):
                    continue
                for key in m.homs:
                    if len(key[1]) == n and key[0] == s and (fmor, key) not in m.action_table:
                        raise StructureError(f"missing action entry {fmor!r} at {key!r}")
    keys = list(m.subst_keys())
    if m.subst_table is not None:
        expected_keys = {(g.key, g.mid, tuple((f.x, f.inputs, f.mid) for f in fs))
                         for g, fs in keys}
        stored = set(m.subst_table)
        if stored != expected_keys:
            extra = sorted(stored - expected_keys)[:3]
            missing = sorted(expected_keys - stored)[:3]
            raise StructureError(
                f"substitution table domain mismatch; extra={extra} missing={missing}")
    for g, fs in keys:
        m.substitute(g, fs)  # raises if an entry is absent or lands outside its hom
    return keys


# -- underlying category and hom actions -------------------------------------

def underlying_with_maps(m: TMulticategory):
    """The category of unit-typed unary multimaps, plus id translations."""
    e = m.operad.unit
    mids = []
    for a in m.objects:
        for b in m.objects:
            mids.extend(m.hom(e, (a,), b))
    plain = len(set(mids)) == len(mids)

    def name(a, b, mid):
        return mid if plain else f"{a}>{b}:{mid}"

    morphisms = []
    to_mm: dict[str, MultiMap] = {}
    for a in m.objects:
        for b in m.objects:
            for mid in m.hom(e, (a,), b):
                mor = name(a, b, mid)
                morphisms.append((mor, a, b))
                to_mm[mor] = MultiMap(e, (a,), b, mid)
    identity = {a: name(a, a, m.identities[a]) for a in m.objects}
    compose = {}
    for gmor, gmm in to_mm.items():
        for fmor, fmm in to_mm.items():
            if fmm.output != gmm.inputs[0]:
                continue
            r = m.substitute(gmm, (fmm,))
            compose[(gmor, fmor)] = name(r.inputs[0], r.output, r.mid)
    cat = FinCategory(m.objects, tuple(morphisms), identity, compose)
    return cat, to_mm


def underlying_category(m: TMulticategory) -> FinCategory:
    return underlying_with_maps(m)[0]


@dataclass
class HomAction:
    """Unary actions on every hom set: covariant in the output, contravariant
    in each input slot, induced by substitution."""

    multicat: TMulticategory

    def on_output(self, u: MultiMap, m: MultiMap) -> MultiMap:
        """Post-compose with a unit-typed unary u: output(m) -> b."""
        return self.multicat.substitute(u, (m,))

    def on_input(self, m: MultiMap, i: int, u: MultiMap) -> MultiMap:
        """Pre-compose slot i (1-based) with a unit-typed unary u: a' -> inputs[i-1]."""
        mc = self.multicat
        fs = tuple(u if j == i - 1 else mc.identity(b) for j, b in enumerate(m.inputs))
        return mc.substitute(m, fs)


def extend_hom_action(m: TMulticategory) -> HomAction:
    return HomAction(m)


def check_hom_action(m: TMulticategory) -> list[Violation]:
    """Functor laws and bifunctoriality of the derived unary actions."""
    act = extend_hom_action(m)
    out = []
    e = m.operad.unit
    unary = [u for u in m.all_maps() if u.arity == 1 and u.x == e]
    for mm_ in m.all_maps():
        if act.on_output(m.identity(mm_.output), mm_) != mm_:
            out.append(Violation.of("hom-action-identity", m=mm_.mid, slot="out"))
        for i in range(1, mm_.arity + 1):
            if act.on_input(mm_, i, m.identity(mm_.inputs[i - 1])) != mm_:
                out.append(Violation.of("hom-action-identity", m=mm_.mid, slot=str(i)))
    for mm_ in m.all_maps():
        for u in unary:
            if u.inputs[0] != mm_.output:
                continue
            for v in unary:
                if v.inputs[0] != u.output:
                    continue
                if act.on_output(v, act.on_output(u, mm_)) != \
                   act.on_output(m.substitute(v, (u,)), mm_):
                    out.append(Violation.of("hom-action-composition", m=mm_.mid,
                                            u=u.mid, v=v.mid))
        for i in range(1, mm_.arity + 1):
            for u in unary:
                if u.output != mm_.inputs[i - 1]:
                    continue
                for v in unary:
                    if v.output != u.inputs[0]:
                        continue
                    if act.on_input(act.on_input(mm_, i, u), i, v) != \
                       act.on_input(mm_, i, m.substitute(u, (v,))):
                        out.append(Violation.of("hom-action-composition", m=mm_.mid,
                                                slot=str(i)))
        for u in unary:
            if u.inputs[0] != mm_.output:
                continue
            for i in range(1, mm_.arity + 1):
                for w in unary:
                    if w.output != mm_.inputs[i - 1]:
                        continue
                    if act.on_input(act.on_output(u, mm_), i, w) != \
                       act.on_output(u, act.on_input(mm_, i, w)):
                        out.append(Violation.of("hom-action-bifunctor", m=mm_.mid))
    return out


# -- tight subsets ------------------------------------------------------------

def from_tight_subsets(m: TMulticategory, tight: dict[tuple[tuple[str, ...], str], frozenset]
                       ) -> SkewMulticategory:
    """Refine an ordinary multicategory by a class of tight multimaps closed
    under substitution in the first position."""
    if m.operad.name != "N":
        raise StructureError("input must be typed over the terminal operad")
    r = operad_by_name("R")
    for (inputs, output), mids in tight.items():
        if not inputs:
            raise StructureError("tight sets exist only at positive arity")
        if not set(mids) <= set(m.hom(TIGHT, inputs, output)):
            raise StructureError(f"tight set at {(inputs, output)!r} is not a subset")
    for a in m.objects:
        if m.identities[a] not in tight.get(((a,), a), frozenset()):
            raise StructureError(f"identity of {a!r} must be tight")

    def is_tight(mm_: MultiMap) -> bool:
        return mm_.arity > 0 and mm_.mid in tight.get((mm_.inputs, mm_.output), frozenset())

    for g, fs in m.subst_keys():
        if is_tight(g) and fs and is_tight(fs[0]):
            res = m.substitute(g, fs)
            if not is_tight(res):
                raise StructureError(
                    f"tight class not closed: {g.mid}({[f.mid for f in fs]}) = {res.mid} "
                    f"at {res.key!r} is not tight")

    homs: dict[HomKey, tuple[str, ...]] = {}
    for (x0, inputs, output), mids in m.homs.items():
        homs[(LOOSE, inputs, output)] = mids
        if inputs:
            homs[(TIGHT, inputs, output)] = tuple(
                mid for mid in mids if mid in tight.get((inputs, output), frozenset()))

    def action_rule(fmor: str, mm_: MultiMap) -> str:
        return mm_.mid  # tight maps are a subset; the comparison is the inclusion

    def subst_rule(g: MultiMap, fs: tuple[MultiMap, ...]) -> str:
        gn = MultiMap(TIGHT, g.inputs, g.output, g.mid)
        fsn = tuple(MultiMap(TIGHT, f.inputs, f.output, f.mid) for f in fs)
        return m.substitute(gn, fsn).mid

    return make_multicat(r, m.objects, m.max_arity, homs, dict(m.identities),
                         action_rule=action_rule, subst_rule=subst_rule)


def tight_subsets(s: SkewMulticategory) -> dict[tuple[tuple[str, ...], str], frozenset]:
    """Extract the tight classes; meaningful when every comparison is injective."""
    out = {}
    for (x, inputs, output), mids in s.homs.items():
        if x == TIGHT and inputs and mids:
            out[(inputs, output)] = frozenset(s.j(mm_).mid for mm_ in s.maps((x, inputs, output)))
    return out


def all_tight(m: TMulticategory) -> SkewMulticategory:
    tight = {}
    for (x, inputs, output), mids in m.homs.items():
        if inputs and mids:
            tight[(inputs, output)] = frozenset(mids)
    return from_tight_subsets(m, tight)


def loose_part(s: SkewMulticategory) -> TMulticategory:
    """The ordinary multicategory of loose multimaps."""
    n_op = operad_by_name("N")
    homs = {}
    for (x, inputs, output), mids in s.homs.items():
        if x == LOOSE:
            homs[(TIGHT, inputs, output)] = mids
    identities = {a: s.j(s.identity(a)).mid for a in s.objects}

    def subst_rule(g: MultiMap, fs: tuple[MultiMap, ...]) -> str:
        gl = MultiMap(LOOSE, g.inputs, g.output, g.mid)
        fsl = tuple(MultiMap(LOOSE, f.inputs, f.output, f.mid) for f in fs)
        return s.substitute(gl, fsl).mid

    return make_multicat(n_op, s.objects, s.max_arity, homs, identities,
                         action_rule=lambda fmor, m: m.mid, subst_rule=subst_rule)


# -- morphisms, 2-cells, isomorphism search -----------------------------------

@dataclass
class MulticatMorphism:
    source: TMulticategory
    target: TMulticategory
    obj_map: dict[str, str]
    hom_maps: dict[HomKey, dict[str, str]]  # source hom key -> per-id assignment

    def on_obj(self, a: str) -> str:
        return self.obj_map[a]

    def on_map(self, m: MultiMap) -> MultiMap:
        mid = self.hom_maps[m.key][m.mid]
        return self.target.mm(m.x, tuple(self.obj_map[a] for a in m.inputs),
                              self.obj_map[m.output], mid)


def identity_multicat_morphism(m: TMulticategory) -> MulticatMorphism:
    return MulticatMorphism(m, m, {a: a for a in m.objects},
                            {key: {mid: mid for mid in mids}
                             for key, mids in m.homs.items()})


def check_morphism(f: MulticatMorphism) -> list[Violation]:
    src, tgt = f.source, f.target
    if src.operad.name != tgt.operad.name or src.max_arity != tgt.max_arity:
        raise StructureError("morphism endpoints do not share operad and bound")
    for a in src.objects:
        if f.obj_map.get(a) not in set(tgt.objects):
            raise StructureError(f"object {a!r} not mapped into the target")
    for key, mids in src.homs.items():
        table = f.hom_maps.get(key)
        if table is None or set(table) != set(mids):
            raise StructureError(f"hom map at {key!r} missing or not total")
        tgt_key = (key[0], tuple(f.obj_map[a] for a in key[1]), f.obj_map[key[2]])
        if not set(table.values()) <= set(tgt.homs.get(tgt_key, ())):
            raise StructureError(f"hom map at {key!r} escapes the target hom")

    out = []
    for a in src.objects:
        if f.on_map(src.identity(a)) != tgt.identity(f.obj_map[a]):
            out.append(Violation.of("morphism-identity", obj=a))
    for n in range(src.max_arity + 1):
        comp = src.operad.component(n)
        for fmor, s, _ in comp.morphisms:
            if comp.is_identity(fmor):
                continue
            for key in src.homs:
                if len(key[1]) != n or key[0] != s:
                    continue
                for mm_ in src.maps(key):
                    if f.on_map(src.act(fmor, mm_)) != tgt.act(fmor, f.on_map(mm_)):
                        out.append(Violation.of("morphism-action", phi=fmor, m=mm_.mid))
    for g, fs in src.subst_keys():
        lhs = f.on_map(src.substitute(g, fs))
        rhs = tgt.substitute(f.on_map(g), tuple(f.on_map(x) for x in fs))
        if lhs != rhs:
            out.append(Violation.of("morphism-substitution", g=g.mid,
                                    fs=str([x.mid for x in fs])))
    return out


@dataclass
class Multicat2Cell:
    source: MulticatMorphism
    target: MulticatMorphism
    components: dict[str, str]  # object -> unit-typed unary multimap id in the target

    def at(self, a: str) -> MultiMap:
        tgt = self.source.target
        return tgt.mm(tgt.operad.unit, (self.source.obj_map[a],),
                      (self.target.obj_map[a]), self.components[a])


def check_2cell(cell: Multicat2Cell) -> list[Violation]:
    f, g = cell.source, cell.target
    if f.source is not g.source or f.target is not g.target:
        raise StructureError("2-cell endpoints must be parallel")
    tgt = f.target
    for a in f.source.objects:
        if a not in cell.components:
            raise StructureError(f"no component at {a!r}")
        cell.at(a)  # validates membership
    out = []
    for key in sorted(f.source.homs):
        for mm_ in f.source.maps(key):
            phi_b = cell.at(mm_.output)
            lhs = tgt.substitute(phi_b, (f.on_map(mm_),))
            gm = g.on_map(mm_)
            fs = tuple(cell.at(a) for a in mm_.inputs)
            rhs = tgt.substitute(gm, fs)
            if lhs != rhs:
                out.append(Violation.of("2cell-naturality", m=mm_.mid, key=str(key)))
    return out


def _hom_bijections(src_mids, tgt_mids, forced: dict[str, str]):
    """All bijections respecting the forced assignments, in a stable order."""
    import itertools as it
    src_rest = [x for x in src_mids if x not in forced]
    tgt_rest = [y for y in tgt_mids if y not in set(forced.values())]
    if len(src_mids) != len(tgt_mids):
        return
    for perm in it.permutations(tgt_rest):
        table = dict(forced)
        table.update(zip(src_rest, perm))
        yield table


def iso_search(m: TMulticategory, n: TMulticategory
               ) -> tuple[MulticatMorphism, MulticatMorphism] | None:
    """First isomorphism pair in canonical order, or None.

    Substitution preservation is verified on single-position substitutions;
    for inputs satisfying the multicategory laws this forces preservation of
    all substitutions, since every substitution factors through them.
    """
    import itertools as it
    if m.operad.name != n.operad.name or m.max_arity != n.max_arity:
        return None
    if len(m.objects) != len(n.objects):
        return None

    hom_keys = sorted(k for k in m.homs if m.homs[k])
    key_index = {k: i for i, k in enumerate(hom_keys)}

    # When every hom on both sides is subsingleton, any size-respecting object
    # bijection preserves all the structure automatically (each preservation
    # equation compares two members of one subsingleton hom), so no
    # constraints need to be collected.
    thin = all(len(v) <= 1 for v in m.homs.values()) and \
        all(len(v) <= 1 for v in n.homs.values())

    act_constraints: list[list] = [[] for _ in hom_keys]
    sub_constraints: list[list] = [[] for _ in hom_keys]
    if not thin:
        # constraints indexed by the last hom (in assignment order) they mention
        for arity in range(m.max_arity + 1):
            comp = m.operad.component(arity)
            for fmor, s, t in comp.morphisms:
                if comp.is_identity(fmor):
                    continue
                for key in hom_keys:
                    if len(key[1]) != arity or key[0] != s:
                        continue
                    okey = (t, key[1], key[2])
                    involved = [key_index[key]]
                    if okey in key_index:
                        involved.append(key_index[okey])
                    act_constraints[max(involved)].append((fmor, key))
        for g, fs in m.generator_subst_keys():
            r = m.substitute(g, fs)
            involved = {key_index[g.key], key_index[r.key],
                        *(key_index[f.key] for f in fs)}
            sub_constraints[max(involved)].append((g, fs, r))

    src_objs = sorted(m.objects)
    for perm in it.permutations(sorted(n.objects)):
        sigma = dict(zip(src_objs, perm))
        if any(len(m.homs[key]) != len(n.homs.get(
                (key[0], tuple(sigma[a] for a in key[1]), sigma[key[2]]), ()))
               for key in m.homs):
            continue
        found = _assign_homs(m, n, sigma, hom_keys, 0, {},
                             act_constraints, sub_constraints)
        if found is not None:
            fwd = MulticatMorphism(m, n, sigma,
                                   {k: found.get(k, {}) for k in m.homs})
            inv_obj = {v: k for k, v in sigma.items()}
            inv_maps: dict[HomKey, dict[str, str]] = {}
            for key, table in fwd.hom_maps.items():
                tkey = (key[0], tuple(sigma[a] for a in key[1]), sigma[key[2]])
                inv_maps[tkey] = {v: k for k, v in table.items()}
            for key in n.homs:
                inv_maps.setdefault(key, {})
            bwd = MulticatMorphism(n, m, inv_obj, inv_maps)
            return fwd, bwd
    return None


def _assign_homs(m, n, sigma, keys, idx, assigned, act_constraints, sub_constraints):
    if idx == len(keys):
        return dict(assigned)
    key = keys[idx]
    tgt_key = (key[0], tuple(sigma[a] for a in key[1]), sigma[key[2]])
    forced = {}
    if key[0] == m.operad.unit and len(key[1]) == 1 and key[1][0] == key[2]:
        forced[m.identities[key[2]]] = n.identities[sigma[key[2]]]
        if forced[m.identities[key[2]]] not in n.homs[tgt_key]:
            return None
    for table in _hom_bijections(m.homs[key], n.homs[tgt_key], forced):
        assigned[key] = table
        if _constraints_hold(m, n, sigma, assigned, act_constraints[idx],
                             sub_constraints[idx]):
            res = _assign_homs(m, n, sigma, keys, idx + 1, assigned,
                               act_constraints, sub_constraints)
            if res is not None:
                return res
        del assigned[key]
    return None


def _constraints_hold(m, n, sigma, assigned, act_list, sub_list):
    def image(mm_):
        table = assigned.get(mm_.key)
        if table is None:
            return None
        return MultiMap(mm_.x, tuple(sigma[a] for a in mm_.inputs),
                        sigma[mm_.output], table[mm_.mid])

    for fmor, key in act_list:
        for mm_ in m.maps(key):
            src_img = image(mm_)
            tgt_img = image(m.act(fmor, mm_))
            if src_img is None or tgt_img is None:
                continue
            if n.act(fmor, src_img) != tgt_img:
                return False
    for g, fs, r in sub_list:
        gi = image(g)
        fsi = tuple(image(f) for f in fs)
        ri = image(r)
        if gi is None or ri is None or any(f is None for f in fsi):
            continue
        if n.substitute(gi, fsi) != ri:
            return False
    return True


# -- JSON ----------------------------------------------------------------------

_MC_KEYS = {"operad", "max_arity", "objects", "homs", "identities", "action", "subst"}


def multicat_to_json(m: TMulticategory) -> dict:
    mat = m if m.action_table is not None and m.subst_table is not None else m.materialize()
    homs = [{"x": x, "inputs": list(inputs), "output": output, "maps": list(mids)}
            for (x, inputs, output), mids in sorted(mat.homs.items()) if mids]
    action = []
    for (fmor, (x, inputs, output)), table in sorted(mat.action_table.items()):
        src_ids = list(mat.homs[(x, inputs, output)])
        action.append({"n": len(inputs), "inputs": list(inputs), "output": output,
                       "map_t": src_ids, "map_l": [table[i] for i in src_ids]})
    subst = []
    for (gkey, gid, inner), rid in sorted(mat.subst_table.items()):
        subst.append({
            "outer": {"x": gkey[0], "inputs": list(gkey[1]), "output": gkey[2], "id": gid},
            "inners": [{"x": fx, "inputs": list(fi), "output": gkey[1][i], "id": fid}
                       for i, (fx, fi, fid) in enumerate(inner)],
            "result": rid,
        })
    return {
        "operad": mat.operad.name,
        "max_arity": mat.max_arity,
        "objects": list(mat.objects),
        "homs": homs,
        "identities": dict(mat.identities),
        "action": action,
        "subst": subst,
    }


def multicat_from_json(data: dict) -> TMulticategory:
    if not isinstance(data, dict) or set(data) != _MC_KEYS:
        raise StructureError(f"multicategory object must have exactly the keys {sorted(_MC_KEYS)}")
    if data["operad"] not in ("R", "N"):
        raise StructureError("operad must be \"R\" or \"N\"")
    op = operad_by_name(data["operad"])
    try:
        max_arity = int(data["max_arity"])
        objects = tuple(str(x) for x in data["objects"])
        homs: dict[HomKey, tuple[str, ...]] = {}
        for h in data["homs"]:
            if set(h) != {"x", "inputs", "output", "maps"}:
                raise StructureError("hom entries must have keys x/inputs/output/maps")
            homs[(str(h["x"]), tuple(str(a) for a in h["inputs"]), str(h["output"]))] = \
                tuple(str(i) for i in h["maps"])
        identities = {str(k): str(v) for k, v in data["identities"].items()}
        action: dict[tuple[str, HomKey], dict[str, str]] = {}
        for e in data["action"]:
            if set(e) != {"n", "inputs", "output", "map_t", "map_l"}:
                raise StructureError("action entries must have keys n/inputs/output/map_t/map_l")
            key = (TIGHT, tuple(str(a) for a in e["inputs"]), str(e["output"]))
            if len(e["map_t"]) != len(e["map_l"]):
                raise StructureError("action arrays must be parallel")
            action[(LAM, key)] = {str(a): str(b) for a, b in zip(e["map_t"], e["map_l"])}
        subst: dict = {}
        for e in data["subst"]:
            if set(e) != {"outer", "inners", "result"}:
                raise StructureError("subst entries must have keys outer/inners/result")
            o = e["outer"]
            gkey = (str(o["x"]), tuple(str(a) for a in o["inputs"]), str(o["output"]))
            inner = tuple((str(f["x"]), tuple(str(a) for a in f["inputs"]), str(f["id"]))
                          for f in e["inners"])
            subst[(gkey, str(o["id"]), inner)] = str(e["result"])
    except (KeyError, TypeError) as exc:
        raise StructureError(f"malformed multicategory JSON: {exc}") from exc
    if data["operad"] == "N" and data["action"]:
        raise StructureError("terminal-operad multicategories carry no actions")
    return make_multicat(op, objects, max_arity, homs, identities,
                         action_table=action, subst_table=subst)


def multicat_from_path(path: str) -> TMulticategory:
    with open(path, encoding="utf-8") as fh:
        return multicat_from_json(json.load(fh))
