"""Universal multimaps, classifiers, and representability analysis for skew
multicategories.

Every notion here is computed relative to the truncation bound of the input
and reported as such: a "universal" multimap is one whose defining bijections
hold at every output object, and a "left universal" one additionally admits
trailing input tuples up to the bound.  Searches run in lexicographic object
order with hom elements in stored order, so witnesses are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catoperad import LOOSE, TIGHT
from .fincat import Functor, StructureError, Violation, opposite_category, pair_id, product_category
from .tmulticat import (
    MultiMap, SkewMulticategory, TMulticategory,
    extend_hom_action, underlying_with_maps,
)


@dataclass(frozen=True)
class UniversalMultimap:
    x: str
    inputs: tuple[str, ...]
    classifier: str
    theta: MultiMap
    universal: bool
    left_universal: bool
    checked_up_to_arity: int


@dataclass
class ClassifierTable:
    entries: dict[tuple[str, tuple[str, ...]], UniversalMultimap]
    checked_up_to_arity: int

    def get(self, x: str, inputs: tuple[str, ...]) -> UniversalMultimap | None:
        return self.entries.get((x, tuple(inputs)))

    def nullary(self) -> UniversalMultimap | None:
        return self.entries.get((LOOSE, ()))

    def binary(self, a: str, b: str) -> UniversalMultimap | None:
        return self.entries.get((TIGHT, (a, b)))


def _bijective(images: list, target: tuple) -> bool:
    return (len(images) == len(target)
            and len(set(images)) == len(images)
            and set(images) == set(target))


def _universal_ok(s: TMulticategory, theta: MultiMap, m: str) -> bool:
    """Substitution with theta carries unit-typed unary maps out of the
    candidate classifier bijectively onto the hom being represented."""
    e = s.operad.unit
    for b in s.objects:
        source = list(s.maps((e, (m,), b)))
        images = [s.substitute(g, (theta,)).mid for g in source]
        if not _bijective(images, s.hom(theta.x, theta.inputs, b)):
            return False
    return True


def _left_universal_ok(s: SkewMulticategory, theta: MultiMap, m: str) -> bool:
    """As above but with trailing inputs, up to the truncation bound."""
    max_extra = min(s.max_arity - 1, s.max_arity - theta.arity)
    for extra in range(max_extra + 1):
        for tail in _tuples(s.objects, extra):
            ks = (theta.arity,) + (1,) * extra
            xs = (theta.x,) + (TIGHT,) * extra
            rx = s.operad.subst_obj(TIGHT, xs, ks)
            for c in s.objects:
                source = list(s.maps((TIGHT, (m,) + tail, c)))
                images = []
                for h in source:
                    fs = (theta,) + tuple(s.identity(a) for a in tail)
                    images.append(s.substitute(h, fs).mid)
                if not _bijective(images, s.hom(rx, theta.inputs + tail, c)):
                    return False
    return True


def _tuples(objects, n):
    if n == 0:
        yield ()
        return
    for rest in _tuples(objects, n - 1):
        for a in sorted(objects):
            yield rest + (a,)


def find_universal(s: SkewMulticategory, x: str, inputs: tuple[str, ...]
                   ) -> UniversalMultimap | None:
    """First universal multimap of the given type in canonical order.

    The unit-typed unary case is normalized: the classifier is the object
    itself and the universal multimap its identity.
    """
    inputs = tuple(inputs)
    if len(inputs) > s.max_arity:
        raise StructureError("input tuple exceeds the truncation bound")
    if x == s.operad.unit and len(inputs) == 1:
        theta = s.identity(inputs[0])
        return UniversalMultimap(x, inputs, inputs[0], theta, True,
                                 _left_universal_ok(s, theta, inputs[0]),
                                 s.max_arity)
    for m in sorted(s.objects):
        for theta in s.maps((x, inputs, m)):
            if _universal_ok(s, theta, m):
                return UniversalMultimap(x, inputs, m, theta, True,
                                         _left_universal_ok(s, theta, m),
                                         s.max_arity)
    return None


@dataclass(frozen=True)
class WeakRepResult:
    ok: bool
    table: ClassifierTable | None
    failure: tuple[str, tuple[str, ...]] | None


def is_weakly_representable(s: SkewMulticategory) -> WeakRepResult:
    entries = {}
    for n in range(s.max_arity + 1):
        comp = s.operad.component(n)
        for x in comp.objects:
            for inputs in _tuples(s.objects, n):
                u = find_universal(s, x, inputs)
                if u is None:
                    return WeakRepResult(False, None, (x, inputs))
                entries[(x, inputs)] = u
    return WeakRepResult(True, ClassifierTable(entries, s.max_arity), None)


def build_inductive_classifiers(s: SkewMulticategory,
                                nullary: UniversalMultimap,
                                binary: dict[tuple[str, str], UniversalMultimap]
                                ) -> ClassifierTable:
    """Extend nullary and tight-binary classifiers to all arities: the unary
    tight classifier of an object is the object itself, and each higher
    classifier tensors one more input onto its predecessor by substituting
    into the binary universal map at the first position."""
    for a in s.objects:
        for b in s.objects:
            if (a, b) not in binary:
                raise StructureError(f"missing tight binary classifier at {(a, b)!r}")
    entries: dict[tuple[str, tuple[str, ...]], UniversalMultimap] = {}

    def recheck(x, inputs, m, theta):
        return UniversalMultimap(
            x, inputs, m, theta, _universal_ok(s, theta, m),
            _left_universal_ok(s, theta, m), s.max_arity)

    entries[(LOOSE, ())] = nullary
    for a in s.objects:
        entries[(TIGHT, (a,))] = recheck(TIGHT, (a,), a, s.identity(a))
    if s.max_arity >= 1:
        for a in s.objects:
            prev = nullary
            pair = binary[(prev.classifier, a)]
            theta = s.substitute(pair.theta, (prev.theta, s.identity(a)))
            entries[(LOOSE, (a,))] = recheck(LOOSE, (a,), pair.classifier, theta)
    for n in range(2, s.max_arity + 1):
        for x in (TIGHT, LOOSE):
            for inputs in _tuples(s.objects, n):
                prev = entries[(x, inputs[:-1])]
                b = inputs[-1]
                pair = binary[(prev.classifier, b)]
                theta = s.substitute(pair.theta, (prev.theta, s.identity(b)))
                entries[(x, inputs)] = recheck(x, inputs, pair.classifier, theta)
    return ClassifierTable(entries, s.max_arity)


def _searched_binary(s: SkewMulticategory):
    nullary = find_universal(s, LOOSE, ())
    binary = {}
    for a in s.objects:
        for b in s.objects:
            u = find_universal(s, TIGHT, (a, b))
            if u is None:
                return nullary, None
            binary[(a, b)] = u
    return nullary, binary


def _single_extension_ok(s: SkewMulticategory, u: UniversalMultimap) -> bool:
    """Substitution with the universal map stays bijective after appending one
    input."""
    if u.theta.arity + 1 > s.max_arity:
        return True
    rx = s.operad.subst_obj(TIGHT, (u.theta.x, TIGHT), (u.theta.arity, 1))
    for b in s.objects:
        for c in s.objects:
            source = list(s.maps((TIGHT, (u.classifier, b), c)))
            images = [s.substitute(h, (u.theta, s.identity(b))).mid for h in source]
            if not _bijective(images, s.hom(rx, u.inputs + (b,), c)):
                return False
    return True


def is_left_representable(s: SkewMulticategory) -> bool:
    """Weak representability plus single-input extension of every universal
    multimap; equivalent to full left representability on the stored
    fragment."""
    weak = is_weakly_representable(s)
    if not weak.ok:
        return False
    return all(_single_extension_ok(s, u) for u in weak.table.entries.values())


@dataclass(frozen=True)
class EquivalenceReport:
    conditions: dict[str, bool]
    violations: list[Violation]

    @property
    def agree(self) -> bool:
        return not self.violations


def check_left_representability_equivalences(s: SkewMulticategory) -> EquivalenceReport:
    """Four characterizations of left representability, evaluated separately;
    the report is empty exactly when they agree on the stored fragment."""
    weak = is_weakly_representable(s)
    cond = {}
    cond["all_universals_left_universal"] = weak.ok and all(
        u.left_universal for u in weak.table.entries.values())
    nullary, binary = _searched_binary(s)
    have_cls = nullary is not None and binary is not None
    if have_cls:
        table = build_inductive_classifiers(s, nullary, binary)
        cond["inductive_classifiers_universal"] = all(
            u.universal for u in table.entries.values())
        cond["classifiers_left_universal"] = nullary.left_universal and all(
            u.left_universal for u in binary.values())
    else:
        cond["inductive_classifiers_universal"] = False
        cond["classifiers_left_universal"] = False
    cond["weak_plus_single_extension"] = weak.ok and all(
        _single_extension_ok(s, u) for u in weak.table.entries.values())
    violations = []
    if len(set(cond.values())) > 1:
        violations.append(Violation.of("equivalence-disagreement",
                                       **{k: str(v) for k, v in cond.items()}))
    return EquivalenceReport(cond, violations)


# -- closed structure ---------------------------------------------------------

@dataclass
class ClosedStructure:
    hom_obj: dict[tuple[str, str], str]
    evaluation: dict[tuple[str, str], MultiMap]
    hom_functor: Functor                       # opposite(A) x A -> A
    cat_maps: dict                             # underlying-category morphism -> MultiMap


def _closed_pair_ok(s: SkewMulticategory, h: str, b: str, c: str, e: MultiMap) -> bool:
    for n in range(s.max_arity):
        comp = s.operad.component(n)
        for x in comp.objects:
            rx = s.operad.subst_obj(TIGHT, (x, TIGHT), (n, 1))
            for inputs in _tuples(s.objects, n):
                source = list(s.maps((x, inputs, h)))
                images = [s.substitute(e, (f, s.identity(b))).mid for f in source]
                if not _bijective(images, s.hom(rx, inputs + (b,), c)):
                    return False
    return True


def find_closed_structure(s: SkewMulticategory) -> ClosedStructure | None:
    """Internal homs with tight evaluation maps, then the induced hom functor
    on the underlying category obtained by factoring unary actions on the
    evaluation through the defining bijections."""
    hom_obj: dict[tuple[str, str], str] = {}
    evaluation: dict[tuple[str, str], MultiMap] = {}
    for b in sorted(s.objects):
        for c in sorted(s.objects):
            found = None
            for h in sorted(s.objects):
                for e in s.maps((TIGHT, (h, b), c)):
                    if _closed_pair_ok(s, h, b, c, e):
                        found = (h, e)
                        break
                if found:
                    break
            if not found:
                return None
            hom_obj[(b, c)] = found[0]
            evaluation[(b, c)] = found[1]

    cat, to_mm = underlying_with_maps(s)
    from_mm = {mm: mor for mor, mm in to_mm.items()}
    act = extend_hom_action(s)
    op = opposite_category(cat)
    prod = product_category(op, cat)
    obj_map = {pair_id(b, c): hom_obj[(b, c)] for b in cat.objects for c in cat.objects}
    mor_map = {}
    for u in (m for m, _, _ in op.morphisms):
        ub1, ub2 = cat.src(u), cat.tgt(u)  # u: ub1 -> ub2 in A
        for v in (m for m, _, _ in cat.morphisms):
            vc1, vc2 = cat.src(v), cat.tgt(v)
            e_src = evaluation[(ub2, vc1)]
            target = s.substitute(to_mm[v], (act.on_input(e_src, 2, to_mm[u]),))
            e_tgt = evaluation[(ub1, vc2)]
            w = _invert_eval(s, e_tgt, hom_obj[(ub2, vc1)], ub1, vc2, target)
            mor_map[pair_id(u, v)] = from_mm[w]
    functor = Functor(prod, cat, obj_map, mor_map)
    return ClosedStructure(hom_obj, evaluation, functor, to_mm)


def _invert_eval(s, e: MultiMap, a: str, b: str, c: str, target: MultiMap) -> MultiMap:
    """The unique tight unary w: a -> [b,c] with e(w, 1_b) equal to target."""
    for w in s.maps((TIGHT, (a,), e.inputs[0])):
        if s.substitute(e, (w, s.identity(b))) == target:
            return w
    raise StructureError("evaluation bijection has no preimage; structure is not closed")


def _left_adjoint_ok(s: SkewMulticategory, closed: ClosedStructure) -> bool:
    """Pointwise representability of c -> A(a, [b, c]) for every a and b."""
    cat, to_mm = underlying_with_maps(s)
    from_mm = {mm: mor for mor, mm in to_mm.items()}
    for b in s.objects:
        for a in s.objects:
            if not any(_represents(s, closed, cat, p, a, b) for p in sorted(s.objects)):
                return False
    return True


def _represents(s, closed, cat, p, a, b) -> bool:
    for u in cat.hom(a, closed.hom_obj[(b, p)]):
        ok = True
        for c in s.objects:
            images = []
            for g in cat.hom(p, c):
                w = closed.hom_functor.mor_map[pair_id(cat.id_of(b), g)]
                images.append(cat.compose.get((w, u)))
            if None in images or not _bijective(images, cat.hom(a, closed.hom_obj[(b, c)])):
                ok = False
                break
        if ok:
            return True
    return False


def check_closed_representability_equivalences(s: SkewMulticategory) -> EquivalenceReport:
    """Four characterizations that coincide for closed skew multicategories;
    reports "not closed" when there is no closed structure to begin with."""
    closed = find_closed_structure(s)
    if closed is None:
        return EquivalenceReport({}, [Violation.of("not-closed")])
    cond = {
        "left_representable": is_left_representable(s),
        "weakly_representable": is_weakly_representable(s).ok,
    }
    nullary, binary = _searched_binary(s)
    cond["nullary_and_binary_classifiers"] = nullary is not None and binary is not None
    cond["nullary_classifier_and_left_adjoints"] = (
        nullary is not None and _left_adjoint_ok(s, closed))
    violations = []
    if len(set(cond.values())) > 1:
        violations.append(Violation.of("equivalence-disagreement",
                                       **{k: str(v) for k, v in cond.items()}))
    return EquivalenceReport(cond, violations)


def analyze(s: SkewMulticategory) -> dict:
    """The analyzer record: representability and closedness flags with their
    witnesses, tagged with the truncation bound they were checked at."""
    weak = is_weakly_representable(s)
    closed = find_closed_structure(s)
    nullary = find_universal(s, LOOSE, ())
    witnesses: dict = {}
    if weak.ok:
        witnesses["classifiers"] = {
            f"{x}({','.join(inputs)})": {"object": u.classifier, "theta": u.theta.mid}
            for (x, inputs), u in sorted(weak.table.entries.items())}
    else:
        witnesses["failure"] = {"x": weak.failure[0], "inputs": list(weak.failure[1])}
    if closed is not None:
        witnesses["closed"] = {
            f"{b},{c}": {"object": h, "evaluation": closed.evaluation[(b, c)].mid}
            for (b, c), h in sorted(closed.hom_obj.items())}
    return {
        "weakly_representable": weak.ok,
        "left_representable": is_left_representable(s),
        "closed": closed is not None,
        "closed_with_unit": closed is not None and nullary is not None,
        "witnesses": witnesses,
        "checked_up_to_arity": s.max_arity,
    }
