"""Colored operads with finite operation sets, their categories of color sequences, and arrow categories.

Index sets are ranges ``0..k-1``. A map of index sets I -> J is a tuple of
length |I| with entries in ``range(|J|)``. Fibers are always read in
increasing order, and the operation attached to a fiber takes its inputs in
that order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import finseg, simplex
from .errors import IncompleteData, InvalidInput
from .fincat.core import Arrow, FinCat, Functor
from .fincat.fibration import check_isomorphism
from .fincat.standard import build_standard


def fibers_of(fmap: tuple[int, ...], size: int) -> list[tuple[int, ...]]:
    out: list[list[int]] = [[] for _ in range(size)]
    for i, j in enumerate(fmap):
        out[j].append(i)
    return [tuple(f) for f in out]


class ColoredOperad:
    """Colors, finite operation sets, units and composition.

    ``mul(inputs, output)`` returns the tuple of operations; it raises
    IncompleteData for a signature it has no data for.
    ``compose(fmap, inputs, mids, output, inner, outer)`` composes
    ``inner[j]`` in Mul(inputs over fiber j, mids[j]) with ``outer`` in
    Mul(mids, output).
    """

    def __init__(self, name: str, colors: Iterable, mul: Callable, units: dict, compose: Callable):
        self.name = name
        self.colors = tuple(colors)
        self._mul = mul
        self.units = dict(units)
        self._compose = compose

    def __repr__(self) -> str:
        return f"<ColoredOperad {self.name}: {len(self.colors)} colors>"

    def mul(self, inputs: tuple, output) -> tuple:
        return tuple(self._mul(tuple(inputs), output))

    def compose(self, fmap, inputs, mids, output, inner, outer):
        fmap, inputs, mids, inner = tuple(fmap), tuple(inputs), tuple(mids), tuple(inner)
        if len(fmap) != len(inputs) or len(inner) != len(mids) or any(not 0 <= j < len(mids) for j in fmap):
            raise InvalidInput(f"composition shape mismatch: map {fmap}, {len(inputs)} inputs, {len(mids)} middles")
        return self._compose(fmap, inputs, mids, output, inner, outer)

    def signatures(self, max_arity: int) -> Iterator[tuple[tuple, object]]:
        for n in range(max_arity + 1):
            for inputs in itertools.product(self.colors, repeat=n):
                for out in self.colors:
                    yield inputs, out


# ---------------------------------------------------------------- builtins

def _comm() -> ColoredOperad:
    return ColoredOperad("comm", ["c"], lambda ins, out: ("mu",), {"c": "mu"}, lambda *args: "mu")


def _ass_compose(fmap, inputs, mids, output, inner, outer):
    fibers = fibers_of(fmap, len(mids))
    return tuple(fibers[j][local] for j in outer for local in inner[j])


def _ass() -> ColoredOperad:
    return ColoredOperad(
        "ass",
        ["c"],
        lambda ins, out: tuple(itertools.permutations(range(len(ins)))),
        {"c": (0,)},
        _ass_compose,
    )


def _triv() -> ColoredOperad:
    return ColoredOperad(
        "triv", ["c"], lambda ins, out: ("id",) if len(ins) == 1 else (), {"c": "id"}, lambda *args: "id"
    )


def _e0() -> ColoredOperad:
    def mul(ins, out):
        return {0: ("e",), 1: ("id",)}.get(len(ins), ())

    def compose(fmap, inputs, mids, output, inner, outer):
        return "e" if not inputs else "id"

    return ColoredOperad("e0", ["c"], mul, {"c": "id"}, compose)


BUILTINS = {"comm": _comm, "ass": _ass, "triv": _triv, "e0": _e0}


def builtin(name: str) -> ColoredOperad:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise InvalidInput(f"unknown builtin operad {name!r}; expected one of {', '.join(BUILTINS)}") from None


# ---------------------------------------------------------------- tables and JSON

def from_tables(name: str, colors, mul: dict, units: dict, composition: dict) -> ColoredOperad:
    """Operad given by explicit tables.

    ``mul`` maps (inputs tuple, output) to a tuple of operations and
    ``composition`` maps (fmap, inputs, mids, output, inner, outer) to the result.
    """

    def mul_fn(ins, out):
        try:
            return mul[(ins, out)]
        except KeyError:
            raise IncompleteData(f"no operation data for signature {list(ins)} -> {out!r}") from None

    def compose_fn(*key):
        try:
            return composition[key]
        except KeyError:
            fmap, ins, mids, out, inner, outer = key
            raise IncompleteData(
                f"no composition entry for map {list(fmap)}, inputs {list(ins)}, middles {list(mids)}, "
                f"output {out!r}, inner {list(inner)}, outer {outer!r}"
            ) from None

    return ColoredOperad(name, colors, mul_fn, units, compose_fn)


def _freeze(x):
    return tuple(_freeze(v) for v in x) if isinstance(x, list) else x


def _thaw(x):
    return [_thaw(v) for v in x] if isinstance(x, tuple) else x


def _req(data, key: str, where: str):
    if not isinstance(data, dict):
        raise InvalidInput(f"{where}: expected a JSON object")
    if key not in data:
        raise InvalidInput(f"{where}: missing field '{key}'")
    return data[key]


def from_json(data) -> ColoredOperad:
    """Operad from JSON, or a builtin when given {"builtin": name}."""
    if isinstance(data, dict) and "builtin" in data:
        return builtin(str(data["builtin"]))
    colors = [_freeze(c) for c in _req(data, "colors", "operad")]
    mul = {}
    for entry in _req(data, "mul", "operad"):
        ins = tuple(_freeze(c) for c in _req(entry, "inputs", "mul entry"))
        mul[(ins, _freeze(_req(entry, "output", "mul entry")))] = tuple(
            _freeze(e) for e in _req(entry, "elements", "mul entry")
        )
    units = {_freeze(c): _freeze(u) for c, u in _req(data, "units", "operad")}
    composition = {}
    for entry in data.get("composition", []):
        key = (
            tuple(_req(entry, "map", "composition entry")),
            tuple(_freeze(c) for c in _req(entry, "inputs", "composition entry")),
            tuple(_freeze(c) for c in _req(entry, "mids", "composition entry")),
            _freeze(_req(entry, "output", "composition entry")),
            tuple(_freeze(e) for e in _req(entry, "inner", "composition entry")),
            _freeze(_req(entry, "outer", "composition entry")),
        )
        composition[key] = _freeze(_req(entry, "result", "composition entry"))
    return from_tables(str(data.get("name", "operad")), colors, mul, units, composition)


def to_json(O: ColoredOperad, bound: int) -> dict:
    """Tables of O for every signature and composition with at most ``bound`` inputs."""
    mul_entries = []
    for ins, out in O.signatures(bound):
        mul_entries.append({"inputs": _thaw(ins), "output": _thaw(out), "elements": _thaw(O.mul(ins, out))})
    comps = []
    for fmap, ins, mids, out, inner, outer in _composable_data(O, bound):
        comps.append({
            "map": list(fmap), "inputs": _thaw(ins), "mids": _thaw(mids), "output": _thaw(out),
            "inner": _thaw(inner), "outer": _thaw(outer),
            "result": _thaw(O.compose(fmap, ins, mids, out, inner, outer)),
        })
    return {
        "name": O.name,
        "colors": _thaw(O.colors),
        "mul": mul_entries,
        "units": [[_thaw(c), _thaw(u)] for c, u in O.units.items()],
        "composition": comps,
    }


def _composable_data(O: ColoredOperad, bound: int):
    for i in range(bound + 1):
        for j in range(bound + 1):
            for fmap in itertools.product(range(j), repeat=i):
                fibers = fibers_of(fmap, j)
                for ins in itertools.product(O.colors, repeat=i):
                    for mids in itertools.product(O.colors, repeat=j):
                        for out in O.colors:
                            outers = O.mul(mids, out)
                            if not outers:
                                continue
                            choices = [O.mul(tuple(ins[a] for a in fibers[b]), mids[b]) for b in range(j)]
                            for inner in itertools.product(*choices):
                                for outer in outers:
                                    yield fmap, ins, mids, out, inner, outer


# ---------------------------------------------------------------- axioms

def check_axioms(O: ColoredOperad, bound: int = 3) -> list[dict]:
    """Unit and associativity laws for all index sets of size <= bound."""
    witnesses = []
    for c in O.colors:
        if O.units.get(c) not in O.mul((c,), c):
            witnesses.append({"law": "unit element", "color": repr(c)})
    if witnesses:
        return witnesses
    for ins, out in O.signatures(bound):
        n = len(ins)
        for phi in O.mul(ins, out):
            left = O.compose((0,) * n, ins, (out,), out, (phi,), O.units[out])
            if left != phi:
                witnesses.append({"law": "left unit", "inputs": repr(ins), "output": repr(out), "operation": repr(phi), "got": repr(left)})
            right = O.compose(tuple(range(n)), ins, ins, out, tuple(O.units[c] for c in ins), phi)
            if right != phi:
                witnesses.append({"law": "right unit", "inputs": repr(ins), "output": repr(out), "operation": repr(phi), "got": repr(right)})
    for i, j, k in itertools.product(range(bound + 1), repeat=3):
        for f in itertools.product(range(j), repeat=i):
            I_j = fibers_of(f, j)
            for g in itertools.product(range(k), repeat=j):
                J_k = fibers_of(g, k)
                gf = tuple(g[x] for x in f)
                I_k = fibers_of(gf, k)
                for W in itertools.product(O.colors, repeat=i):
                    for X in itertools.product(O.colors, repeat=j):
                        phis_choices = [O.mul(tuple(W[a] for a in I_j[b]), X[b]) for b in range(j)]
                        if any(not c for c in phis_choices):
                            continue
                        for Y in itertools.product(O.colors, repeat=k):
                            psi_choices = [O.mul(tuple(X[b] for b in J_k[c]), Y[c]) for c in range(k)]
                            if any(not c for c in psi_choices):
                                continue
                            for Z in O.colors:
                                omegas = O.mul(Y, Z)
                                for phis in itertools.product(*phis_choices):
                                    for psis in itertools.product(*psi_choices):
                                        chis = []
                                        for c in range(k):
                                            local_j = {b: pos for pos, b in enumerate(J_k[c])}
                                            sub = tuple(local_j[f[a]] for a in I_k[c])
                                            chis.append(O.compose(
                                                sub, tuple(W[a] for a in I_k[c]), tuple(X[b] for b in J_k[c]), Y[c],
                                                tuple(phis[b] for b in J_k[c]), psis[c]))
                                        for omega in omegas:
                                            route_a = O.compose(gf, W, Y, Z, tuple(chis), omega)
                                            xi = O.compose(g, X, Y, Z, psis, omega)
                                            route_b = O.compose(f, W, X, Z, phis, xi)
                                            if route_a != route_b:
                                                witnesses.append({
                                                    "law": "associativity", "maps": [list(f), list(g)],
                                                    "colors": [repr(W), repr(X), repr(Y), repr(Z)],
                                                    "operations": [repr(phis), repr(psis), repr(omega)],
                                                    "routes": [repr(route_a), repr(route_b)],
                                                })
    return witnesses


# ---------------------------------------------------------------- category of color sequences

@dataclass
class OperadCategory:
    operad: ColoredOperad
    underlying: FinCat
    projection: Functor
    length_bound: int


def operad_category(O: ColoredOperad, L: int) -> OperadCategory:
    """Color sequences of length <= L; a morphism is a pointed map with one operation per target slot."""
    objects = [seq for n in range(L + 1) for seq in itertools.product(O.colors, repeat=n)]
    homs = {}
    for src in objects:
        for tgt in objects:
            ms = []
            for alpha in finseg.all_maps(len(src), len(tgt)):
                choices = [O.mul(tuple(src[i - 1] for i in alpha.fiber(j)), tgt[j - 1]) for j in range(1, len(tgt) + 1)]
                for ops in itertools.product(*choices):
                    ms.append(Arrow(src, tgt, (alpha, ops)))
            homs[(src, tgt)] = ms
    identities = {
        seq: Arrow(seq, seq, (finseg.identity(len(seq)), tuple(O.units[c] for c in seq))) for seq in objects
    }

    def compose(g, f):
        alpha, phis = f.data
        beta, psis = g.data
        gamma = finseg.compose(beta, alpha)
        src, mid, tgt = f.source, f.target, g.target
        chis = []
        for k in range(1, gamma.n + 1):
            J_k = beta.fiber(k)
            I_k = gamma.fiber(k)
            local = {j: pos for pos, j in enumerate(J_k)}
            chis.append(O.compose(
                tuple(local[alpha(i)] for i in I_k),
                tuple(src[i - 1] for i in I_k),
                tuple(mid[j - 1] for j in J_k),
                tgt[k - 1],
                tuple(phis[j - 1] for j in J_k),
                psis[k - 1],
            ))
        return Arrow(src, tgt, (gamma, tuple(chis)))

    C = FinCat(objects, homs, identities, compose, name=f"{O.name}^(x)<={L}")
    base = build_standard("finseg", L)[0]
    proj = Functor(C, base, lambda seq: len(seq), lambda m: m.data[0], name="projection")
    return OperadCategory(O, C, proj, L)


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class OperadicClass:
    inert: bool
    semi_inert: bool
    null: bool


def is_invertible_unary(O: ColoredOperad, op, source, target) -> bool:
    """op in Mul({source}, target) has a two-sided inverse under unary composition."""
    for inv in O.mul((target,), source):
        there = O.compose((0,), (source,), (target,), source, (op,), inv)
        back = O.compose((0,), (target,), (source,), target, (inv,), op)
        if there == O.units[source] and back == O.units[target]:
            return True
    return False


def classify_operadic(OC: OperadCategory, m: Arrow) -> OperadicClass:
    """Slotwise classification: each target slot has an empty fiber, or a single
    input carried by an invertible unary operation."""
    O = OC.operad
    alpha, ops = m.data
    empty, invertible = [], []
    for j in range(1, alpha.n + 1):
        fib = alpha.fiber(j)
        empty.append(not fib)
        invertible.append(
            len(fib) == 1 and is_invertible_unary(O, ops[j - 1], m.source[fib[0] - 1], m.target[j - 1])
        )
    return OperadicClass(
        inert=all(invertible),
        semi_inert=all(e or v for e, v in zip(empty, invertible)),
        null=all(empty),
    )


def semi_inert_by_definition(OC: OperadCategory, m: Arrow) -> bool:
    """The projection is semi-inert, and every inert g out of the target with
    g . m over an inert map makes g . m inert."""
    C = OC.underlying
    if not finseg.is_semi_inert(m.data[0]):
        return False
    for Z in C.objects:
        for g in C.hom(m.target, Z):
            if not classify_operadic(OC, g).inert:
                continue
            gm = C.compose(g, m)
            if finseg.is_inert(gm.data[0]) and not classify_operadic(OC, gm).inert:
                return False
    return True


# ---------------------------------------------------------------- comparison with standard categories

def comparison_functor(OC: OperadCategory, kind: str) -> Functor:
    """The evident functor from the category of a builtin operad to its standard model."""
    L = OC.length_bound
    target_name = {"comm": "finseg", "ass": "catass", "triv": "triv", "e0": "e0"}[kind]
    T = build_standard(target_name, L)[0]
    if kind == "ass":
        def on_mor(m):
            alpha, ops = m.data
            orders = tuple(tuple(alpha.fiber(j)[p] for p in ops[j - 1]) for j in range(1, alpha.n + 1))
            return simplex.AssMorphism(alpha, orders)
    else:
        def on_mor(m):
            return m.data[0]
    return Functor(OC.underlying, T, lambda seq: len(seq), on_mor, name=f"{kind}->standard")


def check_standard_isomorphism(kind: str, L: int) -> list[dict]:
    OC = operad_category(builtin(kind), L)
    return check_isomorphism(comparison_functor(OC, kind))


# ---------------------------------------------------------------- arrow categories

@dataclass
class OperadArrowCategory:
    underlying: FinCat
    labels: dict
    e0: Functor
    e1: Functor


def arrow_categories(OC: OperadCategory) -> tuple[OperadArrowCategory, OperadArrowCategory]:
    """Full subcategories of the arrow category on semi-inert and on null morphisms."""
    C = OC.underlying
    classes = {f: classify_operadic(OC, f) for f in C.morphisms()}
    semi = [f for f in C.morphisms() if classes[f].semi_inert]
    labels = {f: "null" if classes[f].null else "semi_inert" for f in semi}

    def squares(f, f2):
        out = []
        for a in C.hom(C.source(f), C.source(f2)):
            f2a = C.compose(f2, a)
            for b in C.hom(C.target(f), C.target(f2)):
                if C.compose(b, f) == f2a:
                    out.append(Arrow(f, f2, (a, b)))
        return out

    def build(objs, name):
        homs = {(f, f2): squares(f, f2) for f in objs for f2 in objs}
        ids = {f: Arrow(f, f, (C.identity(C.source(f)), C.identity(C.target(f)))) for f in objs}

        def compose(q, p):
            return Arrow(p.source, q.target, (C.compose(q.data[0], p.data[0]), C.compose(q.data[1], p.data[1])))

        K = FinCat(objs, homs, ids, compose, name=name)
        e0 = Functor(K, C, lambda f: C.source(f), lambda sq: sq.data[0], name="e0")
        e1 = Functor(K, C, lambda f: C.target(f), lambda sq: sq.data[1], name="e1")
        return OperadArrowCategory(K, {f: labels[f] for f in objs}, e0, e1)

    K = build(semi, "K")
    K0 = build([f for f in semi if labels[f] == "null"], "K0")
    return K, K0
