"""JSON encodings of finite categories, functors and set functors.

Object and morphism ids must be JSON scalars (strings or integers), or lists
which are converted to tuples on reading.
"""
from __future__ import annotations

from ..errors import InvalidInput
from .core import FinCat, Functor, SetFunctor
from .monoidal import FinMonoidalCat


def _key(x):
    return tuple(_key(v) for v in x) if isinstance(x, list) else x


def _plain(x):
    return [_plain(v) for v in x] if isinstance(x, tuple) else x


def _field(data, name: str, where: str):
    if not isinstance(data, dict):
        raise InvalidInput(f"{where}: expected a JSON object")
    if name not in data:
        raise InvalidInput(f"{where}: missing field '{name}'")
    return data[name]


def fincat_to_json(C: FinCat, label=None) -> dict:
    """Encode C with every composite listed; ``label`` maps ids to JSON values (default repr)."""
    label = label or (lambda x: _plain(x) if isinstance(x, (int, str, tuple)) else repr(x))
    return {
        "objects": [label(a) for a in C.objects],
        "homs": [
            {"source": label(a), "target": label(b), "morphisms": [label(f) for f in C.hom(a, b)]}
            for a in C.objects
            for b in C.objects
            if C.hom(a, b)
        ],
        "identities": [[label(a), label(C.identity(a))] for a in C.objects],
        "composition": [[label(g), label(f), label(C.compose(g, f))] for f, g in C.composable_pairs()],
    }


def fincat_from_json(data, validate: bool = True) -> FinCat:
    objects = [_key(a) for a in _field(data, "objects", "category")]
    homs = {}
    for entry in _field(data, "homs", "category"):
        src = _key(_field(entry, "source", "hom entry"))
        tgt = _key(_field(entry, "target", "hom entry"))
        homs[(src, tgt)] = [_key(f) for f in _field(entry, "morphisms", "hom entry")]
    identities = {}
    for pair in _field(data, "identities", "category"):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InvalidInput("category: identities entries must be [object, morphism] pairs")
        identities[_key(pair[0])] = _key(pair[1])
    table = {}
    for triple in _field(data, "composition", "category"):
        if not isinstance(triple, list) or len(triple) != 3:
            raise InvalidInput("category: composition entries must be [g, f, g.f] triples")
        g, f, h = (_key(x) for x in triple)
        table[(g, f)] = h
    for a in objects:
        for b in objects:
            homs.setdefault((a, b), [])
    # identities compose trivially even if the table leaves them out
    for (a, b), ms in homs.items():
        for f in ms:
            if a in identities:
                table.setdefault((f, identities[a]), f)
            if b in identities:
                table.setdefault((identities[b], f), f)
    C = FinCat(objects, homs, identities, table, name=str(data.get("name", "")))
    if validate:
        for f, g in C.composable_pairs():
            if (g, f) not in table:
                raise InvalidInput(f"category: composition table has no entry for [{g!r}, {f!r}]")
        witnesses = C.validate()
        if witnesses:
            raise InvalidInput(f"category: {witnesses[0]['law']} fails ({witnesses[0]})")
    return C


def functor_from_json(data, source: FinCat, target: FinCat) -> Functor:
    on_objects = {_key(a): _key(b) for a, b in _field(data, "objects", "functor")}
    on_morphisms = {_key(f): _key(g) for f, g in _field(data, "morphisms", "functor")}
    return Functor(source, target, on_objects, on_morphisms, name=str(data.get("name", "")))


def setfunctor_from_json(data, base: FinCat) -> SetFunctor:
    carriers = {_key(a): list(elements) for a, elements in _field(data, "carriers", "set functor")}
    actions = {_key(f): list(table) for f, table in _field(data, "actions", "set functor")}
    for a in base.objects:
        if a not in carriers:
            raise InvalidInput(f"set functor: missing carrier for object {a!r}")
    for f in base.morphisms():
        if f not in actions:
            if base.is_identity(f):
                actions[f] = list(range(len(carriers[base.source(f)])))
            else:
                raise InvalidInput(f"set functor: missing action for morphism {f!r}")
    return SetFunctor(base, carriers, actions, name=str(data.get("name", "")))


def setfunctor_to_json(X: SetFunctor, label=repr) -> dict:
    C = X.base
    return {
        "carriers": [[label(a), [label(x) for x in X.carrier(a)]] for a in C.objects],
        "actions": [[label(f), list(X.act(f))] for f in C.morphisms()],
    }


def monoidal_from_json(data, validate: bool = True) -> FinMonoidalCat:
    """A FinCat encoding extended with "tensor" ({"objects": [[a, b, a(x)b]...],
    "morphisms": [[f, g, f(x)g]...]}) and "unit"."""
    C = fincat_from_json(data, validate=validate)
    tensor = _field(data, "tensor", "monoidal category")
    t_obj = {(_key(a), _key(b)): _key(c) for a, b, c in _field(tensor, "objects", "tensor")}
    t_mor = {(_key(f), _key(g)): _key(h) for f, g, h in _field(tensor, "morphisms", "tensor")}
    braid = data.get("braiding")
    braiding = None
    if braid is not None:
        table = {(_key(a), _key(b)): _key(s) for a, b, s in braid}
        braiding = lambda a, b: table[(a, b)]  # noqa: E731
    M = FinMonoidalCat(C, lambda a, b: t_obj[(a, b)], lambda f, g: t_mor[(f, g)], _key(_field(data, "unit", "monoidal category")), braiding)
    if validate:
        try:
            witnesses = M.validate()
        except KeyError as exc:
            raise InvalidInput(f"monoidal category: tensor table has no entry for {exc}") from None
        if witnesses:
            raise InvalidInput(f"monoidal category: {witnesses[0]['law']} fails ({witnesses[0]})")
    return M
