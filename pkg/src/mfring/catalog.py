"""Catalog of groups, dimension rows, named forms, identities and presentations.

The catalog is plain data (``data/catalog.json``), loaded once and
validated: every expression must parse, every name must resolve, all
weights must be consistent, and claimed Hilbert denominators must match
generator weights.  Weights are stored doubled throughout so that
half-integral gradings stay in integer arithmetic.

Schema (top-level keys):

* ``groups``: ``{label, kind: full|gamma0|gammaH, level, H?, dim?}`` where
  ``dim`` is a list of branches over the doubled weight ``j``; a branch
  ``{mod, res, jmin?, cj?: [p,q], floor?: [p,q], c?}`` applies when
  ``j % mod in res`` and ``j >= jmin`` and evaluates to
  ``p*j/q + p'*floor(j/q') + c``.
* ``forms``: ``{name, w2, L, group?, char?, expr}`` with prefix expressions.
* ``identities``: ``{name, group, L, w2, half_members?, expr, note?}``;
  the expression must evaluate to the zero series.
* ``cases``: ``{label, group, L, dim?, span_gens?, span_kmax2?,
  kernel_kmax2?, presentation?}``; a presentation is ``{gens, aux?,
  relations, relations_unknown?, base?, hilbert?}`` with relations given
  as infix polynomials in the generator names and ``hilbert`` as
  ``{num: [[coeff, deg2], ...], den: [deg2, ...]}``.
* ``decompositions``: character eigenspace tables per group, kept as
  unverified metadata.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import gcd

from .characters import _factorize, unit_group
from .cyclo import cyclo_context
from .errors import CatalogError, OutOfTable, QuasiModularUse, UnknownForm
from .exprs import Evaluator, parse_expr, parse_poly
from .qseries import QSeries


@dataclass(frozen=True)
class GroupSpec:
    label: str
    kind: str  # full | gamma0 | gammaH
    level: int
    H: tuple[int, ...] = ()

    def key(self):
        return (self.kind, self.level, self.H)


@dataclass(frozen=True)
class SpanGen:
    name: str
    w2: int
    expr: str


@dataclass(frozen=True)
class Relation:
    name: str
    w2: int
    poly: str


@dataclass(frozen=True)
class Presentation:
    gens: tuple[SpanGen, ...]
    aux: tuple[SpanGen, ...]
    relations: tuple[Relation, ...]
    relations_unknown: bool
    base: str | None
    hilbert_num: tuple[tuple[int, int], ...] | None  # (coeff, doubled degree)
    hilbert_den: tuple[int, ...] | None


@dataclass(frozen=True)
class Case:
    label: str
    group: str
    L: int
    dim_branches: tuple | None
    span_gens: tuple[SpanGen, ...] | None
    span_kmax2: int | None
    kernel_kmax2: int | None
    presentation: Presentation | None


@dataclass(frozen=True)
class FormEntry:
    name: str
    w2: int
    L: int
    group: str | None
    char: str | None
    expr: str


@dataclass(frozen=True)
class Identity:
    name: str
    group: str
    L: int
    w2: int
    half_members: bool
    expr: str
    note: str | None


def psi_index(N: int) -> int:
    """Index of Gamma0(N) in PSL2(Z): N * prod (1 + 1/p)."""
    out = N
    for p, _ in _factorize(N):
        out = out // p * (p + 1)
    return out


def _subgroup_order(N: int, gens: tuple[int, ...]) -> int:
    seen = {1 % N}
    frontier = [1 % N]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % N
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen)


def group_index(group: GroupSpec) -> int:
    """Index of the image in PSL2(Z)."""
    if group.kind == "full":
        return 1
    if group.kind == "gamma0":
        return psi_index(group.level)
    N = group.level
    order = _subgroup_order(N, group.H + (N - 1,))
    phi = len(unit_group(N).units) if N > 1 else 1
    return psi_index(N) * (phi // order)


def sturm_bound2(group: GroupSpec, w2: int) -> int:
    """Certified coefficient cutoff for doubled weight w2 on this group.

    Two forms of this weight agreeing to this many coefficients are equal.
    Half-integral weights use the bound of the squared weight, halved
    rounding up.
    """
    m = group_index(group)
    if w2 % 2 == 0:
        return (w2 * m) // 24 + 2
    squared = (w2 * m) // 12 + 2
    return (squared + 1) // 2


def eval_dim_branches(branches, j2: int) -> int:
    for br in branches:
        mod = br.get("mod", 1)
        if j2 % mod not in br.get("res", [0]):
            continue
        if j2 < br.get("jmin", 0):
            continue
        val = br.get("c", 0)
        if "cj" in br:
            p, q = br["cj"]
            num = p * j2
            if num % q:
                raise CatalogError(f"non-integral dimension at j2={j2}")
            val += num // q
        if "floor" in br:
            p, q = br["floor"]
            val += p * (j2 // q)
        if val < 0:
            raise CatalogError(f"negative dimension at j2={j2}")
        return val
    raise OutOfTable(f"no dimension branch covers doubled weight {j2}")


class Catalog:
    def __init__(self, raw: dict):
        self.groups: dict[str, GroupSpec] = {}
        self.dims: dict[str, tuple] = {}
        for g in raw.get("groups", []):
            spec = GroupSpec(g["label"], g["kind"], g["level"], tuple(g.get("H", [])))
            if spec.label in self.groups:
                raise CatalogError(f"duplicate group {spec.label}")
            self.groups[spec.label] = spec
            if "dim" in g:
                self.dims[spec.label] = tuple(g["dim"])
        self.forms: dict[str, FormEntry] = {}
        for f in raw.get("forms", []):
            entry = FormEntry(
                f["name"], f["w2"], f["L"], f.get("group"), f.get("char"), f["expr"]
            )
            if entry.name in self.forms:
                raise CatalogError(f"duplicate form {entry.name}")
            self.forms[entry.name] = entry
        self.identities: dict[str, Identity] = {}
        for i in raw.get("identities", []):
            ident = Identity(
                i["name"], i["group"], i["L"], i["w2"],
                bool(i.get("half_members", False)), i["expr"], i.get("note"),
            )
            self.identities[ident.name] = ident
        self.cases: dict[str, Case] = {}
        for c in raw.get("cases", []):
            pres = None
            if "presentation" in c:
                p = c["presentation"]
                pres = Presentation(
                    gens=tuple(SpanGen(g["name"], g["w2"], g["expr"]) for g in p["gens"]),
                    aux=tuple(SpanGen(g["name"], g["w2"], g["expr"]) for g in p.get("aux", [])),
                    relations=tuple(
                        Relation(r["name"], r["w2"], r["poly"]) for r in p.get("relations", [])
                    ),
                    relations_unknown=bool(p.get("relations_unknown", False)),
                    base=p.get("base"),
                    hilbert_num=tuple(tuple(t) for t in p["hilbert"]["num"]) if "hilbert" in p else None,
                    hilbert_den=tuple(p["hilbert"]["den"]) if "hilbert" in p else None,
                )
            case = Case(
                label=c["label"],
                group=c["group"],
                L=c["L"],  # field conductor: lcm of root-of-unity orders the case needs
                dim_branches=tuple(c["dim"]) if "dim" in c else None,
                span_gens=tuple(SpanGen(g["name"], g["w2"], g["expr"]) for g in c["span_gens"])
                if "span_gens" in c
                else None,
                span_kmax2=c.get("span_kmax2"),
                kernel_kmax2=c.get("kernel_kmax2"),
                presentation=pres,
            )
            self.cases[case.label] = case
        # eigenspace decomposition tables: unverified metadata, no checks run
        self.decompositions = tuple(raw.get("decompositions", []))
        self._validate()

    # -- lookups ----------------------------------------------------------

    def group(self, label: str) -> GroupSpec:
        if label not in self.groups:
            raise OutOfTable(f"unknown group {label!r}")
        return self.groups[label]

    def group_by_key(self, kind: str, level: int, H=()) -> GroupSpec:
        key = (kind, level, tuple(sorted(H)))
        for g in self.groups.values():
            if (g.kind, g.level, tuple(sorted(g.H))) == key:
                return g
        raise OutOfTable(f"no group {kind}:{level}:{list(H)}")

    def dim2(self, label: str, j2: int, case: str | None = None) -> int:
        """Dimension at doubled weight j2 for a group label or case override."""
        if case is not None and self.cases[case].dim_branches is not None:
            if j2 == 0:
                return 1  # weight-0 forms are the constants
            return eval_dim_branches(self.cases[case].dim_branches, j2)
        if label not in self.dims:
            raise OutOfTable(f"no dimension table for group {label!r}")
        return eval_dim_branches(self.dims[label], j2)

    def sturm2(self, group_label: str, w2: int) -> int:
        return sturm_bound2(self.group(group_label), w2)

    def case_gens(self, case: Case, presentation: bool = False) -> tuple[SpanGen, ...]:
        if presentation:
            pres = case.presentation
            if pres is None:
                raise CatalogError(f"case {case.label} has no presentation")
            gens = pres.gens
            if pres.base is not None:
                base = self.cases[pres.base].presentation
                gens = tuple(base.gens) + gens
            return gens
        if case.span_gens is None:
            raise CatalogError(f"case {case.label} has no span generators")
        return case.span_gens

    def evaluator(self, L: int, locals_: dict | None = None) -> Evaluator:
        table = {name: e.expr for name, e in self.forms.items()}
        return Evaluator(cyclo_context(L), form_table=table, locals_=locals_ or {})

    def lookup_form(self, name: str, prec: int) -> QSeries:
        """Resolve a catalog form name or constructor expression to a q-expansion."""
        if name in self.forms:
            entry = self.forms[name]
            return self.evaluator(entry.L).series(name, prec)
        # bare constructor or inline prefix expression: infer a workable conductor
        ev = self.evaluator(self._infer_conductor(name))
        return ev.series(name, prec)

    def _infer_conductor(self, text: str) -> int:
        from .exprs import _CONSTRUCTOR, parse_character, _split_top_level
        import re as _re

        L = 1
        tokens = _re.findall(r"[^\s()]+", text)
        for tok in tokens:
            if tok in self.forms:
                L = L * self.forms[tok].L // gcd(L, self.forms[tok].L)
                continue
            m = _CONSTRUCTOR.fullmatch(tok)
            if m is None:
                continue
            chars = []
            if m.group("fchar"):
                chars = [m.group("fchar")]
            elif m.group("gchars"):
                chars = _split_top_level(m.group("gchars"))
            order = 1
            for ch in chars:
                o = parse_character(ch).order()
                order = order * o // gcd(order, o)
            if chars:
                order = order * 2 // gcd(order, 2)  # parity values need -1
            L = L * order // gcd(L, order)
        return L

    # -- validation -------------------------------------------------------

    def _expr_weight(self, ast, local_weights: dict[str, int], stack: tuple = ()) -> int:
        op = ast[0]
        if op == "atom":
            name = ast[1]
            if name in local_weights:
                return local_weights[name]
            if name in stack:
                raise CatalogError(f"cyclic form definition through {name!r}")
            if name in self.forms:
                entry = self.forms[name]
                got = self._expr_weight(parse_expr(entry.expr) if entry.expr.startswith("(")
                                        else ("atom", entry.expr),
                                        {}, stack + (name,))
                if got != entry.w2:
                    raise CatalogError(f"form {name}: declared w2={entry.w2}, computed {got}")
                return entry.w2
            return _constructor_weight(name)
        if op in ("add", "mul"):
            weights = [self._expr_weight(a, local_weights, stack) for a in ast[1]]
            if op == "add":
                if len(set(weights)) != 1:
                    raise CatalogError(f"inhomogeneous sum: weights {weights}")
                return weights[0]
            return sum(weights)
        if op == "sub":
            w1 = self._expr_weight(ast[1], local_weights, stack)
            w2 = self._expr_weight(ast[2], local_weights, stack)
            if w1 != w2:
                raise CatalogError(f"inhomogeneous difference: {w1} vs {w2}")
            return w1
        if op == "pow":
            return self._expr_weight(ast[1], local_weights, stack) * ast[2]
        if op in ("conj", "scale", "v", "low"):
            return self._expr_weight(ast[-1], local_weights, stack)
        raise CatalogError(f"unknown node {op}")

    def _weight_of(self, expr: str, locals_w: dict[str, int] | None = None) -> int:
        ast = parse_expr(expr) if expr.lstrip().startswith("(") else ("atom", expr.strip())
        return self._expr_weight(ast, locals_w or {})

    def _forbid_quasi_modular(self, expr: str, where: str):
        tokens = expr.replace("(", " ").replace(")", " ").split()
        if "E2" in tokens:
            raise QuasiModularUse(f"{where}: E2 is quasi-modular and cannot be a form member")

    def _validate(self):
        for name, entry in self.forms.items():
            self._weight_of(entry.expr)  # checks consistency recursively
            if entry.group is not None and entry.group not in self.groups:
                raise CatalogError(f"form {name}: unknown group {entry.group}")
        for ident in self.identities.values():
            if ident.group not in self.groups:
                raise CatalogError(f"identity {ident.name}: unknown group {ident.group}")
            got = self._weight_of(ident.expr)
            if got != ident.w2:
                raise CatalogError(f"identity {ident.name}: w2 {ident.w2} vs computed {got}")
        for case in self.cases.values():
            if case.group not in self.groups:
                raise CatalogError(f"case {case.label}: unknown group {case.group}")
            if case.span_gens:
                for gen in case.span_gens:
                    self._forbid_quasi_modular(gen.expr, f"case {case.label} gen {gen.name}")
                    got = self._weight_of(gen.expr)
                    if got != gen.w2:
                        raise CatalogError(
                            f"case {case.label} gen {gen.name}: w2 {gen.w2} vs computed {got}"
                        )
            pres = case.presentation
            if pres is None:
                continue
            if pres.base is not None and pres.base not in self.cases:
                raise CatalogError(f"case {case.label}: unknown base {pres.base}")
            gens = self.case_gens(case, presentation=True)
            var_w = {g.name: g.w2 for g in gens}
            for gen in pres.gens + pres.aux:
                self._forbid_quasi_modular(gen.expr, f"case {case.label} gen {gen.name}")
                got = self._weight_of(gen.expr, var_w)
                if got != gen.w2:
                    raise CatalogError(
                        f"case {case.label} gen {gen.name}: w2 {gen.w2} vs computed {got}"
                    )
            var_w.update({g.name: g.w2 for g in pres.aux})
            names = list(var_w)
            ctx = cyclo_context(case.L)
            for rel in pres.relations:
                terms = parse_poly(rel.poly, names, ctx)
                for exps in terms:
                    w = sum(e * var_w[n] for e, n in zip(exps, names))
                    if w != rel.w2:
                        raise CatalogError(
                            f"relation {rel.name}: term of weight {w}, declared {rel.w2}"
                        )
            if pres.hilbert_den is not None:
                gen_w = sorted(g.w2 for g in gens)
                if sorted(pres.hilbert_den) != gen_w:
                    raise CatalogError(
                        f"case {case.label}: Hilbert denominator {sorted(pres.hilbert_den)} "
                        f"vs generator weights {gen_w}"
                    )


def _constructor_weight(name: str) -> int:
    from .exprs import _CONSTRUCTOR

    m = _CONSTRUCTOR.fullmatch(name)
    if m is None:
        raise UnknownForm(f"cannot resolve {name!r}")
    if m.group("ek") is not None:
        return 2 * int(m.group("ek"))
    if m.group("cn") is not None:
        return 4
    if m.group("fk") is not None:
        return 2 * int(m.group("fk"))
    if m.group("gk") is not None:
        return 2 * int(m.group("gk"))
    # two-variable lattice sums have weight 1, the one-variable theta weight 1/2
    return 2 if m.group("bqf") is not None else 1


@lru_cache(maxsize=None)
def load_catalog(path: str | None = None) -> Catalog:
    if path is None:
        text = resources.files("mfring").joinpath("data/catalog.json").read_text()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return Catalog(json.loads(text))
