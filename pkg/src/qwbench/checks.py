"""
Check runners behind the CLI.  Each command returns a data section and a
list of records {name, status, witness}; status is pass, fail or
inconclusive.  Witness data is rendered to strings so reports are stable.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from .algebra import Session, SupportViolation
from .classical import NoClassicalLimit, Rescaled, classical_limit, cadd
from .coeff import PoleError, QV
from .hopf import HopfStructure, HypothesisError
from .lie import RootSystem
from .modules import UnsupportedModule, finite_module, random_element
from .realization import check_invariants, realize
from .rmatrix import (ad_orbit_probe, check_quasitriangular, check_ybe, comult_identity,
                      designated_entry, l_square)
from .slices import (induces_reflection, slice_audit, u_element, weyl_representative)
from .wq import (IdealContext, agreement, build_character, closure_check, w_elements, wh_of_module,
                 whittaker_session)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
PROXY_CAVEAT = ("invariants are computed in a degree-bounded proxy of C[G^*]; "
                "at this size it does not separate C[G^*] from C[G_*]")


class ConfigError(ValueError):
    """A config that validates against the schema but not against the root data."""


def record(name, ok, witness=None, status=None):
    return {"name": name, "status": status or (PASS if ok else FAIL), "witness": witness or {}}


class Context:
    """Lazily built objects shared by the commands of one run."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.rs = RootSystem(cfg["type"], cfg["rank"])
        self._R = None
        self._S = None
        self._H = None

    def rng(self, salt):
        return random.Random(f"{self.cfg['seed']}:{salt}")

    @property
    def R(self):
        if self._R is None:
            w0 = self.cfg.get("w0")
            self._R = realize(self.rs, tuple(i - 1 for i in self.cfg["s"]),
                              w0_word=tuple(i - 1 for i in w0) if w0 else None)
        return self._R

    @property
    def S(self):
        if self._S is None:
            self._S = Session(self.R, self.cfg["degree_bound"])
        return self._S

    @property
    def H(self):
        if self._H is None:
            self._H = HopfStructure(self.S)
        return self._H

    def k_values(self):
        k = self.cfg.get("k")
        lp = len(self.R.gammas)
        if k is None:
            return [1] * lp
        if len(k) != lp:
            raise ConfigError(f"k has {len(k)} entries but l' = {lp}")
        return [Fraction(x) for x in k]


def _timed(fn, ctx, timings, name):
    t = time.perf_counter()
    out = fn(ctx)
    timings[name] = round(time.perf_counter() - t, 3)
    return out


# -- root-system ------------------------------------------------------------------
_D_EXPECTED = {"A": lambda n: n * (n + 1) // 2, "B": lambda n: n * n, "C": lambda n: n * n,
               "D": lambda n: n * (n - 1), "G": lambda n: 6, "F": lambda n: 24}


def cmd_root_system(ctx):
    rs = ctx.rs
    n = rs.rank
    w0 = rs.longest()
    data = {"type": rs.label, "rank": n, "cartan": rs.cartan, "d": rs.d, "D": rs.D,
            "positive_roots": [list(b) for b in rs.positive],
            "w0_word": [i + 1 for i in w0.word()], "weyl_order": len(rs.elements())}
    recs = [
        record("symmetrizable", all(rs.form[i][j] == rs.form[j][i] for i in range(n) for j in range(n))),
        record("positive-root-count", rs.D == _D_EXPECTED[rs.kind](n), {"D": rs.D}),
        record("w0-length", w0.length() == rs.D, {"length": w0.length()}),
        record("normal-ordering", rs.is_normal_ordering(rs.ordering_from_word(w0.word()))),
    ]
    return data, recs


# -- realization ---------------------------------------------------------------------
def cmd_realization(ctx):
    R = ctx.R
    inv = check_invariants(R)
    recs = [record(f"realization:{k}", v) for k, v in inv.items()]
    recs.append(record("realization:simple-flag", True, {"simple_flag": R.simple_flag},
                       status=PASS if R.simple_flag else INCONCLUSIVE))
    return R.dump(), recs


# -- algebra-check -------------------------------------------------------------------
def _braid_m(rs, i, j):
    return {0: 2, 1: 3, 2: 4, 3: 6}[rs.cartan[i][j] * rs.cartan[j][i]]


def _braid_checks(S):
    rs = S.rs
    std = S.std
    gens = []
    for i in range(S.l):
        k = S.simple_pos[i]
        gens += [std.e(k), std.f(k), std.torus(tuple(int(a == i) for a in range(S.l)))]
    bad = []
    for i in range(S.l):
        for j in range(i + 1, S.l):
            m = _braid_m(rs, i, j)
            for x in gens:
                a, b = x, x
                for r in range(m):
                    a = S.braid_apply((i, j)[r % 2], a)
                    b = S.braid_apply((j, i)[r % 2], b)
                if a != b:
                    bad.append([i + 1, j + 1, str(x)])
    return bad


def _ls_checks(S, twisted):
    bad = []
    for a in range(S.D):
        for b in range(a + 1, S.D):
            try:
                S.ls_relation(a, b, twisted)
            except SupportViolation as exc:
                bad.append(str(exc))
    return bad


def _chevalley(S):
    """v = 1 commutators against the Chevalley basis: [E_i, F_j] = delta H_i, |N| = p + 1."""
    rs = S.rs
    bad = []
    for alg in (S.std, S.alg):
        zero_r = (0,) * S.D
        for i in range(S.l):
            for j in range(S.l):
                a, b = S.simple_pos[i], S.simple_pos[j]
                x = classical_limit(alg.e(a) * alg.f(b) - alg.f(b) * alg.e(a))
                want = {(zero_r, tuple(int(k == i) for k in range(S.l)), zero_r): 1} if i == j else {}
                if x != want:
                    bad.append(["ef", i + 1, j + 1])
        for p in range(S.D):
            for q in range(p + 1, S.D):
                al, be = S.ordering[p], S.ordering[q]
                tot = tuple(x + y for x, y in zip(al, be))
                for kind, gen in (("e", alg.e), ("f", alg.f)):
                    x = classical_limit(gen(p) * gen(q) - gen(q) * gen(p))
                    if tot not in rs.positive:
                        ok = not x
                    else:
                        k = S.pos[tot]
                        pstring = 0
                        while rs.is_root(tuple(y - (pstring + 1) * z for y, z in zip(be, al))):
                            pstring += 1
                        ok = len(x) == 1
                        if ok:
                            (key, c), = x.items()
                            r, _, t = key
                            mono = r if kind == "e" else t
                            ok = mono == tuple(int(z == k) for z in range(S.D)) and abs(c) == pstring + 1
                    if not ok:
                        bad.append([kind, list(al), list(be)])
    return bad


def _poisson(S, rng, triples):
    rc = Rescaled(S)
    D = S.D

    def rand_poly():
        out = {}
        for _ in range(2):
            r = tuple(int(rng.random() < 0.3) for _ in range(D))
            t = tuple(int(rng.random() < 0.3) for _ in range(D))
            s = tuple(rng.randint(-1, 1) for _ in range(S.l))
            out = cadd(out, {(r, s, t): Fraction(rng.randint(1, 3))})
        return out

    skew_bad = jac_bad = 0
    for _ in range(triples):
        x, y, z = rand_poly(), rand_poly(), rand_poly()
        if cadd(rc.bracket(x, y), rc.bracket(y, x)):
            skew_bad += 1
        jac = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            jac = cadd(jac, rc.bracket(a, rc.bracket(b, c)))
        if jac:
            jac_bad += 1
    return skew_bad, jac_bad


def cmd_algebra_check(ctx):
    S = ctx.S
    cfg = ctx.cfg
    samples = cfg["samples"]
    recs = []
    for alg, tag in ((S.std, "standard"), (S.alg, "twisted")):
        bad = [f"{k}{key}" for k in ("e", "f") for key, x in S.serre_elements(k, alg).items() if x]
        recs.append(record(f"serre:{tag}", not bad, {"failing": bad}))
        recs.append(record(f"confluence:{tag}", not alg.confluence_check(),
                           {"overlaps": len(alg.rules)}))
        g = S.graded_check(alg)
        recs.append(record(f"graded:{tag}", not g, {"failures": [str(x) for x in g[:5]]}))
        ls = _ls_checks(S, alg is S.alg)
        recs.append(record(f"ls-support:{tag}", not ls, {"failures": ls[:5]}))
    cross = [list(k) for k, x in S.cross_relations().items() if x]
    recs.append(record("cross-relations:twisted", not cross, {"failing": cross}))
    braid = _braid_checks(S)
    recs.append(record("braid-relations", not braid, {"failing": braid[:5]}))
    recs.append(record("root-vectors-in-n+", S.nplus_membership()))

    rng = ctx.rng("assoc")
    bad = 0
    n = samples["associativity"]
    for _ in range(n):
        x, y, z = (random_element(S.alg, rng, 2, 2) for _ in range(3))
        if (x * y) * z != x * (y * z):
            bad += 1
    recs.append(record("associativity", bad == 0, {"triples": n, "failures": bad}))
    bad = 0
    for _ in range(n):
        x, y = random_element(S.alg, rng, 2, 2), random_element(S.alg, rng, 2, 2)
        if x * y != S.twisted_via_words(x, y):
            bad += 1
    recs.append(record("product-two-routes", bad == 0, {"pairs": n, "failures": bad}))

    for p in cfg["specialization"]:
        p = Fraction(p)
        if p == 1:
            try:
                ch = _chevalley(S)
                recs.append(record("classical:chevalley@v=1", not ch, {"failing": ch[:5]}))
                sk, jac = _poisson(S, ctx.rng("poisson"), samples["poisson"])
                recs.append(record("classical:poisson@v=1", sk == 0 and jac == 0,
                                   {"triples": samples["poisson"], "skew_failures": sk,
                                    "jacobi_failures": jac}))
            except NoClassicalLimit as exc:
                recs.append(record("classical@v=1", False, {"error": str(exc)}))
            continue
        poles = 0
        for alg in (S.std, S.alg):
            for rule in alg.rules.values():
                for c, _, _ in rule:
                    try:
                        c.specialize(p)
                    except PoleError:
                        poles += 1
        recs.append(record(f"rules-regular@v={p}", poles == 0, {"poles": poles}))

    H = ctx.H
    rng = ctx.rng("hopf")
    gens = []
    for i in range(S.l):
        k = S.simple_pos[i]
        gens += [S.alg.e(k), S.alg.f(k), S.alg.torus(tuple(int(a == i) for a in range(S.l)))]
    elems = gens + [random_element(S.alg, rng, 2, 2) for _ in range(samples["hopf"])]
    coass = sum(1 for x in elems if H.coassociativity_defect(x))
    counit = sum(1 for x in elems if any(H.counit_defects(x)))
    anti = sum(1 for x in elems if any(H.antipode_defects(x)))
    recs.append(record("hopf:coassociativity", coass == 0, {"elements": len(elems), "failures": coass}))
    recs.append(record("hopf:counit", counit == 0, {"elements": len(elems), "failures": counit}))
    recs.append(record("hopf:antipode", anti == 0, {"elements": len(elems), "failures": anti}))
    bad = 0
    for x in gens:
        w, z = elems[rng.randrange(len(elems))], elems[rng.randrange(len(elems))]
        if H.adm_defect(x, w, z):
            bad += 1
    recs.append(record("hopf:adm", bad == 0, {"generators": len(gens), "failures": bad}))
    data = {"D": S.D, "ordering": [list(b) for b in S.ordering], "kappa": [list(k) for k in S.kappa]}
    return data, recs


# -- rmatrix-check -----------------------------------------------------------------------
_MODULES = {"A1": ("spin1", 0), "A2": ("vector", 0)}


def cmd_rmatrix_check(ctx):
    S = ctx.S
    label = ctx.rs.label
    if label not in _MODULES:
        return {}, [record("rmatrix", True, {"reason": f"no shipped modules for {label}"},
                           status=INCONCLUSIVE)]
    case, i = _MODULES[label]
    recs = []
    data = {"module": case}
    try:
        V = finite_module(S, case)
    except UnsupportedModule as exc:
        return {}, [record("rmatrix", True, {"reason": str(exc)}, status=INCONCLUSIVE)]
    recs.append(record("module-relations", V.relations_hold(), {"module": case, "dim": V.dim}))
    qt = check_quasitriangular(V, V, "ascending")
    mirror = check_quasitriangular(V, V, "descending")
    recs.append(record("quasitriangular:VxV", qt["ok"],
                       {"order": "ascending", "failures": qt["failures"],
                        "descending_order_ok": mirror["ok"]}))
    if label == "A2":
        W = finite_module(S, "dual")
        qt2 = check_quasitriangular(V, W, "ascending")
        mirror2 = check_quasitriangular(V, W, "descending")
        recs.append(record("quasitriangular:VxV*", qt2["ok"],
                           {"order": "ascending", "failures": qt2["failures"],
                            "descending_order_ok": mirror2["ok"]}))
    ybe = check_ybe(V, "ascending")
    recs.append(record("yang-baxter:VxVxV", ybe["ok"], {"order": "ascending"}))
    for k in range(S.D):
        if k in S.simple_pos:
            continue
        d = comult_identity(V, V, k, "after")
        d2 = comult_identity(V, V, k, "before")
        recs.append(record(f"comult:e{list(S.ordering[k])}", not d,
                           {"side": "after", "before_side_ok": not d2}))
    entry = designated_entry(V)
    want = l_square(S, i)
    recs.append(record("l-operator:designated-entry", entry == want,
                       {"entry": str(entry), "L_sq": str(want)}))
    probe = ad_orbit_probe(ctx.H, want, bound=8)
    recs.append(record("l-operator:ad-orbit", probe["stabilized"], probe,
                       status=PASS if probe["stabilized"] else INCONCLUSIVE))
    return data, recs


# -- wq ------------------------------------------------------------------------------------
def cmd_wq(ctx):
    R = ctx.R
    S = ctx.S
    if not R.simple_flag:
        return {}, [record("wq", True, {"reason": "gamma_1..gamma_n are not simple"},
                           status=INCONCLUSIVE)]
    wcfg = ctx.cfg["wq"]
    recs = []
    try:
        S, conv = whittaker_session(S, wcfg["convention"])
    except HypothesisError as exc:
        return {}, [record("wq:hypotheses", False, {"reason": str(exc)})]
    chosen = conv["convention"]
    recs.append(record("wq:hypotheses", conv[chosen]["certificate"] and conv[chosen]["coideal"], conv))
    sym = build_character(S)
    recs.append(record("character:symbolic-certificate", sym.certificate["ok"],
                       {"relations": sym.certificate["relations"]}))
    kv = ctx.k_values()
    chi = build_character(S, [QV(x) for x in kv])
    recs.append(record("character:numeric-certificate", chi.certificate["ok"]))
    ictx = IdealContext(S, chi)
    gens_ok = all(not ictx.reduce(g) for g in ictx.generators())
    one_ok = ictx.reduce(ictx.ralg.one()) == ictx.ralg.one()
    rng = ctx.rng("ideal")
    kill = 0
    for _ in range(ctx.cfg["samples"]["ideal"]):
        x = random_element(ictx.ralg, rng, 2, 2)
        for g in ictx.generators():
            if ictx.reduce(x * g):
                kill += 1
        y = ictx.reduce(x)
        if ictx.reduce(y) != y:
            kill += 1
    recs.append(record("ideal:reduction", gens_ok and one_ok and kill == 0,
                       {"generators_reduce_to_0": gens_ok, "one_fixed": one_ok, "failures": kill}))
    deg, box = wcfg["max_degree"], wcfg["box"]
    ag = agreement(ictx, deg, box, samples=10, seed=ctx.cfg["seed"])
    recs.append(record("whittaker-vs-ad-invariance", ag["disagreements"] == 0,
                       {"max_degree": deg, "box": box, "tested": ag["tested"],
                        "invariant_cases": ag["invariant_cases"],
                        "disagreements": ag["disagreements"]}))
    we = w_elements(ictx, deg, box)
    cl = closure_check(ictx, we["invariants"])
    recs.append(record("w-elements:closure", not cl["failures"], cl))
    triv = finite_module(S, "trivial")
    counit = build_character(S, [QV(0)] * len(R.gammas))
    wh = wh_of_module(triv, counit)
    recs.append(record("wh:trivial-module-counit", len(wh) == triv.dim, {"dim": len(wh)}))
    data = {
        "convention": chosen,
        "ordering": [list(b) for b in S.ordering],
        "character": chi.dump(),
        "k": [str(x) for x in kv],
        "proxy": PROXY_CAVEAT,
        "invariants": {"max_degree": deg, "box": box, "candidates": we["candidates"],
                       "dimension": we["dimension"], "degrees": we["degrees"],
                       "basis": [str(x) for x in we["invariants"]]},
    }
    return data, recs


# -- slice -----------------------------------------------------------------------------------
def cmd_slice(ctx):
    rs = ctx.rs
    recs = []
    if rs.kind != "A":
        return {}, [record("slice", True, {"reason": "group-level audit is type A only"},
                           status=INCONCLUSIVE)]
    n = rs.rank + 1
    rep = weyl_representative(2, (1,), 1)
    recs.append(record("weyl-representative:SL2", rep.dump() == [["0", "-1"], ["1", "0"]],
                       {"matrix": rep.dump()}))
    refl = all(induces_reflection(n, b, weyl_representative(n, b, 1)) for b in rs.positive)
    recs.append(record("weyl-representative:reflections", refl))
    R = ctx.R
    kv = ctx.k_values()
    try:
        audit = slice_audit(R, kv, samples=ctx.cfg["samples"]["injectivity"], seed=ctx.cfg["seed"])
    except HypothesisError as exc:
        return {}, recs + [record("slice:audit", True, {"reason": str(exc)}, status=INCONCLUSIVE)]
    recs.append(record("slice:induces-s", audit["induces_s"]))
    recs.append(record("slice:ledger", audit["balanced"], audit["ledger"]))
    recs.append(record("slice:injectivity", audit["spot_check"]["ok"], audit["spot_check"]))
    u = u_element(n, R.gammas, kv)
    audit["u"] = u.dump()
    return audit, recs


COMMANDS = {
    "root-system": cmd_root_system,
    "realization": cmd_realization,
    "algebra-check": cmd_algebra_check,
    "rmatrix-check": cmd_rmatrix_check,
    "wq": cmd_wq,
    "slice": cmd_slice,
}


def run(command, cfg, timings=None):
    """Run one command (or all) and assemble the report sections."""
    ctx = Context(cfg)
    timings = {} if timings is None else timings
    names = list(COMMANDS) if command == "all" else [command]
    sections = {}
    checks = []
    for name in names:
        data, recs = _timed(COMMANDS[name], ctx, timings, name)
        sections[name] = data
        checks += [dict(r, name=f"{name}/{r['name']}") for r in recs]
    summary = {s: sum(1 for r in checks if r["status"] == s) for s in (PASS, FAIL, INCONCLUSIVE)}
    return {"command": command, "results": sections, "checks": checks, "summary": summary}

