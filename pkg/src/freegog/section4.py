"""The rank-four worked example: phi, its square, the three-vertex graph of
groups realising it, Dehn twists on that graph and the McCool data.

Everything is parametrised by a word ``g`` in ``F(a,b)`` (default ``a*b``);
``gamma`` is its copy in ``F(alpha,beta)``.  :func:`run_section4` executes
every check and returns a :class:`~freegog.report.Report`.
"""
from __future__ import annotations

import fnmatch
import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from . import kernels
from .automorphisms import (FreeAut, compose, conjugate_aut, images_inner_witness,
                            inner, is_inner, mccool_membership, outer_commutes,
                            outer_equal)
from .folding import fold, subgroup_membership
from .gogaut import (DehnTwistData, GoGAut, compose_gog, induced_aut,
                     is_root_of_dehn_twist, mu, twist_aut, twist_gogaut,
                     twist_kernel_rank, twistor_exponents, validate,
                     vertex_return_map)
from .graph import Marking, free_basis, random_loop, translation_length
from .report import CheckResult, Report, timed
from .scenario import Scenario, parse_scenario, validation_errors
from .treeball import build_tree_ball
from .words import Alphabet, Word, is_proper_power, random_word

__all__ = ["Section4", "build", "scenario_text", "run_section4", "verify_fixed_claims",
           "ANCHORS", "DISPLAYED", "FIGURE2_TEXT", "check_names", "d_table",
           "dphi_table", "phi_for", "phi_squared_table"]

DEFAULT_G = "a*b"
GRID = tuple(range(-3, 4))
SAMPLE_LOOPS = 200
LOOP_EDGES = 12
BALL_RADIUS = 6
FIX_SEARCH_LENGTH = 6

ANCHORS = {
    "phi": "phi: a -> alpha, b -> beta, alpha -> a^g, beta -> b^g",
    "phi2": "phi^2: a -> a^g, b -> b^g, alpha -> alpha^gamma, beta -> beta^gamma",
    "fix_ab": "Fix phi^2 Ad(g^-1) = <a,b>",
    "fix_g": "Fix phi^2 = <g,gamma>",
    "fix_alpha": "Fix phi^2 Ad(gamma^-1) = <alpha,beta>",
    "graph": "G_u = <a,b>, G_v = <g,gamma>, G_w = <alpha,beta>, edge groups <g>, <gamma>; pi_1 = G_u * G_w",
    "R": "R_u(a) = alpha, R_u(b) = beta; R_v(g) = gamma, R_v(gamma) = g; R_w(alpha) = a, R_w(beta) = b",
    "R2": "R^2 is a Dehn twist",
    "mc_u": "MC(G_u; <g>; R^2_u) = MC(G_u; <g>; 1)",
    "mc_v": "MC(G_v; {<g>, <gamma>}; R_v) = 1",
    "mc_w": "MC(G_w; <gamma>; R^2_w) = MC(G_w; <gamma>; 1)",
    "graph2": "M: <a,b,t^2> --<g,t^2>-- <g,gamma,t>",
    "onto": "C_0(Phi) -> MC(G_u; <g>; R^2_u) x MC(G_v; {<g>, <gamma>}; R_v) = MC(G_u; <g>; 1)",
    "psi": "Psi = psi_u * psi_w, psi_w = I psi_u I^-1, commutes with Phi",
    "psi_mixed": "psi_u, psi'_w not I-conjugate: Psi commutes with Phi^2 but not Phi",
    "D": "D: a -> a^(g^r), b -> b^(g^r), alpha -> alpha^(gamma^s), beta -> beta^(gamma^s)",
    "rank2": "D_(r,s) span a free abelian subgroup of rank 2",
    "DphiD": "D phi D^-1: a -> alpha^(gamma^(r-s)), b -> beta^(gamma^(r-s)), "
             "alpha -> a^(g^(s-r+1)), beta -> b^(g^(s-r+1))",
    "ses1": "1 -> Z -> C_0(Phi) -> MC(G_u; {<g>}; 1) -> 1",
    "ses2": "1 -> Z^2 -> C_0(Phi^2) -> MC(G_u; {<g>}; 1) x MC(G_w; {<gamma>}; 1) -> 1",
    "index2": "C(Phi) = <C_0(Phi), Phi>, C_0(Phi) of index 2",
    "length": "||x Phi||_T = ||x||_T",
}

# anchors of the displayed formulas; the corpus must cover all of them
DISPLAYED = ("phi", "phi2", "fix_ab", "fix_g", "fix_alpha", "mc_u", "mc_v", "mc_w",
             "onto", "D", "DphiD", "ses1", "ses2")

FIGURE2_TEXT = """\
# graph of groups for the mapping torus F x|_phi Z; vertex groups are not free
nonfree vertex u : <a,b,t^2>
nonfree vertex v : <g,gamma,t>
nonfree edge e : u -> v ; <g,t^2>
base v
check twist-rank : twist-rank 1
"""

F_NAMES = ("a", "b", "alpha", "beta")


def _parse_g(g) -> Word:
    U = Alphabet(["a", "b"])
    if isinstance(g, Word):
        g = str(g)
    w = U.word(g)
    if not w.letters:
        raise ValueError("g must be nontrivial")
    if is_proper_power(w) is not None:
        raise ValueError(f"g = {w} is a proper power")
    return w


def phi_for(g: Word, F: Optional[Alphabet] = None) -> FreeAut:
    """The automorphism a -> alpha, b -> beta, alpha -> a^g, beta -> b^g of F(a,b,alpha,beta)."""
    F = F or Alphabet(F_NAMES)
    gF = Word(F, g.letters, reduced=True)
    cF = Word(F, [x + 2 if x > 0 else x - 2 for x in g.letters], reduced=True)
    a, b, al, be = F.gens
    return FreeAut(F, [al, be, a.conjugate(gF), b.conjugate(gF)],
                   [al.conjugate(cF.inverse()), be.conjugate(cF.inverse()), a, b])


def phi_squared_table(g: Word, F: Optional[Alphabet] = None) -> list:
    F = F or Alphabet(F_NAMES)
    gF = Word(F, g.letters, reduced=True)
    cF = Word(F, [x + 2 if x > 0 else x - 2 for x in g.letters], reduced=True)
    a, b, al, be = F.gens
    return [a.conjugate(gF), b.conjugate(gF), al.conjugate(cF), be.conjugate(cF)]


@dataclass
class Section4:
    g_text: str
    gU: Word            # g in G_u = F(a,b)
    gW: Word            # gamma in G_w = F(alpha,beta)
    F: Alphabet
    g: Word             # g in F
    gamma: Word         # gamma in F
    scenario: Scenario
    marking: Marking
    phi: FreeAut
    phi2: FreeAut
    R: GoGAut

    @property
    def gog(self):
        return self.scenario.gog

    def twist(self, r: int, s: int) -> DehnTwistData:
        return DehnTwistData(self.gog, {"e_u": r, "e_w": s})

    def I(self, w: Word) -> Word:
        """Rename a -> alpha, b -> beta."""
        return Word(self.gog.alphabets["w"], w.letters, reduced=True)


def _psi_u_text(gU: Word) -> tuple:
    """A representative fixing g, as (images, inverse images) over F(a,b)."""
    s = str(gU)
    if s == "a*b":
        return {"a": "b^-1", "b": "b*a*b"}, {"a": "a*b*a", "b": "a^-1"}
    if s == "a":
        return {"a": "a", "b": "b*a"}, {"a": "a", "b": "b*a^-1"}
    # fallback: conjugation by g, which fixes g but is inner on G_u
    U = gU.alphabet
    f = inner(gU)
    return ({n: str(w) for n, w in zip(U.names, f.forward)},
            {n: str(w) for n, w in zip(U.names, f.backward)})


def _rename(images: dict) -> dict:
    ren = {"a": "alpha", "b": "beta"}
    out = {}
    for k, v in images.items():
        toks = []
        for t in v.split("*"):
            base, _, exp = t.partition("^")
            toks.append(ren[base] + (f"^{exp}" if exp else ""))
        out[ren[k]] = "*".join(toks)
    return out


def _iso_line(kind: str, v: str, images: dict) -> str:
    return f"  {kind} {v}: " + ", ".join(f"{k} -> {w}" for k, w in images.items())


def scenario_text(g=DEFAULT_G) -> str:
    gU = _parse_g(g)
    F = Alphabet(F_NAMES)
    phi = phi_for(gU, F)
    table = phi_squared_table(gU, F)
    gW = Word(Alphabet(["alpha", "beta"]), gU.letters, reduced=True)
    pu, pu_inv = _psi_u_text(gU)
    pw, pw_inv = _rename(pu), _rename(pu_inv)
    inv2 = compose(phi, phi).backward
    lines = [
        f"# three-vertex graph of groups realising phi, g = {gU}",
        "vertex u : a,b",
        "vertex v : g,gamma",
        "vertex w : alpha,beta",
        f"edge e_u : u -> v ; z -> {gU} | g",
        f"edge e_w : w -> v ; z -> {gW} | gamma",
        "base v",
        "grid r = -3..3",
        "grid s = -3..3",
        "",
        "aut phi",
        *[f"  {n} -> {w}" for n, w in zip(F.names, phi.forward)],
        "  inverse:",
        *[f"  {n} -> {w}" for n, w in zip(F.names, phi.backward)],
        "end",
        "",
        "aut phi2",
        *[f"  {n} -> {w}" for n, w in zip(F.names, table)],
        "  inverse:",
        *[f"  {n} -> {w}" for n, w in zip(F.names, inv2)],
        "end",
        "",
        "# the nontrivial delta sits on e_w",
        "gogaut R",
        "  map u->w",
        "  map w->u",
        "  map e_u->e_w",
        "  map e_w->e_u",
        "  iso u: a -> alpha, b -> beta",
        "  iso v: g -> gamma, gamma -> g",
        "  iso w: alpha -> a, beta -> b",
        "  delta e_w = g",
        "end",
        "",
        "# delta on the reversed edge instead; valid, but induces alpha -> a^(g^-1)",
        "gogaut R_reversed",
        "  map u->w",
        "  map w->u",
        "  map e_u->e_w",
        "  map e_w->e_u",
        "  iso u: a -> alpha, b -> beta",
        "  iso v: g -> gamma, gamma -> g",
        "  iso w: alpha -> a, beta -> b",
        f"  delta ~e_w = {gU}",
        "end",
        "",
        "# R with a delta that does not centralise the edge group",
        "gogaut R_bad",
        "  map u->w",
        "  map w->u",
        "  map e_u->e_w",
        "  map e_w->e_u",
        "  iso u: a -> alpha, b -> beta",
        "  iso v: g -> gamma, gamma -> g",
        "  iso w: alpha -> a, beta -> b",
        "  delta e_w = gamma",
        "end",
        "",
        "# R composed with itself, deltas read off from the edge images",
        "gogaut R2",
        "  delta e_u = g",
        "  delta e_w = gamma",
        "end",
        "",
        "gogaut D11",
        "  twist e_u = 1",
        "  twist e_w = 1",
        "end",
        "",
        "gogaut D22",
        "  twist e_u = 2",
        "  twist e_w = 2",
        "end",
        "",
        "gogaut Psi",
        _iso_line("iso", "u", pu),
        _iso_line("inverse", "u", pu_inv),
        _iso_line("iso", "w", pw),
        _iso_line("inverse", "w", pw_inv),
        "end",
        "",
        "gogaut Psi_mixed",
        _iso_line("iso", "u", pu),
        _iso_line("inverse", "u", pu_inv),
        "end",
        "",
        "check R-valid : valid R",
        "check R-reversed-valid : valid R_reversed",
        "check R-bad-invalid : invalid R_bad",
        "check R-induces-phi : induces R phi",
        "check R-reversed-not-phi : induces-outer R_reversed phi expect fail",
        "check R2-induces-phi2 : induces-outer R2 phi2",
        "check R-root : root R D11 2",
        "check R-not-root-of-D22 : root R D22 2 expect fail",
        "check twist-rank : twist-rank 2",
        "check D11-mu : mu-trivial D11",
        "check R2-mu : mu-trivial R2",
        "check Psi-mu : mu-trivial Psi" + (" expect fail" if str(gU) in ("a*b", "a") else ""),
        "check phi-not-inner : inner phi expect fail",
        "check R-lengths : length-invariant R",
        "check D11-lengths : length-invariant D11",
    ]
    return "\n".join(lines) + "\n"


def build(g=DEFAULT_G) -> Section4:
    gU = _parse_g(g)
    sc = parse_scenario(scenario_text(gU))
    errs = validation_errors(sc)
    if errs:
        raise ValueError("; ".join(errs))
    marking = free_basis(sc.gog, "v")
    F = marking.alphabet
    if F.names != F_NAMES:
        raise ValueError(f"unexpected free basis {F}")
    phi = sc.auts["phi"]
    return Section4(
        g_text=str(gU), gU=gU, gW=Word(sc.gog.alphabets["w"], gU.letters, reduced=True), F=F,
        g=Word(F, gU.letters, reduced=True),
        gamma=Word(F, [x + 2 if x > 0 else x - 2 for x in gU.letters], reduced=True),
        scenario=sc, marking=marking, phi=phi, phi2=sc.auts["phi2"], R=sc.gogauts["R"])


def d_table(s4: Section4, r: int, s: int) -> FreeAut:
    a, b, al, be = s4.F.gens
    gr, cs = s4.g ** r, s4.gamma ** s
    return FreeAut(s4.F, [a.conjugate(gr), b.conjugate(gr), al.conjugate(cs), be.conjugate(cs)],
                   [a.conjugate(gr.inverse()), b.conjugate(gr.inverse()),
                    al.conjugate(cs.inverse()), be.conjugate(cs.inverse())])


def dphi_table(s4: Section4, r: int, s: int) -> list:
    a, b, al, be = s4.F.gens
    c, h = s4.gamma ** (r - s), s4.g ** (s - r + 1)
    return [al.conjugate(c), be.conjugate(c), a.conjugate(h), b.conjugate(h)]


def _reduced_words(rank: int, max_len: int):
    """All reduced letter tuples of length 1..max_len."""
    letters = [i for k in range(1, rank + 1) for i in (k, -k)]
    stack = [()]
    while stack:
        t = stack.pop()
        if t:
            yield t
        if len(t) < max_len:
            for x in letters:
                if not t or t[-1] != -x:
                    stack.append(t + (x,))


def _fixed_words(f: FreeAut, max_len: int) -> list:
    pos, neg = f._pos, f._neg
    return [t for t in _reduced_words(f.domain.rank, max_len)
            if kernels.substitute(t, pos, neg) == t]


def verify_fixed_claims(s4: Section4, max_len: int = FIX_SEARCH_LENGTH) -> list:
    """Generator-fixing and bounded membership checks for the three fixed subgroups."""
    F = s4.F
    a, b, al, be = F.gens
    claims = [
        ("fix-a-b", "fix_ab", compose(s4.phi2, inner(s4.g.inverse())), [a, b]),
        ("fix-g-gamma", "fix_g", s4.phi2, [s4.g, s4.gamma]),
        ("fix-alpha-beta", "fix_alpha", compose(s4.phi2, inner(s4.gamma.inverse())), [al, be]),
    ]
    out = []
    for name, key, f, gens in claims:
        def check(f=f, gens=gens):
            bad = [str(x) for x in gens if f(x) != x]
            if bad:
                return False, "claimed generators moved: " + ", ".join(bad)
            graph = fold(gens)
            fixed = _fixed_words(f, max_len)
            outside = [Word(F, t, reduced=True) for t in fixed
                       if not subgroup_membership(gens, Word(F, t, reduced=True), graph)]
            w = (f"generators fixed; {len(fixed)} fixed words of length <= {max_len}, "
                 f"{len(outside)} outside <{', '.join(map(str, gens))}>")
            if outside:
                w += "; first: " + ", ".join(map(str, outside[:5]))
            return not outside, w
        out.append(timed(name, ANCHORS[key], check))
        out.append(CheckResult(name + "-maximality", ANCHORS[key], "unverified",
                               "maximality of the fixed subgroup: not verified (out of scope)", 0.0))
    return out


def _sample_gs(rng: random.Random, count: int, exclude: str) -> list:
    U = Alphabet(["a", "b"])
    out = []
    while len(out) < count:
        w = random_word(U, rng.randint(1, 6), rng)
        if str(w) == exclude or str(w) in map(str, out) or is_proper_power(w) is not None:
            continue
        out.append(w)
    return out


def _loops(s4: Section4, seed: int, count: int = SAMPLE_LOOPS) -> list:
    rng = random.Random(seed)
    return [random_loop(s4.gog, "v", LOOP_EDGES, 3, rng) for _ in range(count)]


def _checks(s4: Section4, seed: int) -> dict:
    """name -> (anchor key, thunk returning (status, witness))."""
    gog, F, m = s4.gog, s4.F, s4.marking
    sc = s4.scenario
    R = s4.R
    A = {}

    def phi2_table():
        got = compose(s4.phi, s4.phi)
        want = phi_squared_table(s4.gU, F)
        return list(got.forward) == want, "compose(phi, phi) = " + repr(got)
    A["phi-squared-table"] = ("phi2", phi2_table)

    def phi2_random():
        rng = random.Random(seed)
        rows = []
        ok = True
        for g in _sample_gs(rng, 5, s4.g_text):
            p = phi_for(g, F)
            hit = list(compose(p, p).forward) == phi_squared_table(g, F)
            ok &= hit
            rows.append(f"g = {g}: {'exact' if hit else 'MISMATCH'}")
        return ok, "; ".join(rows)
    A["phi-squared-random-g"] = ("phi2", phi2_random)

    def phi_def():
        p = s4.phi
        return (p == phi_for(s4.gU, F) and not is_inner(p)), "inverse verified: " + ", ".join(
            f"{n} -> {w}" for n, w in zip(F.names, p.backward))
    A["phi-definition"] = ("phi", phi_def)

    def dphi():
        bad = []
        for r, s in itertools.product(GRID, GRID):
            D = d_table(s4, r, s)
            got = conjugate_aut(s4.phi, D.inverse())   # D phi D^-1, D applied first
            if list(got.forward) != dphi_table(s4, r, s):
                bad.append((r, s))
        return not bad, f"{len(GRID) ** 2} (r,s) pairs exact" if not bad else f"mismatch at {bad}"
    A["conjugation-table"] = ("DphiD", dphi)

    def dtable():
        bad = []
        for r, s in itertools.product(GRID, GRID):
            if twist_aut(s4.twist(r, s), "v", m) != d_table(s4, r, s):
                bad.append((r, s))
        return not bad, "twist_aut(e_u: r, e_w: s) equals the table on the grid" if not bad else f"mismatch at {bad}"
    A["twist-table"] = ("D", dtable)

    def commute_phi():
        bad, diag = [], 0
        for r, s in itertools.product(GRID, GRID):
            c = outer_commutes(d_table(s4, r, s), s4.phi)
            diag += c
            if c != (r == s):
                bad.append((r, s))
        return not bad, f"commuting pairs: {diag} (the diagonal r = s)" if not bad else f"wrong at {bad}"
    A["commute-phi"] = ("ses1", commute_phi)

    def commute_phi2():
        bad = [(r, s) for r, s in itertools.product(GRID, GRID)
               if not outer_commutes(d_table(s4, r, s), s4.phi2)]
        return not bad, f"all {len(GRID) ** 2} twists commute with phi^2" if not bad else f"fail at {bad}"
    A["commute-phi-squared"] = ("ses2", commute_phi2)

    def rank():
        tr = twist_kernel_rank(gog, "v")
        spot = not outer_equal(d_table(s4, 1, 0), d_table(s4, 0, 1))
        return (tr.rank == 2 and tr.certified and spot,
                f"rank {tr.rank}; {tr.pairs_checked} pairs over {{-2..2}}^2 pairwise outer-distinct; "
                f"D_(1,0) != D_(0,1): {spot}")
    A["twist-kernel-rank"] = ("rank2", rank)

    def basis():
        sec = {n: str(p) for n, p in m.section.items()}
        ok = F.names == F_NAMES and F.rank == gog.alphabets["u"].rank + gog.alphabets["w"].rank
        return ok, "; ".join(f"{n} = {p}" for n, p in sec.items())
    A["graph-free-basis"] = ("graph", basis)

    def r_valid():
        diag = validate(R)
        ident = validate(GoGAut.identity(gog))
        bad = validate(sc.gogauts["R_bad"])
        ok = not diag and not ident and any("e_w" in d for d in bad)
        return ok, f"R valid; identity valid; R_bad: {bad[0] if bad else 'accepted'}"
    A["R-valid"] = ("R", r_valid)

    def r_induces():
        f = induced_aut(R, "v", m)
        return f == s4.phi, "induced_aut(R, v) = " + repr(f)
    A["R-induces-phi"] = ("R", r_induces)

    def r_reversed():
        Rr = sc.gogauts["R_reversed"]
        f = induced_aut(Rr, "v", m)
        a, b, al, be = F.gens
        want = [al, be, a.conjugate(s4.g.inverse()), b.conjugate(s4.g.inverse())]
        ok = not validate(Rr) and list(f.forward) == want and not outer_equal(f, s4.phi)
        return ok, "delta(~e_w) = g instead: valid, induces " + repr(f) + ", not outer-equal to phi"
    A["R-reversed-placement"] = ("R", r_reversed)

    def r2():
        R2 = compose_gog(R, R)
        d = twistor_exponents(R2)
        deltas = ", ".join(f"delta({e.name}) = {R2.deltas[e.index]}" for e in gog.edges)
        ok = (d is not None and d.vector() == (1, 1)
              and R2.deltas == sc.gogauts["R2"].deltas
              and is_root_of_dehn_twist(R, sc.twists["D11"], 2, "v", m)
              and not is_root_of_dehn_twist(R, sc.twists["D22"], 2, "v", m))
        return ok, f"R^2: {deltas}; twistors {d}; root of D(1,1) with k = 2, not of D(2,2)"
    A["R-squared-twist"] = ("R2", r2)

    def r2_phi2():
        f = induced_aut(compose_gog(R, R), "v", m)
        return f == s4.phi2, "induced_aut(R^2, v) = " + repr(f)
    A["R-squared-induces-phi-squared"] = ("phi2", r2_phi2)

    def functorial():
        objs = {k: sc.gogauts[k] for k in ("R", "R2", "D11", "Psi", "Psi_mixed", "R_reversed")}
        bad = []
        for (x, a), (y, b) in itertools.product(objs.items(), repeat=2):
            lhs = induced_aut(compose_gog(a, b), "v", m)
            rhs = compose(induced_aut(a, "v", m), induced_aut(b, "v", m))
            if not outer_equal(lhs, rhs):
                bad.append(f"{x}.{y}")
        return not bad, f"{len(objs) ** 2} pairs" if not bad else "fails for " + ", ".join(bad)
    A["induced-functorial"] = ("R", functorial)

    def mu_twists():
        bad = []
        for r, s in itertools.product(GRID, GRID):
            ents = mu(twist_gogaut(s4.twist(r, s)))
            if not all(e.trivial and e.mccool.member for e in ents):
                bad.append((r, s))
        r2 = mu(compose_gog(R, R))
        ok = not bad and all(e.trivial for e in r2)
        return ok, f"mu trivial on all {len(GRID) ** 2} grid twists and on R^2"
    A["mu-twists-trivial"] = ("ses2", mu_twists)

    def mc_u():
        t, f = vertex_return_map(R, "u")
        tw, fw = vertex_return_map(R, "w")
        psi = sc.gogauts["Psi"].vertex_isos["u"]
        same = (mccool_membership(psi, [s4.gU], f).member
                == mccool_membership(psi, [s4.gU]).member)
        ok = t == 2 and is_inner(f) and same
        return ok, f"t(u) = {t}, R^{t}_u = {f!r} inner; equivariant and plain membership agree on psi_u"
    A["mccool-u"] = ("mc_u", mc_u)

    def mc_w():
        t, f = vertex_return_map(R, "w")
        psi = sc.gogauts["Psi"].vertex_isos["w"]
        same = (mccool_membership(psi, [s4.gW], f).member
                == mccool_membership(psi, [s4.gW]).member)
        return t == 2 and is_inner(f) and same, f"t(w) = {t}, R^{t}_w = {f!r} inner"
    A["mccool-w"] = ("mc_w", mc_w)

    def mc_v():
        V = gog.alphabets["v"]
        x, y = V.gens
        t, Rv = vertex_return_map(R, "v")
        words = [V.identity] + [Word(V, tt, reduced=True) for tt in _reduced_words(2, 3)]
        pairs = surj = 0
        for h1, h2 in itertools.product(words, repeat=2):
            imgs = [x.conjugate(h1), y.conjugate(h2)]
            graph = fold(imgs)
            onto = bool(subgroup_membership(imgs, x, graph)) and bool(subgroup_membership(imgs, y, graph))
            inn = images_inner_witness(V, imgs) is not None
            pairs += 1
            surj += onto
            if onto != inn:
                return False, f"g -> {imgs[0]}, gamma -> {imgs[1]} is onto but not inner"
        return t == 1, (f"{pairs} maps g -> g^h1, gamma -> gamma^h2 with |h_i| <= 3: "
                        f"{surj} are automorphisms, all inner; R_v = {Rv!r}")
    A["mccool-v"] = ("mc_v", mc_v)

    def mu_psi():
        Psi = sc.gogauts["Psi"]
        ents = {e.vertex: e for e in mu(Psi, equivariant_wrt=R)}
        fams = {v: [str(w) for w in ents[v].family] for v in ents}
        ok = (all(e.mccool.member for e in ents.values())
              and ents["u"].outer.representative == Psi.vertex_isos["u"]
              and ents["v"].trivial
              and ents["w"].outer.representative == Psi.vertex_isos["w"]
              and fams == {"u": [str(s4.gU)], "v": ["g", "gamma"], "w": [str(s4.gW)]})
        nontriv = not ents["u"].trivial
        return ok, "; ".join(e.line() for e in ents.values()) + f"; [psi_u] nontrivial: {nontriv}"
    A["mu-psi"] = ("onto", mu_psi)

    def psi_commutes():
        f = induced_aut(sc.gogauts["Psi"], "v", m)
        return outer_commutes(f, s4.phi), "induced Psi = " + repr(f)
    A["psi-commutes-phi"] = ("psi", psi_commutes)

    def psi_mixed():
        f = induced_aut(sc.gogauts["Psi_mixed"], "v", m)
        c2, c1 = outer_commutes(f, s4.phi2), outer_commutes(f, s4.phi)
        return c2 and not c1, f"(psi_u, 1): commutes with phi^2: {c2}, with phi: {c1}"
    A["psi-mixed-pair"] = ("psi_mixed", psi_mixed)

    def edge_swap():
        swaps = R.edge_map[gog.edge("e_u").index] == gog.edge("e_w").index
        try:
            mu(R)
            refused = False
        except ValueError:
            refused = True
        c0 = [induced_aut(sc.gogauts[k], "v", m) for k in ("D11", "Psi")]
        ok = swaps and refused and all(outer_commutes(f, s4.phi) for f in c0)
        return ok, "R swaps e_u and e_w, so R lies outside the graph-map-trivial layer; D(1,1) and Psi commute with phi"
    A["edge-swap"] = ("index2", edge_swap)

    loops_cache = {}

    def loops():
        if "l" not in loops_cache:
            loops_cache["l"] = _loops(s4, seed)
        return loops_cache["l"]

    def lengths():
        auts = [R, compose_gog(R, R), sc.gogauts["R_reversed"], sc.gogauts["Psi"]] + [
            twist_gogaut(s4.twist(r, s)) for r, s in itertools.product(GRID, GRID)]
        ls = loops()
        base_len = [translation_length(p) for p in ls]
        for a in auts:
            for p, n in zip(ls, base_len):
                if translation_length(a(p)) != n:
                    return False, f"length changes on {p} under {a!r}"
        hist = {}
        for n in base_len:
            hist[n] = hist.get(n, 0) + 1
        return True, (f"{len(auts)} automorphisms x {len(ls)} loops of edge-length <= {LOOP_EDGES}; "
                      f"length histogram {dict(sorted(hist.items()))}")
    A["length-invariance"] = ("length", lengths)

    def oracle():
        ball = build_tree_ball(gog, "v", BALL_RADIUS)
        if not ball.is_tree:
            return False, "; ".join(ball.defects[:3])
        rng = random.Random(seed)
        for _ in range(200):
            i, j = rng.randrange(len(ball)), rng.randrange(len(ball))
            if ball.distance(ball.vertices[i], ball.vertices[j]) != ball.tree_distance(i, j):
                return False, f"metric mismatch between ball vertices {i} and {j}"
        fit = 0
        for p in loops():
            if ball.fits(p):
                fit += 1
                got, want = ball.min_displacement(p), translation_length(p)
                if got != want:
                    return False, f"oracle {got} vs combinatorial {want} on {p}"
        return fit > 0, f"ball of {len(ball)} vertices (radius {BALL_RADIUS}); {fit} of {len(loops())} loops fit and agree"
    A["tree-ball-oracle"] = ("length", oracle)

    def fig2_parse():
        sc2 = parse_scenario(FIGURE2_TEXT)
        ok = sc2.nonfree is not None and len(sc2.nonfree.vertices) == 2 and len(sc2.nonfree.edges) == 1
        return ok, "parsed: vertices " + ", ".join(
            f"{k} = {v}" for k, v in sc2.nonfree.vertices.items())
    A["figure2-parse"] = ("graph2", fig2_parse)

    for what in ("mu", "twist-rank", "translation-length"):
        A[f"figure2-{what}"] = ("graph2", lambda: ("unsupported", "unsupported vertex group type"))

    A["index-two"] = ("index2", lambda: ("unverified", "index of C_0(Phi) in C(Phi) is not checked (group-theoretic claim)"))
    return A


def check_names(g=DEFAULT_G) -> tuple:
    s4 = build(g)
    names = list(_checks(s4, 0))
    for base in ("fix-a-b", "fix-g-gamma", "fix-alpha-beta"):
        names += [base, base + "-maximality"]
    return tuple(sorted(names))


def run_section4(g=DEFAULT_G, checks: Optional[Sequence[str]] = None, seed: int = 0) -> Report:
    """Run the built-in corpus.  ``checks`` holds glob patterns; ``None`` runs all."""
    s4 = build(g)
    report = Report(f"section4 (g = {s4.g_text}, seed {seed})")
    table = _checks(s4, seed)

    def wanted(name):
        return checks is None or any(fnmatch.fnmatchcase(name, pat) for pat in checks)

    for name, (key, fn) in table.items():
        if wanted(name):
            report.results.append(timed(name, ANCHORS[key], fn))
    if any(wanted(n) for n in ("fix-a-b", "fix-g-gamma", "fix-alpha-beta")):
        report.extend(r for r in verify_fixed_claims(s4) if wanted(r.name.replace("-maximality", "")))
    return report
