"""
Lab campaigns: random and exhaustive checks of the adhesivity lemmas.

Random campaigns run independent trials, each seeded from (campaign,
seed, trial index), optionally on a process pool; outcomes are merged by
trial index so a report only depends on the seed and the bounds.
Exhaustive campaigns enumerate every instance up to the bounds.
"""

import itertools
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from ..core import finset
from ..core.egraph import is_e_hypergraph
from ..core.eqhyp import (EqHypergraph, compose_eq, eq_morphism, find_eq_morphisms, is_mono_eq,
                          is_regular_mono_eq, pullback_eqhyp, pullback_mediator_eq, pushout_eqhyp,
                          pushout_mediator_eq, subobject)
from ..core.finset import FinFn, FinSet
from ..core.hypergraph import Hypergraph, HypMorphism, is_mono_hyp
from ..core.termgraph import Labelling, Signature, find_labelled_morphisms, is_regular_mono_tg
from ..utils.config import get_config
from ..utils.logging import get_logger, log_step
from ..utils.serialization import CampaignReportDoc, eq_to_doc, finfn_to_doc
from . import generators as gen
from .categories import get_category
from .fixtures import counterexample_cube
from .oracles import (is_mono_by_kernel_pair_eq, is_mono_by_kernel_pair_hyp,
                     is_regular_by_cokernel_pair_eq, is_regular_by_cokernel_pair_tg)
from .squares import Cube, Square, certify_pullback, certify_pushout, check_vk_cube

logger = get_logger('lab')

PASS, FAIL, SKIP = 'pass', 'fail', 'skip'


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    status: str
    witness: Optional[Dict[str, Any]] = None
    tags: Tuple[str, ...] = ()


@dataclass
class CampaignReport:
    """Counts, bounds and witnesses of one campaign run."""

    campaign: str
    seed: int
    trials: int
    bounds: Dict[str, Any]
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, outcome: TrialOutcome) -> None:
        if outcome.status == PASS:
            self.passed += 1
        elif outcome.status == FAIL:
            self.failed += 1
            if outcome.witness is not None:
                self.failures.append(outcome.witness)
        else:
            self.skipped += 1
        for tag in outcome.tags:
            self.details[tag] = self.details.get(tag, 0) + 1

    def to_doc(self) -> CampaignReportDoc:
        return CampaignReportDoc(campaign=self.campaign, seed=self.seed, trials=self.trials,
                                 bounds=self.bounds, passed=self.passed, failed=self.failed,
                                 skipped=self.skipped, failures=self.failures,
                                 details=dict(sorted(self.details.items())))


def run_trials(trial: Callable[[int], TrialOutcome], trials: int,
               workers: Optional[int] = None) -> List[TrialOutcome]:
    """
    Run ``trial(i)`` for every index, on a process pool when workers > 1.

    The trial callable must be picklable (a module-level function or a
    partial of one). Results come back sorted by index.
    """
    workers = workers if workers is not None else get_config().workers
    if workers <= 1 or trials <= 1:
        return [trial(i) for i in range(trials)]
    outcomes: List[TrialOutcome] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(trial, i) for i in range(trials)]
        for future in as_completed(futures):
            outcomes.append(future.result())
    return sorted(outcomes, key=lambda o: o.index)


def _campaign(name: str, trial: Callable[[int], TrialOutcome], trials: int, seed: int,
              bounds: Dict[str, Any], workers: Optional[int]) -> CampaignReport:
    log_step(f"{name}: {trials} trials, seed {seed}, bounds {bounds}")
    report = CampaignReport(name, seed, trials, bounds)
    for outcome in run_trials(trial, trials, workers):
        report.record(outcome)
    logger.info(f"{name}: {report.passed} passed, {report.failed} failed, {report.skipped} skipped")
    return report


def _seed(seed: Optional[int]) -> int:
    return get_config().seed if seed is None else seed


# -- cubes --------------------------------------------------------------------------

CORNERS = (('A', 'f', 'dom'), ('B', 'f', 'cod'), ('C', 'm', 'cod'), ('D', 'g', 'cod'),
           ('A2', 'f2', 'dom'), ('B2', 'f2', 'cod'), ('C2', 'm2', 'cod'), ('D2', 'g2', 'cod'))


def cube_objects(cube: Cube) -> Dict[str, EqHypergraph]:
    return {name: getattr(getattr(cube, arrow), end) for name, arrow, end in CORNERS}


def cube_size(cube: Cube) -> Dict[str, Tuple[int, int, int]]:
    """Per corner: (nodes, edges, classes)."""
    return {name: (len(X.nodes), len(X.edges), len(X.classes)) for name, X in cube_objects(cube).items()}


def no_larger(small: Dict[str, Tuple[int, ...]], big: Dict[str, Tuple[int, ...]]) -> bool:
    return all(a <= b for key in big for a, b in zip(small[key], big[key]))


def cube_witness(cube: Cube, index: int, **extra) -> Dict[str, Any]:
    objects = {name: eq_to_doc(X).model_dump(exclude_none=True) for name, X in cube_objects(cube).items()}
    return {'trial': index, 'size': {k: list(v) for k, v in cube_size(cube).items()},
            'objects': objects, **extra}


def stability_cube(rng, max_size: int, relaxed: bool = False) -> Optional[Cube]:
    """
    A cube whose back, left, front and right faces are pullbacks by
    construction, over a bottom pushout along a Pb mono (a regular mono cut
    through a class when ``relaxed``). The vertical arrow into the bottom
    pushout is a random regular sub-object.
    """
    C = gen.random_eq(rng, max_size)
    m = gen.regular_subobject(rng, C, cut_class=True) if relaxed else gen.pb_subobject(rng, C)
    f = gen.random_morphism_from(rng, m.dom, max_size)
    po = pushout_eqhyp(f, m)
    g, n = po.leg1, po.leg2
    d = gen.regular_subobject(rng, po.apex, keep=0.7)
    pb_b, pb_c = pullback_eqhyp(g, d), pullback_eqhyp(n, d)
    b, g2 = pb_b.leg1, pb_b.leg2
    c, n2 = pb_c.leg1, pb_c.leg2
    pb_a = pullback_eqhyp(f, b)
    a, f2 = pb_a.leg1, pb_a.leg2
    m2 = pullback_mediator_eq(pb_c, compose_eq(m, a), compose_eq(g2, f2))
    if m2 is None:
        return None
    return Cube(f, m, g, n, f2, m2, g2, n2, a, b, c, d, get_category('eqhyp'))


def descent_cube(rng, max_size: int) -> Optional[Cube]:
    """
    A cube whose top face is a pushout by construction: restrict the
    bottom pushout's B and C to sub-objects agreeing over A, glue them, and
    map the result down.
    """
    C = gen.random_eq(rng, max_size)
    m = gen.pb_subobject(rng, C)
    f = gen.random_morphism_from(rng, m.dom, max_size)
    po = pushout_eqhyp(f, m)
    g, n = po.leg1, po.leg2
    b = gen.regular_subobject(rng, f.cod, keep=0.7)
    pb_a = pullback_eqhyp(f, b)
    a, f2 = pb_a.leg1, pb_a.leg2
    A2 = pb_a.apex

    in_image = set(m.h_V.images)
    nodes = {m.h_V(a.h_V(v)) for v in A2.nodes}
    nodes |= set(gen.random_subset(rng, [v for v in C.nodes if v not in in_image]))
    edges = {m.h_E(a.h_E(e)) for e in A2.edges}
    edge_image = set(m.h_E.images)
    edges |= set(gen.random_subset(rng, [e for e in C.edges if e not in edge_image
                                         and all(v in nodes for v in C.hyp.incident_nodes(e))]))
    c = subobject(C, sorted(nodes), sorted(edges))
    m2 = eq_morphism(A2, c.dom, {e: m.h_E(a.h_E(e)) for e in A2.edges},
                     {v: m.h_V(a.h_V(v)) for v in A2.nodes})
    top = pushout_eqhyp(f2, m2)
    d = pushout_mediator_eq(top, compose_eq(g, b), compose_eq(n, c))
    if d is None:
        return None
    return Cube(f, m, g, n, f2, m2, top.leg1, top.leg2, a, b, c, d, get_category('eqhyp'))


def minimize_cube(build: Callable[[Any, int], Optional[Cube]], failing: Callable[[Cube], bool],
                  original: Cube, max_size: int, campaign: str, seed: int, index: int,
                  attempts: int = 30) -> Cube:
    """
    Search smaller bounds for another failing cube that is no larger than
    ``original`` in any corner; the smallest one found (or the original)
    is returned.
    """
    best, best_size = original, cube_size(original)
    for size in range(1, max_size + 1):
        for k in range(attempts):
            cube = build(gen.trial_rng(f"{campaign}-min", seed, index, size, k), size)
            if cube is None or not failing(cube):
                continue
            size_k = cube_size(cube)
            if no_larger(size_k, best_size) and size_k != best_size:
                best, best_size = cube, size_k
        if best is not original:
            break
    return best


def _top_not_pushout(cube: Cube) -> bool:
    return not certify_pushout(cube.top())


def _stability_trial(seed: int, max_size: int, relaxed: bool, index: int) -> TrialOutcome:
    campaign = 'stability-regular' if relaxed else 'stability'
    build = partial(_build_stability, relaxed)
    cube = build(gen.trial_rng(campaign, seed, index, max_size), max_size)
    if cube is None:
        return TrialOutcome(index, SKIP)
    if not certify_pullback(cube.bottom()):
        return TrialOutcome(index, FAIL, cube_witness(cube, index, reason='bottom pushout is not a pullback'))
    if certify_pushout(cube.top()):
        return TrialOutcome(index, PASS)
    small = minimize_cube(build, _top_not_pushout, cube, max_size, campaign, seed, index)
    return TrialOutcome(index, FAIL, cube_witness(small, index, reason='top face is not a pushout'))


def _build_stability(relaxed: bool, rng, size: int) -> Optional[Cube]:
    return stability_cube(rng, size, relaxed)


def check_pb_stability(trials: Optional[int] = None, seed: Optional[int] = None,
                       max_size: Optional[int] = None, relaxed: bool = False,
                       workers: Optional[int] = None) -> CampaignReport:
    """
    Pullback-stability of pushouts along Pb monos: every generated cube's
    top face must certify as a pushout. With ``relaxed`` the bottom mono is
    only regular, and failures are expected.
    """
    config = get_config()
    trials = config.trials if trials is None else trials
    max_size = config.max_size if max_size is None else max_size
    seed = _seed(seed)
    trial = partial(_stability_trial, seed, max_size, relaxed)
    name = 'stability-regular' if relaxed else 'stability'
    return _campaign(name, trial, trials, seed, {'max_size': max_size, 'relaxed': relaxed}, workers)


def _vk_trial(seed: int, max_size: int, index: int) -> TrialOutcome:
    rng = gen.trial_rng('vk', seed, index, max_size)
    descent = index % 2 == 1
    cube = descent_cube(rng, max_size) if descent else stability_cube(rng, max_size)
    direction = 'pushout-to-pullbacks' if descent else 'pullbacks-to-pushout'
    if cube is None:
        return TrialOutcome(index, SKIP)
    verdict = check_vk_cube(cube, 'pb', 'regular')
    if not verdict.applicable:
        return TrialOutcome(index, SKIP, tags=('not_applicable',))
    if verdict.holds:
        return TrialOutcome(index, PASS, tags=(direction,))
    return TrialOutcome(index, FAIL, cube_witness(cube, index, verdict=verdict.to_dict()), (direction,))


def check_vk(trials: Optional[int] = None, seed: Optional[int] = None, max_size: Optional[int] = None,
             workers: Optional[int] = None) -> CampaignReport:
    """
    Van Kampen property of Pb-pushouts for regular-mono cubes, both
    directions: even trials start from pullback faces, odd trials from a
    pushout top face.
    """
    config = get_config()
    trials = config.trials if trials is None else trials
    max_size = config.max_size if max_size is None else max_size
    seed = _seed(seed)
    return _campaign('vk', partial(_vk_trial, seed, max_size), trials, seed, {'max_size': max_size}, workers)


# -- kernel pairs ----------------------------------------------------------------------

def _induced_kernel_arrow(h: FinFn, kf, kg) -> Tuple[Optional[FinFn], int]:
    u, v = finset.compose(h, kf.leg1), finset.compose(h, kf.leg2)
    return finset.pullback_mediator(kg, u, v), finset.count_pullback_mediators(kg, u, v)


def _pairing(span, X: FinSet) -> FinFn:
    return finset.pullback_mediator(finset.product(X, X), span.leg1, span.leg2)


def _kernel_square(rng, max_size: int):
    """A commuting square h: X → Z, f: X → Y, g: Z → W, t: Y → W; half of them pullbacks."""
    Y, Z = gen.random_finset(rng, max_size), gen.random_finset(rng, max_size)
    W = gen.random_finset(rng, max_size, min_size=1)
    t, g = gen.random_function(rng, Y, W), gen.random_function(rng, Z, W)
    if rng.random() < 0.5:
        pb = finset.pullback(t, g)
        return pb.leg1, pb.leg2, g, t, True
    injective = rng.random() < 0.5
    pairs = []
    zs = list(Z.elems)
    rng.shuffle(zs)
    for z in zs[:rng.randint(0, len(zs))]:
        ys = [y for y in Y if t(y) == g(z)]
        if ys:
            pairs.append((rng.choice(ys), z))
            if not injective and rng.random() < 0.5:
                pairs.append((rng.choice(ys), z))
    X = FinSet.range(len(pairs))
    return (FinFn(X, Y, tuple(y for y, _ in pairs)), FinFn(X, Z, tuple(z for _, z in pairs)), g, t, False)


def _kerset_cube(rng, max_size: int):
    """
    Bottom: A = B ∩ C inside D, all inclusions (a pullback along monos).
    Left face a pullback of a random c: C' → C, B' = A' plus fresh points,
    top face a pushout, d its mediator into D.
    """
    D = gen.random_finset(rng, max_size, min_size=1)
    B = FinSet.of(gen.random_subset(rng, D.elems))
    C = FinSet.of(gen.random_subset(rng, D.elems))
    A = FinSet.of(x for x in B if x in C)
    f, m = finset.inclusion(A, B), finset.inclusion(A, C)
    n, g = finset.inclusion(B, D), finset.inclusion(C, D)
    C2 = FinSet.range(rng.randint(0, max_size) if len(C) else 0)
    c = gen.random_function(rng, C2, C)
    left = finset.pullback(m, c)
    A2, a, m2 = left.apex, left.leg1, left.leg2
    extra = rng.randint(0, max_size) if len(B) else 0
    B2 = FinSet.range(len(A2) + extra)
    f2 = FinFn(A2, B2, tuple(range(len(A2))))
    b = FinFn(B2, B, tuple(f(a(i)) for i in A2) + tuple(rng.choice(B.elems) for _ in range(extra)))
    top = finset.pushout(f2, m2)
    n2, g2 = top.leg1, top.leg2
    d = finset.pushout_mediator(top, finset.compose(n, b), finset.compose(g, c))
    return dict(f=f, m=m, n=n, g=g, a=a, b=b, c=c, d=d, f2=f2, m2=m2, n2=n2, g2=g2)


def _kernel_trial(seed: int, max_size: int, index: int) -> TrialOutcome:
    rng = gen.trial_rng('kernel', seed, index, max_size)
    cat = get_category('finset')
    tags: List[str] = []
    problems: List[str] = []

    f, h, g, t, is_pb = _kernel_square(rng, max_size)
    kf, kg = finset.kernel_pair(f), finset.kernel_pair(g)
    k_h, count = _induced_kernel_arrow(h, kf, kg)
    if k_h is None or count != 1:
        problems.append(f"induced arrow on kernel pairs not unique ({count} candidates)")
    else:
        if finset.is_injective(h):
            tags.append('mono')
            if not finset.is_injective(k_h):
                problems.append('mono h induced a non-mono k_h')
        if is_pb:
            tags.append('pullback')
            for leg_f, leg_g in ((kf.leg1, kg.leg1), (kf.leg2, kg.leg2)):
                if not certify_pullback(Square(k_h, leg_f, leg_g, h, cat)):
                    problems.append('kernel projection square is not a pullback')
            if finset.is_injective(h):
                X, Z = h.dom, h.cod
                px = finset.product(X, X)
                hh = finset.pullback_mediator(finset.product(Z, Z), finset.compose(h, px.leg1),
                                              finset.compose(h, px.leg2))
                if not certify_pullback(Square(k_h, _pairing(kf, X), _pairing(kg, Z), hh, cat)):
                    problems.append('kernel pair square over h × h is not a pullback')

    cube = _kerset_cube(rng, max_size)
    if cube['d'] is None:
        problems.append('top pushout has no mediator into D')
    else:
        tags.append('kerset')
        if not certify_pullback(Square(cube['n2'], cube['b'], cube['d'], cube['n'], cat)):
            problems.append('right face is not a pullback')
        ka, kb, kc, kd = (finset.kernel_pair(cube[x]) for x in 'abcd')
        k_f2, _ = _induced_kernel_arrow(cube['f2'], ka, kb)
        k_m2, _ = _induced_kernel_arrow(cube['m2'], ka, kc)
        k_n2, _ = _induced_kernel_arrow(cube['n2'], kb, kd)
        k_g2, _ = _induced_kernel_arrow(cube['g2'], kc, kd)
        if None in (k_f2, k_m2, k_n2, k_g2):
            problems.append('missing induced arrow between kernel pairs')
        elif not certify_pushout(Square(k_f2, k_m2, k_n2, k_g2, cat)):
            problems.append('kernel pair square is not a pushout')

    if problems:
        return TrialOutcome(index, FAIL, {'trial': index, 'problems': problems}, tuple(tags))
    return TrialOutcome(index, PASS, tags=tuple(tags))


def check_kernel_pair_lemmas(trials: Optional[int] = None, seed: Optional[int] = None,
                             max_size: Optional[int] = None, workers: Optional[int] = None) -> CampaignReport:
    """Kernel pairs of commuting squares and of cubes with a pushout top, in finite sets."""
    config = get_config()
    trials = config.trials if trials is None else trials
    max_size = config.max_size if max_size is None else max_size
    seed = _seed(seed)
    return _campaign('kernel', partial(_kernel_trial, seed, max_size), trials, seed,
                     {'max_size': max_size}, workers)


# -- e-hypergraph closure ---------------------------------------------------------------

def _closure_trial(seed: int, max_size: int, index: int) -> TrialOutcome:
    rng = gen.trial_rng('closure', seed, index, max_size)
    B = gen.random_e_hypergraph(rng, max_size)
    m = gen.source_closed_subobject(rng, B)
    h = gen.random_class_injective_closed_morphism(rng, m.dom, max_size)
    po = pushout_eqhyp(m, h)
    tags: Tuple[str, ...] = ()

    plain = gen.pb_subobject(rng, B)
    plain_po = pushout_eqhyp(plain, gen.random_closed_morphism_from(rng, plain.dom, max_size))
    if not is_e_hypergraph(plain_po.apex):
        tags = ('unrestricted_violations',)

    if is_e_hypergraph(po.apex):
        return TrialOutcome(index, PASS)
    witness = {'trial': index, 'B': eq_to_doc(B).model_dump(exclude_none=True),
               'C': eq_to_doc(h.cod).model_dump(exclude_none=True),
               'pushout': eq_to_doc(po.apex).model_dump(exclude_none=True)}
    return TrialOutcome(index, FAIL, witness, tags)


def check_e_closure(trials: Optional[int] = None, seed: Optional[int] = None,
                    max_size: Optional[int] = None, workers: Optional[int] = None) -> CampaignReport:
    """
    Pushouts of e-hypergraphs stay e-hypergraphs (no rebuild) when glued
    along a Pb mono that contains every edge whose sources it contains,
    against a morphism injective on classes.

    Gluings violating one of the two side conditions are also tried and
    counted under ``unrestricted_violations``; they are not failures.
    """
    config = get_config()
    trials = config.trials if trials is None else trials
    max_size = config.max_size if max_size is None else max_size
    seed = _seed(seed)
    return _campaign('closure', partial(_closure_trial, seed, max_size), trials, seed,
                     {'max_size': max_size}, workers)


# -- exhaustive campaigns ----------------------------------------------------------------

def _exhaustive(name: str, bounds: Dict[str, Any], results: Iterator[Tuple[bool, Dict[str, Any]]],
                limit: int = 20) -> CampaignReport:
    log_step(f"{name}: exhaustive, bounds {bounds}")
    report = CampaignReport(name, 0, 0, bounds)
    for ok, witness in results:
        report.trials += 1
        if ok:
            report.passed += 1
        else:
            report.failed += 1
            if len(report.failures) < limit:
                report.failures.append(witness)
    logger.info(f"{name}: {report.passed} passed, {report.failed} failed")
    return report


def _sets(max_size: int) -> List[FinSet]:
    return [FinSet.range(k) for k in range(max_size + 1)]


def _fn_doc(f: FinFn) -> Dict[str, Any]:
    return finfn_to_doc(f).model_dump()


def _universal_instances(max_size: int, max_target: int) -> Iterator[Tuple[bool, Dict[str, Any]]]:
    sets, targets = _sets(max_size), _sets(max_target)
    for A, B, C in itertools.product(sets, repeat=3):
        for f in finset.all_functions(C, A):
            for g in finset.all_functions(C, B):
                po = finset.pushout(f, g)
                ok = finset.is_pushout_square(po.leg1, po.leg2, f, g)
                for X in targets:
                    for u in finset.all_functions(A, X):
                        uf = finset.compose(u, f)
                        for v in finset.all_functions(B, X):
                            if finset.compose(v, g) == uf and finset.count_pushout_mediators(po, u, v) != 1:
                                ok = False
                yield ok, {'kind': 'pushout', 'f': _fn_doc(f), 'g': _fn_doc(g), 'sizes': [len(A), len(B), len(C)]}
        for f in finset.all_functions(A, C):
            for g in finset.all_functions(B, C):
                pb = finset.pullback(f, g)
                ok = finset.is_pullback_square(pb.leg1, pb.leg2, f, g)
                for X in targets:
                    for u in finset.all_functions(X, A):
                        fu = finset.compose(f, u)
                        for v in finset.all_functions(X, B):
                            if finset.compose(g, v) == fu and finset.count_pullback_mediators(pb, u, v) != 1:
                                ok = False
                yield ok, {'kind': 'pullback', 'f': _fn_doc(f), 'g': _fn_doc(g), 'sizes': [len(A), len(B), len(C)]}


def check_universal_property(max_size: int = 2, max_target: int = 2) -> CampaignReport:
    """Canonical pushouts and pullbacks of finite sets admit exactly one mediator for every (co)cone."""
    return _exhaustive('universal', {'max_size': max_size, 'max_target': max_target},
                       _universal_instances(max_size, max_target))


def _star_instances(max_size: int, max_len: int) -> Iterator[Tuple[bool, Dict[str, Any]]]:
    sets = _sets(max_size)
    for A, B, C in itertools.product(sets, repeat=3):
        for f in finset.all_functions(A, C):
            for g in finset.all_functions(B, C):
                pb = finset.pullback(f, g)
                sf, sg = finset.star(f), finset.star(g)
                expected = {(w1, w2) for w1 in finset.words(A, max_len) for w2 in finset.words(B, max_len)
                            if sf(w1) == sg(w2)}
                s1, s2 = finset.star(pb.leg1), finset.star(pb.leg2)
                got = [(s1(w), s2(w)) for w in finset.words(pb.apex, max_len)]
                ok = len(set(got)) == len(got) and set(got) == expected
                yield ok, {'f': _fn_doc(f), 'g': _fn_doc(g), 'sizes': [len(A), len(B), len(C)]}


def check_star_pullbacks(max_size: int = 2, max_len: int = 2) -> CampaignReport:
    """Words over a pullback are exactly the pairs of words with equal images."""
    return _exhaustive('star', {'max_size': max_size, 'max_len': max_len}, _star_instances(max_size, max_len))


def set_partitions(items: List[Any], max_blocks: Optional[int] = None) -> Iterator[List[List[Any]]]:
    """Every partition of ``items`` into at most ``max_blocks`` blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest, max_blocks):
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]
        if max_blocks is None or len(partition) < max_blocks:
            yield [[first]] + partition


def small_hypergraphs(max_edges: int, max_nodes: int, max_word: int = 1) -> Iterator[Hypergraph]:
    """
    Hypergraphs whose edges have source and target words of length at most
    ``max_word``; edges listed in shape order, so each multiset of edge
    shapes appears once per node count.
    """
    for n in range(max_nodes + 1):
        nodes = FinSet.range(n)
        words = list(finset.words(nodes, max_word))
        shapes = list(itertools.product(words, repeat=2))
        for k in range(max_edges + 1):
            for combo in itertools.combinations_with_replacement(shapes, k):
                yield Hypergraph.build(nodes, dict(enumerate(combo)))


def small_eq_hypergraphs(max_edges: int, max_nodes: int, max_classes: int,
                         max_word: int = 1) -> Iterator[EqHypergraph]:
    for hyp in small_hypergraphs(max_edges, max_nodes, max_word):
        for blocks in set_partitions(list(hyp.nodes), max_classes):
            yield EqHypergraph.from_partition(hyp, blocks)


def _mono_instances(max_edges: int, max_nodes: int, max_classes: int,
                    max_word: int) -> Iterator[Tuple[bool, Dict[str, Any]]]:
    objects = list(small_eq_hypergraphs(max_edges, max_nodes, max_classes, max_word))
    for G, H in itertools.product(objects, repeat=2):
        for m in find_eq_morphisms(G, H):
            verdicts = {
                'mono_hyp': (is_mono_hyp(m.hyp), is_mono_by_kernel_pair_hyp(m.hyp)),
                'mono_eq': (is_mono_eq(m), is_mono_by_kernel_pair_eq(m)),
                'regular_eq': (is_regular_mono_eq(m), is_regular_by_cokernel_pair_eq(m)),
            }
            ok = all(a == b for a, b in verdicts.values())
            yield ok, {'source': eq_to_doc(G).model_dump(exclude_none=True),
                       'target': eq_to_doc(H).model_dump(exclude_none=True),
                       'nodes': [list(p) for p in m.h_V.items()],
                       'verdicts': {k: list(v) for k, v in verdicts.items()}}


def check_mono_characterizations(max_edges: int = 1, max_nodes: int = 2, max_classes: int = 2,
                                 max_word: int = 2) -> CampaignReport:
    """
    Componentwise mono/regular-mono predicates against kernel-pair and
    cokernel-pair characterizations, for every morphism between small
    hypergraphs with equivalence whose edges carry words of up to
    ``max_word`` sources and targets.
    """
    bounds = {'max_edges': max_edges, 'max_nodes': max_nodes, 'max_classes': max_classes, 'max_word': max_word}
    return _exhaustive('mono', bounds, _mono_instances(max_edges, max_nodes, max_classes, max_word))


TERM_SIGNATURE = Signature.of({'a': 0, 'f': 1, 'g': 2})


def small_term_graphs(max_edges: int, max_nodes: int, sig: Signature = TERM_SIGNATURE) -> Iterator[Labelling]:
    """Term graphs over a signature (by default a constant, a unary and a binary symbol); targets increasing."""
    for n in range(max_nodes + 1):
        nodes = list(range(n))
        for k in range(min(max_edges, n) + 1):
            for targets in itertools.combinations(nodes, k):
                for symbols in itertools.product(sig.ops, repeat=k):
                    choices = [itertools.product(nodes, repeat=sig.arity(s)) for s in symbols]
                    for sources in itertools.product(*choices):
                        edges = {i: (tuple(sources[i]), (targets[i],)) for i in range(k)}
                        base = Hypergraph.build(nodes, edges)
                        yield Labelling(base, symbols, sig)


def _tg_instances(max_edges: int, max_nodes: int) -> Iterator[Tuple[bool, Dict[str, Any]]]:
    graphs = list(small_term_graphs(max_edges, max_nodes))
    for G, H in itertools.product(graphs, repeat=2):
        for edge_map, node_map in find_labelled_morphisms(G, H, injective=True):
            m = HypMorphism(G.base, H.base, FinFn.from_mapping(G.base.edges, H.base.edges, edge_map),
                            FinFn.from_mapping(G.base.nodes, H.base.nodes, node_map))
            expected = is_regular_mono_tg(m, G, H)
            by_equalizer = is_regular_by_cokernel_pair_tg(m, G, H)
            yield expected == by_equalizer, {'source': [G.labels, [list(s) for s in G.base.src]],
                                             'target': [H.labels, [list(s) for s in H.base.src]],
                                             'nodes': sorted(node_map.items()),
                                             'input_preserving': expected, 'equalizer': by_equalizer}


def check_regular_tg(max_edges: int = 2, max_nodes: int = 2) -> CampaignReport:
    """Regular monos of term graphs are exactly the input-preserving monos."""
    return _exhaustive('regular-tg', {'max_edges': max_edges, 'max_nodes': max_nodes},
                       _tg_instances(max_edges, max_nodes))


# -- the fixed counterexample -------------------------------------------------------------

def check_counterexample() -> Dict[str, Any]:
    """Face verdicts of the regular-mono counterexample cube."""
    cube = counterexample_cube()
    verdict = check_vk_cube(cube, 'regular', 'regular')
    return {
        'bottom_pushout': certify_pushout(cube.bottom()),
        'back_pullback': certify_pullback(cube.back()),
        'left_pullback': certify_pullback(cube.left()),
        'front_pullback': certify_pullback(cube.front()),
        'right_pullback': certify_pullback(cube.right()),
        'top_pushout': certify_pushout(cube.top()),
        'bottom_mono_in_pb': get_category('eqhyp').in_class(cube.m, 'pb'),
        'vk': verdict.to_dict(),
    }


CAMPAIGNS: Dict[str, Callable[..., CampaignReport]] = {
    'stability': check_pb_stability,
    'vk': check_vk,
    'kernel': check_kernel_pair_lemmas,
    'closure': check_e_closure,
}
