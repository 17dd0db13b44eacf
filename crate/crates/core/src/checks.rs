//! Named verification suites with per-case counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::catops::{build_rh, symmetrise, symmetrise_over, TerminalOperad};
use crate::cells::cell_complex;
use crate::error::{Error, Result};
use crate::freeops::{c_n, free_n_operad, free_symmetric, s, substitute, FreeElement, FreeOperad, SetCollection};
use crate::json::TreeJson;
use crate::milgram::MilgramPoset;
use crate::ordinals::{enumerate_total_orders, factorial};
use crate::planar::{contractions_at, root_first_realizable, DominatedCache};
use crate::sc::{
    build_scrh, compare_restrictions, enumerate_coloured_objects, sc_symmetrise, ColouredCollection, ColouredTree,
    FreeScOperad,
};
use crate::trees::{enumerate_pruned_trees, induced_subtree, tree_morphisms, PrunedTree, SurjectionCache, TreeMorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Roundtrip,
    Finality,
    SymFree,
    Euler,
    TamarkinSearch,
    ScRestriction,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Roundtrip,
        Suite::Finality,
        Suite::SymFree,
        Suite::Euler,
        Suite::TamarkinSearch,
        Suite::ScRestriction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roundtrip => "roundtrip",
            Suite::Finality => "finality",
            Suite::SymFree => "sym-free",
            Suite::Euler => "euler",
            Suite::TamarkinSearch => "tamarkin-search",
            Suite::ScRestriction => "sc-restriction",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {:?}", s)))
    }
}

/// `Info` reports a count without asserting anything; `Finding` marks an
/// expected phenomenon that did not show up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
    Finding,
}

impl Status {
    fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub suite: &'static str,
    pub case: String,
    pub status: Status,
    pub counts: BTreeMap<&'static str, u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub n: usize,
    pub k: usize,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| matches!(c.status, Status::Pass | Status::Info))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    /// Run the expensive variants.
    pub slow: bool,
}

impl CheckConfig {
    pub fn new(n: usize, k: usize) -> CheckConfig {
        CheckConfig {
            n,
            k,
            seed: 1,
            slow: false,
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &CheckConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        suite: suite.name(),
        n: cfg.n,
        k: cfg.k,
        cases: Vec::new(),
    };
    let name = suite.name();
    let mut push = |case: String, status: Status, counts: &[(&'static str, u128)], detail: Option<String>| {
        report.cases.push(CaseReport {
            suite: name,
            case,
            status,
            counts: counts.iter().copied().collect(),
            detail,
        });
    };
    match suite {
        Suite::Roundtrip => roundtrip(cfg, &mut push)?,
        Suite::Finality => finality(cfg, &mut push)?,
        Suite::SymFree => sym_free(cfg, &mut push)?,
        Suite::Euler => euler(cfg, &mut push)?,
        Suite::TamarkinSearch => tamarkin(cfg, &mut push)?,
        Suite::ScRestriction => sc_restriction(cfg, &mut push)?,
    }
    Ok(report)
}

type Push<'a> = dyn FnMut(String, Status, &[(&'static str, u128)], Option<String>) + 'a;

fn roundtrip(cfg: &CheckConfig, push: &mut Push<'_>) -> Result<()> {
    for d in 1..=cfg.n {
        for m in 0..=cfg.k {
            let trees = enumerate_pruned_trees(d, m)?;
            let mut ok = true;
            for t in &trees {
                let (back, perm) = PrunedTree::from_total_order(&t.to_ordinal())?;
                ok &= &back == t && perm.iter().enumerate().all(|(i, &p)| i == p);
                ok &= PrunedTree::parse(d, &t.to_string())? == *t;
                ok &= PrunedTree::try_from(TreeJson::from(t))? == *t;
            }
            let orders = enumerate_total_orders(d, m)?;
            let expected = (factorial(m) as u128) * (d as u128).pow(m.saturating_sub(1) as u32);
            ok &= m == 0 || orders.len() as u128 == expected;
            push(
                format!("n={} k={}", d, m),
                Status::from_bool(ok),
                &[("trees", trees.len() as u128), ("orders", orders.len() as u128)],
                None,
            );
        }
    }
    Ok(())
}

fn finality(cfg: &CheckConfig, push: &mut Push<'_>) -> Result<()> {
    for m in 2..=cfg.k {
        let poset = build_rh(cfg.n, m)?;
        let milgram = MilgramPoset::build(cfg.n, m)?;
        let corollas = poset.compare_with_milgram(&milgram);
        let mut nonempty = 0u128;
        let mut connected = 0u128;
        let mut first_bad = None;
        for a in 0..poset.objects().len() {
            let c = poset.comma_over_corollas(a);
            nonempty += c.nonempty as u128;
            connected += c.connected as u128;
            if !(c.nonempty && c.connected) && first_bad.is_none() {
                first_bad = Some(poset.objects()[a].to_string());
            }
        }
        let objects = poset.objects().len() as u128;
        let ok = corollas.bijective && corollas.order_agrees && nonempty == objects && connected == objects;
        push(
            format!("n={} k={}", cfg.n, m),
            Status::from_bool(ok),
            &[
                ("objects", objects),
                ("generators", poset.generators().len() as u128),
                ("corollas", corollas.corollas as u128),
                ("milgram", corollas.milgram as u128),
                ("commas_nonempty", nonempty),
                ("commas_connected", connected),
            ],
            first_bad,
        );
    }
    Ok(())
}

fn sym_free(cfg: &CheckConfig, push: &mut Push<'_>) -> Result<()> {
    for m in 2..=cfg.k {
        let terminal = symmetrise(&TerminalOperad { degree: cfg.n }, m)?;
        let all: Vec<usize> = (0..terminal.poset().objects().len()).collect();
        let connected = terminal.poset().is_connected(&all);
        let ok = terminal.comparison_bijective() && (connected == (terminal.class_count() == 1));
        push(
            format!("n={} k={} terminal", cfg.n, m),
            Status::from_bool(ok),
            &[
                ("classes", terminal.class_count() as u128),
                ("corolla_classes", terminal.corolla_class_count() as u128),
            ],
            None,
        );
        let poset = terminal.poset();
        let mut collections = vec![("one-point".to_string(), SetCollection::one_point(cfg.n, m)?)];
        for i in 0..5 {
            let seed = cfg.seed + i;
            collections.push((format!("seed={}", seed), SetCollection::random(cfg.n, m, 2, seed)?));
        }
        let transpositions: Vec<Vec<usize>> = (0..m - 1)
            .map(|i| {
                let mut p: Vec<usize> = (0..m).collect();
                p.swap(i, i + 1);
                p
            })
            .collect();
        for (label, x) in collections {
            let oracle = free_symmetric(&s(&c_n(&x)), m)?.len();
            let sym = symmetrise_over(&FreeOperad { collection: x }, poset.clone())?;
            let action = sym.action_well_defined(&transpositions)?;
            let ok = sym.class_count() == oracle && sym.comparison_bijective() && action;
            push(
                format!("n={} k={} {}", cfg.n, m, label),
                Status::from_bool(ok),
                &[
                    ("classes", sym.class_count() as u128),
                    ("free_symmetric", oracle as u128),
                    ("corolla_classes", sym.corolla_class_count() as u128),
                    ("elements", sym.total_elements() as u128),
                ],
                None,
            );
        }
    }
    Ok(())
}


fn euler(cfg: &CheckConfig, push: &mut Push<'_>) -> Result<()> {
    for m in 2..=cfg.k {
        let mut trees = 0u128;
        let mut good = 0u128;
        let mut cells = 0u128;
        let mut bad = Vec::new();
        for t in enumerate_pruned_trees(cfg.n, m)? {
            let c = cell_complex(&t)?;
            trees += 1;
            cells += c.cells.len() as u128;
            let top_ok = !c.top_cells.is_empty()
                && c.top_cells.iter().all(|t| t.is_corolla())
                && c.dimension() == t.dimension();
            if c.euler_c == 1 && top_ok {
                good += 1;
            } else {
                bad.push(format!("{} euler_c={}", t, c.euler_c));
            }
        }
        push(
            format!("n={} k={}", cfg.n, m),
            Status::from_bool(bad.is_empty()),
            &[("trees", trees), ("euler_one", good), ("cells", cells)],
            (!bad.is_empty()).then(|| bad.join("; ")),
        );
    }
    Ok(())
}

/// Scans arities upwards for a dominated tree that cannot be evaluated from
/// its root; stops at the first arity with a witness unless `slow`.
fn tamarkin(cfg: &CheckConfig, push: &mut Push<'_>) -> Result<()> {
    let mut cache = SurjectionCache::new();
    let mut dominated = DominatedCache::new();
    let mut first: Option<String> = None;
    for m in 2..=cfg.k {
        let mut count = 0u128;
        let mut witnesses = 0u128;
        let mut escaping = 0u128;
        let mut contractions = 0u128;
        for t in enumerate_pruned_trees(cfg.n, m)? {
            let mut memo = HashMap::new();
            for tau in dominated.trees(&t) {
                count += 1;
                if !root_first_realizable(&tau, &t, &mut cache, &mut memo)? {
                    witnesses += 1;
                    if first.is_none() {
                        first = Some(format!("T={} tau={}", t, tau));
                    }
                }
                for (path, _) in tau.vertices() {
                    for c in contractions_at(&tau, &path, &mut cache)? {
                        contractions += 1;
                        if !c.apply_shape(&tau)?.dominated_by(&t)? {
                            escaping += 1;
                        }
                    }
                }
            }
        }
        push(
            format!("n={} k={}", cfg.n, m),
            Status::Info,
            &[
                ("dominated", count),
                ("witnesses", witnesses),
                ("contractions", contractions),
                ("contractions_leaving", escaping),
            ],
            None,
        );
        if first.is_some() && !cfg.slow {
            break;
        }
    }
    let status = if first.is_some() { Status::Pass } else { Status::Finding };
    push(
        format!("n={} k<={} witness", cfg.n, cfg.k),
        status,
        &[("found", first.is_some() as u128)],
        first,
    );
    Ok(())
}

fn sc_restriction(cfg: &CheckConfig, push: &mut Push<'_>) -> Result<()> {
    let n = cfg.n;
    if n < 2 {
        return Err(Error::Precondition("the sc-restriction suite needs n >= 2".into()));
    }
    for m in 2..=cfg.k {
        let r = compare_restrictions(n, m)?;
        push(
            format!("n={} m={} categories", n, m),
            Status::from_bool(r.all_hold()),
            &[
                ("closed_objects_equal", r.closed_objects_equal as u128),
                ("closed_arrows_equal", r.closed_arrows_equal as u128),
                ("open_objects_match", r.open_objects_match as u128),
                ("open_arrows_match", r.open_arrows_match as u128),
            ],
            None,
        );
        let mut direct_ok = true;
        let mut objects = 0u128;
        for k1 in 0..=m {
            let direct = enumerate_coloured_objects(n, k1, m - k1)?;
            let filtered = build_scrh(n, k1, m - k1)?;
            objects += direct.len() as u128;
            direct_ok &= direct.as_slice() == filtered.objects();
        }
        push(
            format!("n={} m={} coloured objects", n, m),
            Status::from_bool(direct_ok),
            &[("objects", objects)],
            None,
        );
        for (label, closed, open) in [
            ("one-point".to_string(), SetCollection::one_point(n, m)?, SetCollection::one_point(n - 1, m)?),
            (
                format!("seed={}", cfg.seed),
                SetCollection::random(n, m, 2, cfg.seed)?,
                SetCollection::random(n - 1, m, 2, cfg.seed + 1)?,
            ),
        ] {
            let mut x = ColouredCollection::suspension_of(&open);
            for (t, toks) in closed.entries() {
                x.insert(ColouredTree::plain(t.clone()), toks.clone())?;
            }
            let sc = FreeScOperad { collection: x };
            let sc_closed = sc_symmetrise(&sc, 0, m)?;
            let plain_closed = symmetrise(&FreeOperad { collection: closed }, m)?;
            let closed_ok = sc_closed.colimit() == plain_closed.colimit();
            let sc_open = sc_symmetrise(&sc, m, 0)?;
            let plain_open = symmetrise(&FreeOperad { collection: open }, m)?;
            let open_ok = sc_open.class_count() == plain_open.class_count();
            push(
                format!("n={} m={} {}", n, m, label),
                Status::from_bool(closed_ok && open_ok),
                &[
                    ("closed_sc", sc_closed.class_count() as u128),
                    ("closed_plain", plain_closed.class_count() as u128),
                    ("open_sc", sc_open.class_count() as u128),
                    ("open_plain", plain_open.class_count() as u128),
                ],
                None,
            );
        }
    }
    Ok(())
}

/// Counts of checked instances of the unit and associativity laws for
/// substitution, with the first few failures.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MonadReport {
    pub unit_cases: u128,
    pub assoc_cases: u128,
    pub failures: Vec<String>,
}

impl MonadReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, what: String) {
        if self.failures.len() < 8 {
            self.failures.push(what);
        }
    }
}

/// Checks both unit laws and associativity of substitution along every pair
/// of composable surjections `T -> S -> R` with at most `k` tips, over all
/// operations whose bodies have at most `max_vertices` vertices in total.
pub fn monad_laws(x: &SetCollection, k: usize, max_vertices: usize) -> Result<MonadReport> {
    let n = x.degree();
    let mut report = MonadReport::default();
    let mut elems: HashMap<PrunedTree, Vec<FreeElement>> = HashMap::new();
    for m in 1..=k {
        for t in enumerate_pruned_trees(n, m)? {
            let list: Vec<FreeElement> = free_n_operad(x, &t)?
                .into_iter()
                .filter(|e| e.body().vertex_count() <= max_vertices)
                .collect();
            elems.insert(t, list);
        }
    }
    for (t, list) in &elems {
        if t.is_linear() {
            continue;
        }
        let id = TreeMorphism::identity(t);
        let to_unit = TreeMorphism::to_linear(t);
        for e in list {
            report.unit_cases += 1;
            let right = substitute(&id, e, &vec![None; t.tips()])?;
            let left = substitute(&to_unit, &FreeElement::unit(n), &[Some(e)])?;
            if &right != e || &left != e {
                report.fail(format!("unit law at {}", e.render()));
            }
        }
    }
    let slot = |t: &PrunedTree| -> Vec<Option<FreeElement>> {
        if t.is_linear() {
            vec![None]
        } else {
            elems.get(t).map(|l| l.iter().cloned().map(Some).collect()).unwrap_or_default()
        }
    };
    for m in 2..=k {
        for t in enumerate_pruned_trees(n, m)? {
            for ms in 1..=m {
                for s_tree in enumerate_pruned_trees(n, ms)? {
                    let sigmas = tree_morphisms(&t, &s_tree, true);
                    if sigmas.is_empty() {
                        continue;
                    }
                    for mr in 1..=ms {
                        for r_tree in enumerate_pruned_trees(n, mr)? {
                            for rho in tree_morphisms(&s_tree, &r_tree, true) {
                                for sigma in &sigmas {
                                    associativity(sigma, &rho, &slot, max_vertices, &mut report)?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

fn associativity(
    sigma: &TreeMorphism,
    rho: &TreeMorphism,
    slot: &dyn Fn(&PrunedTree) -> Vec<Option<FreeElement>>,
    max_vertices: usize,
    report: &mut MonadReport,
) -> Result<()> {
    let n = sigma.source().degree();
    let mut slots: Vec<Vec<Option<FreeElement>>> = vec![slot(rho.target())];
    let rho_fibers = rho.fibers()?;
    let sigma_fibers = sigma.fibers()?;
    slots.extend(rho_fibers.iter().map(slot));
    slots.extend(sigma_fibers.iter().map(slot));
    let tau = sigma.compose(rho)?;
    let rho_pre = rho.preimages();
    let tau_pre = tau.preimages();
    let mut choice: Vec<Option<FreeElement>> = Vec::with_capacity(slots.len());
    let mut run = |choice: &[Option<FreeElement>]| -> Result<()> {
        let c = choice[0].clone().unwrap_or_else(|| FreeElement::unit(n));
        let b = &choice[1..1 + rho_fibers.len()];
        let a = &choice[1 + rho_fibers.len()..];
        let mid = substitute(rho, &c, &b.iter().map(Option::as_ref).collect::<Vec<_>>())?;
        let lhs = substitute(sigma, &mid, &a.iter().map(Option::as_ref).collect::<Vec<_>>())?;
        let mut ys = Vec::with_capacity(b.len());
        for (j, bj) in b.iter().enumerate() {
            let p = &rho_pre[j];
            let q = &tau_pre[j];
            let f: Vec<usize> = q
                .iter()
                .map(|&t| p.binary_search(&sigma.tip_map()[t]).expect("fiber lies over fiber"))
                .collect();
            let sj = TreeMorphism::lift(&f, &induced_subtree(sigma.source(), q), &induced_subtree(rho.source(), p))
                .ok_or_else(|| Error::InvalidMap("restricted fiber map is not ordered".into()))?;
            let head = bj.clone().unwrap_or_else(|| FreeElement::unit(n));
            let args: Vec<Option<&FreeElement>> = p.iter().map(|&i| a[i].as_ref()).collect();
            let y = substitute(&sj, &head, &args)?;
            ys.push((!y.is_unit()).then_some(y));
        }
        let rhs = substitute(&tau, &c, &ys.iter().map(Option::as_ref).collect::<Vec<_>>())?;
        report.assoc_cases += 1;
        if lhs != rhs {
            report.fail(format!("associativity: {} vs {}", lhs.render(), rhs.render()));
        }
        Ok(())
    };
    fn walk(
        slots: &[Vec<Option<FreeElement>>],
        budget: usize,
        choice: &mut Vec<Option<FreeElement>>,
        run: &mut dyn FnMut(&[Option<FreeElement>]) -> Result<()>,
    ) -> Result<()> {
        let Some((first, rest)) = slots.split_first() else {
            return run(choice);
        };
        for option in first {
            let cost = option.as_ref().map_or(0, |e| e.body().vertex_count());
            if cost > budget {
                continue;
            }
            choice.push(option.clone());
            walk(rest, budget - cost, choice, run)?;
            choice.pop();
        }
        Ok(())
    }
    walk(&slots, max_vertices, &mut choice, &mut run)
}
