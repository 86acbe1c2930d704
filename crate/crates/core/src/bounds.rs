//! One checkable predicate per eigenvalue bound, each producing a [`BoundReport`].
//!
//! Right-hand sides that are rational in integer graph statistics are computed
//! exactly; only the eigenvalues come from the floating-point solver. A bound
//! holds when `lhs <= rhs + ε`. Equality needs `|rhs - lhs| <= ε` and, where a
//! structural equality class is known for the graph at hand, membership in it.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::bipartite::{bipartition, BipStructure};
use crate::degree::{degree_stats, DegreeStats};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::partition::{dominating_quotient, quotient_max_eig, Partition, QUOTIENT_MAX_DIM};
use crate::spectra::{spectrum, MatrixKind, Spectrum};

/// Default one-sided tolerance.
pub const DEFAULT_EPSILON: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EqualityClass {
    Star,
    Regular,
    BipartiteSemiregular,
    CompleteBipartite,
    JoinK1Disconnected,
    Other,
    NotApplicable,
}

/// Standing of the statement a report checks, for the graph it was evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    /// A theorem or lemma; a violation is a bug.
    Proven,
    /// An open conjecture; a violation would be a finding.
    Conjectured,
    /// A conjecture known to be false; violations are expected.
    Refuted,
}

/// Formats with 12 significant digits, plain decimal where reasonable.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-6..=15).contains(&exp) {
        let prec = (11 - exp).max(0) as usize;
        let s = format!("{x:.prec$}");
        let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

fn ser_sig12<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_nan() {
        s.serialize_none()
    } else {
        s.serialize_str(&format_sig12(*x))
    }
}

/// Evaluation of one named bound on one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound_id: &'static str,
    pub n: usize,
    #[serde(serialize_with = "ser_sig12")]
    pub lhs: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub rhs: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub slack: f64,
    pub holds: bool,
    pub equality: bool,
    pub equality_class: EqualityClass,
    pub graph6: String,
    #[serde(skip)]
    pub status: Status,
    /// Which case or sub-claim produced the numbers, when the bound has several.
    #[serde(skip)]
    pub detail: Option<String>,
}

impl BoundReport {
    pub fn applicable(&self) -> bool {
        self.equality_class != EqualityClass::NotApplicable
    }

    /// Violated beyond the tolerance.
    pub fn violated(&self) -> bool {
        self.applicable() && !self.holds
    }

    /// Numerically tight, ignoring structural confirmation.
    pub fn tight(&self, epsilon: f64) -> bool {
        self.applicable() && self.slack.abs() <= epsilon
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialise")
    }
}

/// Structural classes named by the equality conditions, decided from adjacency alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Classification {
    pub star: bool,
    pub regular: bool,
    pub bipartite_semiregular: bool,
    pub complete_bipartite: bool,
    pub join_k1_disconnected: bool,
    pub connected: bool,
}

impl Classification {
    /// The most specific class, in the order star, complete bipartite, regular,
    /// bipartite semiregular, join of `K_1` with a disconnected graph.
    pub fn primary(&self) -> EqualityClass {
        if self.star {
            EqualityClass::Star
        } else if self.complete_bipartite {
            EqualityClass::CompleteBipartite
        } else if self.regular {
            EqualityClass::Regular
        } else if self.bipartite_semiregular {
            EqualityClass::BipartiteSemiregular
        } else if self.join_k1_disconnected {
            EqualityClass::JoinK1Disconnected
        } else {
            EqualityClass::Other
        }
    }
}

/// `K_{1,n-1}` with `n >= 2`.
pub fn is_star(g: &Graph) -> bool {
    let n = g.n();
    n >= 2 && g.edge_count() == n - 1 && (0..n).any(|v| g.degree(v) == n - 1)
}

/// Connected complete bipartite `K_{r,s}` with `r, s >= 1`.
pub fn is_complete_bipartite(g: &Graph) -> bool {
    match bipartition(g) {
        Some(b) => g.n() >= 2 && b.k() >= 1 && g.edge_count() == b.k() * b.r() && g.is_connected(),
        None => false,
    }
}

/// Bipartite with every edge joining a degree-`a` vertex to a degree-`b` vertex
/// for one fixed pair `{a, b}`, and no isolated vertices unless edgeless.
pub fn is_bipartite_semiregular(g: &Graph) -> bool {
    let Some(b) = bipartition(g) else { return false };
    if g.edge_count() == 0 {
        return true;
    }
    let (labels, count) = g.components();
    let mut pair: Option<(usize, usize)> = None;
    for c in 0..count {
        let side = |on_x: bool| -> Option<usize> {
            let mut ds = (0..g.n()).filter(|&v| labels[v] == c && b.x.contains(&v) == on_x).map(|v| g.degree(v));
            let first = ds.next()?;
            ds.all(|d| d == first).then_some(first).or(Some(usize::MAX))
        };
        let (dx, dy) = match (side(true), side(false)) {
            (Some(a), Some(b)) => (a, b),
            _ => return false, // isolated vertex alongside edges
        };
        if dx == usize::MAX || dy == usize::MAX {
            return false;
        }
        let p = (dx.min(dy), dx.max(dy));
        match pair {
            None => pair = Some(p),
            Some(q) if q != p => return false,
            _ => {}
        }
    }
    true
}

/// `K_1 ∨ H` with `H` a disconnected graph on `n - 1` vertices.
pub fn is_join_k1_disconnected(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    (0..n).filter(|&v| g.degree(v) == n - 1).any(|v| {
        let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        !g.induced(&rest).expect("vertices in range").is_connected()
    })
}

/// Decides every named equality class of `g` exactly.
pub fn equality_classifier(g: &Graph) -> Classification {
    Classification {
        star: is_star(g),
        regular: g.is_regular(),
        bipartite_semiregular: is_bipartite_semiregular(g),
        complete_bipartite: is_complete_bipartite(g),
        join_k1_disconnected: is_join_k1_disconnected(g),
        connected: g.is_connected(),
    }
}

/// A graph with its complement and lazily computed spectra, shared by all bounds.
pub struct GraphProfile {
    graph: Graph,
    complement: Graph,
    graph6: String,
    stats: DegreeStats,
    lap: OnceCell<Spectrum>,
    co_lap: OnceCell<Spectrum>,
    sig: OnceCell<Spectrum>,
    co_sig: OnceCell<Spectrum>,
    bip: OnceCell<Option<BipStructure>>,
    co_bipartite: OnceCell<bool>,
    class: OnceCell<Classification>,
    co_class: OnceCell<Classification>,
}

impl GraphProfile {
    pub fn new(g: &Graph) -> Self {
        GraphProfile {
            complement: g.complement(),
            graph6: write_graph6(g).unwrap_or_default(),
            stats: degree_stats(g),
            graph: g.clone(),
            lap: OnceCell::new(),
            co_lap: OnceCell::new(),
            sig: OnceCell::new(),
            co_sig: OnceCell::new(),
            bip: OnceCell::new(),
            co_bipartite: OnceCell::new(),
            class: OnceCell::new(),
            co_class: OnceCell::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn complement(&self) -> &Graph {
        &self.complement
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph6(&self) -> &str {
        &self.graph6
    }

    pub fn stats(&self) -> &DegreeStats {
        &self.stats
    }

    pub fn laplacian(&self) -> &Spectrum {
        self.lap.get_or_init(|| spectrum(&self.graph, MatrixKind::Laplacian))
    }

    pub fn co_laplacian(&self) -> &Spectrum {
        self.co_lap.get_or_init(|| spectrum(&self.complement, MatrixKind::Laplacian))
    }

    pub fn signless(&self) -> &Spectrum {
        self.sig.get_or_init(|| spectrum(&self.graph, MatrixKind::SignlessLaplacian))
    }

    pub fn co_signless(&self) -> &Spectrum {
        self.co_sig.get_or_init(|| spectrum(&self.complement, MatrixKind::SignlessLaplacian))
    }

    pub fn bip(&self) -> Option<&BipStructure> {
        self.bip.get_or_init(|| bipartition(&self.graph)).as_ref()
    }

    pub fn co_bipartite(&self) -> bool {
        *self.co_bipartite.get_or_init(|| bipartition(&self.complement).is_some())
    }

    pub fn class(&self) -> &Classification {
        self.class.get_or_init(|| equality_classifier(&self.graph))
    }

    pub fn co_class(&self) -> &Classification {
        self.co_class.get_or_init(|| equality_classifier(&self.complement))
    }

    pub fn mu1(&self) -> f64 {
        self.laplacian().largest()
    }

    pub fn co_mu1(&self) -> f64 {
        self.co_laplacian().largest()
    }

    /// Algebraic connectivity `μ_{n-1}`; needs `n >= 2`.
    pub fn mu_n1(&self) -> f64 {
        self.laplacian().nth(self.n() - 1)
    }

    pub fn co_mu_n1(&self) -> f64 {
        self.co_laplacian().nth(self.n() - 1)
    }

    pub fn q1(&self) -> f64 {
        self.signless().largest()
    }

    pub fn co_q1(&self) -> f64 {
        self.co_signless().largest()
    }

    /// `G` or `Ḡ` is a star.
    pub fn star_either(&self) -> bool {
        self.class().star || self.co_class().star
    }

    /// `G` or `Ḡ` is `K_1 ∨ (disconnected)`.
    pub fn join_k1_either(&self) -> bool {
        self.class().join_k1_disconnected || self.co_class().join_k1_disconnected
    }

    fn report(&self, id: &'static str, lhs: f64, rhs: f64, eps: f64) -> BoundReport {
        let slack = rhs - lhs;
        BoundReport {
            bound_id: id,
            n: self.n(),
            lhs,
            rhs,
            slack,
            holds: lhs <= rhs + eps,
            equality: slack.abs() <= eps,
            equality_class: EqualityClass::Other,
            graph6: self.graph6.clone(),
            status: Status::Proven,
            detail: None,
        }
    }

    fn not_applicable(&self, id: &'static str, why: &str) -> BoundReport {
        BoundReport {
            bound_id: id,
            n: self.n(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::NAN,
            holds: true,
            equality: false,
            equality_class: EqualityClass::NotApplicable,
            graph6: self.graph6.clone(),
            status: Status::Proven,
            detail: Some(why.to_string()),
        }
    }
}

fn to_f64<T: Into<i128> + Copy>(r: Ratio<T>) -> f64 {
    let (n, d): (i128, i128) = ((*r.numer()).into(), (*r.denom()).into());
    n as f64 / d as f64
}

/// The named bounds. Some produce more than one report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundId {
    Das,
    Merris,
    DominatingQuotient,
    ThmBip,
    ThmMu1,
    ThmTl,
    LapSpread,
    MuProduct,
    QSum,
    QProduct,
}

impl BoundId {
    pub const ALL: [BoundId; 10] = [
        BoundId::Das,
        BoundId::Merris,
        BoundId::DominatingQuotient,
        BoundId::ThmBip,
        BoundId::ThmMu1,
        BoundId::ThmTl,
        BoundId::LapSpread,
        BoundId::MuProduct,
        BoundId::QSum,
        BoundId::QProduct,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BoundId::Das => "das",
            BoundId::Merris => "merris",
            BoundId::DominatingQuotient => "equi_dominating",
            BoundId::ThmBip => "thm_bip",
            BoundId::ThmMu1 => "thm_mu1",
            BoundId::ThmTl => "thm_tl",
            BoundId::LapSpread => "lap_spread",
            BoundId::MuProduct => "mu_product",
            BoundId::QSum => "q_sum",
            BoundId::QProduct => "q_product",
        }
    }

    /// Report ids this bound emits, in order.
    pub fn report_ids(&self) -> &'static [&'static str] {
        match self {
            BoundId::ThmMu1 => &["thm_mu1", "thm_mu1_step", "thm_mu1_chain"],
            BoundId::QSum => &["q_sum", "q_sum_3n4"],
            BoundId::Das => &["das"],
            BoundId::Merris => &["merris"],
            BoundId::DominatingQuotient => &["equi_dominating"],
            BoundId::ThmBip => &["thm_bip"],
            BoundId::ThmTl => &["thm_tl"],
            BoundId::LapSpread => &["lap_spread"],
            BoundId::MuProduct => &["mu_product"],
            BoundId::QProduct => &["q_product"],
        }
    }

    /// Evaluates this bound on a profiled graph.
    pub fn evaluate(&self, p: &GraphProfile, eps: f64) -> Vec<BoundReport> {
        match self {
            BoundId::Das => vec![das_report(p, eps)],
            BoundId::Merris => vec![merris_report(p, eps)],
            BoundId::DominatingQuotient => vec![dominating_report(p, eps)],
            BoundId::ThmBip => vec![thm_bip_report(p, eps)],
            BoundId::ThmMu1 => thm_mu1_reports(p, eps).to_vec(),
            BoundId::ThmTl => vec![thm_tl_eval(p, eps).report],
            BoundId::LapSpread => vec![lap_spread_eval(p, eps).report],
            BoundId::MuProduct => vec![mu_product_report(p, eps)],
            BoundId::QSum => q_sum_reports(p, eps).to_vec(),
            BoundId::QProduct => vec![q_product_report(p, eps)],
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|b| b.name() == s || b.report_ids().contains(&s))
            .ok_or_else(|| Error::UnknownBound(s.to_string()))
    }
}

/// Parses `all` or a comma-separated list of bound ids, deduplicated, in first-seen order.
pub fn parse_bound_list(s: &str) -> Result<Vec<BoundId>> {
    if s.trim() == "all" {
        return Ok(BoundId::ALL.to_vec());
    }
    let mut out: Vec<BoundId> = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let id: BoundId = part.parse()?;
        if !out.contains(&id) {
            out.push(id);
        }
    }
    if out.is_empty() {
        return Err(Error::UnknownBound(s.to_string()));
    }
    Ok(out)
}

/// `max_v d(v)+m(v)` as an exact rational over non-isolated vertices.
fn max_d_plus_m(stats: &DegreeStats) -> Option<Ratio<i64>> {
    stats.max_degree_plus_avg().map(|r| Ratio::new(*r.numer() as i64, *r.denom() as i64))
}

/// `2e/(n-1) + (n-2)Δ/(n-1) + (Δ-δ)(1 - Δ/(n-1))`.
pub fn das_rhs(stats: &DegreeStats) -> Ratio<i64> {
    let n = stats.n() as i64;
    let (e, dmax, dmin) = (stats.edges as i64, stats.max_deg as i64, stats.min_deg as i64);
    Ratio::new(2 * e + (n - 2) * dmax + (dmax - dmin) * (n - 1 - dmax), n - 1)
}

/// Whether `v` meets the equality condition: `d(v) = n-1`, or `d(v) = Δ` with
/// every neighbour of degree `Δ` and every non-neighbour of degree `δ`.
fn das_equality_vertex(g: &Graph, stats: &DegreeStats, v: usize) -> bool {
    let n = g.n();
    let d = stats.degrees[v];
    if d == 0 {
        return false;
    }
    if d as usize == n - 1 {
        return true;
    }
    d == stats.max_deg
        && (0..n).filter(|&u| u != v).all(|u| {
            if g.has_edge(u, v) {
                stats.degrees[u] == stats.max_deg
            } else {
                stats.degrees[u] == stats.min_deg
            }
        })
}

fn das_report(p: &GraphProfile, eps: f64) -> BoundReport {
    const ID: &str = "das";
    if p.n() < 2 {
        return p.not_applicable(ID, "n < 2");
    }
    let Some(lhs) = max_d_plus_m(p.stats()) else {
        return p.not_applicable(ID, "edgeless graph");
    };
    let rhs = das_rhs(p.stats());
    let mut r = p.report(ID, to_f64(lhs), to_f64(rhs), eps);
    r.holds = lhs <= rhs;
    let structural = (0..p.n()).any(|v| das_equality_vertex(p.graph(), p.stats(), v));
    r.equality = lhs == rhs && (structural || !p.class().connected);
    r.equality_class = if structural { p.class().primary() } else { EqualityClass::Other };
    r
}

/// `max d(v) + m(v) <= 2e/(n-1) + (n-2)Δ/(n-1) + (Δ-δ)(1 - Δ/(n-1))`, both sides exact.
pub fn das_bound(g: &Graph) -> BoundReport {
    das_report(&GraphProfile::new(g), DEFAULT_EPSILON)
}

fn merris_report(p: &GraphProfile, eps: f64) -> BoundReport {
    const ID: &str = "merris";
    let Some(rhs) = max_d_plus_m(p.stats()) else {
        return p.not_applicable(ID, "edgeless graph");
    };
    let mut r = p.report(ID, p.q1(), to_f64(rhs), eps);
    let c = p.class();
    let named = c.regular || c.bipartite_semiregular;
    if c.connected {
        r.equality &= named;
    }
    r.equality_class = if c.regular {
        EqualityClass::Regular
    } else if c.bipartite_semiregular {
        EqualityClass::BipartiteSemiregular
    } else {
        EqualityClass::Other
    };
    r
}

/// `q₁(G) <= max d(v) + m(v)`.
pub fn merris_bound(g: &Graph) -> BoundReport {
    merris_report(&GraphProfile::new(g), DEFAULT_EPSILON)
}

fn dominating_report(p: &GraphProfile, eps: f64) -> BoundReport {
    const ID: &str = "equi_dominating";
    if p.n() == 0 {
        return p.not_applicable(ID, "empty graph");
    }
    let part = Partition::by_degree(p.graph());
    if part.block_count() > QUOTIENT_MAX_DIM {
        return p.not_applicable(ID, "more than 8 distinct degrees");
    }
    let q = dominating_quotient(p.graph(), &part).expect("partition matches graph");
    let rhs = quotient_max_eig(&q).expect("nonnegative quotient has a Perron root");
    let mut r = p.report(ID, p.q1(), rhs, eps);
    r.equality_class = p.class().primary();
    r
}

/// `q₁(G) <= λ_max(R)` for the dominating quotient of `partition`.
pub fn dominating_quotient_bound(g: &Graph, partition: &Partition) -> Result<BoundReport> {
    let p = GraphProfile::new(g);
    let q = dominating_quotient(g, partition)?;
    let rhs = quotient_max_eig(&q)?;
    let mut r = p.report("equi_dominating", p.q1(), rhs, DEFAULT_EPSILON);
    r.equality_class = p.class().primary();
    Ok(r)
}

fn thm_bip_report(p: &GraphProfile, eps: f64) -> BoundReport {
    const ID: &str = "thm_bip";
    if p.n() < 2 {
        return p.not_applicable(ID, "n < 2");
    }
    let Some(b) = p.bip() else {
        return p.not_applicable(ID, "not bipartite");
    };
    if b.t() == 0 || b.ell() == 0 {
        return p.not_applicable(ID, "no vertex of X has degree |Y| (t = 0) or l = 0");
    }
    let lhs = Ratio::new(b.ell() as i64, b.r() as i64);
    let mut r = p.report(ID, to_f64(lhs), p.mu_n1(), eps);
    let star = p.class().star;
    r.equality &= star;
    r.equality_class = if star { EqualityClass::Star } else { EqualityClass::Other };
    r.detail = Some(format!("k={} t={} l={} |Y|={}", b.k(), b.t(), b.ell(), b.r()));
    r
}

/// `μ_{n-1}(G) >= ℓ/|Y|` for bipartite `G` with `t >= 1`; `lhs = ℓ/|Y|`, `rhs = μ_{n-1}`.
pub fn thm_bip_lower(g: &Graph) -> BoundReport {
    thm_bip_report(&GraphProfile::new(g), DEFAULT_EPSILON)
}

fn thm_mu1_reports(p: &GraphProfile, eps: f64) -> [BoundReport; 3] {
    const IDS: [&str; 3] = ["thm_mu1", "thm_mu1_step", "thm_mu1_chain"];
    let na = |why: &str| IDS.map(|id| p.not_applicable(id, why));
    if p.n() < 2 {
        return na("n < 2");
    }
    let Some(b) = p.bip() else {
        return na("not bipartite");
    };
    let (n, y, e, ell) = (p.n() as i64, b.r() as i64, p.stats().edges as i64, b.ell() as i64);
    let first = Ratio::new(y * y + e, y);
    let second = Ratio::new((n - 1) * y + ell, y);
    let mu1 = p.mu1();
    let complete = p.class().complete_bipartite;
    let class = if complete { EqualityClass::CompleteBipartite } else { EqualityClass::Other };

    let mut r1 = p.report(IDS[0], mu1, to_f64(first), eps);
    r1.equality_class = class;
    let mut r2 = p.report(IDS[1], to_f64(first), to_f64(second), eps);
    r2.holds = first <= second;
    r2.equality = first == second;
    r2.equality_class = class;
    let mut r3 = p.report(IDS[2], mu1, to_f64(second), eps);
    r3.equality &= complete;
    r3.equality_class = class;
    [r1, r2, r3]
}

/// The chained bounds `μ₁ <= |Y| + e/|Y| <= n - 1 + ℓ/|Y|`, as three reports:
/// the first inequality, the second (exact), and the composite with its
/// complete-bipartite equality class.
pub fn thm_mu1_upper(g: &Graph) -> [BoundReport; 3] {
    thm_mu1_reports(&GraphProfile::new(g), DEFAULT_EPSILON)
}

/// The case of the four-part bipartite theorem a graph falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlCase {
    /// `t >= 2` and `ℓ >= 2`: `μ_{n-1} > 1` or `μ₁ <= n-1`.
    BothSaturated,
    /// `ℓ = 1`, `t <= k-2`: `μ₁ < n-1`.
    SingleYFewX,
    /// `ℓ = 1`, `t = k-1 < n/2-1`: `μ₁ < n-1+1/n`.
    SingleYUnbalanced,
    /// `ℓ = 1`, `t = k-1 = n/2-1`: closed forms for `μ₁` and `μ_{n-1}`.
    SingleYBalanced,
    /// `t = 1`, `n >= 7`: `μ₁ < n-1+ℓ/n`.
    SingleX,
    /// `t = 0` or `ℓ = 0`: `μ₁ < n-1`.
    Unsaturated,
}

impl TlCase {
    pub fn label(&self) -> &'static str {
        match self {
            TlCase::BothSaturated => "case1",
            TlCase::SingleYFewX => "case2a",
            TlCase::SingleYUnbalanced => "case2b",
            TlCase::SingleYBalanced => "case2c",
            TlCase::SingleX => "case3",
            TlCase::Unsaturated => "case4",
        }
    }
}

/// One evaluated claim of the theorem.
#[derive(Debug, Clone, PartialEq)]
pub struct TlClaim {
    pub case: TlCase,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// For the disjunctive case: which disjunct held (`"mu_n1>1"` or `"mu1<=n-1"`).
    pub witness: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TlEvaluation {
    pub claims: Vec<TlClaim>,
    /// Summary: the claim with the least slack; `holds` is the conjunction.
    pub report: BoundReport,
}

/// Cases that apply to `(n, k, t, ℓ)`; several may apply at once.
pub fn tl_cases(n: usize, k: usize, t: usize, ell: usize) -> Vec<TlCase> {
    let mut out = Vec::new();
    if t == 0 || ell == 0 {
        out.push(TlCase::Unsaturated);
        return out;
    }
    if t >= 2 && ell >= 2 {
        out.push(TlCase::BothSaturated);
    }
    if ell == 1 {
        if t + 2 <= k {
            out.push(TlCase::SingleYFewX);
        } else if t + 1 == k && 2 * k < n {
            out.push(TlCase::SingleYUnbalanced);
        } else if t + 1 == k && 2 * k == n {
            out.push(TlCase::SingleYBalanced);
        }
    }
    if t == 1 && n >= 7 {
        out.push(TlCase::SingleX);
    }
    out
}

fn thm_tl_eval(p: &GraphProfile, eps: f64) -> TlEvaluation {
    const ID: &str = "thm_tl";
    let na = |why: &str| TlEvaluation { claims: Vec::new(), report: p.not_applicable(ID, why) };
    if p.n() < 2 {
        return na("n < 2");
    }
    let Some(b) = p.bip() else { return na("not bipartite") };
    if b.k() < 2 {
        return na("|X| < 2");
    }
    let (n, k, t, ell) = (p.n(), b.k(), b.t(), b.ell());
    let nf = n as f64;
    let (mu1, mu_n1) = (p.mu1(), p.mu_n1());
    let claims: Vec<TlClaim> = tl_cases(n, k, t, ell)
        .into_iter()
        .map(|case| {
            let strict = |lhs: f64, rhs: f64| TlClaim { case, lhs, rhs, holds: lhs <= rhs + eps, witness: None };
            match case {
                TlCase::BothSaturated => {
                    if mu_n1 > 1.0 - eps {
                        TlClaim { case, lhs: 1.0, rhs: mu_n1, holds: true, witness: Some("mu_n1>1") }
                    } else {
                        let holds = mu1 <= nf - 1.0 + eps;
                        TlClaim { case, lhs: mu1, rhs: nf - 1.0, holds, witness: holds.then_some("mu1<=n-1") }
                    }
                }
                TlCase::SingleYFewX | TlCase::Unsaturated => strict(mu1, nf - 1.0),
                TlCase::SingleYUnbalanced => strict(mu1, nf - 1.0 + 1.0 / nf),
                TlCase::SingleYBalanced => {
                    let root = (nf * nf - 4.0 * nf + 8.0).sqrt();
                    let (top, bottom) = ((nf + root) / 2.0, (nf - root) / 2.0);
                    let worst = (mu1 - top).abs().max((mu_n1 - bottom).abs());
                    TlClaim { case, lhs: mu1, rhs: top, holds: worst <= eps, witness: None }
                }
                TlCase::SingleX => strict(mu1, nf - 1.0 + ell as f64 / nf),
            }
        })
        .collect();
    let Some(binding) = claims.iter().min_by(|a, b| (a.rhs - a.lhs).total_cmp(&(b.rhs - b.lhs))) else {
        return na("no case asserts a bound (t = 1, l >= 2, n < 7)");
    };
    let mut r = p.report(ID, binding.lhs, binding.rhs, eps);
    r.holds = claims.iter().all(|c| c.holds);
    r.equality_class = p.class().primary();
    if binding.case != TlCase::SingleYBalanced {
        // the other claims are strict or disjunctive; tightness is reported, not required
        r.equality = r.slack.abs() <= eps;
    }
    r.detail = Some(
        claims
            .iter()
            .map(|c| format!("{}{}", c.case.label(), c.witness.map(|w| format!("[{w}]")).unwrap_or_default()))
            .collect::<Vec<_>>()
            .join(","),
    );
    TlEvaluation { claims, report: r }
}

/// Classifies a bipartite graph with `|X| >= 2` into the theorem's cases and checks each claim.
pub fn thm_tl_cases(g: &Graph) -> TlEvaluation {
    thm_tl_eval(&GraphProfile::new(g), DEFAULT_EPSILON)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LapSpreadEvaluation {
    /// `μ₁ - μ_{n-1} <= n - 1`.
    pub report: BoundReport,
    /// `(μ₁ + μ̄₁, 2n - 1)`.
    pub sum_form: (f64, f64),
    /// `(μ_{n-1} + μ̄_{n-1}, 1)`, to be read as `>=`.
    pub connectivity_form: (f64, f64),
    /// The three forms agree on whether the bound holds, up to `2ε` of slack translation.
    pub consistent: bool,
}

fn lap_spread_eval(p: &GraphProfile, eps: f64) -> LapSpreadEvaluation {
    const ID: &str = "lap_spread";
    if p.n() < 2 {
        return LapSpreadEvaluation {
            report: p.not_applicable(ID, "n < 2"),
            sum_form: (f64::NAN, f64::NAN),
            connectivity_form: (f64::NAN, f64::NAN),
            consistent: true,
        };
    }
    let nf = p.n() as f64;
    let spread = p.mu1() - p.mu_n1();
    let mut r = p.report(ID, spread, nf - 1.0, eps);
    let named = p.join_k1_either();
    r.equality &= named;
    r.equality_class = if named { EqualityClass::JoinK1Disconnected } else { EqualityClass::Other };
    let proven = p.bip().is_some() || p.co_bipartite() || !p.class().connected || !p.co_class().connected;
    r.status = if proven { Status::Proven } else { Status::Conjectured };

    let sum = (p.mu1() + p.co_mu1(), 2.0 * nf - 1.0);
    let conn = (p.mu_n1() + p.co_mu_n1(), 1.0);
    let slacks = [r.slack, sum.1 - sum.0, conn.0 - conn.1];
    let consistent = slacks.iter().all(|s| (s - slacks[0]).abs() <= 2.0 * eps);
    LapSpreadEvaluation { report: r, sum_form: sum, connectivity_form: conn, consistent }
}

/// `μ₁ - μ_{n-1} <= n - 1` with the two equivalent complement forms.
pub fn lap_spread_conjecture(g: &Graph) -> LapSpreadEvaluation {
    lap_spread_eval(&GraphProfile::new(g), DEFAULT_EPSILON)
}

fn mu_product_report(p: &GraphProfile, eps: f64) -> BoundReport {
    const ID: &str = "mu_product";
    if p.n() < 2 {
        return p.not_applicable(ID, "n < 2");
    }
    let n = p.n() as f64;
    let mut r = p.report(ID, p.mu1() * p.co_mu1(), n * (n - 1.0), eps);
    let named = p.join_k1_either();
    r.equality &= named;
    r.equality_class = if p.star_either() {
        EqualityClass::Star
    } else if named {
        EqualityClass::JoinK1Disconnected
    } else {
        EqualityClass::Other
    };
    let proven = p.bip().is_some() || p.co_bipartite() || !p.class().connected || !p.co_class().connected;
    r.status = if proven { Status::Proven } else { Status::Conjectured };
    r
}

/// `μ₁(G)·μ₁(Ḡ) <= n(n-1)`; proven when `G` or `Ḡ` is bipartite or disconnected.
pub fn mu_product_bound(g: &Graph) -> BoundReport {
    mu_product_report(&GraphProfile::new(g), DEFAULT_EPSILON)
}

/// `2n - 2 + x(2 - (x+1)/(n-1))` with `x = Δ - δ`.
pub fn q_sum_rhs(n: usize, spread: u64) -> Ratio<i64> {
    let (n, x) = (n as i64, spread as i64);
    Ratio::new((2 * n - 2) * (n - 1) + x * (2 * (n - 1) - x - 1), n - 1)
}

fn q_sum_reports(p: &GraphProfile, eps: f64) -> [BoundReport; 2] {
    if p.n() < 2 {
        return [p.not_applicable("q_sum", "n < 2"), p.not_applicable("q_sum_3n4", "n < 2")];
    }
    let n = p.n();
    let sum = p.q1() + p.co_q1();
    let star = p.star_either();
    let regular = p.class().regular;

    let refined = q_sum_rhs(n, p.stats().max_deg - p.stats().min_deg);
    let mut r1 = p.report("q_sum", sum, to_f64(refined), eps);
    r1.equality &= star || regular;
    r1.equality_class = if star {
        EqualityClass::Star
    } else if regular {
        EqualityClass::Regular
    } else {
        EqualityClass::Other
    };

    let mut r2 = p.report("q_sum_3n4", sum, 3.0 * n as f64 - 4.0, eps);
    r2.equality &= star;
    r2.equality_class = if star { EqualityClass::Star } else { EqualityClass::Other };
    [r1, r2]
}

/// `q₁ + q̄₁` against the refined right-hand side and against `3n - 4`.
pub fn q_sum_bound(g: &Graph) -> [BoundReport; 2] {
    q_sum_reports(&GraphProfile::new(g), DEFAULT_EPSILON)
}

fn q_product_report(p: &GraphProfile, eps: f64) -> BoundReport {
    const ID: &str = "q_product";
    if p.n() < 2 {
        return p.not_applicable(ID, "n < 2");
    }
    let n = p.n() as f64;
    let mut r = p.report(ID, p.q1() * p.co_q1(), 2.0 * n * (n - 2.0), eps);
    let star = p.star_either();
    r.equality &= star;
    r.equality_class = if star { EqualityClass::Star } else { EqualityClass::Other };
    r.status = Status::Refuted;
    r
}

/// `q₁(G)·q₁(Ḡ)` against `2n(n-2)`. The inequality is false in general; a
/// report with `holds == false` is a counterexample.
pub fn q_product_check(g: &Graph) -> BoundReport {
    q_product_report(&GraphProfile::new(g), DEFAULT_EPSILON)
}

/// Evaluates `bounds` in order on `g`.
pub fn evaluate_all(g: &Graph, bounds: &[BoundId], eps: f64) -> Vec<BoundReport> {
    let p = GraphProfile::new(g);
    bounds.iter().flat_map(|b| b.evaluate(&p, eps)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{construct, FamilySpec};

    fn g(spec: FamilySpec) -> Graph {
        construct(&spec).unwrap()
    }

    fn star(n: usize) -> Graph {
        g(FamilySpec::Star(n))
    }

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(-0.0), "0");
        assert_eq!(format_sig12(6.0), "6");
        assert_eq!(format_sig12(2.0f64.sqrt()), "1.41421356237");
        assert_eq!(format_sig12(127.48170459575758), "127.481704596");
        assert_eq!(format_sig12(-1e-9), "-1.00000000000e-9");
        assert_eq!(format_sig12(1234567.0), "1234567");
    }

    #[test]
    fn merris_on_cycle_and_k23() {
        let r = merris_bound(&Graph::cycle(5).unwrap());
        assert!(r.holds && r.equality);
        assert_eq!(r.equality_class, EqualityClass::Regular);
        assert!((r.lhs - 4.0).abs() < 1e-9 && r.rhs == 4.0);

        let r = merris_bound(&g(FamilySpec::CompleteBipartite(2, 3)));
        assert!(r.equality);
        assert_eq!(r.equality_class, EqualityClass::BipartiteSemiregular);
        assert!((r.lhs - 5.0).abs() < 1e-9 && r.rhs == 5.0);
    }

    #[test]
    fn merris_strict_on_star_plus_edge() {
        let h = star(4).add_edge(1, 2).unwrap();
        let r = merris_bound(&h);
        assert!(r.holds && !r.equality);
        assert!(r.slack > 1e-3);
    }

    #[test]
    fn das_on_complete_and_star() {
        let r = das_bound(&Graph::complete(5).unwrap());
        assert!(r.equality && r.lhs == 8.0 && r.rhs == 8.0);
        let r = das_bound(&star(6));
        assert!(r.equality);
        assert_eq!(r.equality_class, EqualityClass::Star);
    }

    #[test]
    fn das_rhs_is_exact() {
        // P_4: e=3, Δ=2, δ=1, n=4: 6/3 + 2·2/3 + 1·(1 - 2/3) = 2 + 4/3 + 1/3 = 11/3
        let s = degree_stats(&Graph::path(4).unwrap());
        assert_eq!(das_rhs(&s), Ratio::new(11, 3));
    }

    #[test]
    fn thm_bip_examples() {
        let r = thm_bip_lower(&star(7));
        assert!(r.equality && (r.lhs - 1.0).abs() < 1e-15);
        assert_eq!(r.equality_class, EqualityClass::Star);

        let r = thm_bip_lower(&g(FamilySpec::CompleteBipartite(3, 4)));
        assert_eq!(r.lhs, 1.0);
        assert!((r.rhs - 3.0).abs() < 1e-9 && !r.equality);

        let r = thm_bip_lower(&g(FamilySpec::TheoremBipH { n: 8, k: 3, t: 2, ell: 2 }));
        assert_eq!(r.lhs, 2.0 / 5.0);
        assert!(r.holds && !r.equality);

        assert!(!thm_bip_lower(&Graph::complete(3).unwrap()).applicable());
        // P_4: X = {0, 2}, vertex 2 sees all of Y, vertex 1 sees all of X
        let r = thm_bip_lower(&Graph::path(4).unwrap());
        assert_eq!(r.lhs, 0.5);
        assert!((r.rhs - (2.0 - 2f64.sqrt())).abs() < 1e-9 && r.holds);
        assert!(!thm_bip_lower(&Graph::cycle(6).unwrap()).applicable());
    }

    #[test]
    fn thm_mu1_examples() {
        let [a, b, c] = thm_mu1_upper(&g(FamilySpec::CompleteBipartite(2, 3)));
        assert!(a.equality && b.equality && c.equality);
        assert_eq!(c.equality_class, EqualityClass::CompleteBipartite);
        assert_eq!((a.rhs, b.rhs), (5.0, 5.0));

        let [_, _, c] = thm_mu1_upper(&star(5));
        assert!(c.equality && c.rhs == 5.0);

        let [a, b, c] = thm_mu1_upper(&Graph::path(4).unwrap());
        assert_eq!(a.rhs, 3.5);
        assert!((a.lhs - (2.0 + 2f64.sqrt())).abs() < 1e-9);
        assert!(!a.equality && b.holds && !c.equality);
    }

    #[test]
    fn tl_balanced_case_closed_forms() {
        let ev = thm_tl_cases(&g(FamilySpec::TheoremBipH { n: 8, k: 4, t: 3, ell: 1 }));
        assert_eq!(ev.claims.len(), 1);
        assert_eq!(ev.claims[0].case, TlCase::SingleYBalanced);
        assert!(ev.report.holds && ev.report.equality);
        assert!((ev.report.lhs - (8.0 + 40f64.sqrt()) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn tl_unsaturated_case() {
        // C_6: k = 3, every vertex of degree 2 < 3
        let ev = thm_tl_cases(&Graph::cycle(6).unwrap());
        assert_eq!(ev.claims[0].case, TlCase::Unsaturated);
        assert!(ev.report.holds && ev.report.lhs < 5.0 - 1e-3);
    }

    #[test]
    fn tl_single_x_case() {
        let ev = thm_tl_cases(&g(FamilySpec::TheoremBipH { n: 10, k: 4, t: 1, ell: 3 }));
        assert_eq!(ev.claims.iter().map(|c| c.case).collect::<Vec<_>>(), vec![TlCase::SingleX]);
        assert!(ev.report.holds);
        assert!((ev.report.rhs - 9.3).abs() < 1e-12);
    }

    #[test]
    fn lap_spread_examples() {
        let ev = lap_spread_conjecture(&star(6));
        assert!(ev.report.equality && ev.consistent);
        assert_eq!(ev.report.equality_class, EqualityClass::JoinK1Disconnected);
        let ev = lap_spread_conjecture(&Graph::complete(5).unwrap());
        assert!(ev.report.lhs.abs() < 1e-9 && !ev.report.equality);
        let ev = lap_spread_conjecture(&Graph::path(4).unwrap());
        assert!((ev.report.lhs - 2.0 * 2f64.sqrt()).abs() < 1e-9);
        assert!(ev.consistent);
    }

    #[test]
    fn mu_product_examples() {
        let r = mu_product_bound(&star(4));
        assert!(r.equality && (r.lhs - 12.0).abs() < 1e-9);
        assert_eq!(r.equality_class, EqualityClass::Star);
        let r = mu_product_bound(&Graph::path(4).unwrap());
        assert!((r.lhs - (6.0 + 4.0 * 2f64.sqrt())).abs() < 1e-9 && !r.equality);
        assert!(mu_product_bound(&Graph::complete(4).unwrap()).lhs.abs() < 1e-9);
    }

    #[test]
    fn q_sum_examples() {
        let [refined, coarse] = q_sum_bound(&star(4));
        assert!(refined.equality && coarse.equality);
        assert!((coarse.lhs - 8.0).abs() < 1e-9);
        let [refined, coarse] = q_sum_bound(&Graph::cycle(5).unwrap());
        assert!(refined.equality && !coarse.equality);
        assert_eq!(refined.equality_class, EqualityClass::Regular);
        assert!((refined.lhs - 8.0).abs() < 1e-9);
    }

    #[test]
    fn q_product_counterexample_at_nine() {
        let r = q_product_check(&g(FamilySpec::HnFamily(9)));
        assert!(!r.holds);
        assert!((r.lhs - 6.0 * (11.0 + 105f64.sqrt())).abs() < 1e-8);
        assert_eq!(r.rhs, 126.0);
        assert_eq!(r.status, Status::Refuted);
        let r = q_product_check(&star(7));
        assert!(r.equality && r.holds);
        assert!(q_product_check(&Graph::complete(4).unwrap()).lhs.abs() < 1e-9);
    }

    #[test]
    fn classifier_examples() {
        let j = g("join(empty:1;union(complete:2;complete:1))".parse().unwrap());
        assert_eq!(equality_classifier(&j).primary(), EqualityClass::JoinK1Disconnected);
        let c6 = equality_classifier(&Graph::cycle(6).unwrap());
        assert_eq!(c6.primary(), EqualityClass::Regular);
        assert!(c6.bipartite_semiregular);
        assert_eq!(equality_classifier(&Graph::path(4).unwrap()).primary(), EqualityClass::Other);
        assert!(is_star(&Graph::complete(2).unwrap()));
        assert!(!is_join_k1_disconnected(&Graph::complete(2).unwrap()));
        assert!(is_join_k1_disconnected(&star(3)));
        // two disjoint P_3's are semiregular with degrees {1, 2}
        let two_p3 = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert!(is_bipartite_semiregular(&two_p3));
        assert!(!is_bipartite_semiregular(&Graph::path(4).unwrap()));
    }

    #[test]
    fn bound_ids_parse() {
        assert_eq!(parse_bound_list("all").unwrap().len(), 10);
        assert_eq!(parse_bound_list("q_sum_3n4,q_sum,das").unwrap(), vec![BoundId::QSum, BoundId::Das]);
        assert!(matches!(parse_bound_list("nope"), Err(Error::UnknownBound(_))));
    }

    #[test]
    fn report_json_has_fixed_fields() {
        let json = q_product_check(&star(4)).to_json();
        let names = ["bound_id", "n", "lhs", "rhs", "slack", "holds", "equality", "equality_class", "graph6"];
        let at: Vec<usize> = names.iter().map(|k| json.find(&format!("\"{k}\":")).unwrap()).collect();
        assert!(at.windows(2).all(|w| w[0] < w[1]), "{json}");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v.as_object().unwrap().len(), names.len());
        assert_eq!(v["rhs"], "16");
        let na = thm_bip_lower(&Graph::complete(3).unwrap());
        let v: serde_json::Value = serde_json::from_str(&na.to_json()).unwrap();
        assert!(v["lhs"].is_null());
        assert_eq!(v["equality_class"], "NotApplicable");
    }
}
