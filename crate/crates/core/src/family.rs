//! Named graph families and their constructors.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A recipe for one of the graph families used by the bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// `K_{1,n-1}`; vertex 0 is the centre.
    Star(usize),
    Path(usize),
    Cycle(usize),
    EmptyGraph(usize),
    Join(Box<FamilySpec>, Box<FamilySpec>),
    DisjointUnion(Box<FamilySpec>, Box<FamilySpec>),
    /// The four-block bipartite graph on `X₀ ∪ (X∖X₀) ∪ Y₀ ∪ (Y∖Y₀)`.
    TheoremBipH {
        n: usize,
        k: usize,
        t: usize,
        ell: usize,
    },
    /// `K̄_{n-k} ∨ K_k` with `k = (n - s)/6`, `s ∈ {-3, ..., 2}`.
    HnFamily(usize),
}

/// The clique size `k` used by `H_n`: `n = 6k + s` with `-3 <= s <= 2`.
pub fn hn_clique_size(n: usize) -> Result<usize> {
    let k = (n + 3) / 6;
    if k == 0 || n < 2 {
        return Err(Error::InvalidFamily(format!("H_n needs a positive clique size; n = {n} gives k = 0")));
    }
    Ok(k)
}

/// `K̄_{n-k} ∨ K_k`: vertices `0..n-k` independent, `n-k..n` a clique.
pub fn split_join(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || k >= n {
        return Err(Error::InvalidFamily(format!("split join needs 1 <= k < n, got n = {n}, k = {k}")));
    }
    Graph::empty(n - k)?.join(&Graph::complete(k)?)
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::TheoremBipH { n, k, t, ell } => {
                if !(2 <= k && 2 * k <= n && 1 <= t && t <= k && 1 <= ell && ell <= n - k) {
                    return Err(Error::InvalidFamily(format!(
                        "TheoremBipH needs 2 <= k <= n/2, 1 <= t <= k, 1 <= l <= n-k; got n={n} k={k} t={t} l={ell}"
                    )));
                }
            }
            FamilySpec::HnFamily(n) => {
                hn_clique_size(n)?;
            }
            FamilySpec::Star(n) if n < 1 => {
                return Err(Error::InvalidFamily("star needs at least one vertex".into()));
            }
            FamilySpec::Cycle(n) if n < 3 => {
                return Err(Error::InvalidFamily(format!("cycle needs n >= 3, got {n}")));
            }
            FamilySpec::Join(ref a, ref b) | FamilySpec::DisjointUnion(ref a, ref b) => {
                a.validate()?;
                b.validate()?;
            }
            _ => {}
        }
        Ok(())
    }

    /// Number of vertices of the constructed graph.
    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Complete(n)
            | FamilySpec::Star(n)
            | FamilySpec::Path(n)
            | FamilySpec::Cycle(n)
            | FamilySpec::EmptyGraph(n)
            | FamilySpec::HnFamily(n) => *n,
            FamilySpec::CompleteBipartite(r, s) => r + s,
            FamilySpec::Join(a, b) | FamilySpec::DisjointUnion(a, b) => a.order() + b.order(),
            FamilySpec::TheoremBipH { n, .. } => *n,
        }
    }
}

/// Builds the graph described by `spec`.
pub fn construct(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    match spec {
        FamilySpec::Complete(n) => Graph::complete(*n),
        FamilySpec::CompleteBipartite(r, s) => Graph::empty(*r)?.join(&Graph::empty(*s)?),
        FamilySpec::Star(n) => Graph::empty(1)?.join(&Graph::empty(n - 1)?),
        FamilySpec::Path(n) => Graph::path(*n),
        FamilySpec::Cycle(n) => Graph::cycle(*n),
        FamilySpec::EmptyGraph(n) => Graph::empty(*n),
        FamilySpec::Join(a, b) => construct(a)?.join(&construct(b)?),
        FamilySpec::DisjointUnion(a, b) => construct(a)?.disjoint_union(&construct(b)?),
        &FamilySpec::TheoremBipH { n, k, t, ell } => {
            // X₀ = 0..t, X∖X₀ = t..k, Y₀ = k..k+ℓ, Y∖Y₀ = k+ℓ..n
            let mut g = Graph::empty(n)?;
            for x in 0..t {
                for y in k..n {
                    g.set_edge(x, y, true);
                }
            }
            for x in t..k {
                for y in k..k + ell {
                    g.set_edge(x, y, true);
                }
            }
            Ok(g)
        }
        &FamilySpec::HnFamily(n) => split_join(n, hn_clique_size(n)?),
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite(r, s) => write!(f, "kbip:{r},{s}"),
            FamilySpec::Star(n) => write!(f, "star:{n}"),
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::EmptyGraph(n) => write!(f, "empty:{n}"),
            FamilySpec::Join(a, b) => write!(f, "join({a};{b})"),
            FamilySpec::DisjointUnion(a, b) => write!(f, "union({a};{b})"),
            FamilySpec::TheoremBipH { n, k, t, ell } => write!(f, "bip-h:{n},{k},{t},{ell}"),
            FamilySpec::HnFamily(n) => write!(f, "hn:{n}"),
        }
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::InvalidFamily(format!("expected a nonnegative integer, got `{s}`")))
}

fn parse_range(s: &str) -> Result<Vec<usize>> {
    match s.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (parse_usize(lo)?, parse_usize(hi)?);
            if lo > hi {
                return Err(Error::InvalidFamily(format!("empty range {lo}..{hi}")));
            }
            Ok((lo..=hi).collect())
        }
        None => Ok(vec![parse_usize(s)?]),
    }
}

/// Splits `a;b` at the top-level semicolon, ignoring ones nested in parentheses.
fn split_pair(s: &str) -> Result<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => return Ok((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    Err(Error::InvalidFamily(format!("expected `a;b`, got `{s}`")))
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let specs = parse_family_range(s)?;
        match specs.as_slice() {
            [one] => Ok(one.clone()),
            _ => Err(Error::InvalidFamily(format!("`{s}` describes more than one graph"))),
        }
    }
}

/// Parses a family with an optional inclusive parameter range, e.g. `hn:6..30`,
/// `star:5`, `kbip:2,3`, `bip-h:8,3,1,2`, `join(empty:1;union(complete:2;complete:1))`.
/// Only one-parameter families accept a range.
pub fn parse_family_range(s: &str) -> Result<Vec<FamilySpec>> {
    let s = s.trim();
    for (prefix, is_join) in [("join(", true), ("union(", false)] {
        if let Some(inner) = s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')) {
            let (a, b) = split_pair(inner)?;
            let (a, b): (FamilySpec, FamilySpec) = (a.parse()?, b.parse()?);
            let spec = if is_join {
                FamilySpec::Join(Box::new(a), Box::new(b))
            } else {
                FamilySpec::DisjointUnion(Box::new(a), Box::new(b))
            };
            spec.validate()?;
            return Ok(vec![spec]);
        }
    }
    let (name, params) =
        s.split_once(':').ok_or_else(|| Error::InvalidFamily(format!("expected `name:params`, got `{s}`")))?;
    let one: fn(usize) -> FamilySpec = match name {
        "complete" => FamilySpec::Complete,
        "star" => FamilySpec::Star,
        "path" => FamilySpec::Path,
        "cycle" => FamilySpec::Cycle,
        "empty" => FamilySpec::EmptyGraph,
        "hn" => FamilySpec::HnFamily,
        "kbip" => {
            let p = params.split(',').map(parse_usize).collect::<Result<Vec<_>>>()?;
            let [r, s] = p[..] else {
                return Err(Error::InvalidFamily(format!("kbip takes two parameters, got `{params}`")));
            };
            return Ok(vec![FamilySpec::CompleteBipartite(r, s)]);
        }
        "bip-h" => {
            let p = params.split(',').map(parse_usize).collect::<Result<Vec<_>>>()?;
            let [n, k, t, ell] = p[..] else {
                return Err(Error::InvalidFamily(format!("bip-h takes four parameters, got `{params}`")));
            };
            let spec = FamilySpec::TheoremBipH { n, k, t, ell };
            spec.validate()?;
            return Ok(vec![spec]);
        }
        other => return Err(Error::InvalidFamily(format!("unknown family `{other}`"))),
    };
    let specs: Vec<FamilySpec> = parse_range(params)?.into_iter().map(one).collect();
    for spec in &specs {
        spec.validate()?;
    }
    Ok(specs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h6_is_the_star() {
        let g = construct(&FamilySpec::HnFamily(6)).unwrap();
        let mut d = g.degrees();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 1, 1, 5]);
    }

    #[test]
    fn hn_clique_sizes() {
        let ks: Vec<_> = (3..=15).map(|n| hn_clique_size(n).unwrap()).collect();
        assert_eq!(ks, vec![1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3]);
        assert!(hn_clique_size(2).is_err());
    }

    #[test]
    fn theorem_bip_h_degrees() {
        let (n, k, t, ell) = (9, 3, 2, 4);
        let g = construct(&FamilySpec::TheoremBipH { n, k, t, ell }).unwrap();
        let d = g.degrees();
        assert!(d[..t].iter().all(|&x| x == n - k));
        assert!(d[t..k].iter().all(|&x| x == ell));
        assert!(d[k..k + ell].iter().all(|&x| x == k));
        assert!(d[k + ell..].iter().all(|&x| x == t));
        assert_eq!(g.edge_count(), t * (n - k) + (k - t) * ell);
    }

    #[test]
    fn theorem_bip_h_parameter_checks() {
        for bad in [(8, 1, 1, 2), (8, 5, 1, 2), (8, 3, 0, 2), (8, 3, 4, 2), (8, 3, 1, 0), (8, 3, 1, 6)] {
            let (n, k, t, ell) = bad;
            assert!(construct(&FamilySpec::TheoremBipH { n, k, t, ell }).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn join_of_k1_with_disconnected() {
        let spec: FamilySpec = "join(empty:1;union(complete:2;complete:1))".parse().unwrap();
        let g = construct(&spec).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.degrees(), vec![3, 2, 2, 1]);
        assert_eq!(spec.to_string(), "join(empty:1;union(complete:2;complete:1))");
    }

    #[test]
    fn parses_ranges_and_rejects_junk() {
        assert_eq!(parse_family_range("hn:6..8").unwrap().len(), 3);
        assert_eq!("kbip:2,3".parse::<FamilySpec>().unwrap(), FamilySpec::CompleteBipartite(2, 3));
        assert!(parse_family_range("hn:2").is_err());
        assert!(parse_family_range("bogus:3").is_err());
        assert!(parse_family_range("kbip:2").is_err());
        assert!("star:3..4".parse::<FamilySpec>().is_err());
    }
}
