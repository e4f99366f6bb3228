//! The ten verification criteria run by `verify-all`, one report each.

use std::time::Duration;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cyclotomic::FieldDescriptor;
use crate::error::Result;
use crate::gp_enum::{census, SearchConfig};
use crate::groupring::fixed_ring;
use crate::hopf::{base_change_sigma, dual_pairing, e_basis, fixed_field_check, measuring_check};
use crate::linalg::Echelon;
use crate::profinite::inverse_system_check;
use crate::rat::Rat;
use crate::report::{params, timed, Outcome, Report};
use crate::smash::{hom_subalgebra_check, iso_check, smash_basis, to_end_matrix, SmashElt, DEFAULT_SEED};
use crate::variants::{variant_nu_check, variants_check};
use crate::GroupRingElt;

/// Default `(p, n)` instances.
pub const DEFAULT_INSTANCES: [(u64, u32); 5] = [(3, 1), (3, 2), (5, 1), (7, 1), (3, 3)];

/// Claim identifiers in run order.
pub const CLAIMS: [&str; 10] = [
    "dual_basis",
    "fixed_ring",
    "measuring",
    "fixed_field",
    "smash_end_iso",
    "base_change_sigma",
    "inverse_system",
    "hom_subalgebra",
    "variants",
    "census",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// `(p, n)` instances for the criteria that range over the instance matrix.
    pub instances: Vec<(u64, u32)>,
    pub radicand: Rat,
    pub seed: u64,
    /// Random product pairs per smash-product instance.
    pub samples: usize,
    /// Truncation level of the inverse-system suite.
    pub level: u32,
    pub timing: bool,
    pub census_budget: Option<Duration>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            instances: DEFAULT_INSTANCES.to_vec(),
            radicand: Rat::from_int(2),
            seed: DEFAULT_SEED,
            samples: 64,
            level: 3,
            timing: false,
            census_budget: None,
        }
    }
}

impl SuiteConfig {
    /// The instances among `allowed`, or all of `allowed` when the matrix
    /// is the default one.
    fn restrict(&self, allowed: &[(u64, u32)]) -> Vec<(u64, u32)> {
        if self.instances == DEFAULT_INSTANCES {
            allowed.to_vec()
        } else {
            self.instances.clone()
        }
    }

    fn instance_params(&self, instances: &[(u64, u32)]) -> std::collections::BTreeMap<String, Value> {
        params([
            ("instances", json!(instances.iter().map(|(p, n)| json!({ "p": p, "n": n })).collect::<Vec<_>>())),
            ("a", json!(self.radicand)),
        ])
    }
}

fn per_instance(instances: &[(u64, u32)], f: impl Fn(u64, u32) -> Result<Outcome> + Sync) -> Result<Outcome> {
    let parts = instances.par_iter().map(|&(p, n)| Ok((format!("p{p}_n{n}"), f(p, n)?))).collect::<Result<Vec<_>>>()?;
    Ok(Outcome::all(parts))
}

/// `ê_i(σ^k) = δ_{ik}` for all `i, k`.
pub fn dual_basis_outcome(p: u64, n: u32) -> Result<Outcome> {
    let pn = FieldDescriptor::new(p, n)?.order();
    let mut off = Vec::new();
    for i in 0..pn {
        for k in 0..pn {
            let v = dual_pairing(i, k, p, n)?;
            let expected = if i == k { Rat::one() } else { Rat::zero() };
            if v != expected {
                off.push(json!({ "i": i, "k": k, "value": v }));
            }
        }
    }
    Ok(Outcome::check(off.is_empty(), json!({ "size": pn }), || json!({ "entries": off })))
}

/// The fixed ring has dimension `p^n` and the same span as the `e_{n,i}`.
pub fn fixed_ring_outcome(p: u64, n: u32) -> Result<Outcome> {
    let field = FieldDescriptor::new(p, n)?;
    let basis = fixed_ring(p, n)?;
    let dim = GroupRingElt::q_dimension(field, n);
    let mut fixed = Echelon::new(dim);
    for v in &basis {
        fixed.insert(&v.to_sparse());
    }
    let mut es = Echelon::new(dim);
    let mut missing = Vec::new();
    for i in 0..field.order() {
        let e = e_basis(p, n, i)?.to_sparse();
        if !fixed.contains(&e) {
            missing.push(i);
        }
        es.insert(&e);
    }
    let data = json!({ "kernel_dimension": basis.len(), "span_rank": es.rank(), "ambient": dim });
    let ok = basis.len() as u64 == field.order() && es.rank() == basis.len() && missing.is_empty();
    Ok(Outcome::check(ok, data, || json!({ "e_not_fixed": missing })))
}

/// The nine matrices `l_{w^j} e_i` for `p = 3`, `n = 1`, `j`-major, with the
/// radicand written `a`; rows separated by `\\`, entries by `&`.
pub fn render_nine_matrices() -> String {
    let symbolic = |x: &SmashElt| {
        let with_a = to_end_matrix(x);
        let with_one = to_end_matrix(&SmashElt::from_terms(3, 1, Rat::one(), x.terms().clone()));
        let size = with_a.size();
        (0..size)
            .map(|r| {
                (0..size)
                    .map(|c| {
                        let v = with_one.get(r, c);
                        let plain = if v.is_integer() { v.numer().to_string() } else { v.to_string() };
                        match (with_a.get(r, c) != v, v.is_one()) {
                            (true, true) => "a".to_string(),
                            (true, false) => format!("{plain}a"),
                            (false, _) => plain,
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("&")
            })
            .collect::<Vec<_>>()
            .join("\\\\")
    };
    smash_basis(3, 1, &Rat::from_int(2)).iter().map(symbolic).collect::<Vec<_>>().join("\n")
}

/// The nine matrices as displayed, whitespace removed.
pub const NINE_MATRICES: &str = "1&0&0\\\\0&0&0\\\\0&0&0
0&0&0\\\\0&1&0\\\\0&0&0
0&0&0\\\\0&0&0\\\\0&0&1
0&0&0\\\\1&0&0\\\\0&0&0
0&0&0\\\\0&0&0\\\\0&1&0
0&0&a\\\\0&0&0\\\\0&0&0
0&0&0\\\\0&0&0\\\\1&0&0
0&a&0\\\\0&0&0\\\\0&0&0
0&0&0\\\\0&0&a\\\\0&0&0";

/// `Σ_i ζ_n^{i p^{n-m}} e_{n,i} = σ^{p^{n-m}}` with coefficients in `Q(ζ_m)`.
pub fn base_change_outcome(p: u64, n: u32, m: u32) -> Result<Outcome> {
    let (coeffs, descends) = base_change_sigma(p, n, m)?;
    let data = json!({ "coefficients": coeffs.len(), "descends": descends });
    Ok(Outcome::check(descends, data.clone(), || data))
}

pub fn census_outcome(p: u64, n: u32, r: u32, budget: Option<Duration>) -> Result<Outcome> {
    let config = SearchConfig { budget, ..SearchConfig::default() };
    Ok(census(p, n, r, &config)?.to_outcome())
}

/// Runs criterion `k` (1-based).
pub fn run_criterion(k: usize, config: &SuiteConfig) -> Report {
    let a = config.radicand.clone();
    let t = config.timing;
    match k {
        1 => {
            let inst = config.instances.clone();
            timed(CLAIMS[0], config.instance_params(&inst), t, || per_instance(&inst, dual_basis_outcome))
        }
        2 => {
            let inst = config.instances.clone();
            timed(CLAIMS[1], config.instance_params(&inst), t, || per_instance(&inst, fixed_ring_outcome))
        }
        3 => {
            let inst = config.restrict(&[(3, 1), (3, 2), (5, 1)]);
            timed(CLAIMS[2], config.instance_params(&inst), t, || per_instance(&inst, |p, n| measuring_check(p, n, &a)))
        }
        4 => {
            let inst = config.instances.clone();
            timed(CLAIMS[3], config.instance_params(&inst), t, || {
                per_instance(&inst, |p, n| fixed_field_check(p, n, &a))
            })
        }
        5 => {
            let inst = config.restrict(&[(3, 1), (3, 2), (5, 1)]);
            let mut prm = config.instance_params(&inst);
            prm.insert("seed".into(), json!(config.seed));
            timed(CLAIMS[4], prm, t, || {
                let iso = per_instance(&inst, |p, n| iso_check(p, n, &a, config.seed, config.samples))?;
                let rendered = render_nine_matrices();
                let display =
                    Outcome::check(rendered == NINE_MATRICES, Value::Null, || json!({ "rendered": rendered }));
                Ok(Outcome::all(vec![("isomorphism", iso), ("nine_matrices", display)]))
            })
        }
        6 => {
            let triples = [(3u64, 2u32, 1u32), (3, 3, 1), (3, 3, 2), (5, 2, 1)];
            let prm = params([(
                "instances",
                json!(triples.iter().map(|(p, n, m)| json!({ "p": p, "n": n, "m": m })).collect::<Vec<_>>()),
            )]);
            timed(CLAIMS[5], prm, t, || {
                let parts = triples
                    .iter()
                    .map(|&(p, n, m)| Ok((format!("p{p}_n{n}_m{m}"), base_change_outcome(p, n, m)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Outcome::all(parts))
            })
        }
        7 => {
            let primes = [3u64, 5];
            let level = config.level;
            timed(CLAIMS[6], params([("p", json!(primes)), ("L", json!(level))]), t, || {
                let parts = primes
                    .par_iter()
                    .map(|&p| Ok((format!("p{p}"), inverse_system_check(p, level)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Outcome::all(parts))
            })
        }
        8 => {
            let pairs = [(1u32, 2u32), (2, 1), (2, 2)];
            let prm = params([
                ("p", json!(3)),
                ("instances", json!(pairs.iter().map(|(n, m)| json!({ "n": n, "m": m })).collect::<Vec<_>>())),
                ("a", json!(a)),
            ]);
            timed(CLAIMS[7], prm, t, || {
                let parts = pairs
                    .iter()
                    .map(|&(n, m)| Ok((format!("n{n}_m{m}"), hom_subalgebra_check(n, m, 3, &a)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Outcome::all(parts))
            })
        }
        9 => timed(CLAIMS[8], params([("p", json!(3)), ("n", json!(2)), ("a", json!(a))]), t, || {
            Ok(Outcome::all(vec![
                ("structures", variants_check(3, 2, &a)?),
                ("inverse_system", variant_nu_check(3, 3)?),
            ]))
        }),
        10 => {
            let cases = [(3u64, 1u32, 0u32), (3, 2, 0), (3, 2, 1)];
            let prm = params([(
                "instances",
                json!(cases.iter().map(|(p, n, r)| json!({ "p": p, "n": n, "r": r })).collect::<Vec<_>>()),
            )]);
            timed(CLAIMS[9], prm, t, || {
                let parts = cases
                    .iter()
                    .map(|&(p, n, r)| Ok((format!("p{p}_n{n}_r{r}"), census_outcome(p, n, r, config.census_budget)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Outcome::all(parts))
            })
        }
        _ => Report::skipped(&format!("criterion_{k}"), params([]), "no such criterion"),
    }
}

/// All ten criteria, concurrently, reported in order.
pub fn verify_all(config: &SuiteConfig) -> Vec<Report> {
    (1..=CLAIMS.len()).into_par_iter().map(|k| run_criterion(k, config)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_matrices_match_display() {
        assert_eq!(render_nine_matrices(), NINE_MATRICES);
    }

    #[test]
    fn small_instances() {
        assert!(dual_basis_outcome(3, 2).unwrap().passed);
        assert!(fixed_ring_outcome(3, 2).unwrap().passed);
        assert!(base_change_outcome(3, 2, 1).unwrap().passed);
    }

    #[test]
    fn unknown_criterion_is_skipped() {
        let r = run_criterion(11, &SuiteConfig::default());
        assert_eq!(r.status, crate::report::Status::Skipped);
    }
}
