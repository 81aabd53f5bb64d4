//! Monodromy eigenspace vanishing report for a projective arrangement.
//!
//! For each order `k ≥ 2` dividing `n + 1` the report lists every verdict
//! the available criteria support:
//!
//! * Libgober: `k > 2` and some line has `μ(L, k) = 0`: the eigenspace vanishes.
//! * modular vanishing: `k = p^ℓ`, the arrangement is essential and some
//!   line has `μ(L, p) ≤ 1`: the eigenspace vanishes.
//! * modular bound: `k = p^ℓ`, so `dim H¹(F)_λ ≤ β₁(A, ν) over F_p`.
//!
//! The trivial eigenspace always has dimension `n`.

use serde::Serialize;

use crate::aomoto::beta1_nu;
use crate::arrangement::{is_essential, mu, ProjArrangement};
use crate::par::{self, Execution};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EigenvalueOrder {
    pub k: u64,
    pub prime_power: Option<PrimePower>,
}

fn prime_power(k: u64) -> Option<PrimePower> {
    let p = (2..=k).find(|d| k.is_multiple_of(*d))?;
    let mut rest = k;
    let mut exponent = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        exponent += 1;
    }
    (rest == 1).then_some(PrimePower { prime: p, exponent })
}

/// All divisors `k ≥ 2` of `n + 1`.
pub fn orders(n_plus_1: usize) -> Result<Vec<EigenvalueOrder>> {
    if n_plus_1 < 3 {
        return Err(Error::BadDegree(n_plus_1));
    }
    let d = n_plus_1 as u64;
    Ok((2..=d)
        .filter(|k| d.is_multiple_of(*k))
        .map(|k| EigenvalueOrder { k, prime_power: prime_power(k) })
        .collect())
}

/// Distinct primes dividing `n + 1`, ascending.
pub fn prime_divisors(n_plus_1: usize) -> Vec<u64> {
    let d = n_plus_1 as u64;
    (2..=d).filter(|&k| d.is_multiple_of(k) && prime_power(k).is_some_and(|pp| pp.exponent == 1)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuTable {
    /// Column labels: every `k ≥ 2` dividing `n + 1`.
    pub ks: Vec<u64>,
    /// `rows[i][c] = μ(L_i, ks[c])`.
    pub rows: Vec<Vec<usize>>,
}

impl MuTable {
    pub fn get(&self, line: usize, k: u64) -> Option<usize> {
        let c = self.ks.iter().position(|&x| x == k)?;
        self.rows.get(line).map(|r| r[c])
    }

    fn column_min(&self, k: u64) -> Option<(usize, usize)> {
        let c = self.ks.iter().position(|&x| x == k)?;
        // first line achieving the minimum
        self.rows.iter().enumerate().map(|(i, r)| (r[c], i)).min().map(|(m, i)| (i, m))
    }
}

pub fn mu_table(arr: &ProjArrangement) -> MuTable {
    let ks: Vec<u64> = orders(arr.len()).expect("arrangements have ≥ 3 lines").iter().map(|o| o.k).collect();
    let rows = (0..arr.len())
        .map(|i| ks.iter().map(|&k| mu(arr, i, k).expect("valid line and k")).collect())
        .collect();
    MuTable { ks, rows }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRecord {
    pub prime: u64,
    pub min_mu: usize,
    pub witness_line: usize,
    /// β₁(A, ν) over F_p with the witness line at infinity.
    pub beta1: usize,
    /// β₁ for every choice of line at infinity, by line index.
    pub beta1_by_infinity: Vec<usize>,
    pub deconing_invariant: bool,
    pub modular_vanishing_applicable: bool,
    pub modular_vanishing_consistent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// `k > 2` and `μ(L_line, k) = 0`.
    VanishesByLibgober { line: usize },
    /// `k = p^ℓ`, essential, `μ(L_line, p) ≤ 1`.
    VanishesByThm13 { line: usize },
    /// `k = p^ℓ`: `dim H¹(F)_λ ≤ bound`.
    BoundedByPs { bound: usize },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderRecord {
    pub k: u64,
    pub prime_power: Option<PrimePower>,
    pub verdicts: Vec<Verdict>,
}

impl OrderRecord {
    pub fn vanishes(&self) -> bool {
        self.verdicts.iter().any(|v| {
            matches!(
                v,
                Verdict::VanishesByLibgober { .. }
                    | Verdict::VanishesByThm13 { .. }
                    | Verdict::BoundedByPs { bound: 0 }
            )
        })
    }

    pub fn ps_bound(&self) -> Option<usize> {
        self.verdicts.iter().find_map(|v| match v {
            Verdict::BoundedByPs { bound } => Some(*bound),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    /// `n + 1`, the number of lines.
    pub degree: usize,
    pub essential: bool,
    #[serde(skip)]
    pub trivial_eigenspace_dim: usize,
    pub mu_table: MuTable,
    pub primes: Vec<PrimeRecord>,
    pub orders: Vec<OrderRecord>,
}

/// A violated internal consistency property of a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Essential, `min μ(·, p) ≤ 1`, yet β₁ ≠ 0.
    ModularVanishing { prime: u64, beta1: usize },
    DeconingDependence { prime: u64, values: Vec<usize> },
    /// Modular vanishing claimed but the modular bound is nonzero.
    BoundIncoherent { k: u64 },
}

impl VanishingReport {
    pub fn prime(&self, p: u64) -> Option<&PrimeRecord> {
        self.primes.iter().find(|r| r.prime == p)
    }

    pub fn order(&self, k: u64) -> Option<&OrderRecord> {
        self.orders.iter().find(|r| r.k == k)
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for r in &self.primes {
            if !r.modular_vanishing_consistent {
                out.push(Violation::ModularVanishing { prime: r.prime, beta1: r.beta1 });
            }
            if !r.deconing_invariant {
                out.push(Violation::DeconingDependence {
                    prime: r.prime,
                    values: r.beta1_by_infinity.clone(),
                });
            }
        }
        for o in &self.orders {
            let thm13 = o.verdicts.iter().any(|v| matches!(v, Verdict::VanishesByThm13 { .. }));
            if thm13 && o.ps_bound() != Some(0) {
                out.push(Violation::BoundIncoherent { k: o.k });
            }
        }
        out
    }
}

pub fn report(arr: &ProjArrangement) -> Result<VanishingReport> {
    report_with(arr, Execution::default())
}

pub fn report_with(arr: &ProjArrangement, exec: Execution) -> Result<VanishingReport> {
    let degree = arr.len();
    let essential = is_essential(arr);
    let table = mu_table(arr);

    let primes = prime_divisors(degree);
    let infinities: Vec<usize> = (0..degree).collect();
    let mut jobs = Vec::with_capacity(primes.len() * degree);
    for &p in &primes {
        jobs.extend(infinities.iter().map(|&i| (p, i)));
    }
    let betas = par::try_map(exec, &jobs, |&(p, i)| beta1_nu(arr, i, p).map(|r| r.value))?;

    let prime_records: Vec<PrimeRecord> = primes
        .iter()
        .zip(betas.chunks(degree))
        .map(|(&p, by_inf)| {
            let (witness_line, min_mu) = table.column_min(p).expect("p divides n+1");
            let beta1 = by_inf[witness_line];
            let applicable = essential && min_mu <= 1;
            PrimeRecord {
                prime: p,
                min_mu,
                witness_line,
                beta1,
                beta1_by_infinity: by_inf.to_vec(),
                deconing_invariant: by_inf.iter().all(|&b| b == beta1),
                modular_vanishing_applicable: applicable,
                modular_vanishing_consistent: !applicable || beta1 == 0,
            }
        })
        .collect();

    let orders = orders(degree)?
        .into_iter()
        .map(|o| {
            let mut verdicts = Vec::new();
            if o.k > 2 {
                if let Some((line, 0)) = table.column_min(o.k) {
                    verdicts.push(Verdict::VanishesByLibgober { line });
                }
            }
            if let Some(pp) = o.prime_power {
                let rec = prime_records.iter().find(|r| r.prime == pp.prime).expect("prime record");
                if rec.modular_vanishing_applicable {
                    verdicts.push(Verdict::VanishesByThm13 { line: rec.witness_line });
                }
                verdicts.push(Verdict::BoundedByPs { bound: rec.beta1 });
            }
            if verdicts.is_empty() {
                verdicts.push(Verdict::Unknown);
            }
            OrderRecord { k: o.k, prime_power: o.prime_power, verdicts }
        })
        .collect();

    Ok(VanishingReport {
        degree,
        essential,
        trivial_eigenspace_dim: degree - 1,
        mu_table: table,
        primes: prime_records,
        orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ks(v: &[EigenvalueOrder]) -> Vec<u64> {
        v.iter().map(|o| o.k).collect()
    }

    fn pp_ks(v: &[EigenvalueOrder]) -> Vec<u64> {
        v.iter().filter(|o| o.prime_power.is_some()).map(|o| o.k).collect()
    }

    #[test]
    fn orders_examples() {
        let o = orders(6).unwrap();
        assert_eq!((ks(&o), pp_ks(&o)), (vec![2, 3, 6], vec![2, 3]));
        let o = orders(8).unwrap();
        assert_eq!((ks(&o), pp_ks(&o)), (vec![2, 4, 8], vec![2, 4, 8]));
        assert_eq!(o[2].prime_power, Some(PrimePower { prime: 2, exponent: 3 }));
        let o = orders(12).unwrap();
        assert_eq!((ks(&o), pp_ks(&o)), (vec![2, 3, 4, 6, 12], vec![2, 3, 4]));
        assert_eq!(orders(2).unwrap_err(), Error::BadDegree(2));
        assert_eq!(prime_divisors(12), vec![2, 3]);
        assert_eq!(prime_divisors(7), vec![7]);
    }

    #[test]
    fn mu_table_examples() {
        let t = mu_table(&catalog::braid_a3());
        assert_eq!(t.ks, vec![2, 3, 6]);
        assert!((0..6).all(|i| t.get(i, 3) == Some(2)));
        assert!((0..6).all(|i| t.get(i, 2) == Some(1)));
        assert!((0..6).all(|i| t.get(i, 6) == Some(0)));

        let t = mu_table(&catalog::pencil(6).unwrap());
        for k in [2, 3, 6] {
            assert!((0..6).all(|i| t.get(i, k) == Some(1)));
        }

        let t = mu_table(&catalog::generic(4).unwrap());
        assert!((0..4).all(|i| t.get(i, 2) == Some(3) && t.get(i, 4) == Some(0)));
    }

    #[test]
    fn braid_report() {
        let r = report(&catalog::braid_a3()).unwrap();
        assert_eq!((r.degree, r.essential, r.trivial_eigenspace_dim), (6, true, 5));
        let p3 = r.prime(3).unwrap();
        assert_eq!((p3.min_mu, p3.beta1, p3.modular_vanishing_applicable), (2, 1, false));
        let p2 = r.prime(2).unwrap();
        assert_eq!((p2.min_mu, p2.beta1, p2.modular_vanishing_applicable), (1, 0, true));
        assert_eq!(r.order(3).unwrap().verdicts, vec![Verdict::BoundedByPs { bound: 1 }]);
        assert_eq!(
            r.order(2).unwrap().verdicts,
            vec![Verdict::VanishesByThm13 { line: 0 }, Verdict::BoundedByPs { bound: 0 }]
        );
        assert_eq!(r.order(6).unwrap().verdicts, vec![Verdict::VanishesByLibgober { line: 0 }]);
        assert!(r.violations().is_empty());
    }

    #[test]
    fn pencil_report() {
        let r = report(&catalog::pencil(5).unwrap()).unwrap();
        assert!(!r.essential);
        assert!(r.primes.iter().all(|p| !p.modular_vanishing_applicable));
        for o in &r.orders {
            assert!(o.verdicts.iter().all(|v| !matches!(v, Verdict::VanishesByThm13 { .. })));
        }
    }

    #[test]
    fn generic_four_report() {
        let r = report(&catalog::generic(4).unwrap()).unwrap();
        let p2 = r.prime(2).unwrap();
        assert_eq!(p2.min_mu, 3);
        let o4 = r.order(4).unwrap();
        assert_eq!(o4.verdicts[0], Verdict::VanishesByLibgober { line: 0 });
        assert_eq!(o4.ps_bound(), Some(p2.beta1));
        let o2 = r.order(2).unwrap();
        assert_eq!(o2.verdicts, vec![Verdict::BoundedByPs { bound: p2.beta1 }]);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for (_, a) in catalog::members(9) {
            assert_eq!(
                report_with(&a, Execution::Sequential).unwrap(),
                report_with(&a, Execution::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(report(&catalog::braid_a3()).unwrap()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["degree", "essential", "mu_table", "orders", "primes"]);
        let o6 = &v["orders"].as_array().unwrap()[2];
        assert_eq!(o6["k"], 6);
        assert_eq!(o6["verdicts"][0], serde_json::json!({ "kind": "VANISHES_BY_LIBGOBER", "line": 0 }));
    }
}
