//! End-to-end witness construction and its independent re-check.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::generators::Element;
use crate::oracle::OracleSummary;
use crate::scalar::{floor_u64, rational_string};
use crate::word::GroupWord;

use super::abelian::{abelian_length, abelian_report, detect_degeneracy};
use super::grid::build_grid_set;
use super::lemma::{lemma1_witness, Sign};
use super::pair::SupportPair;
use super::path::{build_serpentine_path, serpentine_length, TourPath};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Generic,
    Abelian,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub closure: bool,
    pub coverage: bool,
    pub xi_related: bool,
    pub length_formula: bool,
}

impl Verdicts {
    pub fn all(&self) -> bool {
        self.closure && self.coverage && self.xi_related && self.length_formula
    }
}

/// Word lengths the length formula is evaluated from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LengthParams {
    pub u_len: usize,
    pub v_len: usize,
    pub z_len: usize,
    /// Abelian branch only: whether the boustrophedon rows are `u` edges.
    pub rows_along_u: bool,
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub xi: GroupWord,
    pub epsilon: Sign,
    pub branch: Branch,
    pub n: usize,
    pub set: Vec<Element>,
    pub path: TourPath,
    pub lengths: LengthParams,
    /// `(|u| + |v|) / 2`.
    pub ratio_constant: BigRational,
    pub lambda: Option<BigRational>,
    pub alphabet: String,
    pub verdicts: Verdicts,
    pub oracle: Option<OracleSummary>,
}

impl WitnessReport {
    pub fn big_n(&self) -> usize {
        self.n + 1
    }

    pub fn card(&self) -> usize {
        self.set.len()
    }

    pub fn path_length(&self) -> usize {
        self.path.len()
    }

    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.path_length().into(), self.card().into())
    }

    /// `"length/card"`, unreduced.
    pub fn ratio_string(&self) -> String {
        format!("{}/{}", self.path_length(), self.card())
    }

    /// `L/2 + 2|ξ|/N` for the generic branch.
    pub fn ratio_bound(&self) -> Option<BigRational> {
        match self.branch {
            Branch::Generic => Some(ratio_bound(&self.ratio_constant, self.xi.len(), self.big_n())),
            Branch::Abelian => None,
        }
    }

    /// The length the formula predicts for this branch and `n`.
    pub fn expected_length(&self) -> usize {
        let p = self.lengths;
        match self.branch {
            Branch::Generic => serpentine_length(self.n, p.u_len + p.v_len, p.z_len),
            Branch::Abelian => {
                let (row, col) = if p.rows_along_u { (p.u_len, p.v_len) } else { (p.v_len, p.u_len) };
                abelian_length(self.n, row, col)
            }
        }
    }
}

#[derive(Serialize)]
struct ReportJson<'a> {
    xi: String,
    epsilon: Sign,
    branch: Branch,
    n: usize,
    #[serde(rename = "N")]
    big_n: usize,
    card: usize,
    path_word: String,
    path_length: usize,
    ratio: String,
    ratio_bound: Option<String>,
    lambda: Option<String>,
    alphabet: &'a str,
    verdicts: Verdicts,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<&'a OracleSummary>,
}

impl Serialize for WitnessReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportJson {
            xi: self.xi.to_string(),
            epsilon: self.epsilon,
            branch: self.branch,
            n: self.n,
            big_n: self.big_n(),
            card: self.card(),
            path_word: self.path.word().to_string(),
            path_length: self.path_length(),
            ratio: self.ratio_string(),
            ratio_bound: self.ratio_bound().as_ref().map(rational_string),
            lambda: self.lambda.as_ref().map(rational_string),
            alphabet: &self.alphabet,
            verdicts: self.verdicts,
            oracle: self.oracle.as_ref(),
        }
        .serialize(s)
    }
}

pub fn ratio_bound(constant: &BigRational, xi_len: usize, big_n: usize) -> BigRational {
    constant + BigRational::new(BigInt::from(2 * xi_len), BigInt::from(big_n))
}

/// Smallest odd `N >= 3` with `N > 2|ξ| / (λ - c)`.
pub fn minimal_big_n_for(lambda: &BigRational, xi_len: usize, constant: &BigRational) -> Result<usize> {
    if lambda <= constant {
        return Err(Error::LambdaTooSmall {
            lambda: rational_string(lambda),
            threshold: rational_string(constant),
        });
    }
    let quotient = BigRational::from_integer((2 * xi_len).into()) / (lambda - constant);
    let floor = floor_u64(&quotient).ok_or_else(|| Error::Parse(format!("N for lambda {lambda} overflows")))?;
    let mut big_n = usize::try_from(floor + 1).map_err(|_| Error::Parse("N overflows".into()))?;
    if big_n % 2 == 0 {
        big_n += 1;
    }
    Ok(big_n.max(3))
}

/// [`minimal_big_n_for`] with the standard constant `5/2`.
pub fn minimal_big_n(lambda: &BigRational, xi_len: usize) -> Result<usize> {
    minimal_big_n_for(lambda, xi_len, &BigRational::new(5.into(), 2.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessOptions {
    /// Largest odd `n` tried in the abelian branch.
    pub n_max: usize,
    /// Forces `n` (even for the generic branch, odd for the abelian one).
    pub n_override: Option<usize>,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            n_max: 201,
            n_override: None,
        }
    }
}

/// Lemma, degeneracy detection, then either the two-layer grid with the
/// serpentine path or the abelian fallback; verified before returning.
pub fn build_witness(
    xi: &GroupWord,
    lambda: &BigRational,
    pair: &SupportPair,
    options: WitnessOptions,
) -> Result<WitnessReport> {
    let lw = lemma1_witness(xi, pair)?;
    let constant = pair.ratio_constant();
    let xi_map = xi.evaluate();

    let mut report = match detect_degeneracy(&lw, pair)? {
        None => {
            let n = match options.n_override {
                Some(n) => {
                    if lambda <= &constant {
                        return Err(Error::LambdaTooSmall {
                            lambda: rational_string(lambda),
                            threshold: rational_string(&constant),
                        });
                    }
                    n
                }
                None => minimal_big_n_for(lambda, xi.len(), &constant)? - 1,
            };
            let grid = build_grid_set(&lw, pair, n)?;
            if grid.is_degenerate() {
                return Err(Error::DegenerateInconsistent(format!(
                    "layers collide at n = {n} but not at the probe size"
                )));
            }
            let path = build_serpentine_path(n, pair.u(), pair.v(), &lw.z_word)?;
            WitnessReport {
                xi: xi.clone(),
                epsilon: lw.epsilon,
                branch: Branch::Generic,
                n,
                set: grid.elements().to_vec(),
                path,
                lengths: LengthParams {
                    u_len: pair.u().len(),
                    v_len: pair.v().len(),
                    z_len: lw.z_word.len(),
                    rows_along_u: false,
                },
                ratio_constant: constant,
                lambda: None,
                alphabet: pair.alphabet().name().to_string(),
                verdicts: Verdicts::default(),
                oracle: None,
            }
        }
        Some(exps) => {
            let one = BigRational::one();
            if lambda <= &one {
                return Err(Error::LambdaTooSmall {
                    lambda: rational_string(lambda),
                    threshold: rational_string(&one),
                });
            }
            match options.n_override {
                Some(n) => abelian_report(&lw, pair, exps, n)?,
                None => {
                    let mut n = 3;
                    loop {
                        if n > options.n_max {
                            return Err(Error::NMaxExceeded {
                                n_max: options.n_max,
                                lambda: rational_string(lambda),
                            });
                        }
                        let candidate = abelian_report(&lw, pair, exps, n)?;
                        if candidate.card() > 0 && &candidate.ratio() < lambda {
                            break candidate;
                        }
                        n += 2;
                    }
                }
            }
        }
    };
    report.lambda = Some(lambda.clone());
    report.verdicts = verify_witness(&report, &xi_map);
    if !report.verdicts.all() {
        return Err(Error::VerificationFailed(report.verdicts));
    }
    if report.card() == 0 || &report.ratio() >= lambda {
        return Err(Error::RatioNotBelowLambda {
            ratio: report.ratio_string(),
            lambda: rational_string(lambda),
        });
    }
    Ok(report)
}

/// Recomputes the four verdicts from the stored set and path alone.
pub fn verify_witness(report: &WitnessReport, xi: &Element) -> Verdicts {
    let trace: HashSet<Element> = report.path.vertex_trace().into_iter().collect();
    let set: HashSet<&Element> = report.set.iter().collect();
    let xi_inv = xi.inverse();
    let closure = report.path.word().evaluate().is_identity();
    let coverage = report.set.iter().all(|g| trace.contains(g));
    let xi_related = !set.is_empty()
        && report
            .set
            .iter()
            .all(|g| set.contains(&g.then(xi)) || set.contains(&g.then(&xi_inv)));
    let length_formula = report.path_length() == report.expected_length();
    Verdicts {
        closure,
        coverage,
        xi_related,
        length_formula,
    }
}
