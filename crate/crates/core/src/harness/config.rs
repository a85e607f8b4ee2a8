//! Campaign configuration: algebra, state, suites, exponents, sample counts and budgets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebras::{
    albert, direct_sum, matrix_jordan, pauli_spin_representation, spin_abstract, spin_represented, AmbientMap,
};
use crate::check::pairs_to_coords;
use crate::densemat::CMatrix;
use crate::error::{Error, Result};
use crate::expect::{
    albert_diagonal_expectation, canonical_projection, conditional_expectation, diagonal_expectation, scalar_expectation,
    spin_span_expectation, ExpectationOperator,
};
use crate::interp::InterpBudget;
use crate::jordan::{AlgebraKind, JordanAlgebra, StateFunctional};
use crate::lp::exponent;

pub const SCHEMA_VERSION: u32 = 1;

/// Algebra description. Shorthand forms: `matrix:2`, `spin:3`, `spin:3:represented`,
/// `albert`, and `+`-joined parts with optional `@weight` for direct sums
/// (`matrix:1@0.25+matrix:2@0.75`; equal weights when omitted).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    Matrix {
        n: usize,
    },
    Spin {
        k: usize,
        #[serde(default)]
        represented: bool,
    },
    Albert {},
    DirectSum {
        parts: Vec<WeightedPart>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedPart {
    pub algebra: AlgebraSpec,
    pub weight: f64,
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<JordanAlgebra> {
        match self {
            AlgebraSpec::Matrix { n } => matrix_jordan(*n),
            AlgebraSpec::Spin { k, represented: false } => spin_abstract(*k),
            AlgebraSpec::Spin { k, represented: true } => spin_represented(*k),
            AlgebraSpec::Albert {} => Ok(albert()),
            AlgebraSpec::DirectSum { parts } => {
                direct_sum(parts.iter().map(|p| Ok((p.algebra.build()?, p.weight))).collect::<Result<Vec<_>>>()?)
            }
        }
    }

    /// Shorthand or a JSON object.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            return Ok(serde_json::from_str(text)?);
        }
        if text.contains('+') {
            let pieces: Vec<&str> = text.split('+').collect();
            let mut parts = Vec::with_capacity(pieces.len());
            for piece in &pieces {
                let (spec, weight) = match piece.split_once('@') {
                    Some((s, w)) => (s, Some(w.trim().parse::<f64>().map_err(|e| bad_spec(piece, &e.to_string()))?)),
                    None => (*piece, None),
                };
                parts.push((Self::parse_single(spec)?, weight));
            }
            let fixed: f64 = parts.iter().filter_map(|p| p.1).sum();
            let free = parts.iter().filter(|p| p.1.is_none()).count();
            let share = if free > 0 { (1.0 - fixed) / free as f64 } else { 0.0 };
            let parts = parts.into_iter().map(|(algebra, w)| WeightedPart { algebra, weight: w.unwrap_or(share) }).collect();
            return Ok(AlgebraSpec::DirectSum { parts });
        }
        Self::parse_single(text)
    }

    fn parse_single(text: &str) -> Result<Self> {
        let fields: Vec<&str> = text.trim().split(':').map(str::trim).collect();
        let number = |s: &str| s.parse::<usize>().map_err(|e| bad_spec(text, &e.to_string()));
        match fields.as_slice() {
            ["matrix", n] => Ok(AlgebraSpec::Matrix { n: number(n)? }),
            ["spin", k] => Ok(AlgebraSpec::Spin { k: number(k)?, represented: false }),
            ["spin", k, "represented"] => Ok(AlgebraSpec::Spin { k: number(k)?, represented: true }),
            ["albert"] => Ok(AlgebraSpec::Albert {}),
            _ => Err(bad_spec(text, "expected matrix:<n>, spin:<k>[:represented], albert or a '+'-joined sum")),
        }
    }
}

fn bad_spec(text: &str, why: &str) -> Error {
    Error::Config(format!("invalid algebra spec {text:?}: {why}"))
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Matrix { n } => write!(f, "matrix:{n}"),
            AlgebraSpec::Spin { k, represented } => write!(f, "spin:{k}{}", if *represented { ":represented" } else { "" }),
            AlgebraSpec::Albert {} => f.write_str("albert"),
            AlgebraSpec::DirectSum { parts } => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{}@{}", p.algebra, p.weight)?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// State on the configured algebra.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    /// The canonical normalized trace.
    #[default]
    Trace,
    /// `φ(x) = τ(d∘x)` with `d` given by `[re, im]` coordinates.
    Density { coords: Vec<[f64; 2]> },
    /// `φ(x) = tr(diag(values) π(x))` on represented kinds.
    AmbientDiag { values: Vec<f64> },
}

impl StateSpec {
    /// `trace`, `ambient_diag:<v1>,<v2>,…`, `density:<re1>,<re2>,…` or a JSON object.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            return Ok(serde_json::from_str(text)?);
        }
        let bad = |why: String| Error::Config(format!("invalid state spec {text:?}: {why}"));
        let values = |list: &str| -> Result<Vec<f64>> {
            list.split(',').map(|v| v.trim().parse::<f64>().map_err(|e| bad(e.to_string()))).collect()
        };
        match text.split_once(':') {
            None if text == "trace" => Ok(StateSpec::Trace),
            Some(("ambient_diag", list)) => Ok(StateSpec::AmbientDiag { values: values(list)? }),
            Some(("density", list)) => Ok(StateSpec::Density { coords: values(list)?.into_iter().map(|v| [v, 0.0]).collect() }),
            _ => Err(bad("expected trace, ambient_diag:<values>, density:<coords> or a JSON object".into())),
        }
    }

    pub fn build(&self, alg: &JordanAlgebra) -> Result<StateFunctional> {
        match self {
            StateSpec::Trace => StateFunctional::canonical_trace(alg),
            StateSpec::Density { coords } => StateFunctional::from_density(alg.element(pairs_to_coords(coords))?),
            StateSpec::AmbientDiag { values } => StateFunctional::from_ambient_density(alg, &CMatrix::diag_real(values)),
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Trace => f.write_str("trace"),
            StateSpec::Density { coords } => write!(f, "density{:?}", coords),
            StateSpec::AmbientDiag { values } => write!(f, "ambient_diag{:?}", values),
        }
    }
}

/// Subalgebra for the expectation suite and the `expect` subcommand.
/// Shorthand forms: `scalar`, `diagonal`, `spin_span:<k>`, `transpose`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SubalgebraSpec {
    /// `ℂ1`.
    Scalar,
    /// Diagonal of `M_n`, or the diagonal `ℂ³` of the Albert algebra.
    Diagonal,
    /// `span{1, s₁, …, s_k}` of a Pauli spin system in `M_{2ⁿ}`.
    SpinSpan { k: usize },
    /// Fixed points of the transpose, through `(Id + α)/2`.
    Transpose,
    /// Explicit basis as `[re, im]` coordinates.
    Basis { elements: Vec<Vec<[f64; 2]>> },
}

impl SubalgebraSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            return Ok(serde_json::from_str(text)?);
        }
        match text.split(':').map(str::trim).collect::<Vec<_>>().as_slice() {
            ["scalar"] => Ok(SubalgebraSpec::Scalar),
            ["diagonal"] => Ok(SubalgebraSpec::Diagonal),
            ["transpose"] => Ok(SubalgebraSpec::Transpose),
            ["spin_span", k] => Ok(SubalgebraSpec::SpinSpan {
                k: k.parse().map_err(|e| Error::Config(format!("invalid subalgebra spec {text:?}: {e}")))?,
            }),
            _ => Err(Error::Config(format!(
                "invalid subalgebra spec {text:?}: expected scalar, diagonal, spin_span:<k>, transpose or a JSON object"
            ))),
        }
    }

    pub fn label(&self) -> String {
        match self {
            SubalgebraSpec::Scalar => "scalar".into(),
            SubalgebraSpec::Diagonal => "diagonal".into(),
            SubalgebraSpec::SpinSpan { k } => format!("spin_span:{k}"),
            SubalgebraSpec::Transpose => "transpose".into(),
            SubalgebraSpec::Basis { elements } => format!("basis[{}]", elements.len()),
        }
    }

    pub fn build(&self, alg: &JordanAlgebra) -> Result<ExpectationOperator> {
        match (self, alg.kind()) {
            (SubalgebraSpec::Scalar, _) => scalar_expectation(alg),
            (SubalgebraSpec::Diagonal, AlgebraKind::Matrix { n }) => diagonal_expectation(*n),
            (SubalgebraSpec::Diagonal, AlgebraKind::Albert) => albert_diagonal_expectation(),
            (SubalgebraSpec::SpinSpan { k }, AlgebraKind::Matrix { .. }) => {
                let rep = pauli_spin_representation(*k)?;
                if rep.ambient != *alg {
                    return Err(Error::Unsupported(format!("spin span of {k} generators lives in {}, not {alg}", rep.ambient)));
                }
                spin_span_expectation(&rep)
            }
            (SubalgebraSpec::Transpose, _) => canonical_projection(alg, &AmbientMap::transpose()),
            (SubalgebraSpec::Basis { elements }, _) => {
                let basis = elements.iter().map(|e| alg.element(pairs_to_coords(e))).collect::<Result<Vec<_>>>()?;
                conditional_expectation(alg, &basis, &StateFunctional::canonical_trace(alg)?)
            }
            (spec, _) => Err(Error::Unsupported(format!("subalgebra {} is not defined on {alg}", spec.label()))),
        }
    }

    /// Subalgebras exercised when a campaign lists none.
    pub fn defaults_for(alg: &JordanAlgebra) -> Vec<SubalgebraSpec> {
        let mut out = vec![SubalgebraSpec::Scalar];
        match alg.kind() {
            AlgebraKind::Matrix { n } => {
                out.push(SubalgebraSpec::Diagonal);
                out.push(SubalgebraSpec::Transpose);
                if n.is_power_of_two() && *n >= 2 {
                    let levels = n.trailing_zeros() as usize;
                    for k in [2 * levels - 1, 2 * levels] {
                        if k >= 2 {
                            out.push(SubalgebraSpec::SpinSpan { k });
                        }
                    }
                }
            }
            AlgebraKind::Albert => out.push(SubalgebraSpec::Diagonal),
            _ => {}
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Axioms,
    Calculus,
    Duality,
    Embedding,
    Expectation,
    Holder,
    Interp,
    Iochum,
    Lp,
    RicardXu,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Axioms,
        Suite::Calculus,
        Suite::Duality,
        Suite::Embedding,
        Suite::Expectation,
        Suite::Holder,
        Suite::Interp,
        Suite::Iochum,
        Suite::Lp,
        Suite::RicardXu,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Calculus => "calculus",
            Suite::Duality => "duality",
            Suite::Embedding => "embedding",
            Suite::Expectation => "expectation",
            Suite::Holder => "holder",
            Suite::Interp => "interp",
            Suite::Iochum => "iochum",
            Suite::Lp => "lp",
            Suite::RicardXu => "ricard_xu",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleCounts {
    /// Samples per sampled property check.
    pub checks: usize,
    /// Elements bracketed per exponent.
    pub interp: usize,
}

impl Default for SampleCounts {
    fn default() -> Self {
        SampleCounts { checks: 200, interp: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Jordan identity, bilinearity and JB axioms (relative).
    pub structural: f64,
    pub cayley_hamilton: f64,
    /// Spectral reconstruction and polar factorization.
    pub reconstruction: f64,
    /// Intrinsic versus ambient norms.
    pub embedding: f64,
    /// Expectation residuals.
    pub expectation: f64,
    /// Relative slack when testing bracket containment.
    pub bracket: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            structural: 1e-9,
            cayley_hamilton: 1e-8,
            reconstruction: 1e-9,
            embedding: 1e-9,
            expectation: 1e-9,
            bracket: 1e-9,
        }
    }
}

fn default_p_grid() -> Vec<f64> {
    vec![1.0, 1.5, 2.0, 3.0, f64::INFINITY]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub schema_version: u32,
    #[serde(deserialize_with = "shorthand::one")]
    pub algebra: AlgebraSpec,
    #[serde(default, deserialize_with = "shorthand::one")]
    pub state: StateSpec,
    #[serde(default)]
    pub suites: Vec<Suite>,
    /// Exponents; `"inf"` stands for `∞`.
    #[serde(default = "default_p_grid", with = "exponent::vec")]
    pub p_grid: Vec<f64>,
    #[serde(default)]
    pub samples: SampleCounts,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub budget: InterpBudget,
    /// Subalgebras for the expectation suite; kind-dependent defaults when empty.
    #[serde(default, deserialize_with = "shorthand::many")]
    pub subalgebras: Vec<SubalgebraSpec>,
}

/// Config fields accept either the tagged JSON object or the CLI shorthand string.
mod shorthand {
    use serde::de::DeserializeOwned;
    use serde::{Deserialize, Deserializer};

    use super::{AlgebraSpec, StateSpec, SubalgebraSpec};
    use crate::error::Result;

    pub trait Shorthand: DeserializeOwned {
        fn from_shorthand(text: &str) -> Result<Self>;
    }

    impl Shorthand for AlgebraSpec {
        fn from_shorthand(text: &str) -> Result<Self> {
            AlgebraSpec::parse(text)
        }
    }

    impl Shorthand for StateSpec {
        fn from_shorthand(text: &str) -> Result<Self> {
            StateSpec::parse(text)
        }
    }

    impl Shorthand for SubalgebraSpec {
        fn from_shorthand(text: &str) -> Result<Self> {
            SubalgebraSpec::parse(text)
        }
    }

    fn convert<T: Shorthand, E: serde::de::Error>(value: serde_json::Value) -> std::result::Result<T, E> {
        match value {
            serde_json::Value::String(text) => T::from_shorthand(&text).map_err(E::custom),
            other => serde_json::from_value(other).map_err(E::custom),
        }
    }

    pub fn one<'de, D: Deserializer<'de>, T: Shorthand>(d: D) -> std::result::Result<T, D::Error> {
        convert(serde_json::Value::deserialize(d)?)
    }

    pub fn many<'de, D: Deserializer<'de>, T: Shorthand>(d: D) -> std::result::Result<Vec<T>, D::Error> {
        Vec::<serde_json::Value>::deserialize(d)?.into_iter().map(convert).collect()
    }
}

impl CampaignConfig {
    pub fn new(algebra: AlgebraSpec, suites: Vec<Suite>) -> Self {
        CampaignConfig {
            schema_version: SCHEMA_VERSION,
            algebra,
            state: StateSpec::Trace,
            suites,
            p_grid: default_p_grid(),
            samples: SampleCounts::default(),
            seed: 0,
            tolerances: Tolerances::default(),
            budget: InterpBudget::default(),
            subalgebras: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: CampaignConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(**p >= 1.0)) {
            return Err(Error::Config(format!("exponent {p} is below 1")));
        }
        let t = &self.tolerances;
        let named = [
            ("structural", t.structural),
            ("cayley_hamilton", t.cayley_hamilton),
            ("reconstruction", t.reconstruction),
            ("embedding", t.embedding),
            ("expectation", t.expectation),
            ("bracket", t.bracket),
        ];
        if let Some((name, v)) = named.iter().find(|(_, v)| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::Config(format!("tolerance {name} = {v} must be finite and non-negative")));
        }
        let alg = self.algebra.build().map_err(|e| Error::Config(e.to_string()))?;
        self.state.build(&alg).map_err(|e| Error::Config(format!("state: {e}")))?;
        Ok(())
    }

    /// Hex SHA-256 of the canonical JSON encoding.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(bytes))
    }
}
