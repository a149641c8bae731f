use anyhow::{bail, Context, Result};
use systolic_core::coxeter::{BallOptions, CoxeterSystem};
use systolic_core::systolize::CaseLabel;

/// Everything a pipeline run depends on.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub system: Option<CoxeterSystem>,
    pub radius: u32,
    pub margin: Option<u32>,
    pub k: usize,
    pub case: Option<CaseLabel>,
    pub seed: u64,
    pub node_budget: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            system: None,
            radius: 0,
            margin: None,
            k: 6,
            case: None,
            seed: 0,
            node_budget: systolic_core::coxeter::DEFAULT_NODE_BUDGET,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k < 4 {
            bail!("k must be at least 4, got {}", self.k);
        }
        if self.node_budget == 0 {
            bail!("node budget must be positive");
        }
        if self.margin == Some(0) {
            bail!("margin must be at least 1");
        }
        Ok(())
    }

    pub fn ball_options(&self) -> BallOptions {
        BallOptions { radius: self.radius, node_budget: self.node_budget }
    }
}

/// Comma-separated exponents: three for a triangle (l,k,m), six for a
/// tetrahedron in pair order ab,ac,ad,bc,bd,cd. `inf` stands for an infinite
/// exponent.
pub fn parse_exponents(text: &str) -> Result<CoxeterSystem> {
    CoxeterSystem::from_labels(text).with_context(|| format!("bad exponents {text:?}"))
}
