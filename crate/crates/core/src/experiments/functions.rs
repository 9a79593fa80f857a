use crate::error::{Error, Result};

/// Built-in test functions with exact segment means.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunction {
    /// `1 / (1 + (x − 0.4)²)`.
    Runge,
    Constant,
    Linear,
    /// Unit step at `x = 0.4` (value 1 for `x ≥ 0.4`).
    Step,
}

impl TestFunction {
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "runge" | "paper" => Ok(TestFunction::Runge),
            "constant" => Ok(TestFunction::Constant),
            "linear" => Ok(TestFunction::Linear),
            "step" => Ok(TestFunction::Step),
            other => Err(Error::validation(format!(
                "unknown test function `{other}` (expected runge, constant, linear or step)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TestFunction::Runge => "runge",
            TestFunction::Constant => "constant",
            TestFunction::Linear => "linear",
            TestFunction::Step => "step",
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            TestFunction::Runge => 1.0 / (1.0 + (x - 0.4).powi(2)),
            TestFunction::Constant => 1.0,
            TestFunction::Linear => x,
            TestFunction::Step => {
                if x >= 0.4 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Exact mean over `[c − a/2, c + a/2]`.
    pub fn mean(self, c: f64, a: f64) -> f64 {
        let (lo, hi) = (c - 0.5 * a, c + 0.5 * a);
        match self {
            TestFunction::Runge => ((hi - 0.4).atan() - (lo - 0.4).atan()) / a,
            TestFunction::Constant => 1.0,
            TestFunction::Linear => c,
            TestFunction::Step => (hi - lo.max(0.4)).clamp(0.0, a) / a,
        }
    }
}
