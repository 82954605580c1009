//! Comparison of derived integer sequences against local b-files: plain
//! text with one `index value` pair per line and `#` comments.

use std::path::Path;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use subsum_core::arith::{divisor_stats, s_value};
use subsum_core::binary::{b_count, d_degree, DStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sequence {
    /// The degree-increment sequence `s(n)`.
    S,
    /// Half the binary numerator degree, `d(n) / 2`.
    DHalf,
    /// Binary partition counts `B(n)`.
    BCount,
    /// Cumulative divisor sums `sum_{i<=n} sigma_1(i)`.
    Sigma1Sum,
}

impl Sequence {
    pub fn name(self) -> &'static str {
        match self {
            Sequence::S => "s",
            Sequence::DHalf => "d-half",
            Sequence::BCount => "b-count",
            Sequence::Sigma1Sum => "sigma1-sum",
        }
    }
}

impl std::str::FromStr for Sequence {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "s" => Ok(Sequence::S),
            "d-half" => Ok(Sequence::DHalf),
            "b-count" => Ok(Sequence::BCount),
            "sigma1-sum" => Ok(Sequence::Sigma1Sum),
            other => Err(format!(
                "unknown sequence: {other} (expected s, d-half, b-count, sigma1-sum)"
            )),
        }
    }
}

/// Our value of the sequence at `n`, as a decimal string.
pub fn derived_value(seq: Sequence, n: u64) -> Result<String> {
    Ok(match seq {
        Sequence::S => s_value(n).context("s(n) needs n >= 1")?.to_string(),
        Sequence::DHalf => (d_degree(n, DStrategy::Sum) / 2).to_string(),
        Sequence::BCount => b_count(n).to_string(),
        Sequence::Sigma1Sum => {
            if n == 0 {
                bail!("cumulative sigma_1 needs n >= 1");
            }
            (1..=n)
                .map(|i| divisor_stats(i).expect("i >= 1").1)
                .sum::<u64>()
                .to_string()
        }
    })
}

/// Parsed `(index, value)` lines.
pub fn parse(path: &Path) -> Result<Vec<(u64, String)>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading b-file {}", path.display()))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let index: u64 = fields
            .next()
            .context("missing index")?
            .parse()
            .with_context(|| format!("bad index on line {}", lineno + 1))?;
        let value = fields
            .next()
            .with_context(|| format!("missing value on line {}", lineno + 1))?;
        // Canonicalize through a big integer so +7, 007 and 7 compare equal.
        let canonical: BigInt = value
            .parse()
            .with_context(|| format!("bad value on line {}", lineno + 1))?;
        out.push((index, canonical.to_string()));
    }
    Ok(out)
}
